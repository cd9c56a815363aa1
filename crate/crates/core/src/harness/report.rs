use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CheckId, CheckResult, GroupCase, HypothesisStatus, Suite};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub unexplained_skips: usize,
    pub violated: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped + self.violated
    }

    fn add(&mut self, r: &CheckResult) {
        match (&r.hypothesis, r.verdict) {
            (_, Some(super::Verdict::Pass)) => self.pass += 1,
            (_, Some(super::Verdict::Fail)) => self.fail += 1,
            (HypothesisStatus::Skipped(reason), None) => {
                self.skipped += 1;
                if !reason.is_explained() {
                    self.unexplained_skips += 1;
                }
            }
            (HypothesisStatus::Violated(_), None) => self.violated += 1,
            (HypothesisStatus::Satisfied, None) => self.fail += 1,
        }
    }
}

/// Table provenance of one corpus group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupProvenance {
    pub spec: String,
    pub order: usize,
    pub classes: usize,
    pub class_digest: String,
    pub conductor: u64,
    pub prime: u64,
    pub degrees: Vec<i64>,
}

impl GroupProvenance {
    pub(crate) fn of(case: &GroupCase) -> Self {
        GroupProvenance {
            spec: case.spec.clone(),
            order: case.group.order(),
            classes: case.table.len(),
            class_digest: case.group.classes().digest(),
            conductor: case.table.conductor(),
            prime: case.table.provenance().prime,
            degrees: case.table.degrees().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub spec: String,
    pub seconds: f64,
}

/// Corpus-level outcome. Deterministic unless timings were requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub corpus: String,
    pub version: String,
    pub suite: Vec<CheckId>,
    pub groups: Vec<String>,
    pub tallies: Vec<(CheckId, Tally)>,
    pub totals: Tally,
    pub results: Vec<CheckResult>,
    pub provenance: Vec<GroupProvenance>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Vec<Timing>>,
}

impl Report {
    pub(crate) fn assemble(
        corpus: &str,
        specs: &[String],
        suite: &Suite,
        per_group: Vec<(Vec<CheckResult>, Option<GroupProvenance>, f64)>,
        with_timings: bool,
    ) -> Self {
        let mut tallies: Vec<(CheckId, Tally)> = suite.checks().iter().map(|&id| (id, Tally::default())).collect();
        let mut totals = Tally::default();
        let mut results = Vec::new();
        let mut provenance = Vec::new();
        let mut timings = Vec::new();
        for (spec, (rs, prov, secs)) in specs.iter().zip(per_group) {
            for r in rs {
                if let Some((_, t)) = tallies.iter_mut().find(|(id, _)| *id == r.id) {
                    t.add(&r);
                }
                totals.add(&r);
                results.push(r);
            }
            provenance.extend(prov);
            timings.push(Timing { spec: spec.trim().to_string(), seconds: secs });
        }
        Report {
            corpus: corpus.to_string(),
            version: crate::VERSION.to_string(),
            suite: suite.checks().to_vec(),
            groups: specs.iter().map(|s| s.trim().to_string()).collect(),
            tallies,
            totals,
            results,
            provenance,
            timings: with_timings.then_some(timings),
        }
    }

    pub fn results(&self) -> &[CheckResult] {
        &self.results
    }

    /// Number of (group, check) pairs executed.
    pub fn total(&self) -> usize {
        self.results.len()
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.results.iter().filter(|r| r.failed() || (r.hypothesis == HypothesisStatus::Satisfied && r.verdict.is_none())).collect()
    }

    pub fn unexplained_skips(&self) -> usize {
        self.totals.unexplained_skips
    }

    pub fn is_success(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering: one line per result, then tallies.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "corpus {} ({} groups), charsquare {}", self.corpus, self.groups.len(), self.version);
        for r in &self.results {
            let status = match (&r.hypothesis, r.verdict) {
                (_, Some(super::Verdict::Pass)) => "PASS".to_string(),
                (_, Some(super::Verdict::Fail)) => "FAIL".to_string(),
                (HypothesisStatus::Skipped(reason), None) => format!("SKIP [{}]", skip_text(reason)),
                (HypothesisStatus::Violated(why), None) => format!("REJECTED [{why}]"),
                (HypothesisStatus::Satisfied, None) => "FAIL [no verdict]".to_string(),
            };
            let _ = writeln!(out, "{:<20} {:<30} {}", r.id.name(), r.spec, status);
            if r.failed() {
                for w in &r.witnesses {
                    let who = w.character.map(|i| format!("X{i}: ")).unwrap_or_default();
                    let _ = writeln!(out, "    witness {who}{}", w.classification);
                }
            }
            for n in &r.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        let _ = writeln!(out, "\n{:<20} {:>5} {:>5} {:>5} {:>9} {:>9}", "check", "pass", "fail", "skip", "rejected", "unexpl.");
        for (id, t) in &self.tallies {
            let _ = writeln!(
                out,
                "{:<20} {:>5} {:>5} {:>5} {:>9} {:>9}",
                id.name(),
                t.pass,
                t.fail,
                t.skipped,
                t.violated,
                t.unexplained_skips
            );
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "total: {} results, {} pass, {} fail, {} skipped ({} unexplained), {} rejected",
            t.total(),
            t.pass,
            t.fail,
            t.skipped,
            t.unexplained_skips,
            t.violated
        );
        if let Some(ts) = &self.timings {
            for tm in ts {
                let _ = writeln!(out, "time {:<30} {:.3}s", tm.spec, tm.seconds);
            }
        }
        out
    }
}

fn skip_text(reason: &super::SkipReason) -> String {
    use super::SkipReason::*;
    match reason {
        FlagUnknown(flag) => format!("flag unknown: {flag}"),
        HypothesisFalse(why) => why.clone(),
        NoApplicableCharacter(why) => why.clone(),
        NotApplicable(why) => why.clone(),
    }
}
