//! Executable checks of the squaring-map results over a corpus of groups.

pub mod checks;
mod report;

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::character::{compute_table, CharacterError, CharacterTable, Decomposition, TableCache};
use crate::group::{builtin, Group, GroupError};

pub use checks::*;
pub use report::{GroupProvenance, Report, Tally};

/// The built-in corpus.
pub const DEFAULT_CORPUS: &[&str] = &[
    "cyclic:3",
    "cyclic:5",
    "cyclic:7",
    "cyclic:9",
    "cyclic:15",
    "cyclic:21",
    "cyclic:27",
    "dihedral:8",
    "quaternion:8",
    "sl23",
    "heisenberg:3",
    "heisenberg:5",
    "heisenberg:7",
    "extraspecial_exp_p2:3",
    "extraspecial_exp_p2:5",
    "wreath_cyclic:3",
    "remark2:2",
    "remark2:3",
    "metacyclic:7:3:2",
    "metacyclic:11:5:3",
    "metacyclic:13:3:3",
    "metacyclic:23:11:2",
    "metacyclic:31:5:2",
    "direct:heisenberg:3:cyclic:5",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("bad corpus spec: {0}")]
    BadCorpusSpec(String),
    #[error("unknown suite selector: {0}")]
    BadSuite(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Identifiers of the executable checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Orthogonality,
    TheoremA,
    TheoremB,
    TheoremC,
    EtaGt1,
    NoLinear,
    KernelCenter,
    NilpotentCorollary,
    RemarkSuper,
    SquareBound,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Orthogonality,
        CheckId::TheoremA,
        CheckId::TheoremB,
        CheckId::TheoremC,
        CheckId::EtaGt1,
        CheckId::NoLinear,
        CheckId::KernelCenter,
        CheckId::NilpotentCorollary,
        CheckId::RemarkSuper,
        CheckId::SquareBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Orthogonality => "orthogonality",
            CheckId::TheoremA => "theorem-a",
            CheckId::TheoremB => "theorem-b",
            CheckId::TheoremC => "theorem-c",
            CheckId::EtaGt1 => "eta-gt1",
            CheckId::NoLinear => "no-linear",
            CheckId::KernelCenter => "kernel-center",
            CheckId::NilpotentCorollary => "nilpotent-corollary",
            CheckId::RemarkSuper => "remark-super",
            CheckId::SquareBound => "square-bound",
        }
    }

    /// What a character must look like for the check to have something to test.
    pub fn applicability(self) -> &'static str {
        match self {
            CheckId::TheoremB => "no irreducible of degree 2",
            CheckId::TheoremC => "no irreducible of odd prime degree",
            CheckId::EtaGt1 => "no irreducible of degree 2^n > 1",
            CheckId::NoLinear => "no nonlinear irreducible",
            CheckId::KernelCenter => "every irreducible has Ker = Z",
            CheckId::NilpotentCorollary => "no square is a multiple of one irreducible",
            _ => "nothing to check",
        }
    }

    pub fn run(self, case: &GroupCase) -> CheckResult {
        match self {
            CheckId::Orthogonality => check_orthogonality(case),
            CheckId::TheoremA => check_theorem_a(case),
            CheckId::TheoremB => check_theorem_b(case),
            CheckId::TheoremC => check_theorem_c(case),
            CheckId::EtaGt1 => check_eta_gt1(case),
            CheckId::NoLinear => check_prop_no_linear(case),
            CheckId::KernelCenter => check_prop_kernel_center(case),
            CheckId::NilpotentCorollary => check_nilpotent_corollary(case),
            CheckId::RemarkSuper => check_remark_super(case),
            CheckId::SquareBound => check_square_bound(case),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which checks to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suite(Vec<CheckId>);

impl Suite {
    pub fn all() -> Self {
        Suite(CheckId::ALL.to_vec())
    }

    pub fn checks(&self) -> &[CheckId] {
        &self.0
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    /// `all`, a single letter `A`/`B`/`C`, or a comma-separated list of check names.
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let mut ids = Vec::new();
        for part in s.split(',').map(str::trim) {
            match part.to_ascii_lowercase().as_str() {
                "all" => ids.extend(CheckId::ALL),
                "a" => ids.push(CheckId::TheoremA),
                "b" => ids.push(CheckId::TheoremB),
                "c" => ids.push(CheckId::TheoremC),
                other => ids.push(
                    CheckId::ALL
                        .into_iter()
                        .find(|c| c.name() == other)
                        .ok_or_else(|| HarnessError::BadSuite(part.to_string()))?,
                ),
            }
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(Suite(ids))
    }
}

/// Why a check did not run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "kebab-case")]
pub enum SkipReason {
    /// A hypothesis flag is unknown for this group; the only unexplained skip.
    FlagUnknown(String),
    HypothesisFalse(String),
    NoApplicableCharacter(String),
    NotApplicable(String),
}

impl SkipReason {
    pub fn is_explained(&self) -> bool {
        !matches!(self, SkipReason::FlagUnknown(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Satisfied,
    Skipped(SkipReason),
    /// The input itself breaks the check's parameter constraints.
    Violated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Evidence attached to a result; enough to replay with the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub character: Option<usize>,
    pub degree: Option<i64>,
    pub decomposition: Option<Vec<u64>>,
    pub classification: String,
}

impl Witness {
    pub fn message(text: impl Into<String>) -> Self {
        Witness { character: None, degree: None, decomposition: None, classification: text.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub spec: String,
    pub hypothesis: HypothesisStatus,
    pub verdict: Option<Verdict>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl CheckResult {
    pub(crate) fn skipped(case: &GroupCase, id: CheckId, reason: SkipReason, notes: Vec<String>) -> Self {
        Self::with_status(case, id, HypothesisStatus::Skipped(reason), notes)
    }

    /// A result without a verdict.
    pub(crate) fn with_status(case: &GroupCase, id: CheckId, status: HypothesisStatus, notes: Vec<String>) -> Self {
        CheckResult { id, spec: case.spec.clone(), hypothesis: status, verdict: None, witnesses: Vec::new(), notes }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Some(Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        self.verdict == Some(Verdict::Fail)
    }
}

/// A group with its table and the decompositions of all `χ²`, shared by every check.
pub struct GroupCase {
    pub spec: String,
    pub group: Arc<Group>,
    pub table: CharacterTable,
    pub squares: Vec<Decomposition>,
}

impl GroupCase {
    pub fn new(spec: &str, cache: Option<&TableCache>) -> Result<Self, HarnessError> {
        let spec = spec.trim().to_string();
        let group = Arc::new(builtin(&spec)?);
        let table = match cache {
            Some(c) => c.load_or_compute(&spec, &group)?.0,
            None => compute_table(&group)?,
        };
        Self::from_table(spec, table)
    }

    pub fn from_table(spec: String, table: CharacterTable) -> Result<Self, HarnessError> {
        let squares = table
            .irreducibles()
            .iter()
            .map(|chi| table.decompose(&chi.square()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupCase { spec, group: Arc::clone(table.group()), table, squares })
    }
}

/// Group specs from `default` or a file with one spec per line (`#` comments).
pub fn load_corpus(corpus: &str) -> Result<Vec<String>, HarnessError> {
    if corpus == "default" {
        return Ok(DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect());
    }
    let path = Path::new(corpus);
    if !path.is_file() {
        return Err(HarnessError::BadCorpusSpec(format!("{corpus}: neither 'default' nor a readable file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::BadCorpusSpec(format!("{corpus}: {e}")))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

/// Options for a corpus run.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub cache: Option<TableCache>,
    /// Record wall-clock timings (makes the report nondeterministic).
    pub timings: bool,
}

/// Runs `suite` on every group of the corpus. Groups run in parallel; results
/// are merged in corpus order.
pub fn run_corpus(corpus: &str, suite: &Suite, opts: &RunOptions) -> Result<Report, HarnessError> {
    let specs = load_corpus(corpus)?;
    Ok(run_specs(corpus, &specs, suite, opts))
}

pub fn run_specs(corpus: &str, specs: &[String], suite: &Suite, opts: &RunOptions) -> Report {
    let per_group: Vec<(Vec<CheckResult>, Option<GroupProvenance>, f64)> = specs
        .par_iter()
        .map(|spec| {
            let start = Instant::now();
            let (results, prov) = match GroupCase::new(spec, opts.cache.as_ref()) {
                Ok(case) => {
                    let results = suite.checks().iter().map(|id| id.run(&case)).collect();
                    (results, Some(GroupProvenance::of(&case)))
                }
                Err(e) => {
                    let results = suite
                        .checks()
                        .iter()
                        .map(|&id| CheckResult {
                            id,
                            spec: spec.trim().to_string(),
                            hypothesis: HypothesisStatus::Satisfied,
                            verdict: Some(Verdict::Fail),
                            witnesses: vec![Witness::message(format!("could not prepare group: {e}"))],
                            notes: Vec::new(),
                        })
                        .collect();
                    (results, None)
                }
            };
            (results, prov, start.elapsed().as_secs_f64())
        })
        .collect();
    Report::assemble(corpus, specs, suite, per_group, opts.timings)
}
