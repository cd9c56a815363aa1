//! Individual checks. Each takes a prepared [`GroupCase`] and never panics on
//! mathematical failure: a broken conclusion becomes a `Fail` with witnesses.

use super::{CheckId, CheckResult, GroupCase, HypothesisStatus, SkipReason, Verdict, Witness};
use crate::character::{CharacterError, CharacterTable, Decomposition, SecondPowerMap};
use crate::group::{remark_super_parameters, GroupSpec};

/// Outcome of classifying one character against a dichotomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: Option<&'static str>,
    pub detail: String,
}

fn witness(t: &CharacterTable, i: usize, dec: &Decomposition, classification: impl Into<String>) -> Witness {
    Witness {
        character: Some(i),
        degree: Some(t.degrees()[i]),
        decomposition: Some(dec.multiplicities.clone()),
        classification: classification.into(),
    }
}

fn flag_gate(value: Option<bool>, name: &str) -> Result<(), HypothesisStatus> {
    match value {
        None => Err(HypothesisStatus::Skipped(SkipReason::FlagUnknown(name.into()))),
        Some(false) => Err(HypothesisStatus::Skipped(SkipReason::HypothesisFalse(format!("group is not {name}")))),
        Some(true) => Ok(()),
    }
}

/// Builds a result from per-character witnesses: any failing witness fails the check.
fn conclude(case: &GroupCase, id: CheckId, passes: Vec<Witness>, fails: Vec<Witness>, notes: Vec<String>) -> CheckResult {
    if passes.is_empty() && fails.is_empty() {
        return CheckResult::skipped(case, id, SkipReason::NoApplicableCharacter(id.applicability().into()), notes);
    }
    let verdict = if fails.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let witnesses = if fails.is_empty() { passes } else { fails };
    CheckResult {
        id,
        spec: case.spec.clone(),
        hypothesis: HypothesisStatus::Satisfied,
        verdict: Some(verdict),
        witnesses,
        notes,
    }
}

fn errored(case: &GroupCase, id: CheckId, err: CharacterError) -> CheckResult {
    CheckResult {
        id,
        spec: case.spec.clone(),
        hypothesis: HypothesisStatus::Satisfied,
        verdict: Some(Verdict::Fail),
        witnesses: vec![Witness::message(format!("computation error: {err}"))],
        notes: Vec::new(),
    }
}

/// Odd order: `ϑ ↦ ϑ^(2)` permutes `Irr(G)`, `χ^(2)` is the unique odd
/// constituent of `χ²`, square roots are unique, and `ϑ² − ϑ^(2)` is twice a
/// generalized character (a character when `ϑ` is irreducible).
pub fn check_theorem_a(case: &GroupCase) -> CheckResult {
    let id = CheckId::TheoremA;
    if !case.group.flags().odd_order {
        return CheckResult::skipped(case, id, SkipReason::HypothesisFalse("even order".into()), Vec::new());
    }
    let t = &case.table;
    let r = t.len();
    let squares = &case.squares;
    let mut passes = Vec::new();
    let mut fails = Vec::new();

    let perm = match t.second_power_permutation() {
        SecondPowerMap::Permutation(p) => p,
        SecondPowerMap::NotBijective { images, witness: w } => {
            fails.push(Witness {
                character: Some(w),
                degree: Some(t.degrees()[w]),
                decomposition: None,
                classification: format!("second-power map is not a bijection: images {images:?}"),
            });
            return conclude(case, id, passes, fails, Vec::new());
        }
    };
    let mut notes = vec![format!("second-power permutation: {perm:?}")];

    for i in 0..r {
        let dec = &squares[i];
        let odd = dec.odd_constituents();
        if odd != [perm[i]] {
            fails.push(witness(t, i, dec, format!("odd constituents {odd:?}, second power is X{}", perm[i])));
            continue;
        }
        // square roots by exhaustive scan over Irr(G)
        let roots: Vec<usize> = (0..r).filter(|&j| squares[j].multiplicity(i) % 2 == 1).collect();
        let closed_form = t.square_root_char(i);
        if roots.len() != 1 || closed_form.as_ref().ok() != Some(&roots[0]) {
            fails.push(witness(t, i, dec, format!("square roots by scan {roots:?}, closed form {closed_form:?}")));
            continue;
        }
        let gamma2 = t.get(i).map(|chi| chi.square().sub(&chi.second_power()).expect("same group"));
        match gamma2.and_then(|g| t.virtual_decompose(&g)) {
            Ok(m) if m.iter().all(|x| *x >= 0 && x % 2 == 0) => {}
            Ok(m) => {
                fails.push(witness(t, i, dec, format!("square minus second power has multiplicities {m:?}")));
                continue;
            }
            Err(e) => return errored(case, id, e),
        }
        passes.push(witness(t, i, dec, format!("unique odd constituent X{}, unique square root X{}", perm[i], roots[0])));
    }

    // generalized characters χ_i − χ_j: the defect is still even
    for i in 1..r {
        let theta = t.irreducibles()[i].sub(&t.irreducibles()[i - 1]).expect("same group");
        let defect = theta.square().sub(&theta.second_power()).expect("same group");
        match t.virtual_decompose(&defect) {
            Ok(m) if m.iter().all(|x| x % 2 == 0) => {}
            Ok(m) => fails.push(Witness {
                character: Some(i),
                degree: None,
                decomposition: None,
                classification: format!("generalized X{i} - X{}: defect {m:?} not even", i - 1),
            }),
            Err(e) => return errored(case, id, e),
        }
    }
    if r > 1 {
        notes.push(format!("even defect verified on {} generalized characters", r - 1));
    }
    conclude(case, id, passes, fails, notes)
}

/// Classifies `χ²` for a degree-2 character: two linears plus a degree-2
/// irreducible, or four distinct linears.
pub fn classify_degree_two(t: &CharacterTable, dec: &Decomposition, i: usize) -> Result<Classification, CharacterError> {
    if t.degrees()[i] != 2 {
        return Err(CharacterError::DegreeMismatch { expected: "2".into(), found: t.degrees()[i] });
    }
    let cons = dec.constituents();
    let linear: Vec<usize> = cons.iter().filter(|(j, _)| t.degrees()[*j] == 1).map(|(j, _)| *j).collect();
    let two: Vec<usize> = cons.iter().filter(|(j, _)| t.degrees()[*j] == 2).map(|(j, _)| *j).collect();
    let simple = cons.iter().all(|(_, m)| *m == 1);
    let case = if simple && cons.len() == 3 && linear.len() == 2 && two.len() == 1 {
        Some("i")
    } else if simple && cons.len() == 4 && linear.len() == 4 {
        Some("ii")
    } else {
        None
    };
    Ok(Classification { case, detail: dec.render() })
}

/// Monomial degree-2 characters square to one of the two shapes.
pub fn check_theorem_b(case: &GroupCase) -> CheckResult {
    let id = CheckId::TheoremB;
    let t = &case.table;
    if let Err(status) = flag_gate(case.group.flags().all_irreducibles_monomial, "all-irreducibles-monomial") {
        let notes = (0..t.len())
            .filter(|&i| t.degrees()[i] == 2)
            .filter_map(|i| {
                let c = classify_degree_two(t, &case.squares[i], i).ok()?;
                let degs: Vec<i64> = case.squares[i].constituents().iter().map(|(j, _)| t.degrees()[*j]).collect();
                Some(format!(
                    "X{i}: square = {} (constituent degrees {degs:?}), shape {}",
                    c.detail,
                    c.case.unwrap_or("matches neither case")
                ))
            })
            .collect();
        return CheckResult::with_status(case, id, status, notes);
    }
    let mut passes = Vec::new();
    let mut fails = Vec::new();
    for i in (0..t.len()).filter(|&i| t.degrees()[i] == 2) {
        let dec = &case.squares[i];
        match classify_degree_two(t, dec, i) {
            Ok(Classification { case: Some(c), detail }) => passes.push(witness(t, i, dec, format!("case ({c}): {detail}"))),
            Ok(Classification { case: None, detail }) => fails.push(witness(t, i, dec, format!("neither case: {detail}"))),
            Err(e) => return errored(case, id, e),
        }
    }
    conclude(case, id, passes, fails, Vec::new())
}

fn is_odd_prime(n: i64) -> bool {
    n > 2 && crate::character::modular::is_prime(n as u64)
}

/// Classifies `χ²` for `χ(1) = p` an odd prime in a nilpotent group.
pub fn classify_prime_degree(t: &CharacterTable, dec: &Decomposition, i: usize) -> Result<Classification, CharacterError> {
    let p = t.degrees()[i];
    if !is_odd_prime(p) {
        return Err(CharacterError::DegreeMismatch { expected: "an odd prime".into(), found: p });
    }
    let chi = t.get(i)?;
    let sp = chi.second_power();
    let Some(sp_idx) = t.index_of(&sp) else {
        return Ok(Classification { case: None, detail: format!("second power of X{i} is not irreducible") });
    };
    let cons = dec.constituents();
    let detail = dec.render();
    if cons.iter().any(|(j, _)| t.degrees()[*j] != p) {
        return Ok(Classification { case: None, detail: format!("{detail}: a constituent has degree other than {p}") });
    }
    let eta = cons.len() as i64;
    if eta == 1 {
        let ok = cons[0] == (sp_idx, p as u64) && chi.square() == sp.scale(p) && chi.vanishes_off_center();
        return Ok(Classification { case: ok.then_some("i"), detail });
    }
    if eta == (p + 1) / 2 {
        let ok = cons.iter().all(|&(j, m)| if j == sp_idx { m == 1 } else { m == 2 }) && dec.multiplicity(sp_idx) == 1;
        return Ok(Classification { case: ok.then_some("ii"), detail });
    }
    Ok(Classification { case: None, detail: format!("{detail}: eta = {eta}") })
}

/// Nilpotent groups, `χ(1) = p` odd prime: the two-case dichotomy.
pub fn check_theorem_c(case: &GroupCase) -> CheckResult {
    let id = CheckId::TheoremC;
    if let Err(status) = flag_gate(case.group.flags().nilpotent, "nilpotent") {
        return CheckResult::with_status(case, id, status, Vec::new());
    }
    let t = &case.table;
    let mut passes = Vec::new();
    let mut fails = Vec::new();
    for i in (0..t.len()).filter(|&i| is_odd_prime(t.degrees()[i])) {
        let dec = &case.squares[i];
        match classify_prime_degree(t, dec, i) {
            Ok(Classification { case: Some(c), detail }) => {
                passes.push(witness(t, i, dec, format!("case ({c}): eta = {}, {detail}", dec.eta())))
            }
            Ok(Classification { case: None, detail }) => fails.push(witness(t, i, dec, detail)),
            Err(e) => return errored(case, id, e),
        }
    }
    conclude(case, id, passes, fails, Vec::new())
}

/// Supersolvable groups, `χ(1) = 2^n > 1`: `χ²` has at least two constituents.
pub fn check_eta_gt1(case: &GroupCase) -> CheckResult {
    let id = CheckId::EtaGt1;
    if let Err(status) = flag_gate(case.group.flags().supersolvable, "supersolvable") {
        return CheckResult::with_status(case, id, status, Vec::new());
    }
    let t = &case.table;
    let mut passes = Vec::new();
    let mut fails = Vec::new();
    for i in (0..t.len()).filter(|&i| t.degrees()[i] > 1 && (t.degrees()[i] as u64).is_power_of_two()) {
        let dec = &case.squares[i];
        let eta = dec.eta();
        let w = witness(t, i, dec, format!("eta = {eta}"));
        if eta >= 2 {
            passes.push(w);
        } else {
            fails.push(w);
        }
    }
    conclude(case, id, passes, fails, Vec::new())
}

/// Odd order: no nonlinear `χ` has a linear constituent in `χ²`.
pub fn check_prop_no_linear(case: &GroupCase) -> CheckResult {
    let id = CheckId::NoLinear;
    let t = &case.table;
    let linear = t.linear_indices();
    let offending = |i: usize| -> Vec<usize> {
        linear.iter().copied().filter(|&l| case.squares[i].multiplicity(l) > 0).collect()
    };
    if !case.group.flags().odd_order {
        let notes = (0..t.len())
            .filter(|&i| t.degrees()[i] > 1)
            .filter_map(|i| {
                let bad = offending(i);
                (!bad.is_empty()).then(|| format!("X{i} has linear constituents {bad:?} (conclusion fails in even order)"))
            })
            .collect();
        return CheckResult::skipped(case, id, SkipReason::HypothesisFalse("even order".into()), notes);
    }
    let mut passes = Vec::new();
    let mut fails = Vec::new();
    for i in (0..t.len()).filter(|&i| t.degrees()[i] > 1) {
        let bad = offending(i);
        let dec = &case.squares[i];
        if bad.is_empty() {
            passes.push(witness(t, i, dec, "no linear constituent"));
        } else {
            fails.push(witness(t, i, dec, format!("linear constituents {bad:?}")));
        }
    }
    conclude(case, id, passes, fails, Vec::new())
}

/// `Ker(χ) ≠ Z(χ)` forces `[χ², χ] = 0`; in a p-group this holds for all `χ ≠ 1`.
pub fn check_prop_kernel_center(case: &GroupCase) -> CheckResult {
    let id = CheckId::KernelCenter;
    let t = &case.table;
    let p_group = case.group.prime_power_base().is_some() && case.group.order() > 1;
    let mut passes = Vec::new();
    let mut fails = Vec::new();
    let mut notes = Vec::new();
    if p_group {
        notes.push("p-group: every nontrivial character is checked".into());
    }
    for i in 0..t.len() {
        let chi = &t.irreducibles()[i];
        let (ker, cen) = match (chi.kernel(), chi.center()) {
            (Ok(k), Ok(z)) => (k, z),
            (Err(e), _) | (_, Err(e)) => return errored(case, id, e),
        };
        let differ = ker.members() != cen.members();
        let m = case.squares[i].multiplicity(i);
        let label = format!("|Ker| = {}, |Z| = {}, [X{i}^2, X{i}] = {m}", ker.order(), cen.order());
        if differ || (p_group && i != 0) {
            let w = witness(t, i, &case.squares[i], label);
            if m == 0 {
                passes.push(w);
            } else {
                fails.push(w);
            }
        } else if m != 0 && i != 0 {
            notes.push(format!("sharpness: X{i} has Ker = Z and {label}"));
        }
    }
    conclude(case, id, passes, fails, notes)
}

/// Nilpotent groups: if `χ²` is a multiple of one irreducible then `χ(1)` is odd.
pub fn check_nilpotent_corollary(case: &GroupCase) -> CheckResult {
    let id = CheckId::NilpotentCorollary;
    if let Err(status) = flag_gate(case.group.flags().nilpotent, "nilpotent") {
        return CheckResult::with_status(case, id, status, Vec::new());
    }
    let t = &case.table;
    let mut passes = Vec::new();
    let mut fails = Vec::new();
    for i in 0..t.len() {
        let dec = &case.squares[i];
        if dec.eta() != 1 {
            continue;
        }
        let w = witness(t, i, dec, format!("square is a multiple of one irreducible, degree {}", t.degrees()[i]));
        if t.degrees()[i] % 2 == 1 {
            passes.push(w);
        } else {
            fails.push(w);
        }
    }
    conclude(case, id, passes, fails, Vec::new())
}

/// `C_q ⋊ C_p` with `q = rp + 1`, `1 < r < (p+1)/2`: the prime-degree
/// dichotomy fails, so nilpotency cannot be weakened to supersolvability.
pub fn check_remark_super(case: &GroupCase) -> CheckResult {
    let id = CheckId::RemarkSuper;
    let params = case.spec.parse::<GroupSpec>().ok().and_then(|s| s.metacyclic_params());
    let Some((q, p, _)) = params else {
        return CheckResult::skipped(case, id, SkipReason::NotApplicable("not a metacyclic pq-group".into()), Vec::new());
    };
    let Some(r) = remark_super_parameters(q, p) else {
        let reason = format!("q = {q}, p = {p}: need q = rp + 1 with 1 < r < (p+1)/2");
        return CheckResult::with_status(case, id, HypothesisStatus::Violated(reason), Vec::new());
    };
    let t = &case.table;
    let (p, r) = (p as i64, r as usize);
    let linear = t.linear_indices();
    let top: Vec<usize> = (0..t.len()).filter(|&i| t.degrees()[i] == p).collect();
    let mut fails = Vec::new();
    let mut passes = Vec::new();
    if linear.len() != p as usize || top.len() != r || linear.len() + top.len() != t.len() {
        fails.push(Witness::message(format!(
            "expected {p} linears and {r} characters of degree {p}, found degrees {:?}",
            t.degrees()
        )));
    }
    for &i in &top {
        let dec = &case.squares[i];
        let eta = dec.eta();
        let has_linear = linear.iter().any(|&l| dec.multiplicity(l) > 0);
        let label = format!("eta = {eta} <= r = {r} < {}, {}", (p + 1) / 2, dec.render());
        if eta <= r && 2 * r < (p + 1) as usize && eta > 1 && !has_linear {
            passes.push(witness(t, i, dec, label));
        } else {
            fails.push(witness(t, i, dec, format!("{label}, linear constituent: {has_linear}")));
        }
    }
    conclude(case, id, passes, fails, Vec::new())
}

/// `[χ², θ] ≤ θ(1)` for all irreducible `χ`, `θ`.
pub fn check_square_bound(case: &GroupCase) -> CheckResult {
    let id = CheckId::SquareBound;
    let t = &case.table;
    let mut fails = Vec::new();
    let mut worst = (0u64, 0usize, 0usize);
    for i in 0..t.len() {
        let dec = &case.squares[i];
        for (j, m) in dec.constituents() {
            if m > t.degrees()[j] as u64 {
                fails.push(witness(t, i, dec, format!("[X{i}^2, X{j}] = {m} > X{j}(1) = {}", t.degrees()[j])));
            }
            if m > worst.0 {
                worst = (m, i, j);
            }
        }
    }
    let (m, i, j) = worst;
    let passes = vec![witness(t, i, &case.squares[i], format!("largest multiplicity [X{i}^2, X{j}] = {m} <= {}", t.degrees()[j]))];
    conclude(case, id, passes, fails, Vec::new())
}

/// Row and column orthogonality, re-run on the table in use.
pub fn check_orthogonality(case: &GroupCase) -> CheckResult {
    let id = CheckId::Orthogonality;
    match case.table.verify() {
        Ok(()) => {
            let prov = case.table.provenance();
            let w = Witness::message(format!(
                "{} irreducibles, prime {}, conductor {}",
                case.table.len(),
                prov.prime,
                case.table.conductor()
            ));
            conclude(case, id, vec![w], Vec::new(), Vec::new())
        }
        Err(e) => errored(case, id, e),
    }
}
