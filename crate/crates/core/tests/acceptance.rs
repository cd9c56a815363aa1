//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! All comparisons are exact; the only pinned tolerances are runtime budgets.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use charsquare::character::{compute_table, CharacterTable, ClassFunction, SecondPowerMap};
use charsquare::group::{builtin, subgroup_closure, Group, Subgroup};
use charsquare::harness::DEFAULT_CORPUS;
use charsquare::{CycNum, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_D8: Duration = Duration::from_secs(1);
const BUDGET_SL23: Duration = Duration::from_secs(1);
const BUDGET_REMARK2: Duration = Duration::from_secs(2);
const BUDGET_ORDER21: Duration = Duration::from_secs(1);
const BUDGET_ODD_SWEEP: Duration = Duration::from_secs(300);
/// Criteria 6 to 9 carry no stated budget; this only guards against hangs.
const BUDGET_UNSTATED: Duration = Duration::from_secs(600);

const RANDOM_CHARACTERS_PER_GROUP: usize = 100;
const MAX_MULTIPLICITY: i64 = 3;
const RNG_SEED: u64 = 0x5eed_c4a2;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(spec: &str) -> Result<CharacterTable, String> {
    let g = Arc::new(builtin(spec).map_err(|e| format!("{spec}: {e}"))?);
    compute_table(&g).map_err(|e| format!("{spec}: {e}"))
}

fn decompose(t: &CharacterTable, f: &ClassFunction) -> Result<Vec<u64>, String> {
    t.decompose(f).map(|d| d.multiplicities).map_err(|e| e.to_string())
}

fn ip(a: &ClassFunction, b: &ClassFunction) -> Result<Rational, String> {
    a.inner_product(b).map_err(|e| e.to_string())
}

fn criterion_d8() -> Outcome {
    let t = table("dihedral:8")?;
    let i = t.degrees().iter().position(|&d| d == 2).ok_or("no degree-2 character")?;
    let m = decompose(&t, &t.irreducibles()[i].square())?;
    let linear = t.linear_indices();
    ensure(linear.len() == 4, || format!("{} linear characters", linear.len()))?;
    for (j, &mult) in m.iter().enumerate() {
        let expected = u64::from(linear.contains(&j));
        ensure(mult == expected, || format!("multiplicity of X{j} is {mult}"))?;
    }
    let eta = m.iter().filter(|&&x| x > 0).count();
    ensure(eta == 4, || format!("eta = {eta}"))?;
    Ok(format!("X{i}^2 = sum of the 4 linears, eta 4"))
}

fn criterion_sl23() -> Outcome {
    let t = table("sl23")?;
    let twos: Vec<usize> = (0..t.len()).filter(|&i| t.degrees()[i] == 2).collect();
    ensure(twos.len() == 3, || format!("{} degree-2 characters", twos.len()))?;
    for &i in &twos {
        let chi = &t.irreducibles()[i];
        ensure(chi.kernel().map_err(|e| e.to_string())?.order() == 1, || format!("X{i} not faithful"))?;
        let m = decompose(&t, &chi.square())?;
        let cons: Vec<(usize, u64)> = m.iter().copied().enumerate().filter(|(_, x)| *x > 0).collect();
        let shape: Vec<(i64, u64)> = cons.iter().map(|&(j, x)| (t.degrees()[j], x)).collect();
        ensure(shape == [(1, 1), (3, 1)], || format!("X{i}^2 has shape {shape:?}"))?;
    }
    Ok("each faithful degree-2 character squares to linear + degree 3".into())
}

/// The order-32 group: induce `(λ, 1)` from `N = C4 × C4` with `λ` faithful.
fn criterion_remark2() -> Outcome {
    let g = Arc::new(builtin("remark2:2").map_err(|e| e.to_string())?);
    ensure(g.order() == 32, || format!("order {}", g.order()))?;
    let t = compute_table(&g).map_err(|e| e.to_string())?;
    let ctx = t.context().clone();
    let gens = g.generator_witness();
    let n = subgroup_closure(&g, &gens[..2]).map_err(|e| e.to_string())?;
    ensure(n.order() == 16 && n.is_normal(), || "N is not a normal subgroup of order 16".into())?;
    let tn = compute_table(n.as_group()).map_err(|e| e.to_string())?;
    let nc = n.as_group().classes();
    let (a, b) = (n.local_index(gens[0]).unwrap(), n.local_index(gens[1]).unwrap());
    let i4 = CycNum::root(&ctx, ctx.n() as i64 / 4);
    let lin_n: Vec<ClassFunction> = tn.irreducibles().iter().map(|l| l.embed(&ctx).unwrap()).collect();
    let pick = |va: &CycNum| {
        lin_n
            .iter()
            .find(|l| l.value(nc.class_of(a)) == va && l.value(nc.class_of(b)).to_rational() == Some(Rational::one()))
            .cloned()
    };
    let lambda = pick(&i4).ok_or("no (lambda, 1) with lambda faithful")?;
    let lambda_sq = pick(&(&i4 * &i4)).ok_or("no (lambda^2, 1)")?;
    let chi = ClassFunction::induce(&n, &lambda).map_err(|e| e.to_string())?;
    let theta = ClassFunction::induce(&n, &lambda_sq).map_err(|e| e.to_string())?;
    let ci = t.index_of(&chi).ok_or("induced chi is not irreducible")?;
    let ti = t.index_of(&theta).ok_or("induced theta is not irreducible")?;
    ensure(t.degrees()[ci] == 2 && t.degrees()[ti] == 2, || "wrong degrees".into())?;
    let m = decompose(&t, &chi.square())?;
    let cons: Vec<usize> = (0..m.len()).filter(|&j| m[j] > 0).collect();
    ensure(m.iter().all(|&x| x <= 1) && cons.len() == 3, || format!("chi^2 multiplicities {m:?}"))?;
    ensure(m[ti] == 1, || "theta is not a constituent".into())?;
    let lins: Vec<usize> = cons.iter().copied().filter(|&j| t.degrees()[j] == 1).collect();
    ensure(lins.len() == 2 && lins[0] != lins[1], || format!("linear constituents {lins:?}"))?;
    // both linears extend the invariant character (λ, λ) = λ·λ^g of N
    let s = gens[2];
    let lam_lam_g: Vec<CycNum> = (0..nc.num_classes())
        .map(|c| {
            let x = n.members()[nc.representative(c)];
            let xg = n.local_index(g.conj(x, g.inv(s))).unwrap();
            lambda.value(c) * lambda.value(nc.class_of(xg))
        })
        .collect();
    for &l in &lins {
        let res = t.irreducibles()[l].restrict(&n).map_err(|e| e.to_string())?;
        ensure(res.values() == lam_lam_g.as_slice(), || format!("X{l} does not extend (lambda, lambda)"))?;
    }
    let sq = t.decompose(&chi.square()).unwrap();
    let d2 = charsquare::harness::classify_degree_two(&t, &sq, ci).map_err(|e| e.to_string())?;
    ensure(d2.case == Some("i"), || format!("classified as {:?}", d2.case))?;
    Ok(format!("X{ci}^2 = X{} + X{} + X{ti}, case (i)", lins[0], lins[1]))
}

fn criterion_order21() -> Outcome {
    let t = table("metacyclic:7:3:2")?;
    let mut seen = 0;
    for i in (0..t.len()).filter(|&i| t.degrees()[i] == 3) {
        let chi = &t.irreducibles()[i];
        let ker = chi.kernel().map_err(|e| e.to_string())?;
        let cen = chi.center().map_err(|e| e.to_string())?;
        ensure(ker.order() == 1 && cen.order() == 1, || format!("X{i}: |Ker| {}, |Z| {}", ker.order(), cen.order()))?;
        ensure(ip(&chi.square(), chi)? == Rational::one(), || format!("[X{i}^2, X{i}] != 1"))?;
        let bar = t.index_of(&chi.conjugate()).ok_or("conjugate not in table")?;
        let m = decompose(&t, &chi.square())?;
        let mut expected = vec![0u64; t.len()];
        expected[i] = 1;
        expected[bar] += 2;
        ensure(bar != i && m == expected, || format!("X{i}^2 = {m:?}"))?;
        ensure(&chi.second_power() == chi, || format!("X{i}^(2) != X{i}"))?;
        seen += 1;
    }
    ensure(seen == 2, || format!("{seen} faithful degree-3 characters"))?;
    Ok("both faithful degree-3 characters: Z = Ker = 1, square = chi + 2 conj(chi), chi^(2) = chi".into())
}

fn odd_sweep_group(spec: &str) -> Result<usize, String> {
    let t = table(spec)?;
    let r = t.len();
    let squares: Vec<Vec<u64>> = t.irreducibles().iter().map(|c| decompose(&t, &c.square())).collect::<Result<_, _>>()?;
    let SecondPowerMap::Permutation(perm) = t.second_power_permutation() else {
        return Err(format!("{spec}: second power is not a permutation"));
    };
    for i in 0..r {
        let chi = &t.irreducibles()[i];
        let odd: Vec<usize> = (0..r).filter(|&j| squares[i][j] % 2 == 1).collect();
        let sp = t.index_of(&chi.second_power());
        ensure(odd.len() == 1 && Some(odd[0]) == sp && sp == Some(perm[i]), || format!("{spec} X{i}: odd {odd:?}"))?;
        let psi = t.square_root_char(i).map_err(|e| format!("{spec} X{i}: {e}"))?;
        ensure(perm[psi] == i, || format!("{spec}: sqrt(X{i}) = X{psi} does not invert"))?;
        let defect = t.virtual_decompose(&chi.square().sub(&chi.second_power()).unwrap()).map_err(|e| e.to_string())?;
        ensure(defect.iter().all(|x| *x >= 0 && x % 2 == 0), || format!("{spec} X{i}: defect {defect:?}"))?;
    }
    Ok(r)
}

fn criterion_odd_sweep() -> Outcome {
    let mut groups = 0;
    let mut chars = 0;
    for spec in DEFAULT_CORPUS {
        let g = builtin(spec).map_err(|e| e.to_string())?;
        if g.order() % 2 == 0 {
            continue;
        }
        chars += odd_sweep_group(spec)?;
        groups += 1;
    }
    Ok(format!("{groups} odd-order groups, {chars} irreducibles, zero exceptions"))
}

fn criterion_prime_degree() -> Outcome {
    for spec in ["heisenberg:3", "heisenberg:5", "heisenberg:7"] {
        let t = table(spec)?;
        let p = builtin(spec).unwrap().prime_power_base().unwrap() as i64;
        let mut count = 0;
        for i in (0..t.len()).filter(|&i| t.degrees()[i] == p) {
            let chi = &t.irreducibles()[i];
            let m = decompose(&t, &chi.square())?;
            ensure(m.iter().filter(|&&x| x > 0).count() == 1, || format!("{spec} X{i}: eta != 1"))?;
            ensure(chi.square() == chi.second_power().scale(p), || format!("{spec} X{i}: square != p chi^(2)"))?;
            ensure(chi.vanishes_off_center(), || format!("{spec} X{i}: nonzero off the center"))?;
            count += 1;
        }
        ensure(count == (p - 1) as usize, || format!("{spec}: {count} characters of degree {p}"))?;
    }
    let t = table("wreath_cyclic:3")?;
    let mut case_two = 0;
    for i in (0..t.len()).filter(|&i| t.degrees()[i] == 3) {
        let chi = &t.irreducibles()[i];
        let m = decompose(&t, &chi.square())?;
        let cons: Vec<usize> = (0..m.len()).filter(|&j| m[j] > 0).collect();
        ensure(cons.iter().all(|&j| t.degrees()[j] == 3), || format!("wreath X{i}: constituent degrees"))?;
        let sp = t.index_of(&chi.second_power()).ok_or("second power not irreducible")?;
        if cons.len() == 2 {
            let other = cons.iter().copied().find(|&j| j != sp).unwrap();
            ensure(m[sp] == 1 && m[other] == 2, || format!("wreath X{i}: pattern {m:?}"))?;
            case_two += 1;
        } else {
            ensure(cons.len() == 1 && chi.vanishes_off_center(), || format!("wreath X{i}: eta {}", cons.len()))?;
        }
    }
    ensure(case_two > 0, || "wreath_cyclic:3 shows no eta = 2 character".into())?;
    Ok(format!("Heisenberg p = 3, 5, 7 in the one-constituent case; wreath_cyclic:3 has {case_two} characters with eta 2"))
}

fn criterion_sharpness() -> Outcome {
    let t = table("metacyclic:11:5:3")?;
    let linear = t.linear_indices();
    let fives: Vec<usize> = (0..t.len()).filter(|&i| t.degrees()[i] == 5).collect();
    ensure(linear.len() == 5 && fives.len() == 2 && t.len() == 7, || format!("degrees {:?}", t.degrees()))?;
    for &i in &fives {
        let m = decompose(&t, &t.irreducibles()[i].square())?;
        let eta = m.iter().filter(|&&x| x > 0).count();
        ensure(eta == 2 && eta < 3, || format!("X{i}: eta {eta}"))?;
        ensure(linear.iter().all(|&l| m[l] == 0), || format!("X{i}: linear constituent"))?;
    }
    Ok("5 linears, 2 of degree 5, each square has eta 2 and no linear constituent".into())
}

/// Exact column orthogonality, computed without the library's verifier.
fn columns_orthogonal(t: &CharacterTable) -> bool {
    let cd = t.group().classes();
    let r = cd.num_classes();
    (0..r).all(|a| {
        (0..r).all(|b| {
            let mut acc = CycNum::zero(t.context());
            for chi in t.irreducibles() {
                acc = &acc + &(chi.value(a) * &chi.value(b).conjugate());
            }
            let expected = if a == b { cd.centralizer_order(a) as i64 } else { 0 };
            acc == CycNum::from_int(t.context(), expected)
        })
    })
}

fn frobenius_triples(g: &Arc<Group>, t: &CharacterTable) -> Result<usize, String> {
    let cd = g.classes();
    let mut subgroups: Vec<Subgroup> = Vec::new();
    for c in 1..cd.num_classes().min(6) {
        subgroups.push(subgroup_closure(g, &[cd.representative(c)]).map_err(|e| e.to_string())?);
    }
    if g.generator_witness().len() > 1 {
        subgroups.push(subgroup_closure(g, &g.generator_witness()[..1]).map_err(|e| e.to_string())?);
    }
    let mut triples = 0;
    for h in &subgroups {
        let th = compute_table(h.as_group()).map_err(|e| e.to_string())?;
        let restricted: Vec<ClassFunction> =
            t.irreducibles().iter().map(|chi| chi.restrict(h).unwrap()).collect();
        for lam in th.irreducibles() {
            let lam = lam.embed(t.context()).map_err(|e| e.to_string())?;
            let induced = ClassFunction::induce(h, &lam).map_err(|e| e.to_string())?;
            for (chi, res) in t.irreducibles().iter().zip(&restricted) {
                let left = ip(&induced, chi)?;
                let right = ip(&lam, res)?;
                ensure(left == right, || format!("{}: reciprocity fails", g.family()))?;
                triples += 1;
            }
        }
    }
    Ok(triples)
}

fn criterion_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut triples = 0;
    let mut round_trips = 0;
    for spec in DEFAULT_CORPUS {
        let g = Arc::new(builtin(spec).map_err(|e| e.to_string())?);
        let t = compute_table(&g).map_err(|e| e.to_string())?;
        let r = t.len();
        for i in 0..r {
            for j in 0..r {
                let v = ip(&t.irreducibles()[i], &t.irreducibles()[j])?;
                ensure(v == if i == j { Rational::one() } else { Rational::zero() }, || format!("{spec}: rows {i}, {j}"))?;
            }
        }
        ensure(columns_orthogonal(&t), || format!("{spec}: column orthogonality"))?;
        triples += frobenius_triples(&g, &t)?;
        for _ in 0..RANDOM_CHARACTERS_PER_GROUP {
            let m: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=MAX_MULTIPLICITY)).collect();
            let got = decompose(&t, &t.combine(&m))?;
            ensure(got.iter().zip(&m).all(|(a, b)| *a as i64 == *b), || format!("{spec}: round trip {m:?}"))?;
            round_trips += 1;
        }
        let odd = g.order() % 2 == 1;
        let p_group = g.prime_power_base().is_some();
        let linear = t.linear_indices();
        for i in 0..r {
            let chi = &t.irreducibles()[i];
            let m = decompose(&t, &chi.square())?;
            if odd && t.degrees()[i] > 1 {
                ensure(linear.iter().all(|&l| m[l] == 0), || format!("{spec} X{i}: linear constituent in odd order"))?;
            }
            let ker = chi.kernel().map_err(|e| e.to_string())?;
            let cen = chi.center().map_err(|e| e.to_string())?;
            if ker.members() != cen.members() || (p_group && i != 0) {
                ensure(m[i] == 0, || format!("{spec} X{i}: [chi^2, chi] = {}", m[i]))?;
            }
            for (j, &mult) in m.iter().enumerate() {
                ensure(mult <= t.degrees()[j] as u64, || format!("{spec}: [X{i}^2, X{j}] = {mult}"))?;
            }
        }
    }
    Ok(format!("{} tables orthogonal, {triples} reciprocity triples, {round_trips} round trips", DEFAULT_CORPUS.len()))
}

fn criterion_cli_verify() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_charsquare"))
        .args(["verify", "--suite", "all", "--corpus", "default", "--format", "machine", "--no-cache"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    ensure(code == Some(0), || format!("exit status {code:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let fails = report["totals"]["fail"].as_u64().ok_or("no fail tally")?;
    let unexplained = report["totals"]["unexplained_skips"].as_u64().ok_or("no skip tally")?;
    let results = report["results"].as_array().ok_or("no results")?.len();
    ensure(fails == 0 && unexplained == 0, || format!("{fails} failures, {unexplained} unexplained skips"))?;
    Ok(format!("exit 0, {results} results, 0 failures, 0 unexplained skips"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "dihedral:8 square is the sum of its linears", BUDGET_D8, criterion_d8),
        (2, "sl23 degree-2 squares", BUDGET_SL23, criterion_sl23),
        (3, "order-32 induced character, case (i)", BUDGET_REMARK2, criterion_remark2),
        (4, "order-21 faithful character", BUDGET_ORDER21, criterion_order21),
        (5, "odd-order squaring sweep", BUDGET_ODD_SWEEP, criterion_odd_sweep),
        (6, "prime-degree dichotomy", BUDGET_UNSTATED, criterion_prime_degree),
        (7, "supersolvable sharpness at order 55", BUDGET_UNSTATED, criterion_sharpness),
        (8, "property suites over the corpus", BUDGET_UNSTATED, criterion_properties),
        (9, "verify --suite all --corpus default", BUDGET_UNSTATED, criterion_cli_verify),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {n} [{status}] {name}: {detail} ({:.3} s, budget {} s)",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
