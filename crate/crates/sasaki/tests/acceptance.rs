//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};

use sasaki::catalog::{catalog, default_lambdas, find, CatalogEntry, Variant};
use sasaki::verify::{decomposition, materialize, verify_variant, Report};
use sasaki_core::contact::check_sasaki;
use sasaki_core::forms::Form;
use sasaki_core::lie::LieAlgebra;
use sasaki_core::linalg::vector;
use sasaki_core::metric::{curvature, levi_civita, MetricLieAlgebra};
use sasaki_core::reduction::{construct_sasaki, extract_reduction, KahlerSeed, PseudoKahler};
use sasaki_core::salamon::{normalize, parse_salamon, print_salamon};
use sasaki_core::scalar::{int, q};
use sasaki_core::standard::{isometrize, Decomposition};
use sasaki_core::{Matrix, Scalar};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(limit: Duration, elapsed: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.3} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()))
}

fn all_variants() -> Vec<(&'static CatalogEntry, Variant)> {
    catalog().iter().flat_map(|e| e.variants(&default_lambdas()).into_iter().map(move |v| (e, v))).collect()
}

fn einstein() -> Outcome {
    let start = Instant::now();
    let e = find("ex4.3").expect("ex4.3 is in the catalog");
    let v = &e.variants(&[])[0];
    let (m, _) = materialize(e, v).expect("ex4.3 builds");
    let c = levi_civita(&m).expect("nondegenerate metric");
    let r = curvature(&m, &c);
    let exact = *r.ricci() == m.metric().scale(&int(4));
    let (fast, t) = within(Duration::from_secs(1), start.elapsed());
    outcome(exact && fast, format!("ric == 4g: {exact}; {t}"))
}

fn dim5() -> Outcome {
    let start = Instant::now();
    let mut passed = 0;
    let mut failing = Vec::new();
    let mut total = 0;
    for e in catalog().iter().filter(|e| e.id.starts_with("dim5.")) {
        for v in e.variants(&[]) {
            total += 1;
            let r = verify_variant(e, &v);
            let ok = r.jacobi
                && r.acms == Some(true)
                && r.sasaki()
                && r.characterizations_agree == Some(true)
                && r.rank_one == Some(true)
                && r.z_standard == Some(true);
            if ok {
                passed += 1;
            } else {
                failing.push(format!("{} {}", e.id, v.label()));
            }
        }
    }
    let (fast, t) = within(Duration::from_secs(5), start.elapsed());
    let detail = format!("{passed}/{total}; {t}{}", failing_suffix(&failing));
    outcome(passed == 12 && total == 12 && fast, detail)
}

fn table1() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = catalog()
        .iter()
        .filter(|e| e.id.starts_with("table1."))
        .flat_map(|e| e.variants(&default_lambdas()).into_iter().map(move |v| verify_variant(e, &v)))
        .collect();
    let passed = reports.iter().filter(|r| r.all_pass).count();
    let mut failing_rows: Vec<String> = reports.iter().filter(|r| !r.all_pass).map(|r| r.id.clone()).collect();
    failing_rows.dedup();
    let (fast, t) = within(Duration::from_secs(60), start.elapsed());
    let detail = format!("{passed}/{} variants; {t}{}", reports.len(), failing_suffix(&failing_rows));
    outcome(passed == reports.len() && fast, detail)
}

fn failing_suffix(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", items.join(", "))
    }
}

fn reduction_ground_truth() -> Outcome {
    let e = find("ex4.3prime").expect("ex4.3prime is in the catalog");
    let v = &e.variants(&[])[0];
    let (m, _) = materialize(e, v).expect("ex4.3prime builds");
    let dec = decomposition(e, &m);
    let r = match extract_reduction(&dec, &e.xi_vector()) {
        Ok(r) => r,
        Err(err) => return outcome(false, format!("extraction failed: {err}")),
    };
    let u = |i| vector::unit(5, i);
    let checks = [
        ("Ď = I", r.seed.d == Matrix::identity(2)),
        ("b = −e2", r.b == vector::neg(&u(1))),
        ("h = 2", r.h == int(2)),
        ("τ = −1", r.tau == int(-1)),
        ("ǧ = ⟨e3, e4⟩", r.reduction_basis == vec![u(2), u(3)]),
        ("ω = e^{34}", r.seed.kahler.omega == Form::basis(2, &[0, 1])),
        ("quotient Heisenberg", is_heisenberg(r.sasaki_quotient.metric().algebra())),
    ];
    let bad: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let detail = if bad.is_empty() {
        format!("all 7 fields exact; quotient {}", print_salamon(r.sasaki_quotient.metric().algebra()))
    } else {
        format!("mismatched: {}", bad.join(", "))
    };
    outcome(bad.is_empty(), detail)
}

/// Three-dimensional, nilpotent, with one-dimensional derived algebra.
fn is_heisenberg(l: &LieAlgebra) -> bool {
    let series = l.lower_central_series().expect("finite series");
    l.dim() == 3 && series.get(1).is_some_and(|s| s.dim() == 1) && l.is_nilpotent().unwrap_or(false)
}

fn isometrization() -> Outcome {
    let e = find("ex4.3").expect("ex4.3 is in the catalog");
    let target = find("ex4.3prime").expect("ex4.3prime is in the catalog");
    let (m, _) = materialize(e, &e.variants(&[])[0]).expect("ex4.3 builds");
    let (mp, _) = materialize(target, &target.variants(&[])[0]).expect("ex4.3prime builds");
    let u = |i| vector::unit(5, i);
    let dec = Decomposition::new(m.clone(), vec![u(0), vector::sub(&u(1), &u(4)), u(2), u(3)], vec![u(4)]);
    let chi = m.sym_anti_split(&m.algebra().ad(&u(4))).0;
    match isometrize(&dec, &[chi]) {
        Ok(out) => {
            let same = out.algebra() == mp.algebra() && out.metric() == mp.metric();
            outcome(same, format!("result {}", print_salamon(out.algebra())))
        }
        Err(err) => outcome(false, format!("isometrize failed: {err}")),
    }
}

fn definite(dim: usize, sign: i64) -> PseudoKahler {
    let m = MetricLieAlgebra::new(LieAlgebra::abelian(dim).expect("abelian"), Matrix::identity(dim).scale(&int(sign))).expect("metric");
    let j = Matrix::from_fn(dim, dim, |r, c| {
        if r % 2 == 1 && c == r - 1 {
            int(1)
        } else if r % 2 == 0 && c == r + 1 {
            int(-1)
        } else {
            int(0)
        }
    });
    PseudoKahler::from_complex_structure(m, j)
}

fn pick<T: Clone>(rng: &mut TestRng, items: &[T]) -> T {
    items[rng.next_u32() as usize % items.len()].clone()
}

/// Diagonal `Ď` with eigenvalues in `{0, h/2}` on each `J`-plane, so the
/// quadratic identity holds.
fn random_seed(rng: &mut TestRng) -> KahlerSeed {
    let dim = pick(rng, &[2usize, 4]);
    let k = definite(dim, pick(rng, &[1i64, -1]));
    let h = pick(rng, &[int(1), int(2), int(-2), q(1, 2), q(-3, 2), int(3)]);
    let on: Vec<bool> = (0..dim / 2).map(|_| rng.next_u32().is_multiple_of(2)).collect();
    let half = &h * &q(1, 2);
    let d = Matrix::from_fn(dim, dim, |r, c| if r == c && on[r / 2] { half.clone() } else { int(0) });
    KahlerSeed::new(k, d, h, pick(rng, &[int(1), int(-1)]))
}

fn roundtrip() -> Outcome {
    let mut seeds: Vec<KahlerSeed> = Vec::new();
    for (e, v) in all_variants() {
        if let Some(s) = e.expected_seed(&v) {
            if !seeds.contains(&s) {
                seeds.push(s);
            }
        }
    }
    let from_catalog = seeds.len();
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    seeds.extend((0..24).map(|_| random_seed(&mut rng)));
    let mut failures = 0;
    for s in &seeds {
        let ok = construct_sasaki(s).ok().and_then(|c| extract_reduction(&c.decomposition, &c.xi).ok()).is_some_and(|r| r.seed == *s);
        if !ok {
            failures += 1;
        }
    }
    let detail = format!("{} of {} seeds recovered ({from_catalog} from the catalog, 24 random)", seeds.len() - failures, seeds.len());
    outcome(failures == 0 && seeds.len() >= 30, detail)
}

fn characterizations() -> Outcome {
    let mut structures = Vec::new();
    for (e, v) in all_variants() {
        if let Ok((m, a)) = materialize(e, &v) {
            if m.algebra().jacobi_check().is_ok() {
                structures.push(a);
            }
        }
    }
    let mut disagreements = 0;
    let mut sasaki = Vec::new();
    for a in &structures {
        match check_sasaki(a) {
            Ok(s) if s.characterizations_agree() => {
                if s.verdict {
                    sasaki.push(a.clone());
                }
            }
            _ => disagreements += 1,
        }
    }
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let deltas = [int(1), int(-1), q(1, 2), q(-1, 2), int(2)];
    let mut survivors = 0;
    for _ in 0..50 {
        let a = pick(&mut rng, &sasaki);
        let n = a.dim();
        let (r, c) = (rng.next_u32() as usize % n, rng.next_u32() as usize % n);
        let mut phi = a.phi().clone();
        phi[(r, c)] = &phi[(r, c)] + &pick(&mut rng, &deltas);
        match check_sasaki(&a.with_phi(phi)) {
            Ok(s) => {
                if !s.characterizations_agree() {
                    disagreements += 1;
                }
                if s.verdict || s.nabla_phi_identity {
                    survivors += 1;
                }
            }
            Err(_) => disagreements += 1,
        }
    }
    let detail = format!(
        "{} catalog structures, 50 perturbations; disagreements {disagreements}, perturbations still Sasaki {survivors}",
        structures.len()
    );
    outcome(disagreements == 0 && survivors == 0 && !sasaki.is_empty(), detail)
}

fn audit() -> Outcome {
    let mut audited = 0;
    let mut violations = Vec::new();
    for (e, v) in all_variants() {
        let r = verify_variant(e, &v);
        if r.sasaki() && r.standard == Some(true) {
            audited += 1;
            if r.not_pseudo_iwasawa != Some(true) {
                violations.push(format!("{} {}", e.id, v.label()));
            }
        }
    }
    let detail = format!("{audited} standard decompositions of Sasaki algebras audited{}", failing_suffix(&violations));
    outcome(violations.is_empty() && audited > 0, detail)
}

fn connection() -> Outcome {
    let mut checked = 0;
    let mut bianchi_checked = 0;
    let mut bad = Vec::new();
    for (e, v) in all_variants() {
        let Ok((m, _)) = materialize(e, &v) else {
            bad.push(format!("{} {} does not build", e.id, v.label()));
            continue;
        };
        let Ok(c) = levi_civita(&m) else {
            bad.push(format!("{} {} degenerate", e.id, v.label()));
            continue;
        };
        checked += 1;
        let mut ok = c.is_metric_compatible(&m) && c.is_torsion_free(m.algebra());
        if m.algebra().jacobi_check().is_ok() {
            bianchi_checked += 1;
            ok &= curvature(&m, &c).first_bianchi();
        }
        if !ok {
            bad.push(format!("{} {}", e.id, v.label()));
        }
    }
    let detail =
        format!("∇g = 0 and torsion-free on {checked} variants, Bianchi on {bianchi_checked} Jacobi-valid ones{}", failing_suffix(&bad));
    outcome(bad.is_empty(), detail)
}

/// `[e_i, e_j] = c e_k` entered by hand, 0-based.
fn ex43_table() -> LieAlgebra {
    let entries = [
        (0, 1, 1, 2),
        (0, 1, 4, -2),
        (2, 3, 1, 2),
        (2, 3, 4, -2),
        (3, 4, 2, 3),
        (0, 2, 2, 1),
        (1, 3, 2, -3),
        (2, 4, 3, -3),
        (1, 2, 3, 3),
        (0, 3, 3, 1),
    ];
    let entries: Vec<(usize, usize, usize, Scalar)> = entries.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect();
    LieAlgebra::from_constants(5, &entries).expect("valid table")
}

fn parser() -> Outcome {
    let mut strings = 0;
    let mut bad = Vec::new();
    for e in catalog() {
        strings += 1;
        for v in e.variants(&default_lambdas()) {
            let b = v.bindings();
            let printed = parse_salamon(e.salamon, &b).map(|l| print_salamon(&l));
            let normalized = normalize(e.salamon, &b);
            match (printed, normalized) {
                (Ok(p), Ok(n)) if p == n => {}
                _ => {
                    bad.push(format!("{} {}", e.id, v.label()));
                }
            }
        }
    }
    let e = find("ex4.3").expect("ex4.3 is in the catalog");
    let table = parse_salamon(e.salamon, &e.variants(&[])[0].bindings()).is_ok_and(|l| l == ex43_table());
    if !table {
        bad.push("ex4.3 differs from the hand table".into());
    }
    outcome(bad.is_empty() && strings == 16, format!("{strings} strings over all bindings{}", failing_suffix(&bad)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ex4.3 Einstein, ric = 4g", einstein),
        ("dim5.* regression, 12 variants", dim5),
        ("table1.* regression, full grid", table1),
        ("reduction ground truth on ex4.3prime", reduction_ground_truth),
        ("isometrization of ex4.3 gives ex4.3prime", isometrization),
        ("construct/extract roundtrip, at least 30 seeds", roundtrip),
        ("characterization agreement with perturbations", characterizations),
        ("no pseudo-Iwasawa decomposition", audit),
        ("connection self-checks", connection),
        ("parser roundtrip and hand table", parser),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} [{:>2}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
