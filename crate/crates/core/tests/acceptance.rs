//! End-to-end acceptance run. Prints one line per criterion and fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use wfrob::cli::golden::{embedded, golden_diff, parse_golden};
use wfrob::frobenius::build;
use wfrob::lg::{lg_check, LgTolerances};
use wfrob::orbit::invariance::{random_xpoint, seeded_rng};
use wfrob::orbit::{invariance_spotcheck, GroupSpec};
use wfrob::verify::checks::{corrupt_potential, structural_suite_with};
use wfrob::verify::{pencil_flatness_numeric, PencilModel};

const SEED: u64 = 42;
const PENCIL_TOL: f64 = 1e-6;
const INVARIANCE_TOL: f64 = 1e-10;

const EXACT_CHECKS: [&str; 10] = [
    "degree_duality",
    "unit_degrees",
    "det_eta_constant",
    "eta_t_antidiagonal",
    "g_t_euler_row",
    "double_unity_g",
    "double_unity_gamma",
    "wdvv_exact",
    "intersection_form",
    "quasi_homogeneity",
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn specs() -> Vec<GroupSpec> {
    (2..=5).flat_map(|l| (1..l).map(move |k| GroupSpec::new(l, k).unwrap())).collect()
}

fn golden_run(name: &str, l: usize, k: usize) -> (Option<String>, Duration) {
    let start = Instant::now();
    let g = parse_golden(embedded(name).unwrap()).unwrap();
    let fr = build(&GroupSpec::new(l, k).unwrap()).unwrap();
    let diff = golden_diff(&fr, &g).unwrap();
    (diff, start.elapsed())
}

fn criterion_1() -> Outcome {
    let (diff, t) = golden_run("a2k1", 2, 1);
    let passed = diff.is_none() && t < Duration::from_secs(5);
    Outcome { passed, detail: format!("a2k1 golden {} in {t:.2?} (limit 5 s){}", verdict(diff.is_none()), diff.map(|d| format!("\n{d}")).unwrap_or_default()) }
}

fn criterion_2() -> Outcome {
    let mut passed = true;
    let mut parts = vec![];
    for (name, l, k) in [("a3k1", 3, 1), ("a3k2", 3, 2)] {
        let (diff, t) = golden_run(name, l, k);
        passed &= diff.is_none() && t < Duration::from_secs(30);
        parts.push(format!("{name} golden {} in {t:.2?}", verdict(diff.is_none())));
        if let Some(d) = diff {
            parts.push(d);
        }
    }
    Outcome { passed, detail: format!("{} (limit 30 s each)", parts.join(", ")) }
}

fn criterion_3_and_4() -> (Outcome, Outcome) {
    let start = Instant::now();
    let lambdas = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    let (mut ok3, mut ok4) = (true, true);
    let (mut bad3, mut worst4) = (vec![], 0.0f64);
    for spec in specs() {
        let (fr, rep) = structural_suite_with(&spec, SEED, None).unwrap();
        for name in EXACT_CHECKS {
            match rep.get(name) {
                Some(c) if c.passed && c.exact => {}
                other => {
                    ok3 = false;
                    bad3.push(format!("l={} k={} {name}: {:?}", spec.l, spec.k, other.map(|c| &c.detail)));
                }
            }
        }
        let pencil = pencil_flatness_numeric(&PencilModel::new(&fr.g_y, &fr.eta_y), SEED, &lambdas, 5);
        ok4 &= pencil.residual < PENCIL_TOL;
        worst4 = worst4.max(pencil.residual);
    }
    let t = start.elapsed();
    ok3 &= t < Duration::from_secs(600);
    let n = specs().len();
    let c3 = Outcome { passed: ok3, detail: format!("{} exact checks x {n} groups in {t:.2?} (limit 10 min){}", EXACT_CHECKS.len(), fmt_list(&bad3)) };
    let c4 = Outcome { passed: ok4, detail: format!("worst curvature residual {worst4:.3e} over {n} groups, lambda in {{0, 1, i}}, 5 points (limit {PENCIL_TOL:e})") };
    (c3, c4)
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for spec in specs() {
        let mut rng = seeded_rng(SEED);
        for i in 0..10 {
            let x = random_xpoint(&spec, &mut rng, 0.2);
            worst = worst.max(invariance_spotcheck(&spec, &x, SEED + i).max_rel_dev);
        }
    }
    Outcome { passed: worst < INVARIANCE_TOL, detail: format!("worst relative deviation {worst:.3e} at 10 points per group (limit {INVARIANCE_TOL:e})") }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let tol = LgTolerances::default();
    let mut passed = true;
    let mut parts = vec![];
    for (l, k) in [(2, 1), (3, 1), (3, 2)] {
        let spec = GroupSpec::new(l, k).unwrap();
        let fr = build(&spec).unwrap();
        let r = lg_check(&spec, &fr.g_y, &fr.eta_y, SEED, 20, tol.clone());
        let counts_ok = r.samples.iter().filter(|s| s.rejected.is_none()).all(|s| s.critical_points == l + 2);
        passed &= r.passed() && counts_ok;
        parts.push(format!(
            "l={l} k={k}: rejected {}/20, residual {:.1e}, quadrature {:.1e}, sum {:.1e}, pairings {:.1e}, pullback {:.1e}{}",
            r.rejected(),
            r.worst(|s| s.critical_residual),
            r.worst(|s| s.quadrature),
            r.worst(|s| s.sum_identity),
            r.worst(|s| s.pairings),
            r.worst(|s| s.pullback_g.max(s.pullback_eta)),
            if r.passed() { String::new() } else { format!(" failures {:?}", r.failures()) },
        ));
    }
    let t = start.elapsed();
    passed &= t < Duration::from_secs(120);
    Outcome { passed, detail: format!("{} in {t:.2?} (limit 2 min)", parts.join("; ")) }
}

fn criterion_7() -> Outcome {
    let mut passed = true;
    let mut parts = vec![];
    for spec in [GroupSpec::new(2, 1).unwrap(), GroupSpec::new(3, 1).unwrap(), GroupSpec::new(3, 2).unwrap()] {
        let (_, rep) = structural_suite_with(&spec, SEED, Some(SEED)).unwrap();
        let w = rep.get("wdvv_exact").unwrap();
        passed &= !w.passed && w.residual > 0.0;
        parts.push(format!("l={} k={} wdvv residual {:.3e}", spec.l, spec.k, w.residual));
    }
    for (name, l, k) in [("a2k1", 2, 1), ("a3k1", 3, 1), ("a3k2", 3, 2)] {
        let g = parse_golden(embedded(name).unwrap()).unwrap();
        let mut fr = build(&GroupSpec::new(l, k).unwrap()).unwrap();
        fr.potential = corrupt_potential(&fr.potential, SEED);
        let diff = golden_diff(&fr, &g).unwrap();
        let changed = diff.as_deref().map(|d| d.lines().filter(|x| x.starts_with('+') && !x.starts_with("+++")).count()).unwrap_or(0);
        passed &= changed > 0;
        parts.push(format!("{name} golden diff {changed} lines"));
    }
    Outcome { passed, detail: parts.join(", ") }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "matches"
    } else {
        "differs"
    }
}

fn fmt_list(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!(": {}", v.join("; "))
    }
}

#[test]
fn acceptance() {
    let (c3, c4) = criterion_3_and_4();
    let results = [criterion_1(), criterion_2(), c3, c4, criterion_5(), criterion_6(), criterion_7()];
    let mut err = std::io::stderr().lock();
    for (i, r) in results.iter().enumerate() {
        writeln!(err, "criterion {}: {}  {}", i + 1, if r.passed { "PASS" } else { "FAIL" }, r.detail).unwrap();
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| !r.passed).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
