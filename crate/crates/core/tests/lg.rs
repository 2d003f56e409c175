use wfrob::lg::{lg_check, LgTolerances};
use wfrob::orbit::{eta_y, metric_g_y, GroupSpec};

fn check(l: usize, k: usize, seed: u64, n: usize) -> wfrob::lg::LgReport {
    let spec = GroupSpec::new(l, k).unwrap();
    let g = metric_g_y(&spec).unwrap();
    let e = eta_y(&spec, &g);
    lg_check(&spec, &g, &e, seed, n, LgTolerances::default())
}

#[test]
fn larger_groups_agree_with_residues() {
    for (l, k) in [(4, 1), (4, 2), (4, 3), (5, 2)] {
        let r = check(l, k, 7, 6);
        assert!(r.passed(), "l={l} k={k}: {:?}", r.failures());
        assert!(r.euler_push_forward);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&check(3, 2, 5, 6)).unwrap();
    let b = serde_json::to_string(&check(3, 2, 5, 6)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tight_tolerances_fail() {
    let spec = GroupSpec::new(2, 1).unwrap();
    let g = metric_g_y(&spec).unwrap();
    let e = eta_y(&spec, &g);
    let tol = LgTolerances { pullback: 1e-300, ..LgTolerances::default() };
    let r = lg_check(&spec, &g, &e, 42, 4, tol);
    assert!(!r.passed());
    assert!(r.failures().iter().any(|(_, f)| f.contains("pullback")));
}
