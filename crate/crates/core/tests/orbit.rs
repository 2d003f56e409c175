use wfrob::frobenius::push_forward_consistent;
use wfrob::orbit::invariance::{random_xpoint, seeded_rng};
use wfrob::orbit::{degrees, eta_y, invariance_spotcheck, metric_g_y, GroupSpec};

fn specs() -> Vec<GroupSpec> {
    (2..=5).flat_map(|l| (1..l).map(move |k| GroupSpec::new(l, k).unwrap())).collect()
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(GroupSpec::new(1, 1).is_err());
    assert!(GroupSpec::new(3, 0).is_err());
    assert!(GroupSpec::new(3, 3).is_err());
}

#[test]
fn invariants_survive_every_generator() {
    for spec in specs() {
        let mut rng = seeded_rng(11);
        for i in 0..4 {
            let x = random_xpoint(&spec, &mut rng, 0.2);
            let r = invariance_spotcheck(&spec, &x, i);
            assert!(r.max_rel_dev < 1e-10, "{spec:?}: {:?}", r.transforms);
            assert_eq!(r.transforms.len(), 4);
        }
    }
}

#[test]
fn metrics_are_symmetric() {
    for spec in specs().into_iter().filter(|s| s.l <= 4) {
        let g = metric_g_y(&spec).unwrap();
        let e = eta_y(&spec, &g);
        let n = spec.dim();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(g.get(i, j), g.get(j, i), "{spec:?} g[{i}][{j}]");
                assert_eq!(e.get(i, j), e.get(j, i), "{spec:?} eta[{i}][{j}]");
            }
        }
    }
}

#[test]
fn degree_duality_and_push_forward() {
    for spec in specs() {
        let dd = degrees(&spec);
        for j in 1..=spec.dim() {
            assert_eq!(dd.star(dd.star(j)), j);
        }
        assert!(push_forward_consistent(&spec), "{spec:?}");
    }
}
