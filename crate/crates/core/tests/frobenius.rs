use wfrob::algebra::{q, qi};
use wfrob::frobenius::build;
use wfrob::orbit::GroupSpec;

#[test]
fn potentials_are_quasi_homogeneous() {
    for l in 2..=4 {
        for k in 1..l {
            let spec = GroupSpec::new(l, k).unwrap();
            let fr = build(&spec).unwrap();
            let f = &fr.potential;
            assert_eq!(f.quasi_homogeneity_defect(), f.expected_defect(), "l={l} k={k}");
            assert_eq!(f.log_coeff, q(1, 2));
            assert_eq!(f.log_var, k);
        }
    }
}

#[test]
fn third_derivatives_are_symmetric() {
    let fr = build(&GroupSpec::new(3, 2).unwrap()).unwrap();
    let f = &fr.potential;
    let n = fr.spec.dim();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = f.third(a, b, c);
                assert_eq!(t, f.third(b, a, c));
                assert_eq!(t, f.third(c, b, a));
            }
        }
    }
}

#[test]
fn flat_metric_is_constant_antidiagonal() {
    for (l, k) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
        let fr = build(&GroupSpec::new(l, k).unwrap()).unwrap();
        let eta = &fr.flat.eta_t;
        let n = l + 2;
        for row in eta {
            assert_eq!(row.iter().filter(|x| **x != qi(0)).count(), 1);
        }
        assert_eq!(eta[k][l], qi(1));
        assert_eq!(eta[k - 1][l + 1], qi(1));
        assert_eq!(eta.len(), n);
    }
}

#[test]
fn a3k1_quartic_coefficients() {
    let fr = build(&GroupSpec::new(3, 1).unwrap()).unwrap();
    let f = &fr.potential;
    let quartic: Vec<_> = f.poly.terms().filter(|(e, _)| e[..5].iter().sum::<i32>() == 4).map(|(_, c)| c.clone()).collect();
    assert!(!quartic.is_empty());
    assert!(quartic.contains(&q(-1, 96)), "{quartic:?}");
}
