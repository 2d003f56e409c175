use num_complex::Complex64;
use proptest::prelude::*;
use wfrob::algebra::{q, rational_inverse, solve_linear, sym_expand, sym_reduce, weighted_basis, ExpRule, LaurentPoly, PolyMatrix, VarRole, VarTable, Q};

const NV: usize = 3;

fn terms(lo: i32) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(lo..3, NV), -5i64..6, 1i64..4), 0..6)
        .prop_map(|ts| LaurentPoly::from_terms(NV, ts.into_iter().map(|(e, n, d)| (e, q(n, d)))))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    terms(-2)
}

fn polynomial() -> impl Strategy<Value = LaurentPoly> {
    terms(0)
}

fn chart() -> VarTable {
    VarTable::new(
        vec!["x1".into(), "x2".into(), "E1".into()],
        vec![VarRole::Coordinate(0), VarRole::Coordinate(1), VarRole::Exponential(vec![(2, 1), (0, -1)])],
        3,
    )
}

fn pt() -> Vec<Complex64> {
    vec![Complex64::new(0.7, 0.2), Complex64::new(-0.4, 0.9), Complex64::new(1.1, -0.3)]
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), i in 0usize..NV) {
        let lhs = (&a * &b).deriv(i);
        let rhs = &(&a.deriv(i) * &b) + &(&a * &b.deriv(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly()) {
        let x = pt();
        let prod = (&a * &b).eval(&x);
        let want = a.eval(&x) * b.eval(&x);
        prop_assert!((prod - want).norm() <= 1e-9 * (1.0 + want.norm()));
    }

    #[test]
    fn render_parse_roundtrip(a in poly()) {
        let v = chart();
        prop_assert_eq!(v.parse(&v.render(&a)).unwrap(), a);
    }

    #[test]
    fn chart_derivatives_commute(a in poly()) {
        let v = chart();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(v.deriv(&v.deriv(&a, i), j), v.deriv(&v.deriv(&a, j), i));
            }
        }
    }

    #[test]
    fn exact_division_inverts_product(a in polynomial(), b in polynomial()) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn symmetric_reduction_round_trips(p in polynomial()) {
        let sym = sym_expand(&p);
        prop_assert_eq!(sym_reduce(&sym, NV).unwrap(), p);
    }

    #[test]
    fn rational_inverse_is_inverse(m in prop::collection::vec(-4i64..5, 9)) {
        let a: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| Q::from_integer(m[3 * i + j].into())).collect()).collect();
        if let Some(inv) = rational_inverse(&a) {
            for i in 0..3 {
                for j in 0..3 {
                    let s: Q = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                    prop_assert_eq!(s, Q::from_integer(i64::from(i == j).into()));
                }
            }
        }
    }

    #[test]
    fn weighted_basis_is_homogeneous(n in 1i64..5) {
        let w = vec![q(1, 2), Q::from_integer(1.into()), q(1, 3)];
        let target = q(n, 2);
        let b = weighted_basis(&w, &target, &[ExpRule::Nonneg, ExpRule::Nonneg, ExpRule::Nonneg]).unwrap();
        for e in &b {
            let d: Q = e.iter().zip(&w).map(|(x, wi)| wi * Q::from_integer((*x).into())).sum();
            prop_assert_eq!(d, target.clone());
        }
        let mut sorted = b.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), b.len());
    }
}

#[test]
fn polynomial_linear_solve() {
    let v = VarTable::symbols("y", 1);
    let p = |s: &str| v.parse(s).unwrap();
    let a = PolyMatrix::from_fn(2, 2, 1, |i, j| [[p("1"), p("y1")], [p("y1"), p("y1^2 + 1")]][i][j].clone());
    let b = [p("y1^2 + 1"), p("y1^3 + 2*y1")];
    let x = solve_linear(&a, &b).unwrap().into_polys().unwrap();
    assert_eq!(x, vec![p("1"), p("y1")]);
}
