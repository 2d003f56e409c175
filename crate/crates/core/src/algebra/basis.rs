use num_traits::{Signed, Zero};

use super::poly::Mono;
use super::rational::{render_q, Q};
use crate::error::AlgebraError;

/// Admissible exponents of one variable in an ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpRule {
    Nonneg,
    Range(i32, i32),
    Excluded,
}

impl ExpRule {
    fn range(&self) -> Option<(i32, Option<i32>)> {
        match self {
            ExpRule::Nonneg => Some((0, None)),
            ExpRule::Range(a, b) => Some((*a, Some(*b))),
            ExpRule::Excluded => None,
        }
    }
}

/// All exponent vectors of weighted degree `target`, in ascending graded-lex order.
pub fn weighted_basis(weights: &[Q], target: &Q, rules: &[ExpRule]) -> Result<Vec<Vec<i32>>, AlgebraError> {
    assert_eq!(weights.len(), rules.len());
    let n = weights.len();
    let mut lo = vec![Q::zero(); n + 1];
    let mut hi: Vec<Option<Q>> = vec![Some(Q::zero()); n + 1];
    for i in (0..n).rev() {
        let (a, b) = match rules[i].range() {
            None => (0, Some(0)),
            Some(r) => r,
        };
        let w = &weights[i];
        if b.is_none() && !w.is_positive() {
            return Err(AlgebraError::InfiniteBasis(i, render_q(w)));
        }
        let wa = w * Q::from_integer(a.into());
        let (mn, mx) = match b {
            Some(b) => {
                let wb = w * Q::from_integer(b.into());
                if wa <= wb {
                    (wa, Some(wb))
                } else {
                    (wb, Some(wa))
                }
            }
            None => (wa, None),
        };
        lo[i] = &lo[i + 1] + mn;
        hi[i] = match (&hi[i + 1], mx) {
            (Some(h), Some(m)) => Some(h + m),
            _ => None,
        };
    }
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    rec(0, &Q::zero(), weights, target, rules, &lo, &hi, &mut cur, &mut out);
    out.sort_by(|a, b| Mono::new(a).cmp(&Mono::new(b)));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    i: usize,
    acc: &Q,
    w: &[Q],
    target: &Q,
    rules: &[ExpRule],
    lo: &[Q],
    hi: &[Option<Q>],
    cur: &mut Vec<i32>,
    out: &mut Vec<Vec<i32>>,
) {
    if i == w.len() {
        if acc == target {
            out.push(cur.clone());
        }
        return;
    }
    let Some((a, b)) = rules[i].range() else {
        cur[i] = 0;
        rec(i + 1, acc, w, target, rules, lo, hi, cur, out);
        return;
    };
    let mut e = a;
    loop {
        if let Some(b) = b {
            if e > b {
                break;
            }
        }
        let s = acc + &w[i] * Q::from_integer(e.into());
        if b.is_none() && &s + &lo[i + 1] > *target {
            break;
        }
        let feasible_lo = &s + &lo[i + 1] <= *target;
        let feasible_hi = match &hi[i + 1] {
            Some(h) => &s + h >= *target,
            None => true,
        };
        if feasible_lo && feasible_hi {
            cur[i] = e;
            rec(i + 1, &s, w, target, rules, lo, hi, cur, out);
        }
        e += 1;
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    #[test]
    fn quadratics_in_two_variables() {
        let b = weighted_basis(&[qi(1), qi(1)], &qi(2), &[ExpRule::Nonneg, ExpRule::Nonneg]).unwrap();
        assert_eq!(b, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn degree_zero_is_constant() {
        let b = weighted_basis(&[qi(1), q(1, 2)], &qi(0), &[ExpRule::Nonneg, ExpRule::Nonneg]).unwrap();
        assert_eq!(b, vec![vec![0, 0]]);
    }

    #[test]
    fn zero_weight_needs_bound() {
        let r = weighted_basis(&[qi(1), qi(0)], &qi(1), &[ExpRule::Nonneg, ExpRule::Nonneg]);
        assert!(matches!(r, Err(AlgebraError::InfiniteBasis(1, _))));
        let r = weighted_basis(&[qi(1), qi(0)], &qi(1), &[ExpRule::Nonneg, ExpRule::Range(0, 2)]).unwrap();
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn excluded_variables_stay_zero() {
        let b = weighted_basis(&[qi(1), qi(1)], &qi(1), &[ExpRule::Excluded, ExpRule::Nonneg]).unwrap();
        assert_eq!(b, vec![vec![0, 1]]);
    }
}
