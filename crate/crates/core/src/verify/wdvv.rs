use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use super::structure::StructureConstants;
use super::{Check, CheckReport};
use crate::algebra::{q_to_f64, LaurentPoly};
use crate::orbit::invariance::seeded_rng;

fn quadruples(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for g in b + 1..n {
                for d in 0..n {
                    out.push((a, b, g, d));
                }
            }
        }
    }
    out
}

/// Multiplies both sides by the smallest power of `t^{k+1}` that makes them polynomial.
fn clear_log_denominator(sc: &StructureConstants, lhs: &LaurentPoly, rhs: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let s = sc.log_var;
    let low = lhs.min_exponents().get(s).copied().unwrap_or(0).min(rhs.min_exponents().get(s).copied().unwrap_or(0));
    if low >= 0 {
        return (lhs.clone(), rhs.clone());
    }
    let mut e = vec![0; sc.vars.len()];
    e[s] = -low;
    let one = num_traits::One::one();
    (lhs.mul_term(&e, &one), rhs.mul_term(&e, &one))
}

/// `c_{αβμ} η^{μν} c_{νγδ} = c_{αγμ} η^{μν} c_{νβδ}` as exact polynomial identities.
pub fn wdvv_exact(sc: &StructureConstants) -> Check {
    let start = Instant::now();
    let n = sc.n;
    let raised: Vec<LaurentPoly> =
        (0..n * n * n).into_par_iter().map(|i| sc.raised(i / (n * n), (i / n) % n, i % n)).collect();
    let r = |m: usize, g: usize, d: usize| &raised[(m * n + g) * n + d];
    let side = |a: usize, b: usize, g: usize, d: usize| {
        let mut s = sc.vars.zero();
        for m in 0..n {
            let (x, y) = (sc.c(a, b, m), r(m, g, d));
            if !x.is_zero() && !y.is_zero() {
                s += &(x * y);
            }
        }
        s
    };
    let bad: Vec<((usize, usize, usize, usize), f64)> = quadruples(n)
        .par_iter()
        .filter_map(|&(a, b, g, d)| {
            let (lhs, rhs) = clear_log_denominator(sc, &side(a, b, g, d), &side(a, g, b, d));
            let diff = &lhs - &rhs;
            (!diff.is_zero()).then(|| ((a, b, g, d), q_to_f64(&diff.max_abs_coeff())))
        })
        .collect();
    let failure = bad.first().map(|((a, b, g, d), r)| {
        (bad.iter().map(|x| x.1).fold(0.0, f64::max), format!("{} quadruples fail, first ({},{},{},{}) residual {r}", bad.len(), a + 1, b + 1, g + 1, d + 1))
    });
    Check::exact("wdvv_exact", failure).timed(start)
}

/// Relative WDVV residual at seeded random points of the flat chart.
pub fn wdvv_numeric(sc: &StructureConstants, seed: u64, points: usize) -> Check {
    let start = Instant::now();
    let n = sc.n;
    let mut rng = seeded_rng(seed);
    let eta: Vec<Vec<f64>> = sc.eta.iter().map(|r| r.iter().map(q_to_f64).collect()).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let x: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(0.3..1.2), rng.gen_range(-0.5..0.5))).collect();
        let vals = sc.vars.point(&x);
        let c: Vec<Complex64> = sc.lower.iter().map(|p| p.eval(&vals)).collect();
        let cc = |a: usize, b: usize, g: usize| c[(a * n + b) * n + g];
        let side = |a: usize, b: usize, g: usize, d: usize| {
            let mut s = Complex64::zero();
            let mut scale: f64 = 0.0;
            for m in 0..n {
                for v in 0..n {
                    if eta[m][v] != 0.0 {
                        let t = cc(a, b, m) * eta[m][v] * cc(v, g, d);
                        scale = scale.max(t.norm());
                        s += t;
                    }
                }
            }
            (s, scale)
        };
        for (a, b, g, d) in quadruples(n) {
            let (l, sl) = side(a, b, g, d);
            let (r, sr) = side(a, g, b, d);
            worst = worst.max((l - r).norm() / sl.max(sr).max(1.0));
        }
    }
    Check::numeric("wdvv_numeric", worst, 1e-10, format!("{points} points")).timed(start)
}

pub fn wdvv_check(sc: &StructureConstants, seed: u64) -> CheckReport {
    CheckReport { checks: vec![wdvv_exact(sc), wdvv_numeric(sc, seed, 3)] }
}
