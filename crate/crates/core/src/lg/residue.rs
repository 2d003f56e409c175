use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::critical::{companion_roots, CriticalData};
use super::superpotential::{LGPoint, C};
use crate::error::{Error, Result};

pub type CMat = DMatrix<C>;

pub const QUAD_NODES: usize = 256;

/// Residue metrics of a superpotential in canonical and in `a`-coordinates.
#[derive(Clone, Debug)]
pub struct ResidueMetrics {
    /// `η̃_{αα} = (−1)^{k+1} / λ''(ψ_α)`.
    pub eta_canon: Vec<C>,
    /// `g̃_{αα} = −1 / (u_α λ''(ψ_α))`.
    pub g_canon: Vec<C>,
    /// `W_{αj} = ∂u_α/∂a_j = ∂_{a_j}λ(ψ_α)`.
    pub w: CMat,
    /// Covariant metrics in `a`-coordinates from the diagonal formulas.
    pub eta_a: CMat,
    pub g_a: CMat,
    /// The same metrics from contour quadrature of the residue pairings.
    pub eta_quad: CMat,
    pub g_quad: CMat,
}

fn sign_k(p: &LGPoint) -> f64 {
    if (p.spec.k + 1).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Quadrature circle radius around each critical point: a tenth of the distance to the
/// nearest singularity of the integrands.
fn radii(p: &LGPoint, crit: &CriticalData) -> Vec<f64> {
    let zeros = companion_roots(&p.numerator()).unwrap_or_default();
    crit.points
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let mut d = u.norm().min((u - p.pole()).norm());
            for (j, &v) in crit.points.iter().enumerate() {
                if j != i {
                    d = d.min((u - v).norm());
                }
            }
            for &z in &zeros {
                d = d.min((u - z).norm());
            }
            0.1 * d
        })
        .collect()
}

/// `Σ_α res_{u=U_α} f(u) du` by the trapezoidal rule on small circles.
pub fn residue_sum<F: FnMut(C) -> Vec<C>>(p: &LGPoint, crit: &CriticalData, len: usize, mut f: F) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); len];
    for (&u0, r) in crit.points.iter().zip(radii(p, crit)) {
        for j in 0..QUAD_NODES {
            let d = C::from_polar(r, 2.0 * PI * j as f64 / QUAD_NODES as f64);
            for (o, v) in out.iter_mut().zip(f(u0 + d)) {
                *o += v * d / QUAD_NODES as f64;
            }
        }
    }
    out
}

/// `du/dφ`-free kernel: `dφ / (dλ/dφ) = −u^{m−1}(u−c)² / Q(u) du`.
fn kernel(p: &LGPoint, u: C) -> C {
    let c = p.pole();
    -u.powi(p.m() as i32 - 1) * (u - c) * (u - c) / p.critical_poly().eval(u)
}

pub fn residue_metrics(p: &LGPoint, crit: &CriticalData) -> Result<ResidueMetrics> {
    let n = p.spec.l + 2;
    let s = sign_k(p);
    let eta_canon: Vec<C> = crit.second.iter().map(|l2| s / l2).collect();
    let g_canon: Vec<C> = crit.second.iter().zip(&crit.values).map(|(l2, u)| -1.0 / (u * l2)).collect();
    let w = CMat::from_fn(n, n, |a, j| p.dlambda_da(crit.points[a])[j]);
    let sv = w.clone().svd(false, false).singular_values;
    if sv.min() < 1e-12 * sv.max() {
        return Err(Error::Degenerate(format!("Jacobian ∂u/∂a is singular (σ_min/σ_max = {:e})", sv.min() / sv.max())));
    }
    let diag = |d: &[C]| &w.transpose() * CMat::from_diagonal(&nalgebra::DVector::from_column_slice(d)) * &w;
    let eta_a = diag(&eta_canon);
    let g_a = diag(&g_canon);
    let vals = residue_sum(p, crit, 2 * n * n, |u| {
        let d = p.dlambda_da(u);
        let ker = kernel(p, u);
        let lam = p.lambda(u);
        let mut v = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                v.push(s * d[i] * d[j] * ker);
            }
        }
        for i in 0..n {
            for j in 0..n {
                v.push(-d[i] * d[j] * ker / lam);
            }
        }
        v
    });
    let eta_quad = CMat::from_fn(n, n, |i, j| vals[i * n + j]);
    let g_quad = CMat::from_fn(n, n, |i, j| vals[n * n + i * n + j]);
    Ok(ResidueMetrics { eta_canon, g_canon, w, eta_a, g_a, eta_quad, g_quad })
}

pub fn rel_err(a: &CMat, b: &CMat) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
}

impl ResidueMetrics {
    /// Worst relative disagreement between quadrature and the diagonal formulas.
    pub fn quadrature_error(&self) -> f64 {
        rel_err(&self.eta_quad, &self.eta_a).max(rel_err(&self.g_quad, &self.g_a))
    }

    /// Contravariant canonical entries `η̃^{αα}`, `g̃^{αα}`.
    pub fn contravariant(&self) -> (Vec<C>, Vec<C>) {
        (self.eta_canon.iter().map(|x| 1.0 / x).collect(), self.g_canon.iter().map(|x| 1.0 / x).collect())
    }
}

/// Structure constants `c_{ijl}(a) = −Σ res ∂_iλ ∂_jλ ∂_lλ / (dλ dφ)` by quadrature.
pub fn structure_constants_am6(p: &LGPoint, crit: &CriticalData) -> Vec<C> {
    let n = p.spec.l + 2;
    residue_sum(p, crit, n * n * n, |u| {
        let d = p.dlambda_da(u);
        let ker = -kernel(p, u);
        let mut v = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    v.push(d[i] * d[j] * d[l] * ker);
                }
            }
        }
        v
    })
}
