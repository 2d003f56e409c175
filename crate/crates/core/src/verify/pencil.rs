use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::Check;
use crate::algebra::{LaurentPoly, VarTable};
use crate::error::{Error, Result};
use crate::orbit::invariance::seeded_rng;
use crate::orbit::ChartTensor;

/// Two contravariant metrics with their first derivatives, ready for numeric evaluation.
pub struct PencilModel {
    pub n: usize,
    pub vars: VarTable,
    g: Vec<LaurentPoly>,
    eta: Vec<LaurentPoly>,
    dg: Vec<LaurentPoly>,
    deta: Vec<LaurentPoly>,
}

type CMat = DMatrix<Complex64>;

const MAX_COND: f64 = 1e8;

impl PencilModel {
    pub fn new(g: &ChartTensor, eta: &ChartTensor) -> Self {
        let n = g.dim();
        let v = g.vars.clone();
        let flat = |t: &ChartTensor| t.matrix.entries().to_vec();
        let der = |t: &ChartTensor| (0..n).flat_map(|a| t.matrix.entries().iter().map(|p| v.deriv(p, a)).collect::<Vec<_>>()).collect();
        PencilModel { n, g: flat(g), eta: flat(eta), dg: der(g), deta: der(eta), vars: v }
    }

    fn eval(&self, a: &[LaurentPoly], b: &[LaurentPoly], lam: Complex64, vals: &[Complex64]) -> CMat {
        let n = self.n;
        CMat::from_fn(n, n, |i, j| a[i * n + j].eval(vals) + lam * b[i * n + j].eval(vals))
    }

    /// `Γ^i_{jk}` of the covariant form of `g + λη` at chart point `x`, stored `[i][j][k]`,
    /// together with the condition number of the contravariant matrix.
    pub fn christoffel_at(&self, lam: Complex64, x: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
        let n = self.n;
        let vals = self.vars.point(x);
        let up = self.eval(&self.g, &self.eta, lam, &vals);
        let sv = up.clone().svd(false, false).singular_values;
        let cond = sv.max() / sv.min();
        if !cond.is_finite() || cond > MAX_COND {
            return Err(Error::NearDiscriminant(cond));
        }
        let down = up.clone().try_inverse().ok_or(Error::NearDiscriminant(f64::INFINITY))?;
        let ddown: Vec<CMat> = (0..n)
            .map(|a| {
                let d = self.eval(&self.dg[a * n * n..(a + 1) * n * n], &self.deta[a * n * n..(a + 1) * n * n], lam, &vals);
                -(&down * d * &down)
            })
            .collect();
        let mut gamma = vec![Complex64::new(0.0, 0.0); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = Complex64::new(0.0, 0.0);
                    for m in 0..n {
                        s += up[(i, m)] * (ddown[j][(m, k)] + ddown[k][(m, j)] - ddown[m][(j, k)]);
                    }
                    gamma[(i * n + j) * n + k] = s * 0.5;
                }
            }
        }
        Ok((gamma, cond))
    }

    fn dgamma(&self, lam: Complex64, x: &[Complex64], a: usize, h: f64) -> Result<Vec<Complex64>> {
        let at = |s: f64| {
            let mut y = x.to_vec();
            y[a] += s;
            self.christoffel_at(lam, &y).map(|r| r.0)
        };
        let (p2, p1, m1, m2) = (at(2.0 * h)?, at(h)?, at(-h)?, at(-2.0 * h)?);
        Ok((0..p1.len()).map(|i| (-p2[i] + p1[i] * 8.0 - m1[i] * 8.0 + m2[i]) / (12.0 * h)).collect())
    }

    /// Largest entry of the Riemann tensor of `g + λη` at `x`, derivatives of `Γ` by
    /// fourth-order central differences with one Richardson step. The step is `h` divided by
    /// the largest `|Γ|` when that exceeds one.
    pub fn curvature_max(&self, lam: Complex64, x: &[Complex64], h: f64) -> Result<f64> {
        let n = self.n;
        let (gamma, _) = self.christoffel_at(lam, x)?;
        let h = h / gamma.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut dg = Vec::with_capacity(n);
        for a in 0..n {
            let coarse = self.dgamma(lam, x, a, h)?;
            let fine = self.dgamma(lam, x, a, h / 2.0)?;
            dg.push(coarse.iter().zip(&fine).map(|(c, f)| (f * 16.0 - c) / 15.0).collect::<Vec<_>>());
        }
        let gm = |i: usize, j: usize, k: usize| gamma[(i * n + j) * n + k];
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    for b in a + 1..n {
                        let mut r = dg[a][(i * n + b) * n + j] - dg[b][(i * n + a) * n + j];
                        for m in 0..n {
                            r += gm(i, a, m) * gm(m, b, j) - gm(i, b, m) * gm(m, a, j);
                        }
                        worst = worst.max(r.norm());
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// Random point with `|y^α| < 1` and small exponential coordinates.
fn sample_point(rng: &mut impl Rng, n: usize, ncoords: usize) -> Vec<Complex64> {
    (0..ncoords)
        .map(|a| {
            if a + 2 < n {
                Complex64::from_polar(rng.gen_range(0.2..1.0), rng.gen_range(0.0..std::f64::consts::TAU))
            } else {
                Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
            }
        })
        .collect()
}

/// Curvature of `g + λη` at seeded points for each `λ`; points near the discriminant are resampled.
pub fn pencil_flatness_numeric(model: &PencilModel, seed: u64, lambdas: &[Complex64], points: usize) -> Check {
    let start = Instant::now();
    let mut rng = seeded_rng(seed);
    let mut worst: f64 = 0.0;
    let mut rejected = 0;
    let mut accepted = 0;
    while accepted < points {
        if rejected > 20 * points.max(1) {
            return Check::numeric("pencil_flatness", f64::INFINITY, 1e-6, format!("{rejected} points rejected near the discriminant")).timed(start);
        }
        let x = sample_point(&mut rng, model.n, model.vars.ncoords());
        let vals: Result<Vec<f64>> = lambdas.iter().map(|&lam| model.curvature_max(lam, &x, 1e-3)).collect();
        match vals {
            Ok(v) => {
                worst = v.into_iter().fold(worst, f64::max);
                accepted += 1;
            }
            Err(Error::NearDiscriminant(_)) => rejected += 1,
            Err(e) => return Check::numeric("pencil_flatness", f64::INFINITY, 1e-6, e.to_string()).timed(start),
        }
    }
    Check::numeric("pencil_flatness", worst, 1e-6, format!("{points} points, {} values of λ, {rejected} resampled", lambdas.len())).timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyMatrix, VarRole};
    use crate::orbit::{eta_y, metric_g_y, Chart, GroupSpec};

    fn plane(entries: [&str; 4]) -> ChartTensor {
        let vars = VarTable::new(vec!["y1".into(), "y2".into()], vec![VarRole::Coordinate(0), VarRole::Coordinate(1)], 2);
        let matrix = PolyMatrix::from_fn(2, 2, 2, |i, j| vars.parse(entries[2 * i + j]).unwrap());
        ChartTensor { chart: Chart::Y, vars, matrix }
    }

    #[test]
    fn constant_metric_is_flat() {
        let eta = plane(["2", "1", "1", "3"]);
        let m = PencilModel::new(&eta, &eta);
        let r = m.curvature_max(Complex64::new(0.5, 0.0), &[Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)], 1e-3).unwrap();
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn curved_metric_is_detected() {
        let g = plane(["1", "0", "0", "1 + y1^2"]);
        let zero = plane(["0", "0", "0", "0"]);
        let m = PencilModel::new(&g, &zero);
        let c = pencil_flatness_numeric(&m, 3, &[Complex64::new(0.0, 0.0)], 3);
        assert!(!c.passed);
        assert!(c.residual > 1e-2, "{}", c.residual);
    }

    #[test]
    fn a3k2_pencil_is_flat() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let g = metric_g_y(&spec).unwrap();
        let m = PencilModel::new(&g, &eta_y(&spec, &g));
        let c = pencil_flatness_numeric(&m, 11, &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)], 2);
        assert!(c.passed, "{c:?}");
    }
}
