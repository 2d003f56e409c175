use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::critical::{critical_points, CriticalData};
use super::phi::{factorize_phi, sum_identity_error, varpi_error};
use super::residue::{rel_err, residue_metrics, structure_constants_am6, CMat};
use super::superpotential::{covering_exponents, LGPoint, C};
use crate::algebra::Q;
use crate::error::{Error, Result};
use crate::orbit::invariance::random_xpoint;
use crate::orbit::{degrees, ChartTensor, GroupSpec};

/// Thresholds of the Landau–Ginzburg comparison.
#[derive(Clone, Debug, Serialize)]
pub struct LgTolerances {
    #[serde(serialize_with = "crate::json::sig17")]
    pub critical_residual: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub quadrature: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub sum_identity: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub pairings: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub pullback: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub unity_shift: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub associativity: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub max_rejection: f64,
}

impl Default for LgTolerances {
    fn default() -> Self {
        LgTolerances {
            critical_residual: 1e-12,
            quadrature: 1e-8,
            sum_identity: 1e-9,
            pairings: 1e-9,
            pullback: 1e-8,
            unity_shift: 1e-6,
            associativity: 1e-7,
            max_rejection: 0.2,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SampleRecord {
    #[serde(rename = "sample")]
    pub index: usize,
    pub rejected: Option<String>,
    pub critical_points: usize,
    pub expected_points: usize,
    #[serde(serialize_with = "crate::json::sig17")]
    pub lambda_mismatch: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub critical_residual: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub quadrature: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub sum_identity: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub pairings: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub pullback_g: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub pullback_eta: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub unity_shift: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub unity: f64,
    #[serde(serialize_with = "crate::json::sig17")]
    pub associativity: f64,
}

impl SampleRecord {
    pub fn failures(&self, tol: &LgTolerances) -> Vec<&'static str> {
        if self.rejected.is_some() {
            return vec![];
        }
        let count = if self.critical_points == self.expected_points { 0.0 } else { f64::INFINITY };
        let checks = [
            ("critical_count", count, 0.0),
            ("critical_points", self.critical_residual, tol.critical_residual),
            ("factorization", self.lambda_mismatch, 1e-10),
            ("quadrature", self.quadrature, tol.quadrature),
            ("sum_identity", self.sum_identity, tol.sum_identity),
            ("pairings", self.pairings, tol.pairings),
            ("pullback_g", self.pullback_g, tol.pullback),
            ("pullback_eta", self.pullback_eta, tol.pullback),
            ("unity_shift", self.unity_shift, tol.unity_shift),
            ("unity", self.unity, tol.associativity),
            ("associativity", self.associativity, tol.associativity),
        ];
        checks.iter().filter(|(_, v, t)| !(v <= t)).map(|(n, _, _)| *n).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LgReport {
    pub spec: GroupSpec,
    pub seed: u64,
    pub tolerances: LgTolerances,
    pub euler_push_forward: bool,
    pub samples: Vec<SampleRecord>,
}

impl LgReport {
    pub fn rejected(&self) -> usize {
        self.samples.iter().filter(|s| s.rejected.is_some()).count()
    }

    pub fn rejection_rate(&self) -> f64 {
        self.rejected() as f64 / self.samples.len().max(1) as f64
    }

    pub fn rejection_ok(&self) -> bool {
        self.rejection_rate() <= self.tolerances.max_rejection
    }

    pub fn failures(&self) -> Vec<(usize, &'static str)> {
        self.samples.iter().flat_map(|s| s.failures(&self.tolerances).into_iter().map(move |f| (s.index, f))).collect()
    }

    pub fn passed(&self) -> bool {
        self.euler_push_forward && self.failures().is_empty() && self.rejection_ok()
    }

    /// Largest value of one field over accepted samples.
    pub fn worst<F: Fn(&SampleRecord) -> f64>(&self, f: F) -> f64 {
        self.samples.iter().filter(|s| s.rejected.is_none()).map(f).fold(0.0, f64::max)
    }
}

/// The orbit Euler field pushed through `ỹ ↦ a` scales `a_j` by `j/k` and `a_{l+2}` by `1/k`.
pub fn euler_push_forward(spec: &GroupSpec) -> bool {
    let dd = degrees(spec);
    let (l, k) = (spec.l, spec.k as i64);
    let mut w: Vec<Q> = dd.d[..l].to_vec();
    w.extend(spec.marker_weights());
    covering_exponents(spec).iter().enumerate().all(|(j, row)| {
        let got = row.iter().zip(&w).fold(Q::from_integer(0.into()), |s, (e, wi)| s + Q::from_integer((*e).into()) * wi);
        let want = if j <= l { Q::new((j as i64 + 1).into(), k.into()) } else { Q::new(1.into(), k.into()) };
        got == want
    })
}

/// `∂a_j/∂y^b` with `y^{l+1}, y^{l+2}` the logarithms of `ỹ_{l+1}, ỹ_{l+2}`.
pub fn covering_jacobian(spec: &GroupSpec, y: &[C], a: &[C]) -> CMat {
    let e = covering_exponents(spec);
    let n = spec.dim();
    let l = spec.l;
    CMat::from_fn(n, n, |j, b| {
        if b < l {
            if e[j][b] == 0 {
                C::new(0.0, 0.0)
            } else {
                a[j] / y[b]
            }
        } else {
            a[j] * e[j][b] as f64
        }
    })
}

fn eval_tensor(t: &ChartTensor, pt: &[C]) -> CMat {
    CMat::from_fn(t.dim(), t.dim(), |i, j| t.get(i, j).eval(pt))
}

fn match_to(points: &[C], target: C) -> usize {
    (0..points.len()).min_by(|&i, &j| (points[i] - target).norm().total_cmp(&(points[j] - target).norm())).unwrap()
}

/// `(−1)^k ∂_s g̃^{αα}` along `a_k += s`, `a_{k+1} −= s a_{l+2}`, compared with `η̃^{αα}`.
fn unity_shift_error(p: &LGPoint, crit: &CriticalData) -> Result<f64> {
    let k = p.spec.k;
    let h = 1e-5;
    let shifted = |s: f64| -> Result<CriticalData> {
        let mut a = p.a.clone();
        a[k - 1] += s;
        a[k] -= s * p.a[p.spec.l + 1];
        critical_points(&LGPoint::new(&p.spec, a)?)
    };
    let (plus, minus) = (shifted(h)?, shifted(-h)?);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut worst: f64 = 0.0;
    for (i, &u) in crit.points.iter().enumerate() {
        let g = |c: &CriticalData| {
            let j = match_to(&c.points, u);
            -c.values[j] * c.second[j]
        };
        let d = sign * (g(&plus) - g(&minus)) / (2.0 * h);
        let want = -sign * crit.second[i];
        worst = worst.max((d - want).norm() / want.norm().max(1e-300));
    }
    Ok(worst)
}

/// Unity defect `max |c(e, ∂_i, ∂_j) − η̃_{ij}|` and associativity defect of the structure constants.
fn algebra_errors(p: &LGPoint, crit: &CriticalData, eta_a: &CMat) -> Result<(f64, f64)> {
    let n = p.spec.l + 2;
    let k = p.spec.k;
    let c = structure_constants_am6(p, crit);
    let cl = |i: usize, j: usize, l: usize| c[(i * n + j) * n + l];
    let eta_inv = eta_a.clone().try_inverse().ok_or_else(|| Error::Degenerate("η̃ is singular".into()))?;
    let scale = eta_a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut e = vec![C::new(0.0, 0.0); n];
    e[k - 1] = C::new(sign, 0.0);
    e[k] = -sign * p.a[p.spec.l + 1];
    let mut unity: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v: C = (0..n).map(|a| e[a] * cl(a, i, j)).sum();
            unity = unity.max((v - eta_a[(i, j)]).norm() / scale);
        }
    }
    let raised: Vec<C> = (0..n * n * n)
        .map(|idx| {
            let (i, j, m) = (idx / (n * n), (idx / n) % n, idx % n);
            (0..n).map(|s| cl(i, j, s) * eta_inv[(s, m)]).sum()
        })
        .collect();
    let cr = |i: usize, j: usize, m: usize| raised[(i * n + j) * n + m];
    let mut assoc: f64 = 0.0;
    let mut size: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for g in 0..n {
                for d in 0..n {
                    let mut lhs = C::new(0.0, 0.0);
                    let mut rhs = C::new(0.0, 0.0);
                    for s in 0..n {
                        lhs += cr(a, b, s) * cr(s, g, d);
                        rhs += cr(b, g, s) * cr(a, s, d);
                    }
                    assoc = assoc.max((lhs - rhs).norm());
                    size = size.max(lhs.norm());
                }
            }
        }
    }
    Ok((unity, assoc / size.max(1e-300)))
}

fn sample(spec: &GroupSpec, g_y: &ChartTensor, eta_y: &ChartTensor, seed: u64, index: usize) -> SampleRecord {
    let mut rec = SampleRecord { index, ..Default::default() };
    match run_sample(spec, g_y, eta_y, seed, &mut rec) {
        Ok(()) => rec,
        Err(e) => SampleRecord { index, rejected: Some(e.to_string()), ..Default::default() },
    }
}

fn run_sample(spec: &GroupSpec, g_y: &ChartTensor, eta_y: &ChartTensor, seed: u64, rec: &mut SampleRecord) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(rec.index as u64));
    let x = random_xpoint(spec, &mut rng, 0.15);
    let chart = factorize_phi(spec, &x)?;
    let p = &chart.point;
    let crit = critical_points(p)?;
    let metrics = residue_metrics(p, &crit)?;
    rec.lambda_mismatch = chart.lambda_mismatch;
    rec.critical_residual = crit.residual;
    rec.critical_points = crit.len();
    rec.expected_points = spec.l + 2;
    rec.quadrature = metrics.quadrature_error();
    rec.sum_identity = sum_identity_error(&chart, &crit);
    rec.pairings = varpi_error(&chart, &crit);

    let jac = &metrics.w * covering_jacobian(spec, &chart.y, &p.a);
    let (eta_c, g_c) = metrics.contravariant();
    let push = |t: &ChartTensor| &jac * eval_tensor(t, &chart.y) * jac.transpose();
    let diag = |d: &[C]| DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d));
    rec.pullback_g = rel_err(&push(g_y), &diag(&g_c));
    rec.pullback_eta = rel_err(&push(eta_y), &diag(&eta_c));
    rec.unity_shift = unity_shift_error(p, &crit)?;
    let (unity, assoc) = algebra_errors(p, &crit, &metrics.eta_a)?;
    rec.unity = unity;
    rec.associativity = assoc;
    Ok(())
}

/// Compares the orbit-space metrics with the residue metrics of the superpotential at random points.
pub fn lg_check(spec: &GroupSpec, g_y: &ChartTensor, eta_y: &ChartTensor, seed: u64, samples: usize, tolerances: LgTolerances) -> LgReport {
    let samples = (0..samples).into_par_iter().map(|i| sample(spec, g_y, eta_y, seed, i)).collect();
    LgReport { spec: *spec, seed, tolerances, euler_push_forward: euler_push_forward(spec), samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{eta_y, metric_g_y};

    #[test]
    fn push_forward_weights() {
        for l in 2..7 {
            for k in 1..l {
                assert!(euler_push_forward(&GroupSpec::new(l, k).unwrap()));
            }
        }
    }

    #[test]
    fn a2k1_samples() {
        let spec = GroupSpec::new(2, 1).unwrap();
        let g = metric_g_y(&spec).unwrap();
        let e = eta_y(&spec, &g);
        let r = lg_check(&spec, &g, &e, 42, 8, LgTolerances::default());
        for s in &r.samples {
            eprintln!("{s:?}");
        }
        assert!(r.passed(), "{:?}", r.failures());
    }
}
