use std::f64::consts::PI;

use super::critical::CriticalData;
use super::superpotential::{from_orbit_point, LGPoint, C};
use crate::error::{Error, Result};
use crate::orbit::invariance::ambient;
use crate::orbit::{build_root_data, invariants_at, GroupSpec};

/// The point `φ_1..φ_{l+2}` of the factorized superpotential together with the orbit data it came from.
#[derive(Clone, Debug)]
pub struct PhiChart {
    pub spec: GroupSpec,
    pub x: Vec<C>,
    pub phi: Vec<C>,
    /// `ỹ_1..ỹ_{l+2}` at `x`.
    pub y: Vec<C>,
    pub point: LGPoint,
    /// Worst relative mismatch between the product form and the coefficient form of `λ`.
    pub lambda_mismatch: f64,
}

impl PhiChart {
    /// `E_b = e^{iφ_b}`.
    pub fn exps(&self) -> Vec<C> {
        self.phi.iter().map(|p| (C::i() * p).exp()).collect()
    }

    /// `λ = u^{−m}(u − E_{l+2})^{−1} Π_{b≤l+1}(u − E_b)`.
    pub fn lambda_product(&self, u: C) -> C {
        let e = self.exps();
        let l = self.spec.l;
        let num: C = e[..=l].iter().map(|eb| u - eb).product();
        num / (u.powi(self.spec.m() as i32) * (u - e[l + 1]))
    }
}

/// `φ_b = 2π(ρ + v_b)` for `b ≤ l+1` and `φ_{l+2} = 2π x_{l+1}`.
pub fn phi_of_x(spec: &GroupSpec, x: &[C]) -> Vec<C> {
    let l = spec.l;
    let m = spec.m() as f64;
    let rho = ((m + 1.0) * x[l] + m * x[l + 1]) / (l as f64 + 1.0);
    let mut phi: Vec<C> = ambient(spec, x).into_iter().map(|v| 2.0 * PI * (rho + v)).collect();
    phi.push(2.0 * PI * x[l]);
    phi
}

/// `ϖ_1 = x_1`, `ϖ_j = x_j − x_{j−1}` for `2 ≤ j ≤ l`, `ϖ_{l+1} = x_{l+1}`, `ϖ_{l+2} = x_{l+2}`.
pub fn varpi_of_x(spec: &GroupSpec, x: &[C]) -> Vec<C> {
    let l = spec.l;
    let mut w: Vec<C> = ambient(spec, x)[..l].to_vec();
    w.push(x[l]);
    w.push(x[l + 1]);
    w
}

/// Builds the chart at `x` and checks the product form of `λ` against the coefficients `a(ỹ(x))`.
pub fn factorize_phi(spec: &GroupSpec, x: &[C]) -> Result<PhiChart> {
    let y = invariants_at(spec, &build_root_data(spec), x);
    let point = from_orbit_point(spec, &y)?;
    let phi = phi_of_x(spec, x);
    let mut chart = PhiChart { spec: *spec, x: x.to_vec(), phi, y, point, lambda_mismatch: 0.0 };
    let mut worst: f64 = 0.0;
    for t in 0..10 {
        let u = C::from_polar(0.6 + 0.09 * t as f64, 0.37 + 0.61 * t as f64);
        let (a, b) = (chart.lambda_product(u), chart.point.lambda(u));
        worst = worst.max((a - b).norm() / b.norm().max(1e-300));
    }
    chart.lambda_mismatch = worst;
    if !(worst < 1e-10) {
        return Err(Error::Mismatch(format!("product and coefficient forms of λ differ by {worst:e}")));
    }
    Ok(chart)
}

/// Worst deviation of `Σ_α u_α U_α² / ((E_a − U_α)(E_b − U_α) λ''_α)` from its closed form.
pub fn sum_identity_error(chart: &PhiChart, crit: &CriticalData) -> f64 {
    let l = chart.spec.l;
    let k = chart.spec.k as f64;
    let e = chart.exps();
    let n = l + 2;
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mut s = C::new(0.0, 0.0);
            for ((&uu, &val), &l2) in crit.points.iter().zip(&crit.values).zip(&crit.second) {
                s += val * uu * uu / ((e[a] - uu) * (e[b] - uu) * l2);
            }
            let want = match (a <= l, b <= l) {
                (true, true) => (if a == b { 1.0 } else { 0.0 }) - 1.0 / k,
                (true, false) | (false, true) => -1.0 / k,
                (false, false) => -1.0 - 1.0 / k,
            };
            worst = worst.max((s - want).norm());
        }
    }
    worst
}

/// `∂ϖ_β/∂u_α` for all `α` (rows) and `β` (columns).
pub fn varpi_gradients(chart: &PhiChart, crit: &CriticalData) -> Vec<Vec<C>> {
    let l = chart.spec.l;
    let m = chart.spec.m() as f64;
    let e = chart.exps();
    let tpi = 2.0 * PI * C::i();
    crit.points
        .iter()
        .zip(&crit.second)
        .map(|(&uu, &l2)| {
            let base = |b: usize| uu / (tpi * (e[b] - uu) * l2);
            let p1 = base(l + 1);
            let p2 = (0..=l).map(|b| base(b) / m).sum::<C>() - (m + 1.0) / m * p1;
            let mut row: Vec<C> = (0..l).map(|b| base(b) - (m + 1.0) / (l as f64 + 1.0) * p1 - m / (l as f64 + 1.0) * p2).collect();
            row.push(p1);
            row.push(p2);
            row
        })
        .collect()
}

/// The pairings `(dϖ_a, dϖ_b)` computed through the canonical intersection form `g̃^{αα} = −u_α λ''_α`.
pub fn varpi_pairings(chart: &PhiChart, crit: &CriticalData) -> Vec<Vec<C>> {
    let n = chart.spec.l + 2;
    let grad = varpi_gradients(chart, crit);
    let g: Vec<C> = crit.values.iter().zip(&crit.second).map(|(u, l2)| -u * l2).collect();
    (0..n)
        .map(|a| (0..n).map(|b| grad.iter().zip(&g).map(|(r, gi)| gi * r[a] * r[b]).sum()).collect())
        .collect()
}

/// Expected `(dϖ_a, dϖ_b)`.
pub fn varpi_expected(spec: &GroupSpec) -> Vec<Vec<f64>> {
    let (l, k, m) = (spec.l, spec.k as f64, spec.m() as f64);
    let s = 1.0 / (4.0 * PI * PI);
    let n = l + 2;
    let mut out = vec![vec![0.0; n]; n];
    for a in 0..l {
        for b in 0..l {
            out[a][b] = s * ((if a == b { 1.0 } else { 0.0 }) - 1.0 / (l as f64 + 1.0));
        }
    }
    out[l][l] = -s * (k + 1.0) / k;
    out[l][l + 1] = s;
    out[l + 1][l] = s;
    out[l + 1][l + 1] = -s * (m + 1.0) / m;
    out
}

pub fn varpi_error(chart: &PhiChart, crit: &CriticalData) -> f64 {
    let got = varpi_pairings(chart, crit);
    let want = varpi_expected(&chart.spec);
    got.iter().flatten().zip(want.iter().flatten()).map(|(g, w)| (g - w).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lg::critical::critical_points;

    use rand::SeedableRng;

    fn sample(spec: &GroupSpec) -> Vec<C> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        crate::orbit::invariance::random_xpoint(spec, &mut rng, 0.1)
    }

    #[test]
    fn product_form_matches_coefficients() {
        for (l, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
            let spec = GroupSpec::new(l, k).unwrap();
            let c = factorize_phi(&spec, &sample(&spec)).unwrap();
            assert!(c.lambda_mismatch < 1e-12, "{l} {k}: {}", c.lambda_mismatch);
        }
    }

    #[test]
    fn sum_identity_and_pairings() {
        for (l, k) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
            let spec = GroupSpec::new(l, k).unwrap();
            let c = factorize_phi(&spec, &sample(&spec)).unwrap();
            let crit = critical_points(&c.point).unwrap();
            assert!(sum_identity_error(&c, &crit) < 1e-9, "{l} {k}: {}", sum_identity_error(&c, &crit));
            assert!(varpi_error(&c, &crit) < 1e-9, "{l} {k}: {}", varpi_error(&c, &crit));
        }
    }

    #[test]
    fn numerator_roots_recover_phi() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let c = factorize_phi(&spec, &sample(&spec)).unwrap();
        let roots = crate::lg::critical::companion_roots(&c.point.numerator()).unwrap();
        for e in &c.exps()[..=spec.l] {
            let d = roots.iter().map(|r| (r - e).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-10, "{d}");
        }
        assert!((c.point.pole() - c.exps()[spec.l + 1]).norm() < 1e-12);
    }

    #[test]
    fn origin_is_degenerate() {
        let spec = GroupSpec::new(2, 1).unwrap();
        let c = factorize_phi(&spec, &[C::new(0.0, 0.0); 4]).unwrap();
        assert!(critical_points(&c.point).is_err());
    }
}

