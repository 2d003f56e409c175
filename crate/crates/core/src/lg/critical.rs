use nalgebra::DMatrix;

use super::superpotential::{CPoly, LGPoint, C};
use crate::error::{Error, Result};

/// Critical points `U_α = e^{iψ_α}`, critical values `u_α = λ(ψ_α)` and `λ''(ψ_α)`.
#[derive(Clone, Debug)]
pub struct CriticalData {
    pub points: Vec<C>,
    pub values: Vec<C>,
    pub second: Vec<C>,
    /// Largest `|λ'(ψ_α)|` after polishing, relative to the size of the terms that cancel in it.
    pub residual: f64,
}

impl CriticalData {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `ψ_α` on the principal branch.
    pub fn psi(&self) -> Vec<C> {
        self.points.iter().map(|u| -C::i() * u.ln()).collect()
    }
}

/// Roots of a complex polynomial from the eigenvalues of its companion matrix.
pub fn companion_roots(p: &CPoly) -> Option<Vec<C>> {
    let n = p.degree();
    let lead = p.0[n];
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.0[i] / lead;
    }
    m.eigenvalues().map(|v| v.iter().copied().collect())
}

/// Newton polish; `None` when the iteration does not settle, as happens at multiple roots.
fn newton(p: &CPoly, dp: &CPoly, mut u: C) -> Option<C> {
    for _ in 0..60 {
        let step = p.eval(u) / dp.eval(u);
        if !step.is_finite() {
            return None;
        }
        u -= step;
        if step.norm() <= 1e-13 * u.norm().max(1e-300) {
            return Some(u);
        }
    }
    None
}

/// `|λ'(ψ)|` relative to the size of the terms of `Q` at `u`.
fn relative_residual(q: &CPoly, u: C) -> f64 {
    let scale: f64 = q.0.iter().enumerate().map(|(i, c)| c.norm() * u.norm().powi(i as i32)).sum();
    q.eval(u).norm() / scale.max(1e-300)
}

/// `λ''(ψ) = −U Q'(U) / (U^m (U − c)²)` at a root `U` of `Q`.
pub fn second_derivative(p: &LGPoint, q: &CPoly, u: C) -> C {
    let c = p.pole();
    -u * q.deriv().eval(u) / (u.powi(p.m() as i32) * (u - c) * (u - c))
}

pub fn critical_points(p: &LGPoint) -> Result<CriticalData> {
    let q = p.critical_poly();
    let n = p.spec.l + 2;
    if q.degree() != n {
        return Err(Error::Degenerate(format!("critical polynomial has degree {} instead of {n}", q.degree())));
    }
    let dq = q.deriv();
    let raw = companion_roots(&q).ok_or_else(|| Error::Degenerate("eigenvalue iteration failed".into()))?;
    let points: Vec<C> = raw
        .into_iter()
        .map(|u| newton(&q, &dq, u).ok_or_else(|| Error::Degenerate(format!("Newton polish did not converge near {u}"))))
        .collect::<Result<_>>()?;
    let c = p.pole();
    for (i, u) in points.iter().enumerate() {
        let scale: f64 = q.0.iter().enumerate().map(|(j, c)| c.norm() * u.norm().powi(j as i32)).sum();
        if (u * dq.eval(*u)).norm() < 1e-8 * scale {
            return Err(Error::Degenerate(format!("critical point {u} is numerically multiple")));
        }
        if u.norm() < 1e-10 || (u - c).norm() < 1e-10 {
            return Err(Error::Degenerate(format!("critical point {u} at a pole")));
        }
        for v in &points[..i] {
            if (u - v).norm() < 1e-8 * u.norm().max(v.norm()) {
                return Err(Error::Degenerate(format!("critical points {u} and {v} coincide")));
            }
        }
    }
    let values: Vec<C> = points.iter().map(|&u| p.lambda(u)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("infinite critical value".into()));
    }
    let second: Vec<C> = points.iter().map(|&u| second_derivative(p, &q, u)).collect();
    let residual = points.iter().map(|&u| relative_residual(&q, u)).fold(0.0, f64::max);
    Ok(CriticalData { points, values, second, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::GroupSpec;

    #[test]
    fn roots_of_known_polynomial() {
        let p = CPoly(vec![C::new(-6.0, 0.0), C::new(11.0, 0.0), C::new(-6.0, 0.0), C::new(1.0, 0.0)]);
        let mut r: Vec<f64> = companion_roots(&p).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - want).abs() < 1e-10);
        }
    }

    #[test]
    fn second_derivative_by_differences() {
        let spec = GroupSpec::new(3, 1).unwrap();
        let p = LGPoint::new(&spec, vec![C::new(0.3, 0.1), C::new(-0.4, 0.0), C::new(0.2, -0.5), C::new(1.1, 0.0), C::new(0.6, 0.2)]).unwrap();
        let cd = critical_points(&p).unwrap();
        assert_eq!(cd.len(), 5);
        assert!(cd.residual < 1e-12);
        for (psi, want) in cd.psi().iter().zip(&cd.second) {
            let h = 1e-4;
            let lam = |s: f64| p.lambda((C::i() * (psi + s)).exp());
            let fd = (lam(h) - 2.0 * lam(0.0) + lam(-h)) / (h * h);
            assert!((fd - want).norm() < 1e-5 * want.norm().max(1.0), "{fd} vs {want}");
            let shifted = p.lambda((C::i() * (psi + 2.0 * std::f64::consts::PI)).exp());
            assert!((shifted - lam(0.0)).norm() < 1e-12 * lam(0.0).norm().max(1.0));
        }
    }

    #[test]
    fn root_count_on_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (l, k) in [(2, 1), (3, 1), (3, 2)] {
            let spec = GroupSpec::new(l, k).unwrap();
            let mut accepted = 0;
            for _ in 0..100 {
                let a: Vec<C> = (0..l + 2).map(|_| C::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))).collect();
                let Ok(p) = LGPoint::new(&spec, a) else { continue };
                if let Ok(cd) = critical_points(&p) {
                    assert_eq!(cd.len(), l + 2);
                    assert!(cd.residual < 1e-12, "{}", cd.residual);
                    accepted += 1;
                }
            }
            assert!(accepted >= 95, "{accepted}");
        }
    }
}
