use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::orbit::GroupSpec;

pub type C = Complex64;

/// Complex polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly(pub Vec<C>);

impl CPoly {
    pub fn eval(&self, u: C) -> C {
        self.0.iter().rev().fold(C::new(0.0, 0.0), |s, c| s * u + c)
    }

    pub fn deriv(&self) -> CPoly {
        CPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn mul(&self, o: &CPoly) -> CPoly {
        let mut r = vec![C::new(0.0, 0.0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        CPoly(r)
    }

    fn sub(&self, o: &CPoly) -> CPoly {
        let n = self.0.len().max(o.0.len());
        let z = C::new(0.0, 0.0);
        CPoly((0..n).map(|i| self.0.get(i).copied().unwrap_or(z) - o.0.get(i).copied().unwrap_or(z)).collect())
    }
}

/// A superpotential `λ = (u − a_{l+2})^{-1}(u^{k+1} + a_1 u^k + … + a_{l+1} u^{k−l})`, `u = e^{iφ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LGPoint {
    pub spec: GroupSpec,
    /// `a_1..a_{l+2}`.
    pub a: Vec<C>,
}

impl LGPoint {
    pub fn new(spec: &GroupSpec, a: Vec<C>) -> Result<Self> {
        let l = spec.l;
        if a.len() != l + 2 {
            return Err(Error::InvalidSpec(format!("{} coefficients for l = {l}", a.len())));
        }
        for j in [l, l + 1] {
            if a[j].norm() == 0.0 {
                return Err(Error::ZeroCoordinate(j + 1));
            }
        }
        Ok(LGPoint { spec: *spec, a })
    }

    pub fn m(&self) -> usize {
        self.spec.m()
    }

    pub fn pole(&self) -> C {
        self.a[self.spec.l + 1]
    }

    /// `N(u) = u^{l+1} + a_1 u^l + … + a_{l+1}`, so that `λ = N / (u^m (u − c))`.
    pub fn numerator(&self) -> CPoly {
        let l = self.spec.l;
        let mut c = vec![C::new(0.0, 0.0); l + 2];
        c[l + 1] = C::new(1.0, 0.0);
        for j in 1..=l + 1 {
            c[l + 1 - j] = self.a[j - 1];
        }
        CPoly(c)
    }

    /// `Q(u) = u(u−c)N' − ((m+1)u − mc)N`, with `u dλ/du = Q / (u^m (u−c)²)`.
    pub fn critical_poly(&self) -> CPoly {
        let (c, m) = (self.pole(), self.m() as f64);
        let n = self.numerator();
        let a = CPoly(vec![C::new(0.0, 0.0), -c, C::new(1.0, 0.0)]).mul(&n.deriv());
        let b = CPoly(vec![-c * m, C::new(m + 1.0, 0.0)]).mul(&n);
        let mut q = a.sub(&b);
        while q.0.len() > 1 && q.0.last().map(|x| x.norm() == 0.0).unwrap_or(false) {
            q.0.pop();
        }
        q
    }

    fn denom(&self, u: C) -> C {
        u.powi(self.m() as i32) * (u - self.pole())
    }

    pub fn lambda(&self, u: C) -> C {
        self.numerator().eval(u) / self.denom(u)
    }

    /// `dλ/dφ = i Q(u) / (u^m (u−c)²)`.
    pub fn lambda_prime(&self, u: C) -> C {
        let c = self.pole();
        C::i() * self.critical_poly().eval(u) / (u.powi(self.m() as i32) * (u - c) * (u - c))
    }

    /// `∂λ/∂a_j` at fixed `φ`, `j = 1..l+2`.
    pub fn dlambda_da(&self, u: C) -> Vec<C> {
        let l = self.spec.l;
        let d = self.denom(u);
        let mut out: Vec<C> = (1..=l + 1).map(|j| u.powi((l + 1 - j) as i32) / d).collect();
        out.push(self.lambda(u) / (u - self.pole()));
        out
    }
}

/// `ỹ ↦ a`: `a_j = (−1)^j ỹ_j` for `j ≤ k`, `a_{k+s} = (−1)^{k+s} ỹ_{k+s} ỹ_{l+1}^s ỹ_{l+2}^{s−1}`,
/// `a_{l+1} = (−1)^{l+1} ỹ_{l+1}^{m+1} ỹ_{l+2}^m`, `a_{l+2} = ỹ_{l+1}`.
pub fn from_orbit_point(spec: &GroupSpec, y: &[C]) -> Result<LGPoint> {
    let (l, k, m) = (spec.l, spec.k, spec.m());
    for j in [l, l + 1] {
        if y[j].norm() == 0.0 {
            return Err(Error::ZeroCoordinate(j + 1));
        }
    }
    let sign = |j: usize| if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let (y1, y2) = (y[l], y[l + 1]);
    let mut a = Vec::with_capacity(l + 2);
    for j in 1..=l {
        if j <= k {
            a.push(y[j - 1] * sign(j));
        } else {
            let s = (j - k) as i32;
            a.push(y[j - 1] * y1.powi(s) * y2.powi(s - 1) * sign(j));
        }
    }
    a.push(y1.powi(m as i32 + 1) * y2.powi(m as i32) * sign(l + 1));
    a.push(y1);
    LGPoint::new(spec, a)
}

/// Exponent matrix of the monomial map `ỹ ↦ a` (row `j` gives `a_j` up to sign).
pub fn covering_exponents(spec: &GroupSpec) -> Vec<Vec<i64>> {
    let (l, k, m) = (spec.l, spec.k, spec.m() as i64);
    let mut e = vec![vec![0i64; l + 2]; l + 2];
    for j in 1..=l {
        e[j - 1][j - 1] = 1;
        if j > k {
            let s = (j - k) as i64;
            e[j - 1][l] = s;
            e[j - 1][l + 1] = s - 1;
        }
    }
    e[l][l] = m + 1;
    e[l][l + 1] = m;
    e[l + 1][l] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn covering_map_a2k1_unit_point() {
        let spec = GroupSpec::new(2, 1).unwrap();
        let p = from_orbit_point(&spec, &[c(1.0); 4]).unwrap();
        assert_eq!(p.a, vec![c(-1.0), c(1.0), c(-1.0), c(1.0)]);
    }

    #[test]
    fn last_coefficient_is_marker() {
        let spec = GroupSpec::new(4, 2).unwrap();
        let y = [c(0.3), c(-1.2), c(0.7), c(2.0), c(1.5), c(0.25)];
        assert_eq!(from_orbit_point(&spec, &y).unwrap().a[5], c(1.5));
    }

    #[test]
    fn zero_marker_rejected() {
        let spec = GroupSpec::new(2, 1).unwrap();
        assert_eq!(from_orbit_point(&spec, &[c(1.0), c(1.0), c(0.0), c(1.0)]), Err(Error::ZeroCoordinate(3)));
    }

    #[test]
    fn critical_poly_matches_derivative() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let p = LGPoint::new(&spec, vec![C::new(0.3, 0.1), c(-0.4), C::new(0.2, -0.5), c(1.1), C::new(0.6, 0.2)]).unwrap();
        let q = p.critical_poly();
        assert_eq!(q.degree(), 5);
        assert!((q.0[5] - c(2.0)).norm() < 1e-15);
        let u = C::new(0.7, 0.4);
        let h = 1e-6;
        let fd = (p.lambda(u * C::new(0.0, h).exp()) - p.lambda(u * C::new(0.0, -h).exp())) / (2.0 * h);
        assert!((fd - p.lambda_prime(u)).norm() < 1e-8 * p.lambda_prime(u).norm().max(1.0));
    }
}
