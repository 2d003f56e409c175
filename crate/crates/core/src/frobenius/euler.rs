use num_traits::Zero;

use crate::algebra::{q, LaurentPoly, VarTable, Q};
use crate::orbit::{degrees, jacobian_zy, Chart, GroupSpec};

/// `E = Σ_{α≤l} d_α x^α ∂_α + c_{l+1} ∂_{l+1} + c_{l+2} ∂_{l+2}` in one chart.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerField {
    pub chart: Chart,
    /// Coefficients of `x^a ∂_a`, `a = 1..l+2` (zero on the last two).
    pub linear: Vec<Q>,
    /// Constant components, `a = 1..l+2`.
    pub constant: Vec<Q>,
}

pub fn euler_field(spec: &GroupSpec, chart: Chart) -> EulerField {
    let (l, k, m) = (spec.l, spec.k as i64, spec.m() as i64);
    let dd = degrees(spec);
    let mut linear = dd.d[..l].to_vec();
    linear.extend([Q::zero(), Q::zero()]);
    let mut constant = vec![Q::zero(); l + 2];
    match chart {
        Chart::Y | Chart::Torus => {
            constant[l] = q(1, k);
            constant[l + 1] = q(1, m);
        }
        Chart::Z | Chart::T => {
            constant[l] = q(1, m);
            constant[l + 1] = q(l as i64, k * m);
        }
    }
    EulerField { chart, linear, constant }
}

impl EulerField {
    /// `L_E p` for a polynomial in `vars`, whose coordinate `a < l` is the variable `a`.
    pub fn apply(&self, vars: &VarTable, p: &LaurentPoly) -> LaurentPoly {
        let mut out = vars.zero();
        for (a, d) in self.linear.iter().enumerate() {
            if !d.is_zero() {
                out += &p.euler(a).scale(d);
            }
        }
        out + vars.directional(p, &self.constant)
    }

    /// Components of `E` as polynomials.
    pub fn components(&self, vars: &VarTable) -> Vec<LaurentPoly> {
        self.linear
            .iter()
            .zip(&self.constant)
            .enumerate()
            .map(|(a, (d, c))| {
                let mut p = vars.constant(c.clone());
                if !d.is_zero() {
                    p += &vars.var(a).scale(d);
                }
                p
            })
            .collect()
    }
}

/// Checks that the y-chart field maps to the z-chart field under the linear change of coordinates.
pub fn push_forward_consistent(spec: &GroupSpec) -> bool {
    let n = spec.dim();
    let ey = euler_field(spec, Chart::Y);
    let ez = euler_field(spec, Chart::Z);
    let jac = jacobian_zy(spec);
    for a in 0..n {
        let c: Q = (0..n).fold(Q::zero(), |s, i| s + &jac[a][i] * &ey.constant[i]);
        if c != ez.constant[a] {
            return false;
        }
        for i in 0..n {
            if &jac[a][i] * &ey.linear[i] != &ez.linear[a] * &jac[a][i] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    #[test]
    fn a2k1_t_chart() {
        let e = euler_field(&GroupSpec::new(2, 1).unwrap(), Chart::T);
        assert_eq!(e.linear, vec![qi(1), qi(1), qi(0), qi(0)]);
        assert_eq!(e.constant, vec![qi(0), qi(0), qi(1), qi(2)]);
    }

    #[test]
    fn a3k1_t_chart() {
        let e = euler_field(&GroupSpec::new(3, 1).unwrap(), Chart::T);
        assert_eq!(e.linear[..3], [qi(1), qi(1), q(1, 2)]);
        assert_eq!(e.constant[3..], [q(1, 2), q(3, 2)]);
    }

    #[test]
    fn charts_agree() {
        for l in 2..7 {
            for k in 1..l {
                assert!(push_forward_consistent(&GroupSpec::new(l, k).unwrap()));
            }
        }
    }
}
