use num_traits::{One, Zero};
use rayon::prelude::*;

use super::ansatz::solve_columns;
use super::euler::{euler_field, EulerField};
use super::tchart::TChartTensor;
use crate::algebra::{q, qi, rational_inverse, weighted_basis, ExpRule, LaurentPoly, VarTable, Q};
use crate::error::{Error, Result};
use crate::orbit::{Chart, GroupSpec};

/// `F = poly + log_coeff · s² log s` with `s = t^{log_var+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub spec: GroupSpec,
    pub vars: VarTable,
    pub poly: LaurentPoly,
    pub log_coeff: Q,
    /// 0-based coordinate carrying the logarithm.
    pub log_var: usize,
    pub euler: EulerField,
    /// `η^{αβ}` in the flat chart.
    pub eta: Vec<Vec<Q>>,
    /// `η_{αβ}`.
    pub eta_inv: Vec<Vec<Q>>,
    /// Monomials dropped from the ansatz because the solve left them free.
    pub kernel: Vec<String>,
}

impl Potential {
    pub fn new(spec: &GroupSpec, vars: VarTable, poly: LaurentPoly, log_coeff: Q, eta: Vec<Vec<Q>>) -> Result<Self> {
        let eta_inv = rational_inverse(&eta).ok_or_else(|| Error::exact("potential", "η(t) is singular"))?;
        Ok(Potential { spec: *spec, vars, poly, log_coeff, log_var: spec.k, euler: euler_field(spec, Chart::T), eta, eta_inv, kernel: vec![] })
    }

    /// `∂³F/∂t^a∂t^b∂t^c`; the logarithm contributes `2·log_coeff / s` on the diagonal slot only.
    pub fn third(&self, a: usize, b: usize, c: usize) -> LaurentPoly {
        let v = &self.vars;
        let mut p = v.deriv(&v.deriv(&v.deriv(&self.poly, a), b), c);
        if a == self.log_var && b == self.log_var && c == self.log_var && !self.log_coeff.is_zero() {
            let mut e = vec![0; v.len()];
            e[self.log_var] = -1;
            p.add_term(&e, &self.log_coeff * qi(2));
        }
        p
    }

    /// `L_E F^{αβ}` with `F^{αβ} = η^{αε} η^{βδ} ∂_ε∂_δ F`.
    pub fn lie_raised_hessian(&self, alpha: usize, beta: usize) -> LaurentPoly {
        lie_raised(self, &self.poly, alpha, beta) + self.vars.constant(self.log_raised(alpha, beta))
    }

    fn log_raised(&self, alpha: usize, beta: usize) -> Q {
        let s = self.log_var;
        &self.eta[alpha][s] * &self.eta[beta][s] * &self.log_coeff * qi(2) * &self.euler.linear[s]
    }

    /// `L_E F − 2F`, which must be a polynomial; the logarithm contributes `log_coeff · s²`.
    pub fn quasi_homogeneity_defect(&self) -> LaurentPoly {
        let v = &self.vars;
        let mut r = &self.euler.apply(v, &self.poly) - &self.poly.scale(&qi(2));
        let mut e = vec![0; v.len()];
        e[self.log_var] = 2;
        r.add_term(&e, &self.log_coeff * &self.euler.linear[self.log_var]);
        r
    }

    /// The quadratic form that `L_E F − 2F` is required to equal.
    pub fn expected_defect(&self) -> LaurentPoly {
        let (l, k, m) = (self.spec.l as i64, self.spec.k as i64, self.spec.m() as i64);
        let kk = self.spec.k - 1;
        let v = &self.vars;
        let mut p = v.zero();
        let mut e = vec![0; v.len()];
        e[kk] = 2;
        p.add_term(&e, q(l, 2 * k * m));
        e[kk] = 1;
        e[kk + 1] = 1;
        p.add_term(&e, q(1, m));
        e[kk] = 0;
        e[kk + 1] = 2;
        p.add_term(&e, q(m + 1, 2 * m));
        p
    }

    /// Renders the polynomial part followed by the log term.
    pub fn render(&self) -> String {
        let s = self.vars.name(self.log_var);
        format!("{} + {}*{s}^2*log({s})", self.vars.render(&self.poly), crate::algebra::render_q(&self.log_coeff))
    }
}

fn lie_raised(f: &Potential, p: &LaurentPoly, alpha: usize, beta: usize) -> LaurentPoly {
    let v = &f.vars;
    let n = f.spec.dim();
    let mut acc = v.zero();
    for e in 0..n {
        if f.eta[alpha][e].is_zero() {
            continue;
        }
        let pe = v.deriv(p, e);
        for d in 0..n {
            if f.eta[beta][d].is_zero() {
                continue;
            }
            acc += &v.deriv(&pe, d).scale(&(&f.eta[alpha][e] * &f.eta[beta][d]));
        }
    }
    f.euler.apply(v, &acc)
}

/// Cubic skeleton `½(t^k)² t^{l+2} + ½ t^k Σ η_{αβ} t^α t^β` over `α, β ∉ {k, l+2}`.
pub fn skeleton(spec: &GroupSpec, vars: &VarTable, eta_inv: &[Vec<Q>]) -> LaurentPoly {
    let (l, k) = (spec.l, spec.k - 1);
    let n = spec.dim();
    let half = q(1, 2);
    let mut e = vec![0; vars.len()];
    e[k] = 2;
    e[l + 1] = 1;
    let mut p = LaurentPoly::term(vars.len(), &e, half.clone());
    for a in (0..n).filter(|&a| a != k && a != l + 1) {
        for b in (0..n).filter(|&b| b != k && b != l + 1) {
            if eta_inv[a][b].is_zero() {
                continue;
            }
            let mut e = vec![0; vars.len()];
            e[k] += 1;
            e[a] += 1;
            e[b] += 1;
            p.add_term(&e, &eta_inv[a][b] * &half);
        }
    }
    p
}

/// Reconstructs `F` from `g^{αβ}(t) = L_E F^{αβ}`.
pub fn potential(spec: &GroupSpec, g_t: &TChartTensor, eta_t: &[Vec<Q>]) -> Result<Potential> {
    let (l, k) = (spec.l, spec.k - 1);
    let n = spec.dim();
    let vars = g_t.vars.clone();
    let mut f = Potential::new(spec, vars.clone(), vars.zero(), q(1, 2), eta_t.to_vec())?;
    f.poly = skeleton(spec, &vars, &f.eta_inv);

    let w = vars.weights().unwrap().to_vec();
    let mut rules = vec![ExpRule::Nonneg; w.len()];
    rules[k] = ExpRule::Excluded;
    rules[l] = ExpRule::Excluded;
    rules[l + 1] = ExpRule::Excluded;
    let mut basis = weighted_basis(&w, &qi(2), &rules)?;
    let mut a0 = vec![0; vars.len()];
    a0[k + 1] = 2;
    a0[l] = 1;
    basis.push(a0.clone());

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let cols: Vec<Vec<LaurentPoly>> = basis
        .par_iter()
        .map(|e| {
            let m = LaurentPoly::term(vars.len(), e, Q::one());
            pairs.iter().map(|&(a, b)| lie_raised(&f, &m, a, b)).collect()
        })
        .collect();
    let rhs: Vec<LaurentPoly> = pairs.iter().map(|&(a, b)| g_t.get(a, b) - &f.lie_raised_hessian(a, b)).collect();
    let sol = solve_columns("potential", &cols, &rhs)?;

    let mut kernel = Vec::new();
    for &c in &sol.free {
        let m = LaurentPoly::term(vars.len(), &basis[c], Q::one());
        let rigid = (0..n).all(|a| (0..n).all(|b| vars.deriv(&vars.deriv(&m, a), b).is_constant()));
        if !rigid {
            return Err(Error::Underdetermined { stage: "potential".into(), kernel: vec![vars.render(&m)] });
        }
        kernel.push(vars.render(&m));
    }
    let a0_idx = basis.len() - 1;
    if sol.values[a0_idx] != q(1, 2) {
        return Err(Error::exact("potential", format!("coefficient of (t^(k+1))² t^(l+1) is {}, expected 1/2", sol.values[a0_idx])));
    }
    for (e, c) in basis.iter().zip(&sol.values) {
        f.poly.add_term(e, c.clone());
    }
    f.kernel = kernel;
    check_potential(&f, g_t)?;
    Ok(f)
}

/// Unity cubic, quasi-homogeneity and `g = L_E F^{..}` for a finished potential.
pub fn check_potential(f: &Potential, g_t: &TChartTensor) -> Result<()> {
    let n = f.spec.dim();
    let k = f.spec.k - 1;
    for i in 0..n {
        for j in 0..n {
            if f.third(k, i, j) != f.vars.constant(f.eta_inv[i][j].clone()) {
                return Err(Error::exact("potential", format!("∂³F/∂t^k∂t^{}∂t^{} ≠ η_ij", i + 1, j + 1)));
            }
            if f.lie_raised_hessian(i, j) != *g_t.get(i, j) {
                return Err(Error::exact("potential", format!("g^({},{}) ≠ L_E F^({},{})", i + 1, j + 1, i + 1, j + 1)));
            }
        }
    }
    if f.quasi_homogeneity_defect() != f.expected_defect() {
        return Err(Error::exact("potential", "L_E F − 2F differs from the quadratic remainder"));
    }
    Ok(())
}
