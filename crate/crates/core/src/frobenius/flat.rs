use num_traits::Zero;
use rayon::prelude::*;

use super::ansatz::solve_columns;
use crate::algebra::{solve_linear, weighted_basis, ExpRule, LaurentPoly, PolyMatrix, VarTable, Q};
use crate::error::{Error, Result};
use crate::orbit::{degrees, DegreeData, z_vars, Chart, ChartTensor, GroupSpec};

/// Flat coordinates `t^α = z^α + h^α` of `η(z)`, written in the z-chart.
#[derive(Clone, Debug)]
pub struct FlatCoords {
    pub spec: GroupSpec,
    pub vars: VarTable,
    /// `h^1..h^l`.
    pub h: Vec<LaurentPoly>,
    /// `t^1..t^l`.
    pub t: Vec<LaurentPoly>,
    /// The constant matrix `η^{αβ}(t)`.
    pub eta_t: Vec<Vec<Q>>,
}

impl FlatCoords {
    /// `∂t^α/∂z^a` for `a = 1..l+2` (0-based `alpha`).
    pub fn gradient(&self, alpha: usize) -> Vec<LaurentPoly> {
        let n = self.spec.dim();
        let l = self.spec.l;
        if alpha < l {
            (0..n).map(|a| self.vars.deriv(&self.t[alpha], a)).collect()
        } else {
            (0..n).map(|a| if a == alpha { self.vars.one() } else { self.vars.zero() }).collect()
        }
    }

    pub fn jacobian(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.spec.dim()).map(|a| self.gradient(a)).collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.t.iter().map(|p| self.vars.render(p)).collect()
    }
}

/// Covariant metric `η_{ij}(z)`; fails unless `det η(z)` is a nonzero constant.
pub fn covariant_eta(eta: &ChartTensor) -> Result<PolyMatrix> {
    let n = eta.dim();
    let det = eta.matrix.det();
    if !det.is_constant() || det.is_zero() {
        return Err(Error::exact("flat_coordinates", format!("det η(z) = {} is not a nonzero constant", eta.vars.render(&det))));
    }
    let nv = eta.vars.len();
    let mut inv = PolyMatrix::zeros(n, n, nv);
    for j in 0..n {
        let b: Vec<LaurentPoly> = (0..n).map(|i| if i == j { eta.vars.one() } else { eta.vars.zero() }).collect();
        let col = solve_linear(&eta.matrix, &b)?.into_polys()?;
        for (i, p) in col.into_iter().enumerate() {
            inv.set(i, j, p);
        }
    }
    Ok(inv)
}

/// Christoffel symbols `γ^m_{ij}` of the covariant metric, stored as `[m][i][j]`.
pub fn lower_christoffel(eta: &ChartTensor, cov: &PolyMatrix) -> Vec<Vec<Vec<LaurentPoly>>> {
    let n = eta.dim();
    let v = &eta.vars;
    let d: Vec<Vec<Vec<LaurentPoly>>> =
        (0..n).map(|a| (0..n).map(|i| (0..n).map(|j| v.deriv(cov.get(i, j), a)).collect()).collect()).collect();
    let half = Q::new(1.into(), 2.into());
    let first: Vec<Vec<Vec<LaurentPoly>>> = (0..n)
        .map(|s| (0..n).map(|i| (0..n).map(|j| (&(&d[i][s][j] + &d[j][s][i]) - &d[s][i][j]).scale(&half)).collect()).collect())
        .collect();
    (0..n)
        .map(|m| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut acc = v.zero();
                            for s in 0..n {
                                if !eta.get(m, s).is_zero() && !first[s][i][j].is_zero() {
                                    acc += &(eta.get(m, s) * &first[s][i][j]);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn hessian_operator(v: &VarTable, gamma: &[Vec<Vec<LaurentPoly>>], p: &LaurentPoly, pairs: &[(usize, usize)]) -> Vec<LaurentPoly> {
    let n = gamma.len();
    let grad: Vec<LaurentPoly> = (0..n).map(|a| v.deriv(p, a)).collect();
    pairs
        .iter()
        .map(|&(i, j)| {
            let mut r = v.deriv(&grad[i], j);
            for (m, g) in grad.iter().enumerate() {
                if !g.is_zero() && !gamma[m][i][j].is_zero() {
                    r -= &(&gamma[m][i][j] * g);
                }
            }
            r
        })
        .collect()
}

/// Solves `∂_i∂_j t − γ^m_{ij} ∂_m t = 0` for the flat coordinates of `η(z)`.
pub fn flat_coordinates(spec: &GroupSpec, eta_z: &ChartTensor) -> Result<FlatCoords> {
    if eta_z.chart != Chart::Z {
        return Err(Error::exact("flat_coordinates", "η must be given in the z-chart"));
    }
    let (l, n) = (spec.l, spec.dim());
    let vars = z_vars(spec);
    let dd = degrees(spec);
    let cov = covariant_eta(eta_z)?;
    let gamma = lower_christoffel(eta_z, &cov);
    for m in [l, l + 1] {
        if gamma[m].iter().flatten().any(|p| !p.is_zero()) {
            return Err(Error::exact("flat_coordinates", format!("z^{} is not a flat coordinate", m + 1)));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let w = vars.weights().unwrap().to_vec();
    let solved: Vec<Result<LaurentPoly>> = (0..l)
        .into_par_iter()
        .map(|alpha| {
            let mut rules = vec![ExpRule::Nonneg; w.len()];
            rules[alpha] = ExpRule::Excluded;
            let basis: Vec<Vec<i32>> = weighted_basis(&w, &dd.d[alpha], &rules)?
                .into_iter()
                .filter(|e| !(e.iter().sum::<i32>() == 1 && e[..l].contains(&1)))
                .collect();
            let cols: Vec<Vec<LaurentPoly>> = basis
                .iter()
                .map(|e| hessian_operator(&vars, &gamma, &LaurentPoly::term(vars.len(), e, Q::from_integer(1.into())), &pairs))
                .collect();
            let rhs: Vec<LaurentPoly> = hessian_operator(&vars, &gamma, &vars.var(alpha), &pairs).iter().map(|p| -p).collect();
            let stage = format!("flat_coordinates t^{}", alpha + 1);
            let sol = solve_columns(&stage, &cols, &rhs)?;
            if !sol.free.is_empty() {
                return Err(Error::Underdetermined {
                    stage,
                    kernel: sol.free.iter().map(|&c| vars.render(&LaurentPoly::term(vars.len(), &basis[c], Q::from_integer(1.into())))).collect(),
                });
            }
            let mut h = vars.zero();
            for (e, c) in basis.iter().zip(&sol.values) {
                h.add_term(e, c.clone());
            }
            Ok(h)
        })
        .collect();
    let h = solved.into_iter().collect::<Result<Vec<_>>>()?;
    let t: Vec<LaurentPoly> = h.iter().enumerate().map(|(a, p)| &vars.var(a) + p).collect();
    let mut flat = FlatCoords { spec: *spec, vars, h, t, eta_t: vec![] };
    flat.eta_t = transformed_eta(&flat, eta_z)?;
    check_eta_t(spec, &flat.eta_t)?;
    Ok(flat)
}

/// `Σ ∂t^α/∂z^a ∂t^β/∂z^b η^{ab}(z)`, required to be constant.
fn transformed_eta(flat: &FlatCoords, eta_z: &ChartTensor) -> Result<Vec<Vec<Q>>> {
    let n = flat.spec.dim();
    let jac = flat.jacobian();
    let mut out = vec![vec![Q::zero(); n]; n];
    for a in 0..n {
        for b in a..n {
            let mut s = flat.vars.zero();
            for i in 0..n {
                if jac[a][i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if jac[b][j].is_zero() || eta_z.get(i, j).is_zero() {
                        continue;
                    }
                    s += &(&(&jac[a][i] * &jac[b][j]) * eta_z.get(i, j));
                }
            }
            if !s.is_constant() {
                return Err(Error::exact("flat_coordinates", format!("η^({},{})(t) = {} is not constant", a + 1, b + 1, flat.vars.render(&s))));
            }
            out[a][b] = s.constant_term();
            out[b][a] = out[a][b].clone();
        }
    }
    Ok(out)
}

/// `i ↦ i*` in the flat chart, where `k* = l+2` and `(k+1)* = l+1` (0-based).
pub fn flat_dual(spec: &GroupSpec, dd: &DegreeData, i: usize) -> usize {
    let (l, k) = (spec.l, spec.k - 1);
    match i {
        _ if i == k => l + 1,
        _ if i == k + 1 => l,
        _ if i == l => k + 1,
        _ if i == l + 1 => k,
        _ => dd.dual[i],
    }
}

fn check_eta_t(spec: &GroupSpec, eta: &[Vec<Q>]) -> Result<()> {
    let dd = degrees(spec);
    let (l, k) = (spec.l, spec.k);
    for i in 0..spec.dim() {
        for j in 0..spec.dim() {
            let dual = flat_dual(spec, &dd, i) == j;
            if dual == eta[i][j].is_zero() {
                return Err(Error::exact("flat_coordinates", format!("η^({},{})(t) violates the antidiagonal pattern", i + 1, j + 1)));
            }
        }
    }
    let one = Q::from_integer(1.into());
    if eta[k][l] != one || eta[k - 1][l + 1] != one {
        return Err(Error::exact("flat_coordinates", "η^{k+1,l+1}(t) and η^{k,l+2}(t) must equal 1"));
    }
    Ok(())
}
