use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::chart::{y_vars, Chart, ChartTensor, ChartTensor3, YChartTensor};
use super::roots::{degrees, GroupSpec};
use super::torus::TorusModel;
use crate::algebra::{qi, weighted_basis, ExpRule, LaurentPoly, LinearSystem, Mono, PolyMatrix, Q};
use crate::error::{Error, Result};

/// Contravariant intersection form `g^{ij}(y)`.
pub fn metric_g_y(spec: &GroupSpec) -> Result<YChartTensor> {
    let model = TorusModel::new(spec);
    metric_from_model(&model)
}

pub fn metric_from_model(model: &TorusModel) -> Result<YChartTensor> {
    let spec = &model.spec;
    let vars = y_vars(spec);
    let n = spec.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let entries: Vec<Result<LaurentPoly>> = pairs.par_iter().map(|&(i, j)| model.to_y(&model.metric_entry(i, j))).collect();
    let mut m = PolyMatrix::zeros(n, n, vars.len());
    for (&(i, j), e) in pairs.iter().zip(entries) {
        let e = e?;
        m.set(j, i, e.clone());
        m.set(i, j, e);
    }
    let g = ChartTensor { chart: Chart::Y, vars, matrix: m };
    check_closed_rows(spec, &g)?;
    check_homogeneous(spec, &g, "metric_g_y")?;
    Ok(g)
}

fn check_closed_rows(spec: &GroupSpec, g: &YChartTensor) -> Result<()> {
    let (l, k) = (spec.l, spec.k);
    let dd = degrees(spec);
    let tau = spec.tau();
    for j in 0..l {
        let y = g.vars.var(j).scale(&dd.d[j]);
        let z = g.vars.zero();
        let (a, b) = if j < k { (&y, &z) } else { (&z, &y) };
        if g.get(j, l) != a || g.get(j, l + 1) != b {
            return Err(Error::exact("metric_g_y", format!("closed row for index {} failed", j + 1)));
        }
    }
    for r in 0..2 {
        for t in 0..2 {
            if *g.get(l + r, l + t) != g.vars.constant(tau[r][t].clone()) {
                return Err(Error::exact("metric_g_y", "constant block differs from τ"));
            }
        }
    }
    Ok(())
}

fn check_homogeneous(spec: &GroupSpec, g: &ChartTensor, stage: &str) -> Result<()> {
    let dd = degrees(spec);
    let w = g.vars.weights().expect("weighted chart").to_vec();
    let n = spec.dim();
    for i in 0..n {
        for j in 0..n {
            if !g.get(i, j).is_homogeneous_of(&w, &(&dd.d[i] + &dd.d[j])) {
                return Err(Error::exact(stage, format!("entry ({},{}) not homogeneous of degree d_i + d_j", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// `η^{ij} = ∂_{y^k} g^{ij} + ∂_{y^{k+1}} g^{ij}`.
pub fn eta_y(spec: &GroupSpec, g: &YChartTensor) -> YChartTensor {
    let k = spec.k;
    let matrix = g.matrix.map(|p| &g.vars.deriv(p, k - 1) + &g.vars.deriv(p, k));
    ChartTensor { chart: g.chart, vars: g.vars.clone(), matrix }
}

/// Contravariant Christoffel symbols `Γ_m^{ij}(y)`, stored as `T[m][i][j]`.
pub fn christoffel_y(spec: &GroupSpec, g: &YChartTensor) -> Result<ChartTensor3> {
    let model = TorusModel::new(spec);
    christoffel_from_model(&model, g)
}

pub fn christoffel_from_model(model: &TorusModel, g: &YChartTensor) -> Result<ChartTensor3> {
    let spec = &model.spec;
    let n = spec.dim();
    let l = spec.l;
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (0..l).flat_map(move |j| (i..n).map(move |r| (i, j, r)))).collect();
    let kvals: Vec<Result<LaurentPoly>> = triples.par_iter().map(|&(i, j, r)| model.to_y(&model.hessian_gram(i, j, r))).collect();
    let mut kt: BTreeMap<(usize, usize, usize), LaurentPoly> = BTreeMap::new();
    for (&(i, j, r), v) in triples.iter().zip(kvals) {
        let v = v?;
        kt.insert((r, j, i), v.clone());
        kt.insert((i, j, r), v);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..l).map(move |j| (i, j))).collect();
    let solved: Vec<Result<Vec<LaurentPoly>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let rhs: Vec<LaurentPoly> = (0..n).map(|r| kt[&(i, j, r)].clone()).collect();
            solve_gamma_column(spec, g, i, j, &rhs)
        })
        .collect();
    let nv = g.vars.len();
    let mut data = vec![LaurentPoly::zero(nv); n * n * n];
    for (&(i, j), col) in pairs.iter().zip(solved) {
        for (m, p) in col?.into_iter().enumerate() {
            data[(m * n + i) * n + j] = p;
        }
    }
    Ok(ChartTensor3 { chart: Chart::Y, vars: g.vars.clone(), n, data })
}

/// Solves `Σ_m Γ_m g^{mr} = K^r` for the polynomial vector `Γ_m = Γ_m^{ij}`.
fn solve_gamma_column(spec: &GroupSpec, g: &YChartTensor, i: usize, j: usize, rhs: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    let n = spec.dim();
    let dd = degrees(spec);
    let w = g.vars.weights().unwrap().to_vec();
    let rules = vec![ExpRule::Nonneg; w.len()];
    let mut cols: Vec<(usize, Vec<i32>)> = Vec::new();
    for m in 0..n {
        let target = &dd.d[i] + &dd.d[j] - &dd.d[m];
        if target < Q::zero() {
            continue;
        }
        for e in weighted_basis(&w, &target, &rules)? {
            cols.push((m, e));
        }
    }
    let mut rows: BTreeMap<(usize, Mono), BTreeMap<usize, Q>> = BTreeMap::new();
    let mut rhs_map: BTreeMap<(usize, Mono), Q> = BTreeMap::new();
    for (c, (m, e)) in cols.iter().enumerate() {
        for r in 0..n {
            let gp = g.get(*m, r);
            for (ge, gc) in gp.terms() {
                let mono: Vec<i32> = ge.iter().zip(e).map(|(a, b)| a + b).collect();
                *rows.entry((r, Mono::new(&mono))).or_default().entry(c).or_insert_with(Q::zero) += gc;
            }
        }
    }
    for (r, k) in rhs.iter().enumerate() {
        for (e, c) in k.terms() {
            rhs_map.insert((r, Mono::new(e)), c.clone());
            rows.entry((r, Mono::new(e))).or_default();
        }
    }
    let mut sys = LinearSystem::new(cols.len());
    for (key, row) in rows {
        let b = rhs_map.remove(&key).unwrap_or_else(Q::zero);
        sys.add_row(row, b);
    }
    let sol = sys.solve().map_err(|_| Error::exact("christoffel_y", format!("no polynomial solution for Γ^({},{})", i + 1, j + 1)))?;
    if !sol.free.is_empty() {
        return Err(Error::Underdetermined {
            stage: format!("christoffel_y Γ^({},{})", i + 1, j + 1),
            kernel: sol.free.iter().map(|c| format!("{:?}", cols[*c])).collect(),
        });
    }
    let nv = g.vars.len();
    let mut out = vec![LaurentPoly::zero(nv); n];
    for (c, (m, e)) in cols.iter().enumerate() {
        out[*m].add_term(e, sol.values[c].clone());
    }
    Ok(out)
}

/// Residuals of `∂_m g^{ij} = Γ_m^{ij} + Γ_m^{ji}`; empty when the identity holds.
pub fn check_sum_rule(g: &YChartTensor, gamma: &ChartTensor3) -> Vec<(usize, usize, usize)> {
    let n = gamma.n;
    let mut bad = Vec::new();
    for m in 0..n {
        for i in 0..n {
            for j in i..n {
                let lhs = g.vars.deriv(g.get(i, j), m);
                let rhs = gamma.get(m, i, j) + gamma.get(m, j, i);
                if lhs != rhs {
                    bad.push((m, i, j));
                }
            }
        }
    }
    bad
}

/// Residuals of `2 g^{sm} Γ_m^{ij} = g^{im} ∂_m g^{js} + g^{sm} ∂_m g^{ji} − g^{jm} ∂_m g^{is}`.
pub fn check_connection_identity(g: &YChartTensor, gamma: &ChartTensor3) -> Vec<(usize, usize, usize)> {
    let n = gamma.n;
    let v = &g.vars;
    let dg: Vec<Vec<Vec<LaurentPoly>>> =
        (0..n).map(|m| (0..n).map(|i| (0..n).map(|j| v.deriv(g.get(i, j), m)).collect()).collect()).collect();
    let mut bad = Vec::new();
    for s in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut lhs = v.zero();
                let mut rhs = v.zero();
                for m in 0..n {
                    lhs += &(g.get(s, m) * gamma.get(m, i, j));
                    rhs += &(g.get(i, m) * &dg[m][j][s]);
                    rhs += &(g.get(s, m) * &dg[m][j][i]);
                    rhs -= &(g.get(j, m) * &dg[m][i][s]);
                }
                if lhs.scale(&qi(2)) != rhs {
                    bad.push((s, i, j));
                }
            }
        }
    }
    bad
}

/// Entries of `Γ` that fail to be homogeneous of degree `d_i + d_j − d_m`.
pub fn check_gamma_homogeneity(spec: &GroupSpec, gamma: &ChartTensor3) -> Vec<(usize, usize, usize)> {
    let dd = degrees(spec);
    let w = gamma.vars.weights().unwrap().to_vec();
    let n = gamma.n;
    let mut bad = Vec::new();
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let p = gamma.get(m, i, j);
                let d = &dd.d[i] + &dd.d[j] - &dd.d[m];
                if !p.is_homogeneous_of(&w, &d) || p.has_negative_exponents() {
                    bad.push((m, i, j));
                }
            }
        }
    }
    bad
}

/// `L_e L_e p` for `e = ∂_{k} + ∂_{k+1}` in a chart whose coordinates `k-1, k` carry `e`.
pub fn double_unity_derivative(spec: &GroupSpec, vars: &crate::algebra::VarTable, p: &LaurentPoly) -> LaurentPoly {
    let k = spec.k;
    let d = |x: &LaurentPoly| &vars.deriv(x, k - 1) + &vars.deriv(x, k);
    d(&d(p))
}

/// True if every entry is zero.
pub fn all_zero<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> bool {
    it.into_iter().all(|p| p.is_zero())
}

pub fn is_constant_nonzero(p: &LaurentPoly) -> bool {
    p.is_constant() && !p.constant_term().is_zero()
}
