use num_traits::Zero;
use rayon::prelude::*;

use super::flat::FlatCoords;
use crate::algebra::{qi, LaurentPoly, PolyMatrix, VarTable, Q};
use crate::error::{Error, Result};
use crate::orbit::{degrees, t_vars, Chart, ChartTensor, GroupSpec};

pub type TChartTensor = ChartTensor;

/// Images of the z-chart variables `z1..zl, E1, E2` as t-chart polynomials.
pub fn invert_flat(flat: &FlatCoords) -> Result<Vec<LaurentPoly>> {
    let spec = &flat.spec;
    let l = spec.l;
    let tv = t_vars(spec);
    let w = flat.vars.weights().unwrap();
    let min_w = w.iter().filter(|x| !x.is_zero()).min().cloned().unwrap_or_else(|| qi(1));
    let cap = (qi(4 * (l as i64 + 2)) / min_w).ceil().to_integer().try_into().unwrap_or(usize::MAX);
    let mut images: Vec<LaurentPoly> = (0..l).map(|a| tv.var(a)).collect();
    images.push(tv.var(l + 2));
    images.push(tv.var(l + 3));
    for _ in 0..cap.max(1) {
        let next: Vec<LaurentPoly> = (0..l)
            .map(|a| flat.h[a].compose(&images).map(|h| &tv.var(a) - &h))
            .collect::<std::result::Result<_, _>>()?;
        if next[..] == images[..l] {
            return Ok(images);
        }
        images[..l].clone_from_slice(&next);
    }
    Err(Error::SubstitutionNonTerminating(cap))
}

/// Rewrites a z-chart polynomial in the t-chart.
pub fn z_poly_to_t(images: &[LaurentPoly], p: &LaurentPoly) -> Result<LaurentPoly> {
    Ok(p.compose(images)?)
}

/// Contravariant transform of a z-chart 2-tensor into the flat coordinates.
pub fn tensor_to_t(flat: &FlatCoords, images: &[LaurentPoly], x: &ChartTensor) -> Result<TChartTensor> {
    if x.chart != Chart::Z {
        return Err(Error::exact("metric_g_t", "input must be a z-chart tensor"));
    }
    let n = flat.spec.dim();
    let jac = flat.jacobian();
    let tv = t_vars(&flat.spec);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let entries: Vec<Result<LaurentPoly>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut s = flat.vars.zero();
            for i in 0..n {
                if jac[a][i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if jac[b][j].is_zero() || x.get(i, j).is_zero() {
                        continue;
                    }
                    s += &(&(&jac[a][i] * &jac[b][j]) * x.get(i, j));
                }
            }
            z_poly_to_t(images, &s)
        })
        .collect();
    let mut m = PolyMatrix::zeros(n, n, tv.len());
    for (&(a, b), e) in pairs.iter().zip(entries) {
        let e = e?;
        m.set(b, a, e.clone());
        m.set(a, b, e);
    }
    Ok(ChartTensor { chart: Chart::T, vars: tv, matrix: m })
}

/// Intersection form `g^{αβ}(t)`, checked against the structural identities of the flat chart.
pub fn metric_g_t(flat: &FlatCoords, g_z: &ChartTensor) -> Result<TChartTensor> {
    let images = invert_flat(flat)?;
    let g = tensor_to_t(flat, &images, g_z)?;
    check_g_t(&flat.spec, &g)?;
    Ok(g)
}

pub fn eta_t_tensor(flat: &FlatCoords) -> TChartTensor {
    let tv = t_vars(&flat.spec);
    let n = flat.spec.dim();
    let m = PolyMatrix::from_fn(n, n, tv.len(), |i, j| tv.constant(flat.eta_t[i][j].clone()));
    ChartTensor { chart: Chart::T, vars: tv, matrix: m }
}

fn check_g_t(spec: &GroupSpec, g: &TChartTensor) -> Result<()> {
    let (l, k, m) = (spec.l, spec.k, spec.m() as i64);
    let dd = degrees(spec);
    let tv: &VarTable = &g.vars;
    let w = tv.weights().unwrap().to_vec();
    let fail = |what: String| Err(Error::exact("metric_g_t", what));
    for a in 0..l {
        if *g.get(a, l + 1) != tv.var(a).scale(&dd.d[a]) {
            return fail(format!("g^({},{})(t) ≠ d_α t^α", a + 1, l + 2));
        }
    }
    let consts = [(l, l, Q::new((m + 1).into(), m.into())), (l, l + 1, Q::new(1.into(), m.into())), (l + 1, l + 1, Q::new((l as i64).into(), (k as i64 * m).into()))];
    for (i, j, c) in consts {
        if *g.get(i, j) != tv.constant(c) {
            return fail(format!("g^({},{})(t) has the wrong constant value", i + 1, j + 1));
        }
    }
    let g0 = &(g.get(k, l) - &tv.var(k - 1)) - &tv.var(k);
    if !g0.is_homogeneous_of(&w, &qi(1)) || !tv.deriv(&g0, k - 1).is_zero() {
        return fail(format!("g^({},{})(t) − t^k − t^(k+1) = {} is not a degree-1 form free of t^k", k + 1, l + 1, tv.render(&g0)));
    }
    for i in 0..spec.dim() {
        for j in 0..spec.dim() {
            if !g.get(i, j).is_homogeneous_of(&w, &(&dd.d[i] + &dd.d[j])) {
                return fail(format!("g^({},{})(t) is not homogeneous of degree d_i + d_j", i + 1, j + 1));
            }
        }
    }
    Ok(())
}
