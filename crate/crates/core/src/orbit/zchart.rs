use num_traits::Zero;

use super::chart::{z_vars, Chart, ChartTensor};
use super::roots::GroupSpec;
use crate::algebra::{qi, LaurentPoly, PolyMatrix, Q};

/// Constant Jacobian `∂z^a/∂y^i` of the linear change of coordinates.
pub fn jacobian_zy(spec: &GroupSpec) -> Vec<Vec<Q>> {
    let (l, k) = (spec.l, spec.k);
    let n = l + 2;
    let mut j = vec![vec![Q::zero(); n]; n];
    for (a, row) in j.iter_mut().enumerate().take(l) {
        row[a] = qi(1);
    }
    j[k][k - 1] = qi(-1);
    j[l] = vec![Q::zero(); n];
    j[l][l + 1] = qi(1);
    j[l + 1][l] = qi(1);
    j[l + 1][l + 1] = qi(1);
    j
}

/// Rewrites a y-chart polynomial in z-chart variables.
pub fn y_poly_to_z(spec: &GroupSpec, p: &LaurentPoly) -> LaurentPoly {
    let (l, k) = (spec.l, spec.k);
    let zv = z_vars(spec);
    let mut images: Vec<LaurentPoly> = (0..l).map(|i| zv.var(i)).collect();
    images[k] = &zv.var(k) + &zv.var(k - 1);
    images.push(zv.var(l + 1));
    images.push(zv.var(l));
    p.compose(&images).expect("polynomial images")
}

/// Contravariant transformation of a y-chart 2-tensor to the z-chart.
pub fn to_z_chart(spec: &GroupSpec, t: &ChartTensor) -> ChartTensor {
    assert_eq!(t.chart, Chart::Y);
    let n = spec.dim();
    let jac = jacobian_zy(spec);
    let zv = z_vars(spec);
    let conv: Vec<LaurentPoly> = t.matrix.entries().iter().map(|p| y_poly_to_z(spec, p)).collect();
    let m = PolyMatrix::from_fn(n, n, zv.len(), |a, b| {
        let mut s = zv.zero();
        for i in 0..n {
            if jac[a][i].is_zero() {
                continue;
            }
            for j in 0..n {
                if jac[b][j].is_zero() {
                    continue;
                }
                s += &conv[i * n + j].scale(&(&jac[a][i] * &jac[b][j]));
            }
        }
        s
    });
    ChartTensor { chart: Chart::Z, vars: zv, matrix: m }
}

/// Push-forward of a constant-coefficient vector `v^i ∂/∂y^i` to the z-chart.
pub fn push_vector(spec: &GroupSpec, v: &[Q]) -> Vec<Q> {
    let jac = jacobian_zy(spec);
    jac.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |s, (a, b)| s + a * b)).collect()
}
