use serde::Serialize;

use super::roots::{degrees, GroupSpec};
use crate::algebra::{qi, LaurentPoly, PolyMatrix, VarRole, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Torus,
    Y,
    Z,
    T,
}

/// Variables `q1..q_{l+1}, P1, P2` with `P1 = e^{2πi x_{l+1}/(l+1)}`, `P2 = e^{2πi x_{l+2}/(l+1)}`.
pub fn torus_vars(spec: &GroupSpec) -> VarTable {
    let mut names: Vec<String> = (1..=spec.l + 1).map(|i| format!("q{i}")).collect();
    names.push("P1".into());
    names.push("P2".into());
    let n = names.len();
    VarTable::new(names, vec![VarRole::Symbol; n], 0)
}

/// `y1..yl, E1 = e^{y^{l+1}}, E2 = e^{y^{l+2}}`.
pub fn y_vars(spec: &GroupSpec) -> VarTable {
    let l = spec.l;
    let mut names: Vec<String> = (1..=l).map(|i| format!("y{i}")).collect();
    let mut roles: Vec<VarRole> = (0..l).map(VarRole::Coordinate).collect();
    names.push("E1".into());
    roles.push(VarRole::Exponential(vec![(l, 1)]));
    names.push("E2".into());
    roles.push(VarRole::Exponential(vec![(l + 1, 1)]));
    let dd = degrees(spec);
    let [w1, w2] = spec.marker_weights();
    let mut w = dd.d[..l].to_vec();
    w.push(w1);
    w.push(w2);
    VarTable::new(names, roles, l + 2).with_weights(w)
}

/// `z1..zl, E1 = e^{z^{l+1}}, E2 = e^{z^{l+2} - z^{l+1}}`.
pub fn z_vars(spec: &GroupSpec) -> VarTable {
    let l = spec.l;
    let mut names: Vec<String> = (1..=l).map(|i| format!("z{i}")).collect();
    let mut roles: Vec<VarRole> = (0..l).map(VarRole::Coordinate).collect();
    names.push("E1".into());
    roles.push(VarRole::Exponential(vec![(l, 1)]));
    names.push("E2".into());
    roles.push(VarRole::Exponential(vec![(l + 1, 1), (l, -1)]));
    let dd = degrees(spec);
    let [w1, w2] = spec.marker_weights();
    let mut w = dd.d[..l].to_vec();
    w.push(w2);
    w.push(w1);
    VarTable::new(names, roles, l + 2).with_weights(w)
}

/// `t1..t_{l+2}, E1 = e^{t^{l+1}}, E2 = e^{t^{l+2} - t^{l+1}}`.
pub fn t_vars(spec: &GroupSpec) -> VarTable {
    let l = spec.l;
    let mut names: Vec<String> = (1..=l + 2).map(|i| format!("t{i}")).collect();
    let mut roles: Vec<VarRole> = (0..l + 2).map(VarRole::Coordinate).collect();
    names.push("E1".into());
    roles.push(VarRole::Exponential(vec![(l, 1)]));
    names.push("E2".into());
    roles.push(VarRole::Exponential(vec![(l + 1, 1), (l, -1)]));
    let dd = degrees(spec);
    let [w1, w2] = spec.marker_weights();
    let mut w = dd.d[..l].to_vec();
    w.push(qi(0));
    w.push(qi(0));
    w.push(w2);
    w.push(w1);
    VarTable::new(names, roles, l + 2).with_weights(w)
}

/// A matrix of polynomials tagged with its chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartTensor {
    pub chart: Chart,
    pub vars: VarTable,
    pub matrix: PolyMatrix,
}

impl ChartTensor {
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        self.matrix.get(i, j)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.matrix.rows())
            .map(|i| (0..self.matrix.cols()).map(|j| self.vars.render(self.get(i, j))).collect())
            .collect()
    }
}

/// A 3-index tensor `T[m][i][j]` tagged with its chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartTensor3 {
    pub chart: Chart,
    pub vars: VarTable,
    pub n: usize,
    pub data: Vec<LaurentPoly>,
}

impl ChartTensor3 {
    pub fn get(&self, m: usize, i: usize, j: usize) -> &LaurentPoly {
        &self.data[(m * self.n + i) * self.n + j]
    }
}

pub type YChartTensor = ChartTensor;
