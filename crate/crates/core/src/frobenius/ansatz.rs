use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{LaurentPoly, LinearSystem, Mono, Q, SparseSolution};
use crate::error::{Error, Result};

/// Linear system `Σ_c x_c · cols[c][e] = rhs[e]` over polynomial-valued equations `e`,
/// matched coefficient by coefficient.
pub(crate) fn solve_columns(stage: &str, cols: &[Vec<LaurentPoly>], rhs: &[LaurentPoly]) -> Result<SparseSolution> {
    let mut rows: BTreeMap<(usize, Mono), BTreeMap<usize, Q>> = BTreeMap::new();
    for (c, col) in cols.iter().enumerate() {
        for (e, p) in col.iter().enumerate() {
            for (m, v) in p.terms() {
                *rows.entry((e, Mono::new(m))).or_default().entry(c).or_insert_with(Q::zero) += v;
            }
        }
    }
    let mut rhs_map: BTreeMap<(usize, Mono), Q> = BTreeMap::new();
    for (e, p) in rhs.iter().enumerate() {
        for (m, v) in p.terms() {
            rhs_map.insert((e, Mono::new(m)), v.clone());
            rows.entry((e, Mono::new(m))).or_default();
        }
    }
    let mut sys = LinearSystem::new(cols.len());
    for (key, row) in rows {
        let b = rhs_map.remove(&key).unwrap_or_else(Q::zero);
        sys.add_row(row.into_iter().filter(|(_, v)| !v.is_zero()).collect(), b);
    }
    sys.solve().map_err(|_| Error::Inconsistent { stage: stage.to_string() })
}
