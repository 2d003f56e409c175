use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{LaurentPoly, VarTable, Q};
use crate::frobenius::Potential;

/// Third derivatives `c_{αβγ}` of a potential together with the flat metric.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub n: usize,
    pub vars: VarTable,
    pub lower: Vec<LaurentPoly>,
    pub eta: Vec<Vec<Q>>,
    pub eta_inv: Vec<Vec<Q>>,
    pub log_var: usize,
    pub unity: usize,
}

impl StructureConstants {
    pub fn c(&self, a: usize, b: usize, g: usize) -> &LaurentPoly {
        &self.lower[(a * self.n + b) * self.n + g]
    }

    /// `c^α_{βγ} = η^{αε} c_{εβγ}`.
    pub fn raised(&self, a: usize, b: usize, g: usize) -> LaurentPoly {
        let mut s = self.vars.zero();
        for e in 0..self.n {
            if !self.eta[a][e].is_zero() {
                s += &self.c(e, b, g).scale(&self.eta[a][e]);
            }
        }
        s
    }
}

pub fn structure_constants(f: &Potential) -> StructureConstants {
    let n = f.spec.dim();
    let idx: Vec<(usize, usize, usize)> = (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |g| (a, b, g)))).collect();
    let mut lower: Vec<LaurentPoly> = vec![f.vars.zero(); n * n * n];
    let sorted: Vec<((usize, usize, usize), LaurentPoly)> = idx
        .par_iter()
        .filter(|&&(a, b, g)| a <= b && b <= g)
        .map(|&(a, b, g)| ((a, b, g), f.third(a, b, g)))
        .collect();
    for ((a, b, g), p) in sorted {
        for (x, y, z) in [(a, b, g), (a, g, b), (b, a, g), (b, g, a), (g, a, b), (g, b, a)] {
            lower[(x * n + y) * n + z] = p.clone();
        }
    }
    StructureConstants { n, vars: f.vars.clone(), lower, eta: f.eta.clone(), eta_inv: f.eta_inv.clone(), log_var: f.log_var, unity: f.spec.k - 1 }
}
