use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::roots::{build_root_data, GroupSpec, RootData};
use crate::algebra::{elementary, q_to_i64, qi, sym_reduce, LaurentPoly, Q};
use crate::error::{Error, Result};

/// One Fourier mode of a coordinate function: `coeff · exp(2πi⟨freq, x⟩)`,
/// with the exponential recorded as a torus monomial.
#[derive(Clone, Debug)]
pub struct GradTerm {
    pub mono: Vec<i32>,
    pub freq: Vec<Q>,
    pub coeff: Q,
}

/// Fourier data of the coordinates `y^1..y^{l+2}` as functions of `x`.
pub struct TorusModel {
    pub spec: GroupSpec,
    pub roots: RootData,
    pub coords: Vec<Vec<GradTerm>>,
    offsets: Vec<usize>,
    btab: Vec<Vec<Q>>,
}

impl TorusModel {
    pub fn new(spec: &GroupSpec) -> Self {
        let roots = build_root_data(spec);
        let l = spec.l;
        let n = l + 1;
        let mut coords = Vec::with_capacity(l + 2);
        for j in 1..=l {
            let (p1, p2) = prefactor(spec, &roots, j);
            let e = elementary(n, j);
            let terms = e
                .terms()
                .map(|(ex, c)| {
                    let mut mono = ex.to_vec();
                    mono.push(p1);
                    mono.push(p2);
                    GradTerm { freq: frequency(l, &mono), mono, coeff: c.clone() }
                })
                .collect();
            coords.push(terms);
        }
        for r in 0..2 {
            let mut freq = vec![Q::zero(); l + 2];
            freq[l + r] = Q::one();
            coords.push(vec![GradTerm { mono: vec![0; n + 2], freq, coeff: Q::one() }]);
        }
        let mut offsets = vec![0];
        for c in &coords {
            offsets.push(offsets.last().unwrap() + c.len());
        }
        let all: Vec<&GradTerm> = coords.iter().flatten().collect();
        let tau = spec.tau();
        let btab = all
            .iter()
            .map(|a| all.iter().map(|b| bilinear(&roots, &tau, &a.freq, &b.freq)).collect())
            .collect();
        TorusModel { spec: *spec, roots, coords, offsets, btab }
    }

    pub fn nvars(&self) -> usize {
        self.spec.l + 3
    }

    /// `ỹ_j` as a torus polynomial, `1 ≤ j ≤ l`.
    pub fn invariant(&self, j: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.nvars());
        for t in &self.coords[j - 1] {
            p.add_term(&t.mono, t.coeff.clone());
        }
        p
    }

    fn b(&self, ci: usize, a: usize, cj: usize, b: usize) -> &Q {
        &self.btab[self.offsets[ci] + a][self.offsets[cj] + b]
    }

    /// `g^{ij}` on the torus (0-based indices).
    pub fn metric_entry(&self, i: usize, j: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.nvars());
        for (a, ta) in self.coords[i].iter().enumerate() {
            for (b, tb) in self.coords[j].iter().enumerate() {
                let w = self.b(i, a, j, b);
                if w.is_zero() {
                    continue;
                }
                let mono: Vec<i32> = ta.mono.iter().zip(&tb.mono).map(|(x, y)| x + y).collect();
                p.add_term(&mono, &ta.coeff * &tb.coeff * w);
            }
        }
        p
    }

    /// `Hess(y^j)(∇y^i, ∇y^n)` on the torus, which equals `Γ_m^{ij} g^{mn}`.
    pub fn hessian_gram(&self, i: usize, j: usize, n: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.nvars());
        if j >= self.spec.l {
            return p;
        }
        for (b, tb) in self.coords[j].iter().enumerate() {
            for (a, ta) in self.coords[i].iter().enumerate() {
                let wab = self.b(i, a, j, b);
                if wab.is_zero() {
                    continue;
                }
                for (c, tc) in self.coords[n].iter().enumerate() {
                    let wbc = self.b(j, b, n, c);
                    if wbc.is_zero() {
                        continue;
                    }
                    let mono: Vec<i32> = ta.mono.iter().zip(&tb.mono).zip(&tc.mono).map(|((x, y), z)| x + y + z).collect();
                    p.add_term(&mono, &ta.coeff * &tb.coeff * &tc.coeff * wab * wbc);
                }
            }
        }
        p
    }

    /// Rewrites a `W̃`-invariant torus polynomial in the y-chart variables `y1..yl, E1, E2`.
    pub fn to_y(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let l = self.spec.l;
        let n = l + 1;
        let pref: Vec<(i32, i32)> = (1..=l).map(|j| prefactor(&self.spec, &self.roots, j)).collect();
        let mut groups: BTreeMap<(i32, i32), LaurentPoly> = BTreeMap::new();
        for (e, c) in p.terms() {
            groups.entry((e[n], e[n + 1])).or_insert_with(|| LaurentPoly::zero(n)).add_term(&e[..n], c.clone());
        }
        let mut out = LaurentPoly::zero(l + 2);
        let den = n as i32;
        for ((p1, p2), qpart) in groups {
            let red = sym_reduce(&qpart, l)?;
            for (s, c) in red.terms() {
                let mut a = p1;
                let mut b = p2;
                for (ns, (f1, f2)) in s.iter().zip(&pref) {
                    a -= ns * f1;
                    b -= ns * f2;
                }
                if a % den != 0 || b % den != 0 {
                    return Err(Error::exact("torus-to-y", format!("fractional marker exponent ({a}, {b})/{den}")));
                }
                if a < 0 || b < 0 {
                    return Err(Error::exact("torus-to-y", format!("negative marker exponent ({a}, {b})/{den}")));
                }
                let mut ex = s.to_vec();
                ex.push(a / den);
                ex.push(b / den);
                out.add_term(&ex, c.clone());
            }
        }
        Ok(out)
    }
}

/// Exponents of `P1, P2` in `ỹ_j`: `(l+1) d_{j,k}` and `(l+1) d_{j,k+1}`.
pub fn prefactor(spec: &GroupSpec, roots: &RootData, j: usize) -> (i32, i32) {
    let n = qi(spec.l as i64 + 1);
    let a = q_to_i64(&(roots.d(j, spec.k) * &n)).expect("integral prefactor");
    let b = q_to_i64(&(roots.d(j, spec.k + 1) * &n)).expect("integral prefactor");
    (a as i32, b as i32)
}

/// Frequency of a torus monomial in the `x`-coordinates.
pub fn frequency(l: usize, mono: &[i32]) -> Vec<Q> {
    let n = l + 1;
    let mut f: Vec<Q> = (0..l).map(|a| qi((mono[a] - mono[a + 1]) as i64)).collect();
    f.push(Q::new(mono[n].into(), (n as i64).into()));
    f.push(Q::new(mono[n + 1].into(), (n as i64).into()));
    f
}

/// `(2πi)² (dx, dx)` applied to two frequency vectors.
pub fn bilinear(roots: &RootData, tau: &[[Q; 2]; 2], f: &[Q], g: &[Q]) -> Q {
    let l = roots.l;
    let mut s = Q::zero();
    for a in 0..l {
        if f[a].is_zero() {
            continue;
        }
        for b in 0..l {
            if !g[b].is_zero() {
                s -= &f[a] * roots.d(a + 1, b + 1) * &g[b];
            }
        }
    }
    for r in 0..2 {
        for t in 0..2 {
            s += &f[l + r] * &tau[r][t] * &g[l + t];
        }
    }
    s
}
