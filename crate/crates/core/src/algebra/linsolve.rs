use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::LaurentPoly;
use super::rational::Q;
use crate::error::AlgebraError;

/// Dense matrix of polynomials over a shared variable set.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, data: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(nvars));
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> LaurentPoly>(rows: usize, cols: usize, nvars: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars);
                data.push(p);
            }
        }
        PolyMatrix { rows, cols, nvars, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn map<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, mut f: F) -> PolyMatrix {
        let data: Vec<LaurentPoly> = self.data.iter().map(&mut f).collect();
        let nvars = data.first().map(|p| p.nvars()).unwrap_or(self.nvars);
        PolyMatrix { rows: self.rows, cols: self.cols, nvars, data }
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        PolyMatrix::from_fn(self.rows, rhs.cols, self.nvars, |i, j| {
            let mut s = LaurentPoly::zero(self.nvars);
            for t in 0..self.cols {
                if !self.get(i, t).is_zero() && !rhs.get(t, j).is_zero() {
                    s += &(self.get(i, t) * rhs.get(t, j));
                }
            }
            s
        })
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = LaurentPoly::one(self.nvars);
        let mut sign = false;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return LaurentPoly::zero(self.nvars);
            };
            if p != c {
                m.swap_rows(p, c);
                sign = !sign;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let v = &(m.get(c, c) * m.get(i, j)) - &(m.get(i, c) * m.get(c, j));
                    m.set(i, j, v.div_exact(&prev).expect("Bareiss division is exact"));
                }
                m.set(i, c, LaurentPoly::zero(self.nvars));
            }
            prev = m.get(c, c).clone();
        }
        if sign {
            -prev
        } else {
            prev
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Solution `x = num / den` over the polynomial fraction field.
#[derive(Clone, Debug, PartialEq)]
pub struct FracSolution {
    pub num: Vec<LaurentPoly>,
    pub den: LaurentPoly,
    pub rank: usize,
}

impl FracSolution {
    /// Divides out the denominator, failing if any entry is not a polynomial.
    pub fn into_polys(self) -> Result<Vec<LaurentPoly>, AlgebraError> {
        self.num.iter().map(|p| p.div_exact(&self.den)).collect()
    }
}

/// Solves `A x = b` by Bareiss elimination; `A` may be overdetermined but must have full column rank.
pub fn solve_linear(a: &PolyMatrix, b: &[LaurentPoly]) -> Result<FracSolution, AlgebraError> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(AlgebraError::Dimension(format!("{} right-hand sides for {} rows", b.len(), m)));
    }
    if m < n {
        return Err(AlgebraError::Singular { col: m, rank: m });
    }
    let nv = a.nvars();
    let mut w = PolyMatrix::from_fn(m, n + 1, nv, |i, j| if j < n { a.get(i, j).clone() } else { b[i].clone() });
    let mut prev = LaurentPoly::one(nv);
    for c in 0..n {
        let Some(p) = (c..m).find(|&r| !w.get(r, c).is_zero()) else {
            return Err(AlgebraError::Singular { col: c, rank: c });
        };
        if p != c {
            w.swap_rows(p, c);
        }
        for i in c + 1..m {
            for j in c + 1..=n {
                let v = &(w.get(c, c) * w.get(i, j)) - &(w.get(i, c) * w.get(c, j));
                w.set(i, j, v.div_exact(&prev)?);
            }
            w.set(i, c, LaurentPoly::zero(nv));
        }
        prev = w.get(c, c).clone();
    }
    for i in n..m {
        if !w.get(i, n).is_zero() {
            return Err(AlgebraError::Inconsistent { row: i });
        }
    }
    let den = prev;
    let mut num = vec![LaurentPoly::zero(nv); n];
    for i in (0..n).rev() {
        let mut s = &den * w.get(i, n);
        for j in i + 1..n {
            if !w.get(i, j).is_zero() {
                s -= &(w.get(i, j) * &num[j]);
            }
        }
        num[i] = s.div_exact(w.get(i, i))?;
    }
    Ok(FracSolution { num, den, rank: n })
}

/// Incremental sparse linear system over the rationals.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    ncols: usize,
    pivots: BTreeMap<usize, (BTreeMap<usize, Q>, Q)>,
    seen: Vec<bool>,
    inconsistent: Option<usize>,
    nrows: usize,
}

/// Particular solution with free columns set to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSolution {
    pub values: Vec<Q>,
    pub free: Vec<usize>,
    pub rank: usize,
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem { ncols, seen: vec![false; ncols], ..Default::default() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows_added(&self) -> usize {
        self.nrows
    }

    pub fn add_row(&mut self, mut row: BTreeMap<usize, Q>, mut rhs: Q) {
        let idx = self.nrows;
        self.nrows += 1;
        row.retain(|_, v| !v.is_zero());
        for &c in row.keys() {
            self.seen[c] = true;
        }
        let mut start = 0usize;
        loop {
            let next = row.range(start..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(c) = next else { break };
            let f = row[&c].clone();
            let (prow, prhs) = &self.pivots[&c];
            for (j, v) in prow {
                let e = row.entry(*j).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            rhs -= &f * prhs;
            start = c + 1;
        }
        let Some((&p, pv)) = row.iter().next() else {
            if !rhs.is_zero() && self.inconsistent.is_none() {
                self.inconsistent = Some(idx);
            }
            return;
        };
        let inv = pv.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        rhs *= &inv;
        self.pivots.insert(p, (row, rhs));
    }

    pub fn solve(&self) -> Result<SparseSolution, AlgebraError> {
        if let Some(row) = self.inconsistent {
            return Err(AlgebraError::Inconsistent { row });
        }
        let mut values = vec![Q::zero(); self.ncols];
        for (c, (row, rhs)) in self.pivots.iter().rev() {
            let mut s = rhs.clone();
            for (j, v) in row.range(c + 1..) {
                if !values[*j].is_zero() {
                    s -= v * &values[*j];
                }
            }
            values[*c] = s;
        }
        let free = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        Ok(SparseSolution { values, free, rank: self.pivots.len() })
    }

    /// Columns that never occurred in any row.
    pub fn untouched(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.seen[c]).collect()
    }
}

/// Inverse of a small dense rational matrix, or `None` if singular.
pub fn rational_inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            v
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    fn y() -> LaurentPoly {
        LaurentPoly::var(1, 0)
    }

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(1, qi(v))
    }

    #[test]
    fn identity_returns_rhs() {
        let a = PolyMatrix::identity(3, 1);
        let b = vec![y(), c(2), &y() * &y()];
        let s = solve_linear(&a, &b).unwrap().into_polys().unwrap();
        assert_eq!(s, b);
    }

    #[test]
    fn upper_triangular_back_substitution() {
        let a = PolyMatrix::from_fn(2, 2, 1, |i, j| match (i, j) {
            (0, 0) | (1, 1) => y(),
            (0, 1) => c(1),
            _ => c(0),
        });
        let b = vec![&y().pow(2) + &c(1), y()];
        let s = solve_linear(&a, &b).unwrap().into_polys().unwrap();
        assert_eq!(s, vec![y(), c(1)]);
    }

    #[test]
    fn constant_block_inverse() {
        let a = PolyMatrix::from_fn(2, 2, 1, |i, j| if i == j { c(2) } else { c(-1) });
        let e0 = solve_linear(&a, &[c(1), c(0)]).unwrap();
        let e1 = solve_linear(&a, &[c(0), c(1)]).unwrap();
        let col = |s: &FracSolution, i: usize| &s.num[i].constant_term() / &s.den.constant_term();
        assert_eq!((col(&e0, 0), col(&e0, 1)), (q(2, 3), q(1, 3)));
        assert_eq!((col(&e1, 0), col(&e1, 1)), (q(1, 3), q(2, 3)));
    }

    #[test]
    fn overdetermined_consistency() {
        let a = PolyMatrix::from_fn(3, 1, 1, |i, _| c(i as i64 + 1));
        assert!(solve_linear(&a, &[y(), y().scale(&qi(2)), y().scale(&qi(3))]).is_ok());
        assert!(matches!(solve_linear(&a, &[y(), y(), y()]), Err(AlgebraError::Inconsistent { .. })));
    }

    #[test]
    fn singular_reports_column() {
        let a = PolyMatrix::from_fn(2, 2, 1, |_, _| y());
        assert!(matches!(solve_linear(&a, &[y(), y()]), Err(AlgebraError::Singular { col: 1, .. })));
    }

    #[test]
    fn sparse_system_with_kernel() {
        let mut s = LinearSystem::new(3);
        s.add_row([(0, qi(1)), (1, qi(1))].into_iter().collect(), qi(3));
        s.add_row([(0, qi(1)), (1, qi(-1))].into_iter().collect(), qi(1));
        s.add_row([(0, qi(2))].into_iter().collect(), qi(4));
        let sol = s.solve().unwrap();
        assert_eq!(sol.values, vec![qi(2), qi(1), qi(0)]);
        assert_eq!(sol.free, vec![2]);
        s.add_row([(1, qi(1))].into_iter().collect(), qi(5));
        assert!(s.solve().is_err());
    }

    #[test]
    fn rational_matrix_inverse() {
        let a = vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]];
        let inv = rational_inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]);
        assert!(rational_inverse(&[vec![qi(1), qi(2)], vec![qi(2), qi(4)]]).is_none());
    }
}
