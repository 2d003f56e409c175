use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{q_to_f64, Q};
use crate::error::AlgebraError;

pub type Exps = SmallVec<[i32; 12]>;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Exps);

impl Mono {
    pub fn new(e: &[i32]) -> Self {
        Mono(Exps::from_slice(e))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a weighted homogeneity test.
#[derive(Clone, Debug, PartialEq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(Q),
    Mixed,
}

/// Sparse Laurent polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*x{:?}", c, m.0.as_slice())?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(&vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, &e, Q::one())
    }

    pub fn term(nvars: usize, exps: &[i32], c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, Q)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(&e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &Q)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn add_term(&mut self, exps: &[i32], c: Q) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        self.add_mono(Mono::new(exps), c);
    }

    fn add_mono(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[i32]) -> Q {
        self.terms.get(&Mono::new(exps)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    /// Total degree; `None` stands for the degree of zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&[i32], &Q)> {
        self.terms.iter().next_back().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, exps: &[i32], c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = BTreeMap::new();
        for (m, x) in &self.terms {
            let e: Exps = m.0.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.insert(Mono(e), x * c);
        }
        LaurentPoly { nvars: self.nvars, terms: out }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn deriv(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                let mut n = m.0.clone();
                n[i] -= 1;
                out.add_mono(Mono(n), c * Q::from_integer(e.into()));
            }
        }
        out
    }

    /// `x_i ∂/∂x_i`.
    pub fn euler(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                out.add_mono(m.clone(), c * Q::from_integer(e.into()));
            }
        }
        out
    }

    /// Applies `Σ_i w_i x_i ∂_i`.
    pub fn weighted_euler(&self, w: &[Q]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut s = Q::zero();
            for (e, wi) in m.0.iter().zip(w) {
                if *e != 0 {
                    s += wi * Q::from_integer((*e).into());
                }
            }
            out.add_mono(m.clone(), c * s);
        }
        out
    }

    pub fn homogeneity(&self, weights: &[Q]) -> Homogeneity {
        let mut deg: Option<Q> = None;
        for m in self.terms.keys() {
            let d = mono_weight(&m.0, weights);
            match &deg {
                None => deg = Some(d),
                Some(d0) if *d0 != d => return Homogeneity::Mixed,
                _ => {}
            }
        }
        match deg {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Homogeneous(d),
        }
    }

    /// True if zero or homogeneous of weighted degree `d`.
    pub fn is_homogeneous_of(&self, weights: &[Q], d: &Q) -> bool {
        match self.homogeneity(weights) {
            Homogeneity::Zero => true,
            Homogeneity::Homogeneous(e) => &e == d,
            Homogeneity::Mixed => false,
        }
    }

    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m.0.iter()) {
                *o = (*o).min(*e);
            }
        }
        if self.terms.is_empty() {
            out.iter_mut().for_each(|o| *o = 0);
        }
        out
    }

    pub fn max_exponents(&self) -> Vec<i32> {
        let mut out = vec![i32::MIN; self.nvars];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m.0.iter()) {
                *o = (*o).max(*e);
            }
        }
        if self.terms.is_empty() {
            out.iter_mut().for_each(|o| *o = 0);
        }
        out
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(q_to_f64(c), 0.0);
            for (e, xi) in m.0.iter().zip(x) {
                if *e != 0 {
                    t *= xi.powi(*e);
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_q(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, xi) in m.0.iter().zip(x) {
                if *e > 0 {
                    t *= num_traits::pow(xi.clone(), *e as usize);
                } else if *e < 0 {
                    t /= num_traits::pow(xi.clone(), (-*e) as usize);
                }
            }
            s += t;
        }
        s
    }

    /// Substitutes `x_i -> images[i]`; negative exponents require monomial images.
    pub fn compose(&self, images: &[LaurentPoly]) -> Result<LaurentPoly, AlgebraError> {
        let n = images.first().map(|p| p.nvars).unwrap_or(0);
        if images.len() != self.nvars {
            return Err(AlgebraError::Dimension(format!(
                "compose: {} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let mut cache: Vec<BTreeMap<i32, LaurentPoly>> = vec![BTreeMap::new(); self.nvars];
        let mut out = LaurentPoly::zero(n);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = if e > 0 {
                        images[i].pow(e as u32)
                    } else {
                        images[i].monomial_inverse().ok_or(AlgebraError::NotInvertible(i))?.pow((-e) as u32)
                    };
                    cache[i].insert(e, p);
                }
                t = &t * &cache[i][&e];
            }
            out += &t;
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let e: Vec<i32> = m.0.iter().map(|x| -x).collect();
        Some(LaurentPoly::term(self.nvars, &e, c.recip()))
    }

    /// Applies an exponent-level map to every term.
    pub fn map_monomials<F>(&self, nvars: usize, mut f: F) -> LaurentPoly
    where
        F: FnMut(&[i32]) -> (Vec<i32>, Q),
    {
        let mut out = LaurentPoly::zero(nvars);
        for (m, c) in &self.terms {
            let (e, s) = f(&m.0);
            out.add_term(&e, c * s);
        }
        out
    }

    /// Re-embeds into `nvars` variables; `slot[i]` is the new index of variable `i`.
    pub fn embed(&self, nvars: usize, slot: &[usize]) -> LaurentPoly {
        self.map_monomials(nvars, |e| {
            let mut n = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                n[slot[i]] += x;
            }
            (n, Q::one())
        })
    }

    /// Exact quotient `self / d`, or an error if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        let (ld, lc) = match d.terms.iter().next_back() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(AlgebraError::NonPolynomialResult),
        };
        if d.terms.len() == 1 {
            let inv: Vec<i32> = ld.0.iter().map(|x| -x).collect();
            let r = self.mul_term(&inv, &lc.recip());
            let neg_ok = self.has_negative_exponents() || d.has_negative_exponents();
            if !neg_ok && r.has_negative_exponents() {
                return Err(AlgebraError::NonPolynomialResult);
            }
            return Ok(r);
        }
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero(self.nvars);
        let mut guard = 0usize;
        while let Some((lm, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let e: Vec<i32> = lm.0.iter().zip(ld.0.iter()).map(|(a, b)| a - b).collect();
            if e.iter().any(|&x| x < 0) {
                return Err(AlgebraError::NonPolynomialResult);
            }
            let f = c / &lc;
            rem -= &d.mul_term(&e, &f);
            quo.add_term(&e, f);
            guard += 1;
            if guard > 10_000_000 {
                return Err(AlgebraError::NonPolynomialResult);
            }
        }
        Ok(quo)
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }
}

pub fn mono_weight(e: &[i32], weights: &[Q]) -> Q {
    let mut d = Q::zero();
    for (x, w) in e.iter().zip(weights) {
        if *x != 0 {
            d += w * Q::from_integer((*x).into());
        }
    }
    d
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_mono(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_mono(m.clone(), -c.clone());
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Exps = a.0.iter().zip(b.0.iter()).map(|(p, q)| p + q).collect();
                out.add_mono(Mono(e), x * y);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.clone().neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(2, i)
    }

    #[test]
    fn grlex_order() {
        let a = Mono::new(&[2, 0]);
        let b = Mono::new(&[1, 1]);
        let c = Mono::new(&[0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Mono::new(&[0, 0]) < Mono::new(&[0, 1]));
    }

    #[test]
    fn cancellation_leaves_zero() {
        let p = &x(0) + &x(1);
        let r = &p - &p;
        assert!(r.is_zero());
        assert_eq!(r.degree(), None);
    }

    #[test]
    fn product_and_derivative() {
        let p = &x(0) + &x(1);
        let sq = p.pow(2);
        assert_eq!(sq.coeff(&[1, 1]), qi(2));
        assert_eq!(sq.deriv(0), (&x(0) + &x(1)).scale(&qi(2)));
    }

    #[test]
    fn laurent_inverse() {
        let m = LaurentPoly::term(2, &[1, -2], q(3, 2));
        let inv = m.monomial_inverse().unwrap();
        assert_eq!(&m * &inv, LaurentPoly::one(2));
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &LaurentPoly::one(2);
        let b = &x(1) - &x(0);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&x(0)).is_err());
        let r = (&p + &LaurentPoly::one(2)).div_exact(&a);
        assert!(r.is_err());
    }

    #[test]
    fn compose_substitutes() {
        let p = &x(0) * &x(1);
        let imgs = vec![&x(0) + &x(1), x(1)];
        let r = p.compose(&imgs).unwrap();
        assert_eq!(r, &(&x(0) * &x(1)) + &x(1).pow(2));
    }

    #[test]
    fn homogeneity_detects_mixed() {
        let w = vec![q(1, 2), qi(1)];
        let p = &x(0).pow(2) + &x(1);
        assert_eq!(p.homogeneity(&w), Homogeneity::Homogeneous(qi(1)));
        let r = &p + &x(0);
        assert_eq!(r.homogeneity(&w), Homogeneity::Mixed);
    }
}
