use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::poly::{mono_weight, LaurentPoly};
use super::rational::{render_q, Q};
use crate::error::AlgebraError;

/// What a polynomial variable stands for in its chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarRole {
    /// The chart coordinate with this index.
    Coordinate(usize),
    /// `exp(Σ c·coord)` over the listed (coordinate, coefficient) pairs.
    Exponential(Vec<(usize, i32)>),
    /// A variable with no chart meaning (torus variables, elementary symmetric functions).
    Symbol,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarTable {
    names: Vec<String>,
    roles: Vec<VarRole>,
    weights: Option<Vec<Q>>,
    ncoords: usize,
}

impl VarTable {
    pub fn new(names: Vec<String>, roles: Vec<VarRole>, ncoords: usize) -> Self {
        assert_eq!(names.len(), roles.len());
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate variable {a}");
        }
        VarTable { names, roles, weights: None, ncoords }
    }

    pub fn symbols(prefix: &str, n: usize) -> Self {
        let names = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        VarTable::new(names, vec![VarRole::Symbol; n], 0)
    }

    pub fn with_weights(mut self, w: Vec<Q>) -> Self {
        assert_eq!(w.len(), self.names.len());
        self.weights = Some(w);
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> &VarRole {
        &self.roles[i]
    }

    pub fn weights(&self) -> Option<&[Q]> {
        self.weights.as_deref()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.len())
    }

    pub fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.len())
    }

    pub fn constant(&self, c: Q) -> LaurentPoly {
        LaurentPoly::constant(self.len(), c)
    }

    pub fn var(&self, i: usize) -> LaurentPoly {
        LaurentPoly::var(self.len(), i)
    }

    pub fn var_named(&self, name: &str) -> LaurentPoly {
        self.var(self.index(name).unwrap_or_else(|| panic!("unknown variable {name}")))
    }

    /// Variable holding chart coordinate `c` as a bare symbol, if any.
    pub fn coordinate_var(&self, c: usize) -> Option<usize> {
        self.roles.iter().position(|r| *r == VarRole::Coordinate(c))
    }

    /// Name of chart coordinate `c`: its variable if there is one, else the chart prefix with index.
    pub fn coordinate_name(&self, c: usize) -> String {
        match self.coordinate_var(c) {
            Some(i) => self.names[i].clone(),
            None => {
                let prefix: String = self.names.first().map(|n| n.chars().take_while(|ch| ch.is_alphabetic()).collect()).unwrap_or_default();
                format!("{prefix}{}", c + 1)
            }
        }
    }

    /// The monomial in the exponential variables equal to `exp(Σ v_c x^c)`, if one exists.
    pub fn exp_monomial(&self, v: &[Q]) -> Option<LaurentPoly> {
        let exps: Vec<usize> = (0..self.len()).filter(|&i| matches!(self.roles[i], VarRole::Exponential(_))).collect();
        let n = exps.len();
        let mut rows: Vec<Vec<Q>> = (0..self.ncoords)
            .map(|c| {
                let mut r: Vec<Q> = exps
                    .iter()
                    .map(|&i| match &self.roles[i] {
                        VarRole::Exponential(lin) => lin.iter().filter(|(j, _)| *j == c).fold(Q::zero(), |s, (_, a)| s + Q::from_integer((*a).into())),
                        _ => Q::zero(),
                    })
                    .collect();
                r.push(v.get(c).cloned().unwrap_or_else(Q::zero));
                r
            })
            .collect();
        let mut piv = 0;
        let mut cols = Vec::new();
        for col in 0..n {
            let Some(r) = (piv..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(piv, r);
            let inv = Q::one() / &rows[piv][col];
            rows[piv] = rows[piv].iter().map(|x| x * &inv).collect();
            for r in 0..rows.len() {
                if r != piv && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let sub: Vec<Q> = rows[piv].iter().map(|x| x * &f).collect();
                    for (a, b) in rows[r].iter_mut().zip(sub) {
                        *a -= b;
                    }
                }
            }
            cols.push(col);
            piv += 1;
        }
        if rows[piv..].iter().any(|r| !r[n].is_zero()) || cols.len() < n {
            return None;
        }
        let mut e = vec![0i32; self.len()];
        for (r, &col) in cols.iter().enumerate() {
            let a = &rows[r][n];
            if !a.is_integer() {
                return None;
            }
            e[exps[col]] = i32::try_from(a.to_integer()).ok()?;
        }
        Some(LaurentPoly::term(self.len(), &e, Q::one()))
    }

    /// Partial derivative with respect to chart coordinate `c`.
    pub fn deriv(&self, p: &LaurentPoly, c: usize) -> LaurentPoly {
        let mut out = self.zero();
        for (i, role) in self.roles.iter().enumerate() {
            match role {
                VarRole::Coordinate(j) if *j == c => out += &p.deriv(i),
                VarRole::Exponential(lin) => {
                    let a: i32 = lin.iter().filter(|(j, _)| *j == c).map(|(_, a)| *a).sum();
                    if a != 0 {
                        out += &p.euler(i).scale(&Q::from_integer(a.into()));
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Directional derivative `Σ v_c ∂_c` for constant `v`.
    pub fn directional(&self, p: &LaurentPoly, v: &[Q]) -> LaurentPoly {
        let mut out = self.zero();
        for (c, vc) in v.iter().enumerate() {
            if !vc.is_zero() {
                out += &self.deriv(p, c).scale(vc);
            }
        }
        out
    }

    /// Variable values at the chart point with coordinates `x`; `Symbol` variables are not allowed.
    pub fn point(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.roles
            .iter()
            .map(|r| match r {
                VarRole::Coordinate(c) => x[*c],
                VarRole::Exponential(lin) => lin.iter().map(|(c, a)| x[*c] * *a as f64).sum::<Complex64>().exp(),
                VarRole::Symbol => panic!("symbolic variable has no chart value"),
            })
            .collect()
    }

    pub fn render(&self, p: &LaurentPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&[i32], &Q)> = p.terms().collect();
        if let Some(w) = &self.weights {
            let mut keyed: Vec<(Q, usize)> = terms.iter().enumerate().map(|(i, (e, _))| (mono_weight(e, w), i)).collect();
            keyed.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
            terms = keyed.into_iter().map(|(_, i)| terms[i]).collect();
        } else {
            terms.reverse();
        }
        let mut s = String::new();
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| if *x == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], x) })
                .collect();
            if factors.is_empty() {
                s.push_str(&render_q(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&render_q(&a));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn parse(&self, s: &str) -> Result<LaurentPoly, AlgebraError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, vars: self };
        let r = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a VarTable,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.term()?
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.integer()?;
        let n = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
        if neg {
            let inv = base.monomial_inverse().ok_or_else(|| self.err("negative power of a non-monomial"))?;
            Ok(inv.pow(n))
        } else {
            Ok(base.pow(n))
        }
    }

    /// Integer linear form in the chart coordinates, as a coefficient vector.
    fn linear(&mut self) -> Result<Vec<Q>, AlgebraError> {
        let n = self.vars.ncoords;
        let mut acc = vec![Q::zero(); n];
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Ok(acc),
            };
            first = false;
            let mut c = Q::from_integer(sign.into());
            if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                c *= Q::from_integer(self.integer()?);
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                }
            }
            if self.peek() == Some(b'(') {
                self.pos += 1;
                let inner = self.linear()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                for (a, b) in acc.iter_mut().zip(inner) {
                    *a += &c * b;
                }
                continue;
            }
            let rest = &self.s[self.pos..];
            let mut best: Option<(usize, String)> = None;
            for j in 0..n {
                let name = self.vars.coordinate_name(j);
                if rest.starts_with(name.as_bytes()) && best.as_ref().is_none_or(|(_, b)| b.len() < name.len()) {
                    best = Some((j, name));
                }
            }
            let (j, name) = best.ok_or_else(|| self.err("expected a chart coordinate"))?;
            self.pos += name.len();
            acc[j] += c;
        }
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt, AlgebraError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(t.parse().unwrap())
    }

    fn atom(&mut self) -> Result<LaurentPoly, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut v = Q::from_integer(n);
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    match self.integer() {
                        Ok(d) if !d.is_zero() => v /= Q::from_integer(d),
                        _ => {
                            self.pos = save;
                            return Err(self.err("bad denominator"));
                        }
                    }
                }
                Ok(self.vars.constant(v))
            }
            Some(_) if self.s[self.pos..].starts_with(b"exp(") => {
                self.pos += 4;
                let v = self.linear()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                self.vars.exp_monomial(&v).ok_or_else(|| self.err("exponent is not a combination of the chart exponentials"))
            }
            Some(_) => {
                let rest = &self.s[self.pos..];
                let mut best: Option<usize> = None;
                for (i, n) in self.vars.names.iter().enumerate() {
                    if rest.starts_with(n.as_bytes()) && best.is_none_or(|b| self.vars.names[b].len() < n.len()) {
                        best = Some(i);
                    }
                }
                match best {
                    Some(i) => {
                        self.pos += self.vars.names[i].len();
                        Ok(self.vars.var(i))
                    }
                    None => Err(self.err("unknown variable")),
                }
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    fn chart() -> VarTable {
        VarTable::new(
            vec!["y1".into(), "y2".into(), "E1".into(), "E2".into()],
            vec![
                VarRole::Coordinate(0),
                VarRole::Coordinate(1),
                VarRole::Exponential(vec![(2, 1)]),
                VarRole::Exponential(vec![(3, 1), (2, -1)]),
            ],
            4,
        )
    }

    #[test]
    fn render_parse_roundtrip() {
        let v = chart();
        let p = v.parse("2*y2*E1 - 1/2*y1^2 + 3*E1*E2 - 4").unwrap();
        let s = v.render(&p);
        assert_eq!(v.parse(&s).unwrap(), p);
        assert_eq!(v.render(&v.parse("y1 - y1").unwrap()), "0");
        assert_eq!(v.render(&v.parse("-(y1+1)^2").unwrap()), "-y1^2 - 2*y1 - 1");
    }

    #[test]
    fn negative_powers_parse() {
        let v = chart();
        let p = v.parse("y2^-1*3/4").unwrap();
        assert_eq!(p.coeff(&[0, -1, 0, 0]), q(3, 4));
        assert!(v.parse("(y1+y2)^-1").is_err());
        assert!(v.parse("w3").is_err());
    }

    #[test]
    fn chart_derivative_through_exponentials() {
        let v = chart();
        let p = v.parse("E1*E2*y1").unwrap();
        assert!(v.deriv(&p, 2).is_zero());
        assert_eq!(v.deriv(&p, 3), p);
        assert_eq!(v.deriv(&p, 0), v.parse("E1*E2").unwrap());
        let e1 = v.parse("E1^2").unwrap();
        assert_eq!(v.deriv(&e1, 2), e1.scale(&qi(2)));
    }

    #[test]
    fn exponentials_by_coordinates() {
        let v = chart();
        assert_eq!(v.parse("exp(y3)").unwrap(), v.parse("E1").unwrap());
        assert_eq!(v.parse("2*y1*exp(y4)").unwrap(), v.parse("2*y1*E1*E2").unwrap());
        assert_eq!(v.parse("exp(2*(y4-y3)) - exp(-y3)").unwrap(), v.parse("E2^2 - E1^-1").unwrap());
        assert!(v.parse("exp(y1)").is_err());
    }

    #[test]
    fn weighted_render_order() {
        let v = chart().with_weights(vec![qi(1), q(1, 2), qi(1), qi(1)]);
        let p = v.parse("y2 + y1").unwrap();
        assert_eq!(v.render(&p), "y1 + y2");
    }
}
