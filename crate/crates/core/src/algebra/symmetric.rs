use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::poly::{LaurentPoly, Mono};
use super::rational::Q;
use crate::error::AlgebraError;

/// Elementary symmetric polynomial `e_j` in `n` variables.
pub fn elementary(n: usize, j: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n);
    if j > n {
        return p;
    }
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        let mut e = vec![0; n];
        for &i in &idx {
            e[i] = 1;
        }
        p.add_term(&e, Q::one());
        let mut t = j;
        while t > 0 && idx[t - 1] == n - j + t - 1 {
            t -= 1;
        }
        if t == 0 {
            return p;
        }
        idx[t - 1] += 1;
        for u in t..j {
            idx[u] = idx[u - 1] + 1;
        }
    }
}

/// Shifts every monomial so its smallest exponent is zero, i.e. reduces modulo `q_1⋯q_n = 1`.
pub fn normalize_torus(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(p.nvars(), |e| {
        let m = e.iter().copied().min().unwrap_or(0);
        (e.iter().map(|x| x - m).collect(), Q::one())
    })
}

/// Substitutes `σ_j = e_j(q_1..q_{l+1})` into a polynomial in `σ_1..σ_l` and reduces modulo `∏q = 1`.
pub fn sym_expand(p: &LaurentPoly) -> LaurentPoly {
    let l = p.nvars();
    let images: Vec<LaurentPoly> = (1..=l).map(|j| elementary(l + 1, j)).collect();
    if l == 0 {
        return LaurentPoly::constant(1, p.constant_term());
    }
    normalize_torus(&p.compose(&images).expect("nonnegative exponents"))
}

fn is_dominant(e: &[i32]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1])
}

struct Expander {
    n: usize,
    e: Vec<LaurentPoly>,
    cache: HashMap<Vec<u32>, BTreeMap<Mono, Q>>,
}

impl Expander {
    fn full(&mut self, key: &[u32]) -> LaurentPoly {
        if key.iter().all(|&k| k == 0) {
            return LaurentPoly::one(self.n);
        }
        let s = key.iter().position(|&k| k > 0).unwrap();
        let mut prev = key.to_vec();
        prev[s] -= 1;
        let base = self.full(&prev);
        normalize_torus(&(&base * &self.e[s]))
    }

    fn dominant(&mut self, key: &[u32]) -> &BTreeMap<Mono, Q> {
        if !self.cache.contains_key(key) {
            let p = self.full(key);
            let d = p.terms().filter(|(e, _)| is_dominant(e)).map(|(e, c)| (Mono::new(e), c.clone())).collect();
            self.cache.insert(key.to_vec(), d);
        }
        &self.cache[key]
    }
}

/// Rewrites a symmetric Laurent polynomial in `q_1..q_{l+1}` as a polynomial in `σ_1..σ_l`,
/// using `σ_{l+1} = 1`.
pub fn sym_reduce(p: &LaurentPoly, l: usize) -> Result<LaurentPoly, AlgebraError> {
    let n = l + 1;
    if p.nvars() != n {
        return Err(AlgebraError::Dimension(format!("sym_reduce: expected {n} variables, got {}", p.nvars())));
    }
    let w = normalize_torus(p);
    for i in 0..l {
        let swapped = w.map_monomials(n, |e| {
            let mut f = e.to_vec();
            f.swap(i, i + 1);
            (f, Q::one())
        });
        if swapped != w {
            return Err(AlgebraError::NotSymmetric(i + 1, i + 2));
        }
    }
    let mut dom: BTreeMap<Mono, Q> = w.terms().filter(|(e, _)| is_dominant(e)).map(|(e, c)| (Mono::new(e), c.clone())).collect();
    let mut ex = Expander { n, e: (1..=l).map(|j| elementary(n, j)).collect(), cache: HashMap::new() };
    let mut out = LaurentPoly::zero(l);
    let cap = 1 + 4 * (w.degree().unwrap_or(0).max(0) as usize + 1).pow(l.min(6) as u32);
    let mut steps = 0usize;
    while let Some((lead, c)) = dom.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        steps += 1;
        if steps > cap {
            return Err(AlgebraError::NonTerminating(steps));
        }
        let lam = lead.exps();
        let key: Vec<u32> = (0..l).map(|s| (lam[s] - lam[s + 1]) as u32).collect();
        let sig: Vec<i32> = key.iter().map(|&k| k as i32).collect();
        out.add_term(&sig, c.clone());
        for (m, x) in ex.dominant(&key) {
            let v = dom.entry(m.clone()).or_insert_with(Q::zero);
            *v -= x * &c;
            if v.is_zero() {
                dom.remove(m);
            }
        }
        if dom.contains_key(&lead) {
            return Err(AlgebraError::NonTerminating(steps));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qi;

    fn qvars(n: usize) -> Vec<LaurentPoly> {
        (0..n).map(|i| LaurentPoly::var(n, i)).collect()
    }

    #[test]
    fn power_sum_l2() {
        let q = qvars(3);
        let p = q.iter().fold(LaurentPoly::zero(3), |a, x| &a + &x.pow(2));
        let r = sym_reduce(&p, 2).unwrap();
        let s1 = LaurentPoly::var(2, 0);
        let s2 = LaurentPoly::var(2, 1);
        assert_eq!(r, &s1.pow(2) - &s2.scale(&qi(2)));
    }

    #[test]
    fn inverse_sum_l2() {
        let q = qvars(3);
        let p = q.iter().fold(LaurentPoly::zero(3), |a, x| &a + &x.monomial_inverse().unwrap());
        assert_eq!(sym_reduce(&p, 2).unwrap(), LaurentPoly::var(2, 1));
    }

    #[test]
    fn squared_pairs_l3() {
        let q = qvars(4);
        let mut p = LaurentPoly::zero(4);
        for a in 0..4 {
            for b in a + 1..4 {
                p += &(&q[a].pow(2) * &q[b].pow(2));
            }
        }
        let r = sym_reduce(&p, 3).unwrap();
        let s: Vec<LaurentPoly> = (0..3).map(|i| LaurentPoly::var(3, i)).collect();
        let expect = &(&s[1].pow(2) - &(&s[0] * &s[2]).scale(&qi(2))) + &LaurentPoly::constant(3, qi(2));
        assert_eq!(r, expect);
        assert_eq!(sym_expand(&r), normalize_torus(&p));
    }

    #[test]
    fn rejects_asymmetric() {
        let q = qvars(3);
        let p = &q[0] + &q[1].pow(2);
        assert!(matches!(sym_reduce(&p, 2), Err(AlgebraError::NotSymmetric(_, _))));
    }

    #[test]
    fn elementary_counts() {
        assert_eq!(elementary(5, 2).len(), 10);
        assert_eq!(elementary(4, 4).len(), 1);
        assert!(elementary(3, 4).is_zero());
    }
}
