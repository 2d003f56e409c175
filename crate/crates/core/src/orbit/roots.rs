use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{q, qi, rational_inverse, Q};
use crate::error::{Error, Result};

/// The pair `(l, k)` labelling `W̃^(k,k+1)(A_l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub l: usize,
    pub k: usize,
}

impl GroupSpec {
    pub fn new(l: usize, k: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidSpec(format!("l = {l} must be at least 2")));
        }
        if k < 1 || k >= l {
            return Err(Error::InvalidSpec(format!("k = {k} must satisfy 1 <= k < l = {l}")));
        }
        Ok(GroupSpec { l, k })
    }

    pub fn m(&self) -> usize {
        self.l - self.k
    }

    /// Number of coordinates on the orbit space.
    pub fn dim(&self) -> usize {
        self.l + 2
    }

    /// The τ-block on the two extra directions.
    pub fn tau(&self) -> [[Q; 2]; 2] {
        let (k, m) = (self.k as i64, self.m() as i64);
        [[q(k + 1, k), qi(-1)], [qi(-1), q(m + 1, m)]]
    }

    /// Weight of `e^{y^{l+1}}` and `e^{y^{l+2}}`.
    pub fn marker_weights(&self) -> [Q; 2] {
        [q(1, self.k as i64), q(1, self.m() as i64)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootData {
    pub l: usize,
    pub simple_roots: Vec<Vec<Q>>,
    pub fundamental_weights: Vec<Vec<Q>>,
    pairing: Vec<Vec<Q>>,
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

impl RootData {
    /// `d_{a,b} = (ω_a, ω_b)` with 1-based indices.
    pub fn d(&self, a: usize, b: usize) -> &Q {
        &self.pairing[a - 1][b - 1]
    }

    pub fn pairing(&self) -> &[Vec<Q>] {
        &self.pairing
    }

    pub fn indicator(&self, j: usize, k: usize) -> bool {
        j <= k
    }
}

pub fn build_root_data(spec: &GroupSpec) -> RootData {
    let l = spec.l;
    let n = l + 1;
    let simple_roots: Vec<Vec<Q>> = (0..l)
        .map(|j| (0..n).map(|i| if i == j { qi(1) } else if i == j + 1 { qi(-1) } else { qi(0) }).collect())
        .collect();
    let cartan: Vec<Vec<Q>> = (0..l).map(|i| (0..l).map(|j| dot(&simple_roots[i], &simple_roots[j])).collect()).collect();
    let inv = rational_inverse(&cartan).expect("Cartan matrix is invertible");
    let fundamental_weights: Vec<Vec<Q>> = (0..l)
        .map(|a| {
            let mut w = vec![Q::zero(); n];
            for b in 0..l {
                for i in 0..n {
                    w[i] += &inv[a][b] * &simple_roots[b][i];
                }
            }
            w
        })
        .collect();
    let pairing = (0..l).map(|a| (0..l).map(|b| dot(&fundamental_weights[a], &fundamental_weights[b])).collect()).collect();
    RootData { l, simple_roots, fundamental_weights, pairing }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeData {
    /// `d_1..d_{l+2}`, stored 0-based.
    pub d: Vec<Q>,
    /// `j ↦ j*`, stored 0-based.
    pub dual: Vec<usize>,
}

impl DegreeData {
    pub fn degree(&self, j: usize) -> &Q {
        &self.d[j - 1]
    }

    pub fn star(&self, j: usize) -> usize {
        self.dual[j - 1] + 1
    }
}

pub fn degrees(spec: &GroupSpec) -> DegreeData {
    let (l, k, m) = (spec.l, spec.k, spec.m());
    let mut d: Vec<Q> = (1..=l)
        .map(|j| if j <= k { q(j as i64, k as i64) } else { q((l - j + 1) as i64, m as i64) })
        .collect();
    d.push(qi(0));
    d.push(qi(0));
    let dual = (1..=l + 2)
        .map(|j| {
            let s = if j == k {
                l + 1
            } else if j == k + 1 {
                l + 2
            } else if j == l + 1 {
                k
            } else if j == l + 2 {
                k + 1
            } else if j < k {
                k - j
            } else {
                k + 2 + l - j
            };
            s - 1
        })
        .collect();
    DegreeData { d, dual }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_pairs() {
        assert!(GroupSpec::new(1, 1).is_err());
        assert!(GroupSpec::new(3, 3).is_err());
        assert!(GroupSpec::new(3, 0).is_err());
        assert!(GroupSpec::new(3, 2).is_ok());
    }

    #[test]
    fn pairings_l2() {
        let r = build_root_data(&GroupSpec::new(2, 1).unwrap());
        assert_eq!(*r.d(1, 1), q(2, 3));
        assert_eq!(*r.d(1, 2), q(1, 3));
        assert_eq!(*r.d(2, 2), q(2, 3));
    }

    #[test]
    fn pairings_l3() {
        let r = build_root_data(&GroupSpec::new(3, 1).unwrap());
        assert_eq!(*r.d(1, 1), q(3, 4));
        assert_eq!(*r.d(2, 3), q(1, 2));
        assert_eq!(*r.d(3, 3), q(3, 4));
    }

    #[test]
    fn weights_dual_to_roots() {
        let r = build_root_data(&GroupSpec::new(4, 2).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                let v = dot(&r.fundamental_weights[i], &r.simple_roots[j]);
                assert_eq!(v, if i == j { qi(1) } else { qi(0) });
            }
            assert!(r.simple_roots[i].iter().fold(Q::zero(), |s, x| s + x).is_zero());
        }
    }

    #[test]
    fn degree_tables() {
        let d = degrees(&GroupSpec::new(3, 1).unwrap());
        assert_eq!(d.d[..3], [qi(1), qi(1), q(1, 2)]);
        let d = degrees(&GroupSpec::new(3, 2).unwrap());
        assert_eq!(d.d[..3], [q(1, 2), qi(1), qi(1)]);
        let d = degrees(&GroupSpec::new(2, 1).unwrap());
        assert_eq!(d.d[..2], [qi(1), qi(1)]);
    }

    #[test]
    fn duality_sums_to_one() {
        for l in 2..7 {
            for k in 1..l {
                let d = degrees(&GroupSpec::new(l, k).unwrap());
                for j in 1..=l + 2 {
                    assert_eq!(d.degree(j) + d.degree(d.star(j)), qi(1), "l={l} k={k} j={j}");
                    assert_eq!(d.star(d.star(j)), j);
                }
            }
        }
    }
}
