use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::roots::{build_root_data, GroupSpec, RootData};
use crate::algebra::q_to_f64;

/// Numeric point `(x_1, …, x_{l+2})`.
pub type XPoint = Vec<Complex64>;

pub fn random_xpoint(spec: &GroupSpec, rng: &mut impl Rng, imag: f64) -> XPoint {
    (0..spec.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-imag..imag))).collect()
}

/// `v_1 = x_1, v_j = x_j − x_{j−1}, v_{l+1} = −x_l`.
pub fn ambient(spec: &GroupSpec, x: &[Complex64]) -> Vec<Complex64> {
    let l = spec.l;
    let mut v = Vec::with_capacity(l + 1);
    v.push(x[0]);
    for j in 1..l {
        v.push(x[j] - x[j - 1]);
    }
    v.push(-x[l - 1]);
    v
}

fn from_ambient(spec: &GroupSpec, v: &[Complex64], tail: &[Complex64]) -> XPoint {
    let mut x = Vec::with_capacity(spec.dim());
    let mut s = Complex64::new(0.0, 0.0);
    for vi in v.iter().take(spec.l) {
        s += vi;
        x.push(s);
    }
    x.extend_from_slice(tail);
    x
}

fn elementary_numeric(vals: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); vals.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, v) in vals.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] = e[j] + e[j - 1] * v;
        }
    }
    e
}

/// `ỹ_1, …, ỹ_{l+2}` at `x`.
pub fn invariants_at(spec: &GroupSpec, roots: &RootData, x: &[Complex64]) -> Vec<Complex64> {
    let l = spec.l;
    let tpi = Complex64::new(0.0, 2.0 * PI);
    let v = ambient(spec, x);
    let qs: Vec<Complex64> = v.iter().map(|vi| (tpi * vi).exp()).collect();
    let e = elementary_numeric(&qs);
    let mut out: Vec<Complex64> = (1..=l)
        .map(|j| {
            let ph = x[l] * q_to_f64(roots.d(j, spec.k)) + x[l + 1] * q_to_f64(roots.d(j, spec.k + 1));
            (tpi * ph).exp() * e[j]
        })
        .collect();
    out.push((tpi * x[l]).exp());
    out.push((tpi * x[l + 1]).exp());
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub transforms: Vec<(String, f64)>,
    pub max_rel_dev: f64,
}

fn rel_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm() / x.norm().max(1.0)).fold(0.0, f64::max)
}

/// Applies the generators of `W̃` at `x` and compares the invariants.
pub fn invariance_spotcheck(spec: &GroupSpec, x: &[Complex64], seed: u64) -> InvarianceReport {
    let roots = build_root_data(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = spec.l;
    let base = invariants_at(spec, &roots, x);
    let mut transforms = Vec::new();

    transforms.push(("identity".to_string(), rel_dev(&base, &invariants_at(spec, &roots, x))));

    let mut v = ambient(spec, x);
    v.shuffle(&mut rng);
    let mut xp = from_ambient(spec, &v, &x[l..]);
    for xa in xp.iter_mut().take(l) {
        *xa += rng.gen_range(-3i32..=3) as f64;
    }
    transforms.push(("permutation+coroot".to_string(), rel_dev(&base, &invariants_at(spec, &roots, &xp))));

    for (r, kk) in [(0usize, spec.k), (1, spec.k + 1)] {
        let mut xs = x.to_vec();
        for (a, xa) in xs.iter_mut().enumerate().take(l) {
            *xa += q_to_f64(roots.d(a + 1, kk));
        }
        xs[l + r] -= 1.0;
        let name = if r == 0 { "omega_k shift" } else { "omega_k+1 shift" };
        transforms.push((name.to_string(), rel_dev(&base, &invariants_at(spec, &roots, &xs))));
    }
    let max_rel_dev = transforms.iter().map(|t| t.1).fold(0.0, f64::max);
    InvarianceReport { transforms, max_rel_dev }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
