use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;

use super::structure::{structure_constants, StructureConstants};
use super::wdvv::wdvv_check;
use super::{Check, CheckReport};
use crate::algebra::{q_to_f64, qi, LaurentPoly, Q};
use crate::error::Result;
use crate::frobenius::{build, push_forward_consistent, EulerField, Frobenius, Potential, TChartTensor};
use crate::orbit::invariance::seeded_rng;
use crate::orbit::metric::double_unity_derivative;
use crate::orbit::{christoffel_y, degrees, GroupSpec};

fn worst(p: &LaurentPoly) -> f64 {
    q_to_f64(&p.max_abs_coeff())
}

/// `g^{αβ}(t) = L_E F^{αβ}` entrywise.
pub fn intersection_check(f: &Potential, g_t: &TChartTensor) -> Check {
    let start = Instant::now();
    let n = f.spec.dim();
    let mut bad = Vec::new();
    let mut res: f64 = 0.0;
    for a in 0..n {
        for b in a..n {
            let d = g_t.get(a, b) - &f.lie_raised_hessian(a, b);
            if !d.is_zero() {
                res = res.max(worst(&d));
                bad.push(format!("({},{})", a + 1, b + 1));
            }
        }
    }
    let failure = (!bad.is_empty()).then(|| (res, format!("entries {}", bad.join(" "))));
    Check::exact("intersection_form", failure).timed(start)
}

/// `c^α_{kβ} = δ^α_β` and `[E, e] = −e` for `e = ∂/∂t^k`.
pub fn unity_and_euler_check(sc: &StructureConstants, euler: &EulerField) -> CheckReport {
    let start = Instant::now();
    let n = sc.n;
    let k = sc.unity;
    let mut bad = Vec::new();
    let mut res: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let want = if a == b { sc.vars.one() } else { sc.vars.zero() };
            let d = &sc.raised(a, k, b) - &want;
            if !d.is_zero() {
                res = res.max(worst(&d));
                bad.push(format!("({},{})", a + 1, b + 1));
            }
        }
    }
    let unity = Check::exact("unity", (!bad.is_empty()).then(|| (res, format!("c^a_(k b) ≠ δ at {}", bad.join(" "))))).timed(start);

    let start = Instant::now();
    let comps = euler.components(&sc.vars);
    let mut res: f64 = 0.0;
    let mut bad = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let bracket = -&sc.vars.deriv(c, k);
        let want = if i == k { -&sc.vars.one() } else { sc.vars.zero() };
        let d = &bracket - &want;
        if !d.is_zero() {
            res = res.max(worst(&d));
            bad.push(i + 1);
        }
    }
    let bracket = Check::exact("euler_bracket", (!bad.is_empty()).then(|| (res, format!("[E,e] ≠ −e in components {bad:?}")))).timed(start);
    CheckReport { checks: vec![unity, bracket] }
}

/// `L_E F − 2F` equals the prescribed quadratic form.
pub fn quasi_homogeneity_check(f: &Potential) -> Check {
    let start = Instant::now();
    let d = &f.quasi_homogeneity_defect() - &f.expected_defect();
    let failure = (!d.is_zero()).then(|| (worst(&d), format!("remainder off by {}", f.vars.render(&d))));
    Check::exact("quasi_homogeneity", failure).timed(start)
}

/// Adds one to a seeded choice among the non-cubic coefficients of `F`.
pub fn corrupt_potential(f: &Potential, seed: u64) -> Potential {
    let l = f.spec.l;
    let candidates: Vec<Vec<i32>> = f.poly.terms().filter(|(e, _)| e[l + 2] + e[l + 3] > 0).map(|(e, _)| e.to_vec()).collect();
    let mut g = f.clone();
    if candidates.is_empty() {
        return g;
    }
    let pick = seeded_rng(seed).gen_range(0..candidates.len());
    g.poly.add_term(&candidates[pick], Q::one());
    g
}

fn bool_check(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    Check::exact(name, (!ok).then(|| (1.0, detail())))
}

/// The exact structural identities for one group, plus WDVV at seeded points.
pub fn structural_suite(spec: &GroupSpec, seed: u64) -> Result<(Frobenius, CheckReport)> {
    structural_suite_with(spec, seed, None)
}

/// As [`structural_suite`], with the potential optionally corrupted by [`corrupt_potential`] first.
pub fn structural_suite_with(spec: &GroupSpec, seed: u64, corrupt: Option<u64>) -> Result<(Frobenius, CheckReport)> {
    let mut rep = CheckReport::default();
    let (l, k) = (spec.l, spec.k);
    let dd = degrees(spec);

    let ok = (1..=l + 2).all(|j| dd.degree(j) + dd.degree(dd.star(j)) == qi(1));
    rep.push(bool_check("degree_duality", ok, || "d_j + d_j* ≠ 1".into()));
    rep.push(bool_check("unit_degrees", *dd.degree(k) == qi(1) && *dd.degree(k + 1) == qi(1), || "d_k or d_(k+1) ≠ 1".into()));

    let start = Instant::now();
    let mut fr = build(spec)?;
    if let Some(c) = corrupt {
        fr.potential = corrupt_potential(&fr.potential, c);
    }
    let build_time = start.elapsed();

    let det = fr.eta_y.matrix.det();
    rep.push(bool_check("det_eta_constant", det.is_constant() && !det.is_zero(), || format!("det η(y) = {}", fr.eta_y.vars.render(&det))));

    let n = spec.dim();
    let eta = &fr.flat.eta_t;
    let mut ok = true;
    for i in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&j| !eta[i][j].is_zero()).collect();
        ok &= nz.len() == 1 && (dd.degree(i + 1) + dd.degree(nz[0] + 1)) == qi(1);
    }
    ok &= eta[k][l] == qi(1) && eta[k - 1][l + 1] == qi(1);
    rep.push(bool_check("eta_t_antidiagonal", ok, || format!("η(t) = {eta:?}")));

    let tv = &fr.g_t.vars;
    let ok = (0..l).all(|a| *fr.g_t.get(a, l + 1) == tv.var(a).scale(&dd.d[a]));
    rep.push(bool_check("g_t_euler_row", ok, || "g^(α,l+2)(t) ≠ d_α t^α".into()));

    let start = Instant::now();
    let bad = fr.g_y.matrix.entries().iter().filter(|p| !double_unity_derivative(spec, &fr.g_y.vars, p).is_zero()).count();
    rep.push(bool_check("double_unity_g", bad == 0, || format!("{bad} entries with L_e L_e g ≠ 0")).timed(start));
    let start = Instant::now();
    let gamma = christoffel_y(spec, &fr.g_y)?;
    let bad = gamma.data.iter().filter(|p| !double_unity_derivative(spec, &gamma.vars, p).is_zero()).count();
    rep.push(bool_check("double_unity_gamma", bad == 0, || format!("{bad} entries with L_e L_e Γ ≠ 0")).timed(start));

    let sc = structure_constants(&fr.potential);
    rep.extend(wdvv_check(&sc, seed));
    rep.push(intersection_check(&fr.potential, &fr.g_t));
    rep.push(quasi_homogeneity_check(&fr.potential));
    rep.extend(unity_and_euler_check(&sc, &fr.potential.euler));
    rep.push(bool_check("euler_push_forward", push_forward_consistent(spec), || "E(y) does not map to E(z)".into()));
    let mut pipeline = bool_check("pipeline", true, String::new);
    pipeline.elapsed = build_time;
    rep.push(pipeline);
    Ok((fr, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::wdvv_exact;

    #[test]
    fn a2k1_suite_passes() {
        let (_, rep) = structural_suite(&GroupSpec::new(2, 1).unwrap(), 42).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
        assert_eq!(rep.checks.len(), 15);
    }

    #[test]
    fn corrupted_potential_fails_wdvv() {
        let fr = build(&GroupSpec::new(3, 1).unwrap()).unwrap();
        for seed in 0..4 {
            let bad = corrupt_potential(&fr.potential, seed);
            assert_ne!(bad.poly, fr.potential.poly);
            let c = wdvv_exact(&structure_constants(&bad));
            assert!(!c.passed && c.residual > 0.0, "seed {seed}");
        }
    }

    #[test]
    fn wrong_unity_degree_breaks_bracket() {
        let fr = build(&GroupSpec::new(2, 1).unwrap()).unwrap();
        let sc = structure_constants(&fr.potential);
        let mut e = fr.potential.euler.clone();
        e.linear[0] = crate::algebra::q(1, 2);
        let rep = unity_and_euler_check(&sc, &e);
        assert!(rep.get("unity").unwrap().passed);
        assert!(!rep.get("euler_bracket").unwrap().passed);
    }

    #[test]
    fn unity_row_of_structure_constants() {
        let fr = build(&GroupSpec::new(3, 2).unwrap()).unwrap();
        let sc = structure_constants(&fr.potential);
        let k = sc.unity;
        for i in 0..sc.n {
            for j in 0..sc.n {
                assert_eq!(*sc.c(k, i, j), sc.vars.constant(sc.eta_inv[i][j].clone()));
            }
        }
        let s = sc.log_var;
        let c = sc.c(s, s, s);
        let mut e = vec![0; sc.vars.len()];
        e[s] = -1;
        assert_eq!(c.coeff(&e), qi(1));
    }
}
