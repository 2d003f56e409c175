use std::fmt::Write;

use serde::Serialize;

use crate::algebra::render_q;
use crate::frobenius::Frobenius;
use crate::lg::LgReport;
use crate::orbit::{degrees, ChartTensor, GroupSpec};
use crate::verify::CheckReport;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Group {
    pub l: usize,
    pub k: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatReport {
    pub chart: &'static str,
    pub t: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialReport {
    pub polynomial: String,
    pub log_coeff: String,
    pub log_var: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub chart: &'static str,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub schema: u32,
    pub group: Group,
    pub degrees: Vec<String>,
    pub duality: Vec<usize>,
    pub g_y: Vec<Vec<String>>,
    pub eta_y: Vec<Vec<String>>,
    pub flat_coords: FlatReport,
    pub g_t: Vec<Vec<String>>,
    pub potential: PotentialReport,
    pub euler_field: EulerReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lg: Option<LgReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LgOnlyReport {
    pub schema: u32,
    pub group: Group,
    pub passed: bool,
    pub rejected: usize,
    pub lg: LgReport,
}

fn rows(t: &ChartTensor) -> Vec<Vec<String>> {
    t.render_rows()
}

impl FrobeniusReport {
    pub fn new(fr: &Frobenius) -> Self {
        let spec = &fr.spec;
        let dd = degrees(spec);
        let f = &fr.potential;
        FrobeniusReport {
            schema: SCHEMA,
            group: group(spec),
            degrees: dd.d.iter().map(render_q).collect(),
            duality: dd.dual.iter().map(|j| j + 1).collect(),
            g_y: rows(&fr.g_y),
            eta_y: rows(&fr.eta_y),
            flat_coords: FlatReport { chart: "z", t: fr.flat.render() },
            g_t: rows(&fr.g_t),
            potential: PotentialReport {
                polynomial: f.vars.render(&f.poly),
                log_coeff: render_q(&f.log_coeff),
                log_var: f.vars.name(f.log_var).to_string(),
            },
            euler_field: EulerReport { chart: "t", components: f.euler.components(&f.vars).iter().map(|p| f.vars.render(p)).collect() },
            checks: None,
            lg: None,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let (l, k) = (self.group.l, self.group.k);
        let _ = writeln!(s, "group W^({},{})(A_{l})  l = {l}  k = {k}", k, k + 1);
        let _ = writeln!(s, "degrees   {}", self.degrees.join(", "));
        let _ = writeln!(s, "duality   {}", self.duality.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", "));
        matrix(&mut s, "g(y)", &self.g_y);
        matrix(&mut s, "eta(y)", &self.eta_y);
        let _ = writeln!(s, "flat coordinates ({}-chart)", self.flat_coords.chart);
        for (a, t) in self.flat_coords.t.iter().enumerate() {
            let _ = writeln!(s, "  t{} = {t}", a + 1);
        }
        let _ = writeln!(s, "  t{} = z{}, t{} = z{}", l + 1, l + 1, l + 2, l + 2);
        matrix(&mut s, "g(t)", &self.g_t);
        let p = &self.potential;
        let _ = writeln!(s, "F = {} + {}*{v}^2*log({v})", p.polynomial, p.log_coeff, v = p.log_var);
        let terms: Vec<String> = self.euler_field.components.iter().enumerate().filter(|(_, c)| c.as_str() != "0").map(|(i, c)| format!("({c})*d{}", i + 1)).collect();
        let _ = writeln!(s, "E = {}", terms.join(" + "));
        if let Some(c) = &self.checks {
            s.push_str(&checks_text(c));
        }
        if let Some(r) = &self.lg {
            s.push_str(&lg_text(r));
        }
        s
    }
}

pub fn group(spec: &GroupSpec) -> Group {
    Group { l: spec.l, k: spec.k }
}

fn matrix(s: &mut String, name: &str, m: &[Vec<String>]) {
    let _ = writeln!(s, "{name}:");
    for r in m {
        let _ = writeln!(s, "  [{}]", r.join(", "));
    }
}

pub fn checks_text(c: &CheckReport) -> String {
    let mut s = String::new();
    for ch in &c.checks {
        let status = if ch.passed { "pass" } else { "FAIL" };
        let kind = if ch.exact { "exact" } else { "numeric" };
        let _ = writeln!(s, "{status}  {:<20} {kind:<8} residual {:.3e}  {}", ch.name, ch.residual, ch.detail);
    }
    s
}

pub fn lg_text(r: &LgReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "samples {}  rejected {}  euler push-forward {}", r.samples.len(), r.rejected(), r.euler_push_forward);
    let rows: [(&str, fn(&crate::lg::SampleRecord) -> f64); 9] = [
        ("critical residual", |x| x.critical_residual),
        ("quadrature", |x| x.quadrature),
        ("sum identity", |x| x.sum_identity),
        ("pairings", |x| x.pairings),
        ("pullback g", |x| x.pullback_g),
        ("pullback eta", |x| x.pullback_eta),
        ("unity shift", |x| x.unity_shift),
        ("unity", |x| x.unity),
        ("associativity", |x| x.associativity),
    ];
    for (name, f) in rows {
        let _ = writeln!(s, "  {name:<18} worst {:.3e}", r.worst(f));
    }
    for (i, f) in r.failures() {
        let _ = writeln!(s, "  sample {i}: {f} failed");
    }
    for x in r.samples.iter().filter(|x| x.rejected.is_some()) {
        let _ = writeln!(s, "  sample {} rejected: {}", x.index, x.rejected.as_deref().unwrap_or(""));
    }
    let _ = writeln!(s, "{}", if r.passed() { "pass" } else { "FAIL" });
    s
}
