use similar::TextDiff;

use crate::algebra::{LaurentPoly, Q};
use crate::error::{Error, Result};
use crate::frobenius::{Frobenius, Potential};
use crate::orbit::{t_vars, y_poly_to_z, y_vars, z_vars, ChartTensor, GroupSpec};

pub const NAMES: [&str; 3] = ["a2k1", "a3k1", "a3k2"];

pub fn embedded(name: &str) -> Option<&'static str> {
    match name {
        "a2k1" => Some(include_str!("../../golden/a2k1.txt")),
        "a3k1" => Some(include_str!("../../golden/a3k1.txt")),
        "a3k2" => Some(include_str!("../../golden/a3k2.txt")),
        _ => None,
    }
}

/// A transcribed example: matrices as rows of expression strings.
#[derive(Clone, Debug, Default)]
pub struct Golden {
    pub spec: Option<GroupSpec>,
    pub g_y: Vec<Vec<String>>,
    pub eta_y: Vec<Vec<String>>,
    pub eta_z: Vec<Vec<String>>,
    pub flat_chart: String,
    pub flat: Vec<String>,
    pub potential: String,
    pub euler: Vec<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Mismatch(format!("golden file: {}", msg.into()))
}

pub fn parse_golden(text: &str) -> Result<Golden> {
    let mut g = Golden { flat_chart: "z".into(), ..Default::default() };
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, val) = line.split_once('=').ok_or_else(|| bad(format!("no '=' in {line:?}")))?;
        let (key, val) = (key.trim(), val.trim());
        let row = || val.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>();
        match key {
            "group" => {
                let n: Vec<usize> = val.split_whitespace().map(|x| x.parse().map_err(|_| bad("bad group"))).collect::<Result<_>>()?;
                if n.len() != 2 {
                    return Err(bad("group needs l and k"));
                }
                g.spec = Some(GroupSpec::new(n[0], n[1])?);
            }
            "g_y" => g.g_y.push(row()),
            "eta_y" => g.eta_y.push(row()),
            "eta_z" => g.eta_z.push(row()),
            "flat_chart" => g.flat_chart = val.to_string(),
            "flat" => g.flat.push(val.to_string()),
            "F" => g.potential = val.to_string(),
            "euler" => g.euler = row(),
            _ => return Err(bad(format!("unknown key {key}"))),
        }
    }
    if g.spec.is_none() {
        return Err(bad("missing group"));
    }
    Ok(g)
}

/// Splits `poly + c*s^2*log(s)` into the polynomial text and the pair `(c, s)`.
fn split_log(s: &str) -> Result<(String, Option<(String, String)>)> {
    let Some(at) = s.find("log(") else { return Ok((s.to_string(), None)) };
    let close = s[at..].find(')').ok_or_else(|| bad("unclosed log"))? + at;
    let var = s[at + 4..close].trim().to_string();
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate().take(at) {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' && bytes[i - 1] != b'(' => start = i,
            _ => {}
        }
    }
    let term = s[start..close + 1].trim();
    let factor = term.replace(&format!("*log({var})"), "").replace(&format!("log({var})*"), "");
    let rest = format!("{} {}", &s[..start], &s[close + 1..]);
    let rest = if rest.trim().is_empty() { "0".to_string() } else { rest };
    Ok((rest, Some((factor, var))))
}

fn tensor_lines(tag: &str, t: &ChartTensor) -> Vec<String> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(format!("{tag}[{}][{}] = {}", i + 1, j + 1, t.vars.render(t.get(i, j))));
        }
    }
    out
}

fn golden_tensor_lines(tag: &str, rows: &[Vec<String>], vars: &crate::algebra::VarTable) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let p = vars.parse(s).map_err(|e| bad(format!("{tag}[{}][{}]: {e}", i + 1, j + 1)))?;
            out.push(format!("{tag}[{}][{}] = {}", i + 1, j + 1, vars.render(&p)));
        }
    }
    Ok(out)
}

fn third_lines(f: &Potential) -> Vec<String> {
    let n = f.spec.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                out.push(format!("d3F[{}][{}][{}] = {}", a + 1, b + 1, c + 1, f.vars.render(&f.third(a, b, c))));
            }
        }
    }
    out
}

fn euler_lines(spec: &GroupSpec, comps: &[LaurentPoly]) -> Vec<String> {
    let tv = t_vars(spec);
    comps.iter().enumerate().map(|(i, c)| format!("E[{}] = {}", i + 1, tv.render(c))).collect()
}

/// Canonical lines of the computed objects that the golden file covers.
pub fn computed_lines(fr: &Frobenius, g: &Golden) -> Vec<String> {
    let mut out = tensor_lines("g_y", &fr.g_y);
    out.extend(tensor_lines("eta_y", &fr.eta_y));
    if !g.eta_z.is_empty() {
        out.extend(tensor_lines("eta_z", &fr.eta_z));
    }
    out.extend(fr.flat.t.iter().enumerate().map(|(a, p)| format!("t{} = {}", a + 1, fr.flat.vars.render(p))));
    out.extend(third_lines(&fr.potential));
    out.extend(euler_lines(&fr.spec, &fr.potential.euler.components(&fr.potential.vars)));
    out
}

/// Canonical lines of the golden file; the potential enters only through its third derivatives.
pub fn golden_lines(fr: &Frobenius, g: &Golden) -> Result<Vec<String>> {
    let spec = g.spec.as_ref().unwrap();
    let (yv, zv, tv) = (y_vars(spec), z_vars(spec), t_vars(spec));
    let mut out = golden_tensor_lines("g_y", &g.g_y, &yv)?;
    out.extend(golden_tensor_lines("eta_y", &g.eta_y, &yv)?);
    if !g.eta_z.is_empty() {
        out.extend(golden_tensor_lines("eta_z", &g.eta_z, &zv)?);
    }
    for (a, s) in g.flat.iter().enumerate() {
        let p = match g.flat_chart.as_str() {
            "y" => y_poly_to_z(spec, &yv.parse(s).map_err(|e| bad(format!("flat t{}: {e}", a + 1)))?),
            "z" => zv.parse(s).map_err(|e| bad(format!("flat t{}: {e}", a + 1)))?,
            other => return Err(bad(format!("unknown chart {other}"))),
        };
        out.push(format!("t{} = {}", a + 1, zv.render(&p)));
    }
    let (poly, log) = split_log(&g.potential)?;
    let mut f = fr.potential.clone();
    f.poly = tv.parse(&poly).map_err(|e| bad(format!("F: {e}")))?;
    match log {
        Some((factor, var)) => {
            let idx = tv.index(&var).ok_or_else(|| bad(format!("log of unknown variable {var}")))?;
            let c = tv.parse(&factor).map_err(|e| bad(format!("log factor: {e}")))?;
            let mut e = vec![0; tv.len()];
            e[idx] = 2;
            let s2 = LaurentPoly::term(tv.len(), &e, Q::from_integer(1.into()));
            if c.len() != 1 || c.terms().next().map(|(m, _)| m.to_vec()) != Some(e.clone()) {
                return Err(bad(format!("log term {factor} is not a multiple of {}", tv.render(&s2))));
            }
            f.log_coeff = c.coeff(&e);
            f.log_var = idx;
        }
        None => f.log_coeff = Q::from_integer(0.into()),
    }
    out.extend(third_lines(&f));
    let comps: Vec<LaurentPoly> = g.euler.iter().map(|s| tv.parse(s).map_err(|e| bad(format!("euler: {e}")))).collect::<Result<_>>()?;
    out.extend(euler_lines(spec, &comps));
    Ok(out)
}

/// Unified diff of the golden against the computed rendering, or `None` on an exact match.
pub fn golden_diff(fr: &Frobenius, g: &Golden) -> Result<Option<String>> {
    let want = golden_lines(fr, g)?.join("\n") + "\n";
    let got = computed_lines(fr, g).join("\n") + "\n";
    if want == got {
        return Ok(None);
    }
    let diff = TextDiff::from_lines(&want, &got);
    Ok(Some(diff.unified_diff().context_radius(1).header("golden", "computed").to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_term_is_split_off() {
        let (p, l) = split_log("1/2*t1^2*t4 - t2*exp(t4-t3) + 1/2*t2^2*log(t2)").unwrap();
        assert_eq!(p.trim(), "1/2*t1^2*t4 - t2*exp(t4-t3)");
        assert_eq!(l, Some(("+ 1/2*t2^2".to_string(), "t2".to_string())));
        let (p, l) = split_log("t1^3").unwrap();
        assert_eq!((p.as_str(), l), ("t1^3", None));
    }

    #[test]
    fn all_golden_files_parse() {
        for name in NAMES {
            let g = parse_golden(embedded(name).unwrap()).unwrap();
            let n = g.spec.unwrap().dim();
            assert_eq!(g.g_y.len(), n);
            assert!(g.g_y.iter().chain(&g.eta_y).all(|r| r.len() == n));
            assert_eq!(g.flat.len(), n - 2);
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(parse_golden("group = 2 1\nfoo = 1").is_err());
        assert!(parse_golden("g_y = 1").is_err());
    }
}
