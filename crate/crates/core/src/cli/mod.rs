//! The `wfrob` command line: configuration, reports and the golden examples.

pub mod golden;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::Error;
use crate::frobenius::build;
use crate::lg::{lg_check, LgTolerances};
use crate::orbit::{eta_y, metric_g_y, GroupSpec};
use crate::verify::{corrupt_potential, pencil_flatness_numeric, structural_suite_with, CheckReport, PencilModel};
use report::{checks_text, group, lg_text, FrobeniusReport, LgOnlyReport, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EXACTNESS: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_LG: i32 = 5;
pub const EXIT_REJECTION: i32 = 6;
pub const EXIT_GOLDEN: i32 = 7;

pub const PENCIL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Tolerance override `NAME=VALUE`, repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub corrupt: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Build the Frobenius structure and print its report.
    Build(Common),
    /// Run the verification suite.
    Verify(Common),
    /// Compare with the Landau–Ginzburg superpotential at random points.
    LgCheck(Common),
    /// Build one of the worked examples and diff it against its golden file.
    Example {
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Debug, Parser)]
#[command(name = "wfrob", version, about = "Frobenius structures on orbit spaces of extended affine Weyl groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Build,
    Verify,
    LgCheck,
    Example(String),
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub action: Action,
    pub spec: GroupSpec,
    pub format: Format,
    pub seed: u64,
    pub samples: usize,
    pub tol: Vec<(String, f64)>,
    pub out: Option<PathBuf>,
    pub corrupt: bool,
}

/// What a run produced: the exit code, the report and a message for stderr.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub message: Option<String>,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome { code, output: String::new(), message: Some(msg.into()) }
    }
}

const TOL_NAMES: [&str; 10] =
    ["pencil", "critical_residual", "quadrature", "sum_identity", "pairings", "pullback", "unity_shift", "associativity", "max_rejection", "wdvv"];

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, val) = s.split_once('=').ok_or_else(|| format!("--tol expects NAME=VALUE, got {s:?}"))?;
    if !TOL_NAMES.contains(&name) {
        return Err(format!("unknown tolerance {name:?}; known: {}", TOL_NAMES.join(", ")));
    }
    let v = match val.split_once('/') {
        Some((a, b)) => a.trim().parse::<f64>().ok().zip(b.trim().parse::<f64>().ok()).map(|(a, b)| a / b),
        None => val.trim().parse::<f64>().ok(),
    };
    match v {
        Some(v) if v.is_finite() && v > 0.0 => Ok((name.to_string(), v)),
        _ => Err(format!("tolerance {name} must be a positive number, got {val:?}")),
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, String> {
        let (action, c) = match self.command {
            Command::Build(c) => (Action::Build, c),
            Command::Verify(c) => (Action::Verify, c),
            Command::LgCheck(c) => (Action::LgCheck, c),
            Command::Example { name, common } => (Action::Example(name), common),
        };
        let spec = match &action {
            Action::Example(name) => {
                let text = golden::embedded(name).ok_or_else(|| format!("unknown example {name:?}; known: {}", golden::NAMES.join(", ")))?;
                golden::parse_golden(text).map_err(|e| e.to_string())?.spec.unwrap()
            }
            _ => {
                let (l, k) = (c.l.ok_or("--l is required")?, c.k.ok_or("--k is required")?);
                GroupSpec::new(l, k).map_err(|e| e.to_string())?
            }
        };
        if action == Action::LgCheck && c.samples == 0 {
            return Err("--samples must be positive".into());
        }
        let tol = c.tol.iter().map(|s| parse_tol(s)).collect::<Result<_, _>>()?;
        Ok(RunConfig { action, spec, format: c.format, seed: c.seed, samples: c.samples, tol, out: c.out, corrupt: c.corrupt })
    }
}

impl RunConfig {
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tol.iter().rev().find(|(n, _)| n == name).map(|(_, v)| *v).unwrap_or(default)
    }

    pub fn lg_tolerances(&self) -> LgTolerances {
        let d = LgTolerances::default();
        LgTolerances {
            critical_residual: self.tol("critical_residual", d.critical_residual),
            quadrature: self.tol("quadrature", d.quadrature),
            sum_identity: self.tol("sum_identity", d.sum_identity),
            pairings: self.tol("pairings", d.pairings),
            pullback: self.tol("pullback", d.pullback),
            unity_shift: self.tol("unity_shift", d.unity_shift),
            associativity: self.tol("associativity", d.associativity),
            max_rejection: self.tol("max_rejection", d.max_rejection),
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidSpec(_) => EXIT_INVALID,
        _ => EXIT_EXACTNESS,
    }
}

fn render<T: serde::Serialize>(cfg: &RunConfig, value: &T, text: impl FnOnce() -> String) -> String {
    match cfg.format {
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
        Format::Text => text(),
    }
}

#[derive(serde::Serialize)]
struct VerifyReport<'a> {
    schema: u32,
    group: report::Group,
    passed: bool,
    checks: &'a CheckReport,
}

/// Runs one configured command.
pub fn run(cfg: &RunConfig) -> Outcome {
    match &cfg.action {
        Action::Build => run_build(cfg),
        Action::Verify => run_verify(cfg),
        Action::LgCheck => run_lg(cfg),
        Action::Example(name) => run_example(cfg, name),
    }
}

fn run_build(cfg: &RunConfig) -> Outcome {
    let mut fr = match build(&cfg.spec) {
        Ok(fr) => fr,
        Err(e) => return Outcome::fail(error_code(&e), e.to_string()),
    };
    if cfg.corrupt {
        fr.potential = corrupt_potential(&fr.potential, cfg.seed);
    }
    let rep = FrobeniusReport::new(&fr);
    Outcome { code: EXIT_OK, output: render(cfg, &rep, || rep.text()), message: None }
}

pub fn verify_report(cfg: &RunConfig) -> crate::Result<CheckReport> {
    let (fr, mut rep) = structural_suite_with(&cfg.spec, cfg.seed, cfg.corrupt.then_some(cfg.seed))?;
    let model = PencilModel::new(&fr.g_y, &fr.eta_y);
    let lambdas = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    let mut pencil = pencil_flatness_numeric(&model, cfg.seed, &lambdas, 5);
    let tol = cfg.tol("pencil", PENCIL_TOL);
    pencil.passed = pencil.residual < tol;
    rep.push(pencil);
    if let Some(t) = cfg.tol.iter().rev().find(|(n, _)| n == "wdvv").map(|(_, v)| *v) {
        for c in rep.checks.iter_mut().filter(|c| c.name == "wdvv_numeric") {
            c.passed = c.residual < t;
        }
    }
    Ok(rep.sorted())
}

fn run_verify(cfg: &RunConfig) -> Outcome {
    let rep = match verify_report(cfg) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(error_code(&e), e.to_string()),
    };
    let passed = rep.passed();
    let v = VerifyReport { schema: SCHEMA, group: group(&cfg.spec), passed, checks: &rep };
    let output = render(cfg, &v, || checks_text(&rep));
    match rep.first_failure() {
        None => Outcome { code: EXIT_OK, output, message: None },
        Some(c) => Outcome { code: EXIT_VERIFY, output, message: Some(format!("check {} failed: {}", c.name, c.detail)) },
    }
}

fn run_lg(cfg: &RunConfig) -> Outcome {
    let g = match metric_g_y(&cfg.spec) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(error_code(&e), e.to_string()),
    };
    let eta = eta_y(&cfg.spec, &g);
    let r = lg_check(&cfg.spec, &g, &eta, cfg.seed, cfg.samples, cfg.lg_tolerances());
    let passed = r.passed();
    let out = LgOnlyReport { schema: SCHEMA, group: group(&cfg.spec), passed, rejected: r.rejected(), lg: r };
    let output = render(cfg, &out, || lg_text(&out.lg));
    let r = &out.lg;
    if !r.rejection_ok() {
        return Outcome { code: EXIT_REJECTION, output, message: Some(format!("{} of {} samples rejected", r.rejected(), r.samples.len())) };
    }
    if !passed {
        let what = r.failures().first().map(|(i, f)| format!("sample {i}: {f}")).unwrap_or_else(|| "Euler field push-forward".into());
        return Outcome { code: EXIT_LG, output, message: Some(format!("comparison failed at {what}")) };
    }
    Outcome { code: EXIT_OK, output, message: None }
}

fn run_example(cfg: &RunConfig, name: &str) -> Outcome {
    let g = match golden::embedded(name).map(golden::parse_golden) {
        Some(Ok(g)) => g,
        Some(Err(e)) => return Outcome::fail(EXIT_GOLDEN, e.to_string()),
        None => return Outcome::fail(EXIT_INVALID, format!("unknown example {name}")),
    };
    let mut fr = match build(&cfg.spec) {
        Ok(fr) => fr,
        Err(e) => return Outcome::fail(error_code(&e), e.to_string()),
    };
    if cfg.corrupt {
        fr.potential = corrupt_potential(&fr.potential, cfg.seed);
    }
    let rep = FrobeniusReport::new(&fr);
    let output = render(cfg, &rep, || rep.text());
    match golden::golden_diff(&fr, &g) {
        Ok(None) => Outcome { code: EXIT_OK, output, message: None },
        Ok(Some(diff)) => Outcome { code: EXIT_GOLDEN, output, message: Some(diff) },
        Err(e) => Outcome { code: EXIT_GOLDEN, output, message: Some(e.to_string()) },
    }
}

/// Parses arguments, runs, and returns the outcome; argument errors map to exit code 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return Outcome { code, output: if code == EXIT_OK { e.to_string() } else { String::new() }, message: (code != EXIT_OK).then(|| e.to_string()) };
        }
    };
    match cli.into_config() {
        Ok(cfg) => run(&cfg),
        Err(msg) => Outcome::fail(EXIT_INVALID, msg),
    }
}
