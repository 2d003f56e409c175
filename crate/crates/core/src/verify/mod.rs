//! Independent checks of the Frobenius structure: WDVV, unity and Euler field, the intersection
//! form, and numeric flatness of the pencil.

pub mod checks;
pub mod pencil;
pub mod structure;
pub mod wdvv;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use checks::{corrupt_potential, intersection_check, quasi_homogeneity_check, structural_suite, structural_suite_with, unity_and_euler_check};
pub use pencil::{pencil_flatness_numeric, PencilModel};
pub use structure::{structure_constants, StructureConstants};
pub use wdvv::{wdvv_check, wdvv_exact, wdvv_numeric};

/// Outcome of one named check. Exact checks report a residual of zero or the largest
/// offending coefficient; numeric checks report the worst magnitude.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub exact: bool,
    #[serde(serialize_with = "crate::json::sig17")]
    pub residual: f64,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    pub fn exact(name: &str, failure: Option<(f64, String)>) -> Self {
        let (passed, residual, detail) = match failure {
            None => (true, 0.0, String::new()),
            Some((r, d)) => (false, r, d),
        };
        Check { name: name.to_string(), passed, exact: true, residual, detail, elapsed: Duration::ZERO }
    }

    pub fn numeric(name: &str, residual: f64, tol: f64, detail: String) -> Self {
        Check { name: name.to_string(), passed: residual < tol, exact: false, residual, detail, elapsed: Duration::ZERO }
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Orders checks by name so that reports do not depend on scheduling.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }
}
