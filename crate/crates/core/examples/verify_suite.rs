//! Runs the exact structural suite and the numeric pencil check for one group.
//!
//! `cargo run --release --example verify_suite -- 4 2`

use num_complex::Complex64;
use wfrob::orbit::GroupSpec;
use wfrob::verify::{pencil_flatness_numeric, structural_suite, PencilModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (l, k) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(1));
    let spec = GroupSpec::new(l, k)?;
    let (fr, mut rep) = structural_suite(&spec, 42)?;
    let model = PencilModel::new(&fr.g_y, &fr.eta_y);
    let lambdas = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    rep.push(pencil_flatness_numeric(&model, 42, &lambdas, 5));
    for c in &rep.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        println!("{status}  {:<20} residual {:<10.3e} {:>9.1?}  {}", c.name, c.residual, c.elapsed, c.detail);
    }
    Ok(())
}
