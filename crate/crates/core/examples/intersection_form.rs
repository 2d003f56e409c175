//! Prints `g(y)`, `η(y)` and a few Christoffel symbols for `W̃^(k,k+1)(A_l)`.
//!
//! `cargo run --release --example intersection_form -- 3 1`

use std::time::Instant;

use wfrob::orbit::{christoffel_y, eta_y, metric_g_y, GroupSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (l, k) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(1));
    let spec = GroupSpec::new(l, k)?;
    let t = Instant::now();
    let g = metric_g_y(&spec)?;
    let eta = eta_y(&spec, &g);
    println!("g(y):");
    for row in g.render_rows() {
        println!("  [{}]", row.join(", "));
    }
    println!("eta(y):");
    for row in eta.render_rows() {
        println!("  [{}]", row.join(", "));
    }
    let gamma = christoffel_y(&spec, &g)?;
    let n = spec.dim();
    let nonzero = gamma.data.iter().filter(|p| !p.is_zero()).count();
    println!("Gamma: {nonzero} of {} entries nonzero", n * n * n);
    println!("Gamma_{}^({},{}) = {}", l + 1, k, k, gamma.vars.render(gamma.get(l, k - 1, k - 1)));
    eprintln!("elapsed {:?}", t.elapsed());
    Ok(())
}
