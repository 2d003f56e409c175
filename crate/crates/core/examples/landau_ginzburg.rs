//! Compares the orbit-space metrics with the residue metrics of the superpotential at random points.
//!
//! `cargo run --release --example landau_ginzburg -- 4 2`

use std::time::Instant;

use wfrob::lg::{lg_check, LgTolerances};
use wfrob::orbit::{eta_y, metric_g_y, GroupSpec};

fn main() -> wfrob::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let specs: Vec<(usize, usize)> = match args[..] {
        [l, k] => vec![(l, k)],
        _ => vec![(2, 1), (3, 1), (3, 2), (4, 2), (5, 3)],
    };
    for (l, k) in specs {
        let spec = GroupSpec::new(l, k)?;
        let start = Instant::now();
        let g = metric_g_y(&spec)?;
        let eta = eta_y(&spec, &g);
        let r = lg_check(&spec, &g, &eta, 42, 20, LgTolerances::default());
        println!("l={l} k={k}  samples={} rejected={} passed={}  ({:.2?})", r.samples.len(), r.rejected(), r.passed(), start.elapsed());
        println!("  quadrature      {:.2e}", r.worst(|s| s.quadrature));
        println!("  sum identity    {:.2e}", r.worst(|s| s.sum_identity));
        println!("  pairings        {:.2e}", r.worst(|s| s.pairings));
        println!("  pullback g      {:.2e}", r.worst(|s| s.pullback_g));
        println!("  pullback eta    {:.2e}", r.worst(|s| s.pullback_eta));
        println!("  unity shift     {:.2e}", r.worst(|s| s.unity_shift));
        println!("  associativity   {:.2e}", r.worst(|s| s.associativity));
        for (i, f) in r.failures() {
            println!("  sample {i}: {f} failed");
        }
        for s in r.samples.iter().filter(|s| s.rejected.is_some()) {
            println!("  sample {} rejected: {}", s.index, s.rejected.as_deref().unwrap_or(""));
        }
    }
    Ok(())
}
