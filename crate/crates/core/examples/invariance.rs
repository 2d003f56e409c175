//! Evaluates the invariants `ỹ_j` at random points and applies the generators of `W̃`.
//!
//! `cargo run --release --example invariance -- 4 2`

use wfrob::orbit::invariance::{random_xpoint, seeded_rng};
use wfrob::orbit::{invariance_spotcheck, GroupSpec};

fn main() -> wfrob::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (l, k) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(1));
    let spec = GroupSpec::new(l, k)?;
    let mut rng = seeded_rng(42);
    for i in 0..5 {
        let x = random_xpoint(&spec, &mut rng, 0.2);
        let r = invariance_spotcheck(&spec, &x, i);
        println!("point {i}  max deviation {:.2e}", r.max_rel_dev);
        for (name, dev) in &r.transforms {
            println!("  {name:<20} {dev:.2e}");
        }
    }
    Ok(())
}
