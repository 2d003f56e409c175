//! Flat coordinates and the potential `F(t)` of the Frobenius structure.
//!
//! `cargo run --release --example potential -- 3 2`

use std::time::Instant;

use wfrob::frobenius::build;
use wfrob::orbit::GroupSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (l, k) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(1));
    let spec = GroupSpec::new(l, k)?;
    let t = Instant::now();
    let fr = build(&spec)?;
    for (a, s) in fr.flat.render().iter().enumerate() {
        println!("t{} = {s}", a + 1);
    }
    println!("t{} = z{}, t{} = z{}", l + 1, l + 1, l + 2, l + 2);
    println!("g(t):");
    for row in fr.g_t.render_rows() {
        println!("  [{}]", row.join(", "));
    }
    println!("F = {}", fr.potential.render());
    if !fr.potential.kernel.is_empty() {
        println!("dropped: {}", fr.potential.kernel.join(", "));
    }
    eprintln!("elapsed {:?}", t.elapsed());
    Ok(())
}
