//! Perturbs one coefficient of `F` and shows that WDVV and the golden comparison both notice.
//!
//! `cargo run --release --example negative_control -- a3k1`

use wfrob::cli::golden::{embedded, golden_diff, parse_golden};
use wfrob::frobenius::build;
use wfrob::orbit::GroupSpec;
use wfrob::verify::{corrupt_potential, structure_constants, wdvv_exact};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "a2k1".into());
    let (l, k) = match name.as_str() {
        "a2k1" => (2, 1),
        "a3k1" => (3, 1),
        "a3k2" => (3, 2),
        _ => return Err(format!("unknown example {name}").into()),
    };
    let golden = parse_golden(embedded(&name).unwrap())?;
    let fr = build(&GroupSpec::new(l, k)?)?;
    println!("clean:     wdvv residual {:.3e}", wdvv_exact(&structure_constants(&fr.potential)).residual);
    for seed in 0..3 {
        let mut bad = fr.clone();
        bad.potential = corrupt_potential(&fr.potential, seed);
        let c = wdvv_exact(&structure_constants(&bad.potential));
        println!("seed {seed}:    wdvv residual {:.3e}  {}", c.residual, c.detail);
        if let Some(d) = golden_diff(&bad, &golden)? {
            print!("{d}");
        }
    }
    Ok(())
}
