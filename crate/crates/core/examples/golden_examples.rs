//! Runs the three worked examples through the command-line driver and reports the golden comparison.
//!
//! `cargo run --release --example golden_examples`

use wfrob::cli::run_args;

fn main() {
    for name in ["a2k1", "a3k1", "a3k2"] {
        let o = run_args(["wfrob", "example", name, "--format", "text"]);
        println!("== {name}: exit {}", o.code);
        print!("{}", o.output);
        if let Some(m) = o.message {
            println!("{m}");
        }
    }
}
