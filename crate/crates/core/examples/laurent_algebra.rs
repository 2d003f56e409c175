//! Exact Laurent polynomial arithmetic, symmetric reduction and a polynomial linear solve.
//!
//! `cargo run --example laurent_algebra`

use wfrob::algebra::{elementary, solve_linear, sym_expand, sym_reduce, PolyMatrix, VarTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = VarTable::symbols("x", 3);
    let p = v.parse("x1^2*x2 - 1/3*x3^-1 + 2")?;
    let q = v.parse("x1 + x3")?;
    println!("p       = {}", v.render(&p));
    println!("p*q     = {}", v.render(&(&p * &q)));
    println!("d/dx3 p = {}", v.render(&p.deriv(2)));

    let e = VarTable::symbols("e", 2);
    let s = e.parse("e1^2 - 2*e2")?;
    let expanded = sym_expand(&s);
    let x = VarTable::symbols("x", 3);
    println!("e1^2 - 2 e2 on the torus x1 x2 x3 = 1: {}", x.render(&expanded));
    println!("reduced back: {}", e.render(&sym_reduce(&expanded, 2)?));
    println!("e2(x1, x2, x3) = {}", x.render(&elementary(3, 2)));

    let y = VarTable::symbols("y", 1);
    let a = PolyMatrix::from_fn(2, 2, 1, |i, j| y.parse([["1", "y1"], ["y1", "y1^2 + 1"]][i][j]).unwrap());
    let b = [y.parse("y1^2 + 1")?, y.parse("y1^3 + 2*y1")?];
    let sol = solve_linear(&a, &b)?.into_polys()?;
    println!("solution: {:?}", sol.iter().map(|p| y.render(p)).collect::<Vec<_>>());
    Ok(())
}
