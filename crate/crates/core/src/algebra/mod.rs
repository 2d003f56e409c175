//! Exact arithmetic: rationals, sparse Laurent polynomials, symmetric reduction and linear solving.

pub mod basis;
pub mod linsolve;
pub mod poly;
pub mod rational;
pub mod symmetric;
pub mod vars;

pub use basis::{weighted_basis, ExpRule};
pub use linsolve::{rational_inverse, solve_linear, FracSolution, LinearSystem, PolyMatrix, SparseSolution};
pub use poly::{Homogeneity, LaurentPoly, Mono};
pub use rational::{parse_q, q, q_to_f64, q_to_i64, qi, render_q, Q};
pub use symmetric::{elementary, normalize_torus, sym_expand, sym_reduce};
pub use vars::{VarRole, VarTable};
