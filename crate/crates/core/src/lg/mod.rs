//! Landau–Ginzburg superpotential and its residue Frobenius structure.

pub mod critical;
pub mod comparison;
pub mod phi;
pub mod residue;
pub mod superpotential;

pub use critical::{companion_roots, critical_points, CriticalData};
pub use residue::{residue_metrics, structure_constants_am6, ResidueMetrics};
pub use superpotential::{covering_exponents, from_orbit_point, CPoly, LGPoint, C};
pub use comparison::{lg_check, LgReport, LgTolerances, SampleRecord};
pub use phi::{factorize_phi, PhiChart};
