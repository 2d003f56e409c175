//! Flat coordinates, the flat chart and the potential of the Frobenius structure.

mod ansatz;
pub mod euler;
pub mod flat;
pub mod potential;
pub mod tchart;

pub use euler::{euler_field, push_forward_consistent, EulerField};
pub use flat::{flat_coordinates, FlatCoords};
pub use potential::{potential, Potential};
pub use tchart::{eta_t_tensor, invert_flat, metric_g_t, TChartTensor};

use crate::error::Result;
use crate::orbit::{eta_y, metric_g_y, to_z_chart, ChartTensor, GroupSpec};

/// Every object of the pipeline from the intersection form to the potential.
#[derive(Clone, Debug)]
pub struct Frobenius {
    pub spec: GroupSpec,
    pub g_y: ChartTensor,
    pub eta_y: ChartTensor,
    pub g_z: ChartTensor,
    pub eta_z: ChartTensor,
    pub flat: FlatCoords,
    pub g_t: TChartTensor,
    pub potential: Potential,
}

pub fn build(spec: &GroupSpec) -> Result<Frobenius> {
    let g_y = metric_g_y(spec)?;
    let eta = eta_y(spec, &g_y);
    let g_z = to_z_chart(spec, &g_y);
    let eta_z = to_z_chart(spec, &eta);
    let flat = flat_coordinates(spec, &eta_z)?;
    let g_t = metric_g_t(&flat, &g_z)?;
    let potential = potential(spec, &g_t, &flat.eta_t)?;
    Ok(Frobenius { spec: *spec, g_y, eta_y: eta, g_z, eta_z, flat, g_t, potential })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2k1_flat_and_potential() {
        let spec = GroupSpec::new(2, 1).unwrap();
        let fr = build(&spec).unwrap();
        let v = &fr.flat.vars;
        assert_eq!(fr.flat.t[0], v.parse("z1 - E2").unwrap());
        assert_eq!(fr.flat.t[1], v.parse("z2 + E2 - E1").unwrap());
        let f = &fr.potential;
        assert_eq!(f.poly, f.vars.parse("1/2*t1^2*t4 + t1*t2*t3 + 1/2*t2^2*t3 + E1*E2 - t2*E1 + t2*E2").unwrap());
        assert_eq!(f.log_coeff, crate::algebra::q(1, 2));
        assert_eq!(f.log_var, 1);
        assert!(f.kernel.iter().all(|m| m == "t2^2"), "{:?}", f.kernel);
    }
}
