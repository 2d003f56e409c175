//! Root data of `A_l`, the invariants of `W̃^(k,k+1)(A_l)` and the exact metrics in the y-chart.

pub mod chart;
pub mod invariance;
pub mod metric;
pub mod roots;
pub mod torus;
pub mod zchart;

pub use chart::{t_vars, torus_vars, y_vars, z_vars, Chart, ChartTensor, ChartTensor3, YChartTensor};
pub use invariance::{invariance_spotcheck, invariants_at, InvarianceReport, XPoint};
pub use metric::{christoffel_y, eta_y, metric_g_y};
pub use roots::{build_root_data, degrees, DegreeData, GroupSpec, RootData};
pub use torus::TorusModel;
pub use zchart::{jacobian_zy, to_z_chart, y_poly_to_z};

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(t: &ChartTensor, src: &[&[&str]]) -> bool {
        let mut ok = true;
        for (i, r) in src.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                let want = t.vars.parse(s).unwrap();
                if *t.get(i, j) != want {
                    eprintln!("({},{}) got {} want {}", i + 1, j + 1, t.vars.render(t.get(i, j)), s);
                    ok = false;
                }
            }
        }
        ok
    }

    #[test]
    fn example_a2k1_metric() {
        let spec = GroupSpec::new(2, 1).unwrap();
        let g = metric_g_y(&spec).unwrap();
        assert!(rows(
            &g,
            &[&["2*y2*E1", "3*E1*E2", "y1", "0"], &["3*E1*E2", "2*y1*E2", "0", "y2"], &["y1", "0", "2", "-1"], &["0", "y2", "-1", "2"]]
        ));
        let eta = eta_y(&spec, &g);
        assert!(rows(&eta, &[&["2*E1", "0", "1", "0"], &["0", "2*E2", "0", "1"], &["1", "0", "0", "0"], &["0", "1", "0", "0"]]));
    }

    #[test]
    fn christoffel_a2k1_sample() {
        let spec = GroupSpec::new(2, 1).unwrap();
        let g = metric_g_y(&spec).unwrap();
        let gamma = christoffel_y(&spec, &g).unwrap();
        assert_eq!(*gamma.get(2, 0, 0), g.vars.parse("y2*E1").unwrap());
        assert!(metric::check_sum_rule(&g, &gamma).is_empty());
        assert!(metric::check_connection_identity(&g, &gamma).is_empty());
    }

    #[test]
    fn identity_transform_has_zero_deviation() {
        let spec = GroupSpec::new(3, 1).unwrap();
        let mut rng = invariance::seeded_rng(1);
        let x = invariance::random_xpoint(&spec, &mut rng, 0.2);
        let r = invariance_spotcheck(&spec, &x, 5);
        assert_eq!(r.transforms[0].1, 0.0);
        assert!(r.max_rel_dev < 1e-10, "{:?}", r);
    }
}
