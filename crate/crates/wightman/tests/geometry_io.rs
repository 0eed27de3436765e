//! Curve ingestion from columnar text feeding the transport integrator.

use wightman::geometry::{fermi_walker_transport, tau_grid, CurveData, FourVector};
use wightman::table::{curve_from_table, curve_to_table, curvature_from_table, curvature_to_table};

#[test]
fn tabulated_curve_transports_within_interpolation_budget() {
    // serialize a fine analytic curve, reparse (losing the analytic law), and
    // transport on the interpolated kinematics
    let a = 1.0;
    let analytic = CurveData::uniform_acceleration(a, tau_grid(0.0, 2.0, 2001)).unwrap();
    let text = curve_to_table(&analytic);
    let parsed = curve_from_table(&text).unwrap();

    let tetrad: [FourVector; 4] = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let frame = fermi_walker_transport(&parsed, &tetrad).unwrap();
    // cubic Hermite interpolation of the velocity costs ~h^4 per step
    assert!(frame.max_drift() < 1e-8, "drift {}", frame.max_drift());
    let last = frame.tetrads().last().unwrap();
    let tau = *parsed.taus().last().unwrap();
    assert!((last[0][0] - (a * tau).cosh()).abs() < 1e-6);
    assert!((last[1][1] - (a * tau).cosh()).abs() < 1e-6);
}

#[test]
fn curvature_tables_round_trip_through_text() {
    let taus: Vec<f64> = (0..5).map(|k| k as f64 * 0.5).collect();
    let comps: Vec<_> = taus
        .iter()
        .map(|&t| {
            let mut c = wightman::geometry::CurvatureComponents::default();
            c.r_0i0j[0][0] = 0.1 * t;
            c.r_0i0j[1][2] = -0.05;
            c.r_0i0j[2][1] = -0.05;
            c
        })
        .collect();
    let text = curvature_to_table(&taus, &comps);
    let (taus2, comps2) = curvature_from_table(&text).unwrap();
    assert_eq!(taus, taus2);
    assert_eq!(comps, comps2);

    // attach to a curve
    let curve = CurveData::uniform_acceleration(1.0, taus).unwrap();
    let with = curve.with_curvature(comps).unwrap();
    assert!(with.curvature().is_some());
}
