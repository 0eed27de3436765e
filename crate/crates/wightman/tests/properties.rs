//! Property tests for the structural invariants.

use num_complex::Complex64;
use proptest::prelude::*;
use wightman::correlators::{
    thermal_kernel_inertial, vacuum_kernel_accelerated, vacuum_kernel_inertial,
};
use wightman::geometry::{boost_pushforward, RindlerWedge};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kernels_obey_hermiticity_symmetry(
        dtau in -8.0f64..8.0,
        eps in 1e-6f64..1e-2,
        pick in 0usize..3,
    ) {
        let kernel = match pick {
            0 => vacuum_kernel_inertial(),
            1 => vacuum_kernel_accelerated(1.3).unwrap(),
            _ => thermal_kernel_inertial(2.7).unwrap(),
        };
        let w = kernel.eval(dtau, eps).unwrap();
        let wm = kernel.eval(-dtau, eps).unwrap();
        let scale = w.norm().max(1e-300);
        prop_assert!((wm - w.conj()).norm() <= 1e-10 * scale);
    }

    #[test]
    fn rindler_round_trip_is_identity(
        tau in -3.0f64..3.0,
        x in -0.5f64..4.0,
        y in -2.0f64..2.0,
        z in -2.0f64..2.0,
    ) {
        let wedge = RindlerWedge::new(1.1).unwrap();
        let ev = wedge.to_minkowski(tau, x, y, z).unwrap();
        let back = wedge.to_rindler(ev).unwrap();
        prop_assert!((back[0] - tau).abs() < 1e-12);
        prop_assert!((back[1] - x).abs() < 1e-12);
        prop_assert!(back[2] == y && back[3] == z);
    }

    #[test]
    fn boost_pushforwards_compose_as_a_group(
        t1 in -3.0f64..3.0,
        t2 in -3.0f64..3.0,
        vx in -1.0f64..1.0,
        vt in -1.0f64..1.0,
    ) {
        let a = 0.8;
        let b1 = boost_pushforward(a, t1, 1).unwrap();
        let b2 = boost_pushforward(a, t2, 1).unwrap();
        let composed = b1.compose(&b2).unwrap();
        let v = [vt, vx, 0.25, -0.5];
        let step = b1.apply(&b2.apply(&v).unwrap()).unwrap();
        let direct = composed.apply(&v).unwrap();
        for mu in 0..4 {
            prop_assert!((step[mu] - direct[mu]).abs() < 1e-12 * (1.0 + direct[mu].abs()));
        }
    }

    #[test]
    fn strip_continuation_boundary_matches_regulated_values(
        tau in 0.2f64..4.0,
        pick in 0usize..2,
    ) {
        // σ → 0⁺ recovers the ε → 0 boundary value
        let kernel = match pick {
            0 => vacuum_kernel_accelerated(1.0).unwrap(),
            _ => thermal_kernel_inertial(2.0).unwrap(),
        };
        let boundary = kernel.eval_extrapolated(tau, 1e-7).unwrap();
        let above = kernel.continuation(tau, 1e-7).unwrap();
        prop_assert!((boundary - above).norm() < 1e-5 * boundary.norm());
    }

    #[test]
    fn image_sum_stays_within_tail_bound(
        re in 0.3f64..3.0,
        n_pow in 6u32..10,
    ) {
        let beta = 2.0;
        let n = 1usize << n_pow;
        let z = Complex64::new(re, -1e-6);
        let partial = wightman::correlators::thermal_image_sum_partial(beta, z, n);
        let doubled = wightman::correlators::thermal_image_sum_partial(beta, z, 2 * n);
        let bound = wightman::correlators::thermal_image_tail_bound(beta, n);
        prop_assert!((doubled - partial).norm() < bound);
    }
}
