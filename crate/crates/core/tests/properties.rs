//! Property tests for invariants of pure-pole primitives and the
//! projective model.

use darboux_core::minkowski::*;
use darboux_core::poleform::*;
use darboux_core::projective::*;
use nalgebra::DVector;
use proptest::prelude::*;

fn arb_vec() -> impl Strategy<Value = MinkVector> {
    proptest::collection::vec(-2.0..2.0f64, 4).prop_map(DVector::from_vec)
}

fn arb_pure() -> impl Strategy<Value = PoleFormData> {
    (arb_vec(), arb_vec()).prop_filter_map("degenerate wedge or borderline signature", |(v, w)| {
        let xi = PurePoleForm::new(v, w).ok()?;
        if gram_determinant(&xi.v, &xi.w).abs() < 1e-3 {
            return None;
        }
        classify_pure_pole_form(&xi, DEFAULT_TOL).ok()
    })
}

proptest! {
    #[test]
    fn closed_form_is_lorentz_and_a_cocycle(data in arb_pure(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let p = 0.8;
        let t = p * 10f64.powf(a);
        let s = p * 10f64.powf(b);
        let g_pt = pure_primitive_closed_form(&data, p, t).unwrap();
        let g_ts = pure_primitive_closed_form(&data, t, s).unwrap();
        let g_ps = pure_primitive_closed_form(&data, p, s).unwrap();
        let scale = g_pt.norm() * g_ts.norm();
        prop_assert!((&g_pt * &g_ts - &g_ps).norm() <= 1e-9 * scale);
        prop_assert!(lorentz_defect(&g_pt) <= 1e-9 * g_pt.norm().powi(2));
    }

    #[test]
    fn stereo_lift_round_trips(x in -50.0..50.0f64, y in -50.0..50.0f64) {
        let ch = StereoChart::standard(4).unwrap();
        let pt = DVector::from_row_slice(&[x, y]);
        let lifted = ch.lift(&pt).unwrap();
        prop_assert!(is_lightlike(&lifted, 1e-12));
        let back = ch.project(&ProjectivePoint::new(lifted).unwrap()).unwrap();
        prop_assert!((back - pt).norm() <= 1e-10 * (1.0 + x.abs() + y.abs()));
    }

    #[test]
    fn projective_distance_ignores_scale(u in arb_vec(), v in arb_vec(), s in 0.01..100.0f64) {
        prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
        let d1 = vector_line_distance(&u, &v).unwrap();
        let d2 = vector_line_distance(&(&u * s), &(&v * -s)).unwrap();
        prop_assert!((d1 - d2).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&d1));
    }
}
