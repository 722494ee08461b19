use acsusy_core::error::Error;
use acsusy_core::groundstate::{
    a_sq_closed_form, build_ground_state, figure1_profile, figure2_curve, normalization_by_quadrature,
    ratio_closed_form, GroundState, RadialGrid,
};
use acsusy_core::model::CylinderConfig;
use proptest::prelude::*;

fn gs(b: f64, r0: f64) -> GroundState {
    build_ground_state(&CylinderConfig::dimensionless(b, r0).unwrap()).unwrap()
}

/// Fourth-order central difference.
fn derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

#[test]
fn frozen_normalization_and_ratio() {
    // 30-digit values of the closed forms
    let fixtures = [
        (1.5, 0.330_137_543_411_051_68, 0.861_650_750_366_604_8),
        (2.0, 0.560_732_835_284_310_3, 0.313_035_285_499_331_3),
        (4.0, 1.265_513_316_430_951_5, 0.024_876_480_485_032_064),
    ];
    for &(b, a_sq, ratio) in &fixtures {
        assert!((a_sq_closed_form(b, 1.0) / a_sq - 1.0).abs() < 1e-14, "b = {b}");
        assert!((ratio_closed_form(b) / ratio - 1.0).abs() < 1e-14, "b = {b}");
    }
}

#[test]
fn closed_form_agrees_with_quadrature() {
    for &b in &[1.5, 2.0, 4.0] {
        for &r0 in &[0.5, 1.0, 3.0] {
            let cfg = CylinderConfig::dimensionless(b, r0).unwrap();
            let g = build_ground_state(&cfg).unwrap();
            let q = normalization_by_quadrature(&cfg).unwrap();
            assert!(
                (g.a_sq / q - 1.0).abs() <= 1e-10,
                "b = {b}, r0 = {r0}: {} vs {q}",
                g.a_sq
            );

            let inside = g.window_by_quadrature(0.0, r0).unwrap();
            let outside = g.window_by_quadrature(r0, f64::INFINITY).unwrap();
            assert!((inside - g.w_inside()).abs() <= 1e-10);
            assert!((outside - g.w_outside()).abs() <= 1e-10);
            assert!((outside / inside / g.ratio_outside_inside() - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn first_order_equations_hold() {
    // A† annihilates the state: φ' + βrφ = 0 inside and φ' + (b/r)φ = 0 outside
    for &b in &[1.2, 2.0, 4.0] {
        let g = gs(b, 1.0);
        let beta = g.cfg.beta();
        let phi = |r: f64| g.wavefunction(r).unwrap();
        let h = 1e-3;
        for i in 0..=200 {
            let r = 2.0 * h + (1.0 - 4.0 * h) * i as f64 / 200.0;
            let res = derivative(phi, r, h) + beta * r * phi(r);
            assert!(
                res.abs() <= 1e-9 * g.amplitude(),
                "interior residual {res:e} at r = {r}"
            );
        }
        for i in 0..=200 {
            let r = 1.0 + 2.0 * h + 9.0 * i as f64 / 200.0;
            let res = derivative(phi, r, h) + b / r * phi(r);
            let scale = g.b_const * r.powf(-b - 1.0);
            assert!(res.abs() <= 1e-9 * scale, "exterior residual {res:e} at r = {r}");
        }
    }
}

#[test]
fn derivative_continuous_at_r0() {
    let g = gs(2.0, 1.5);
    let r0 = 1.5;
    let phi = |r: f64| g.wavefunction(r).unwrap();
    let h = 1e-4;
    let left = (3.0 * phi(r0) - 4.0 * phi(r0 - h) + phi(r0 - 2.0 * h)) / (2.0 * h);
    let right = (-3.0 * phi(r0) + 4.0 * phi(r0 + h) - phi(r0 + 2.0 * h)) / (2.0 * h);
    assert!((left - right).abs() <= 1e-6 * left.abs());
}

#[test]
fn constraint_gate() {
    for &b in &[0.5, 0.9, 1.0] {
        let cfg = CylinderConfig::dimensionless(b, 1.0).unwrap();
        let e = build_ground_state(&cfg).unwrap_err();
        assert!(matches!(e, Error::UnbrokenSusyViolation { report } if report.b == b));
        assert!(e.to_string().contains("beta*r0^2 > 1"));
        assert!(normalization_by_quadrature(&cfg).is_err());
    }
    let e = figure1_profile(&[2.0, 0.8], &RadialGrid::default()).unwrap_err();
    assert!(e.to_string().contains("0.8"));
    assert!(figure2_curve(0.5, 3.0, 10).is_err());
}

#[test]
fn norm_vanishes_linearly_near_threshold() {
    let small = a_sq_closed_form(1.0 + 1e-6, 1.0);
    let smaller = a_sq_closed_form(1.0 + 1e-7, 1.0);
    assert!((small / smaller - 10.0).abs() < 1e-4);
}

#[test]
fn flattening_towards_threshold() {
    let table = figure1_profile(&[4.0, 2.0, 1.2], &RadialGrid::default()).unwrap();
    let i3 = table.r_over_r0.iter().position(|&x| (x - 3.0).abs() < 1e-12).unwrap();
    let ratios: Vec<f64> = table.columns.iter().map(|c| c.density[0] / c.density[i3]).collect();
    assert!(ratios[0] > ratios[1] && ratios[1] > ratios[2], "{ratios:?}");
}

#[test]
fn figure2_reference_and_monotone() {
    let rows = figure2_curve(1.01, 6.0, 500).unwrap();
    assert!(rows.windows(2).all(|w| w[1].r_beta < w[0].r_beta));
    let g = gs(2.0, 1.0);
    assert!((g.ratio_outside_inside() - 0.3130).abs() < 5e-5);
}

proptest! {
    #[test]
    fn density_monotone_continuous_normalized(b in 1.001f64..10.0, r0 in 0.2f64..5.0) {
        let g = gs(b, r0);
        let mut prev = f64::INFINITY;
        for i in 0..400 {
            let d = g.density(r0 * 5.0 * i as f64 / 399.0).unwrap();
            prop_assert!(d <= prev);
            prev = d;
        }
        let below = g.density(r0).unwrap();
        let above = g.density(r0 * (1.0 + f64::EPSILON)).unwrap();
        prop_assert!((below - above).abs() <= 1e-12 * below);
        let total = g.probability_window(0.0, f64::INFINITY).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_strictly_decreasing(b in 1.001f64..6.0, db in 1e-3f64..0.5) {
        prop_assert!(ratio_closed_form(b + db) < ratio_closed_form(b));
    }

    #[test]
    fn peak_grows_with_b(b in 1.001f64..9.5, db in 1e-3f64..0.5) {
        prop_assert!(a_sq_closed_form(b + db, 1.0) > a_sq_closed_form(b, 1.0));
    }
}
