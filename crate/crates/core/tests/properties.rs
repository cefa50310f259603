//! Property-style invariants of the fields and numerical kernels.

mod common;

use approx::{assert_abs_diff_eq, assert_relative_eq};
use common::{simpson_fixed, TinyRng};
use proptest::prelude::*;
use vaporfront::numerics::{erf, erfc, integrate, ode_solve, OdeStepperConfig};
use vaporfront::physics::{
    saturation_pressure, temperature, viscosity, BoundaryConditions, FluidParams, MediumParams,
};
use vaporfront::{asymptotic_pressure, pressure, velocity, PressureProfile};

fn medium() -> MediumParams {
    MediumParams::new(0.1, 1e-6).unwrap()
}

fn fluid() -> FluidParams {
    FluidParams::new(5304.0, 2339.0, 1.4e-5, 120.0).unwrap()
}

fn bc() -> BoundaryConditions {
    BoundaryConditions::new(433.15, 293.15, 1.5e5, 1.0e5, 1e-3).unwrap()
}

proptest! {
    /// Temperature falls with depth at fixed time (finite differences).
    #[test]
    fn temperature_non_increasing_in_x(
        x in 1e-6f64..0.09,
        t in 1e-3f64..1e7,
        step in 1e-5f64..1e-3,
    ) {
        let (m, b) = (medium(), bc());
        let here = temperature(&m, &b, x, t).unwrap();
        let deeper = temperature(&m, &b, x + step, t).unwrap();
        prop_assert!(deeper <= here + 1e-12);
    }

    /// Temperature rises with time at fixed positive depth.
    #[test]
    fn temperature_non_decreasing_in_t(
        x in 1e-6f64..0.1,
        t in 1e-3f64..1e7,
        step in 1e-3f64..1e3,
    ) {
        let (m, b) = (medium(), bc());
        let now = temperature(&m, &b, x, t).unwrap();
        let later = temperature(&m, &b, x, t + step).unwrap();
        prop_assert!(later >= now - 1e-12);
    }

    /// Temperature stays inside the driving range.
    #[test]
    fn temperature_bounded(x in 0.0f64..0.1, t in 0.0f64..1e9) {
        let th = temperature(&medium(), &bc(), x, t).unwrap();
        prop_assert!((293.15..=433.15).contains(&th));
    }

    /// Saturation pressure is strictly increasing in temperature.
    #[test]
    fn saturation_strictly_increasing(
        lo in 150.0f64..500.0,
        gap in 1e-6f64..200.0,
    ) {
        let (f, b) = (fluid(), bc());
        let p_lo = saturation_pressure(&f, &b, lo).unwrap();
        let p_hi = saturation_pressure(&f, &b, lo + gap).unwrap();
        prop_assert!(p_hi > p_lo);
    }

    /// Viscosity is strictly positive for any positive temperature.
    #[test]
    fn viscosity_positive(theta in 1e-3f64..5e3) {
        prop_assert!(viscosity(&fluid(), &bc(), theta).unwrap() > 0.0);
    }

    /// erf and erfc are exact complements.
    #[test]
    fn erf_erfc_identity(x in -6.0f64..6.0) {
        let sum = erf(x).unwrap() + erfc(x).unwrap();
        prop_assert!((sum - 1.0).abs() <= 1e-12, "erf + erfc = {sum} at {x}");
    }

    /// erfc is monotone decreasing.
    #[test]
    fn erfc_monotone(x in -5.0f64..5.0, step in 1e-6f64..1.0) {
        prop_assert!(erfc(x + step).unwrap() <= erfc(x).unwrap() + 1e-15);
    }

    /// Quadrature is linear in the integrand within twice the tolerance.
    #[test]
    fn quadrature_linearity(
        alpha in -0.5f64..0.5,
        beta in -0.5f64..0.5,
        k in 0.5f64..4.0,
    ) {
        let tol = 1e-10;
        let f = |x: f64| (k * x).sin() + 0.3 * x * x;
        let g = |x: f64| (-x * x).exp();
        let combined = integrate(|x| alpha * f(x) + beta * g(x), 0.0, 2.0, tol)
            .unwrap()
            .value;
        let parts = alpha * integrate(f, 0.0, 2.0, tol).unwrap().value
            + beta * integrate(g, 0.0, 2.0, tol).unwrap().value;
        prop_assert!((combined - parts).abs() <= 2.0 * tol);
    }

    /// Pressure is non-increasing in depth at any fixed time.
    #[test]
    fn pressure_monotone_in_x(
        x in 0.0f64..0.09,
        gap in 1e-4f64..0.01,
        t in 0.0f64..1e6,
    ) {
        let (m, f, b) = (medium(), fluid(), bc());
        let here = pressure(&m, &f, &b, x, t, 1e-9).unwrap();
        let deeper = pressure(&m, &f, &b, x + gap, t, 1e-9).unwrap();
        prop_assert!(deeper <= here + 2e-9);
    }

    /// The asymptotic profile is non-increasing and pinned to [p_out, p_in].
    #[test]
    fn asymptotic_pressure_shape(x in 0.0f64..0.1, gap in 0.0f64..0.01) {
        let m = medium();
        let f = FluidParams::new(5304.0, 2339.0, 1.0, 120.0).unwrap();
        let b = BoundaryConditions::new(433.15, 293.15, 1.0002e5, 1.0e5, 1e-3).unwrap();
        let here = asymptotic_pressure(&m, &f, &b, x).unwrap();
        prop_assert!((1.0e5..=1.0002e5).contains(&here));
        if x + gap <= 0.1 {
            let deeper = asymptotic_pressure(&m, &f, &b, x + gap).unwrap();
            prop_assert!(deeper <= here);
        }
    }
}

#[test]
fn heat_solution_tracks_oracle_on_random_points() {
    // Finite-difference spec phrasing: 100 random (x, t) pairs.
    let (m, b) = (medium(), bc());
    let mut rng = TinyRng::new(0x5eed_1234);
    for _ in 0..100 {
        let x = rng.range(0.0, 0.1);
        let t = 10f64.powf(rng.range(-2.0, 8.0));
        let want = 293.15 + 140.0 * common::erfc_oracle(x / (2.0 * (1e-6 * t).sqrt()));
        let got = temperature(&m, &b, x, t).unwrap();
        assert_abs_diff_eq!(got, want, epsilon = 1e-10 * 140.0);
    }
}

#[test]
fn velocity_gap_flux_constant_is_one_sixth() {
    // The parabolic profile integrates to q/6 over the gap; this documented
    // constant is pinned here exactly as implemented, not rescaled.
    let b = bc();
    let flux = integrate(|z| velocity(&b, z, 0.0).unwrap(), 0.0, 1.0, 1e-15)
        .unwrap()
        .value;
    assert_relative_eq!(flux, 1e-3 / 6.0, max_relative = 1e-12);
}

#[test]
fn pressure_matches_brute_force_simpson() {
    // 1e6-panel fixed-step Simpson as the independent route to the drop.
    let (m, f, b) = (medium(), fluid(), bc());
    let t = 1000.0;
    let x = 0.05;
    let integral = simpson_fixed(
        |s| viscosity(&f, &b, temperature(&m, &b, s, t).unwrap()).unwrap(),
        0.0,
        x,
        1_000_000,
    );
    let want = 1.5e5 - 2.0 * 1e-3 * integral;
    let got = pressure(&m, &f, &b, x, t, 1e-10).unwrap();
    assert_abs_diff_eq!(got, want, epsilon = 1e-9);
}

#[test]
fn pressure_profile_matches_pointwise_evaluation() {
    let (m, f, b) = (medium(), fluid(), bc());
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 * 0.1 / 20.0).collect();
    let prof = PressureProfile::sample(&m, &f, &b, &grid, 500.0, 1e-8).unwrap();
    for (i, &x) in grid.iter().enumerate() {
        let direct = pressure(&m, &f, &b, x, 500.0, 1e-10).unwrap();
        assert_abs_diff_eq!(prof.pressures()[i], direct, epsilon = 1e-8);
    }
}

#[test]
fn ode_solver_order_of_convergence() {
    // Exponential test problem; fourth order means halving the step cuts the
    // end error sixteenfold. Measure over two halvings and ask for >= 3.8.
    let exact = (-1.0f64).exp();
    let mut errors = Vec::new();
    for dt in [1e-2, 5e-3, 2.5e-3] {
        let cfg = OdeStepperConfig {
            dt,
            ..Default::default()
        };
        let path = ode_solve(|_, x| Ok(-x), 1.0, 0.0, 1.0, &cfg).unwrap();
        errors.push((path.last().unwrap().x - exact).abs());
    }
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 3.8, "measured order {order} below 3.8: {errors:?}");
    }
}

#[test]
fn erfc_accuracy_against_oracle_full_range() {
    let mut rng = TinyRng::new(0xabcd_ef01);
    let mut worst = 0.0f64;
    for _ in 0..2000 {
        let x = rng.range(0.0, 6.0);
        let diff = (erfc(x).unwrap() - common::erfc_oracle(x)).abs();
        worst = worst.max(diff);
    }
    assert!(worst <= 1e-12, "worst |erfc - oracle| = {worst:e}");
}
