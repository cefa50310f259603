//! Pressure and velocity fields of the order-zero homogenized flow.
//!
//! The transverse velocity profile is the Hele-Shaw parabola
//! `q (z - z^2)` minus the recession speed, the pressure gradient is
//! `-2 q eta(x, t)`, and the long-time pressure profile is piecewise affine
//! down to the outlet pressure. A centered finite-difference residual of the
//! homogenized momentum balance is provided as a consistency check of the
//! velocity/pressure pair.
//!
//! Note on flux normalization: the boundary data prescribe a unit-gap flux
//! `q`, while the parabolic profile integrates to `q/6` over the gap. The
//! profile is implemented exactly as written in the model; `q/6` is the
//! module's documented flux constant and is asserted in tests, not rescaled.

use crate::numerics::{try_integrate, QuadratureResult};
use crate::physics::{temperature, viscosity, BoundaryConditions, FluidParams, MediumParams};
use crate::{Error, Result};

/// Condensation-free transverse speed profile `q (z - z^2)` at gap
/// coordinate `z` in [0, 1]. Vanishes on the walls.
pub fn profile_speed(bc: &BoundaryConditions, z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "gap coordinate must lie in [0, 1], got {z}"
        )));
    }
    Ok(bc.flux() * (z - z * z))
}

/// Horizontal velocity `q (z - z^2) - recession`. The recession speed is the
/// volume-loss term produced by condensation over the wetted region.
pub fn velocity(bc: &BoundaryConditions, z: f64, recession: f64) -> Result<f64> {
    if !recession.is_finite() || recession < 0.0 {
        return Err(Error::Domain(format!(
            "recession speed must be finite and >= 0, got {recession}"
        )));
    }
    Ok(profile_speed(bc, z)? - recession)
}

/// A velocity evaluation tagged with where it was taken. On the walls
/// (`z` = 0 or 1) the speed reduces to minus the recession speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocitySample {
    pub position: f64,
    pub z: f64,
    pub speed: f64,
}

impl VelocitySample {
    pub fn new(bc: &BoundaryConditions, position: f64, z: f64, recession: f64) -> Result<Self> {
        if !position.is_finite() || position < 0.0 {
            return Err(Error::Domain(format!(
                "axial position must be finite and >= 0, got {position}"
            )));
        }
        Ok(Self {
            position,
            z,
            speed: velocity(bc, z, recession)?,
        })
    }
}

/// Pressure applied to the injected vapor at axial position `x` and time `t`:
/// `max(p_out, p_in - 2 q * integral_0^x eta(theta(s, t)) ds)`, the integral
/// evaluated adaptively to the absolute pressure tolerance `tol`. The clamp
/// at the outlet pressure applies at all times; the outlet maintains it.
pub fn pressure(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    pressure_with_estimate(medium, fluid, bc, x, t, tol).map(|(p, _)| p)
}

/// Same as [`pressure`], also returning the quadrature diagnostics converted
/// to pressure units (value = pressure drop before clamping).
pub fn pressure_with_estimate(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
    t: f64,
    tol: f64,
) -> Result<(f64, QuadratureResult)> {
    if x.is_nan() || x < 0.0 || x > medium.pore_length() {
        return Err(Error::Domain(format!(
            "axial position must lie in [0, {}], got {x}",
            medium.pore_length()
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "pressure tolerance must be finite and > 0, got {tol}"
        )));
    }
    let two_q = 2.0 * bc.flux();
    let integral = try_integrate(
        |s| viscosity(fluid, bc, temperature(medium, bc, s, t)?),
        0.0,
        x,
        tol / two_q,
    )?;
    let drop = two_q * integral.value;
    let p = (bc.inlet_pressure() - drop).max(bc.outlet_pressure());
    Ok((
        p,
        QuadratureResult {
            value: drop,
            err_estimate: two_q * integral.err_estimate,
            evaluations: integral.evaluations,
        },
    ))
}

/// Pressure profile sampled on an ordered grid starting at the inlet. The
/// drop is accumulated segment by segment, so the stored values are
/// non-increasing by construction and clamped at the outlet pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureProfile {
    positions: Vec<f64>,
    pressures: Vec<f64>,
    time: f64,
}

impl PressureProfile {
    pub fn sample(
        medium: &MediumParams,
        fluid: &FluidParams,
        bc: &BoundaryConditions,
        positions: &[f64],
        t: f64,
        tol: f64,
    ) -> Result<Self> {
        if positions.is_empty() || positions[0] != 0.0 {
            return Err(Error::Domain(
                "pressure grid must be non-empty and start at the inlet (0)".into(),
            ));
        }
        if positions.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::Domain(
                "pressure grid must be strictly increasing".into(),
            ));
        }
        let last = *positions.last().unwrap();
        if last > medium.pore_length() || !last.is_finite() {
            return Err(Error::Domain(format!(
                "pressure grid must stay within the pore length {}, got {last}",
                medium.pore_length()
            )));
        }
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::Domain(format!(
                "pressure tolerance must be finite and > 0, got {tol}"
            )));
        }
        let two_q = 2.0 * bc.flux();
        let segments = (positions.len() - 1).max(1);
        let seg_tol = tol / two_q / segments as f64;
        let mut pressures = Vec::with_capacity(positions.len());
        pressures.push(bc.inlet_pressure());
        let mut drop = 0.0;
        for w in positions.windows(2) {
            let part = try_integrate(
                |s| viscosity(fluid, bc, temperature(medium, bc, s, t)?),
                w[0],
                w[1],
                seg_tol,
            )?;
            drop += two_q * part.value;
            let prev = *pressures.last().unwrap();
            let p = (bc.inlet_pressure() - drop).max(bc.outlet_pressure()).min(prev);
            pressures.push(p);
        }
        Ok(Self {
            positions: positions.to_vec(),
            pressures,
            time: t,
        })
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn pressures(&self) -> &[f64] {
        &self.pressures
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// Long-time pressure profile: affine with slope `-2 q eta_inlet` until it
/// reaches the outlet pressure, constant afterwards.
pub fn asymptotic_pressure(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
) -> Result<f64> {
    if x.is_nan() || x < 0.0 || x > medium.pore_length() {
        return Err(Error::Domain(format!(
            "axial position must lie in [0, {}], got {x}",
            medium.pore_length()
        )));
    }
    let slope = 2.0 * bc.flux() * fluid.inlet_viscosity();
    let breakpoint = (bc.inlet_pressure() - bc.outlet_pressure()) / slope;
    if x <= breakpoint {
        Ok(bc.inlet_pressure() - slope * x)
    } else {
        Ok(bc.outlet_pressure())
    }
}

/// Centered finite-difference residual of the homogenized momentum balance
/// `-d/dz(eta dv/dz) + dp/dx` at an interior point, using step `h` for both
/// derivatives. Decays as O(h^2); `cancellation_risk` flags steps small
/// enough that pressure rounding pollutes the x-derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumResidual {
    pub value: f64,
    pub cancellation_risk: bool,
}

pub fn momentum_residual(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
    z: f64,
    t: f64,
    h: f64,
) -> Result<MomentumResidual> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Domain(format!(
            "finite-difference step must be finite and > 0, got {h}"
        )));
    }
    if x - h < 0.0 || x + h > medium.pore_length() {
        return Err(Error::Domain(format!(
            "x stencil [{}, {}] leaves the pore [0, {}]",
            x - h,
            x + h,
            medium.pore_length()
        )));
    }
    if z - h < 0.0 || z + h > 1.0 {
        return Err(Error::Domain(format!(
            "z stencil [{}, {}] leaves the gap [0, 1]",
            z - h,
            z + h
        )));
    }
    let eta_here = viscosity(fluid, bc, temperature(medium, bc, x, t)?)?;
    // The recession speed is constant in z and drops out of the second
    // difference, so the shear term can be formed from the profile alone.
    let v = |zz: f64| bc.flux() * (zz - zz * zz);
    let shear = -eta_here * (v(z + h) - 2.0 * v(z) + v(z - h)) / (h * h);

    let drop_scale = 2.0 * bc.flux() * fluid.inlet_viscosity();
    let tol_p = (drop_scale * h * 1e-9).max(64.0 * f64::EPSILON * drop_scale * x.max(h));
    let p_plus = pressure(medium, fluid, bc, x + h, t, tol_p)?;
    let p_minus = pressure(medium, fluid, bc, x - h, t, tol_p)?;
    let grad = (p_plus - p_minus) / (2.0 * h);

    let rounding = f64::EPSILON * bc.inlet_pressure() / (2.0 * h);
    Ok(MomentumResidual {
        value: shear + grad,
        cancellation_risk: rounding > 1e-3 * drop_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn medium() -> MediumParams {
        MediumParams::new(0.1, 1e-6).unwrap()
    }

    fn fluid() -> FluidParams {
        FluidParams::new(5304.0, 2339.0, 1.4e-5, 120.0).unwrap()
    }

    fn bc() -> BoundaryConditions {
        BoundaryConditions::new(433.15, 293.15, 1.5e5, 1.0e5, 1e-3).unwrap()
    }

    #[test]
    fn profile_vanishes_on_walls() {
        assert_eq!(profile_speed(&bc(), 0.0).unwrap(), 0.0);
        assert_eq!(profile_speed(&bc(), 1.0).unwrap(), 0.0);
        assert_eq!(velocity(&bc(), 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn profile_peaks_at_midgap() {
        assert_relative_eq!(
            profile_speed(&bc(), 0.5).unwrap(),
            2.5e-4,
            max_relative = 1e-15
        );
    }

    #[test]
    fn velocity_reference_point() {
        // q = 1e-3, z = 1/2, recession = 2e-4 -> 5e-5
        let v = velocity(&bc(), 0.5, 2e-4).unwrap();
        assert_relative_eq!(v, 5e-5, max_relative = 1e-12);
    }

    #[test]
    fn velocity_domain_checks() {
        assert!(velocity(&bc(), -0.1, 0.0).is_err());
        assert!(velocity(&bc(), 1.1, 0.0).is_err());
        assert!(velocity(&bc(), 0.5, -1e-9).is_err());
        assert!(profile_speed(&bc(), f64::NAN).is_err());
    }

    #[test]
    fn wall_samples_move_with_the_recession() {
        let s0 = VelocitySample::new(&bc(), 0.02, 0.0, 3e-4).unwrap();
        let s1 = VelocitySample::new(&bc(), 0.02, 1.0, 3e-4).unwrap();
        assert_eq!(s0.speed, -3e-4);
        assert_eq!(s1.speed, -3e-4);
    }

    #[test]
    fn pressure_at_inlet_is_inlet_pressure() {
        for t in [0.0, 1.0, 1e4] {
            assert_eq!(
                pressure(&medium(), &fluid(), &bc(), 0.0, t, 1e-4).unwrap(),
                1.5e5
            );
        }
    }

    #[test]
    fn pressure_with_cold_medium_is_affine() {
        // At t = 0 the pore is at ambient temperature except for the inlet
        // point itself, so the drop is 2 q eta(ambient) x.
        let (m, f, b) = (medium(), fluid(), bc());
        let eta_cold = viscosity(&f, &b, 293.15).unwrap();
        let x = 0.05;
        let got = pressure(&m, &f, &b, x, 0.0, 1e-6).unwrap();
        assert_abs_diff_eq!(got, 1.5e5 - 2.0 * 1e-3 * eta_cold * x, epsilon = 2e-6);
    }

    #[test]
    fn pressure_reference_point() {
        // x = 0.05, t = 1000: drop = 2q * 6.312043913068143e-7 (40-digit
        // quadrature of the Sutherland/erfc integrand).
        let got = pressure(&medium(), &fluid(), &bc(), 0.05, 1000.0, 1e-9).unwrap();
        let want = 1.5e5 - 1.262_408_782_613_628_7e-9;
        assert_abs_diff_eq!(got, want, epsilon = 2e-9);
    }

    #[test]
    fn pressure_long_time_is_asymptotic() {
        let (m, f, b) = (medium(), fluid(), bc());
        let got = pressure(&m, &f, &b, 0.08, 1e15, 1e-7).unwrap();
        let want = asymptotic_pressure(&m, &f, &b, 0.08).unwrap();
        assert_abs_diff_eq!(got, want, epsilon = 1e-6);
    }

    #[test]
    fn pressure_domain_checks() {
        assert!(pressure(&medium(), &fluid(), &bc(), -0.01, 1.0, 1e-4).is_err());
        assert!(pressure(&medium(), &fluid(), &bc(), 0.2, 1.0, 1e-4).is_err());
        assert!(pressure(&medium(), &fluid(), &bc(), 0.05, 1.0, 0.0).is_err());
    }

    #[test]
    fn pressure_clamps_at_outlet_value() {
        // Strong drop: large flux and viscosity force the clamp well inside.
        let m = MediumParams::new(0.1, 1e-6).unwrap();
        let f = FluidParams::new(5304.0, 2339.0, 1.0e4, 120.0).unwrap();
        let b = BoundaryConditions::new(433.15, 293.15, 1.01e5, 1.0e5, 1.0).unwrap();
        let p = pressure(&m, &f, &b, 0.09, 1e12, 1e-6).unwrap();
        assert_eq!(p, 1.0e5);
    }

    #[test]
    fn profile_is_monotone_and_clamped() {
        let m = MediumParams::new(0.1, 1e-6).unwrap();
        let f = FluidParams::new(5304.0, 2339.0, 1.0e4, 120.0).unwrap();
        let b = BoundaryConditions::new(433.15, 293.15, 1.01e5, 1.0e5, 1.0).unwrap();
        let grid: Vec<f64> = (0..=40).map(|i| i as f64 * 0.1 / 40.0).collect();
        let prof = PressureProfile::sample(&m, &f, &b, &grid, 500.0, 1e-6).unwrap();
        assert_eq!(prof.pressures()[0], 1.01e5);
        for w in prof.pressures().windows(2) {
            assert!(w[1] <= w[0]);
        }
        for &p in prof.pressures() {
            assert!(p >= 1.0e5);
        }
    }

    #[test]
    fn profile_rejects_bad_grids() {
        let (m, f, b) = (medium(), fluid(), bc());
        assert!(PressureProfile::sample(&m, &f, &b, &[], 1.0, 1e-4).is_err());
        assert!(PressureProfile::sample(&m, &f, &b, &[0.01, 0.05], 1.0, 1e-4).is_err());
        assert!(PressureProfile::sample(&m, &f, &b, &[0.0, 0.05, 0.05], 1.0, 1e-4).is_err());
        assert!(PressureProfile::sample(&m, &f, &b, &[0.0, 0.2], 1.0, 1e-4).is_err());
    }

    #[test]
    fn asymptotic_profile_shape() {
        // Put the breakpoint mid-pore.
        let m = medium();
        let f = fluid();
        let slope = 2.0 * 1e-3 * 1.4e-5;
        let b = BoundaryConditions::new(433.15, 293.15, 1.0e5 + slope * 0.05, 1.0e5, 1e-3).unwrap();
        assert_eq!(asymptotic_pressure(&m, &f, &b, 0.0).unwrap(), b.inlet_pressure());
        // branches agree at the breakpoint
        let at_break = asymptotic_pressure(&m, &f, &b, 0.05).unwrap();
        assert_abs_diff_eq!(at_break, 1.0e5, epsilon = 1e-6);
        // constant beyond
        assert_eq!(asymptotic_pressure(&m, &f, &b, 0.08).unwrap(), 1.0e5);
        assert!(asymptotic_pressure(&m, &f, &b, 0.2).is_err());
    }

    #[test]
    fn residual_is_z_independent() {
        let m = MediumParams::new(0.1, 1e-6).unwrap();
        let f = FluidParams::new(5304.0, 2339.0, 1.0, 120.0).unwrap();
        let b = BoundaryConditions::new(433.15, 293.15, 2000.0, 1000.0, 0.1).unwrap();
        let r1 = momentum_residual(&m, &f, &b, 0.05, 0.25, 2000.0, 1e-3).unwrap();
        let r2 = momentum_residual(&m, &f, &b, 0.05, 0.5, 2000.0, 1e-3).unwrap();
        let scale = 2.0 * 0.1 * 1.0;
        assert_abs_diff_eq!(r1.value, r2.value, epsilon = 1e-9 * scale);
    }

    #[test]
    fn residual_vanishes_for_smooth_parameters() {
        // Late time: the temperature is nearly uniform across the pore, so
        // the residual contract |r| <= 1e-6 * 2 q eta_inlet applies.
        let m = MediumParams::new(0.1, 1e-6).unwrap();
        let f = FluidParams::new(5304.0, 2339.0, 1.0, 120.0).unwrap();
        let b = BoundaryConditions::new(433.15, 293.15, 2000.0, 1000.0, 0.1).unwrap();
        let r = momentum_residual(&m, &f, &b, 0.05, 0.3, 1e6, 1e-3).unwrap();
        let scale = 2.0 * 0.1 * 1.0;
        assert!(
            r.value.abs() <= 1e-6 * scale,
            "residual {} above contract {}",
            r.value,
            1e-6 * scale
        );
        assert!(!r.cancellation_risk);
    }

    #[test]
    fn residual_halving_is_second_order() {
        let m = MediumParams::new(0.1, 1e-6).unwrap();
        let f = FluidParams::new(5304.0, 2339.0, 1.0, 120.0).unwrap();
        let b = BoundaryConditions::new(433.15, 293.15, 2000.0, 1000.0, 0.1).unwrap();
        let r1 = momentum_residual(&m, &f, &b, 0.05, 0.3, 2000.0, 8e-3).unwrap();
        let r2 = momentum_residual(&m, &f, &b, 0.05, 0.3, 2000.0, 4e-3).unwrap();
        let ratio = r1.value.abs() / r2.value.abs();
        assert!(
            (3.0..5.5).contains(&ratio),
            "halving ratio {ratio} not close to 4"
        );
    }

    #[test]
    fn residual_flags_cancellation() {
        let (m, f, b) = (medium(), fluid(), bc());
        let r = momentum_residual(&m, &f, &b, 0.05, 0.5, 1000.0, 1e-10);
        // Either the quadrature fails to split that finely or the flag trips.
        match r {
            Ok(r) => assert!(r.cancellation_risk),
            Err(Error::Quadrature { .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn residual_stencil_must_stay_interior() {
        let (m, f, b) = (medium(), fluid(), bc());
        assert!(momentum_residual(&m, &f, &b, 0.0005, 0.5, 1.0, 1e-3).is_err());
        assert!(momentum_residual(&m, &f, &b, 0.0999, 0.5, 1.0, 1e-3).is_err());
        assert!(momentum_residual(&m, &f, &b, 0.05, 0.0005, 1.0, 1e-3).is_err());
        assert!(momentum_residual(&m, &f, &b, 0.05, 0.5, 1.0, 0.0).is_err());
    }
}
