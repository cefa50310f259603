//! Parameter records and the closed-form physical fields.
//!
//! Heat moves through the medium by conduction only, one-dimensionally, from
//! the hot inlet face into the initially cold pore, so the temperature is the
//! semi-infinite erfc profile. Saturation pressure follows Clausius-Clapeyron
//! with the ambient temperature as reference point, and viscosity follows
//! Sutherland's law. All three are pure functions of immutable parameter
//! records and safe to call concurrently.

use crate::numerics::erfc_raw;
use crate::{Error, Result};

/// Porous-medium geometry and thermal response: pore length (m) and thermal
/// diffusivity (m^2/s), both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    pore_length: f64,
    thermal_diffusivity: f64,
}

impl MediumParams {
    pub fn new(pore_length: f64, thermal_diffusivity: f64) -> Result<Self> {
        if !pore_length.is_finite() || pore_length <= 0.0 {
            return Err(Error::Domain(format!(
                "pore length must be finite and > 0, got {pore_length}"
            )));
        }
        if !thermal_diffusivity.is_finite() || thermal_diffusivity <= 0.0 {
            return Err(Error::Domain(format!(
                "thermal diffusivity must be finite and > 0, got {thermal_diffusivity}"
            )));
        }
        Ok(Self {
            pore_length,
            thermal_diffusivity,
        })
    }

    pub fn pore_length(&self) -> f64 {
        self.pore_length
    }

    pub fn thermal_diffusivity(&self) -> f64 {
        self.thermal_diffusivity
    }
}

/// Condensable-fluid constants: Clausius-Clapeyron coefficient (K), boiling
/// pressure at the ambient temperature (Pa), viscosity at the inlet
/// temperature (Pa s) and the Sutherland constant (K, may be zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    clapeyron_coeff: f64,
    boiling_pressure: f64,
    inlet_viscosity: f64,
    sutherland_constant: f64,
}

impl FluidParams {
    pub fn new(
        clapeyron_coeff: f64,
        boiling_pressure: f64,
        inlet_viscosity: f64,
        sutherland_constant: f64,
    ) -> Result<Self> {
        if !clapeyron_coeff.is_finite() || clapeyron_coeff <= 0.0 {
            return Err(Error::Domain(format!(
                "Clapeyron coefficient must be finite and > 0, got {clapeyron_coeff}"
            )));
        }
        if !boiling_pressure.is_finite() || boiling_pressure <= 0.0 {
            return Err(Error::Domain(format!(
                "boiling pressure must be finite and > 0, got {boiling_pressure}"
            )));
        }
        if !inlet_viscosity.is_finite() || inlet_viscosity <= 0.0 {
            return Err(Error::Domain(format!(
                "inlet viscosity must be finite and > 0, got {inlet_viscosity}"
            )));
        }
        if !sutherland_constant.is_finite() || sutherland_constant < 0.0 {
            return Err(Error::Domain(format!(
                "Sutherland constant must be finite and >= 0, got {sutherland_constant}"
            )));
        }
        Ok(Self {
            clapeyron_coeff,
            boiling_pressure,
            inlet_viscosity,
            sutherland_constant,
        })
    }

    pub fn clapeyron_coeff(&self) -> f64 {
        self.clapeyron_coeff
    }

    pub fn boiling_pressure(&self) -> f64 {
        self.boiling_pressure
    }

    pub fn inlet_viscosity(&self) -> f64 {
        self.inlet_viscosity
    }

    pub fn sutherland_constant(&self) -> f64 {
        self.sutherland_constant
    }
}

/// Driving data: inlet temperature above the ambient one, inlet pressure
/// above the outlet one (both maintained from the initial instant), and the
/// flux parameter of the injection profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditions {
    inlet_temperature: f64,
    ambient_temperature: f64,
    inlet_pressure: f64,
    outlet_pressure: f64,
    flux: f64,
}

impl BoundaryConditions {
    pub fn new(
        inlet_temperature: f64,
        ambient_temperature: f64,
        inlet_pressure: f64,
        outlet_pressure: f64,
        flux: f64,
    ) -> Result<Self> {
        if !inlet_temperature.is_finite()
            || !ambient_temperature.is_finite()
            || ambient_temperature <= 0.0
        {
            return Err(Error::Domain(format!(
                "temperatures must be finite with ambient > 0 K, got ambient {ambient_temperature}"
            )));
        }
        if inlet_temperature <= ambient_temperature {
            return Err(Error::Domain(format!(
                "inlet temperature must exceed the ambient temperature, \
                 got {inlet_temperature} <= {ambient_temperature}"
            )));
        }
        if !inlet_pressure.is_finite()
            || !outlet_pressure.is_finite()
            || outlet_pressure <= 0.0
        {
            return Err(Error::Domain(format!(
                "pressures must be finite with outlet > 0 Pa, got outlet {outlet_pressure}"
            )));
        }
        if inlet_pressure <= outlet_pressure {
            return Err(Error::Domain(format!(
                "inlet pressure must exceed the outlet pressure, \
                 got {inlet_pressure} <= {outlet_pressure}"
            )));
        }
        if !flux.is_finite() || flux <= 0.0 {
            return Err(Error::Domain(format!(
                "flux parameter must be finite and > 0, got {flux}"
            )));
        }
        Ok(Self {
            inlet_temperature,
            ambient_temperature,
            inlet_pressure,
            outlet_pressure,
            flux,
        })
    }

    pub fn inlet_temperature(&self) -> f64 {
        self.inlet_temperature
    }

    pub fn ambient_temperature(&self) -> f64 {
        self.ambient_temperature
    }

    pub fn inlet_pressure(&self) -> f64 {
        self.inlet_pressure
    }

    pub fn outlet_pressure(&self) -> f64 {
        self.outlet_pressure
    }

    pub fn flux(&self) -> f64 {
        self.flux
    }
}

/// Conduction temperature at axial position `x` (m) and time `t` (s):
/// `ambient + (inlet - ambient) * erfc(x / (2 sqrt(K t)))`.
///
/// The (0, 0) corner is assigned the inlet value: the boundary data are
/// maintained from the initial instant, so they win over the initial
/// condition on the closure. The result always lies between the ambient and
/// inlet temperatures. `x` may exceed the pore length; the profile is the
/// semi-infinite one.
pub fn temperature(medium: &MediumParams, bc: &BoundaryConditions, x: f64, t: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "axial position must be finite and >= 0, got {x}"
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    if x == 0.0 {
        return Ok(bc.inlet_temperature());
    }
    if t == 0.0 {
        return Ok(bc.ambient_temperature());
    }
    let arg = x / (2.0 * (medium.thermal_diffusivity() * t).sqrt());
    Ok(bc.ambient_temperature()
        + (bc.inlet_temperature() - bc.ambient_temperature()) * erfc_raw(arg))
}

/// Pointwise long-time limit of [`temperature`]: the inlet temperature, for
/// every axial position.
pub fn temperature_limit(bc: &BoundaryConditions) -> f64 {
    bc.inlet_temperature()
}

/// Clausius-Clapeyron saturation pressure at temperature `theta` (K),
/// referenced to boiling at the ambient temperature. Strictly increasing in
/// `theta` and bounded by the finite ceiling at infinite temperature.
pub fn saturation_pressure(fluid: &FluidParams, bc: &BoundaryConditions, theta: f64) -> Result<f64> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::Domain(format!(
            "temperature must be > 0 K, got {theta}"
        )));
    }
    Ok(saturation_pressure_raw(fluid, bc.ambient_temperature(), theta))
}

fn saturation_pressure_raw(fluid: &FluidParams, reference: f64, theta: f64) -> f64 {
    fluid.boiling_pressure() * (fluid.clapeyron_coeff() * (1.0 / reference - 1.0 / theta)).exp()
}

/// Long-time limit of the saturation pressure: [`saturation_pressure`]
/// evaluated at the inlet temperature.
pub fn saturation_pressure_limit(fluid: &FluidParams, bc: &BoundaryConditions) -> f64 {
    saturation_pressure_raw(fluid, bc.ambient_temperature(), bc.inlet_temperature())
}

/// Sutherland-law dynamic viscosity at temperature `theta` (K):
/// `inlet_viscosity * (theta/inlet_temperature)^1.5
///  * (inlet_temperature + S) / (theta + S)`.
///
/// Strictly positive; equals the inlet viscosity exactly at the inlet
/// temperature. Viscosity depends on position and time only through the
/// temperature, which is why this takes a temperature and not a location.
pub fn viscosity(fluid: &FluidParams, bc: &BoundaryConditions, theta: f64) -> Result<f64> {
    if !theta.is_finite() || theta <= 0.0 {
        return Err(Error::Domain(format!(
            "temperature must be finite and > 0 K, got {theta}"
        )));
    }
    let ratio = theta / bc.inlet_temperature();
    let s = fluid.sutherland_constant();
    Ok(fluid.inlet_viscosity() * ratio.powf(1.5) * (bc.inlet_temperature() + s) / (theta + s))
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

    fn bc_hot() -> BoundaryConditions {
        BoundaryConditions::new(433.15, 293.15, 1.5e5, 1.0e5, 1e-3).unwrap()
    }

    fn bc_warm() -> BoundaryConditions {
        BoundaryConditions::new(313.15, 293.15, 1.5e5, 101_325.0, 1e-3).unwrap()
    }

    #[test]
    fn medium_invariants() {
        assert!(MediumParams::new(0.0, 1e-6).is_err());
        assert!(MediumParams::new(-1.0, 1e-6).is_err());
        assert!(MediumParams::new(0.1, 0.0).is_err());
        assert!(MediumParams::new(f64::NAN, 1e-6).is_err());
        assert!(MediumParams::new(0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn fluid_invariants() {
        assert!(FluidParams::new(0.0, 2339.0, 1.4e-5, 120.0).is_err());
        assert!(FluidParams::new(5304.0, -2.0, 1.4e-5, 120.0).is_err());
        assert!(FluidParams::new(5304.0, 2339.0, 0.0, 120.0).is_err());
        assert!(FluidParams::new(5304.0, 2339.0, 1.4e-5, -1.0).is_err());
        // zero Sutherland constant is allowed
        assert!(FluidParams::new(5304.0, 2339.0, 1.4e-5, 0.0).is_ok());
    }

    #[test]
    fn boundary_invariants() {
        // theta_E > theta_S
        assert!(BoundaryConditions::new(293.15, 293.15, 1.5e5, 1.0e5, 1e-3).is_err());
        assert!(BoundaryConditions::new(280.0, 293.15, 1.5e5, 1.0e5, 1e-3).is_err());
        // theta_S > 0
        assert!(BoundaryConditions::new(10.0, 0.0, 1.5e5, 1.0e5, 1e-3).is_err());
        // p_E > p_S > 0
        assert!(BoundaryConditions::new(433.15, 293.15, 1.0e5, 1.0e5, 1e-3).is_err());
        assert!(BoundaryConditions::new(433.15, 293.15, 1.0e5, -5.0, 1e-3).is_err());
        // q > 0
        assert!(BoundaryConditions::new(433.15, 293.15, 1.5e5, 1.0e5, 0.0).is_err());
    }

    #[test]
    fn temperature_initial_condition() {
        assert_eq!(temperature(&medium(), &bc_hot(), 0.05, 0.0).unwrap(), 293.15);
    }

    #[test]
    fn temperature_inlet_boundary() {
        assert_eq!(temperature(&medium(), &bc_hot(), 0.0, 100.0).unwrap(), 433.15);
    }

    #[test]
    fn temperature_corner_takes_inlet_value() {
        assert_eq!(temperature(&medium(), &bc_hot(), 0.0, 0.0).unwrap(), 433.15);
    }

    #[test]
    fn temperature_reference_point() {
        // ambient 293.15, inlet 433.15, K = 1e-6, x = 0.05, t = 1000:
        // 293.15 + 140 erfc(0.790569...) to 40 digits.
        let got = temperature(&medium(), &bc_hot(), 0.05, 1000.0).unwrap();
        assert_abs_diff_eq!(got, 330.047_346_819_616_18, epsilon = 1e-9);
    }

    #[test]
    fn temperature_stays_within_driving_range() {
        let (m, bc) = (medium(), bc_hot());
        for i in 0..50 {
            for j in 0..50 {
                let x = i as f64 * 2e-3;
                let t = j as f64 * 77.7;
                let th = temperature(&m, &bc, x, t).unwrap();
                assert!((293.15..=433.15).contains(&th));
            }
        }
    }

    #[test]
    fn temperature_rejects_negative_arguments() {
        assert!(temperature(&medium(), &bc_hot(), -1e-9, 1.0).is_err());
        assert!(temperature(&medium(), &bc_hot(), 0.05, -1.0).is_err());
        assert!(temperature(&medium(), &bc_hot(), f64::NAN, 1.0).is_err());
    }

    #[test]
    fn temperature_limit_is_inlet_value() {
        assert_eq!(temperature_limit(&bc_hot()), 433.15);
        // numerical check: deep into the heating the profile has converged
        // pointwise even at the far end of this 0.1 m pore
        let got = temperature(&medium(), &bc_hot(), 0.1, 1e16).unwrap();
        assert!((got - 433.15).abs() <= 1e-6 * 140.0);
    }

    #[test]
    fn saturation_at_reference_temperature_is_boiling_pressure() {
        let got = saturation_pressure(&fluid(), &bc_warm(), 293.15).unwrap();
        assert_eq!(got, 2339.0);
    }

    #[test]
    fn saturation_reference_point() {
        // 2339 * exp(5304 (1/293.15 - 1/313.15)) to 40 digits.
        let got = saturation_pressure(&fluid(), &bc_warm(), 313.15).unwrap();
        assert_relative_eq!(got, 7_428.173_633_153_673, max_relative = 1e-12);
    }

    #[test]
    fn saturation_has_finite_ceiling() {
        // theta -> infinity limit is pi_S exp(lambda/theta_S).
        let ceiling = 2339.0 * (5304.0f64 / 293.15).exp();
        assert_relative_eq!(ceiling, 1.685_680_145_360_532e11, max_relative = 1e-12);
        let near = saturation_pressure(&fluid(), &bc_warm(), 1e300).unwrap();
        assert_relative_eq!(near, ceiling, max_relative = 1e-9);
    }

    #[test]
    fn saturation_limit_is_definitional_identity() {
        let f = fluid();
        let bc = bc_warm();
        assert_eq!(
            saturation_pressure_limit(&f, &bc),
            saturation_pressure(&f, &bc, bc.inlet_temperature()).unwrap()
        );
    }

    #[test]
    fn saturation_rejects_nonpositive_temperature() {
        assert!(saturation_pressure(&fluid(), &bc_warm(), 0.0).is_err());
        assert!(saturation_pressure(&fluid(), &bc_warm(), -10.0).is_err());
        assert!(saturation_pressure(&fluid(), &bc_warm(), f64::NAN).is_err());
    }

    #[test]
    fn viscosity_at_inlet_temperature_is_exact() {
        let got = viscosity(&fluid(), &bc_hot(), 433.15).unwrap();
        assert_eq!(got, 1.4e-5);
    }

    #[test]
    fn viscosity_reference_point() {
        // 1.4e-5 (293.15/433.15)^1.5 (553.15/413.15) to 40 digits.
        let got = viscosity(&fluid(), &bc_hot(), 293.15).unwrap();
        assert_relative_eq!(got, 1.043_615_606_409_159_2e-5, max_relative = 1e-10);
    }

    #[test]
    fn viscosity_approaches_inlet_value_along_heating() {
        let (m, bc, f) = (medium(), bc_hot(), fluid());
        let th = temperature(&m, &bc, 0.05, 1e18).unwrap();
        let eta = viscosity(&f, &bc, th).unwrap();
        assert_relative_eq!(eta, 1.4e-5, max_relative = 1e-8);
    }

    #[test]
    fn viscosity_rejects_nonpositive_temperature() {
        assert!(viscosity(&fluid(), &bc_hot(), 0.0).is_err());
        assert!(viscosity(&fluid(), &bc_hot(), -5.0).is_err());
    }
}
