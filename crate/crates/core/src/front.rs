//! Condensation fraction, interface recession, front integration and the
//! asymptotic arrest bound.
//!
//! Condensation happens over the whole wetted region, not just at the
//! interface: wherever the applied pressure exceeds the saturation pressure,
//! the fraction `max(0, (p - p_sat)/p)` of the vapor condenses. The interface
//! recedes at the integral of that fraction over the wetted region, so the
//! front obeys `dx/dt = w0(z) - k0(x, t)` from `x = 0`. Because at every
//! finite time the applied pressure stays at or above the outlet pressure and
//! the saturation pressure stays below its long-time value, the condensation
//! fraction is bounded below by the plateau constant
//! `c = 1 - p_sat_limit / p_out`; when `c > 0` the front position is
//! dominated by `(w0/c)(1 - exp(-c t))` and can never pass `w0/c`.

use crate::field::{asymptotic_pressure, pressure, profile_speed};
use crate::numerics::{try_integrate, OdeStepperConfig};
use crate::physics::{
    saturation_pressure, saturation_pressure_limit, temperature, BoundaryConditions, FluidParams,
    MediumParams,
};
use crate::{Error, Result};

/// Default absolute pressure tolerance used by the condensation fraction:
/// 1e-9 of the inlet pressure.
pub fn default_pressure_tol(bc: &BoundaryConditions) -> f64 {
    1e-9 * bc.inlet_pressure()
}

/// Integration settings for the moving front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Fixed-step stepper settings; `rel_tol` drives the step-halving
    /// acceptance of the front end position.
    pub stepper: OdeStepperConfig,
    /// Absolute tolerance (Pa) for pressure quadratures.
    pub pressure_tol: f64,
    /// Absolute tolerance (m/s) for recession-speed quadratures.
    pub speed_tol: f64,
    /// How many times the step may be halved before giving up.
    pub max_step_halvings: u32,
    /// Slack multiplier accepted when checking positions against the bound.
    pub bound_slack: f64,
    /// Burn-in time factor: the large-time regime starts at
    /// `burn_in_factor * L^2 / K`.
    pub burn_in_factor: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            stepper: OdeStepperConfig::default(),
            pressure_tol: 1e-4,
            speed_tol: 1e-12,
            max_step_halvings: 12,
            bound_slack: 1e-6,
            burn_in_factor: 5.0,
        }
    }
}

impl SimConfig {
    /// Defaults with the pressure tolerance scaled to the given conditions.
    pub fn for_conditions(bc: &BoundaryConditions) -> Self {
        Self {
            pressure_tol: default_pressure_tol(bc),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.stepper.validate()?;
        for (name, v) in [
            ("pressure_tol", self.pressure_tol),
            ("speed_tol", self.speed_tol),
            ("bound_slack", self.bound_slack),
            ("burn_in_factor", self.burn_in_factor),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Start of the large-time regime for the given medium.
    pub fn burn_in_time(&self, medium: &MediumParams) -> f64 {
        self.burn_in_factor * medium.pore_length() * medium.pore_length()
            / medium.thermal_diffusivity()
    }
}

/// Condensing fraction of the vapor at `(x, t)`:
/// `max(0, (p - p_sat(theta)) / p)`, always in [0, 1).
pub fn condensation_fraction(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
    t: f64,
) -> Result<f64> {
    condensation_fraction_with_tol(medium, fluid, bc, x, t, default_pressure_tol(bc))
}

/// [`condensation_fraction`] with an explicit pressure tolerance.
pub fn condensation_fraction_with_tol(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    let p = pressure(medium, fluid, bc, x, t, tol)?;
    let theta = temperature(medium, bc, x, t)?;
    let sat = saturation_pressure(fluid, bc, theta)?;
    Ok(((p - sat) / p).max(0.0))
}

/// Long-time limit of the condensation fraction:
/// `max(0, 1 - p_sat_limit / p_asymptotic(x))`. The clamp keeps the value
/// consistent with the `max(0, ...)` definition when the saturation ceiling
/// exceeds the local asymptotic pressure.
pub fn condensation_fraction_limit(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x: f64,
) -> Result<f64> {
    let p = asymptotic_pressure(medium, fluid, bc, x)?;
    Ok((1.0 - saturation_pressure_limit(fluid, bc) / p).max(0.0))
}

/// Recession speed of an interface at `x_front`: the integral of the
/// condensation fraction over the wetted region `[0, x_front]`, evaluated to
/// absolute tolerance `tol` (m/s).
pub fn recession_speed(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x_front: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    recession_speed_with_estimate(medium, fluid, bc, x_front, t, tol).map(|(k, _)| k)
}

/// [`recession_speed`] also returning the quadrature error estimate.
pub fn recession_speed_with_estimate(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    x_front: f64,
    t: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if x_front.is_nan() || x_front < 0.0 || x_front > medium.pore_length() {
        return Err(Error::Domain(format!(
            "front position must lie in [0, {}], got {x_front}",
            medium.pore_length()
        )));
    }
    let pressure_tol = default_pressure_tol(bc);
    let quad = try_integrate(
        |s| condensation_fraction_with_tol(medium, fluid, bc, s, t, pressure_tol),
        0.0,
        x_front,
        tol,
    )?;
    Ok((quad.value.max(0.0), quad.err_estimate))
}

/// Plateau constant `c = 1 - p_sat_limit / p_out`, the uniform lower bound of
/// the condensation fraction. Positive iff the arrest bound applies.
pub fn plateau_fraction(fluid: &FluidParams, bc: &BoundaryConditions) -> f64 {
    1.0 - saturation_pressure_limit(fluid, bc) / bc.outlet_pressure()
}

/// Asymptotic ceiling of the front position at gap coordinate `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrestBound {
    /// `w0(z) / c`, or infinity when the bound does not apply.
    pub position: f64,
    /// Whether the positivity hypothesis `c > 0` holds for these parameters.
    pub applicable: bool,
}

/// Arrest bound `w0(z) / (1 - p_sat_limit / p_out)`. When the saturation
/// ceiling reaches the outlet pressure the hypothesis behind the bound fails
/// and the bound is reported as inapplicable rather than wrong.
pub fn arrest_bound(fluid: &FluidParams, bc: &BoundaryConditions, z: f64) -> Result<ArrestBound> {
    let w0 = profile_speed(bc, z)?;
    let c = plateau_fraction(fluid, bc);
    if c > 0.0 {
        Ok(ArrestBound {
            position: w0 / c,
            applicable: true,
        })
    } else {
        Ok(ArrestBound {
            position: f64::INFINITY,
            applicable: false,
        })
    }
}

/// Exact solution `(w0/c)(1 - exp(-c t))` of the majorant equation
/// `dxi/dt = w0 - c xi`, `xi(0) = 0`. Stable as `c -> 0+`, where it tends to
/// the free advance `w0 t`.
pub fn majorant_curve(w0: f64, c: f64, t: f64) -> f64 {
    w0 * (-(-c * t).exp_m1()) / c
}

/// Majorant of the front position once the condensation fraction sits at or
/// above the plateau constant. Errors when the bound is not applicable.
pub fn majorant_position(
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    z: f64,
    t: f64,
) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    let c = plateau_fraction(fluid, bc);
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Domain(format!(
            "arrest bound not applicable: plateau fraction {c} <= 0"
        )));
    }
    Ok(majorant_curve(profile_speed(bc, z)?, c, t))
}

/// One recorded state of the moving interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSample {
    pub t: f64,
    pub position: f64,
    pub recession: f64,
}

/// Integrated front history for one gap coordinate, with convergence
/// diagnostics from the accepted step-halving pass.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontTrajectory {
    pub z: f64,
    pub profile_speed: f64,
    pub samples: Vec<FrontSample>,
    pub bound: ArrestBound,
    pub dt: f64,
    pub step_halving_delta: f64,
    pub max_quad_error: f64,
}

impl FrontTrajectory {
    pub fn final_sample(&self) -> &FrontSample {
        self.samples.last().expect("trajectory has at least t = 0")
    }

    /// Front speed `w0 - k0` at each recorded sample.
    pub fn velocities(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .map(move |s| (s.t, self.profile_speed - s.recession))
    }

    /// Every recorded position stays at or below the bound (with slack).
    /// Vacuously true when the bound is not applicable.
    pub fn within_bound(&self, slack: f64) -> bool {
        if !self.bound.applicable {
            return true;
        }
        let ceiling = self.bound.position * (1.0 + slack);
        self.samples.iter().all(|s| s.position <= ceiling)
    }

    /// Every sample from `from_t` on is dominated by the given majorant
    /// curve (with slack).
    pub fn dominated_by<M: Fn(f64) -> f64>(&self, majorant: M, from_t: f64, slack: f64) -> bool {
        self.samples
            .iter()
            .filter(|s| s.t >= from_t)
            .all(|s| s.position <= majorant(s.t) * (1.0 + slack) + f64::MIN_POSITIVE)
    }
}

/// Integrate the full-model front at gap coordinate `z` from a dry pore
/// (`x(0) = 0`) to `t_end`. Fourth-order fixed steps; the step is halved
/// until the end position changes by less than `stepper.rel_tol` relative,
/// and the finer pass is returned.
pub fn advance_front(
    medium: &MediumParams,
    fluid: &FluidParams,
    bc: &BoundaryConditions,
    cfg: &SimConfig,
    z: f64,
    t_end: f64,
) -> Result<FrontTrajectory> {
    let bound = arrest_bound(fluid, bc, z)?;
    let w0 = profile_speed(bc, z)?;
    let delta_fn = |x: f64, t: f64| {
        condensation_fraction_with_tol(medium, fluid, bc, x, t, cfg.pressure_tol)
    };
    advance_front_with(&delta_fn, z, w0, medium.pore_length(), bound, cfg, t_end)
}

/// [`advance_front`] with a caller-supplied condensation fraction. Used to
/// force degenerate fractions (zero, constant, frozen asymptotic profile)
/// against closed-form references.
pub fn advance_front_with<D>(
    delta_fn: &D,
    z: f64,
    w0: f64,
    pore_length: f64,
    bound: ArrestBound,
    cfg: &SimConfig,
    t_end: f64,
) -> Result<FrontTrajectory>
where
    D: Fn(f64, f64) -> Result<f64>,
{
    cfg.validate()?;
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!(
            "gap coordinate must lie in [0, 1], got {z}"
        )));
    }
    if !t_end.is_finite() || t_end <= 0.0 {
        return Err(Error::Domain(format!(
            "end time must be finite and > 0, got {t_end}"
        )));
    }
    if !w0.is_finite() || w0 < 0.0 || !pore_length.is_finite() || pore_length <= 0.0 {
        return Err(Error::Domain(
            "profile speed must be >= 0 and pore length > 0".into(),
        ));
    }

    let mut dt = cfg.stepper.dt;
    let mut samples = Vec::new();
    let mut max_quad_error =
        integrate_pass(delta_fn, w0, pore_length, cfg, t_end, dt, &mut samples)?;

    let mut delta_rel = f64::INFINITY;
    for halving in 0..=cfg.max_step_halvings {
        let mut fine = Vec::new();
        let fine_err =
            integrate_pass(delta_fn, w0, pore_length, cfg, t_end, dt * 0.5, &mut fine)?;
        let coarse_end = samples.last().expect("pass records t = 0").position;
        let fine_end = fine.last().expect("pass records t = 0").position;
        delta_rel = (coarse_end - fine_end).abs() / fine_end.abs().max(f64::MIN_POSITIVE);
        samples = fine;
        max_quad_error = max_quad_error.max(fine_err);
        dt *= 0.5;
        if delta_rel < cfg.stepper.rel_tol {
            break;
        }
        if halving == cfg.max_step_halvings {
            return Err(Error::FrontConvergence {
                dt,
                delta: delta_rel,
                tol: cfg.stepper.rel_tol,
            });
        }
    }

    Ok(FrontTrajectory {
        z,
        profile_speed: w0,
        samples,
        bound,
        dt,
        step_halving_delta: delta_rel,
        max_quad_error,
    })
}

/// One fixed-step pass. Appends a sample per step (plus the final time) to
/// `samples`; on error the buffer is drained into the error as a partial
/// history.
fn integrate_pass<D>(
    delta_fn: &D,
    w0: f64,
    pore_length: f64,
    cfg: &SimConfig,
    t_end: f64,
    dt: f64,
    samples: &mut Vec<FrontSample>,
) -> Result<f64>
where
    D: Fn(f64, f64) -> Result<f64>,
{
    let n_steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    if n_steps > cfg.stepper.max_steps {
        return Err(Error::OdeSteps {
            max_steps: cfg.stepper.max_steps,
        });
    }
    samples.reserve(n_steps + 1);

    let mut max_quad_error = 0.0f64;
    let mut x = 0.0f64;
    for k in 0..n_steps {
        let t = k as f64 * dt;
        let h = dt.min(t_end - t);
        match front_step(delta_fn, w0, pore_length, cfg.speed_tol, t, x, h) {
            Ok((x_new, k0, pass_err)) => {
                // Stage one of the step doubles as the recorded recession.
                samples.push(FrontSample {
                    t,
                    position: x,
                    recession: k0,
                });
                max_quad_error = max_quad_error.max(pass_err);
                x = x_new;
            }
            Err(cause) => {
                return Err(Error::FrontIntegration {
                    t,
                    cause: Box::new(cause),
                    partial: std::mem::take(samples),
                })
            }
        }
    }
    match wetted_recession(delta_fn, x, t_end, pore_length, cfg.speed_tol) {
        Ok((k0_end, err)) => {
            max_quad_error = max_quad_error.max(err);
            samples.push(FrontSample {
                t: t_end,
                position: x,
                recession: k0_end,
            });
        }
        Err(cause) => {
            return Err(Error::FrontIntegration {
                t: t_end,
                cause: Box::new(cause),
                partial: std::mem::take(samples),
            })
        }
    }
    Ok(max_quad_error)
}

/// Recession speed over the wetted region with the state clamped into the
/// pore, plus the quadrature error estimate.
fn wetted_recession<D>(
    delta_fn: &D,
    x: f64,
    t: f64,
    pore_length: f64,
    speed_tol: f64,
) -> Result<(f64, f64)>
where
    D: Fn(f64, f64) -> Result<f64>,
{
    let x = x.clamp(0.0, pore_length);
    if x == 0.0 {
        return Ok((0.0, 0.0));
    }
    let quad = try_integrate(|s| delta_fn(s, t), 0.0, x, speed_tol)?;
    Ok((quad.value.max(0.0), quad.err_estimate))
}

/// One RK4 step of the front. Returns the new position, the recession speed
/// at the step start, and the worst quadrature error met across the stages.
fn front_step<D>(
    delta_fn: &D,
    w0: f64,
    pore_length: f64,
    speed_tol: f64,
    t: f64,
    x: f64,
    h: f64,
) -> Result<(f64, f64, f64)>
where
    D: Fn(f64, f64) -> Result<f64>,
{
    let (k0, e1) = wetted_recession(delta_fn, x, t, pore_length, speed_tol)?;
    let s1 = w0 - k0;
    let (r2, e2) = wetted_recession(delta_fn, x + 0.5 * h * s1, t + 0.5 * h, pore_length, speed_tol)?;
    let s2 = w0 - r2;
    let (r3, e3) = wetted_recession(delta_fn, x + 0.5 * h * s2, t + 0.5 * h, pore_length, speed_tol)?;
    let s3 = w0 - r3;
    let (r4, e4) = wetted_recession(delta_fn, x + h * s3, t + h, pore_length, speed_tol)?;
    let s4 = w0 - r4;
    let x_new = (x + h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4)).clamp(0.0, pore_length);
    Ok((x_new, k0, e1.max(e2).max(e3).max(e4)))
}
