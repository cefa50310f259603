//! Injection of a condensable vapor into a slit-pore porous medium under
//! non-isothermal conditions.
//!
//! The medium starts cold at the outlet pressure and is driven from a hot,
//! pressurized inlet. Heat moves by conduction only, so the temperature is
//! the classical semi-infinite erfc profile; viscosity follows Sutherland's
//! law in that temperature, the pressure applied to the vapor is an integral
//! of the viscosity along the pore, and the saturation pressure follows the
//! Clausius-Clapeyron relation. Wherever the applied pressure exceeds the
//! saturation pressure part of the vapor condenses, which pulls the
//! vapor/residual-gas interface back. The interface position is the single
//! dynamic unknown; everything else is a closed-form field evaluated on
//! demand.
//!
//! Module map:
//! - [`numerics`]: erf/erfc kernels, adaptive Simpson quadrature, fixed-step
//!   fourth-order ODE stepping.
//! - [`physics`]: parameter records and the closed-form temperature,
//!   saturation-pressure and viscosity fields with their long-time limits.
//! - [`field`]: velocity profile, applied pressure, its asymptotic piecewise
//!   profile, and a finite-difference residual of the homogenized momentum
//!   balance.
//! - [`front`]: condensation fraction, recession speed, time integration of
//!   the moving front, and the asymptotic arrest bound.

pub mod field;
pub mod front;
pub mod numerics;
pub mod physics;

pub use field::{
    asymptotic_pressure, momentum_residual, pressure, profile_speed, velocity, MomentumResidual,
    PressureProfile,
};
pub use front::{
    advance_front, arrest_bound, condensation_fraction, condensation_fraction_limit,
    recession_speed, ArrestBound, FrontSample, FrontTrajectory, SimConfig,
};
pub use numerics::{erf, erfc, integrate, ode_solve, OdeStepperConfig, QuadratureResult};
pub use physics::{
    saturation_pressure, saturation_pressure_limit, temperature, temperature_limit, viscosity,
    BoundaryConditions, FluidParams, MediumParams,
};

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Adaptive quadrature hit its refinement cap before reaching the
    /// requested absolute tolerance. Carries the best value found so far.
    #[error(
        "quadrature tolerance {requested:e} not reached (best estimate {achieved:e} \
         after {evaluations} evaluations)"
    )]
    Quadrature {
        requested: f64,
        achieved: f64,
        value: f64,
        evaluations: usize,
    },
    /// The fixed-step ODE driver would need more steps than allowed.
    #[error("ODE stepper needs more than {max_steps} steps to reach the end time")]
    OdeSteps { max_steps: usize },
    /// Step halving stopped reducing the front end-position change.
    #[error(
        "front step-halving stalled at dt = {dt:e}: relative change {delta:e} \
         still above {tol:e}"
    )]
    FrontConvergence { dt: f64, delta: f64, tol: f64 },
    /// Front integration aborted; the samples accumulated so far are kept.
    #[error("front integration failed at t = {t}: {cause}")]
    FrontIntegration {
        t: f64,
        cause: Box<Error>,
        partial: Vec<front::FrontSample>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
