//! Shared numerical kernels with stated accuracy contracts.
//!
//! Everything here is pure and reentrant; no global state, no caches.

mod erf;
mod ode;
mod quad;

pub use erf::{erf, erfc};
pub use ode::{ode_solve, rk4_step, OdeSample, OdeStepperConfig};
pub use quad::{integrate, try_integrate, QuadratureResult};

pub(crate) use erf::erfc_raw;
