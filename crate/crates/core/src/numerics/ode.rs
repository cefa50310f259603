//! Fixed-step classical fourth-order Runge-Kutta stepping.

use crate::{Error, Result};

/// Fixed-step driver configuration. `rel_tol` is the relative tolerance used
/// by callers that wrap the driver in a step-halving convergence check; the
/// driver itself always takes the configured step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeStepperConfig {
    pub dt: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeStepperConfig {
    fn default() -> Self {
        Self {
            dt: 1e-2,
            rel_tol: 1e-6,
            max_steps: 2_000_000,
        }
    }
}

impl OdeStepperConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::Domain(format!(
                "ODE step must be finite and > 0, got {}",
                self.dt
            )));
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(Error::Domain(format!(
                "ODE relative tolerance must be finite and > 0, got {}",
                self.rel_tol
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::Domain("ODE max_steps must be > 0".into()));
        }
        Ok(())
    }
}

/// One point of an integrated trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSample {
    pub t: f64,
    pub x: f64,
}

/// One classical RK4 step of size `h` from `(t, x)`.
pub fn rk4_step<F>(rhs: &mut F, t: f64, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let k1 = rhs(t, x)?;
    let k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1)?;
    let k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2)?;
    let k4 = rhs(t + h, x + h * k3)?;
    Ok(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
}

/// Integrate `dx/dt = rhs(t, x)` from `(t0, x0)` to `t_end` with the fixed
/// step `cfg.dt`, sampling at `t0 + k*dt` (the last step is shortened to land
/// on `t_end` exactly).
pub fn ode_solve<F>(
    mut rhs: F,
    x0: f64,
    t0: f64,
    t_end: f64,
    cfg: &OdeStepperConfig,
) -> Result<Vec<OdeSample>>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    cfg.validate()?;
    if !t0.is_finite() || !t_end.is_finite() || t_end < t0 {
        return Err(Error::Domain(format!(
            "time span must be finite with t_end >= t0, got [{t0}, {t_end}]"
        )));
    }
    let span = t_end - t0;
    let n_steps = if span == 0.0 {
        0
    } else {
        (span / cfg.dt - 1e-9).ceil().max(1.0) as usize
    };
    if n_steps > cfg.max_steps {
        return Err(Error::OdeSteps {
            max_steps: cfg.max_steps,
        });
    }

    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(OdeSample { t: t0, x: x0 });
    let mut x = x0;
    for k in 0..n_steps {
        let t = t0 + k as f64 * cfg.dt;
        let h = cfg.dt.min(t_end - t);
        x = rk4_step(&mut rhs, t, x, h)?;
        let t_next = if k + 1 == n_steps {
            t_end
        } else {
            t0 + (k + 1) as f64 * cfg.dt
        };
        samples.push(OdeSample { t: t_next, x });
    }
    Ok(samples)
}
