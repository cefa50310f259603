//! Run report: per-level verification results plus convergence diagnostics.

use vaporfront::front::ArrestBound;

/// Verification outcome for one gap coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ZReport {
    pub z: f64,
    pub profile_speed: f64,
    pub bound: ArrestBound,
    pub final_t: f64,
    pub final_position: f64,
    pub final_recession: f64,
    /// Final front speed relative to the injection speed (0 on the walls).
    pub velocity_ratio: f64,
    /// None when the bound is not applicable.
    pub within_bound: Option<bool>,
    /// None when the bound is not applicable or the run ends before burn-in.
    pub dominated_after_burn_in: Option<bool>,
    pub step_halving_delta: f64,
    pub max_quad_error: f64,
    /// Numeric failure for this level, if any. The row is still emitted.
    pub error: Option<String>,
}

impl ZReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.within_bound.unwrap_or(true)
            && self.dominated_after_burn_in.unwrap_or(true)
    }
}

/// Whole-run outcome. Emitted even when individual levels fail.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub rows: Vec<ZReport>,
    /// Worst recession-speed quadrature error estimate across levels.
    pub max_quad_error: f64,
    /// Requested recession-speed tolerance, for the convergence section.
    pub speed_tol: f64,
    /// Worst step-halving delta across levels.
    pub max_step_halving_delta: f64,
    /// Every number written to any table was finite.
    pub all_finite: bool,
    /// Burn-in time used for the domination checks.
    pub burn_in_time: f64,
}

impl RunReport {
    pub fn verdict(&self) -> bool {
        self.all_finite && self.rows.iter().all(ZReport::passed)
    }

    /// True if any level aborted with a numeric failure.
    pub fn has_numeric_failure(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }
}
