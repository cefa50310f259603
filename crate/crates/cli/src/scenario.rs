//! Scenario files: parsing, validation with invariant names, and the
//! canonical writer whose output loads back to an identical scenario.

use std::collections::BTreeMap;
use std::path::Path;

use vaporfront::front::SimConfig;
use vaporfront::numerics::OdeStepperConfig;
use vaporfront::physics::{BoundaryConditions, FluidParams, MediumParams};

use crate::CliError;

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub medium: MediumParams,
    pub fluid: FluidParams,
    pub bc: BoundaryConditions,
    pub sim: SimSettings,
    pub outputs: OutputFlags,
}

/// Grids, steps, tolerances and comparison times.
#[derive(Debug, Clone, PartialEq)]
pub struct SimSettings {
    pub z_levels: Vec<f64>,
    pub x2_grid_n: usize,
    pub output_times: Vec<f64>,
    pub t_end: f64,
    pub dt: f64,
    pub ode_rel_tol: f64,
    pub max_steps: usize,
    pub max_step_halvings: u32,
    /// Absolute pressure tolerance; defaults to 1e-9 * p_E when absent.
    pub pressure_tol: Option<f64>,
    pub speed_tol: f64,
    pub bound_slack: f64,
    pub burn_in_factor: f64,
    /// Comparison time for the asymptotic table.
    pub asymptotic_t: f64,
}

/// Which tables the run writes. The report is also the exit-status source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFlags {
    pub fields: bool,
    pub trajectory: bool,
    pub report: bool,
}

impl Default for OutputFlags {
    fn default() -> Self {
        Self {
            fields: true,
            trajectory: true,
            report: true,
        }
    }
}

impl Scenario {
    /// Solver configuration for the core front integrator.
    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            stepper: OdeStepperConfig {
                dt: self.sim.dt,
                rel_tol: self.sim.ode_rel_tol,
                max_steps: self.sim.max_steps,
            },
            pressure_tol: self
                .sim
                .pressure_tol
                .unwrap_or(1e-9 * self.bc.inlet_pressure()),
            speed_tol: self.sim.speed_tol,
            max_step_halvings: self.sim.max_step_halvings,
            bound_slack: self.sim.bound_slack,
            burn_in_factor: self.sim.burn_in_factor,
        }
    }

    /// Canonical text form; [`parse`](Scenario::parse) returns an identical
    /// scenario from it.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("medium.L", fmt_f64(self.medium.pore_length()));
        kv("medium.K", fmt_f64(self.medium.thermal_diffusivity()));
        kv("fluid.lambda_i", fmt_f64(self.fluid.clapeyron_coeff()));
        kv("fluid.pi_S", fmt_f64(self.fluid.boiling_pressure()));
        kv("fluid.eta_E", fmt_f64(self.fluid.inlet_viscosity()));
        kv("fluid.psi", fmt_f64(self.fluid.sutherland_constant()));
        kv("bc.theta_E", fmt_f64(self.bc.inlet_temperature()));
        kv("bc.theta_S", fmt_f64(self.bc.ambient_temperature()));
        kv("bc.p_E", fmt_f64(self.bc.inlet_pressure()));
        kv("bc.p_S", fmt_f64(self.bc.outlet_pressure()));
        kv("bc.q", fmt_f64(self.bc.flux()));
        kv("sim.z_levels", fmt_list(&self.sim.z_levels));
        kv("sim.x2_grid_n", self.sim.x2_grid_n.to_string());
        kv("sim.output_times", fmt_list(&self.sim.output_times));
        kv("sim.t_end", fmt_f64(self.sim.t_end));
        kv("sim.dt", fmt_f64(self.sim.dt));
        kv("sim.ode_rel_tol", fmt_f64(self.sim.ode_rel_tol));
        kv("sim.max_steps", self.sim.max_steps.to_string());
        kv("sim.max_step_halvings", self.sim.max_step_halvings.to_string());
        if let Some(tol) = self.sim.pressure_tol {
            kv("sim.pressure_tol", fmt_f64(tol));
        }
        kv("sim.speed_tol", fmt_f64(self.sim.speed_tol));
        kv("sim.bound_slack", fmt_f64(self.sim.bound_slack));
        kv("sim.burn_in_factor", fmt_f64(self.sim.burn_in_factor));
        kv("sim.asymptotic_t", fmt_f64(self.sim.asymptotic_t));
        kv("outputs.fields", self.outputs.fields.to_string());
        kv("outputs.trajectory", self.outputs.trajectory.to_string());
        kv("outputs.report", self.outputs.report.to_string());
        out
    }

    /// Load and validate a scenario file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parse and validate scenario text. Parse errors carry line numbers,
    /// validation errors name the violated invariant.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw = RawScenario::parse(text)?;
        raw.validate()
    }
}

/// Shortest round-trip decimal form of a float.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn fmt_list(vs: &[f64]) -> String {
    vs.iter()
        .map(|v| fmt_f64(*v))
        .collect::<Vec<_>>()
        .join(", ")
}

const KNOWN_KEYS: &[&str] = &[
    "medium.L",
    "medium.K",
    "fluid.lambda_i",
    "fluid.pi_S",
    "fluid.eta_E",
    "fluid.psi",
    "bc.theta_E",
    "bc.theta_S",
    "bc.p_E",
    "bc.p_S",
    "bc.q",
    "sim.z_levels",
    "sim.x2_grid_n",
    "sim.output_times",
    "sim.t_end",
    "sim.dt",
    "sim.ode_rel_tol",
    "sim.max_steps",
    "sim.max_step_halvings",
    "sim.pressure_tol",
    "sim.speed_tol",
    "sim.bound_slack",
    "sim.burn_in_factor",
    "sim.asymptotic_t",
    "outputs.fields",
    "outputs.trajectory",
    "outputs.report",
];

struct RawScenario {
    entries: BTreeMap<String, (usize, String)>,
}

impl RawScenario {
    fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{trimmed}`"),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                });
            }
            if entries.insert(key.clone(), (line_no, value)).is_some() {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
        }
        Ok(Self { entries })
    }

    fn required_f64(&self, key: &str) -> Result<f64, CliError> {
        let (line, value) = self.entries.get(key).ok_or_else(|| CliError::Validation {
            message: format!("missing required key `{key}`"),
        })?;
        value.parse::<f64>().map_err(|_| CliError::Parse {
            line: *line,
            message: format!("`{key}` must be a number, got `{value}`"),
        })
    }

    fn optional_f64(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.entries.get(key) {
            None => Ok(default),
            Some(_) => self.required_f64(key),
        }
    }

    fn optional_usize(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.entries.get(key) {
            None => Ok(default),
            Some((line, value)) => value.parse::<usize>().map_err(|_| CliError::Parse {
                line: *line,
                message: format!("`{key}` must be a non-negative integer, got `{value}`"),
            }),
        }
    }

    fn optional_bool(&self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.entries.get(key) {
            None => Ok(default),
            Some((line, value)) => value.parse::<bool>().map_err(|_| CliError::Parse {
                line: *line,
                message: format!("`{key}` must be true or false, got `{value}`"),
            }),
        }
    }

    fn optional_list(&self, key: &str, default: Vec<f64>) -> Result<Vec<f64>, CliError> {
        match self.entries.get(key) {
            None => Ok(default),
            Some((line, value)) => value
                .split(',')
                .map(|part| {
                    part.trim().parse::<f64>().map_err(|_| CliError::Parse {
                        line: *line,
                        message: format!("`{key}` must be a comma-separated number list"),
                    })
                })
                .collect(),
        }
    }

    fn validate(&self) -> Result<Scenario, CliError> {
        let invalid = |message: String| CliError::Validation { message };

        let length = self.required_f64("medium.L")?;
        let diffusivity = self.required_f64("medium.K")?;
        if !(length > 0.0) {
            return Err(invalid("requires medium.L > 0".into()));
        }
        if !(diffusivity > 0.0) {
            return Err(invalid("requires medium.K > 0".into()));
        }

        let lambda = self.required_f64("fluid.lambda_i")?;
        let boiling = self.required_f64("fluid.pi_S")?;
        let eta = self.required_f64("fluid.eta_E")?;
        let psi = self.required_f64("fluid.psi")?;
        if !(lambda > 0.0) {
            return Err(invalid("requires fluid.lambda_i > 0".into()));
        }
        if !(boiling > 0.0) {
            return Err(invalid("requires fluid.pi_S > 0".into()));
        }
        if !(eta > 0.0) {
            return Err(invalid("requires fluid.eta_E > 0".into()));
        }
        if !(psi >= 0.0) {
            return Err(invalid("requires fluid.psi >= 0".into()));
        }

        let theta_e = self.required_f64("bc.theta_E")?;
        let theta_s = self.required_f64("bc.theta_S")?;
        let p_e = self.required_f64("bc.p_E")?;
        let p_s = self.required_f64("bc.p_S")?;
        let q = self.required_f64("bc.q")?;
        if !(theta_s > 0.0) {
            return Err(invalid("requires theta_S > 0".into()));
        }
        if !(theta_e > theta_s) {
            return Err(invalid("requires theta_E > theta_S".into()));
        }
        if !(p_s > 0.0) {
            return Err(invalid("requires p_S > 0".into()));
        }
        if !(p_e > p_s) {
            return Err(invalid("requires p_E > p_S".into()));
        }
        if !(q > 0.0) {
            return Err(invalid("requires q > 0".into()));
        }

        let t_end = self.required_f64("sim.t_end")?;
        if !(t_end > 0.0) {
            return Err(invalid("requires sim.t_end > 0".into()));
        }
        let dt = self.required_f64("sim.dt")?;
        if !(dt > 0.0) {
            return Err(invalid("requires sim.dt > 0".into()));
        }
        let z_levels = self.optional_list("sim.z_levels", vec![0.5])?;
        if z_levels.is_empty() {
            return Err(invalid("requires at least one entry in sim.z_levels".into()));
        }
        for &z in &z_levels {
            if !(0.0..=1.0).contains(&z) {
                return Err(invalid(format!(
                    "requires sim.z_levels within [0, 1], got {z}"
                )));
            }
        }
        let x2_grid_n = self.optional_usize("sim.x2_grid_n", 101)?;
        if x2_grid_n < 2 {
            return Err(invalid("requires sim.x2_grid_n >= 2".into()));
        }
        let output_times = self.optional_list("sim.output_times", vec![t_end])?;
        for w in output_times.windows(2) {
            if !(w[1] > w[0]) {
                return Err(invalid(
                    "requires sim.output_times sorted strictly ascending".into(),
                ));
            }
        }
        for &t in &output_times {
            if !(0.0..=t_end).contains(&t) {
                return Err(invalid(format!(
                    "requires sim.output_times within [0, t_end], got {t}"
                )));
            }
        }
        let ode_rel_tol = self.optional_f64("sim.ode_rel_tol", 1e-6)?;
        let max_steps = self.optional_usize("sim.max_steps", 2_000_000)?;
        let max_step_halvings = self.optional_usize("sim.max_step_halvings", 12)? as u32;
        let pressure_tol = match self.entries.get("sim.pressure_tol") {
            None => None,
            Some(_) => Some(self.required_f64("sim.pressure_tol")?),
        };
        if let Some(tol) = pressure_tol {
            if !(tol > 0.0) {
                return Err(invalid("requires sim.pressure_tol > 0".into()));
            }
        }
        let speed_tol = self.optional_f64("sim.speed_tol", 1e-12)?;
        let bound_slack = self.optional_f64("sim.bound_slack", 1e-6)?;
        let burn_in_factor = self.optional_f64("sim.burn_in_factor", 5.0)?;
        let asymptotic_t = self.optional_f64("sim.asymptotic_t", 1e10)?;
        for (name, v) in [
            ("sim.ode_rel_tol", ode_rel_tol),
            ("sim.speed_tol", speed_tol),
            ("sim.bound_slack", bound_slack),
            ("sim.burn_in_factor", burn_in_factor),
            ("sim.asymptotic_t", asymptotic_t),
        ] {
            if !(v > 0.0) {
                return Err(invalid(format!("requires {name} > 0, got {v}")));
            }
        }

        // Core constructors re-check their own invariants; anything that
        // slips through the named checks above still cannot build an
        // inconsistent scenario.
        let map_core = |e: vaporfront::Error| CliError::Validation {
            message: e.to_string(),
        };
        let medium = MediumParams::new(length, diffusivity).map_err(map_core)?;
        let fluid = FluidParams::new(lambda, boiling, eta, psi).map_err(map_core)?;
        let bc = BoundaryConditions::new(theta_e, theta_s, p_e, p_s, q).map_err(map_core)?;

        Ok(Scenario {
            medium,
            fluid,
            bc,
            sim: SimSettings {
                z_levels,
                x2_grid_n,
                output_times,
                t_end,
                dt,
                ode_rel_tol,
                max_steps,
                max_step_halvings,
                pressure_tol,
                speed_tol,
                bound_slack,
                burn_in_factor,
                asymptotic_t,
            },
            outputs: OutputFlags {
                fields: self.optional_bool("outputs.fields", true)?,
                trajectory: self.optional_bool("outputs.trajectory", true)?,
                report: self.optional_bool("outputs.report", true)?,
            },
        })
    }
}
