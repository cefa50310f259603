//! Browser bindings for the vapor-front model.
//!
//! Three operations back the demo page: a field snapshot along the pore at a
//! chosen time, the moving-front trajectory against its majorant and arrest
//! bound at a chosen gap coordinate, and the bound profile across the gap.
//! Parameters arrive as a flat JSON object using the scenario-file key names;
//! results leave as JSON strings the page plots directly.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use vaporfront::front::{
    advance_front, arrest_bound, condensation_fraction_limit, majorant_position,
    plateau_fraction, SimConfig,
};
use vaporfront::numerics::OdeStepperConfig;
use vaporfront::physics::{
    saturation_pressure, temperature, viscosity, BoundaryConditions, FluidParams, MediumParams,
};
use vaporfront::{asymptotic_pressure, profile_speed, PressureProfile};

/// Flat parameter set, named after the scenario-file keys.
#[derive(Debug, Clone, Copy, Deserialize)]
pub struct Params {
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "K")]
    pub diffusivity: f64,
    pub lambda_i: f64,
    pub pi_s: f64,
    pub eta_e: f64,
    pub psi: f64,
    pub theta_e: f64,
    pub theta_s: f64,
    pub p_e: f64,
    pub p_s: f64,
    pub q: f64,
}

struct Model {
    medium: MediumParams,
    fluid: FluidParams,
    bc: BoundaryConditions,
}

impl Params {
    fn build(&self) -> Result<Model, String> {
        let err = |e: vaporfront::Error| e.to_string();
        Ok(Model {
            medium: MediumParams::new(self.length, self.diffusivity).map_err(err)?,
            fluid: FluidParams::new(self.lambda_i, self.pi_s, self.eta_e, self.psi)
                .map_err(err)?,
            bc: BoundaryConditions::new(self.theta_e, self.theta_s, self.p_e, self.p_s, self.q)
                .map_err(err)?,
        })
    }
}

fn parse_params(json: &str) -> Result<Model, String> {
    let params: Params = serde_json::from_str(json).map_err(|e| format!("bad params: {e}"))?;
    params.build()
}

#[derive(Debug, Serialize)]
pub struct FieldSnapshot {
    pub x2: Vec<f64>,
    pub theta: Vec<f64>,
    pub eta: Vec<f64>,
    pub p_i: Vec<f64>,
    pub p_vs: Vec<f64>,
    pub delta: Vec<f64>,
    pub p_i_limit: Vec<f64>,
    pub delta_limit: Vec<f64>,
    pub theta_e: f64,
    pub theta_s: f64,
    pub p_e: f64,
    pub p_s: f64,
}

/// Temperature, viscosity, pressures and condensation fraction along the
/// pore at time `t`, next to their long-time limits.
pub fn field_snapshot(params_json: &str, t: f64, points: usize) -> Result<String, String> {
    let model = parse_params(params_json)?;
    let n = points.clamp(2, 2000);
    let err = |e: vaporfront::Error| e.to_string();
    let grid: Vec<f64> = (0..n)
        .map(|i| model.medium.pore_length() * i as f64 / (n - 1) as f64)
        .collect();
    let tol = 1e-9 * model.bc.inlet_pressure();
    let profile =
        PressureProfile::sample(&model.medium, &model.fluid, &model.bc, &grid, t, tol)
            .map_err(err)?;
    let mut snapshot = FieldSnapshot {
        x2: grid.clone(),
        theta: Vec::with_capacity(n),
        eta: Vec::with_capacity(n),
        p_i: profile.pressures().to_vec(),
        p_vs: Vec::with_capacity(n),
        delta: Vec::with_capacity(n),
        p_i_limit: Vec::with_capacity(n),
        delta_limit: Vec::with_capacity(n),
        theta_e: model.bc.inlet_temperature(),
        theta_s: model.bc.ambient_temperature(),
        p_e: model.bc.inlet_pressure(),
        p_s: model.bc.outlet_pressure(),
    };
    for (i, &x) in grid.iter().enumerate() {
        let theta = temperature(&model.medium, &model.bc, x, t).map_err(err)?;
        let eta = viscosity(&model.fluid, &model.bc, theta).map_err(err)?;
        let p = snapshot.p_i[i];
        let p_vs = saturation_pressure(&model.fluid, &model.bc, theta).map_err(err)?;
        snapshot.theta.push(theta);
        snapshot.eta.push(eta);
        snapshot.p_vs.push(p_vs);
        snapshot.delta.push(((p - p_vs) / p).max(0.0));
        snapshot
            .p_i_limit
            .push(asymptotic_pressure(&model.medium, &model.fluid, &model.bc, x).map_err(err)?);
        snapshot.delta_limit.push(
            condensation_fraction_limit(&model.medium, &model.fluid, &model.bc, x)
                .map_err(err)?,
        );
    }
    serde_json::to_string(&snapshot).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub x2: Vec<f64>,
    pub k0: Vec<f64>,
    pub majorant: Vec<f64>,
    pub bound: Option<f64>,
    pub bound_applicable: bool,
    pub plateau: f64,
    pub profile_speed: f64,
    pub pore_length: f64,
}

/// Integrate the moving front at gap coordinate `z` up to `t_end` and return
/// the trajectory decimated to at most 1500 points, with the majorant curve
/// where the bound applies.
pub fn front_trajectory(
    params_json: &str,
    z: f64,
    t_end: f64,
    dt: f64,
) -> Result<String, String> {
    let model = parse_params(params_json)?;
    let err = |e: vaporfront::Error| e.to_string();
    let cfg = SimConfig {
        stepper: OdeStepperConfig {
            dt,
            rel_tol: 1e-6,
            max_steps: 400_000,
        },
        ..SimConfig::for_conditions(&model.bc)
    };
    let traj =
        advance_front(&model.medium, &model.fluid, &model.bc, &cfg, z, t_end).map_err(err)?;
    let bound = arrest_bound(&model.fluid, &model.bc, z).map_err(err)?;
    let stride = (traj.samples.len() / 1500).max(1);
    let mut out = Trajectory {
        t: Vec::new(),
        x2: Vec::new(),
        k0: Vec::new(),
        majorant: Vec::new(),
        bound: bound.applicable.then_some(bound.position),
        bound_applicable: bound.applicable,
        plateau: plateau_fraction(&model.fluid, &model.bc),
        profile_speed: profile_speed(&model.bc, z).map_err(err)?,
        pore_length: model.medium.pore_length(),
    };
    let last = traj.samples.len() - 1;
    for (i, s) in traj.samples.iter().enumerate() {
        if i % stride != 0 && i != last {
            continue;
        }
        out.t.push(s.t);
        out.x2.push(s.position);
        out.k0.push(s.recession);
        if bound.applicable {
            out.majorant
                .push(majorant_position(&model.fluid, &model.bc, z, s.t).map_err(err)?);
        }
    }
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct BoundProfile {
    pub z: Vec<f64>,
    pub bound: Vec<f64>,
    pub applicable: bool,
    pub plateau: f64,
    pub pore_length: f64,
}

/// Arrest bound across the gap: `w0(z)/c` per gap coordinate, or the
/// applicability flag alone when the plateau hypothesis fails.
pub fn bound_profile(params_json: &str, points: usize) -> Result<String, String> {
    let model = parse_params(params_json)?;
    let err = |e: vaporfront::Error| e.to_string();
    let n = points.clamp(2, 2000);
    let mut out = BoundProfile {
        z: Vec::with_capacity(n),
        bound: Vec::with_capacity(n),
        applicable: plateau_fraction(&model.fluid, &model.bc) > 0.0,
        plateau: plateau_fraction(&model.fluid, &model.bc),
        pore_length: model.medium.pore_length(),
    };
    for i in 0..n {
        let z = i as f64 / (n - 1) as f64;
        out.z.push(z);
        if out.applicable {
            out.bound
                .push(arrest_bound(&model.fluid, &model.bc, z).map_err(err)?.position);
        }
    }
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = fieldSnapshot)]
pub fn field_snapshot_js(params_json: &str, t: f64, points: usize) -> Result<String, JsValue> {
    field_snapshot(params_json, t, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = frontTrajectory)]
pub fn front_trajectory_js(
    params_json: &str,
    z: f64,
    t_end: f64,
    dt: f64,
) -> Result<String, JsValue> {
    front_trajectory(params_json, z, t_end, dt).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = boundProfile)]
pub fn bound_profile_js(params_json: &str, points: usize) -> Result<String, JsValue> {
    bound_profile(params_json, points).map_err(|e| JsValue::from_str(&e))
}
