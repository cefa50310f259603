//! Single-scenario execution: field tables, front trajectories, the
//! asymptotic comparison table and the verification report.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use vaporfront::front::{
    advance_front, arrest_bound, condensation_fraction_limit, majorant_position, FrontSample,
    FrontTrajectory,
};
use vaporfront::physics::{saturation_pressure, temperature, viscosity};
use vaporfront::{asymptotic_pressure, Error as CoreError, PressureProfile};

use crate::report::{RunReport, ZReport};
use crate::scenario::Scenario;
use crate::CliError;

/// Execute one scenario, writing the enabled tables into `out_dir`.
/// The report is built even when individual levels fail numerically; a
/// failure only shows up in the exit status and the report rows.
pub fn run(scenario: &Scenario, out_dir: &Path, quiet: bool) -> Result<RunReport, CliError> {
    std::fs::create_dir_all(out_dir)?;
    let cfg = scenario.sim_config();
    let grid = axial_grid(scenario);
    let mut all_finite = true;

    if scenario.outputs.fields {
        for (idx, &t) in scenario.sim.output_times.iter().enumerate() {
            let finite = write_fields_table(scenario, &grid, t, idx, out_dir)?;
            all_finite &= finite;
            if !quiet {
                println!("wrote fields_{idx}.csv (t = {t})");
            }
        }
        let finite = write_asymptotic_table(scenario, &grid, out_dir)?;
        all_finite &= finite;
        if !quiet {
            println!("wrote asymptotic.csv (t = {})", scenario.sim.asymptotic_t);
        }
    }

    let burn_in = cfg.burn_in_time(&scenario.medium);
    let mut rows = Vec::with_capacity(scenario.sim.z_levels.len());
    let mut trajectories: Vec<(f64, Vec<FrontSample>)> = Vec::new();
    for &z in &scenario.sim.z_levels {
        match advance_front(
            &scenario.medium,
            &scenario.fluid,
            &scenario.bc,
            &cfg,
            z,
            scenario.sim.t_end,
        ) {
            Ok(traj) => {
                rows.push(evaluate_level(scenario, &cfg, burn_in, &traj));
                trajectories.push((z, traj.samples));
            }
            Err(err) => {
                let (partial, cause) = match err {
                    CoreError::FrontIntegration { partial, cause, .. } => (partial, *cause),
                    other => (Vec::new(), other),
                };
                let bound = arrest_bound(&scenario.fluid, &scenario.bc, z)
                    .expect("z validated on load");
                let last = partial.last().copied().unwrap_or(FrontSample {
                    t: 0.0,
                    position: 0.0,
                    recession: 0.0,
                });
                rows.push(ZReport {
                    z,
                    profile_speed: scenario.bc.flux() * (z - z * z),
                    bound,
                    final_t: last.t,
                    final_position: last.position,
                    final_recession: last.recession,
                    velocity_ratio: 0.0,
                    within_bound: None,
                    dominated_after_burn_in: None,
                    step_halving_delta: f64::NAN,
                    max_quad_error: f64::NAN,
                    error: Some(cause.to_string()),
                });
                trajectories.push((z, partial));
            }
        }
        if !quiet {
            println!("integrated front at z = {z}");
        }
    }

    if scenario.outputs.trajectory {
        all_finite &= write_trajectory_table(scenario, &trajectories, out_dir)?;
        if !quiet {
            println!("wrote trajectory.csv");
        }
    }

    let report = RunReport {
        max_quad_error: rows
            .iter()
            .map(|r| r.max_quad_error)
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max),
        speed_tol: cfg.speed_tol,
        max_step_halving_delta: rows
            .iter()
            .map(|r| r.step_halving_delta)
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max),
        all_finite,
        burn_in_time: burn_in,
        rows,
    };

    if scenario.outputs.report {
        write_report_table(scenario, &report, out_dir)?;
        if !quiet {
            println!(
                "wrote report.csv (verdict: {})",
                if report.verdict() { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(report)
}

fn axial_grid(scenario: &Scenario) -> Vec<f64> {
    let n = scenario.sim.x2_grid_n;
    let length = scenario.medium.pore_length();
    (0..n)
        .map(|i| length * i as f64 / (n - 1) as f64)
        .collect()
}

fn evaluate_level(
    scenario: &Scenario,
    cfg: &vaporfront::front::SimConfig,
    burn_in: f64,
    traj: &FrontTrajectory,
) -> ZReport {
    let last = traj.final_sample();
    let velocity_ratio = if traj.profile_speed > 0.0 {
        (traj.profile_speed - last.recession) / traj.profile_speed
    } else {
        0.0
    };
    let within_bound = traj
        .bound
        .applicable
        .then(|| traj.within_bound(cfg.bound_slack));
    let dominated = if traj.bound.applicable && scenario.sim.t_end > burn_in {
        Some(traj.dominated_by(
            |t| {
                majorant_position(&scenario.fluid, &scenario.bc, traj.z, t)
                    .expect("bound applicable")
            },
            burn_in,
            cfg.bound_slack,
        ))
    } else {
        None
    };
    ZReport {
        z: traj.z,
        profile_speed: traj.profile_speed,
        bound: traj.bound,
        final_t: last.t,
        final_position: last.position,
        final_recession: last.recession,
        velocity_ratio,
        within_bound,
        dominated_after_burn_in: dominated,
        step_halving_delta: traj.step_halving_delta,
        max_quad_error: traj.max_quad_error,
        error: None,
    }
}

/// Comment block shared by every table: code version, table name and the
/// full parameter set, so each file is self-describing.
fn write_preamble(
    w: &mut impl Write,
    scenario: &Scenario,
    table: &str,
    extra: &[(&str, String)],
) -> std::io::Result<()> {
    writeln!(w, "# vaporfront {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# table = {table}")?;
    for (k, v) in extra {
        writeln!(w, "# {k} = {v}")?;
    }
    for line in scenario.to_text().lines() {
        writeln!(w, "# {line}")?;
    }
    Ok(())
}

fn finite_or_flag(value: f64, finite: &mut bool) -> f64 {
    if !value.is_finite() {
        *finite = false;
    }
    value
}

/// Field snapshot at one output time: temperature, viscosity, applied
/// pressure, saturation pressure and condensation fraction on the grid.
fn write_fields_table(
    scenario: &Scenario,
    grid: &[f64],
    t: f64,
    idx: usize,
    out_dir: &Path,
) -> Result<bool, CliError> {
    let cfg = scenario.sim_config();
    let profile = PressureProfile::sample(
        &scenario.medium,
        &scenario.fluid,
        &scenario.bc,
        grid,
        t,
        cfg.pressure_tol,
    )?;
    let mut finite = true;
    let mut file = BufWriter::new(File::create(out_dir.join(format!("fields_{idx}.csv")))?);
    write_preamble(&mut file, scenario, "fields", &[("t", format!("{t}"))])?;
    let mut csv = csv::Writer::from_writer(file);
    csv.write_record(["x2", "theta", "eta", "p_i", "p_vs", "delta"])?;
    for (i, &x) in grid.iter().enumerate() {
        let theta = temperature(&scenario.medium, &scenario.bc, x, t)?;
        let eta = viscosity(&scenario.fluid, &scenario.bc, theta)?;
        let p = profile.pressures()[i];
        let p_vs = saturation_pressure(&scenario.fluid, &scenario.bc, theta)?;
        let delta = ((p - p_vs) / p).max(0.0);
        let row = [x, theta, eta, p, p_vs, delta];
        csv.write_record(row.map(|v| format!("{}", finite_or_flag(v, &mut finite))))?;
    }
    csv.flush()?;
    Ok(finite)
}

/// Late-time fields next to their closed-form limits.
fn write_asymptotic_table(
    scenario: &Scenario,
    grid: &[f64],
    out_dir: &Path,
) -> Result<bool, CliError> {
    let cfg = scenario.sim_config();
    let t = scenario.sim.asymptotic_t;
    let profile = PressureProfile::sample(
        &scenario.medium,
        &scenario.fluid,
        &scenario.bc,
        grid,
        t,
        cfg.pressure_tol,
    )?;
    let mut finite = true;
    let mut file = BufWriter::new(File::create(out_dir.join("asymptotic.csv"))?);
    write_preamble(&mut file, scenario, "asymptotic", &[("t", format!("{t}"))])?;
    let mut csv = csv::Writer::from_writer(file);
    csv.write_record(["x2", "p_i", "p_i_limit", "delta", "delta_limit"])?;
    for (i, &x) in grid.iter().enumerate() {
        let p = profile.pressures()[i];
        let p_limit = asymptotic_pressure(&scenario.medium, &scenario.fluid, &scenario.bc, x)?;
        let theta = temperature(&scenario.medium, &scenario.bc, x, t)?;
        let p_vs = saturation_pressure(&scenario.fluid, &scenario.bc, theta)?;
        let delta = ((p - p_vs) / p).max(0.0);
        let delta_limit =
            condensation_fraction_limit(&scenario.medium, &scenario.fluid, &scenario.bc, x)?;
        let row = [x, p, p_limit, delta, delta_limit];
        csv.write_record(row.map(|v| format!("{}", finite_or_flag(v, &mut finite))))?;
    }
    csv.flush()?;
    Ok(finite)
}

/// Long-format trajectory table: one row per recorded sample per level.
fn write_trajectory_table(
    scenario: &Scenario,
    trajectories: &[(f64, Vec<FrontSample>)],
    out_dir: &Path,
) -> Result<bool, CliError> {
    let mut finite = true;
    let mut file = BufWriter::new(File::create(out_dir.join("trajectory.csv"))?);
    write_preamble(&mut file, scenario, "trajectory", &[])?;
    let mut csv = csv::Writer::from_writer(file);
    csv.write_record(["z", "t", "x2", "k0"])?;
    for (z, samples) in trajectories {
        for s in samples {
            let row = [*z, s.t, s.position, s.recession];
            csv.write_record(row.map(|v| format!("{}", finite_or_flag(v, &mut finite))))?;
        }
    }
    csv.flush()?;
    Ok(finite)
}

fn write_report_table(
    scenario: &Scenario,
    report: &RunReport,
    out_dir: &Path,
) -> Result<(), CliError> {
    let mut file = BufWriter::new(File::create(out_dir.join("report.csv"))?);
    write_preamble(
        &mut file,
        scenario,
        "report",
        &[
            (
                "verdict",
                if report.verdict() { "PASS" } else { "FAIL" }.to_string(),
            ),
            ("burn_in_time", format!("{}", report.burn_in_time)),
            (
                "max_step_halving_delta",
                format!("{}", report.max_step_halving_delta),
            ),
            ("max_quad_error", format!("{}", report.max_quad_error)),
            ("speed_tol", format!("{}", report.speed_tol)),
        ],
    )?;
    let mut csv = csv::Writer::from_writer(file);
    csv.write_record([
        "z",
        "w0",
        "bound_applicable",
        "bound",
        "final_t",
        "x2_final",
        "k0_final",
        "velocity_ratio",
        "within_bound",
        "dominated_after_burn_in",
        "step_halving_delta",
        "max_quad_error",
        "status",
        "error",
    ])?;
    let opt_bool = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
    let finite_num = |v: f64| {
        if v.is_finite() {
            format!("{v}")
        } else {
            String::new()
        }
    };
    for row in &report.rows {
        csv.write_record([
            format!("{}", row.z),
            format!("{}", row.profile_speed),
            row.bound.applicable.to_string(),
            if row.bound.applicable {
                format!("{}", row.bound.position)
            } else {
                String::new()
            },
            format!("{}", row.final_t),
            format!("{}", row.final_position),
            format!("{}", row.final_recession),
            format!("{}", row.velocity_ratio),
            opt_bool(row.within_bound),
            opt_bool(row.dominated_after_burn_in),
            finite_num(row.step_halving_delta),
            finite_num(row.max_quad_error),
            if row.passed() { "PASS" } else { "FAIL" }.to_string(),
            row.error.clone().unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}
