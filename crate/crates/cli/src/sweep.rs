//! Parameter sweeps: one independent run per value, failures isolated per
//! row, results combined into a single table.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use vaporfront::physics::{BoundaryConditions, FluidParams, MediumParams};

use crate::report::RunReport;
use crate::run::run;
use crate::scenario::Scenario;
use crate::CliError;

/// Sweepable scalar parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    ThetaE,
    PE,
    Q,
    LambdaI,
    K,
}

impl SweepParam {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParam::ThetaE => "theta_E",
            SweepParam::PE => "p_E",
            SweepParam::Q => "q",
            SweepParam::LambdaI => "lambda_i",
            SweepParam::K => "K",
        }
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theta_E" => Ok(SweepParam::ThetaE),
            "p_E" => Ok(SweepParam::PE),
            "q" => Ok(SweepParam::Q),
            "lambda_i" => Ok(SweepParam::LambdaI),
            "K" => Ok(SweepParam::K),
            other => Err(CliError::Validation {
                message: format!(
                    "unknown sweep parameter `{other}` \
                     (one of theta_E, p_E, q, lambda_i, K)"
                ),
            }),
        }
    }
}

/// Outcome of one sweep row.
#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub result: Result<RunReport, CliError>,
}

#[derive(Debug)]
pub struct SweepReport {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(&r.result, Ok(rep) if rep.verdict()))
    }

    pub fn any_numeric_failure(&self) -> bool {
        self.rows.iter().any(|r| match &r.result {
            Err(e) => e.exit_code() == 3,
            Ok(rep) => rep.has_numeric_failure(),
        })
    }
}

/// Rebuild the scenario with one scalar replaced, re-validating everything.
fn with_value(base: &Scenario, param: SweepParam, value: f64) -> Result<Scenario, CliError> {
    let map_core = |e: vaporfront::Error| CliError::Validation {
        message: format!("sweep value {value} for {}: {e}", param.key()),
    };
    let mut s = base.clone();
    match param {
        SweepParam::ThetaE => {
            s.bc = BoundaryConditions::new(
                value,
                s.bc.ambient_temperature(),
                s.bc.inlet_pressure(),
                s.bc.outlet_pressure(),
                s.bc.flux(),
            )
            .map_err(map_core)?;
        }
        SweepParam::PE => {
            s.bc = BoundaryConditions::new(
                s.bc.inlet_temperature(),
                s.bc.ambient_temperature(),
                value,
                s.bc.outlet_pressure(),
                s.bc.flux(),
            )
            .map_err(map_core)?;
        }
        SweepParam::Q => {
            s.bc = BoundaryConditions::new(
                s.bc.inlet_temperature(),
                s.bc.ambient_temperature(),
                s.bc.inlet_pressure(),
                s.bc.outlet_pressure(),
                value,
            )
            .map_err(map_core)?;
        }
        SweepParam::LambdaI => {
            s.fluid = FluidParams::new(
                value,
                s.fluid.boiling_pressure(),
                s.fluid.inlet_viscosity(),
                s.fluid.sutherland_constant(),
            )
            .map_err(map_core)?;
        }
        SweepParam::K => {
            s.medium =
                MediumParams::new(s.medium.pore_length(), value).map_err(map_core)?;
        }
    }
    Ok(s)
}

/// Run the scenario once per value. Rows execute in parallel; each run owns
/// a private subdirectory, and rows are reported in input order.
pub fn sweep(
    base: &Scenario,
    param: SweepParam,
    values: &[f64],
    out_dir: &Path,
    quiet: bool,
) -> Result<SweepReport, CliError> {
    if values.is_empty() {
        return Err(CliError::Validation {
            message: "sweep needs at least one value".into(),
        });
    }
    std::fs::create_dir_all(out_dir)?;
    let rows: Vec<SweepRow> = values
        .par_iter()
        .enumerate()
        .map(|(idx, &value)| {
            let result = with_value(base, param, value).and_then(|scn| {
                let sub = out_dir.join(format!("{}_{idx}", param.key()));
                run(&scn, &sub, true)
            });
            SweepRow { value, result }
        })
        .collect();
    if !quiet {
        for row in &rows {
            match &row.result {
                Ok(rep) => println!(
                    "{} = {}: {}",
                    param.key(),
                    row.value,
                    if rep.verdict() { "PASS" } else { "FAIL" }
                ),
                Err(e) => println!("{} = {}: ERROR ({e})", param.key(), row.value),
            }
        }
    }
    let report = SweepReport { param, rows };
    write_sweep_table(base, &report, out_dir)?;
    if !quiet {
        println!("wrote sweep.csv");
    }
    Ok(report)
}

fn write_sweep_table(
    base: &Scenario,
    report: &SweepReport,
    out_dir: &Path,
) -> Result<(), CliError> {
    use std::io::Write;
    let mut file = BufWriter::new(File::create(out_dir.join("sweep.csv"))?);
    writeln!(file, "# vaporfront {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(file, "# table = sweep")?;
    writeln!(file, "# parameter = {}", report.param.key())?;
    for line in base.to_text().lines() {
        writeln!(file, "# {line}")?;
    }
    let mut csv = csv::Writer::from_writer(file);
    csv.write_record([
        "param",
        "value",
        "z",
        "bound_applicable",
        "bound",
        "x2_final",
        "status",
        "error",
    ])?;
    for row in &report.rows {
        match &row.result {
            Ok(rep) => {
                for zr in &rep.rows {
                    csv.write_record([
                        report.param.key().to_string(),
                        format!("{}", row.value),
                        format!("{}", zr.z),
                        zr.bound.applicable.to_string(),
                        if zr.bound.applicable {
                            format!("{}", zr.bound.position)
                        } else {
                            String::new()
                        },
                        format!("{}", zr.final_position),
                        if zr.passed() { "PASS" } else { "FAIL" }.to_string(),
                        zr.error.clone().unwrap_or_default(),
                    ])?;
                }
            }
            Err(e) => {
                csv.write_record([
                    report.param.key().to_string(),
                    format!("{}", row.value),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    "ERROR".to_string(),
                    e.to_string(),
                ])?;
            }
        }
    }
    csv.flush()?;
    Ok(())
}
