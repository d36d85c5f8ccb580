//! Implementations behind the four command verbs. Each returns the process
//! exit code; diagnostics go to stderr, tables to stdout.

use std::path::{Path, PathBuf};

use serde::Serialize;

use mfac_core::analysis;
use mfac_core::edlm::Coefficients;
use mfac_core::harness::{self, ExperimentConfig, SweepRow};
use mfac_core::plants::{self, PlantId};
use mfac_core::signals::SampleHistory;

use crate::config::{apply_set, load_config};
use crate::fmtnum::fmt_g12;
use crate::trace_io;
use crate::CliError;

/// Output directory: explicit flag, then `MFAC_OUT_DIR`, then the cwd.
pub fn resolve_out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("MFAC_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn load_with_overrides(config: &Path, sets: &[String]) -> Result<ExperimentConfig, CliError> {
    let mut cfg = load_config(config)?;
    for assignment in sets {
        apply_set(&mut cfg, assignment)?;
    }
    Ok(cfg)
}

fn trace_path(cfg: &ExperimentConfig, out_dir: &Path) -> PathBuf {
    match &cfg.out {
        Some(p) => {
            let p = PathBuf::from(p);
            if p.is_absolute() {
                p
            } else {
                out_dir.join(p)
            }
        }
        None => out_dir.join(format!("{}_trace.csv", cfg.plant_id)),
    }
}

pub fn simulate(
    config: &Path,
    sets: &[String],
    out_dir: Option<PathBuf>,
    fail_on_divergence: bool,
) -> Result<i32, CliError> {
    let cfg = load_with_overrides(config, sets)?;
    let out_dir = resolve_out_dir(out_dir);
    let trace = harness::run(&cfg)?;
    let path = trace_path(&cfg, &out_dir);
    trace_io::export_trace(&trace, &path)?;
    let s = &trace.summary;
    println!(
        "plant={} lambda={} steps={} rms_error={} steady_state_error={} max_abs_output={} diverged={}",
        cfg.plant_id,
        fmt_g12(cfg.lambda),
        trace.last_k(),
        fmt_g12(s.rms_error),
        fmt_g12(s.steady_state_error),
        fmt_g12(s.max_abs_output),
        s.diverged
    );
    eprintln!("trace written to {}", path.display());
    if fail_on_divergence && s.diverged {
        return Ok(3);
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
struct AnalysisReport {
    plant_id: String,
    lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_step: Option<usize>,
    /// Coefficients of the characteristic polynomial in the backward-shift
    /// operator (the determinant for multi-output plants).
    char_poly: Vec<f64>,
    roots: Vec<[f64; 2]>,
    max_modulus: f64,
    stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    ramp_steady_state_error: Option<f64>,
}

/// Frozen coefficients for analysis: constant-coefficient plants need no
/// state; the nonlinear ones are snapshotted mid-run at `--at-step`.
fn analysis_coefficients(
    cfg: &ExperimentConfig,
    plant: PlantId,
    at_step: Option<usize>,
) -> Result<Coefficients, CliError> {
    let desc = plants::descriptor(plant);
    match plant {
        PlantId::Ex2 | PlantId::Ex4 => {
            let h = SampleHistory::new(desc.m_y, desc.m_u, 1);
            Ok(plants::exact_pg(plant, &h, 1)?)
        }
        _ => {
            let Some(k) = at_step else {
                return Err(CliError::Config(format!(
                    "plant {} has state-dependent coefficients; pass --at-step",
                    plant.as_str()
                )));
            };
            if k < 2 || k >= cfg.horizon {
                return Err(CliError::Config(format!(
                    "--at-step {k} outside the run (2..{})",
                    cfg.horizon
                )));
            }
            let trace = harness::run(cfg)?;
            if trace.last_k() < k {
                return Err(CliError::Config(format!(
                    "run halted at {} before --at-step {k}",
                    trace.last_k()
                )));
            }
            let mut h = SampleHistory::new(desc.m_y, desc.m_u, 1);
            for row in trace.rows.iter().take(k) {
                h.push_sample(row.k, &row.y, &row.u, &row.w)?;
            }
            Ok(plants::exact_pg(plant, &h, k)?)
        }
    }
}

pub fn analyze(
    config: &Path,
    sets: &[String],
    at_step: Option<usize>,
    out_dir: Option<PathBuf>,
) -> Result<i32, CliError> {
    let mut cfg = load_with_overrides(config, sets)?;
    cfg.allow_negative_lambda = true; // frozen-coefficient analysis only
    let v = harness::validate(&cfg)?;
    let out_dir = resolve_out_dir(out_dir);
    let coeffs = analysis_coefficients(&cfg, v.plant, at_step)?;

    let (char_poly, ramp) = match &coeffs {
        Coefficients::Pg(pg) => {
            let t = analysis::char_poly_siso(pg, cfg.lambda);
            let ramp = analysis::steady_state_error_ramp(pg, cfg.lambda).ok();
            (t, ramp)
        }
        Coefficients::Pjm(p) => (analysis::char_poly_mimo(p, cfg.lambda).det(), None),
    };
    let report = analysis::poles(&char_poly)?;
    let out = AnalysisReport {
        plant_id: cfg.plant_id.clone(),
        lambda: cfg.lambda,
        at_step,
        char_poly: char_poly.coeffs().to_vec(),
        roots: report.roots.iter().map(|r| [r.re, r.im]).collect(),
        max_modulus: report.max_modulus,
        stable: report.stable,
        ramp_steady_state_error: ramp,
    };
    let path = out_dir.join(format!("{}_analysis.json", cfg.plant_id));
    let mut text = serde_json::to_string_pretty(&out).expect("report serializes");
    text.push('\n');
    std::fs::create_dir_all(&out_dir)?;
    std::fs::write(&path, text)?;

    println!(
        "plant={} lambda={} poles={} max_modulus={} stable={}",
        cfg.plant_id,
        fmt_g12(cfg.lambda),
        out.roots.len(),
        fmt_g12(out.max_modulus),
        out.stable
    );
    for r in &report.roots {
        println!(
            "  root {} {:+}i (|z| = {})",
            fmt_g12(r.re),
            r.im,
            fmt_g12(r.norm())
        );
    }
    if let Some(e) = out.ramp_steady_state_error {
        println!("  ramp steady-state error = {}", fmt_g12(e));
    }
    eprintln!("report written to {}", path.display());
    Ok(0)
}

/// Run one sweep row per weight on its own thread; results keep list order
/// and are bit-identical to the serial path.
pub fn parallel_sweep(base: &ExperimentConfig, lambdas: &[f64]) -> Result<Vec<SweepRow>, CliError> {
    if lambdas.is_empty() {
        return Err(CliError::Config(
            "lambda list must not be empty".to_string(),
        ));
    }
    let rows: Vec<Result<SweepRow, mfac_core::Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = lambdas
            .iter()
            .map(|&lambda| {
                let cfg = base.clone();
                scope.spawn(move || {
                    let mut cfg = cfg;
                    cfg.lambda = lambda;
                    let trace = harness::run(&cfg)?;
                    Ok(SweepRow {
                        lambda,
                        rms_error: trace.summary.rms_error,
                        steady_state_error: trace.summary.steady_state_error,
                        max_abs_output: trace.summary.max_abs_output,
                        diverged: trace.summary.diverged,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep thread"))
            .collect()
    });
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        out.push(row?);
    }
    Ok(out)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("lambda,rms_error,steady_state_error,max_abs_output,diverged\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_g12(r.lambda),
            fmt_g12(r.rms_error),
            fmt_g12(r.steady_state_error),
            fmt_g12(r.max_abs_output),
            r.diverged
        ));
    }
    out
}

pub fn sweep(
    config: &Path,
    sets: &[String],
    lambdas_arg: &str,
    out_dir: Option<PathBuf>,
) -> Result<i32, CliError> {
    let cfg = load_with_overrides(config, sets)?;
    let lambdas = parse_lambdas(lambdas_arg)?;
    let out_dir = resolve_out_dir(out_dir);
    let rows = parallel_sweep(&cfg, &lambdas)?;
    std::fs::create_dir_all(&out_dir)?;
    let path = out_dir.join("sweep.csv");
    std::fs::write(&path, sweep_csv(&rows))?;
    println!(
        "{:>10} {:>14} {:>14} {:>14} {:>9}",
        "lambda", "rms_error", "steady_err", "max|y|", "diverged"
    );
    for r in &rows {
        println!(
            "{:>10} {:>14} {:>14} {:>14} {:>9}",
            fmt_g12(r.lambda),
            fmt_g12(r.rms_error),
            fmt_g12(r.steady_state_error),
            fmt_g12(r.max_abs_output),
            r.diverged
        );
    }
    eprintln!("sweep written to {}", path.display());
    Ok(0)
}

pub fn parse_lambdas(spec: &str) -> Result<Vec<f64>, CliError> {
    let items: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(CliError::Config("empty --lambdas list".to_string()));
    }
    items
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Config(format!("--lambdas entry `{s}` is not a number")))
        })
        .collect()
}

/// Six-decimal rendering with the sign of a rounded zero normalized away.
fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn table1_csv(rows: &[harness::Table1Row]) -> String {
    let mut out = String::from("lambda,measured_error\n");
    for r in rows {
        out.push_str(&format!(
            "{},{}\n",
            fmt_g12(r.lambda),
            fmt6(r.measured_error)
        ));
    }
    out
}

pub fn table1(out_dir: Option<PathBuf>) -> Result<i32, CliError> {
    let rows = harness::table1()?;
    let out_dir = resolve_out_dir(out_dir);
    std::fs::create_dir_all(&out_dir)?;
    let path = out_dir.join("table1.csv");
    std::fs::write(&path, table1_csv(&rows))?;
    println!("{:>8} {:>16}", "lambda", "measured_error");
    for r in &rows {
        println!("{:>8} {:>16}", fmt_g12(r.lambda), fmt6(r.measured_error));
    }
    eprintln!("table written to {}", path.display());
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfac_core::controller::Compensation;

    fn base() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(
            "ex1",
            "traj_eq20",
            "dist_eq19",
            0.0,
            1,
            2,
            Compensation::EstimatedDisturbance,
        );
        cfg.horizon = 700;
        cfg
    }

    #[test]
    fn parallel_matches_serial() {
        let lambdas = [0.0, 1.5, 3.0];
        let par = parallel_sweep(&base(), &lambdas).unwrap();
        let ser = harness::sweep(&base(), &lambdas).unwrap();
        assert_eq!(par, ser);
        assert_eq!(sweep_csv(&par), sweep_csv(&ser));
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambdas("0,1.5, 3").unwrap(), vec![0.0, 1.5, 3.0]);
        assert!(parse_lambdas("").is_err());
        assert!(parse_lambdas("a,b").is_err());
    }

    #[test]
    fn table_formatting_is_six_decimals() {
        let rows = harness::table1().unwrap();
        let csv = table1_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "lambda,measured_error");
        assert_eq!(lines[1], "0,0.000000");
        assert_eq!(lines[2], "0.1,0.100000");
        assert_eq!(lines[3], "-0.1,-0.100000");
        assert_eq!(lines[4], "0.2,0.200000");
    }
}
