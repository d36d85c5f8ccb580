//! Trace persistence: CSV rows plus a JSON summary sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use mfac_core::harness::SimulationTrace;

use crate::fmtnum::fmt_g12;
use crate::CliError;

/// Summary schema written next to every trace.
#[derive(Debug, Serialize)]
pub struct SummaryFile {
    pub rms_error: f64,
    pub steady_state_error: f64,
    pub max_abs_output: f64,
    pub diverged: bool,
}

/// Header `k,y_star_1..,y_1..,u_1..,w_1..,w_hat_1..,e_1..` sized by the
/// run's dimensions.
pub fn csv_header(m_y: usize, m_u: usize) -> String {
    let mut cols = vec!["k".to_string()];
    let group =
        |name: &str, n: usize| -> Vec<String> { (1..=n).map(|i| format!("{name}_{i}")).collect() };
    cols.extend(group("y_star", m_y));
    cols.extend(group("y", m_y));
    cols.extend(group("u", m_u));
    cols.extend(group("w", m_y));
    cols.extend(group("w_hat", m_y));
    cols.extend(group("e", m_y));
    cols.join(",")
}

/// Render the whole trace as CSV text.
pub fn trace_csv(trace: &SimulationTrace) -> String {
    let mut out = String::new();
    out.push_str(&csv_header(trace.m_y, trace.m_u));
    out.push('\n');
    for row in &trace.rows {
        out.push_str(&row.k.to_string());
        for group in [&row.y_star, &row.y, &row.u, &row.w, &row.w_hat, &row.e] {
            for v in group.iter() {
                out.push(',');
                out.push_str(&fmt_g12(*v));
            }
        }
        out.push('\n');
    }
    out
}

pub fn summary_json(trace: &SimulationTrace) -> String {
    let file = SummaryFile {
        rms_error: trace.summary.rms_error,
        steady_state_error: trace.summary.steady_state_error,
        max_abs_output: trace.summary.max_abs_output,
        diverged: trace.summary.diverged,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("summary serializes");
    s.push('\n');
    s
}

/// Sidecar path: `foo.csv` -> `foo.summary.json`.
pub fn summary_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("summary.json")
}

/// Write the CSV trace and its JSON summary sidecar.
pub fn export_trace(trace: &SimulationTrace, csv_path: &Path) -> Result<(), CliError> {
    if let Some(parent) = csv_path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut csv = std::fs::File::create(csv_path)?;
    csv.write_all(trace_csv(trace).as_bytes())?;
    let mut summary = std::fs::File::create(summary_path(csv_path))?;
    summary.write_all(summary_json(trace).as_bytes())?;
    Ok(())
}
