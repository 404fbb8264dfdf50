//! Machine-readable run report: one JSON artifact per solve, with the full
//! iteration trace embedded and an optional flat CSV view for plotting.

use std::fs;
use std::path::Path;

use ccm_core::{OptimizerConfig, SolveResult, SolveStatus};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub path: String,
    pub n: usize,
    pub label: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub initial_step: f64,
    pub armijo_c: f64,
    pub backtrack_factor: f64,
    pub max_backtracks: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRow {
    pub iter: usize,
    pub cost: f64,
    pub grad_norm: f64,
    pub step: f64,
    pub backtracks: usize,
}

/// Complete record of one solve; the schema is identical for every status.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: InstanceInfo,
    pub config: ConfigEcho,
    pub status: String,
    pub cost_final: f64,
    pub grad_norm_final: f64,
    pub iterations: usize,
    pub wall_time_seconds: f64,
    pub trace: Vec<TraceRow>,
}

pub fn status_name(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Converged => "converged",
        SolveStatus::MaxIters => "max_iters",
        SolveStatus::LineSearchFailed => "line_search_failed",
    }
}

impl RunReport {
    pub fn new(
        instance: InstanceInfo,
        seed: u64,
        config: &OptimizerConfig,
        result: &SolveResult,
        wall_time_seconds: f64,
    ) -> Self {
        Self {
            instance,
            config: ConfigEcho {
                seed,
                max_iters: config.max_iters,
                grad_tol: config.grad_tol,
                initial_step: config.initial_step,
                armijo_c: config.armijo_c,
                backtrack_factor: config.backtrack_factor,
                max_backtracks: config.max_backtracks,
            },
            status: status_name(result.status).to_string(),
            cost_final: result.cost_final,
            grad_norm_final: result.grad_norm_final(),
            iterations: result.iterations(),
            wall_time_seconds,
            trace: result
                .trace
                .iter()
                .map(|rec| TraceRow {
                    iter: rec.iter,
                    cost: rec.cost,
                    grad_norm: rec.grad_norm,
                    step: rec.step,
                    backtracks: rec.backtracks,
                })
                .collect(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), String> {
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| format!("failed to encode run report: {e}"))?;
        fs::write(path, body + "\n").map_err(|e| format!("failed to write {}: {e}", path.display()))
    }

    /// One row per iteration: `iter,cost,grad_norm,step,backtracks`.
    pub fn write_trace_csv(&self, path: &Path) -> Result<(), String> {
        let mut body = String::from("iter,cost,grad_norm,step,backtracks\n");
        for row in &self.trace {
            body.push_str(&format!(
                "{},{},{},{},{}\n",
                row.iter, row.cost, row.grad_norm, row.step, row.backtracks
            ));
        }
        fs::write(path, body).map_err(|e| format!("failed to write {}: {e}", path.display()))
    }
}
