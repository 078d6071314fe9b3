//! Preset configurations reproducing the published convergence tables, at
//! the original ("paper") resolution or a faster desk scale, and a parallel
//! runner for the rows of a table.

use rayon::prelude::*;

use fracl1::{ConvergenceReport, Error, Result};

use crate::config::{ExperimentConfig, Problem, Projection};
use crate::experiment::{run_n_sweep, run_t_sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Desk,
    Paper,
}

impl Scale {
    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "paper" => Ok(Scale::Paper),
            other => Err(Error::InvalidArgument(format!(
                "unknown scale '{other}' (expected desk or paper)"
            ))),
        }
    }
}

/// One table row: a label plus either an N sweep or a fixed-N time sweep.
#[derive(Debug, Clone)]
pub struct RowPlan {
    pub label: String,
    pub config: ExperimentConfig,
    /// when set, run a t sweep with the single step count config.n_list[0]
    pub t_list: Option<Vec<f64>>,
}

const T_DECADES: [f64; 6] = [1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10];

fn sub_config(alpha: f64, ic: &str, proj: Projection, m: usize, t: f64, n_list: Vec<usize>) -> ExperimentConfig {
    ExperimentConfig {
        problem: Problem::Subdiffusion,
        alpha,
        beta: None,
        ic: ic.into(),
        t,
        m,
        n_list,
        projection: Some(proj),
        normalization: None,
        reference: None,
    }
}

fn rl_config(
    alpha: f64,
    beta: f64,
    ic: &str,
    proj: Projection,
    m: usize,
    t: f64,
    n_list: Vec<usize>,
    n_ref: usize,
) -> ExperimentConfig {
    ExperimentConfig {
        problem: Problem::SpaceTimeFractional,
        alpha,
        beta: Some(beta),
        ic: ic.into(),
        t,
        m,
        n_list,
        projection: Some(proj),
        normalization: None,
        reference: Some(format!("self:{n_ref}")),
    }
}

/// Row plans for tables 1..=6.
pub fn table_plans(id: u8, scale: Scale) -> Result<Vec<RowPlan>> {
    let alphas = [0.1, 0.5, 0.9];
    let n6 = vec![10usize, 20, 40, 80, 160, 320];
    let n5 = vec![5usize, 10, 20, 40, 80];
    let mut rows = Vec::new();
    match id {
        1 => {
            let m = 1 << 12;
            for &alpha in &alphas {
                rows.push(RowPlan {
                    label: format!("alpha={alpha} (a) chi_(0,1/2)"),
                    config: sub_config(alpha, "indicator_half", Projection::L2, m, 0.1, n6.clone()),
                    t_list: None,
                });
                rows.push(RowPlan {
                    label: format!("alpha={alpha} (b) x(1-x)"),
                    config: sub_config(alpha, "xoneminusx", Projection::Ritz, m, 0.1, n6.clone()),
                    t_list: None,
                });
            }
        }
        2 => {
            let m = if scale == Scale::Paper { 1 << 13 } else { 1 << 11 };
            for &alpha in &alphas {
                rows.push(RowPlan {
                    label: format!("alpha={alpha} (a) sin(2 pi x)"),
                    config: sub_config(alpha, "sin2pix", Projection::Ritz, m, 0.1, n6.clone()),
                    t_list: None,
                });
                rows.push(RowPlan {
                    label: format!("alpha={alpha} (b) x^(-1/4)"),
                    config: sub_config(alpha, "xnegquarter", Projection::L2, m, 0.1, n6.clone()),
                    t_list: None,
                });
            }
        }
        3 => {
            let m = if scale == Scale::Paper { 1 << 13 } else { 1 << 11 };
            for (label, ic, proj) in [
                ("(a) sin(2 pi x)", "sin2pix", Projection::Ritz),
                ("(b) x^(-1/4)", "xnegquarter", Projection::L2),
            ] {
                rows.push(RowPlan {
                    label: label.to_string(),
                    config: sub_config(0.5, ic, proj, m, T_DECADES[0], vec![10]),
                    t_list: Some(T_DECADES.to_vec()),
                });
            }
        }
        4 => {
            let m = if scale == Scale::Paper { 1 << 13 } else { 1 << 10 };
            let n_ref = if scale == Scale::Paper { 1000 } else { 32 * 80 };
            for &alpha in &alphas {
                for beta in [1.25, 1.5, 1.75] {
                    rows.push(RowPlan {
                        label: format!("alpha={alpha} beta={beta}"),
                        config: rl_config(
                            alpha,
                            beta,
                            "sin2pix",
                            Projection::Ritz,
                            m,
                            0.1,
                            n5.clone(),
                            n_ref,
                        ),
                        t_list: None,
                    });
                }
            }
        }
        5 => {
            let m = if scale == Scale::Paper { 1 << 13 } else { 1 << 10 };
            let n_ref = if scale == Scale::Paper { 1000 } else { 32 * 80 };
            for &alpha in &alphas {
                for t in [0.1, 0.01, 0.001] {
                    rows.push(RowPlan {
                        label: format!("alpha={alpha} t={t}"),
                        config: rl_config(
                            alpha,
                            1.5,
                            "xnegquarter",
                            Projection::L2,
                            m,
                            t,
                            n5.clone(),
                            n_ref,
                        ),
                        t_list: None,
                    });
                }
            }
        }
        6 => {
            let m = if scale == Scale::Paper { 1 << 13 } else { 1 << 10 };
            let n_ref = if scale == Scale::Paper { 1000 } else { 32 * 5 };
            for (label, ic, proj) in [
                ("(a) sin(2 pi x)", "sin2pix", Projection::Ritz),
                ("(b) x^(-1/4)", "xnegquarter", Projection::L2),
            ] {
                rows.push(RowPlan {
                    label: label.to_string(),
                    config: rl_config(0.5, 1.5, ic, proj, m, T_DECADES[0], vec![5], n_ref),
                    t_list: Some(T_DECADES.to_vec()),
                });
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "table id {other} outside 1..=6"
            )))
        }
    }
    Ok(rows)
}

pub fn run_row(plan: &RowPlan) -> Result<ConvergenceReport> {
    let rc = plan.config.resolve()?;
    match &plan.t_list {
        Some(ts) => run_t_sweep(&rc, ts, rc.n_list[0]),
        None => run_n_sweep(&rc),
    }
}

/// Run every row of a table; rows execute concurrently on the given worker
/// count (0 = rayon default) and results are returned in row order.
pub fn reproduce_table(
    id: u8,
    scale: Scale,
    workers: usize,
) -> Result<Vec<(String, ConvergenceReport)>> {
    let plans = table_plans(id, scale)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    let results: Vec<Result<ConvergenceReport>> =
        pool.install(|| plans.par_iter().map(run_row).collect());
    plans
        .into_iter()
        .zip(results)
        .map(|(plan, r)| r.map(|rep| (plan.label, rep)))
        .collect()
}

/// Worker count from the environment (FRACL1_WORKERS), 0 = library default.
pub fn workers_from_env() -> usize {
    std::env::var("FRACL1_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}
