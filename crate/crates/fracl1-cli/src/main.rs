//! Command-line harness: single solves, convergence studies, table
//! reproduction, Mittag-Leffler evaluation and kernel diagnostics.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fracl1::kernelcheck::{kernel_diff_scan, lambda_log_grid, lemma_scan, ContourSpec};
use fracl1::{l1_weights, march, mittag_leffler, MlParams, TimeGrid};
use fracl1_cli::config::{ExperimentConfig, Normalization, Problem, Projection};
use fracl1_cli::emit::{sig9, write_csv, write_markdown};
use fracl1_cli::experiment::{build_discretization, project_initial_data, run_experiment};
use fracl1_cli::tables::{reproduce_table, workers_from_env, Scale};

#[derive(Parser)]
#[command(name = "fracl1", about = "L1 scheme solvers for fractional diffusion", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a single march and dump the final nodal values
    Solve(SolveArgs),
    /// Run one convergence study and emit its report
    Convergence(ConvergenceArgs),
    /// Reproduce a published table (1..=6)
    Table(TableArgs),
    /// Evaluate the Mittag-Leffler function E_{alpha,beta}(z)
    MlEval(MlEvalArgs),
    /// Scan the kernel-estimate quantities over the integration contour
    Diagnostics(DiagnosticsArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "subdiffusion")]
    problem: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    ic: String,
    #[arg(long)]
    t: f64,
    #[arg(long, short)]
    m: usize,
    #[arg(long, short)]
    n: usize,
    #[arg(long)]
    projection: Option<String>,
    /// output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// JSON config file; flags below override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    ic: Option<String>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, short)]
    m: Option<usize>,
    /// comma-separated step counts, e.g. 10,20,40
    #[arg(long, short, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    projection: Option<String>,
    #[arg(long)]
    normalization: Option<String>,
    /// "eigen" or "self:N"
    #[arg(long)]
    reference: Option<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    id: u8,
    #[arg(long, default_value = "desk")]
    scale: String,
    #[arg(long, default_value = "markdown")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MlEvalArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
}

#[derive(Args)]
struct DiagnosticsArgs {
    #[arg(long)]
    alpha: f64,
    /// contour angle as a multiple of pi
    #[arg(long, default_value_t = 0.51)]
    theta_over_pi: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// comma-separated step sizes to scan
    #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5")]
    tau_list: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Convergence(a) => cmd_convergence(a),
        Cmd::Table(a) => cmd_table(a),
        Cmd::MlEval(a) => cmd_ml_eval(a),
        Cmd::Diagnostics(a) => cmd_diagnostics(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // machine-readable error summary on stderr
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            ExitCode::FAILURE
        }
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), fracl1::Error> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| fracl1::Error::InvalidArgument(format!("cannot write {p:?}: {e}"))),
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| fracl1::Error::Numerical(format!("stdout: {e}")))
        }
    }
}

fn cmd_solve(a: SolveArgs) -> Result<(), fracl1::Error> {
    let cfg = ExperimentConfig {
        problem: Problem::from_tag(&a.problem)?,
        alpha: a.alpha,
        beta: a.beta,
        ic: a.ic,
        t: a.t,
        m: a.m,
        n_list: vec![a.n],
        projection: a.projection.as_deref().map(Projection::from_tag).transpose()?,
        normalization: None,
        reference: None,
    };
    let rc = cfg.resolve()?;
    let disc = build_discretization(&rc)?;
    let v_h = project_initial_data(&disc, rc.ic, rc.projection)?;
    let grid = TimeGrid::new(rc.t, a.n)?;
    let w = l1_weights(rc.alpha, a.n)?;
    let hist = march(&disc, &w, &v_h, &grid, None)?;
    let mut out = String::from("x,u\n");
    for (i, u) in hist.last().iter().enumerate() {
        out.push_str(&format!("{},{}\n", sig9(disc.mesh.node(i + 1)), sig9(*u)));
    }
    write_output(&a.out, &out)
}

fn cmd_convergence(a: ConvergenceArgs) -> Result<(), fracl1::Error> {
    let mut cfg: ExperimentConfig = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                fracl1::Error::InvalidArgument(format!("cannot read {path:?}: {e}"))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| fracl1::Error::InvalidArgument(format!("bad config: {e}")))?
        }
        None => ExperimentConfig {
            problem: Problem::Subdiffusion,
            alpha: f64::NAN,
            beta: None,
            ic: String::new(),
            t: f64::NAN,
            m: 0,
            n_list: Vec::new(),
            projection: None,
            normalization: None,
            reference: None,
        },
    };
    // flags override file values
    if let Some(p) = &a.problem {
        cfg.problem = Problem::from_tag(p)?;
    }
    if let Some(v) = a.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = a.beta {
        cfg.beta = Some(v);
    }
    if let Some(v) = &a.ic {
        cfg.ic = v.clone();
    }
    if let Some(v) = a.t {
        cfg.t = v;
    }
    if let Some(v) = a.m {
        cfg.m = v;
    }
    if let Some(v) = &a.n {
        cfg.n_list = v.clone();
    }
    if let Some(v) = &a.projection {
        cfg.projection = Some(Projection::from_tag(v)?);
    }
    if let Some(v) = &a.normalization {
        cfg.normalization = Some(match v.as_str() {
            "raw" => Normalization::Raw,
            "normalized" => Normalization::Normalized,
            other => {
                return Err(fracl1::Error::InvalidArgument(format!(
                    "unknown normalization '{other}'"
                )))
            }
        });
    }
    if let Some(v) = &a.reference {
        cfg.reference = Some(v.clone());
    }
    if cfg.alpha.is_nan() || cfg.ic.is_empty() || cfg.t.is_nan() || cfg.m == 0 || cfg.n_list.is_empty()
    {
        return Err(fracl1::Error::InvalidArgument(
            "incomplete configuration: need problem, alpha, ic, t, m, n (via flags or --config)"
                .into(),
        ));
    }
    let normalized = cfg.normalization != Some(Normalization::Raw);
    let report = run_experiment(&cfg)?;
    let rows = vec![("convergence".to_string(), report)];
    let mut buf = Vec::new();
    match a.format.as_str() {
        "csv" => write_csv(&rows, &mut buf),
        "markdown" => write_markdown(&rows, normalized, &mut buf),
        other => {
            return Err(fracl1::Error::InvalidArgument(format!(
                "unknown format '{other}' (expected csv or markdown)"
            )))
        }
    }
    .map_err(|e| fracl1::Error::Numerical(format!("serialize: {e}")))?;
    write_output(&a.out, &String::from_utf8(buf).expect("utf8"))
}

fn cmd_table(a: TableArgs) -> Result<(), fracl1::Error> {
    let scale = Scale::from_tag(&a.scale)?;
    let rows = reproduce_table(a.id, scale, workers_from_env())?;
    let mut buf = Vec::new();
    match a.format.as_str() {
        "csv" => write_csv(&rows, &mut buf),
        "markdown" => write_markdown(&rows, true, &mut buf),
        other => {
            return Err(fracl1::Error::InvalidArgument(format!(
                "unknown format '{other}' (expected csv or markdown)"
            )))
        }
    }
    .map_err(|e| fracl1::Error::Numerical(format!("serialize: {e}")))?;
    write_output(&a.out, &String::from_utf8(buf).expect("utf8"))
}

fn cmd_ml_eval(a: MlEvalArgs) -> Result<(), fracl1::Error> {
    let params = MlParams::new(a.alpha, a.beta)?;
    let v = mittag_leffler(&params, a.z)?;
    println!("{}", sig9(v));
    Ok(())
}

fn cmd_diagnostics(a: DiagnosticsArgs) -> Result<(), fracl1::Error> {
    let theta = a.theta_over_pi * std::f64::consts::PI;
    let lambdas = lambda_log_grid(1e-2, 1e6, 2);
    println!(
        "alpha = {}, theta = {} pi, delta = {}, {} samples/branch",
        a.alpha, a.theta_over_pi, a.delta, a.samples
    );
    println!("tau, min_re_psi, min_abs_psi, symbol_error_ratio, kernel_diff_ratio, min_chi_over_z, max_chi_over_z, max_arg_chi1");
    let mut prev_symbol: Option<f64> = None;
    let mut prev_kernel: Option<f64> = None;
    for &tau in &a.tau_list {
        let spec = ContourSpec::new(theta, a.delta, tau, a.samples)?;
        let scan = lemma_scan(&spec, a.alpha)?;
        let sup_kernel = kernel_diff_scan(&spec, a.alpha, &lambdas)?;
        println!(
            "{:.3e}, {}, {}, {}, {}, {}, {}, {}",
            tau,
            sig9(scan.min_re_psi),
            sig9(scan.min_abs_psi),
            sig9(scan.max_chi1_ratio),
            sig9(sup_kernel),
            sig9(scan.min_chi_over_z),
            sig9(scan.max_chi_over_z),
            sig9(scan.max_arg_chi1),
        );
        if let (Some(p_sym), Some(p_ker)) = (prev_symbol, prev_kernel) {
            println!(
                "  drift vs previous tau: symbol-error ratio {:+.2}%, kernel-diff ratio {:+.2}%",
                100.0 * (scan.max_chi1_ratio - p_sym) / p_sym,
                100.0 * (sup_kernel - p_ker) / p_ker
            );
        }
        prev_symbol = Some(scan.max_chi1_ratio);
        prev_kernel = Some(sup_kernel);
    }
    Ok(())
}
