//! Orchestration of convergence runs: build the discretization, project the
//! initial data, march for every resolution in the sweep, and measure
//! errors against the configured reference solution.

use fracl1::{
    eigen_expansion_auto, error_at, l1_weights, l2_project, march, ritz_project, self_reference,
    ConvergenceReport, Error, InitialData, Result, SpatialDiscretization, Sweep, TimeGrid,
};

use crate::config::{ExperimentConfig, Problem, Projection, Reference, ResolvedConfig};

/// Relative truncation target for eigen-expansion references.
const EIGEN_TAIL_REL: f64 = 1e-7;

pub fn build_discretization(rc: &ResolvedConfig) -> Result<SpatialDiscretization> {
    let mesh = fracl1::make_mesh(rc.m)?;
    match rc.problem {
        Problem::Subdiffusion => SpatialDiscretization::laplacian(mesh),
        Problem::SpaceTimeFractional => {
            SpatialDiscretization::riemann_liouville(mesh, rc.beta.expect("validated"))
        }
    }
}

pub fn project_initial_data(
    disc: &SpatialDiscretization,
    ic: InitialData,
    projection: Projection,
) -> Result<Vec<f64>> {
    match projection {
        Projection::L2 => l2_project(disc, ic),
        Projection::Ritz => ritz_project(disc, ic),
    }
}

/// Nodal reference values at time `t`.
fn reference_nodal(
    disc: &SpatialDiscretization,
    rc: &ResolvedConfig,
    v_h: &[f64],
    t: f64,
    notes: &mut Vec<String>,
) -> Result<Vec<f64>> {
    match rc.reference {
        Reference::EigenExpansion => {
            let tol = EIGEN_TAIL_REL * rc.ic.l2_norm();
            let exp = eigen_expansion_auto(rc.ic, rc.alpha, t, tol)?;
            notes.push(format!(
                "reference: eigen expansion, K = {}, tail bound {:.2e}",
                exp.coeffs.len(),
                exp.tail_bound(t)
            ));
            fracl1::exact_subdiffusion(&exp, t, &disc.mesh.interior_nodes())
        }
        Reference::SelfReference { n_ref } => {
            notes.push(format!(
                "reference: first-order L1 self-reference with N_ref = {n_ref} (shared mesh, spatial error cancels)"
            ));
            self_reference(disc, rc.alpha, v_h, t, n_ref)
        }
    }
}

/// Run one configuration over its N sweep.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ConvergenceReport> {
    let rc = cfg.resolve()?;
    run_n_sweep(&rc)
}

pub fn run_n_sweep(rc: &ResolvedConfig) -> Result<ConvergenceReport> {
    let disc = build_discretization(rc)?;
    let v_h = project_initial_data(&disc, rc.ic, rc.projection)?;
    let mut notes = rc.warnings.clone();
    notes.push(format!("projection: {}", rc.projection.tag()));
    let exact = reference_nodal(&disc, rc, &v_h, rc.t, &mut notes)
        .map_err(|e| annotate(e, rc, None))?;

    let norm = rc.ic.l2_norm();
    let mut errors_raw = Vec::with_capacity(rc.n_list.len());
    for &n in &rc.n_list {
        let grid = TimeGrid::new(rc.t, n)?;
        let w = l1_weights(rc.alpha, n)?;
        let hist = march(&disc, &w, &v_h, &grid, None).map_err(|e| annotate(e, rc, Some(n)))?;
        errors_raw.push(error_at(&disc, hist.last(), &exact, None));
    }
    let errors_normalized: Vec<f64> = errors_raw.iter().map(|e| e / norm).collect();
    let rates = pairwise_rates(
        &errors_raw,
        &rc.n_list.iter().map(|&n| n as f64).collect::<Vec<_>>(),
    )?;
    Ok(ConvergenceReport {
        operator: disc.operator,
        alpha: rc.alpha,
        ic: rc.ic,
        m: rc.m,
        sweep: Sweep::ByTimeSteps {
            t_target: rc.t,
            n_list: rc.n_list.clone(),
        },
        errors_raw,
        errors_normalized,
        rates,
        grid_factor: sweep_factor(&rc.n_list.iter().map(|&n| n as f64).collect::<Vec<_>>()),
        notes,
    })
}

/// Run one configuration with a fixed step count across a decreasing list
/// of target times (the singularity studies).
pub fn run_t_sweep(rc: &ResolvedConfig, t_list: &[f64], n: usize) -> Result<ConvergenceReport> {
    if t_list.len() < 2 || t_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "t sweep requires a strictly decreasing list of times".into(),
        ));
    }
    let disc = build_discretization(rc)?;
    let v_h = project_initial_data(&disc, rc.ic, rc.projection)?;
    let mut notes = rc.warnings.clone();
    notes.push(format!("projection: {}", rc.projection.tag()));
    let norm = rc.ic.l2_norm();
    let mut errors_raw = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let exact = reference_nodal(&disc, rc, &v_h, t, &mut notes)
            .map_err(|e| annotate(e, rc, Some(n)))?;
        let grid = TimeGrid::new(t, n)?;
        let w = l1_weights(rc.alpha, n)?;
        let hist = march(&disc, &w, &v_h, &grid, None).map_err(|e| annotate(e, rc, Some(n)))?;
        errors_raw.push(error_at(&disc, hist.last(), &exact, None));
    }
    let errors_normalized: Vec<f64> = errors_raw.iter().map(|e| e / norm).collect();
    // rates against the decreasing times: factor t_i / t_{i+1}
    let rates = pairwise_rates(&errors_raw, t_list)?;
    Ok(ConvergenceReport {
        operator: disc.operator,
        alpha: rc.alpha,
        ic: rc.ic,
        m: rc.m,
        sweep: Sweep::ByTargetTime {
            n,
            t_list: t_list.to_vec(),
        },
        errors_raw,
        errors_normalized,
        rates,
        grid_factor: sweep_factor(t_list),
        notes,
    })
}

/// Pairwise rates with the actual refinement ratio of each step. The axis
/// may increase (step counts) or decrease (target times); the ratio > 1
/// direction is normalized away.
fn pairwise_rates(errors: &[f64], axis: &[f64]) -> Result<Vec<f64>> {
    if errors.len() < 2 {
        return Ok(Vec::new());
    }
    errors
        .windows(2)
        .zip(axis.windows(2))
        .map(|(e, a)| {
            if !(e[0] > 0.0 && e[1] > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "nonpositive errors ({}, {}) in rate computation",
                    e[0], e[1]
                )));
            }
            let ratio = if a[1] > a[0] { a[1] / a[0] } else { a[0] / a[1] };
            Ok((e[0] / e[1]).ln() / ratio.ln())
        })
        .collect()
}

fn sweep_factor(axis: &[f64]) -> f64 {
    if axis.len() < 2 {
        return f64::NAN;
    }
    let r = axis[1] / axis[0];
    if r > 1.0 {
        r
    } else {
        1.0 / r
    }
}

fn annotate(e: Error, rc: &ResolvedConfig, n: Option<usize>) -> Error {
    let ctx = match n {
        Some(n) => format!(
            "[{} alpha={} ic={} M={} N={n}] ",
            rc.problem.tag(),
            rc.alpha,
            rc.ic,
            rc.m
        ),
        None => format!(
            "[{} alpha={} ic={} M={}] ",
            rc.problem.tag(),
            rc.alpha,
            rc.ic,
            rc.m
        ),
    };
    match e {
        Error::InvalidArgument(m) => Error::InvalidArgument(format!("{ctx}{m}")),
        Error::Domain(m) => Error::Domain(format!("{ctx}{m}")),
        Error::Numerical(m) => Error::Numerical(format!("{ctx}{m}")),
    }
}
