//! Reference solutions and error measurement: eigen-expansion solutions for
//! subdiffusion, fine-grid self-reference for the space-fractional problem,
//! mass-norm errors and empirical convergence rates.

use crate::error::{Error, Result};
use crate::fem1d::{l2_norm, InitialData, OperatorKind, SpatialDiscretization};
use crate::l1stepper::{l1_weights, march, TimeGrid};
use crate::specfun::{self, mittag_leffler, MlParams};

/// Truncated Fourier-sine expansion of an initial condition, with the
/// Parseval tail recorded: tail_sq >= sum_{k > K} c_k^2.
#[derive(Debug, Clone)]
pub struct EigenExpansion {
    pub alpha: f64,
    pub ic: InitialData,
    pub coeffs: Vec<f64>,
    pub tail_sq: f64,
}

/// Coefficients against sqrt(2) sin(k pi x) for k = 1..=k_max.
pub fn sine_coefficients(v: InitialData, k_max: usize) -> Vec<f64> {
    (1..=k_max).map(|k| v.sine_coefficient(k)).collect()
}

/// Expansion with a fixed truncation.
pub fn eigen_expansion(v: InitialData, alpha: f64, k_max: usize) -> Result<EigenExpansion> {
    if k_max == 0 {
        return Err(Error::invalid("eigen_expansion: K must be positive"));
    }
    let coeffs = sine_coefficients(v, k_max);
    let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
    let tail_sq = (v.l2_norm() * v.l2_norm() - sum_sq).max(0.0);
    Ok(EigenExpansion {
        alpha,
        ic: v,
        coeffs,
        tail_sq,
    })
}

/// Expansion whose truncation error at evaluation time `t` is below `tol`
/// in L2, using the decay bound E_{alpha,1}(-x) <= 1/(1 + x/Gamma(1+alpha)).
/// Doubles K from 2000 until the bound is met (hard cap 256000).
pub fn eigen_expansion_auto(
    v: InitialData,
    alpha: f64,
    t: f64,
    tol: f64,
) -> Result<EigenExpansion> {
    let mut k = 2000usize;
    loop {
        let exp = eigen_expansion(v, alpha, k)?;
        if exp.tail_bound(t) <= tol || k >= 256_000 {
            return Ok(exp);
        }
        k *= 2;
    }
}

impl EigenExpansion {
    /// L2 bound on the truncation error of u(. , t).
    pub fn tail_bound(&self, t: f64) -> f64 {
        let k1 = (self.coeffs.len() + 1) as f64;
        let lambda = k1 * k1 * std::f64::consts::PI * std::f64::consts::PI;
        let decay = if t > 0.0 {
            specfun::ml_neg_upper_bound(self.alpha, lambda * t.powf(self.alpha))
        } else {
            1.0
        };
        self.tail_sq.sqrt() * decay
    }

    /// Mode decay factors E_{alpha,1}(-k^2 pi^2 t^alpha).
    fn mode_factors(&self, t: f64) -> Result<Vec<f64>> {
        let params = MlParams::new(self.alpha, 1.0)?;
        let ta = t.powf(self.alpha);
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        (1..=self.coeffs.len())
            .map(|k| {
                let lambda = (k * k) as f64 * pi2;
                mittag_leffler(&params, -lambda * ta)
            })
            .collect()
    }

    /// Exact L2 norm of the truncated solution at time t.
    pub fn solution_norm(&self, t: f64) -> Result<f64> {
        let factors = self.mode_factors(t)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&factors)
            .map(|(c, e)| (c * e) * (c * e))
            .sum::<f64>()
            .sqrt())
    }
}

/// Evaluate the eigen-expansion solution u(x, t) at the given points.
pub fn exact_subdiffusion(exp: &EigenExpansion, t: f64, x_points: &[f64]) -> Result<Vec<f64>> {
    if t < 0.0 {
        return Err(Error::invalid(format!("exact_subdiffusion: t = {t} < 0")));
    }
    let factors = exp.mode_factors(t)?;
    let sqrt2 = std::f64::consts::SQRT_2;
    let weights: Vec<f64> = exp
        .coeffs
        .iter()
        .zip(&factors)
        .map(|(c, e)| sqrt2 * c * e)
        .collect();
    Ok(x_points
        .iter()
        .map(|&x| {
            // sin(k pi x) by the Chebyshev-style two-term recurrence
            let theta = std::f64::consts::PI * x;
            let two_cos = 2.0 * theta.cos();
            let mut s_prev = 0.0;
            let mut s = theta.sin();
            let mut acc = 0.0;
            for w in &weights {
                acc += w * s;
                let s_next = two_cos * s - s_prev;
                s_prev = s;
                s = s_next;
            }
            acc
        })
        .collect())
}

/// Fine-time-grid L1 solve used as the surrogate exact solution for the
/// space-fractional problem (first-order reference; the spatial component
/// cancels because the mesh is shared with the runs under study).
pub fn self_reference(
    disc: &SpatialDiscretization,
    alpha: f64,
    v_h: &[f64],
    t_target: f64,
    n_ref: usize,
) -> Result<Vec<f64>> {
    let grid = TimeGrid::new(t_target, n_ref)?;
    let weights = l1_weights(alpha, n_ref)?;
    let hist = march(disc, &weights, v_h, &grid, None)?;
    Ok(hist.last().to_vec())
}

/// Mass-norm of (exact nodal values - numeric coefficients), optionally
/// divided by a normalization constant (usually ||v||).
pub fn error_at(
    disc: &SpatialDiscretization,
    numeric: &[f64],
    exact_nodal: &[f64],
    normalize_by: Option<f64>,
) -> f64 {
    assert_eq!(numeric.len(), exact_nodal.len());
    let diff: Vec<f64> = exact_nodal
        .iter()
        .zip(numeric)
        .map(|(e, u)| e - u)
        .collect();
    let raw = l2_norm(disc, &diff);
    match normalize_by {
        Some(n) => raw / n,
        None => raw,
    }
}

/// rate_i = log(e_i / e_{i+1}) / log(grid_factor).
pub fn empirical_rates(errors: &[f64], grid_factor: f64) -> Result<Vec<f64>> {
    if errors.len() < 2 {
        return Err(Error::invalid(
            "empirical_rates: need at least two errors".to_string(),
        ));
    }
    if !(grid_factor > 1.0) {
        return Err(Error::invalid(format!(
            "empirical_rates: grid factor {grid_factor} must exceed 1"
        )));
    }
    let log_gf = grid_factor.ln();
    errors
        .windows(2)
        .map(|w| {
            if !(w[0] > 0.0 && w[1] > 0.0) {
                return Err(Error::invalid(format!(
                    "empirical_rates: nonpositive error pair ({}, {})",
                    w[0], w[1]
                )));
            }
            Ok((w[0] / w[1]).ln() / log_gf)
        })
        .collect()
}

/// Refinement axis of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// Fixed target time, varying step counts.
    ByTimeSteps { t_target: f64, n_list: Vec<usize> },
    /// Fixed step count, target time marching toward zero.
    ByTargetTime { n: usize, t_list: Vec<f64> },
}

impl Sweep {
    pub fn len(&self) -> usize {
        match self {
            Sweep::ByTimeSteps { n_list, .. } => n_list.len(),
            Sweep::ByTargetTime { t_list, .. } => t_list.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Per-configuration convergence results: errors along the sweep, pairwise
/// empirical rates, and run notes (reference kind, scale deviations).
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub operator: OperatorKind,
    pub alpha: f64,
    pub ic: InitialData,
    pub m: usize,
    pub sweep: Sweep,
    pub errors_raw: Vec<f64>,
    pub errors_normalized: Vec<f64>,
    pub rates: Vec<f64>,
    pub grid_factor: f64,
    pub notes: Vec<String>,
}

impl ConvergenceReport {
    /// The single headline rate of a table row: mean of the last two
    /// pairwise rates (the asymptotic end of the sweep).
    pub fn table_rate(&self) -> Option<f64> {
        match self.rates.len() {
            0 => None,
            1 => Some(self.rates[0]),
            n => Some(0.5 * (self.rates[n - 2] + self.rates[n - 1])),
        }
    }
}
