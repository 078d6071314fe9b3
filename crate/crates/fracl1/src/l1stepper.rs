//! L1 weights and the fully discrete time marching scheme
//!
//!   (b_0 M + tau^alpha S) U^n = M ( b_{n-1} U^0 + sum_{j=1}^{n-1} (b_{j-1} - b_j) U^{n-j} )
//!                               + tau^alpha F^n,
//!
//! plus the scalar fractional-ODE variant used by the first-step example.
//! The system matrix does not change across steps, so it is factored once;
//! the history convolution is evaluated naively at O(N^2 M).

use crate::error::{Error, Result};
use crate::fem1d::linalg::{Matrix, Tridiag};
use crate::fem1d::SpatialDiscretization;
use crate::specfun::gamma;

/// L1 quadrature weights b_j = ((j+1)^(1-alpha) - j^(1-alpha)) / Gamma(2-alpha).
#[derive(Debug, Clone, PartialEq)]
pub struct L1Weights {
    pub alpha: f64,
    pub b: Vec<f64>,
}

/// Build the weight sequence for N steps.
pub fn l1_weights(alpha: f64, n: usize) -> Result<L1Weights> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid(format!(
            "l1_weights: alpha = {alpha} outside (0, 1]"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("l1_weights: N must be positive"));
    }
    let e = 1.0 - alpha;
    let scale = 1.0 / gamma(2.0 - alpha)?;
    // j = 0 is written out so that alpha = 1 avoids 0^0
    let b = (0..n)
        .map(|j| {
            let lo = if j == 0 { 0.0 } else { (j as f64).powf(e) };
            (((j + 1) as f64).powf(e) - lo) * scale
        })
        .collect();
    Ok(L1Weights { alpha, b })
}

/// Uniform time grid t_n = n tau with N tau = t_target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_target: f64,
    pub n: usize,
    pub tau: f64,
}

impl TimeGrid {
    pub fn new(t_target: f64, n: usize) -> Result<Self> {
        if !(t_target > 0.0) {
            return Err(Error::invalid(format!(
                "time grid: t_target = {t_target} must be positive"
            )));
        }
        if n == 0 {
            return Err(Error::invalid("time grid: N must be positive"));
        }
        Ok(TimeGrid {
            t_target,
            n,
            tau: t_target / n as f64,
        })
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}

/// All time levels U^0 .. U^N (the L1 scheme consumes the full history).
#[derive(Debug, Clone)]
pub struct SolutionHistory {
    pub levels: Vec<Vec<f64>>,
    pub grid: TimeGrid,
}

impl SolutionHistory {
    pub fn last(&self) -> &[f64] {
        self.levels.last().expect("history never empty")
    }
}

/// Forcing hook: returns the load vector (f(t), phi_i) at a given time.
pub type ForcingRule<'a> = &'a dyn Fn(f64) -> Vec<f64>;

/// Run the fully discrete scheme from initial coefficients `v_h`.
pub fn march(
    disc: &SpatialDiscretization,
    weights: &L1Weights,
    v_h: &[f64],
    grid: &TimeGrid,
    forcing: Option<ForcingRule>,
) -> Result<SolutionHistory> {
    let dim = disc.mesh.dim();
    if v_h.len() != dim {
        return Err(Error::invalid(format!(
            "march: initial data length {} does not match mesh dimension {dim}",
            v_h.len()
        )));
    }
    if weights.b.len() < grid.n {
        return Err(Error::invalid(format!(
            "march: {} weights supplied for {} steps",
            weights.b.len(),
            grid.n
        )));
    }
    let tau_alpha = grid.tau.powf(weights.alpha);
    let system = system_matrix(disc, weights.b[0], tau_alpha);
    let factor = system.factor()?;

    let mut levels = Vec::with_capacity(grid.n + 1);
    levels.push(v_h.to_vec());
    for n in 1..=grid.n {
        let acc = history_combination(weights, &levels, n, false);
        let mut rhs = disc.mass.matvec(&acc);
        if let Some(f) = forcing {
            let load = f(grid.t(n));
            if load.len() != dim {
                return Err(Error::invalid(format!(
                    "march: forcing load length {} at step {n}",
                    load.len()
                )));
            }
            for (r, l) in rhs.iter_mut().zip(&load) {
                *r += tau_alpha * l;
            }
        }
        let u = factor.solve(&rhs);
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::numerical(format!(
                "march: non-finite solution at step {n}"
            )));
        }
        levels.push(u);
    }
    Ok(SolutionHistory {
        levels,
        grid: *grid,
    })
}

/// b_0 M + tau^alpha S in the storage matching the operator.
fn system_matrix(disc: &SpatialDiscretization, b0: f64, tau_alpha: f64) -> Matrix {
    match &disc.stiffness {
        Matrix::Tridiag(s) => Matrix::Tridiag(Tridiag::linear_combination(
            b0, &disc.mass, tau_alpha, s,
        )),
        Matrix::Dense(s) => {
            let mut m = s.scaled(tau_alpha);
            m.add_scaled_tridiag(b0, &disc.mass);
            Matrix::Dense(m)
        }
    }
}

/// b_{n-1} U^0 + sum_{j=1}^{n-1} (b_{j-1} - b_j) U^{n-j}. The `reverse`
/// flag flips the summation order; it exists so tests can confirm the
/// convolution is insensitive to ordering (no catastrophic cancellation).
pub(crate) fn history_combination(
    weights: &L1Weights,
    levels: &[Vec<f64>],
    n: usize,
    reverse: bool,
) -> Vec<f64> {
    let b = &weights.b;
    let dim = levels[0].len();
    let mut acc: Vec<f64> = levels[0].iter().map(|v| b[n - 1] * v).collect();
    let add = |j: usize, acc: &mut Vec<f64>| {
        let d = b[j - 1] - b[j];
        for (a, u) in acc.iter_mut().zip(&levels[n - j]) {
            *a += d * u;
        }
    };
    if reverse {
        for j in (1..n).rev() {
            add(j, &mut acc);
        }
    } else {
        for j in 1..n {
            add(j, &mut acc);
        }
    }
    debug_assert_eq!(acc.len(), dim);
    acc
}

/// Scalar L1 solve of d_t^alpha u + lambda u = 0, u(0) = u0.
pub fn solve_scalar_ode(alpha: f64, lambda: f64, grid: &TimeGrid, u0: f64) -> Result<Vec<f64>> {
    if !(lambda > 0.0) {
        return Err(Error::invalid(format!(
            "solve_scalar_ode: lambda = {lambda} must be positive"
        )));
    }
    let weights = l1_weights(alpha, grid.n)?;
    let b = &weights.b;
    let tau_alpha = grid.tau.powf(alpha);
    let denom = b[0] + tau_alpha * lambda;
    let mut u = Vec::with_capacity(grid.n + 1);
    u.push(u0);
    for n in 1..=grid.n {
        let mut rhs = b[n - 1] * u[0];
        for j in 1..n {
            rhs += (b[j - 1] - b[j]) * u[n - j];
        }
        u.push(rhs / denom);
    }
    Ok(u)
}

/// max_n ||U^n|| / ||U^0|| in the discrete L2 norm.
pub fn stability_ratio(disc: &SpatialDiscretization, history: &SolutionHistory) -> f64 {
    let norm0 = crate::fem1d::l2_norm(disc, &history.levels[0]);
    if norm0 == 0.0 {
        return 0.0;
    }
    history
        .levels
        .iter()
        .map(|u| crate::fem1d::l2_norm(disc, u) / norm0)
        .fold(0.0, f64::max)
}
