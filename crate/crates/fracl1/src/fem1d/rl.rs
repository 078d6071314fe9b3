//! Riemann-Liouville fractional derivatives of hat functions and the dense
//! nonsymmetric stiffness matrix of the form
//!
//!   A(phi_i, phi_j) = -( D_left^(beta/2) phi_i , D_right^(beta/2) phi_j ).
//!
//! On a uniform mesh the pairing depends only on j - i (the one-sided
//! derivatives are node translates and the interaction window never touches
//! the domain boundary), so one integral per diagonal fills the matrix.
//! Each window is integrated per element with a fixed Gauss rule; elements
//! touching a support node of either factor are refined geometrically
//! toward it, since the truncated powers (x - x_k)^(1 - beta/2) have
//! unbounded slope there and a single panel cannot reach the accuracy the
//! assembly promises.

use crate::error::{Error, Result};
use crate::fem1d::linalg::Dense;
use crate::fem1d::Mesh;
use crate::quad::GaussRule;
use crate::specfun::gamma;

/// Which one-sided derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Order-s Riemann-Liouville derivative of the interior hat phi_i at x.
///
/// Left-sided: (1/(h Gamma(2-s))) [ (x - x_{i-1})_+^(1-s)
///   - 2 (x - x_i)_+^(1-s) + (x - x_{i+1})_+^(1-s) ]; right-sided mirrored.
pub fn rl_derivative_hat(mesh: &Mesh, s: f64, i: usize, side: Side, x: f64) -> Result<f64> {
    if !(s > 0.5 && s < 1.0) {
        return Err(Error::invalid(format!(
            "rl_derivative_hat: order s = {s} outside (1/2, 1)"
        )));
    }
    if i == 0 || i >= mesh.m {
        return Err(Error::invalid(format!(
            "rl_derivative_hat: node index {i} outside 1..={}",
            mesh.m - 1
        )));
    }
    let g = gamma(2.0 - s).expect("2 - s is not a pole");
    Ok(hat_derivative(mesh, s, i, side, x, 1.0 / (mesh.h * g)))
}

#[inline]
fn truncated_power(v: f64, e: f64) -> f64 {
    if v > 0.0 {
        v.powf(e)
    } else {
        0.0
    }
}

#[inline]
fn hat_derivative(mesh: &Mesh, s: f64, i: usize, side: Side, x: f64, scale: f64) -> f64 {
    let e = 1.0 - s;
    let (xl, xc, xr) = (mesh.node(i - 1), mesh.node(i), mesh.node(i + 1));
    let sum = match side {
        Side::Left => {
            truncated_power(x - xl, e) - 2.0 * truncated_power(x - xc, e)
                + truncated_power(x - xr, e)
        }
        Side::Right => {
            truncated_power(xr - x, e) - 2.0 * truncated_power(xc - x, e)
                + truncated_power(xl - x, e)
        }
    };
    scale * sum
}

/// Dense Riemann-Liouville stiffness matrix, rows indexed by the test
/// function: S[j-1][i-1] = A(phi_i, phi_j). Zero below the first
/// subdiagonal in the trial index (causal supports).
///
/// Accepts beta anywhere in (1, 2); the sectorial theory covers (3/2, 2)
/// and callers flag runs outside it.
pub fn assemble_stiff_rl(mesh: &Mesh, beta: f64) -> Result<Dense> {
    if !(beta > 1.0 && beta < 2.0) {
        return Err(Error::invalid(format!(
            "assemble_stiff_rl: beta = {beta} outside (1, 2)"
        )));
    }
    let s = beta / 2.0;
    let n = mesh.m - 1;
    let rule = GaussRule::new(32);
    // one value per diagonal k = j - i in -1..=n-1
    let mut diag_values = vec![0.0; n + 1];
    for (idx, val) in diag_values.iter_mut().enumerate() {
        let k = idx as isize - 1;
        // representative pair fully inside the mesh
        let (i, j) = if k >= 0 {
            (1usize, (1 + k) as usize)
        } else {
            (2usize, 1usize)
        };
        if j > n {
            break;
        }
        *val = pairing_value(mesh, s, i, j, &rule);
    }
    let mut matrix = Dense::zeros(n);
    for row in 0..n {
        let j = row + 1;
        for col in 0..n {
            let i = col + 1;
            let k = j as isize - i as isize;
            if k >= -1 {
                matrix.set(row, col, diag_values[(k + 1) as usize]);
            }
        }
    }
    Ok(matrix)
}

/// A(phi_i, phi_j) for one representative pair, element-by-element over the
/// interaction window (x_{i-1}, x_{j+1}).
fn pairing_value(mesh: &Mesh, s: f64, i: usize, j: usize, rule: &GaussRule) -> f64 {
    let g = gamma(2.0 - s).expect("2 - s is not a pole");
    let scale = 1.0 / (mesh.h * g);
    let mut f = |x: f64| {
        hat_derivative(mesh, s, i, Side::Left, x, scale)
            * hat_derivative(mesh, s, j, Side::Right, x, scale)
    };
    let singular = [i - 1, i, i + 1, j - 1, j, j + 1];
    let lo = i - 1;
    let hi = j + 1;
    let mut acc = 0.0;
    for l in lo..hi {
        let a = mesh.node(l);
        let b = mesh.node(l + 1);
        let sing_a = singular.contains(&l);
        let sing_b = singular.contains(&(l + 1));
        acc += match (sing_a, sing_b) {
            (false, false) => rule.integrate(&mut f, a, b),
            (true, false) => graded_toward(&mut f, a, b, true, rule),
            (false, true) => graded_toward(&mut f, a, b, false, rule),
            (true, true) => {
                let mid = 0.5 * (a + b);
                graded_toward(&mut f, a, mid, true, rule) + graded_toward(&mut f, mid, b, false, rule)
            }
        };
    }
    -acc
}

/// Composite rule on [a, b], geometrically refined toward the endpoint with
/// the derivative singularity (toward `a` if `toward_a`).
fn graded_toward(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, toward_a: bool, rule: &GaussRule) -> f64 {
    const DEPTH: usize = 48;
    let len = b - a;
    let mut acc = 0.0;
    if toward_a {
        let mut right = b;
        for d in 1..=DEPTH {
            let left = a + len * 0.5f64.powi(d as i32);
            acc += rule.integrate(f, left, right);
            right = left;
        }
        acc += rule.integrate(f, a, right);
    } else {
        let mut left = a;
        for d in 1..=DEPTH {
            let right = b - len * 0.5f64.powi(d as i32);
            acc += rule.integrate(f, left, right);
            left = right;
        }
        acc += rule.integrate(f, left, b);
    }
    acc
}

/// Independent slow path for one entry, used as the quadrature oracle in
/// tests: adaptive refinement over the same window, no grading assumptions.
#[cfg(test)]
pub(crate) fn entry_oracle(mesh: &Mesh, beta: f64, i: usize, j: usize, tol: f64) -> f64 {
    use crate::quad;
    let s = beta / 2.0;
    let g = gamma(2.0 - s).unwrap();
    let scale = 1.0 / (mesh.h * g);
    let mut f = |x: f64| {
        hat_derivative(mesh, s, i, Side::Left, x, scale)
            * hat_derivative(mesh, s, j, Side::Right, x, scale)
    };
    if i > j + 1 {
        return 0.0;
    }
    let pts: Vec<f64> = (i - 1..=j + 1).map(|l| mesh.node(l)).collect();
    -quad::adaptive_split(&mut f, &pts, tol).unwrap()
}
