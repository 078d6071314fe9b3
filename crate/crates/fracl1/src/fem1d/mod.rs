//! Uniform 1-D mesh and P1 Galerkin assembly on (0, 1) with homogeneous
//! Dirichlet conditions: mass matrix, Laplacian stiffness, Riemann-Liouville
//! fractional stiffness, load vectors, L2/Ritz projections and discrete
//! norms. Assembled discretizations are immutable and shareable.

mod initial_data;
pub mod linalg;
mod rl;

pub use initial_data::InitialData;
pub use linalg::{linear_solve, Dense, Factor, Matrix, Tridiag};
pub use rl::{assemble_stiff_rl, rl_derivative_hat, Side};

use crate::error::{Error, Result};
use crate::specfun::recip_gamma;

/// Uniform mesh on [0, 1] with M subintervals; the FE space is spanned by
/// the M-1 interior hat functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub m: usize,
    pub h: f64,
}

impl Mesh {
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    pub fn interior_nodes(&self) -> Vec<f64> {
        (1..self.m).map(|i| self.node(i)).collect()
    }

    /// Number of interior nodes (FE space dimension).
    pub fn dim(&self) -> usize {
        self.m - 1
    }
}

/// Build the uniform mesh with M >= 2 subintervals.
pub fn make_mesh(m: usize) -> Result<Mesh> {
    if m < 2 {
        return Err(Error::invalid(format!("make_mesh: M = {m} < 2")));
    }
    Ok(Mesh {
        m,
        h: 1.0 / m as f64,
    })
}

/// Spatial operator choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind {
    Laplacian,
    RiemannLiouville { beta: f64 },
}

impl OperatorKind {
    pub fn beta(&self) -> Option<f64> {
        match self {
            OperatorKind::Laplacian => None,
            OperatorKind::RiemannLiouville { beta } => Some(*beta),
        }
    }
}

/// Mesh plus assembled mass and stiffness matrices.
#[derive(Debug, Clone)]
pub struct SpatialDiscretization {
    pub mesh: Mesh,
    pub mass: Tridiag,
    pub stiffness: Matrix,
    pub operator: OperatorKind,
}

impl SpatialDiscretization {
    pub fn laplacian(mesh: Mesh) -> Result<Self> {
        let mass = assemble_mass(&mesh)?;
        let stiffness = Matrix::Tridiag(assemble_stiff_laplace(&mesh)?);
        Ok(SpatialDiscretization {
            mesh,
            mass,
            stiffness,
            operator: OperatorKind::Laplacian,
        })
    }

    pub fn riemann_liouville(mesh: Mesh, beta: f64) -> Result<Self> {
        let mass = assemble_mass(&mesh)?;
        let stiffness = Matrix::Dense(assemble_stiff_rl(&mesh, beta)?);
        Ok(SpatialDiscretization {
            mesh,
            mass,
            stiffness,
            operator: OperatorKind::RiemannLiouville { beta },
        })
    }
}

/// P1 mass matrix: diagonal 2h/3, off-diagonal h/6.
pub fn assemble_mass(mesh: &Mesh) -> Result<Tridiag> {
    let n = mesh.dim();
    if n == 0 {
        return Err(Error::invalid("assemble_mass: empty interior"));
    }
    Ok(Tridiag::from_stencil(
        n,
        mesh.h / 6.0,
        2.0 * mesh.h / 3.0,
        mesh.h / 6.0,
    ))
}

/// P1 Laplacian stiffness: diagonal 2/h, off-diagonal -1/h.
pub fn assemble_stiff_laplace(mesh: &Mesh) -> Result<Tridiag> {
    let n = mesh.dim();
    if n == 0 {
        return Err(Error::invalid("assemble_stiff_laplace: empty interior"));
    }
    Ok(Tridiag::from_stencil(
        n,
        -1.0 / mesh.h,
        2.0 / mesh.h,
        -1.0 / mesh.h,
    ))
}

/// Load vector (v, phi_i) for the enumerated initial data, closed form.
pub fn load_vector(mesh: &Mesh, v: InitialData) -> Vec<f64> {
    v.element_loads(mesh)
}

/// L2-orthogonal projection: solve mass * c = (v, phi_i).
pub fn l2_project(disc: &SpatialDiscretization, v: InitialData) -> Result<Vec<f64>> {
    project_from_load(disc, &load_vector(&disc.mesh, v))
}

/// L2 projection of the FE function with the given load vector.
pub fn project_from_load(disc: &SpatialDiscretization, load: &[f64]) -> Result<Vec<f64>> {
    let factor = disc.mass.factor()?;
    let c = factor.solve(load);
    debug_assert!(
        {
            let r = disc.mass.matvec(&c);
            let num: f64 = r
                .iter()
                .zip(load)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let den: f64 = load.iter().map(|v| v * v).sum::<f64>().sqrt();
            num <= 1e-12 * den.max(1e-300)
        },
        "mass solve residual above tolerance"
    );
    Ok(c)
}

/// Ritz (energy) projection, supported for the (operator, data) pairs whose
/// A v has a usable closed form: the Laplacian with sin(2 pi x) or x(1-x),
/// and the Riemann-Liouville operator with sin(2 pi x) (power series for
/// the fractional derivative, loads integrated exactly). All other pairs
/// should use [`l2_project`].
pub fn ritz_project(disc: &SpatialDiscretization, v: InitialData) -> Result<Vec<f64>> {
    let mesh = &disc.mesh;
    let load = match (disc.operator, v) {
        (OperatorKind::Laplacian, InitialData::Sin2Pix) => {
            let lambda = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
            load_vector(mesh, v).iter().map(|l| lambda * l).collect::<Vec<_>>()
        }
        (OperatorKind::Laplacian, InitialData::XOneMinusX) => {
            // A v = 2, and (2, phi_i) = 2h exactly
            vec![2.0 * mesh.h; mesh.dim()]
        }
        (OperatorKind::RiemannLiouville { beta }, InitialData::Sin2Pix) => {
            rl_ritz_load_sin2pix(mesh, beta)
        }
        (op, data) => {
            return Err(Error::invalid(format!(
                "ritz_project: unsupported pair ({op:?}, {data}); use l2_project"
            )))
        }
    };
    let factor = disc.stiffness.factor()?;
    Ok(factor.solve(&load))
}

/// Loads (A v, phi_i) for v = sin(2 pi x) under the left Riemann-Liouville
/// operator of order beta: termwise fractional differentiation of the sine
/// series and exact hat moments
///
///   int phi_i x^g dx = (x_{i+1}^{g+2} - 2 x_i^{g+2} + x_{i-1}^{g+2}) / (h (g+1)(g+2)).
fn rl_ritz_load_sin2pix(mesh: &Mesh, beta: f64) -> Vec<f64> {
    let omega = 2.0 * std::f64::consts::PI;
    let n = mesh.dim();
    let h = mesh.h;
    let mut load = vec![0.0; n];
    let mut sign = 1.0;
    let mut omega_pow = omega;
    for m in 0..60 {
        let g = 2.0 * m as f64 + 1.0 - beta;
        let coeff = -sign * omega_pow * recip_gamma(g + 1.0);
        let denom = h * (g + 1.0) * (g + 2.0);
        for (idx, l) in load.iter_mut().enumerate() {
            let i = idx + 1;
            let second_diff = mesh.node(i + 1).powf(g + 2.0) - 2.0 * mesh.node(i).powf(g + 2.0)
                + mesh.node(i - 1).powf(g + 2.0);
            *l += coeff * second_diff / denom;
        }
        if coeff.abs() < 1e-18 && m > 4 {
            break;
        }
        sign = -sign;
        omega_pow *= omega * omega;
    }
    load
}

/// Discrete L2 norm of an FE coefficient vector: sqrt(c^T M c).
pub fn l2_norm(disc: &SpatialDiscretization, c: &[f64]) -> f64 {
    let mc = disc.mass.matvec(c);
    c.iter().zip(&mc).map(|(a, b)| a * b).sum::<f64>().max(0.0).sqrt()
}

/// Hat-function interpolant coefficients of a pointwise function.
pub fn interpolate(mesh: &Mesh, f: impl Fn(f64) -> f64) -> Vec<f64> {
    (1..mesh.m).map(|i| f(mesh.node(i))).collect()
}
