//! Small dense/tridiagonal linear algebra: Thomas elimination with a
//! reusable factorization for the tridiagonal systems, LU with partial
//! pivoting for the dense Riemann-Liouville systems.

use crate::error::{Error, Result};

const PIVOT_FLOOR: f64 = 1e-300;

/// Tridiagonal matrix stored by diagonals; `sub` and `sup` have length n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiag {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl Tridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Constant-stencil constructor (value on each diagonal).
    pub fn from_stencil(n: usize, sub: f64, diag: f64, sup: f64) -> Self {
        Tridiag {
            sub: vec![sub; n.saturating_sub(1)],
            diag: vec![diag; n],
            sup: vec![sup; n.saturating_sub(1)],
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(x.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.sup[i] * x[i + 1];
            }
            y[i] = v;
        }
        y
    }

    /// a*A + b*B entrywise.
    pub fn linear_combination(a: f64, ma: &Tridiag, b: f64, mb: &Tridiag) -> Tridiag {
        assert_eq!(ma.n(), mb.n());
        let comb = |xs: &[f64], ys: &[f64]| {
            xs.iter()
                .zip(ys)
                .map(|(x, y)| a * x + b * y)
                .collect::<Vec<_>>()
        };
        Tridiag {
            sub: comb(&ma.sub, &mb.sub),
            diag: comb(&ma.diag, &mb.diag),
            sup: comb(&ma.sup, &mb.sup),
        }
    }

    /// Thomas-style LU factorization (no pivoting; intended for the
    /// symmetric positive definite systems assembled here).
    pub fn factor(&self) -> Result<TridiagFactor> {
        let n = self.n();
        let mut diag = vec![0.0; n];
        let sup = self.sup.clone();
        let mut sub = vec![0.0; n.saturating_sub(1)];
        let mut prev = self.diag[0];
        diag[0] = prev;
        if prev.abs() < PIVOT_FLOOR {
            return Err(Error::numerical("tridiagonal pivot underflow at row 0"));
        }
        for i in 1..n {
            let l = self.sub[i - 1] / prev;
            sub[i - 1] = l;
            prev = self.diag[i] - l * self.sup[i - 1];
            if prev.abs() < PIVOT_FLOOR {
                return Err(Error::numerical(format!(
                    "tridiagonal pivot underflow at row {i}"
                )));
            }
            diag[i] = prev;
        }
        Ok(TridiagFactor { sub, diag, sup })
    }
}

/// Reusable Thomas factorization.
#[derive(Debug, Clone)]
pub struct TridiagFactor {
    sub: Vec<f64>,  // multipliers
    diag: Vec<f64>, // pivots
    sup: Vec<f64>,  // unchanged upper diagonal
}

impl TridiagFactor {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for i in 1..n {
            x[i] -= self.sub[i - 1] * x[i - 1];
        }
        x[n - 1] /= self.diag[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = (x[i] - self.sup[i] * x[i + 1]) / self.diag[i];
        }
        x
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Dense {
            n,
            a: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        self.a
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> Dense {
        let mut t = Dense::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    /// Add a tridiagonal matrix scaled by `c` onto self.
    pub fn add_scaled_tridiag(&mut self, c: f64, t: &Tridiag) {
        assert_eq!(t.n(), self.n);
        for i in 0..self.n {
            self.a[i * self.n + i] += c * t.diag[i];
            if i > 0 {
                self.a[i * self.n + i - 1] += c * t.sub[i - 1];
            }
            if i + 1 < self.n {
                self.a[i * self.n + i + 1] += c * t.sup[i];
            }
        }
    }

    pub fn scaled(&self, c: f64) -> Dense {
        Dense {
            n: self.n,
            a: self.a.iter().map(|v| c * v).collect(),
        }
    }

    /// LU factorization with partial pivoting.
    pub fn factor(&self) -> Result<DenseFactor> {
        let n = self.n;
        let mut lu = self.a.clone();
        let mut piv = vec![0usize; n];
        for k in 0..n {
            // pivot search in column k
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in k + 1..n {
                let v = lu[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best < PIVOT_FLOOR {
                return Err(Error::numerical(format!(
                    "dense LU pivot underflow at column {k}"
                )));
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
            }
            let pivot = lu[k * n + k];
            let (head, tail) = lu.split_at_mut((k + 1) * n);
            let row_k = &head[k * n + k + 1..k * n + n];
            for chunk in tail.chunks_exact_mut(n) {
                let l = chunk[k] / pivot;
                chunk[k] = l;
                if l != 0.0 {
                    for (t, r) in chunk[k + 1..].iter_mut().zip(row_k) {
                        *t -= l * r;
                    }
                }
            }
        }
        Ok(DenseFactor { n, lu, piv })
    }
}

/// Reusable LU factorization with partial pivoting.
#[derive(Debug, Clone)]
pub struct DenseFactor {
    n: usize,
    lu: Vec<f64>,
    piv: Vec<usize>,
}

impl DenseFactor {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.piv[k]);
        }
        // forward: L has unit diagonal
        for i in 1..n {
            let row = &self.lu[i * n..i * n + i];
            let dot: f64 = row.iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= dot;
        }
        // backward
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let dot: f64 = row.iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - dot) / self.lu[i * n + i];
        }
        x
    }
}

/// A system matrix tagged by storage, with factor-once/solve-many support.
#[derive(Debug, Clone)]
pub enum Matrix {
    Tridiag(Tridiag),
    Dense(Dense),
}

/// Factorization handle for [`Matrix`].
#[derive(Debug, Clone)]
pub enum Factor {
    Tridiag(TridiagFactor),
    Dense(DenseFactor),
}

impl Matrix {
    pub fn n(&self) -> usize {
        match self {
            Matrix::Tridiag(t) => t.n(),
            Matrix::Dense(d) => d.n,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Matrix::Tridiag(t) => t.matvec(x),
            Matrix::Dense(d) => d.matvec(x),
        }
    }

    pub fn factor(&self) -> Result<Factor> {
        Ok(match self {
            Matrix::Tridiag(t) => Factor::Tridiag(t.factor()?),
            Matrix::Dense(d) => Factor::Dense(d.factor()?),
        })
    }
}

impl Factor {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        match self {
            Factor::Tridiag(f) => f.solve(b),
            Factor::Dense(f) => f.solve(b),
        }
    }
}

/// One-shot solve; factors internally.
pub fn linear_solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    Ok(a.factor()?.solve(b))
}

/// Eigenvalues of a symmetric dense matrix by cyclic Jacobi rotations.
/// Test oracle for modest dimensions.
#[cfg(test)]
pub(crate) fn sym_eigenvalues(m: &Dense) -> Vec<f64> {
    let n = m.n;
    let mut a = m.a.clone();
    for _sweep in 0..60 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}
