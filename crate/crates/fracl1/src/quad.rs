//! Gauss-Legendre quadrature: fixed composite rules plus an adaptive driver.
//!
//! Nodes and weights are generated at run time by Newton iteration on the
//! Legendre recurrence, so no tabulated constants enter the crate. The
//! adaptive driver bisects until the two-half refinement of a panel agrees
//! with the single-panel value, and works for real- and complex-valued
//! integrands through the [`QuadValue`] trait.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar output types the quadrature driver can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, factor: f64) -> Self;
    fn norm(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, factor: f64) -> Self {
        self * factor
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, factor: f64) -> Self {
        self * factor
    }
    fn norm(self) -> f64 {
        num_complex::ComplexFloat::abs(self)
    }
}

/// Gauss-Legendre rule on [-1, 1], nodes strictly interior.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Build the n-point rule by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "rule order must be at least 2");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for k in 0..m {
            // Tricomi-style initial guess, then Newton.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[k] = w;
            weights[n - 1 - k] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        GaussRule { nodes, weights }
    }

    /// Integrate f over [a, b] with the fixed rule.
    pub fn integrate<V: QuadValue>(&self, f: &mut impl FnMut(f64) -> V, a: f64, b: f64) -> V {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc.add(f(mid + half * x).scale(*w));
        }
        acc.scale(half)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive Gauss-Legendre integration of `f` over `[a, b]` to absolute
/// tolerance `tol` (with a roundoff-limited floor). Worklist refinement:
/// the panel with the largest error estimate is bisected until the summed
/// estimate meets the target. The per-panel estimate is the difference
/// between the embedded 7- and 15-point values.
pub fn adaptive<V: QuadValue>(
    f: &mut impl FnMut(f64) -> V,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<V> {
    use std::collections::BinaryHeap;

    struct Panel<V> {
        a: f64,
        b: f64,
        value: V,
        err: f64,
    }
    impl<V> PartialEq for Panel<V> {
        fn eq(&self, other: &Self) -> bool {
            self.err == other.err
        }
    }
    impl<V> Eq for Panel<V> {}
    impl<V> PartialOrd for Panel<V> {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl<V> Ord for Panel<V> {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.err.total_cmp(&other.err)
        }
    }

    let fine = GaussRule::new(15);
    let coarse = GaussRule::new(7);
    let mut eval = |a: f64, b: f64| -> Panel<V> {
        let value = fine.integrate(f, a, b);
        let err = value.sub(coarse.integrate(f, a, b)).norm();
        Panel { a, b, value, err }
    };

    const MAX_PANELS: usize = 100_000;
    let first = eval(a, b);
    let mut err_sum = first.err;
    let mut norm_sum = first.value.norm();
    let mut settled = V::zero(); // panels at the resolution limit
    let mut count = 1usize;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while err_sum > tol.max(5e-15 * norm_sum) {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break, // everything settled at the resolution limit
        };
        err_sum -= worst.err;
        norm_sum -= worst.value.norm();
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a
            || mid >= worst.b
            || (worst.b - worst.a) < 1e-14 * (worst.a.abs() + worst.b.abs() + 1.0)
        {
            // resolution limit: accept the value, drop its error claim
            settled = settled.add(worst.value);
            norm_sum += worst.value.norm();
            continue;
        }
        let left = eval(worst.a, mid);
        let right = eval(mid, worst.b);
        err_sum += left.err + right.err;
        norm_sum += left.value.norm() + right.value.norm();
        heap.push(left);
        heap.push(right);
        count += 1;
        if count > MAX_PANELS {
            return Err(Error::numerical(format!(
                "adaptive quadrature: panel budget exhausted on [{a}, {b}]"
            )));
        }
    }
    let mut acc = settled;
    for p in heap {
        acc = acc.add(p.value);
    }
    Ok(acc)
}

/// Adaptive integration over a pre-split partition; tolerance is divided
/// evenly among the pieces.
pub fn adaptive_split<V: QuadValue>(
    f: &mut impl FnMut(f64) -> V,
    points: &[f64],
    tol: f64,
) -> Result<V> {
    assert!(points.len() >= 2);
    let pieces = points.len() - 1;
    let mut acc = V::zero();
    for w in points.windows(2) {
        if w[1] > w[0] {
            acc = acc.add(adaptive(f, w[0], w[1], tol / pieces as f64)?);
        }
    }
    Ok(acc)
}
