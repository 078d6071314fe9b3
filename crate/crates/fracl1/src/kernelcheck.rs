//! Scalar-level numerical verification of the kernel estimates behind the
//! convergence proof: the generating-function symbol
//!
//!   psi(w)   = (e^w - 1) Li_{alpha-1}(e^{-w}) / Gamma(2 - alpha),
//!   chi(z)   = (1 - e^{-z tau}) / tau,
//!   chi1(z)  = (1 - e^{-z tau}) / tau^alpha * psi(z tau),
//!
//! scanned over the truncated integration contour Gamma_tau (circular arc of
//! radius delta plus two rays at angles +-theta, cut at |Im z| = pi/tau).
//! On the rays |e^{-z tau}| exceeds one, so the polylogarithm is evaluated
//! through its integral continuation rather than the series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{expm1_complex, gamma, polylog_continued};

/// Truncated contour specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub theta: f64,
    pub delta: f64,
    pub tau: f64,
    pub samples_per_branch: usize,
}

impl ContourSpec {
    pub fn new(theta: f64, delta: f64, tau: f64, samples_per_branch: usize) -> Result<Self> {
        let pi = std::f64::consts::PI;
        if !(theta > pi / 2.0 && theta < 5.0 * pi / 6.0) {
            return Err(Error::invalid(format!(
                "contour: theta = {theta} outside (pi/2, 5pi/6)"
            )));
        }
        if !(delta > 0.0 && tau > 0.0) {
            return Err(Error::invalid("contour: delta and tau must be positive"));
        }
        if delta >= pi / (2.0 * tau) {
            return Err(Error::invalid(format!(
                "contour: delta = {delta} violates delta < pi/(2 tau) = {}",
                pi / (2.0 * tau)
            )));
        }
        if samples_per_branch < 2 {
            return Err(Error::invalid("contour: need at least 2 samples per branch"));
        }
        Ok(ContourSpec {
            theta,
            delta,
            tau,
            samples_per_branch,
        })
    }

    /// Sample points on the arc and both rays. Ray radii are geometric from
    /// delta to pi/(tau sin theta) (the |Im z| <= pi/tau cutoff).
    pub fn samples(&self) -> Vec<Complex64> {
        let n = self.samples_per_branch;
        let mut pts = Vec::with_capacity(3 * n);
        for k in 0..n {
            let phi = -self.theta + 2.0 * self.theta * k as f64 / (n - 1) as f64;
            pts.push(Complex64::from_polar(self.delta, phi));
        }
        let rho_max = std::f64::consts::PI / (self.tau * self.theta.sin());
        let ratio = (rho_max / self.delta).powf(1.0 / (n - 1) as f64);
        let mut rho = self.delta;
        for _ in 0..n {
            pts.push(Complex64::from_polar(rho, self.theta));
            pts.push(Complex64::from_polar(rho, -self.theta));
            rho *= ratio;
        }
        pts
    }

    fn ray_start_index(&self) -> usize {
        self.samples_per_branch
    }
}

/// psi at the scaled argument w = z tau.
pub fn psi_eval(w: Complex64, alpha: f64) -> Result<Complex64> {
    let xi = (-w).exp();
    let li = polylog_continued(alpha - 1.0, xi)?;
    Ok(expm1_complex(w) * li / gamma(2.0 - alpha)?)
}

/// chi(z) = (1 - e^{-z tau}) / tau.
pub fn chi_eval(z: Complex64, tau: f64) -> Complex64 {
    -expm1_complex(-z * tau) / tau
}

/// chi1(z) = (1 - e^{-z tau}) / tau^alpha * psi(z tau).
pub fn chi1_eval(z: Complex64, tau: f64, alpha: f64) -> Result<Complex64> {
    let w = z * tau;
    let psi = psi_eval(w, alpha)?;
    Ok(-expm1_complex(-w) / tau.powf(alpha) * psi)
}

/// Summary statistics of one contour scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanReport {
    pub alpha: f64,
    pub tau: f64,
    /// max over samples of |chi1(z) - z^alpha| / (|z|^2 tau^(2-alpha))
    pub max_chi1_ratio: f64,
    /// min over samples of Re psi(z tau)
    pub min_re_psi: f64,
    /// min over samples of |psi(z tau)|
    pub min_abs_psi: f64,
    /// min/max over all samples of |chi(z)| / |z|
    pub min_chi_over_z: f64,
    pub max_chi_over_z: f64,
    /// min over ray samples only (the -cos(theta) lower bound applies there)
    pub min_ray_chi_over_z: f64,
    /// max over samples of |arg chi1(z)|
    pub max_arg_chi1: f64,
}

/// Scan psi, chi, chi1 over the contour.
pub fn lemma_scan(spec: &ContourSpec, alpha: f64) -> Result<ScanReport> {
    let samples = spec.samples();
    let tau = spec.tau;
    let mut report = ScanReport {
        alpha,
        tau,
        max_chi1_ratio: 0.0,
        min_re_psi: f64::INFINITY,
        min_abs_psi: f64::INFINITY,
        min_chi_over_z: f64::INFINITY,
        max_chi_over_z: 0.0,
        min_ray_chi_over_z: f64::INFINITY,
        max_arg_chi1: 0.0,
    };
    for (idx, &z) in samples.iter().enumerate() {
        let psi = psi_eval(z * tau, alpha)?;
        report.min_re_psi = report.min_re_psi.min(psi.re);
        report.min_abs_psi = report.min_abs_psi.min(psi.norm());

        let chi = chi_eval(z, tau);
        let ratio = chi.norm() / z.norm();
        report.min_chi_over_z = report.min_chi_over_z.min(ratio);
        report.max_chi_over_z = report.max_chi_over_z.max(ratio);
        if idx >= spec.ray_start_index() {
            report.min_ray_chi_over_z = report.min_ray_chi_over_z.min(ratio);
        }

        let chi1 = -expm1_complex(-z * tau) / tau.powf(alpha) * psi;
        let za = z.powf(alpha);
        let denom = z.norm() * z.norm() * tau.powf(2.0 - alpha);
        report.max_chi1_ratio = report.max_chi1_ratio.max((chi1 - za).norm() / denom);
        report.max_arg_chi1 = report.max_arg_chi1.max(chi1.arg().abs());
    }
    Ok(report)
}

/// |k1 - k2| for the scalar resolvent kernels
///   k1(z) = -z^{-1} lambda / (z^alpha + lambda),
///   k2(z) = -tau / (1 - e^{-z tau}) * lambda / (chi1(z) + lambda).
pub fn kernel_diff(z: Complex64, lambda: f64, tau: f64, alpha: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid(format!(
            "kernel_diff: lambda = {lambda} must be positive"
        )));
    }
    let k1 = -lambda / (z * (z.powf(alpha) + lambda));
    let chi1 = chi1_eval(z, tau, alpha)?;
    let k2 = -(tau / -expm1_complex(-z * tau)) * lambda / (chi1 + lambda);
    Ok((k1 - k2).norm())
}

/// sup over contour samples and the lambda grid of |k1 - k2| / tau.
pub fn kernel_diff_scan(spec: &ContourSpec, alpha: f64, lambdas: &[f64]) -> Result<f64> {
    let samples = spec.samples();
    let mut sup = 0.0f64;
    for &z in &samples {
        let chi1 = chi1_eval(z, spec.tau, alpha)?;
        let za = z.powf(alpha);
        let front = -(spec.tau / -expm1_complex(-z * spec.tau));
        for &lambda in lambdas {
            let k1 = -lambda / (z * (za + lambda));
            let k2 = front * lambda / (chi1 + lambda);
            sup = sup.max((k1 - k2).norm() / spec.tau);
        }
    }
    Ok(sup)
}

/// Log-spaced grid, `per_decade` points per decade, inclusive of both ends.
pub fn lambda_log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && per_decade > 0);
    let decades = (hi / lo).log10();
    let count = (decades * per_decade as f64).ceil() as usize;
    let mut grid: Vec<f64> = (0..=count)
        .map(|i| lo * 10f64.powf(decades * i as f64 / count as f64))
        .collect();
    if let Some(last) = grid.last_mut() {
        *last = hi;
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(theta: f64, tau: f64) -> ContourSpec {
        ContourSpec::new(theta, 1.0, tau, 100).unwrap()
    }

    #[test]
    fn contour_validation() {
        let pi = std::f64::consts::PI;
        assert!(ContourSpec::new(0.4 * pi, 1.0, 1e-3, 50).is_err());
        assert!(ContourSpec::new(0.9 * pi, 1.0, 1e-3, 50).is_err());
        // delta >= pi/(2 tau)
        assert!(ContourSpec::new(0.51 * pi, 200.0, 1e-2, 50).is_err());
        assert!(ContourSpec::new(0.51 * pi, 1.0, 1e-2, 50).is_ok());
    }

    #[test]
    fn samples_lie_on_contour() {
        let pi = std::f64::consts::PI;
        let s = spec(0.51 * pi, 1e-3);
        for (idx, z) in s.samples().iter().enumerate() {
            if idx < 100 {
                assert!((z.norm() - 1.0).abs() < 1e-12);
                assert!(z.arg().abs() <= 0.51 * pi + 1e-12);
            } else {
                assert!((z.arg().abs() - 0.51 * pi).abs() < 1e-12);
                assert!(z.im.abs() <= pi / 1e-3 * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn psi_large_real_argument() {
        // psi(10) ~ (1 - e^{-10}) / Gamma(2 - alpha), relative slop ~ e^{-10}
        for alpha in [0.1, 0.5, 0.9] {
            let psi = psi_eval(Complex64::new(10.0, 0.0), alpha).unwrap();
            let want = (1.0 - (-10.0f64).exp()) / gamma(2.0 - alpha).unwrap();
            assert!(
                ((psi.re - want) / want).abs() < 1e-4 && psi.im.abs() < 1e-12,
                "alpha = {alpha}: {psi} vs {want}"
            );
        }
    }

    #[test]
    fn psi_conjugate_symmetry() {
        let w = Complex64::new(0.3, 1.2);
        for alpha in [0.1, 0.5, 0.9] {
            let a = psi_eval(w, alpha).unwrap();
            let b = psi_eval(w.conj(), alpha).unwrap();
            assert!((a.conj() - b).norm() < 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn chi_taylor_limit() {
        let z = Complex64::from_polar(1.0, 0.51 * std::f64::consts::PI);
        // |z tau| = 1e-6: ratio within 1e-6 of 1
        let chi = chi_eval(z, 1e-6);
        assert!((chi / z - 1.0).norm() < 1e-6);
        // |z tau| = 1e-4: first-order Taylor deviation ~ |w|/2
        let chi = chi_eval(z, 1e-4);
        assert!((chi / z - 1.0).norm() < 1e-4);
    }

    #[test]
    fn scan_bounds_hold_at_theta_051pi() {
        let pi = std::f64::consts::PI;
        let theta = 0.51 * pi;
        for alpha in [0.1, 0.5, 0.9] {
            let report = lemma_scan(&spec(theta, 1e-3), alpha).unwrap();
            assert!(report.min_re_psi > 0.0, "alpha {alpha}: {report:?}");
            assert!(report.min_abs_psi > 0.0);
            // ray lower bound from the proof: -cos(theta)
            assert!(
                report.min_ray_chi_over_z >= -theta.cos() - 0.01,
                "alpha {alpha}: {report:?}"
            );
            // observed global lower bound at theta near pi/2
            assert!(report.min_chi_over_z >= 0.2);
            assert!(report.max_chi_over_z <= 1.2);
            // sector containment of chi1 (Sigma_{3pi/4} with slack)
            assert!(
                report.max_arg_chi1 <= 0.75 * pi + 0.05,
                "alpha {alpha}: arg = {}",
                report.max_arg_chi1
            );
        }
    }

    #[test]
    fn chi1_ratio_stable_under_tau_halving() {
        let pi = std::f64::consts::PI;
        let alpha = 0.5;
        let mut prev: Option<f64> = None;
        for tau in [1e-3, 5e-4, 2.5e-4] {
            let r = lemma_scan(&spec(0.51 * pi, tau), alpha).unwrap();
            if let Some(p) = prev {
                assert!(
                    (r.max_chi1_ratio - p).abs() / p < 0.10,
                    "drift {p} -> {}",
                    r.max_chi1_ratio
                );
            }
            prev = Some(r.max_chi1_ratio);
        }
    }

    #[test]
    fn chi1_consistency_on_shrinking_arc() {
        // z on the arc with tau -> 0: chi1(z)/z^alpha -> 1
        let z = Complex64::from_polar(1.0, 0.3);
        let alpha = 0.5;
        let chi1 = chi1_eval(z, 1e-8, alpha).unwrap();
        let za = z.powf(alpha);
        assert!((chi1 / za - 1.0).norm() < 1e-4);
    }

    #[test]
    fn kernel_diff_vanishes_with_lambda() {
        let z = Complex64::from_polar(2.0, 0.51 * std::f64::consts::PI);
        let d = kernel_diff(z, 1e-9, 1e-3, 0.5).unwrap();
        assert!(d < 1e-9, "d = {d}");
        assert!(kernel_diff(z, 0.0, 1e-3, 0.5).is_err());
    }

    #[test]
    fn kernel_scan_stable_and_alpha_near_one() {
        let pi = std::f64::consts::PI;
        let lambdas = lambda_log_grid(1e-2, 1e6, 1);
        for alpha in [0.5, 0.999] {
            let mut prev: Option<f64> = None;
            for tau in [1e-3, 5e-4] {
                let sup = kernel_diff_scan(&spec(0.51 * pi, tau), alpha, &lambdas).unwrap();
                assert!(sup.is_finite() && sup > 0.0);
                if let Some(p) = prev {
                    assert!((sup - p).abs() / p < 0.10, "alpha {alpha}: {p} -> {sup}");
                }
                prev = Some(sup);
            }
        }
    }

    #[test]
    fn polylog_singular_expansion_has_finite_limit() {
        // Li_{alpha-1}(e^{-s}) - Gamma(2-alpha) s^(alpha-2) approaches a
        // finite limit as s -> 0+ (the k = 0 term of the singular
        // expansion); checked on a decade grid without any zeta values.
        // s below ~1e-4 loses the O(1) remainder to cancellation against
        // the s^(alpha-2) singular term, so stop the grid there
        for alpha in [0.1, 0.5, 0.9] {
            let g = gamma(2.0 - alpha).unwrap();
            let vals: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4]
                .iter()
                .map(|&s: &f64| {
                    let xi = Complex64::new((-s).exp(), 0.0);
                    let li = polylog_continued(alpha - 1.0, xi).unwrap();
                    li.re - g * s.powf(alpha - 2.0)
                })
                .collect();
            let d1 = (vals[1] - vals[0]).abs();
            let d3 = (vals[3] - vals[2]).abs();
            assert!(d3 < 0.5 * d1, "alpha {alpha}: differences {d1} vs {d3}");
            assert!(vals[3].abs() < 5.0, "alpha {alpha}: limit candidate {}", vals[3]);
        }
    }
}
