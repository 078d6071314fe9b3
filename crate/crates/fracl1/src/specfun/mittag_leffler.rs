//! Mittag-Leffler function E_{alpha,beta}(z) for real arguments.
//!
//! Three-branch evaluation on the negative axis for beta = 1: Taylor series
//! for |z| <= 1, the completely monotone spectral-density integral in the
//! intermediate band, and the algebraic asymptotic expansion once the
//! expansion can actually deliver the target accuracy. The asymptotic
//! switch point grows with alpha (the attainable accuracy of the expansion
//! at |z| = x is ~ exp(-x^(1/alpha))), so the threshold is max(10, 35^alpha).

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::gamma::{gamma, recip_gamma, sin_pi};

/// Parameters (alpha, beta) of E_{alpha,beta}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    pub beta: f64,
}

impl MlParams {
    /// Validated constructor; this crate evaluates alpha in (0, 1].
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!(
                "mittag-leffler: alpha = {alpha} outside supported range (0, 1]"
            )));
        }
        if !(beta > 0.0) {
            return Err(Error::domain(format!(
                "mittag-leffler: beta = {beta} must be positive"
            )));
        }
        Ok(MlParams { alpha, beta })
    }
}

/// cos(pi x) with exact reduction.
fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// Evaluate E_{alpha,beta}(z).
pub fn mittag_leffler(params: &MlParams, z: f64) -> Result<f64> {
    let MlParams { alpha, beta } = *params;
    if z > 10.0 {
        return Err(Error::domain(format!(
            "mittag-leffler: z = {z} > 10 not supported"
        )));
    }
    if alpha == 1.0 && beta == 1.0 {
        return Ok(z.exp());
    }
    if beta != 1.0 {
        // Series-only support away from beta = 1; the alternating series
        // loses accuracy to cancellation once |z| is a few units.
        if z < -2.0 {
            return Err(Error::domain(format!(
                "mittag-leffler: beta = {beta} != 1 supported only for z >= -2 (series), got {z}"
            )));
        }
        return Ok(series(alpha, beta, z));
    }
    if z >= -1.0 {
        return Ok(series(alpha, 1.0, z));
    }
    let x = -z;
    if x >= asymptotic_threshold(alpha) {
        Ok(negative_asymptotic(alpha, x))
    } else {
        negative_integral(alpha, x)
    }
}

/// Switch point between the integral and asymptotic branches.
pub(crate) fn asymptotic_threshold(alpha: f64) -> f64 {
    35f64.powf(alpha).max(10.0)
}

/// Taylor series sum_k z^k / Gamma(alpha k + beta).
pub(crate) fn series(alpha: f64, beta: f64, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0; // Kahan carry
    let mut zpow = 1.0;
    let mut small_streak = 0;
    for k in 0..10_000 {
        let term = zpow * recip_gamma(alpha * k as f64 + beta);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        zpow *= z;
        // Terms decay monotonically once the Gamma growth has taken over;
        // two consecutive negligible terms end the sum.
        if term.abs() <= 1e-17 * (sum.abs() + 1.0) {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    sum
}

/// Algebraic expansion E_{alpha,1}(-x) ~ sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(1 - alpha k).
pub(crate) fn negative_asymptotic(alpha: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut xpow = 1.0 / x;
    let mut prev = f64::INFINITY;
    let mut small_streak = 0;
    for k in 1..=400 {
        let ak = alpha * k as f64;
        if ak > 170.0 {
            break;
        }
        let term = sign * xpow * recip_gamma(1.0 - ak);
        sign = -sign;
        xpow /= x;
        let mag = term.abs();
        // 1/Gamma vanishes at the poles 1 - alpha k in -N; skip those terms
        if mag == 0.0 {
            continue;
        }
        if mag > prev {
            break; // divergence onset
        }
        prev = mag;
        sum += term;
        if mag <= 1e-14 * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    sum
}

/// Spectral-density integral for E_{alpha,1}(-x), 0 < alpha < 1, x > 0:
///
///   E_{alpha,1}(-x) = int_0^inf e^{-r t} K(r) dr,  t = x^(1/alpha),
///   K(r) = (1/pi) sin(pi alpha) r^(alpha-1) / (r^(2 alpha) + 2 r^alpha cos(pi alpha) + 1).
///
/// The r^(alpha-1) singularity is removed on [0,1] by r = v^(1/alpha).
pub(crate) fn negative_integral(alpha: f64, x: f64) -> Result<f64> {
    let t = x.powf(1.0 / alpha);
    let c = cos_pi(alpha);
    let s = sin_pi(alpha);
    let inv_alpha = 1.0 / alpha;

    // r in (0, 1]: substituted integrand is bounded.
    let mut f1 = |v: f64| {
        let decay = (-(v.powf(inv_alpha)) * t).exp();
        decay / (v * v + 2.0 * v * c + 1.0)
    };
    // The denominator dips to sin^2(pi alpha) at v0 = -cos(pi alpha).
    let mut pts1 = vec![0.0];
    if c < 0.0 {
        let v0 = -c;
        let w = s.max(1e-3);
        for p in [v0 - 5.0 * w, v0 - w, v0, v0 + w, v0 + 5.0 * w] {
            if p > 1e-12 && p < 1.0 - 1e-12 {
                pts1.push(p);
            }
        }
    }
    pts1.push(1.0);
    pts1.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let i1 = quad::adaptive_split(&mut f1, &pts1, 1e-15)? / alpha;

    // r in [1, R]: plain integrand with exponential decay.
    let r_max = 1.0 + 46.0 / t;
    let mut f2 = |r: f64| {
        let ra = r.powf(alpha);
        r.powf(alpha - 1.0) * (-r * t).exp() / (ra * ra + 2.0 * ra * c + 1.0)
    };
    let mut pts2 = vec![1.0];
    if c < 0.0 {
        let w = s.max(1e-3);
        for p in [1.0 + w, 1.0 + 5.0 * w] {
            if p < r_max {
                pts2.push(p);
            }
        }
    }
    pts2.push(r_max);
    let i2 = quad::adaptive_split(&mut f2, &pts2, 1e-15)?;

    Ok(s / std::f64::consts::PI * (i1 + i2))
}

/// Upper bound E_{alpha,1}(-x) <= 1 / (1 + x / Gamma(1 + alpha)), used for
/// truncation-tail estimates.
pub(crate) fn ml_neg_upper_bound(alpha: f64, x: f64) -> f64 {
    let g = gamma(1.0 + alpha).expect("1 + alpha is not a pole");
    1.0 / (1.0 + x / g)
}
