//! Euler Gamma function and helpers.
//!
//! Evaluation strategy: Stirling's series with exact Bernoulli coefficients
//! for arguments >= 12, argument lifting through the recurrence below that,
//! and the reflection formula for arguments left of 1/2. All coefficients
//! are exact rationals, no fitted constants.

use crate::error::{Error, Result};

/// Stirling series coefficients B_{2n} / (2n (2n-1)).
const STIRLING: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
];

const SQRT_TWO_PI: f64 = 2.5066282746310002;

/// Gamma function for real arguments away from the poles 0, -1, -2, ...
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma: non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::domain(format!("gamma: pole at {x}")));
    }
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let s = sin_pi(x);
        return Ok(std::f64::consts::PI / (s * gamma_right(1.0 - x)));
    }
    Ok(gamma_right(x))
}

/// 1/Gamma(x) for any real x; zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x > 0.5 {
        if x > 171.62 {
            // Gamma overflows f64; reciprocal underflows.
            return 0.0;
        }
        return 1.0 / gamma_right(x);
    }
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, entire in x.
    let g = 1.0 - x;
    if g > 171.62 {
        // Gamma(1-x) overflows: the reciprocal is huge, saturate.
        return f64::INFINITY * sin_pi(x).signum();
    }
    sin_pi(x) * gamma_right(g) / std::f64::consts::PI
}

/// Gamma on [1/2, inf) via lifting + Stirling.
fn gamma_right(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let mut shift = 1.0;
    let mut y = x;
    while y < 12.0 {
        shift *= y;
        y += 1.0;
    }
    let mut series = 0.0;
    let y2 = y * y;
    let mut pow = y;
    for c in STIRLING {
        series += c / pow;
        pow *= y2;
    }
    let stirling = SQRT_TWO_PI * y.powf(y - 0.5) * (-y).exp() * series.exp();
    stirling / shift
}

/// sin(pi x) with exact integer-part reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.round();
    let d = x - r; // exact, |d| <= 1/2
    let s = (std::f64::consts::PI * d).sin();
    if (r as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}
