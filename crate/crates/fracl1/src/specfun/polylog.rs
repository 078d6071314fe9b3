//! Polylogarithm Li_p(z) = sum_{j>=1} z^j / j^p.
//!
//! The public entry point sums the defining series inside the unit disk and
//! refuses arguments within 1e-8 of the circle. The crate-internal
//! continuation extends evaluation to moduli slightly above one (needed on
//! integration contours where |e^{-z tau}| > 1) through the Bose-type
//! integral for Li_s with s = p + 1 in (0, 1]:
//!
//!   Li_s(z)     = z / Gamma(s) int_0^inf t^(s-1) / (e^t - z) dt
//!   Li_{s-1}(z) = Li_s(z) + z^2 / Gamma(s) int_0^inf t^(s-1) / (e^t - z)^2 dt
//!
//! valid on the cut plane C \ [1, inf).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::gamma::gamma;

/// e^w - 1 without cancellation for small |w|.
pub(crate) fn expm1_complex(w: Complex64) -> Complex64 {
    let ex = w.re.exp_m1();
    let (sy, cy) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    Complex64::new(ex * cy - 2.0 * half * half, (ex + 1.0) * sy)
}

/// Direct series evaluation of Li_p(z) for |z| <= 1 - 1e-8.
pub fn polylog(p: f64, z: Complex64) -> Result<Complex64> {
    if !(p <= 1.0) {
        return Err(Error::domain(format!(
            "polylog: order p = {p} > 1 not supported"
        )));
    }
    if z.norm() > 1.0 - 1e-8 {
        return Err(Error::domain(format!(
            "polylog: |z| = {} too close to 1 (analytic continuation not implemented)",
            z.norm()
        )));
    }
    Ok(series(p, z))
}

/// Series sum, terminated when the term magnitude drops below
/// 1e-16 * (|running sum| + 1).
pub(crate) fn series(p: f64, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zpow = Complex64::new(1.0, 0.0);
    for j in 1..=20_000_000u64 {
        zpow *= z;
        let term = zpow * (-p * (j as f64).ln()).exp();
        sum += term;
        if term.norm() < 1e-16 * (sum.norm() + 1.0) {
            break;
        }
    }
    sum
}

/// Li_p(z) on the cut plane for p in (-1, 0], |z| <= 3: series away from
/// the unit circle, Bose-type integral near and beyond it.
pub(crate) fn polylog_continued(p: f64, z: Complex64) -> Result<Complex64> {
    if z.norm() <= 0.99 {
        Ok(series(p, z))
    } else {
        bose_integral(p, z)
    }
}

/// Integral continuation of Li_p for p in (-1, 0].
pub(crate) fn bose_integral(p: f64, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r > 3.0 {
        return Err(Error::domain(format!(
            "polylog continuation: |z| = {r} too large; narrow the contour angle"
        )));
    }
    // Stay clear of the branch cut [1, inf).
    if z.im.abs() < 1e-12 * r.max(1.0) && z.re >= 1.0 - 1e-8 {
        return Err(Error::domain(
            "polylog continuation: argument within 1e-8 of the cut [1, inf)".to_string(),
        ));
    }
    let s = p + 1.0;
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::domain(format!(
            "polylog continuation implemented for order p in (-1, 0], got {p}"
        )));
    }
    let g = gamma(s)?;

    // 1/(e^t - z) has a near-pole at t0 = ln|z| of transverse scale `dist`
    // (relative distance of z from the cut); pre-split around it.
    let t0 = if r > 1.0 { r.ln() } else { 0.0 };
    let dist = ((Complex64::new(t0.exp(), 0.0) - z).norm() / t0.exp()).max(1e-14);
    // t = u^m removes the t^(s-1) endpoint singularity on (0, 1].
    let m = (2.0 / s).ceil().max(2.0);
    // Li_p(z) grows like Gamma(2-alpha) |ln z|^(p-1) toward the cut point;
    // aim for relative accuracy at that scale, not a fixed absolute one.
    let w_log = -z.ln(); // z = e^{-w_log}
    let wn = w_log.norm().max(1e-14);
    let scale = 1.0 + gamma(1.0 - p)? * wn.powf(p - 1.0);
    let tol = 1e-13 * scale;

    let first = integral_pair(z, w_log, s, m, t0, dist, false, tol)?;
    let second = integral_pair(z, w_log, s, m, t0, dist, true, tol)?;
    Ok(z * first / g + z * z * second / g)
}

/// int_0^50 t^(s-1) / (e^t - z)^k dt with k = 1 or 2. The denominator is
/// evaluated as z (e^{t + w} - 1) with w = -ln z, which stays accurate when
/// t and |w| are both tiny (the raw difference e^t - z cancels there).
fn integral_pair(
    z: Complex64,
    w_log: Complex64,
    s: f64,
    m: f64,
    t0: f64,
    dist: f64,
    squared: bool,
    tol: f64,
) -> Result<Complex64> {
    let denom = move |t: f64| z * expm1_complex(Complex64::new(t, 0.0) + w_log);
    // substituted panel on t in (0, 1]
    let mut f_sub = |u: f64| {
        let t = u.powf(m);
        let front = m * u.powf(m * s - 1.0); // = t^(s-1) * dt/du
        let d = denom(t);
        if squared {
            front / (d * d)
        } else {
            front / d
        }
    };
    let mut pts = vec![0.0f64];
    for c in [-30.0, -5.0, 0.0, 5.0, 30.0] {
        let t_split = t0 + c * dist;
        if t_split > 0.0 && t_split < 1.0 {
            pts.push(t_split.powf(1.0 / m));
        }
    }
    pts.push(1.0);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let piece1 = quad::adaptive_split(&mut f_sub, &pts, tol)?;

    // direct panel on t in [1, 50]; e^(-50) * |z|^j tails are negligible
    let mut f_dir = |t: f64| {
        let d = denom(t);
        let front = t.powf(s - 1.0);
        if squared {
            front / (d * d)
        } else {
            front / d
        }
    };
    let mut pts2 = vec![1.0f64];
    for c in [-30.0, -5.0, 0.0, 5.0, 30.0] {
        let t_split = t0 + c * dist;
        if t_split > 1.0 && t_split < 50.0 {
            pts2.push(t_split);
        }
    }
    pts2.push(50.0);
    pts2.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let piece2 = quad::adaptive_split(&mut f_dir, &pts2, tol)?;

    Ok(piece1 + piece2)
}
