//! The initial conditions exercised by the convergence studies, with
//! closed-form element loads and Fourier-sine metadata.

use std::fmt;

use crate::error::{Error, Result};
use crate::fem1d::Mesh;
use crate::specfun::gamma;

/// Enumerated initial data. `XNegQuarter` is the nonsmooth case x^(-1/4)
/// (only square integrable); `IndicatorHalf` is the jump chi_(0,1/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialData {
    Sin2Pix,
    XNegQuarter,
    IndicatorHalf,
    XOneMinusX,
}

impl fmt::Display for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl InitialData {
    pub fn tag(&self) -> &'static str {
        match self {
            InitialData::Sin2Pix => "sin2pix",
            InitialData::XNegQuarter => "xnegquarter",
            InitialData::IndicatorHalf => "indicator_half",
            InitialData::XOneMinusX => "xoneminusx",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "sin2pix" => Ok(InitialData::Sin2Pix),
            "xnegquarter" => Ok(InitialData::XNegQuarter),
            "indicator_half" => Ok(InitialData::IndicatorHalf),
            "xoneminusx" => Ok(InitialData::XOneMinusX),
            other => Err(Error::invalid(format!(
                "unknown initial data tag '{other}' (expected sin2pix, xnegquarter, indicator_half, xoneminusx)"
            ))),
        }
    }

    /// Pointwise evaluation on (0, 1]. `XNegQuarter` blows up at 0 and is
    /// never evaluated there by the assembly paths (loads are closed-form).
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialData::Sin2Pix => (2.0 * std::f64::consts::PI * x).sin(),
            InitialData::XNegQuarter => x.powf(-0.25),
            InitialData::IndicatorHalf => {
                if x < 0.5 {
                    1.0
                } else if x == 0.5 {
                    0.5
                } else {
                    0.0
                }
            }
            InitialData::XOneMinusX => x * (1.0 - x),
        }
    }

    /// Exact L2(0,1) norm.
    pub fn l2_norm(&self) -> f64 {
        match self {
            InitialData::Sin2Pix => std::f64::consts::FRAC_1_SQRT_2,
            InitialData::XNegQuarter => std::f64::consts::SQRT_2,
            InitialData::IndicatorHalf => std::f64::consts::FRAC_1_SQRT_2,
            InitialData::XOneMinusX => 1.0 / 30f64.sqrt(),
        }
    }

    /// Coefficient against the orthonormal mode sqrt(2) sin(k pi x).
    /// Analytic for three cases; x^(-1/4) uses the incomplete sine-integral
    /// asymptotics (exact constants, remainder below 1e-12 for k >= 16).
    pub fn sine_coefficient(&self, k: usize) -> f64 {
        assert!(k >= 1);
        let kf = k as f64;
        let pi = std::f64::consts::PI;
        let sqrt2 = std::f64::consts::SQRT_2;
        match self {
            InitialData::Sin2Pix => {
                if k == 2 {
                    std::f64::consts::FRAC_1_SQRT_2
                } else {
                    0.0
                }
            }
            InitialData::XOneMinusX => {
                if k % 2 == 1 {
                    4.0 * sqrt2 / (kf * pi).powi(3)
                } else {
                    0.0
                }
            }
            InitialData::IndicatorHalf => sqrt2 * (1.0 - (kf * pi / 2.0).cos()) / (kf * pi),
            InitialData::XNegQuarter => sqrt2 * (kf * pi).powf(-0.75) * sin_power_integral(k),
        }
    }

    /// Load vector entries (v, phi_i), i = 1..M-1, in closed form.
    pub fn element_loads(&self, mesh: &Mesh) -> Vec<f64> {
        let m = mesh.m;
        let h = mesh.h;
        let mut load = vec![0.0; m - 1];
        match self {
            InitialData::Sin2Pix => {
                // int phi_i sin(2 pi x) = sin(2 pi x_i) * 2h(1-cos theta)/theta^2
                let theta = 2.0 * std::f64::consts::PI * h;
                let factor = 2.0 * h * (1.0 - theta.cos()) / (theta * theta);
                for (i, l) in load.iter_mut().enumerate() {
                    *l = (2.0 * std::f64::consts::PI * mesh.node(i + 1)).sin() * factor;
                }
            }
            InitialData::XOneMinusX => {
                // exact for quadratics: h v(x_i) + v'' h^3/12 with v'' = -2
                for (i, l) in load.iter_mut().enumerate() {
                    let xi = mesh.node(i + 1);
                    *l = h * xi * (1.0 - xi) - h * h * h / 6.0;
                }
            }
            InitialData::IndicatorHalf => {
                for (i, l) in load.iter_mut().enumerate() {
                    *l = hat_mass_below(mesh, i + 1, 0.5);
                }
            }
            InitialData::XNegQuarter => {
                // antiderivatives: F1 = (4/3) x^(3/4), F2 = (4/7) x^(7/4)
                let f1 = |x: f64| 4.0 / 3.0 * x.powf(0.75);
                let f2 = |x: f64| 4.0 / 7.0 * x.powf(1.75);
                for (i, l) in load.iter_mut().enumerate() {
                    let (xl, xc, xr) = (mesh.node(i), mesh.node(i + 1), mesh.node(i + 2));
                    // rising flank: (x - xl)/h against x^(-1/4)
                    let rise = (f2(xc) - f2(xl) - xl * (f1(xc) - f1(xl))) / h;
                    // falling flank: (xr - x)/h
                    let fall = (xr * (f1(xr) - f1(xc)) - (f2(xr) - f2(xc))) / h;
                    *l = rise + fall;
                }
            }
        }
        load
    }
}

/// int phi_i over [0, cut]: mass of a hat left of a jump point.
fn hat_mass_below(mesh: &Mesh, i: usize, cut: f64) -> f64 {
    let h = mesh.h;
    let (xl, xc, xr) = (mesh.node(i - 1), mesh.node(i), mesh.node(i + 1));
    let mut acc = 0.0;
    // rising flank on [xl, xc]
    let b = cut.min(xc);
    if b > xl {
        acc += (b - xl) * (b - xl) / (2.0 * h);
    }
    // falling flank on [xc, xr]
    let b = cut.min(xr);
    if b > xc {
        acc += h / 2.0 - (xr - b) * (xr - b) / (2.0 * h);
    }
    acc
}

/// S(k pi) = int_0^{k pi} u^(-1/4) sin u du. Converged constant minus the
/// alternating endpoint expansion of the tail; adaptive quadrature for the
/// few small k where the expansion has not kicked in.
fn sin_power_integral(k: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let q = 0.25;
    let y = k as f64 * pi;
    if k < 16 {
        // substitute x = v^4: int_0^1 x^(-1/4) sin(y x) dx = int_0^1 4 v^2 sin(y v^4) dv,
        // an entire integrand a composite Gauss rule nails
        let mut f = |v: f64| 4.0 * v * v * (y * v.powi(4)).sin();
        let rule = crate::quad::GaussRule::new(15);
        let pieces = 8 * k.max(1);
        let mut acc = 0.0;
        for p in 0..pieces {
            let a = p as f64 / pieces as f64;
            let b = (p + 1) as f64 / pieces as f64;
            acc += rule.integrate(&mut f, a, b);
        }
        return acc * y.powf(0.75); // S(y) = y^(3/4) * int_0^1 x^(-1/4) sin(y x) dx
    }
    // S_inf = Gamma(3/4) sin(3 pi / 8)
    let s_inf = gamma(0.75).expect("not a pole") * (3.0 * pi / 8.0).sin();
    // tail = (-1)^k [ y^-q - q(q+1) y^(-q-2) + q(q+1)(q+2)(q+3) y^(-q-4) - ... ]
    let mut tail = 0.0;
    let mut coeff = 1.0;
    let mut power = y.powf(-q);
    let mut sign = 1.0;
    let mut factor = q;
    for _ in 0..6 {
        tail += sign * coeff * power;
        coeff *= factor * (factor + 1.0);
        factor += 2.0;
        power /= y * y;
        sign = -sign;
    }
    if k % 2 == 1 {
        tail = -tail;
    }
    s_inf - tail
}
