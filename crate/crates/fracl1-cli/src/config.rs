//! Experiment configuration: a flat JSON-compatible key-value file plus the
//! equivalent command-line flags (flags override file values).

use serde::{Deserialize, Serialize};

use fracl1::{Error, InitialData, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Subdiffusion,
    SpaceTimeFractional,
}

impl Problem {
    pub fn tag(&self) -> &'static str {
        match self {
            Problem::Subdiffusion => "subdiffusion",
            Problem::SpaceTimeFractional => "space_time_fractional",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "subdiffusion" => Ok(Problem::Subdiffusion),
            "space_time_fractional" => Ok(Problem::SpaceTimeFractional),
            other => Err(Error::InvalidArgument(format!(
                "unknown problem '{other}' (expected subdiffusion or space_time_fractional)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    L2,
    Ritz,
}

impl Projection {
    pub fn tag(&self) -> &'static str {
        match self {
            Projection::L2 => "l2",
            Projection::Ritz => "ritz",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "l2" => Ok(Projection::L2),
            "ritz" => Ok(Projection::Ritz),
            other => Err(Error::InvalidArgument(format!(
                "unknown projection '{other}' (expected l2 or ritz)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Raw,
    Normalized,
}

/// Reference solution choice: the eigen-expansion exact solution, or a fine
/// self-reference run with the given number of steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    EigenExpansion,
    SelfReference { n_ref: usize },
}

impl Reference {
    /// "eigen" or "self:N".
    pub fn from_tag(s: &str) -> Result<Self> {
        if s == "eigen" || s == "eigen_expansion" {
            return Ok(Reference::EigenExpansion);
        }
        if let Some(n) = s.strip_prefix("self:") {
            let n_ref: usize = n.parse().map_err(|_| {
                Error::InvalidArgument(format!("bad self-reference step count in '{s}'"))
            })?;
            return Ok(Reference::SelfReference { n_ref });
        }
        Err(Error::InvalidArgument(format!(
            "unknown reference '{s}' (expected eigen or self:N)"
        )))
    }

    pub fn tag(&self) -> String {
        match self {
            Reference::EigenExpansion => "eigen".to_string(),
            Reference::SelfReference { n_ref } => format!("self:{n_ref}"),
        }
    }
}

/// One convergence-study configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// initial-condition tag: sin2pix, xnegquarter, indicator_half, xoneminusx
    pub ic: String,
    pub t: f64,
    pub m: usize,
    pub n_list: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Projection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
    /// "eigen" or "self:N"
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

/// Fully validated and defaulted form of [`ExperimentConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub problem: Problem,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub ic: InitialData,
    pub t: f64,
    pub m: usize,
    pub n_list: Vec<usize>,
    pub projection: Projection,
    pub normalization: Normalization,
    pub reference: Reference,
    /// configuration warnings surfaced into the report notes
    pub warnings: Vec<String>,
}

impl ExperimentConfig {
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let ic = InitialData::from_tag(&self.ic)?;
        let mut warnings = Vec::new();
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha = {} outside (0, 1]",
                self.alpha
            )));
        }
        if !(self.t > 0.0) {
            return Err(Error::InvalidArgument(format!("t = {} must be positive", self.t)));
        }
        if self.n_list.is_empty() {
            return Err(Error::InvalidArgument("n_list must not be empty".into()));
        }
        if self.n_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "n_list must be strictly increasing".into(),
            ));
        }
        let beta = match (self.problem, self.beta) {
            (Problem::Subdiffusion, None) => None,
            (Problem::Subdiffusion, Some(_)) => {
                return Err(Error::InvalidArgument(
                    "beta applies only to space_time_fractional".into(),
                ))
            }
            (Problem::SpaceTimeFractional, Some(b)) => {
                if !(b > 1.0 && b < 2.0) {
                    return Err(Error::InvalidArgument(format!(
                        "beta = {b} outside the assembly range (1, 2)"
                    )));
                }
                if b < 1.5 {
                    warnings.push(format!(
                        "beta = {b} lies outside the proven sectorial range (3/2, 2)"
                    ));
                }
                Some(b)
            }
            (Problem::SpaceTimeFractional, None) => {
                return Err(Error::InvalidArgument(
                    "space_time_fractional requires beta".into(),
                ))
            }
        };
        let projection = match self.projection {
            Some(p) => p,
            None => default_projection(self.problem, ic),
        };
        let max_n = *self.n_list.last().expect("nonempty");
        let reference = match &self.reference {
            Some(tag) => Reference::from_tag(tag)?,
            None => match self.problem {
                Problem::Subdiffusion => Reference::EigenExpansion,
                Problem::SpaceTimeFractional => Reference::SelfReference { n_ref: 32 * max_n },
            },
        };
        if let Reference::SelfReference { n_ref } = reference {
            if n_ref < 8 * max_n {
                return Err(Error::InvalidArgument(format!(
                    "self-reference N_ref = {n_ref} must be at least 8x the largest tested N ({max_n})"
                )));
            }
        }
        if self.problem == Problem::SpaceTimeFractional && reference == Reference::EigenExpansion {
            return Err(Error::InvalidArgument(
                "the eigen-expansion reference applies only to subdiffusion".into(),
            ));
        }
        Ok(ResolvedConfig {
            problem: self.problem,
            alpha: self.alpha,
            beta,
            ic,
            t: self.t,
            m: self.m,
            n_list: self.n_list.clone(),
            projection,
            normalization: self.normalization.unwrap_or(Normalization::Normalized),
            reference,
            warnings,
        })
    }
}

/// Theory-driven default: Ritz for the smooth data the operator supports,
/// L2 projection otherwise.
pub fn default_projection(problem: Problem, ic: InitialData) -> Projection {
    match (problem, ic) {
        (Problem::Subdiffusion, InitialData::Sin2Pix)
        | (Problem::Subdiffusion, InitialData::XOneMinusX)
        | (Problem::SpaceTimeFractional, InitialData::Sin2Pix) => Projection::Ritz,
        _ => Projection::L2,
    }
}
