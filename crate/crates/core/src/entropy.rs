//! Rényi entropies of outcome distributions and Arimoto's conditional
//! Rényi entropy. All logarithms are natural.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{input, Error, Result};

/// Tolerance on the normalization of a distribution.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Probabilities below this are treated as exact zeros inside entropy sums.
pub const ZERO_PROB: f64 = 1e-15;
// negative dust tolerated from PSD-tolerant states
const NEGATIVE_TOL: f64 = 1e-10;

/// Rényi order: a positive real or the min-entropy branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    Infinity,
}

impl Alpha {
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_nan() || value <= 0.0 {
            return input(format!("Renyi order must be positive, got {value}"));
        }
        if value.is_infinite() {
            return Ok(Self::Infinity);
        }
        Ok(Self::Finite(value))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }

    /// The order as a float, `f64::INFINITY` for min-entropy.
    pub fn value(self) -> f64 {
        match self {
            Self::Finite(a) => a,
            Self::Infinity => f64::INFINITY,
        }
    }

    /// `α ≥ t`.
    pub fn at_least(self, t: usize) -> bool {
        self.value() >= t as f64
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(a) => f.pad(&a.to_string()),
            Self::Infinity => f.pad("inf"),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinity),
            other => match other.parse::<f64>() {
                Ok(v) => Self::finite(v),
                Err(_) => input(format!("cannot parse Renyi order '{other}'")),
            },
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(a) => serializer.serialize_f64(*a),
            Self::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// Parses a comma-separated list of orders such as `3,5,inf`.
pub fn parse_alphas(list: &str) -> Result<Vec<Alpha>> {
    let alphas = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
    if alphas.is_empty() {
        return input("empty list of Renyi orders");
    }
    Ok(alphas)
}

/// A normalized probability vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates normalization; negative values down to `-1e-10` are
    /// clamped to zero.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return input("distribution has no outcomes");
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < -NEGATIVE_TOL) {
            return input(format!("invalid probability {p}"));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return input(format!("probabilities sum to {sum}, expected 1"));
        }
        Ok(Self { probs: probs.into_iter().map(|p| p.max(0.0)).collect() })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// Index of coincidence of order `s`: `Σ_j p_j^s`.
    pub fn index_sum(&self, s: usize) -> f64 {
        self.probs.iter().map(|p| p.powi(s as i32)).sum()
    }
}

fn shannon(probs: &[f64]) -> f64 {
    -probs.iter().filter(|&&p| p > ZERO_PROB).map(|p| p * p.ln()).sum::<f64>()
}

fn power_sum(probs: &[f64], alpha: f64) -> f64 {
    probs.iter().filter(|&&p| p > ZERO_PROB).map(|p| p.powf(alpha)).sum()
}

/// Rényi α-entropy in nats; `α = 1` is Shannon, `α = ∞` the min-entropy.
pub fn renyi_entropy(dist: &OutcomeDistribution, alpha: Alpha) -> f64 {
    let p = dist.probs();
    match alpha {
        Alpha::Infinity => -dist.max().ln(),
        Alpha::Finite(1.0) => shannon(p),
        Alpha::Finite(a) => power_sum(p, a).ln() / (1.0 - a),
    }
}

/// `((α − t)/(α − 1)) R_∞ + ((t − 1)/(α − 1)) R_t`, a lower bound on `R_α`
/// whenever `α ≥ t ≥ 1`. For `α = ∞` this is `R_∞`.
pub fn interpolation_lower_bound(r_inf: f64, r_t: f64, alpha: Alpha, t: f64) -> Result<f64> {
    if t < 1.0 || alpha.value().is_nan() || alpha.value() < t {
        return input(format!("interpolation needs alpha >= t >= 1, got alpha = {alpha}, t = {t}"));
    }
    Ok(match alpha {
        Alpha::Infinity => r_inf,
        Alpha::Finite(1.0) => r_t,
        Alpha::Finite(a) => ((a - t) * r_inf + (t - 1.0) * r_t) / (a - 1.0),
    })
}

/// Joint distribution `p(x, z)`: rows index outcomes `x`, columns the
/// conditioning value `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    p: DMatrix<f64>,
}

impl JointDistribution {
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        if p.is_empty() {
            return input("joint distribution is empty");
        }
        if let Some(v) = p.iter().find(|v| !v.is_finite() || **v < -NEGATIVE_TOL) {
            return input(format!("invalid joint probability {v}"));
        }
        let sum = p.sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return input(format!("joint probabilities sum to {sum}, expected 1"));
        }
        Ok(Self { p: p.map(|v| v.max(0.0)) })
    }

    /// `p(x) q(z)`.
    pub fn product(px: &OutcomeDistribution, qz: &OutcomeDistribution) -> Result<Self> {
        Self::new(DMatrix::from_fn(px.len(), qz.len(), |x, z| px.probs()[x] * qz.probs()[z]))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn marginal_x(&self) -> Result<OutcomeDistribution> {
        OutcomeDistribution::new(self.p.row_iter().map(|r| r.sum()).collect())
    }

    pub fn marginal_z(&self) -> Result<OutcomeDistribution> {
        OutcomeDistribution::new(self.p.column_iter().map(|c| c.sum()).collect())
    }
}

/// Arimoto's conditional Rényi entropy `R_α(X|Z)` in nats.
///
/// Columns with `p(z) = 0` contribute nothing. At `α = 1` the conditional
/// Shannon entropy is returned.
pub fn conditional_renyi_arimoto(joint: &JointDistribution, alpha: Alpha) -> f64 {
    let p = joint.matrix();
    match alpha {
        Alpha::Infinity => {
            let guess: f64 = p.column_iter().map(|c| c.max()).sum();
            -guess.ln()
        }
        Alpha::Finite(1.0) => p
            .column_iter()
            .map(|c| {
                let pz: f64 = c.sum();
                if pz <= ZERO_PROB {
                    return 0.0;
                }
                c.iter().filter(|&&v| v > ZERO_PROB).map(|v| -v * (v / pz).ln()).sum::<f64>()
            })
            .sum(),
        Alpha::Finite(a) => {
            // p(z) (Σ_x p(x|z)^α)^{1/α} = (Σ_x p(x,z)^α)^{1/α}
            let inner: f64 = p
                .column_iter()
                .map(|c| {
                    let s: f64 = c.iter().filter(|&&v| v > ZERO_PROB).map(|v| v.powf(a)).sum();
                    s.powf(1.0 / a)
                })
                .sum();
            a / (1.0 - a) * inner.ln()
        }
    }
}
