//! The maximal real root `Υ_{n−1}^{(t)}(β)` of
//! `(n−1)^{t−1} y^t + (1−y)^t = (n−1)^{t−1} β`.
//!
//! Given `n` probabilities whose `t`-th powers sum to `β`, the largest of
//! them cannot exceed this root. It is found by Newton's method started at
//! `β^{1/t}`, which approaches the root monotonically from above because
//! the polynomial is convex and increasing for `y > 1/n`. Closed forms for
//! `t = 2` and `t = 3` and the explicit one-step Newton bound are provided
//! alongside.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{input, Error, Result};

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Iteration cap for Newton and bisection.
pub const MAX_ITERATIONS: usize = 200;
// relative slack when clamping β onto its admissible interval
const BETA_SLACK: f64 = 1e-10;

/// Parameters of one root query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpsilonQuery {
    n: usize,
    t: usize,
    beta: f64,
}

impl UpsilonQuery {
    /// Validates `n ≥ 2`, `t ≥ 2` and `n^{1−t} ≤ β ≤ 1`.
    ///
    /// Values within a relative `1e-10` outside the interval (rounding from
    /// computed moments) are clamped onto it.
    pub fn new(n: usize, t: usize, beta: f64) -> Result<Self> {
        if n < 2 {
            return input(format!("number of outcomes must be at least 2, got {n}"));
        }
        if t < 2 {
            return input(format!("design order must be at least 2, got {t}"));
        }
        let beta = clamp_beta(beta, beta_floor(n, t), 1.0)?;
        Ok(Self { n, t, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(n−1)^{t−1}`.
    fn weight(&self) -> f64 {
        ((self.n - 1) as f64).powi(self.t as i32 - 1)
    }

    /// `y^t + (1−y)^t/(n−1)^{t−1} − β`: the root equation scaled by
    /// `(n−1)^{1−t}`.
    pub fn residual_at(&self, y: f64) -> f64 {
        let t = self.t as i32;
        y.powi(t) + (1.0 - y).powi(t) / self.weight() - self.beta
    }

    fn derivative_at(&self, y: f64) -> f64 {
        let t = self.t as i32;
        self.t as f64 * (y.powi(t - 1) - (1.0 - y).powi(t - 1) / self.weight())
    }

    /// Newton starting point `β^{1/t}`, an upper bound on the root.
    pub fn start(&self) -> f64 {
        self.beta.powf(1.0 / self.t as f64)
    }
}

/// `n^{1−t}`, the smallest admissible β.
pub fn beta_floor(n: usize, t: usize) -> f64 {
    (n as f64).powi(1 - t as i32)
}

fn clamp_beta(beta: f64, lo: f64, hi: f64) -> Result<f64> {
    if !beta.is_finite() {
        return input(format!("beta must be finite, got {beta}"));
    }
    if beta < lo * (1.0 - BETA_SLACK) || beta > hi * (1.0 + BETA_SLACK) {
        return input(format!("beta = {beta} outside the admissible interval [{lo}, {hi}]"));
    }
    Ok(beta.clamp(lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpsilonMethod {
    Newton,
    /// Bracketed bisection used when Newton stalls.
    Bisection,
    ClosedT2,
    ClosedT3,
    NrOneStep,
}

impl fmt::Display for UpsilonMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Newton => "newton",
            Self::Bisection => "bisection",
            Self::ClosedT2 => "closed_t2",
            Self::ClosedT3 => "closed_t3",
            Self::NrOneStep => "nr_one_step",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpsilonResult {
    pub value: f64,
    pub method: UpsilonMethod,
    /// `|residual_at(value)|`.
    pub residual: f64,
    pub iterations: usize,
}

/// Newton iterates `y⁰ = β^{1/t}, y¹, …` until the step underflows or the
/// residual stops being positive.
pub fn newton_iterates(q: &UpsilonQuery) -> Vec<f64> {
    let lower = 1.0 / q.n as f64;
    let mut y = q.start();
    let mut out = vec![y];
    for _ in 0..MAX_ITERATIONS {
        let f = q.residual_at(y);
        if f <= 0.0 {
            break;
        }
        let df = q.derivative_at(y);
        if df.is_nan() || df <= 0.0 {
            break;
        }
        let next = y - f / df;
        if next.is_nan() || next >= y || next < lower {
            break;
        }
        out.push(next);
        if y - next <= 4.0 * f64::EPSILON * y {
            break;
        }
        y = next;
    }
    out
}

/// `Υ_{n−1}^{(t)}(β)` by Newton's method, falling back to bisection on
/// `[1/n, β^{1/t}]` if Newton does not reach `tol`.
pub fn upsilon(q: &UpsilonQuery, tol: f64) -> Result<UpsilonResult> {
    let lower = 1.0 / q.n as f64;
    if q.beta <= beta_floor(q.n, q.t) {
        // double root at 1/n
        return Ok(UpsilonResult {
            value: lower,
            method: UpsilonMethod::Newton,
            residual: q.residual_at(lower).abs(),
            iterations: 0,
        });
    }
    let iterates = newton_iterates(q);
    let value = *iterates.last().expect("at least the start point");
    let residual = q.residual_at(value).abs();
    if residual <= tol && iterates.len() <= MAX_ITERATIONS {
        return Ok(UpsilonResult { value, method: UpsilonMethod::Newton, residual, iterations: iterates.len() - 1 });
    }
    let (value, iterations) = bisect(q, lower, q.start());
    let residual = q.residual_at(value).abs();
    if residual > tol {
        return Err(Error::Solver(format!(
            "no root to tolerance {tol} for n = {}, t = {}, beta = {} (residual {residual:e})",
            q.n, q.t, q.beta
        )));
    }
    Ok(UpsilonResult { value, method: UpsilonMethod::Bisection, residual, iterations })
}

/// Convenience: `Υ_{n−1}^{(t)}(β)` at the default tolerance.
pub fn upsilon_value(n: usize, t: usize, beta: f64) -> Result<f64> {
    Ok(upsilon(&UpsilonQuery::new(n, t, beta)?, DEFAULT_TOL)?.value)
}

fn bisect(q: &UpsilonQuery, mut lo: f64, mut hi: f64) -> (f64, usize) {
    for i in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return (mid, i);
        }
        if q.residual_at(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (0.5 * (lo + hi), MAX_ITERATIONS)
}

/// Closed form for `t = 2`: `(1 + √(n−1) √(nβ−1)) / n`.
pub fn upsilon_closed_t2(n: usize, beta: f64) -> Result<f64> {
    if n < 2 {
        return input(format!("number of outcomes must be at least 2, got {n}"));
    }
    let nf = n as f64;
    let beta = clamp_beta(beta, 1.0 / nf, 1.0)?;
    let radicand = (nf * beta - 1.0).max(0.0);
    Ok((1.0 + (nf - 1.0).sqrt() * radicand.sqrt()) / nf)
}

/// Closed form for `t = 3`.
///
/// For `n = 2` the equation is quadratic and the root is
/// `1/2 + √((4β − 1)/12)`. For `n ≥ 3` the cubic is reduced to
/// `ξ³ + pξ + q = 0` and solved with Cardano's formula: `u` is the principal
/// complex cube root of the larger-magnitude radicand and `ξ = u − p/(3u)`;
/// `Υ = ξ − 1/(n² − 2n)`.
pub fn upsilon_closed_t3(n: usize, beta: f64) -> Result<f64> {
    if n < 2 {
        return input(format!("number of outcomes must be at least 2, got {n}"));
    }
    let floor = beta_floor(n, 3);
    let beta = clamp_beta(beta, floor, 1.0)?;
    if beta <= floor {
        return Ok(1.0 / n as f64);
    }
    if n == 2 {
        return Ok(0.5 + ((4.0 * beta - 1.0).max(0.0) / 12.0).sqrt());
    }
    let nf = n as f64;
    let a = nf * nf - 2.0 * nf;
    let p = -3.0 * (nf - 1.0).powi(2) / (a * a);
    let q = (3.0 * nf * nf - 6.0 * nf + 2.0) / a.powi(3) + (1.0 - (nf - 1.0).powi(2) * beta) / a;
    let disc = (p / 3.0).powi(3) + (q / 2.0).powi(2);
    let sqrt_disc = Complex64::new(disc, 0.0).sqrt();
    let half_q = Complex64::new(-q / 2.0, 0.0);
    let sign = if q > 0.0 { -1.0 } else { 1.0 };
    let u = (half_q + sqrt_disc * sign).cbrt();
    let xi = if u.norm() == 0.0 { u } else { u - p / (3.0 * u) };
    let value = xi.re - 1.0 / a;
    Ok(value.clamp(1.0 / nf, 1.0))
}

fn nr_denominator(n: usize, t: usize, beta: f64) -> Result<(f64, f64)> {
    let tf = t as f64;
    let y0 = beta.powf(1.0 / tf);
    let den = tf * ((n - 1) as f64).powi(t as i32 - 1) * beta.powf(1.0 - 1.0 / tf) - tf * (1.0 - y0).powi(t as i32 - 1);
    if den.is_nan() || den <= 0.0 || !den.is_finite() {
        return input(format!("degenerate Newton step for n = {n}, t = {t}, beta = {beta} (denominator {den})"));
    }
    Ok((y0, den))
}

/// One Newton step from `β^{1/t}`: an explicit upper bound on the root,
/// `Υ ≤ Ũ ≤ β^{1/t}`.
pub fn upsilon_nr1(n: usize, t: usize, beta: f64) -> Result<f64> {
    let q = UpsilonQuery::new(n, t, beta)?;
    let (y0, den) = nr_denominator(n, t, q.beta)?;
    Ok(y0 - (1.0 - y0).powi(t as i32) / den)
}

/// Relative size of the one-step correction, `χ = 1 − Ũ/β^{1/t}`.
///
/// `−ln Ũ + (1/t) ln β = −ln(1 − χ) ≥ χ`.
pub fn chi(k: usize, t: usize, beta: f64) -> Result<f64> {
    let q = UpsilonQuery::new(k, t, beta)?;
    let (y0, den) = nr_denominator(k, t, q.beta)?;
    Ok((1.0 - y0).powi(t as i32) / (y0 * den))
}
