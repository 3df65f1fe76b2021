//! Bound curves over the admissible β̄ interval, written as CSV or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{bound_prior, bound_prop1, bound_prop1_nr, bound_prop2, mub_min_bound};
use crate::designs::PovmAssignment;
use crate::entropy::Alpha;
use crate::error::{input, Result};
use crate::moments::beta_range;

/// Slack on the row ordering `prop1 ≥ prop1_nr ≥ prior`.
pub const ORDERING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaBound {
    pub alpha: Alpha,
    pub value: f64,
}

/// Bounds (nats) at one grid value of β̄_n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub beta_bar: f64,
    /// Baseline min-entropy bound.
    pub bound_prior: f64,
    pub bound_prop1: f64,
    pub bound_prop1_nr: f64,
    /// Rényi bounds in the order the α values were requested.
    pub bound_prop2: Vec<AlphaBound>,
    /// Purity bound for qubit MUBs, present when `d = n = 2` and `s = 3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_purity_mub: Option<f64>,
}

impl SweepRow {
    pub fn is_ordered(&self) -> bool {
        self.bound_prop1 >= self.bound_prop1_nr - ORDERING_TOL && self.bound_prop1_nr >= self.bound_prior - ORDERING_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub dimension: usize,
    pub outcomes: usize,
    pub povms: usize,
    pub order: usize,
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    /// Index of the first row breaking the ordering invariant.
    pub fn first_unordered(&self) -> Option<usize> {
        self.rows.iter().position(|r| !r.is_ordered())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("beta_bar,bound_prior,bound_prop1,bound_prop1_nr");
        let Some(first) = self.rows.first() else {
            out.push('\n');
            return out;
        };
        for ab in &first.bound_prop2 {
            let _ = write!(out, ",bound_prop2_alpha_{}", ab.alpha);
        }
        if first.bound_purity_mub.is_some() {
            out.push_str(",bound_purity_mub");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(
                out,
                "{:.11e},{:.11e},{:.11e},{:.11e}",
                r.beta_bar, r.bound_prior, r.bound_prop1, r.bound_prop1_nr
            );
            for ab in &r.bound_prop2 {
                let _ = write!(out, ",{:.11e}", ab.value);
            }
            if let Some(v) = r.bound_purity_mub {
                let _ = write!(out, ",{v:.11e}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// `points` equally spaced values from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| if i + 1 == points { hi } else { lo + step * i as f64 }).collect()
}

/// Evaluates every bound on a `points`-point grid spanning the admissible
/// β̄_n interval of order `s`.
pub fn sweep_bounds(assignment: &PovmAssignment, s: usize, points: usize, alphas: &[Alpha]) -> Result<Sweep> {
    let design = assignment.design();
    if s < 2 || s > design.strength() {
        return input(format!("order {s} must lie between 2 and the design strength {}", design.strength()));
    }
    if points < 2 {
        return input("a sweep needs at least 2 points");
    }
    let (d, n) = (design.dimension(), assignment.outcomes());
    let (lo, hi) = beta_range(n, d, s);
    let mub = d == 2 && n == 2 && s == 3;
    let rows = linear_grid(lo, hi, points)
        .into_iter()
        .map(|b| {
            Ok(SweepRow {
                beta_bar: b,
                bound_prior: bound_prior(n, s, b, Alpha::Infinity)?,
                bound_prop1: bound_prop1(n, s, b)?,
                bound_prop1_nr: bound_prop1_nr(n, s, b)?,
                bound_prop2: alphas
                    .iter()
                    .map(|&alpha| Ok(AlphaBound { alpha, value: bound_prop2(n, s, alpha, b)? }))
                    .collect::<Result<_>>()?,
                bound_purity_mub: if mub { Some(mub_min_bound((2.0 * b).min(1.0))?) } else { None },
            })
        })
        .collect::<Result<_>>()?;
    Ok(Sweep { dimension: d, outcomes: n, povms: assignment.num_povms(), order: s, rows })
}
