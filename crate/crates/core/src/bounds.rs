//! Lower bounds on average Rényi and min-entropies for POVMs assigned to a
//! design, upper bounds on the average maximal probability, and a state
//! audit that checks every bound against the actual entropies.
//!
//! All bounds are functions of β̄_n (see [`crate::moments`]). The baseline
//! `bound_prior` follows from monotonicity of vector norms; `bound_prop1`
//! and `bound_prop2` use the root `Υ` of [`crate::upsilon`].

use serde::Serialize;

use crate::designs::PovmAssignment;
use crate::entropy::{interpolation_lower_bound, renyi_entropy, Alpha};
use crate::error::{input, Result};
use crate::moments::{beta_parameters, beta_range};
use crate::quantum::DensityMatrix;
use crate::upsilon::{upsilon, upsilon_closed_t3, upsilon_nr1, UpsilonQuery, DEFAULT_TOL};

/// Slack allowed when comparing actual values against bounds.
pub const VIOLATION_TOL: f64 = 1e-10;
/// Tolerance for declaring a min-entropy bound saturated.
pub const SATURATION_TOL: f64 = 1e-9;

fn root(n: usize, t: usize, beta_n: f64) -> Result<f64> {
    Ok(upsilon(&UpsilonQuery::new(n, t, beta_n)?, DEFAULT_TOL)?.value)
}

fn require_order(alpha: Alpha, t: usize) -> Result<()> {
    if !alpha.at_least(t) {
        return input(format!("bound requires alpha >= {t}, got {alpha}"));
    }
    Ok(())
}

/// Baseline bound `(α/(t(1−α))) ln β̄_n`, or `−(1/t) ln β̄_n` at `α = ∞`.
pub fn bound_prior(n: usize, t: usize, beta_n: f64, alpha: Alpha) -> Result<f64> {
    require_order(alpha, t)?;
    let beta_n = UpsilonQuery::new(n, t, beta_n)?.beta();
    let tf = t as f64;
    Ok(match alpha {
        Alpha::Infinity => -beta_n.ln() / tf,
        Alpha::Finite(a) => a / (tf * (1.0 - a)) * beta_n.ln(),
    })
}

/// Min-entropy bound `−ln Υ_{n−1}^{(t)}(β̄_n)`.
pub fn bound_prop1(n: usize, t: usize, beta_n: f64) -> Result<f64> {
    Ok(-root(n, t, beta_n)?.ln())
}

/// Min-entropy bound from one Newton step, `−ln Ũ_{n−1}^{(t)}(β̄_n)`.
pub fn bound_prop1_nr(n: usize, t: usize, beta_n: f64) -> Result<f64> {
    Ok(-upsilon_nr1(n, t, beta_n)?.ln())
}

/// Rényi bound for `α ≥ t`:
/// `−((α−t)/(α−1)) ln Υ(β̄_n) − ln β̄_n/(α−1)`; equals [`bound_prop1`] at
/// `α = ∞` and [`bound_prior`] at `α = t`.
pub fn bound_prop2(n: usize, t: usize, alpha: Alpha, beta_n: f64) -> Result<f64> {
    require_order(alpha, t)?;
    match alpha {
        Alpha::Infinity => bound_prop1(n, t, beta_n),
        Alpha::Finite(a) => {
            let q = UpsilonQuery::new(n, t, beta_n)?;
            let y = upsilon(&q, DEFAULT_TOL)?.value;
            let tf = t as f64;
            Ok(-(a - tf) / (a - 1.0) * y.ln() - q.beta().ln() / (a - 1.0))
        }
    }
}

/// Largest β̄_n over all states, `n^{1−t} d^t D_d^(t)`.
pub fn state_independent_beta(n: usize, d: usize, t: usize) -> f64 {
    beta_range(n, d, t).1
}

/// State-independent form of [`bound_prop2`] (of [`bound_prop1`] at
/// `α = ∞`), evaluated at the largest admissible β̄_n.
pub fn state_independent_bounds(n: usize, d: usize, t: usize, alpha: Alpha) -> Result<f64> {
    bound_prop2(n, t, alpha, state_independent_beta(n, d, t))
}

/// Purity-based min-entropy bound for the three qubit MUBs,
/// `ln(2√3 / (√3 + √(2 tr ρ² − 1)))`.
pub fn mub_min_bound(purity: f64) -> Result<f64> {
    if !(0.5 * (1.0 - 1e-12)..=1.0 + 1e-12).contains(&purity) {
        return input(format!("purity {purity} outside [1/2, 1]"));
    }
    let s3 = 3f64.sqrt();
    let r = (2.0 * purity - 1.0).max(0.0).sqrt();
    Ok((2.0 * s3 / (s3 + r)).ln())
}

/// The same MUB bound through the cubic root, `−ln Υ_1^{(3)}(β̄_2)`, using
/// the closed `n = 2` form.
pub fn mub_min_bound_from_beta(beta_2: f64) -> Result<f64> {
    Ok(-upsilon_closed_t3(2, beta_2)?.ln())
}

/// Average maximal probability and its cap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandauPollak {
    /// `(1/M) Σ_m max_j p_j`.
    pub actual: f64,
    /// `(1/M) Σ_m Υ(β_m)`.
    pub jensen_average: f64,
    /// `Υ(β̄_n)`.
    pub cap: f64,
    /// `Υ((1/M) Σ_m β_m)`, the cap evaluated at the measured indices.
    pub measured_cap: f64,
    pub satisfied: bool,
}

impl LandauPollak {
    /// `(1/M) Σ_m Υ(β_m) ≤ Υ((1/M) Σ_m β_m)`.
    pub fn jensen_holds(&self) -> bool {
        self.jensen_average <= self.measured_cap + VIOLATION_TOL
    }
}

/// Landau–Pollak-type relation `(1/M) Σ_m max_j p_j ≤ (1/M) Σ_m Υ(β_m) ≤ Υ(β̄_n)`.
pub fn landau_pollak_cap(assignment: &PovmAssignment, rho: &DensityMatrix, s: usize) -> Result<LandauPollak> {
    let params = beta_parameters(assignment, rho, s)?;
    let n = assignment.outcomes();
    let m = assignment.num_povms() as f64;
    let actual = assignment.all_probabilities(rho)?.iter().map(|p| p.max()).sum::<f64>() / m;
    let jensen_average = params.per_povm.iter().map(|&b| root(n, s, b)).sum::<Result<f64>>()? / m;
    let cap = root(n, s, params.beta_n)?;
    let measured_cap = root(n, s, params.index_sum / m)?;
    let satisfied = actual <= jensen_average + VIOLATION_TOL
        && jensen_average <= measured_cap + VIOLATION_TOL
        && actual <= cap + VIOLATION_TOL;
    Ok(LandauPollak { actual, jensen_average, cap, measured_cap, satisfied })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssignmentDescriptor {
    pub dimension: usize,
    pub vectors: usize,
    pub outcomes: usize,
    pub povms: usize,
    pub strength: usize,
    /// Order used for the bounds, `2 ≤ s ≤ strength`.
    pub order: usize,
}

impl AssignmentDescriptor {
    pub fn new(assignment: &PovmAssignment, order: usize) -> Self {
        let design = assignment.design();
        Self {
            dimension: design.dimension(),
            vectors: design.len(),
            outcomes: assignment.outcomes(),
            povms: assignment.num_povms(),
            strength: design.strength(),
            order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateDescriptor {
    pub beta_n: f64,
    pub beta: f64,
    pub purity: f64,
    pub sym_moment: f64,
    /// `β_m = Σ_j p_j^s` per POVM.
    pub beta_per_povm: Vec<f64>,
}

/// Actual average entropy and every lower bound for one order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValues {
    pub actual: f64,
    pub bound_prior: f64,
    pub bound_prop1: f64,
    pub bound_prop1_nr: f64,
    pub bound_prop2: f64,
    /// Average of the interpolation lower bound built from `R_∞` and `R_s`.
    pub interpolation: f64,
}

impl BoundValues {
    fn scaled(&self, factor: f64) -> Self {
        Self {
            actual: self.actual * factor,
            bound_prior: self.bound_prior * factor,
            bound_prop1: self.bound_prop1 * factor,
            bound_prop1_nr: self.bound_prop1_nr * factor,
            bound_prop2: self.bound_prop2 * factor,
            interpolation: self.interpolation * factor,
        }
    }

    /// Largest lower bound.
    pub fn best_bound(&self) -> f64 {
        [self.bound_prior, self.bound_prop1, self.bound_prop1_nr, self.bound_prop2, self.interpolation]
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaEntry {
    pub alpha: Alpha,
    pub nats: BoundValues,
    pub bits: BoundValues,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportFlags {
    pub all_satisfied: bool,
    /// Actual average min-entropy equals `bound_prop1` within `1e-9`.
    pub saturated: bool,
    /// Jensen step `(1/M) Σ Υ(β_m) ≤ Υ(β̄_n)` holds.
    pub jensen_holds: bool,
    pub violations: Vec<String>,
}

/// Entropies of one state under one assignment together with every bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub assignment: AssignmentDescriptor,
    pub state: StateDescriptor,
    /// Average min-entropy in nats.
    pub min_entropy: f64,
    pub per_alpha: Vec<AlphaEntry>,
    pub landau_pollak: LandauPollak,
    pub flags: ReportFlags,
}

impl BoundReport {
    /// Smallest `actual − bound` over all orders and bounds (nats).
    pub fn worst_margin(&self) -> f64 {
        self.per_alpha.iter().map(|e| e.nats.actual - e.nats.best_bound()).fold(f64::INFINITY, f64::min)
    }

    /// `cap − actual` for the maximal probability.
    pub fn landau_pollak_margin(&self) -> f64 {
        self.landau_pollak.cap - self.landau_pollak.actual
    }
}

/// Evaluates every bound at the state's β̄_n and compares with the actual
/// entropies.
pub fn audit_state(
    assignment: &PovmAssignment,
    rho: &DensityMatrix,
    alphas: &[Alpha],
    s: usize,
) -> Result<BoundReport> {
    for &a in alphas {
        require_order(a, s)?;
    }
    let params = beta_parameters(assignment, rho, s)?;
    let n = assignment.outcomes();
    let beta_n = params.beta_n;
    let dists = assignment.all_probabilities(rho)?;
    let m = dists.len() as f64;
    let avg = |f: &dyn Fn(&crate::entropy::OutcomeDistribution) -> f64| dists.iter().map(f).sum::<f64>() / m;

    let r_inf: Vec<f64> = dists.iter().map(|p| renyi_entropy(p, Alpha::Infinity)).collect();
    let r_s: Vec<f64> = dists.iter().map(|p| renyi_entropy(p, Alpha::Finite(s as f64))).collect();
    let min_entropy = r_inf.iter().sum::<f64>() / m;

    let prop1 = bound_prop1(n, s, beta_n)?;
    let prop1_nr = bound_prop1_nr(n, s, beta_n)?;
    let prior_inf = bound_prior(n, s, beta_n, Alpha::Infinity)?;

    let mut violations = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            violations.push(what);
        }
    };
    check(min_entropy >= prop1 - VIOLATION_TOL, format!("min-entropy {min_entropy} below bound {prop1}"));
    check(prop1 >= prop1_nr - VIOLATION_TOL, format!("one-step bound {prop1_nr} above exact bound {prop1}"));
    check(prop1_nr >= prior_inf - VIOLATION_TOL, format!("one-step bound {prop1_nr} below baseline {prior_inf}"));

    let ln2 = std::f64::consts::LN_2;
    let mut per_alpha = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let actual = avg(&|p| renyi_entropy(p, alpha));
        let interpolation = r_inf
            .iter()
            .zip(&r_s)
            .map(|(&ri, &rs)| interpolation_lower_bound(ri, rs, alpha, s as f64))
            .sum::<Result<f64>>()?
            / m;
        let per_povm_interp_ok = dists.iter().zip(r_inf.iter().zip(&r_s)).all(|(p, (&ri, &rs))| {
            interpolation_lower_bound(ri, rs, alpha, s as f64)
                .map(|lb| renyi_entropy(p, alpha) >= lb - VIOLATION_TOL)
                .unwrap_or(false)
        });
        let nats = BoundValues {
            actual,
            bound_prior: bound_prior(n, s, beta_n, alpha)?,
            bound_prop1: prop1,
            bound_prop1_nr: prop1_nr,
            bound_prop2: bound_prop2(n, s, alpha, beta_n)?,
            interpolation,
        };
        let before = violations.len();
        let mut check = |ok: bool, what: String| {
            if !ok {
                violations.push(format!("alpha {alpha}: {what}"));
            }
        };
        check(
            actual >= nats.bound_prior - VIOLATION_TOL,
            format!("entropy {actual} below baseline {}", nats.bound_prior),
        );
        check(
            actual >= nats.bound_prop2 - VIOLATION_TOL,
            format!("entropy {actual} below Renyi bound {}", nats.bound_prop2),
        );
        check(actual >= prop1 - VIOLATION_TOL, format!("entropy {actual} below min-entropy bound {prop1}"));
        check(per_povm_interp_ok, "interpolation inequality fails for some POVM".to_string());
        check(
            nats.bound_prop2 >= nats.bound_prior - VIOLATION_TOL,
            format!("Renyi bound {} weaker than baseline {}", nats.bound_prop2, nats.bound_prior),
        );
        let satisfied = violations.len() == before;
        per_alpha.push(AlphaEntry { alpha, nats, bits: nats.scaled(1.0 / ln2), satisfied });
    }

    let landau_pollak = landau_pollak_cap(assignment, rho, s)?;
    let jensen_holds = landau_pollak.jensen_holds();
    if !landau_pollak.satisfied {
        violations.push(format!(
            "Landau-Pollak chain fails: max probability {}, Jensen average {}, caps {} and {}",
            landau_pollak.actual, landau_pollak.jensen_average, landau_pollak.measured_cap, landau_pollak.cap
        ));
    }

    Ok(BoundReport {
        assignment: AssignmentDescriptor::new(assignment, s),
        state: StateDescriptor {
            beta_n,
            beta: params.beta,
            purity: rho.purity(),
            sym_moment: params.sym_moment,
            beta_per_povm: params.per_povm,
        },
        min_entropy,
        per_alpha,
        landau_pollak,
        flags: ReportFlags {
            all_satisfied: violations.is_empty(),
            saturated: (min_entropy - prop1).abs() <= SATURATION_TOL,
            jensen_holds,
            violations,
        },
    })
}
