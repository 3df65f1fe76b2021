//! Symmetric-subspace moments `tr(ρ^{⊗s} P_sym^(s))` and the β̄ parameters
//! derived from them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::designs::PovmAssignment;
use crate::error::{input, Error, Result};
use crate::quantum::{inverse_symmetric_dimension, power_sums, sym_projector, tensor_power, DensityMatrix};

/// Highest moment order supported by [`sym_moment`].
pub const MAX_MOMENT_ORDER: usize = 5;
/// Tolerance on the index-of-coincidence identity.
pub const INDEX_IDENTITY_TOL: f64 = 1e-10;

/// Complete homogeneous symmetric polynomial `h_s` from power sums
/// `p_1..p_s` via `s h_s = Σ_{q=1}^{s} p_q h_{s−q}`.
pub fn complete_homogeneous(power_sums: &[f64], s: usize) -> f64 {
    assert!(power_sums.len() >= s, "need {s} power sums");
    let mut h = vec![1.0; s + 1];
    for k in 1..=s {
        h[k] = (1..=k).map(|q| power_sums[q - 1] * h[k - q]).sum::<f64>() / k as f64;
    }
    h[s]
}

/// `tr(ρ^{⊗s} P_sym^(s))` for `2 ≤ s ≤ 5` from the spectrum of `ρ`.
pub fn sym_moment(rho: &DensityMatrix, s: usize) -> Result<f64> {
    if !(2..=MAX_MOMENT_ORDER).contains(&s) {
        return input(format!("moment order must lie in 2..={MAX_MOMENT_ORDER}, got {s}"));
    }
    let sums = power_sums(&rho.eigenvalues(), s);
    Ok(complete_homogeneous(&sums, s))
}

/// Same quantity built from the explicit tensor power and projector.
pub fn sym_moment_direct(rho: &DensityMatrix, s: usize) -> Result<f64> {
    let projector = sym_projector(rho.dimension(), s)?;
    let power = tensor_power(rho, s)?;
    Ok(projector.trace_against(&power).re)
}

/// Admissible range `(n^{1−s}, n^{1−s} d^s D_d^(s))` of β̄_n. The lower end
/// is attained by the maximally mixed state, the upper by pure states.
pub fn beta_range(n: usize, d: usize, s: usize) -> (f64, f64) {
    let floor = (n as f64).powi(1 - s as i32);
    (floor, floor * (d as f64).powi(s as i32) * inverse_symmetric_dimension(d, s))
}

/// β̄ parameters of one state under one assignment at order `s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaParameters {
    pub s: usize,
    /// `tr(ρ^{⊗s} P_sym^(s))`.
    pub sym_moment: f64,
    /// `n^{1−s} d^s D_d^(s) tr(ρ^{⊗s} P_sym)`.
    pub beta_n: f64,
    /// The same with `K` in place of `n`.
    pub beta: f64,
    /// `Σ_j p_j^s` for each POVM.
    pub per_povm: Vec<f64>,
    /// `Σ_m Σ_j p_j^s` measured from probabilities.
    pub index_sum: f64,
}

/// Computes β̄_n and β̄ and checks them against the measured indices of
/// coincidence.
pub fn beta_parameters(assignment: &PovmAssignment, rho: &DensityMatrix, s: usize) -> Result<BetaParameters> {
    let design = assignment.design();
    if s < 2 || s > design.strength() {
        return input(format!("order s = {s} must lie between 2 and the design strength {}", design.strength()));
    }
    let d = design.dimension();
    let n = assignment.outcomes();
    let k = design.len();
    let moment = sym_moment(rho, s)?;
    let scale = (d as f64).powi(s as i32) * inverse_symmetric_dimension(d, s) * moment;
    let beta_n = (n as f64).powi(1 - s as i32) * scale;
    let beta = (k as f64).powi(1 - s as i32) * scale;

    let per_povm: Vec<f64> = assignment.all_probabilities(rho)?.iter().map(|p| p.index_sum(s)).collect();
    let index_sum: f64 = per_povm.iter().sum();
    let predicted = assignment.num_povms() as f64 * beta_n;
    if (index_sum - predicted).abs() > INDEX_IDENTITY_TOL {
        return Err(Error::Identity(format!("sum of p^{s} is {index_sum}, design identity predicts {predicted}")));
    }
    Ok(BetaParameters { s, sym_moment: moment, beta_n, beta, per_povm, index_sum })
}

/// Moments `s = 2..=t` and the β̄ parameters at order `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentProfile {
    pub values: BTreeMap<usize, f64>,
    pub beta_n: f64,
    pub beta: f64,
}

pub fn moment_profile(assignment: &PovmAssignment, rho: &DensityMatrix, t: usize) -> Result<MomentProfile> {
    let params = beta_parameters(assignment, rho, t)?;
    let values = (2..=t).map(|s| sym_moment(rho, s).map(|v| (s, v))).collect::<Result<_>>()?;
    Ok(MomentProfile { values, beta_n: params.beta_n, beta: params.beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
    use crate::quantum::{bloch_to_state, power_moments, random_density, seeded_rng, Ensemble};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn moment_examples() {
        let pure = DensityMatrix::from_pure(&bloch_to_state([0.0, 0.6, 0.8]).unwrap());
        close(sym_moment(&pure, 3).unwrap(), 1.0, 1e-13);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        close(sym_moment(&mixed, 3).unwrap(), 0.5, 1e-15);
        for lambda in [0.0, 0.1, 0.37, 0.5] {
            let rho = DensityMatrix::diagonal(&[1.0 - lambda, lambda]).unwrap();
            let expected = (1.0 + 1.0 - 2.0 * lambda + 2.0 * lambda * lambda) / 2.0;
            close(sym_moment(&rho, 2).unwrap(), expected, 1e-15);
        }
        assert!(sym_moment(&mixed, 1).is_err());
        assert!(sym_moment(&mixed, 6).is_err());
    }

    #[test]
    fn printed_expansions_are_reproduced() {
        let mut rng = seeded_rng(21);
        for _ in 0..20 {
            let rho = random_density(3, Ensemble::HilbertSchmidt, &mut rng).unwrap();
            let m = power_moments(&rho, 4).unwrap();
            let (p2, p3, p4) = (m[1], m[2], m[3]);
            close(sym_moment(&rho, 2).unwrap(), (1.0 + p2) / 2.0, 1e-14);
            close(sym_moment(&rho, 3).unwrap(), (1.0 + 3.0 * p2 + 2.0 * p3) / 6.0, 1e-14);
            close(sym_moment(&rho, 4).unwrap(), (1.0 + 6.0 * p2 + 3.0 * p2 * p2 + 8.0 * p3 + 6.0 * p4) / 24.0, 1e-14);
        }
    }

    #[test]
    fn direct_path_examples() {
        let pure = DensityMatrix::from_pure(&bloch_to_state([1.0, 0.0, 0.0]).unwrap());
        close(sym_moment_direct(&pure, 2).unwrap(), 1.0, 1e-14);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        close(sym_moment_direct(&mixed, 5).unwrap(), 6.0 / 32.0, 1e-15);
    }

    #[test]
    fn beta_examples() {
        let oct = builtin_design(BuiltinDesign::Octahedron);
        let single = assign_povms(&oct, &Grouping::Single).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let b = beta_parameters(&single, &mixed, 3).unwrap();
        close(b.beta, 1.0 / 36.0, 1e-16);
        close(b.beta_n, b.beta, 0.0);
        let pure = DensityMatrix::from_pure(&bloch_to_state([0.0, 0.0, 1.0]).unwrap());
        close(beta_parameters(&single, &pure, 3).unwrap().beta, 1.0 / 18.0, 1e-15);

        let ico = assign_povms(&builtin_design(BuiltinDesign::Icosahedron), &Grouping::Single).unwrap();
        let b = beta_parameters(&ico, &pure, 5).unwrap();
        close(b.beta, 32.0 / 6.0 / 12f64.powi(4), 1e-17);
        close(b.beta, 2.5720e-4, 1e-8);
    }

    #[test]
    fn beta_rejects_order_above_strength() {
        let oct = assign_povms(&builtin_design(BuiltinDesign::Octahedron), &Grouping::Single).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(beta_parameters(&oct, &mixed, 4).is_err());
        assert!(beta_parameters(&oct, &mixed, 1).is_err());
    }

    #[test]
    fn ranges() {
        let (lo, hi) = beta_range(6, 2, 3);
        close(lo, 1.0 / 36.0, 1e-17);
        close(hi, 1.0 / 18.0, 1e-17);
        let (lo, hi) = beta_range(30, 2, 5);
        close(lo, 30f64.powi(-4), 1e-20);
        close(hi, 30f64.powi(-4) * 32.0 / 6.0, 1e-20);
        assert!((1e5 * lo - 0.123).abs() < 1e-3 && (1e5 * hi - 0.658).abs() < 1e-3);
        let (lo, hi) = beta_range(2, 2, 3);
        close(lo, 0.25, 0.0);
        close(hi, 0.5, 1e-16);
    }

    #[test]
    fn beta_decreases_with_mixedness() {
        let single = assign_povms(&builtin_design(BuiltinDesign::Octahedron), &Grouping::Single).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=50 {
            let lambda = 0.5 * i as f64 / 50.0;
            let rho = DensityMatrix::diagonal(&[1.0 - lambda, lambda]).unwrap();
            let b = beta_parameters(&single, &rho, 3).unwrap().beta;
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn profile_lists_all_orders() {
        let ico = assign_povms(&builtin_design(BuiltinDesign::Icosahedron), &Grouping::Single).unwrap();
        let rho = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let prof = moment_profile(&ico, &rho, 5).unwrap();
        assert_eq!(prof.values.keys().copied().collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert!(prof.values.values().all(|v| *v <= 1.0 && *v > 0.0));
    }
}
