//! Entropic and maximal-probability steering inequalities for a bipartite
//! state: Alice measures POVM `F^(m)`, Bob measures the design-assigned
//! `E^(m)` on the conditioned state.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::bounds::{state_independent_beta, state_independent_bounds};
use crate::designs::{Povm, PovmAssignment};
use crate::entropy::{conditional_renyi_arimoto, Alpha, JointDistribution};
use crate::error::{input, Result};
use crate::quantum::{
    check_density, partial_trace, psd_sqrt, random_density, CMatrix, DensityMatrix, Ensemble, StateVector, Subsystem,
    PSD_TOL,
};
use crate::upsilon::upsilon_value;

/// Slack on the steering inequalities.
pub const STEERING_TOL: f64 = 1e-10;
// Alice outcomes lighter than this are excluded from conditional sums
const ZERO_WEIGHT: f64 = 1e-12;

/// A density matrix on `C^{dA} ⊗ C^{dB}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteDensityMatrix {
    dims: (usize, usize),
    entries: CMatrix,
}

impl BipartiteDensityMatrix {
    pub fn new(dims: (usize, usize), entries: CMatrix) -> Result<Self> {
        let (da, db) = dims;
        if da == 0 || db == 0 || entries.nrows() != da * db {
            return input(format!(
                "matrix of size {}x{} does not match dimensions {da}x{db}",
                entries.nrows(),
                entries.ncols()
            ));
        }
        check_density(&entries, PSD_TOL)?;
        Ok(Self { dims, entries })
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::new((a.dimension(), b.dimension()), a.matrix().kronecker(b.matrix()))
    }

    /// `|Φ⁺⟩ = (1/√d) Σ_k |kk⟩`.
    pub fn maximally_entangled(d: usize) -> Result<Self> {
        if d < 2 {
            return input("maximally entangled state needs d >= 2");
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            amps[k * d + k] = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        }
        Self::new((d, d), StateVector::new(amps)?.projector())
    }

    /// `Σ_i q_i ρ_A^i ⊗ ρ_B^i`.
    pub fn separable_mixture(components: &[(f64, DensityMatrix, DensityMatrix)]) -> Result<Self> {
        let Some((_, a0, b0)) = components.first() else {
            return input("separable mixture needs at least one component");
        };
        let dims = (a0.dimension(), b0.dimension());
        let total: f64 = components.iter().map(|c| c.0).sum();
        if components.iter().any(|c| c.0 < 0.0) || (total - 1.0).abs() > 1e-12 {
            return input("mixture weights must be nonnegative and sum to 1");
        }
        let mut m = CMatrix::zeros(dims.0 * dims.1, dims.0 * dims.1);
        for (q, a, b) in components {
            if (a.dimension(), b.dimension()) != dims {
                return input("mixture components have inconsistent dimensions");
            }
            m += a.matrix().kronecker(b.matrix()) * Complex64::new(*q, 0.0);
        }
        Self::new(dims, m)
    }

    /// Random separable state: `components` product terms with Dirichlet-like
    /// weights and Hilbert–Schmidt local states.
    pub fn random_separable<R: Rng + ?Sized>(d: usize, components: usize, rng: &mut R) -> Result<Self> {
        if components == 0 {
            return input("need at least one component");
        }
        let raw: Vec<f64> = (0..components).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
        let total: f64 = raw.iter().sum();
        let parts = raw
            .into_iter()
            .map(|w| {
                Ok((
                    w / total,
                    random_density(d, Ensemble::HilbertSchmidt, rng)?,
                    random_density(d, Ensemble::HilbertSchmidt, rng)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::separable_mixture(&parts)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn reduced_a(&self) -> Result<DensityMatrix> {
        partial_trace(&self.entries, self.dims, Subsystem::B)
    }

    pub fn reduced_b(&self) -> Result<DensityMatrix> {
        partial_trace(&self.entries, self.dims, Subsystem::A)
    }
}

/// Bob's states conditioned on each outcome of one Alice POVM.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalEnsemble {
    /// `p_ℓ = tr((F_ℓ ⊗ I) ρ_AB)`.
    pub weights: Vec<f64>,
    /// `ρ_{Bℓ}`, or `None` for outcomes of zero weight.
    pub states: Vec<Option<DensityMatrix>>,
}

impl ConditionalEnsemble {
    /// Indices of zero-weight outcomes excluded from sums.
    pub fn excluded(&self) -> Vec<usize> {
        self.states.iter().enumerate().filter_map(|(i, s)| s.is_none().then_some(i)).collect()
    }

    /// `Σ_ℓ p_ℓ ρ_{Bℓ}`.
    pub fn average(&self) -> CMatrix {
        let d = self.states.iter().flatten().next().map_or(0, |s| s.dimension());
        let mut m = CMatrix::zeros(d, d);
        for (w, s) in self.weights.iter().zip(&self.states) {
            if let Some(s) = s {
                m += s.matrix() * Complex64::new(*w, 0.0);
            }
        }
        m
    }
}

/// Conditions Bob's subsystem on each outcome of `alice`.
pub fn conditioned_ensemble(rho_ab: &BipartiteDensityMatrix, alice: &Povm) -> Result<ConditionalEnsemble> {
    let (da, db) = rho_ab.dims();
    if alice.dimension() != da {
        return input(format!("Alice's POVM acts on dimension {}, state has d_A = {da}", alice.dimension()));
    }
    let id_b = CMatrix::identity(db, db);
    let mut weights = Vec::with_capacity(alice.len());
    let mut states = Vec::with_capacity(alice.len());
    for f in alice.elements() {
        let s = psd_sqrt(f).kronecker(&id_b);
        let x = &s * rho_ab.matrix() * &s;
        let x = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
        let reduced = crate::quantum::partial_trace_op(&x, (da, db), Subsystem::A)?;
        let p = reduced.trace().re;
        if p <= ZERO_WEIGHT {
            weights.push(p.max(0.0));
            states.push(None);
        } else {
            weights.push(p);
            states.push(Some(DensityMatrix::new(reduced / Complex64::new(p, 0.0))?));
        }
    }
    Ok(ConditionalEnsemble { weights, states })
}

/// Alice measures the same POVMs as Bob.
pub fn matched_alice_povms(bob: &PovmAssignment) -> Result<Vec<Povm>> {
    (0..bob.num_povms()).map(|m| bob.povm(m)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteeringOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

fn check_setup(rho_ab: &BipartiteDensityMatrix, alice: &[Povm], bob: &PovmAssignment) -> Result<()> {
    if alice.len() != bob.num_povms() {
        return input(format!("Alice has {} POVMs but Bob's assignment has M = {}", alice.len(), bob.num_povms()));
    }
    if rho_ab.dims().1 != bob.design().dimension() {
        return input(format!(
            "Bob's design has dimension {}, state has d_B = {}",
            bob.design().dimension(),
            rho_ab.dims().1
        ));
    }
    Ok(())
}

/// Joint distribution of Bob's outcome `j` (rows) and Alice's outcome `ℓ`
/// (columns) for measurement pair `m`.
pub fn pair_joint(
    rho_ab: &BipartiteDensityMatrix,
    alice: &Povm,
    bob: &PovmAssignment,
    m: usize,
) -> Result<JointDistribution> {
    let ens = conditioned_ensemble(rho_ab, alice)?;
    let n = bob.outcomes();
    let mut p = DMatrix::zeros(n, ens.weights.len());
    for (l, (w, state)) in ens.weights.iter().zip(&ens.states).enumerate() {
        if let Some(state) = state {
            let dist = bob.outcome_probabilities(m, state)?;
            for (j, pj) in dist.probs().iter().enumerate() {
                p[(j, l)] = w * pj;
            }
        }
    }
    JointDistribution::new(p)
}

/// Entropic steering inequality: the average Arimoto conditional Rényi
/// entropy must stay above the state-independent Rényi bound.
pub fn steering_check_renyi(
    rho_ab: &BipartiteDensityMatrix,
    alice: &[Povm],
    bob: &PovmAssignment,
    alpha: Alpha,
) -> Result<SteeringOutcome> {
    check_setup(rho_ab, alice, bob)?;
    let design = bob.design();
    let t = design.strength();
    let rhs = state_independent_bounds(bob.outcomes(), design.dimension(), t, alpha)?;
    let mut lhs = 0.0;
    for (m, f) in alice.iter().enumerate() {
        lhs += conditional_renyi_arimoto(&pair_joint(rho_ab, f, bob, m)?, alpha);
    }
    lhs /= alice.len() as f64;
    Ok(SteeringOutcome { lhs, rhs, satisfied: lhs >= rhs - STEERING_TOL })
}

/// Maximal-probability steering inequality:
/// `(1/M) Σ_m Σ_ℓ p_ℓ max_j p_j(E^(m); ρ_{Bℓ}) ≤ Υ(n^{1−t} d^t D_d^(t))`.
pub fn steering_check_maxprob(
    rho_ab: &BipartiteDensityMatrix,
    alice: &[Povm],
    bob: &PovmAssignment,
) -> Result<SteeringOutcome> {
    check_setup(rho_ab, alice, bob)?;
    let design = bob.design();
    let t = design.strength();
    let n = bob.outcomes();
    let rhs = upsilon_value(n, t, state_independent_beta(n, design.dimension(), t))?;
    let mut lhs = 0.0;
    for (m, f) in alice.iter().enumerate() {
        let ens = conditioned_ensemble(rho_ab, f)?;
        for (w, state) in ens.weights.iter().zip(&ens.states) {
            if let Some(state) = state {
                lhs += w * bob.outcome_probabilities(m, state)?.max();
            }
        }
    }
    lhs /= alice.len() as f64;
    Ok(SteeringOutcome { lhs, rhs, satisfied: lhs <= rhs + STEERING_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
    use crate::entropy::renyi_entropy;
    use crate::quantum::{max_abs, seeded_rng};

    fn mub() -> PovmAssignment {
        assign_povms(&builtin_design(BuiltinDesign::Octahedron), &Grouping::octahedron_mub()).unwrap()
    }

    #[test]
    fn product_state_is_not_steered() {
        let mut rng = seeded_rng(1);
        let ra = random_density(2, Ensemble::HilbertSchmidt, &mut rng).unwrap();
        let rb = random_density(2, Ensemble::HilbertSchmidt, &mut rng).unwrap();
        let ab = BipartiteDensityMatrix::product(&ra, &rb).unwrap();
        let bob = mub();
        for povm in matched_alice_povms(&bob).unwrap() {
            let ens = conditioned_ensemble(&ab, &povm).unwrap();
            for s in ens.states.iter().flatten() {
                assert!(max_abs(&(s.matrix() - rb.matrix())) < 1e-12);
            }
        }
        let alice = matched_alice_povms(&bob).unwrap();
        let r = steering_check_renyi(&ab, &alice, &bob, Alpha::Infinity).unwrap();
        let unconditional: f64 =
            bob.all_probabilities(&rb).unwrap().iter().map(|p| renyi_entropy(p, Alpha::Infinity)).sum::<f64>() / 3.0;
        assert!((r.lhs - unconditional).abs() < 1e-12);
        assert!(r.satisfied);
    }

    #[test]
    fn bell_state_conditions_to_basis_states() {
        let ab = BipartiteDensityMatrix::maximally_entangled(2).unwrap();
        let z = Povm::new(vec![
            StateVector::basis(2, 0).unwrap().projector(),
            StateVector::basis(2, 1).unwrap().projector(),
        ])
        .unwrap();
        let ens = conditioned_ensemble(&ab, &z).unwrap();
        assert!(ens.weights.iter().all(|w| (w - 0.5).abs() < 1e-15));
        for (k, s) in ens.states.iter().enumerate() {
            let expected = StateVector::basis(2, k).unwrap().projector();
            assert!(max_abs(&(s.as_ref().unwrap().matrix() - expected)) < 1e-14);
        }
    }

    #[test]
    fn ensembles_reconstruct_reduced_state() {
        let mut rng = seeded_rng(8);
        let bob = mub();
        let alice = matched_alice_povms(&bob).unwrap();
        for _ in 0..100 {
            let ab = BipartiteDensityMatrix::new(
                (2, 2),
                random_density(4, Ensemble::HilbertSchmidt, &mut rng).unwrap().into_matrix(),
            )
            .unwrap();
            let rb = ab.reduced_b().unwrap();
            for povm in &alice {
                let ens = conditioned_ensemble(&ab, povm).unwrap();
                assert!(max_abs(&(ens.average() - rb.matrix())) < 1e-10);
                assert!((ens.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_weight_outcomes_are_flagged() {
        let up = DensityMatrix::from_pure(&StateVector::basis(2, 0).unwrap());
        let ab = BipartiteDensityMatrix::product(&up, &up).unwrap();
        let z = mub().povm(2).unwrap();
        let ens = conditioned_ensemble(&ab, &z).unwrap();
        assert_eq!(ens.excluded(), vec![1]);
        assert!(max_abs(&(ens.average() - up.matrix())) < 1e-15);
    }

    #[test]
    fn bell_state_violates_both() {
        let ab = BipartiteDensityMatrix::maximally_entangled(2).unwrap();
        let bob = mub();
        let alice = matched_alice_povms(&bob).unwrap();
        for a in [Alpha::Finite(3.0), Alpha::Finite(5.0), Alpha::Infinity] {
            let r = steering_check_renyi(&ab, &alice, &bob, a).unwrap();
            assert!(r.lhs.abs() < 1e-12 && r.rhs > 0.0 && !r.satisfied);
        }
        let r = steering_check_maxprob(&ab, &alice, &bob).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!(!r.satisfied);
    }

    #[test]
    fn mixed_product_saturates_maxprob_floor() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let ab = BipartiteDensityMatrix::product(&mixed, &mixed).unwrap();
        let bob = mub();
        let alice = matched_alice_povms(&bob).unwrap();
        let r = steering_check_maxprob(&ab, &alice, &bob).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-15);
        assert!(r.satisfied);
    }

    #[test]
    fn setup_errors() {
        let ab = BipartiteDensityMatrix::maximally_entangled(2).unwrap();
        let bob = mub();
        let alice = matched_alice_povms(&bob).unwrap();
        assert!(steering_check_renyi(&ab, &alice[..2], &bob, Alpha::Infinity).is_err());
        assert!(steering_check_renyi(&ab, &alice, &bob, Alpha::Finite(2.0)).is_err());
        let ab3 = BipartiteDensityMatrix::maximally_entangled(3).unwrap();
        assert!(steering_check_maxprob(&ab3, &alice, &bob).is_err());
        assert!(BipartiteDensityMatrix::new((2, 3), CMatrix::identity(4, 4)).is_err());
    }

    #[test]
    fn separable_states_satisfy_both() {
        let mut rng = seeded_rng(12);
        let bob = mub();
        let alice = matched_alice_povms(&bob).unwrap();
        for _ in 0..30 {
            let ab = BipartiteDensityMatrix::random_separable(2, 3, &mut rng).unwrap();
            for a in [Alpha::Finite(3.0), Alpha::Finite(5.0), Alpha::Infinity] {
                assert!(steering_check_renyi(&ab, &alice, &bob, a).unwrap().satisfied);
            }
            assert!(steering_check_maxprob(&ab, &alice, &bob).unwrap().satisfied);
        }
    }
}
