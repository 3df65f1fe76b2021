use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::state::{CMatrix, DensityMatrix, StateVector};
use crate::error::{input, Result};

/// Ensemble to draw random density matrices from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ensemble {
    /// Haar-random pure states.
    Pure,
    /// Hilbert–Schmidt measure: `GG† / tr(GG†)` with complex Ginibre `G`.
    HilbertSchmidt,
    /// The qubit state `diag(1 − λ, λ)` with `0 ≤ λ ≤ 1/2`.
    Diagonal(f64),
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unit vector in `C^d`.
pub fn random_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<StateVector> {
    if d == 0 {
        return input("dimension must be positive");
    }
    StateVector::normalized((0..d).map(|_| complex_normal(rng)).collect())
}

/// Draws a density matrix of dimension `d` from `ensemble`.
pub fn random_density<R: Rng + ?Sized>(d: usize, ensemble: Ensemble, rng: &mut R) -> Result<DensityMatrix> {
    if d == 0 {
        return input("dimension must be positive");
    }
    match ensemble {
        Ensemble::Pure => Ok(DensityMatrix::from_pure(&random_state(d, rng)?)),
        Ensemble::HilbertSchmidt => {
            let g = CMatrix::from_fn(d, d, |_, _| complex_normal(rng));
            let w = &g * g.adjoint();
            let w = (&w + w.adjoint()) * Complex64::new(0.5, 0.0);
            let tr = w.trace().re;
            DensityMatrix::new(w / Complex64::new(tr, 0.0))
        }
        Ensemble::Diagonal(lambda) => {
            if d != 2 {
                return input("the diagonal ensemble is defined for d = 2 only");
            }
            if !(0.0..=0.5).contains(&lambda) {
                return input(format!("lambda = {lambda} outside [0, 1/2]"));
            }
            DensityMatrix::diagonal(&[1.0 - lambda, lambda])
        }
    }
}

/// [`random_density`] with a fresh generator seeded from `seed`.
pub fn random_density_seeded(d: usize, seed: u64, ensemble: Ensemble) -> Result<DensityMatrix> {
    random_density(d, ensemble, &mut seeded_rng(seed))
}
