use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{input, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance on the squared norm of a state vector.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity and unit trace of a density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue a density matrix may carry.
pub const PSD_TOL: f64 = -1e-10;

const PHASE_EPS: f64 = 1e-14;

/// A unit vector in `C^d` with its global phase fixed.
///
/// The first amplitude whose modulus exceeds `1e-14` is made real and
/// nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return input("state vector must have at least one amplitude");
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return input("state vector contains a non-finite amplitude");
        }
        let v = CVector::from_vec(amplitudes);
        let norm_sq = v.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return input(format!("state vector has squared norm {norm_sq}, expected 1"));
        }
        Ok(Self { amplitudes: fix_phase(v) })
    }

    /// Normalizes `amplitudes` before applying the phase convention.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let v = CVector::from_vec(amplitudes);
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return input("cannot normalize a zero or non-finite vector");
        }
        Self::new((v / Complex64::from(norm)).data.into())
    }

    /// Computational basis vector `|k⟩` in `C^d`.
    pub fn basis(d: usize, k: usize) -> Result<Self> {
        if k >= d {
            return input(format!("basis index {k} out of range for dimension {d}"));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[k] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// The rank-one projector `|self⟩⟨self|`.
    pub fn projector(&self) -> CMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }

    /// The `t`-fold tensor power `|self⟩^{⊗t}` as a vector of length `d^t`.
    pub fn tensor_power(&self, t: usize) -> CVector {
        let mut out = CVector::from_element(1, Complex64::new(1.0, 0.0));
        for _ in 0..t {
            out = out.kronecker(&self.amplitudes);
        }
        out
    }
}

fn fix_phase(mut v: CVector) -> CVector {
    if let Some(first) = v.iter().copied().find(|a| a.norm() > PHASE_EPS) {
        let phase = first.conj() / first.norm();
        v *= phase;
        // pin the reference amplitude to an exact real value
        if let Some(a) = v.iter_mut().find(|a| a.norm() > PHASE_EPS) {
            *a = Complex64::new(a.norm(), 0.0);
        }
    }
    v
}

/// Qubit state with Bloch vector `b`: the +1 eigenvector of `b·σ`.
pub fn bloch_to_state(b: [f64; 3]) -> Result<StateVector> {
    let [x, y, z] = b;
    let len_sq = x * x + y * y + z * z;
    if !len_sq.is_finite() || (len_sq.sqrt() - 1.0).abs() > NORM_TOL {
        return input(format!("Bloch vector ({x}, {y}, {z}) is not a unit vector"));
    }
    let amps = if z >= 0.0 {
        let c = ((1.0 + z) / 2.0).sqrt();
        vec![Complex64::new(c, 0.0), Complex64::new(x, y) / (2.0 * c)]
    } else {
        let s = ((1.0 - z) / 2.0).sqrt();
        vec![Complex64::new(x, -y) / (2.0 * s), Complex64::new(s, 0.0)]
    };
    StateVector::normalized(amps)
}

/// Bloch vector of a qubit pure state.
pub fn state_to_bloch(psi: &StateVector) -> Result<[f64; 3]> {
    if psi.dimension() != 2 {
        return input("Bloch vectors are defined for qubits only");
    }
    let a = psi.amplitudes()[0];
    let b = psi.amplitudes()[1];
    let off = a.conj() * b;
    Ok([2.0 * off.re, 2.0 * off.im, a.norm_sqr() - b.norm_sqr()])
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_density(&entries, PSD_TOL)?;
        Ok(Self { entries })
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        Self { entries: psi.projector() }
    }

    /// `I/d`.
    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d == 0 {
            return input("dimension must be positive");
        }
        Ok(Self { entries: CMatrix::identity(d, d) / Complex64::from(d as f64) })
    }

    /// Diagonal state with the given eigenvalues.
    pub fn diagonal(eigenvalues: &[f64]) -> Result<Self> {
        let diag = CVector::from_iterator(eigenvalues.len(), eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(CMatrix::from_diagonal(&diag))
    }

    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        let v = psi.amplitudes();
        v.dotc(&(&self.entries * v)).re
    }
}

pub(crate) fn check_density(m: &CMatrix, psd_tol: f64) -> Result<()> {
    if m.nrows() == 0 || m.nrows() != m.ncols() {
        return input(format!("density matrix must be square, got {}x{}", m.nrows(), m.ncols()));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return input("density matrix contains a non-finite entry");
    }
    let herm = max_abs(&(m - m.adjoint()));
    if herm > HERMITIAN_TOL {
        return input(format!("matrix is not Hermitian (deviation {herm:e})"));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
        return input(format!("trace is {tr}, expected 1"));
    }
    let min = hermitian_eigenvalues(m)[0];
    if min < psd_tol {
        return input(format!("matrix is not positive semidefinite (min eigenvalue {min:e})"));
    }
    Ok(())
}

/// Largest entry modulus.
pub fn max_abs<'a>(entries: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues below zero (floating-point dust) are clamped to zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let roots = CVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex64::new(l.max(0.0).sqrt(), 0.0)),
    );
    let u = &eig.eigenvectors;
    u * CMatrix::from_diagonal(&roots) * u.adjoint()
}

/// Moments `tr(ρ^q)` for `q = 1..=qmax`, computed from the spectrum.
pub fn power_moments(rho: &DensityMatrix, qmax: usize) -> Result<Vec<f64>> {
    if qmax == 0 {
        return input("qmax must be at least 1");
    }
    Ok(power_sums(&rho.eigenvalues(), qmax))
}

pub(crate) fn power_sums(eigenvalues: &[f64], qmax: usize) -> Vec<f64> {
    (1..=qmax).map(|q| eigenvalues.iter().map(|l| l.powi(q as i32)).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_amps(psi: &StateVector, expected: &[Complex64]) {
        for (a, e) in psi.amplitudes().iter().zip(expected) {
            assert!((a - e).norm() < 1e-14, "{a} vs {e}");
        }
    }

    #[test]
    fn bloch_poles_and_equator() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_amps(&bloch_to_state([0.0, 0.0, 1.0]).unwrap(), &[c(1.0), c(0.0)]);
        assert_amps(&bloch_to_state([1.0, 0.0, 0.0]).unwrap(), &[c(h), c(h)]);
        assert_amps(&bloch_to_state([0.0, 0.0, -1.0]).unwrap(), &[c(0.0), c(1.0)]);
        assert_amps(&bloch_to_state([0.0, 1.0, 0.0]).unwrap(), &[c(h), Complex64::new(0.0, h)]);
    }

    #[test]
    fn bloch_rejects_non_unit() {
        assert!(bloch_to_state([0.0, 0.0, 0.9]).is_err());
        assert!(bloch_to_state([f64::NAN, 0.0, 1.0]).is_err());
    }

    #[test]
    fn bloch_round_trip() {
        let b = [0.36, -0.48, 0.8];
        let back = state_to_bloch(&bloch_to_state(b).unwrap()).unwrap();
        for (x, y) in b.iter().zip(back) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn phase_convention_applied() {
        let psi = StateVector::new(vec![Complex64::new(0.0, 0.6), c(0.8)]).unwrap();
        assert_eq!(psi.amplitudes()[0], c(0.6));
        assert!((psi.amplitudes()[1] - Complex64::new(0.0, -0.8)).norm() < 1e-15);
    }

    #[test]
    fn state_vector_rejects_bad_norm() {
        assert!(StateVector::new(vec![c(0.9), c(0.0)]).is_err());
        assert!(StateVector::new(vec![]).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        let mut m = CMatrix::identity(2, 2) * c(0.5);
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(DensityMatrix::new(m).is_err());
        assert!(DensityMatrix::diagonal(&[0.7, 0.3]).is_ok());
    }

    #[test]
    fn power_moment_examples() {
        let pure = DensityMatrix::from_pure(&bloch_to_state([0.6, 0.0, 0.8]).unwrap());
        for m in power_moments(&pure, 4).unwrap() {
            assert!((m - 1.0).abs() < 1e-12);
        }
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let got = power_moments(&mixed, 3).unwrap();
        for (g, e) in got.iter().zip([1.0, 0.5, 0.25]) {
            assert!((g - e).abs() < 1e-15);
        }
        let diag = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let got = power_moments(&diag, 2).unwrap();
        assert!((got[0] - 1.0).abs() < 1e-15);
        assert!((got[1] - 0.58).abs() < 1e-15);
        assert!(power_moments(&diag, 0).is_err());
    }

    #[test]
    fn purity_matches_second_moment() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        assert!((rho.purity() - 0.58).abs() < 1e-15);
    }

    #[test]
    fn sqrt_squares_back() {
        let rho = DensityMatrix::diagonal(&[0.64, 0.36]).unwrap();
        let r = psd_sqrt(rho.matrix());
        assert!((&r * &r - rho.matrix()).norm() < 1e-14);
        assert!((r[(0, 0)].re - 0.8).abs() < 1e-14);
    }
}
