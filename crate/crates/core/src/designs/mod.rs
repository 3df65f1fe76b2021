//! Complex projective t-designs: built-in qubit polyhedra, frame-potential
//! and operator verification, POVM assignment and outcome probabilities.

mod builtin;
mod povm;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::quantum::{inverse_symmetric_dimension, sym_projector, CMatrix, StateVector};

pub use builtin::{builtin_design, BuiltinDesign};
pub use povm::{assign_povms, outcome_probabilities, Grouping, Povm, PovmAssignment, IDENTITY_TOL};

/// Default tolerance for design verification.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-10;

/// A finite set of unit vectors in `C^d` with a claimed design strength.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDesign {
    dimension: usize,
    strength: usize,
    vectors: Vec<StateVector>,
}

impl QuantumDesign {
    /// Builds a design after checking vector dimensions and `K ≥ d`.
    ///
    /// The claimed strength is not checked here; see [`verify_design`].
    pub fn new(dimension: usize, strength: usize, vectors: Vec<StateVector>) -> Result<Self> {
        if dimension < 2 {
            return input(format!("design dimension must be at least 2, got {dimension}"));
        }
        if strength < 1 {
            return input("design strength must be at least 1");
        }
        if let Some(k) = vectors.iter().position(|v| v.dimension() != dimension) {
            return input(format!("vector {k} has dimension {}, expected {dimension}", vectors[k].dimension()));
        }
        if vectors.len() < dimension {
            return input(format!(
                "a design in dimension {dimension} needs at least {dimension} vectors, got {}",
                vectors.len()
            ));
        }
        Ok(Self { dimension, strength, vectors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Claimed strength `t`.
    pub fn strength(&self) -> usize {
        self.strength
    }

    /// Number of vectors `K`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// Gram matrix of squared overlaps `|⟨φ_j|φ_k⟩|²`.
    pub fn overlaps(&self) -> Vec<Vec<f64>> {
        self.vectors.iter().map(|a| self.vectors.iter().map(|b| a.overlap(b)).collect()).collect()
    }
}

/// `(1/K²) Σ_{j,k} |⟨φ_j|φ_k⟩|^{2s}`.
pub fn frame_potential(design: &QuantumDesign, s: usize) -> f64 {
    let k = design.len() as f64;
    let sum: f64 = design.overlaps().iter().flatten().map(|&o| o.powi(s as i32)).sum();
    sum / (k * k)
}

/// How [`verify_design`] tests the design property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMethod {
    /// Frame potential against `D_d^(s)`.
    Frame,
    /// `(1/K) Σ |φ⟩⟨φ|^{⊗s}` against `D_d^(s) P_sym^(s)` in max-norm.
    Operator,
}

impl FromStr for VerifyMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frame" => Ok(Self::Frame),
            "operator" => Ok(Self::Operator),
            other => input(format!("unknown verification method '{other}'")),
        }
    }
}

impl fmt::Display for VerifyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Frame => "frame",
            Self::Operator => "operator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderResidual {
    pub s: usize,
    /// Frame potential (frame method) or max-norm deviation (operator method).
    pub value: f64,
    /// `D_d^(s)` for the frame method, 0 for the operator method.
    pub target: f64,
    pub residual: f64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub method: VerifyMethod,
    pub strength: usize,
    pub tol: f64,
    pub passes: bool,
    pub residuals: Vec<OrderResidual>,
}

impl VerificationReport {
    pub fn residual(&self, s: usize) -> Option<f64> {
        self.residuals.iter().find(|r| r.s == s).map(|r| r.residual)
    }
}

/// Checks that `design` is an `s`-design for every `s ≤ t`.
pub fn verify_design(design: &QuantumDesign, t: usize, tol: f64, method: VerifyMethod) -> Result<VerificationReport> {
    if t < 1 {
        return input("verification order must be at least 1");
    }
    let d = design.dimension();
    let mut residuals = Vec::with_capacity(t);
    for s in 1..=t {
        let target = inverse_symmetric_dimension(d, s);
        let (value, target, residual) = match method {
            VerifyMethod::Frame => {
                let fp = frame_potential(design, s);
                (fp, target, fp - target)
            }
            VerifyMethod::Operator => {
                let dev = operator_deviation(design, s, target)?;
                (dev, 0.0, dev)
            }
        };
        residuals.push(OrderResidual { s, value, target, residual, passes: residual.abs() <= tol });
    }
    Ok(VerificationReport { method, strength: t, tol, passes: residuals.iter().all(|r| r.passes), residuals })
}

fn operator_deviation(design: &QuantumDesign, s: usize, inv_dim: f64) -> Result<f64> {
    let projector = sym_projector(design.dimension(), s)?;
    let n = projector.matrix().nrows();
    let mut avg = CMatrix::zeros(n, n);
    for v in design.vectors() {
        let p = v.tensor_power(s);
        avg += &p * p.adjoint();
    }
    avg /= Complex64::from(design.len() as f64);
    let dev = avg
        .iter()
        .zip(projector.matrix().iter())
        .map(|(a, p)| (a - Complex64::from(inv_dim * p)).norm())
        .fold(0.0, f64::max);
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{random_state, seeded_rng};

    #[test]
    fn octahedron_frame_potentials() {
        let oct = builtin_design(BuiltinDesign::Octahedron);
        // oracle: 6 self-overlaps of 1, 6 orthogonal pairs, 24 pairs at 1/2
        let by_hand = |s: i32| (6.0 + 24.0 * 0.5f64.powi(s)) / 36.0;
        assert!((frame_potential(&oct, 3) - 0.25).abs() < 1e-15);
        assert!((frame_potential(&oct, 3) - by_hand(3)).abs() < 1e-15);
        assert!((frame_potential(&oct, 4) - 7.5 / 36.0).abs() < 1e-15);
        assert!((frame_potential(&oct, 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn s_one_potential_is_inverse_dimension() {
        for b in BuiltinDesign::ALL {
            let design = builtin_design(b);
            assert!((frame_potential(&design, 1) - 0.5).abs() < 1e-14, "{b}");
        }
    }

    #[test]
    fn octahedron_fails_order_four() {
        let oct = builtin_design(BuiltinDesign::Octahedron);
        let report = verify_design(&oct, 4, DEFAULT_VERIFY_TOL, VerifyMethod::Frame).unwrap();
        assert!(!report.passes);
        assert!((report.residual(4).unwrap() - 1.0 / 120.0).abs() < 1e-12);
        assert!(report.residuals[..3].iter().all(|r| r.passes));
        let op = verify_design(&oct, 4, DEFAULT_VERIFY_TOL, VerifyMethod::Operator).unwrap();
        assert!(!op.passes);
    }

    #[test]
    fn icosahedron_is_not_a_six_design() {
        let ico = builtin_design(BuiltinDesign::Icosahedron);
        let fp = frame_potential(&ico, 6);
        // direct sum over the 144 Bloch-vector pairs, |<a|b>|^2 = (1 + a.b)/2
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut bloch = Vec::new();
        for r in 0..3 {
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    let mut v = [0.0, s1, s2 * phi];
                    v.rotate_right(r);
                    let n = (1.0 + phi * phi).sqrt();
                    bloch.push(v.map(|x| x / n));
                }
            }
        }
        let mut oracle = 0.0;
        for a in &bloch {
            for b in &bloch {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                oracle += ((1.0 + dot) / 2.0).powi(6);
            }
        }
        oracle /= 144.0;
        assert!((fp - oracle).abs() < 1e-14);
        assert!((fp - 0.143333333333).abs() < 1e-9);
        assert!(fp > 1.0 / 7.0);
        let report = verify_design(&ico, 6, DEFAULT_VERIFY_TOL, VerifyMethod::Frame).unwrap();
        assert!(!report.passes);
    }

    #[test]
    fn random_qutrit_set_is_not_a_two_design() {
        let mut rng = seeded_rng(11);
        let vecs: Vec<_> = (0..9).map(|_| random_state(3, &mut rng).unwrap()).collect();
        let design = QuantumDesign::new(3, 2, vecs).unwrap();
        let report = verify_design(&design, 2, DEFAULT_VERIFY_TOL, VerifyMethod::Frame).unwrap();
        assert!(!report.passes);
        assert!(frame_potential(&design, 2) > inverse_symmetric_dimension(3, 2));
        let op = verify_design(&design, 2, DEFAULT_VERIFY_TOL, VerifyMethod::Operator).unwrap();
        assert!(!op.passes);
    }

    #[test]
    fn constructor_checks() {
        let z = StateVector::basis(2, 0).unwrap();
        assert!(QuantumDesign::new(2, 1, vec![z.clone()]).is_err());
        let q = StateVector::basis(3, 0).unwrap();
        assert!(QuantumDesign::new(2, 1, vec![z.clone(), q]).is_err());
        assert!(QuantumDesign::new(2, 0, vec![z.clone(), z]).is_err());
    }

    #[test]
    fn method_parsing() {
        assert_eq!("frame".parse::<VerifyMethod>().unwrap(), VerifyMethod::Frame);
        assert_eq!("operator".parse::<VerifyMethod>().unwrap(), VerifyMethod::Operator);
        assert!("both".parse::<VerifyMethod>().is_err());
    }
}
