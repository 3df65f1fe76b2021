use num_complex::Complex64;

use super::QuantumDesign;
use crate::entropy::OutcomeDistribution;
use crate::error::{input, Error, Result};
use crate::quantum::{hermitian_eigenvalues, max_abs, CMatrix, DensityMatrix};

/// Max-entry tolerance for `Σ_j E_j = I`.
pub const IDENTITY_TOL: f64 = 1e-10;

/// A POVM: positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return input("a POVM needs at least one element");
        };
        let d = first.nrows();
        let mut sum = CMatrix::zeros(d, d);
        for (j, e) in elements.iter().enumerate() {
            if e.nrows() != d || e.ncols() != d {
                return input(format!("POVM element {j} has the wrong shape"));
            }
            let herm = max_abs(&(e - e.adjoint()));
            if herm > IDENTITY_TOL {
                return input(format!("POVM element {j} is not Hermitian"));
            }
            if hermitian_eigenvalues(e)[0] < -IDENTITY_TOL {
                return input(format!("POVM element {j} is not positive"));
            }
            sum += e;
        }
        let dev = identity_deviation(&sum);
        if dev > IDENTITY_TOL {
            return input(format!("POVM elements sum to the identity only within {dev:e}"));
        }
        Ok(Self { elements })
    }

    pub fn dimension(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// `p_j = tr(E_j ρ)`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<OutcomeDistribution> {
        if rho.dimension() != self.dimension() {
            return input(format!(
                "state dimension {} does not match POVM dimension {}",
                rho.dimension(),
                self.dimension()
            ));
        }
        let probs = self.elements.iter().map(|e| (e * rho.matrix()).trace().re).collect();
        OutcomeDistribution::new(probs)
    }
}

fn identity_deviation(m: &CMatrix) -> f64 {
    let d = m.nrows();
    max_abs(&(m - CMatrix::identity(d, d)))
}

/// How the design vectors are split into POVMs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grouping {
    /// One POVM with all `K` elements `(d/K)|φ_k⟩⟨φ_k|`.
    Single,
    /// Equal-sized disjoint blocks of zero-based vector indices.
    Partition(Vec<Vec<usize>>),
}

impl Grouping {
    /// The three Pauli bases of the built-in octahedron.
    pub fn octahedron_mub() -> Self {
        Self::Partition(vec![vec![0, 1], vec![2, 3], vec![4, 5]])
    }
}

/// `M` rank-one POVMs of `n` outcomes each assigned to a design, `K = nM`.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmAssignment {
    design: QuantumDesign,
    groups: Vec<Vec<usize>>,
}

/// Splits `design` into POVMs, validating every block eagerly.
pub fn assign_povms(design: &QuantumDesign, grouping: &Grouping) -> Result<PovmAssignment> {
    let k = design.len();
    let groups = match grouping {
        Grouping::Single => vec![(0..k).collect::<Vec<_>>()],
        Grouping::Partition(blocks) => {
            check_partition(blocks, k)?;
            blocks.clone()
        }
    };
    let assignment = PovmAssignment { design: design.clone(), groups };
    for m in 0..assignment.num_povms() {
        let sum = assignment
            .elements(m)
            .into_iter()
            .fold(CMatrix::zeros(design.dimension(), design.dimension()), |acc, e| acc + e);
        let dev = identity_deviation(&sum);
        if dev > IDENTITY_TOL {
            return Err(Error::Assignment {
                block: m,
                reason: format!(
                    "elements (d/n)|φ⟩⟨φ| over vectors {:?} sum to the identity only within {dev:.3e}",
                    assignment.groups[m]
                ),
            });
        }
    }
    Ok(assignment)
}

fn check_partition(blocks: &[Vec<usize>], k: usize) -> Result<()> {
    if blocks.is_empty() {
        return input("partition has no blocks");
    }
    let n = blocks[0].len();
    if n == 0 {
        return Err(Error::Assignment { block: 0, reason: "block is empty".into() });
    }
    let mut seen = vec![false; k];
    for (b, block) in blocks.iter().enumerate() {
        if block.len() != n {
            return Err(Error::Assignment {
                block: b,
                reason: format!("block has {} elements, expected {n}", block.len()),
            });
        }
        for &idx in block {
            if idx >= k {
                return Err(Error::Assignment {
                    block: b,
                    reason: format!("vector index {idx} out of range for K = {k}"),
                });
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::Assignment {
                    block: b,
                    reason: format!("vector index {idx} appears in more than one block"),
                });
            }
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return input(format!("partition does not cover vector {missing}"));
    }
    Ok(())
}

impl PovmAssignment {
    pub fn design(&self) -> &QuantumDesign {
        &self.design
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Number of POVMs `M`.
    pub fn num_povms(&self) -> usize {
        self.groups.len()
    }

    /// Outcomes per POVM `n`.
    pub fn outcomes(&self) -> usize {
        self.groups[0].len()
    }

    pub fn is_single(&self) -> bool {
        self.groups.len() == 1
    }

    fn weight(&self) -> f64 {
        self.design.dimension() as f64 / self.outcomes() as f64
    }

    /// Elements `(d/n)|φ_j⟩⟨φ_j|` of POVM `m` (zero-based).
    pub fn elements(&self, m: usize) -> Vec<CMatrix> {
        let w = Complex64::from(self.weight());
        self.groups[m].iter().map(|&k| self.design.vectors()[k].projector() * w).collect()
    }

    pub fn povm(&self, m: usize) -> Result<Povm> {
        if m >= self.num_povms() {
            return input(format!("POVM index {m} out of range for M = {}", self.num_povms()));
        }
        Povm::new(self.elements(m))
    }

    /// `p_j = (d/n)⟨φ_j|ρ|φ_j⟩` for POVM `m` (zero-based), in block order.
    pub fn outcome_probabilities(&self, m: usize, rho: &DensityMatrix) -> Result<OutcomeDistribution> {
        if m >= self.num_povms() {
            return input(format!("POVM index {m} out of range for M = {}", self.num_povms()));
        }
        if rho.dimension() != self.design.dimension() {
            return input(format!(
                "state dimension {} does not match design dimension {}",
                rho.dimension(),
                self.design.dimension()
            ));
        }
        let w = self.weight();
        let probs = self.groups[m].iter().map(|&k| w * rho.expectation(&self.design.vectors()[k])).collect();
        OutcomeDistribution::new(probs)
    }

    /// Outcome distributions of every POVM.
    pub fn all_probabilities(&self, rho: &DensityMatrix) -> Result<Vec<OutcomeDistribution>> {
        (0..self.num_povms()).map(|m| self.outcome_probabilities(m, rho)).collect()
    }
}

/// Convenience wrapper around [`PovmAssignment::outcome_probabilities`].
pub fn outcome_probabilities(
    assignment: &PovmAssignment,
    m: usize,
    rho: &DensityMatrix,
) -> Result<OutcomeDistribution> {
    assignment.outcome_probabilities(m, rho)
}
