//! Tensor powers, partial traces and the projector onto the symmetric
//! subspace of `(C^d)^{⊗t}`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::{CMatrix, DensityMatrix};
use crate::error::{input, Error, Result};

/// Largest tensor-power dimension `d^t` handled with dense matrices.
pub const MAX_TENSOR_DIM: usize = 4096;

/// `d^t`, or a size error when it exceeds [`MAX_TENSOR_DIM`].
pub fn tensor_dim(d: usize, t: usize) -> Result<usize> {
    let size_err = || Error::Size { dim: d, power: t, limit: MAX_TENSOR_DIM };
    let exp = u32::try_from(t).map_err(|_| size_err())?;
    match d.checked_pow(exp) {
        Some(n) if n <= MAX_TENSOR_DIM => Ok(n),
        _ => Err(size_err()),
    }
}

/// `binom(n, k)` as a float; exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Inverse dimension of the symmetric subspace, `binom(d + t − 1, t)^{-1}`.
pub fn inverse_symmetric_dimension(d: usize, t: usize) -> f64 {
    1.0 / binomial(d + t - 1, t)
}

/// `ρ^{⊗t}`.
pub fn tensor_power(rho: &DensityMatrix, t: usize) -> Result<CMatrix> {
    let d = rho.dimension();
    tensor_dim(d, t)?;
    let mut out = CMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for _ in 0..t {
        out = out.kronecker(rho.matrix());
    }
    Ok(out)
}

/// Which factor of a bipartite space to trace out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of an operator on `C^{dA} ⊗ C^{dB}` over `traced`.
///
/// Works on arbitrary operators; see [`partial_trace`] for states.
pub fn partial_trace_op(m: &CMatrix, dims: (usize, usize), traced: Subsystem) -> Result<CMatrix> {
    let (da, db) = dims;
    if da == 0 || db == 0 || m.nrows() != da * db || m.ncols() != da * db {
        return input(format!("operator of size {}x{} does not match dimensions {da}x{db}", m.nrows(), m.ncols()));
    }
    Ok(match traced {
        Subsystem::B => CMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()),
        Subsystem::A => CMatrix::from_fn(db, db, |i, j| (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()),
    })
}

/// Reduced state after tracing out `traced`.
pub fn partial_trace(rho_ab: &CMatrix, dims: (usize, usize), traced: Subsystem) -> Result<DensityMatrix> {
    DensityMatrix::new(partial_trace_op(rho_ab, dims, traced)?)
}

/// All permutations of `0..t` in lexicographic order.
pub fn permutations(t: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(t), &mut vec![false; t], &mut out);
    out
}

/// Index of the basis ket obtained by moving tensor factor `k` of `index`
/// to position `perm[k]`. Factor 0 is the most significant digit.
fn permute_index(index: usize, d: usize, perm: &[usize]) -> usize {
    let t = perm.len();
    let mut digits = vec![0usize; t];
    let mut rest = index;
    for k in (0..t).rev() {
        digits[k] = rest % d;
        rest /= d;
    }
    let mut moved = vec![0usize; t];
    for (k, &p) in perm.iter().enumerate() {
        moved[p] = digits[k];
    }
    moved.iter().fold(0, |acc, &digit| acc * d + digit)
}

/// The real permutation matrix `Π_σ` acting on `(C^d)^{⊗t}`.
pub fn permutation_operator(d: usize, perm: &[usize]) -> Result<DMatrix<f64>> {
    let n = tensor_dim(d, perm.len())?;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(permute_index(i, d, perm), i)] = 1.0;
    }
    Ok(m)
}

/// Projector onto the symmetric subspace of `(C^d)^{⊗t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricProjector {
    dimension: usize,
    order: usize,
    matrix: DMatrix<f64>,
}

impl SymmetricProjector {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The projector; its entries are real.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `tr(A · P)` for a complex operator `A` of matching size.
    pub fn trace_against(&self, a: &CMatrix) -> Complex64 {
        let n = self.matrix.nrows();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let p = self.matrix[(j, i)];
                if p != 0.0 {
                    acc += a[(i, j)] * p;
                }
            }
        }
        acc
    }
}

/// `P_sym = (1/t!) Σ_σ Π_σ`.
pub fn sym_projector(d: usize, t: usize) -> Result<SymmetricProjector> {
    if d < 2 {
        return input(format!("dimension must be at least 2, got {d}"));
    }
    if t < 1 {
        return input("order t must be at least 1");
    }
    let n = tensor_dim(d, t)?;
    let perms = permutations(t);
    let weight = 1.0 / perms.len() as f64;
    let mut matrix = DMatrix::zeros(n, n);
    for i in 0..n {
        for perm in &perms {
            matrix[(permute_index(i, d, perm), i)] += weight;
        }
    }
    Ok(SymmetricProjector { dimension: d, order: t, matrix })
}
