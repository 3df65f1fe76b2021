//! Complex linear-algebra substrate: pure and mixed states, tensor powers,
//! partial traces, symmetric projectors and seeded random sampling.

mod random;
mod state;
mod tensor;

pub use random::{random_density, random_density_seeded, random_state, seeded_rng, Ensemble};
pub use state::{
    bloch_to_state, hermitian_eigenvalues, max_abs, power_moments, psd_sqrt, state_to_bloch, CMatrix, CVector,
    DensityMatrix, StateVector, HERMITIAN_TOL, NORM_TOL, PSD_TOL,
};
pub(crate) use state::{check_density, power_sums};
pub use tensor::{
    binomial, inverse_symmetric_dimension, partial_trace, partial_trace_op, permutation_operator, permutations,
    sym_projector, tensor_dim, tensor_power, Subsystem, SymmetricProjector, MAX_TENSOR_DIM,
};
