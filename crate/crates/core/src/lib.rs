//! Uncertainty relations for POVMs assigned to complex projective
//! t-designs.
//!
//! The crate verifies designs, computes symmetric-subspace moments of
//! density matrices, solves for the maximal-probability root `Υ`, and
//! evaluates min-entropy, Rényi and Landau–Pollak bounds together with the
//! entropic steering inequalities built from them.
//!
//! ```
//! use qdesign::prelude::*;
//!
//! let design = builtin_design(BuiltinDesign::Octahedron);
//! let single = assign_povms(&design, &Grouping::Single)?;
//! let rho = DensityMatrix::maximally_mixed(2)?;
//! let report = audit_state(&single, &rho, &[Alpha::Infinity], 3)?;
//! assert!(report.flags.saturated);
//! # Ok::<(), qdesign::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod designs;
pub mod entropy;
mod error;
pub mod io;
pub mod moments;
pub mod quantum;
pub mod steering;
pub mod sweep;
pub mod upsilon;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bounds::{
        audit_state, bound_prior, bound_prop1, bound_prop1_nr, bound_prop2, landau_pollak_cap, mub_min_bound,
        state_independent_bounds, BoundReport,
    };
    pub use crate::designs::{
        assign_povms, builtin_design, frame_potential, verify_design, BuiltinDesign, Grouping, PovmAssignment,
        QuantumDesign, VerifyMethod,
    };
    pub use crate::entropy::{conditional_renyi_arimoto, renyi_entropy, Alpha, JointDistribution, OutcomeDistribution};
    pub use crate::moments::{beta_parameters, beta_range, sym_moment, sym_moment_direct};
    pub use crate::quantum::{bloch_to_state, random_density, seeded_rng, DensityMatrix, Ensemble, StateVector};
    pub use crate::steering::{steering_check_maxprob, steering_check_renyi, BipartiteDensityMatrix};
    pub use crate::upsilon::{upsilon, upsilon_closed_t2, upsilon_closed_t3, upsilon_nr1, UpsilonQuery};
    pub use crate::Error;
}
