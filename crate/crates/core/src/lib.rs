//! The Deutsch-Jozsa promise problem treated as minimum-error discrimination
//! between two quantum channels.
//!
//! A single call to the phase oracle `U_f |x> = (-1)^f(x) |x>` maps an
//! initial state `rho0` to one of two class-averaged outputs: `rho0` itself
//! for constant `f`, or `(N dephase(rho0) - rho0) / (N - 1)` for uniformly
//! chosen balanced `f`. The crate computes both channels (closed form and by
//! brute-force enumeration), the Helstrom error and measurement, the
//! conditions under which one oracle call decides the class with certainty,
//! and the error bounds that follow for high-temperature thermal inputs.
//!
//! ```
//! use oracle_disc::{discrimination, linalg::{DensityOperator, StateVector}};
//!
//! let rho0 = DensityOperator::pure(&StateVector::uniform(8));
//! let prob = discrimination::DiscriminationProblem::from_initial_state(&rho0, 0.5, 0.5)?;
//! assert!(discrimination::helstrom_error(&prob) < 1e-12);
//! # Ok::<(), oracle_disc::Error>(())
//! ```

pub mod channels;
pub mod classical;
pub mod discrimination;
mod error;
pub mod linalg;
pub mod oracle;
pub mod sampling;
pub mod thermal;

pub use error::{Error, Result};

pub use channels::{
    channel_balanced_bruteforce, channel_balanced_closed, channel_constant, ChannelReport,
};
pub use classical::{classical_success_probability, worst_case_queries, ClassicalReport};
pub use discrimination::{
    certainty_conditions, fourth_moment, helstrom_error, helstrom_povm, optimal_state,
    orthogonal_support, povm_error, run_dj, CertaintyReport, DiscriminationProblem, Povm2,
};
pub use linalg::{dephase, hermitian_eig, trace_norm, ComplexMatrix, DensityOperator, StateVector};
pub use oracle::{
    apply_oracle, apply_oracle_density, balanced_pair_sum, enumerate_balanced, enumerate_constant,
    FunctionClass, OracleFunction,
};
pub use thermal::{
    deviation_operator, deviation_trace_norm, error_lower_bound, min_qubits_for_advantage,
    thermal_state, ThermalBoundReport, ThermalConfig, ThermalMode,
};

/// Version tag carried by every serialized report.
pub const SCHEMA_VERSION: &str = "1";

// The guide's code listings compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}
    #[doc = include_str!("../../../book/src/discrimination.md")]
    mod discrimination {}
    #[doc = include_str!("../../../book/src/thermal.md")]
    mod thermal {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
