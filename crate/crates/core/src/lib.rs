//! Duality and self-duality of prime monotone boolean functions, decided by a
//! simulated quantum procedure and cross-checked by brute force.
//!
//! The quantum test ([`pipeline::quantum_self_dual`]) chains a
//! Deutsch-Jozsa balance test, a Deutsch-Jozsa constancy test on
//! `h(x) = f(x) ⊕ ¬f(x̄)`, quantum counting of the true points, and a Grover
//! search for an input with `f(x) = f(x̄)`, all on a seeded statevector
//! simulator ([`sim`]). Dual pairs are handled directly through `h` or by
//! reduction to self-duality of `y f ∨ z g ∨ y z`.
//!
//! ```
//! use qdual::{generate_majority_phi, quantum_self_dual, SimConfig};
//!
//! let phi = generate_majority_phi(5).unwrap();
//! let trace = quantum_self_dual(&phi, &SimConfig::with_seed(7)).unwrap();
//! assert!(trace.answer());
//! ```

pub mod bench;
pub mod classical;
pub mod corpus;
pub mod dnf;
mod error;
pub mod oracle;
pub mod pipeline;
pub mod sim;
mod verdict;

pub use classical::{Classical, TruthTable};
pub use dnf::{
    complement_index, generate_majority_phi, hamming_weight, intersection_condition,
    is_prime_antichain, parse_dnf, self_dual_reduction, MonotoneDNF,
};
pub use error::{Error, Result};
pub use oracle::{build_h_oracle, BooleanOracle};
pub use pipeline::{
    cross_validate, quantum_dual_pair, quantum_self_dual, Agreement, Route, VerdictTrace,
};
pub use sim::{SimConfig, SimRng, StateVector};
pub use verdict::{Reason, Verdict};
