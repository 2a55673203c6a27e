//! Quantum-like mechanics on vector spaces over finite Galois fields.
//!
//! States are nonzero vectors of K^N with K = GF(q), measurement outcomes are
//! dual vectors, and probabilities come from the 0/1 absolute value of the
//! bracket ⟨x|ψ⟩. All probabilities and expectation values are exact
//! rationals.
//!
//! The crate covers field arithmetic ([`gf`]), the projective state space
//! ([`state`]), observables ([`observable`]), two-party systems and local
//! orbits ([`tensor`]), CHSH sweeps ([`chsh`]) and local hidden-variable
//! feasibility ([`hv`]). The named GF(2) fixtures live in [`labels`].

pub mod chsh;
pub mod error;
pub mod gf;
pub mod hv;
pub mod labels;
pub mod linalg;
pub mod lp;
pub mod observable;
pub mod state;
pub mod tensor;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use observable::Observable;
pub use state::{Bra, Ket};
pub use tensor::{JointTable, TwoPartyState};

/// Exact rational used for probabilities and expectation values.
pub type Rational = num_rational::Ratio<i64>;
