//! Local Pauli stabilizers of symmetric hypergraph states.
//!
//! A symmetric hypergraph state `|K_n^m⟩` on `n` qubits has every hyperedge of
//! each cardinality in `m = (m_1 < ... < m_k)`. Its amplitudes depend only on
//! Hamming weight, so its sign pattern is a vector `f_0..f_n`, and the
//! question of which local Pauli words `X^⊗n`, `-X^⊗n`, `Y^⊗n` fix it reduces
//! to parity arithmetic on Pascal's triangle mod 2.
//!
//! - [`pascal`]: binomial parities and the mod-2 Pascal matrix.
//! - [`sym_core`]: cardinality vectors, indicator/exponent/sign vectors.
//! - [`classify`]: palindrome tests, closed forms, recursion, enumeration.
//! - [`statevec`]: dense state-vector oracle.
//! - [`nonlocality`]: the Mermin operator and its classical bound.
//! - [`qec`]: the four-error collective-decoherence code.
//! - [`recovery`]: partial traces as delete/shrink mixtures and reconstruction.
//! - [`cli`]: command-line front end.

pub mod classify;
pub mod cli;
pub mod error;
pub mod nonlocality;
pub mod pascal;
pub mod qec;
pub mod recovery;
pub mod statevec;
pub mod sym_core;

pub use classify::{classify, classify_recursive, StabilizerClass};
pub use error::{Error, Result};
pub use statevec::{PauliWord, StateVector};
pub use sym_core::{sign_vector, CardinalityVector, SignVector};
