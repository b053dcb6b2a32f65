//! Computational algebra for finite deterministic semiautomata.
//!
//! An automaton here is a finite state set with a total right action of a
//! finite alphabet. The crate computes the transition semigroup (the
//! distinct transformations induced by nonempty words), classifies automata
//! (strongly connected, permutation, synchronizing, quasi-ideal), extracts
//! the minimal ideal and its idempotents, and decomposes every quasi-ideal
//! automaton into a direct product of a strongly connected permutation
//! automaton and a strongly connected synchronizing automaton, with a
//! verified isomorphism in both directions.
//!
//! ```
//! use qia::automaton::Automaton;
//! use qia::decompose::decompose;
//!
//! let aut = Automaton::from_rows(
//!     &["q1", "q2", "q3", "q4", "q5", "q6"],
//!     &["0", "1"],
//!     &[
//!         &["q1", "q4"],
//!         &["q1", "q4"],
//!         &["q5", "q2"],
//!         &["q5", "q2"],
//!         &["q3", "q6"],
//!         &["q3", "q6"],
//!     ],
//! )?;
//! let outcome = decompose(&aut)?;
//! assert!(outcome.report.verdict);
//! let d = outcome.decomposition.unwrap();
//! assert_eq!(d.quotient_pi.state_count(), 3);
//! assert_eq!(d.quotient_rho.state_count(), 2);
//! assert!(d.quotient_pi_class.permutation);
//! assert!(d.quotient_rho_class.synchronizing);
//! # Ok::<(), qia::error::Error>(())
//! ```

pub mod analysis;
pub mod automaton;
pub mod congruence;
pub mod decompose;
pub mod error;
pub mod format;
pub mod oracle;
pub mod product;
pub mod semigroup;

#[cfg(test)]
mod fixtures;

pub use analysis::{minimal_ideal, quasi_ideal_report, MinimalIdeal, QuasiIdealReport};
pub use automaton::{Automaton, Transformation, Word};
pub use congruence::Partition;
pub use decompose::{decompose, roundtrip, verify_product, DecompositionReport};
pub use error::{Error, Result};
pub use product::{direct_product, find_isomorphism, StateMap};
pub use semigroup::{semigroup, TransitionSemigroup};
