//! interp-forge: a sequent-calculus engine for substructural and modal
//! propositional calculi.
//!
//! The crate checks fully explicit derivations against built-in or
//! user-defined calculi, classifies inference rules and axioms
//! syntactically (semi-analytic, focused, polarity/monotonicity
//! preserving), and extracts Craig interpolants from proofs by the
//! Maehara method, emitting witness derivations that re-check in the
//! kernel. A brute-force classical oracle cross-validates everything at
//! desk scale, and generators produce the clique/coloring sequent
//! families used to measure interpolant growth.

pub mod sexp;
pub mod syntax;
pub mod schema;
pub mod calculi;
pub mod kernel;
pub mod semantics;
pub mod interpolation;
pub mod translate;
pub mod benchgen;

pub use syntax::{BinaryConn, Constant, FMultiset, Formula, Language, Sequent, Translation, UnaryConn};
