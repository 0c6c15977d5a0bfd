//! Expansion-proof checking: deep sequents, propositional validity, and the
//! dependency relation between instance terms.

mod deep;
pub(crate) mod dependency;
mod sat;
mod verdict;

pub use deep::{deep_sequent, DeepSequent};
pub use dependency::{dependency_relation, is_acyclic, DependencyGraph, NodePath, Occurrence};
pub use sat::{is_tautology, Assignment};
pub use verdict::{verdict, Verdict};
