//! Import proof traces from SMT resolution refutations and connection-calculus
//! provers as expansion sequents, and check whether they are expansion proofs.
//!
//! The pipeline is the same for both trace formats: parse the trace, recover
//! the instances used for each quantified formula, build an
//! [`ExpansionSequent`](expansion::ExpansionSequent) with
//! [`expand_sequent`](expansion::expand_sequent), then hand it to
//! [`verdict`](check::verdict).

pub mod check;
pub mod expansion;
pub mod leancop;
pub mod logic;
#[cfg(any(test, feature = "testkit"))]
pub mod testkit;
pub mod verit;

pub use check::{verdict, Verdict};
pub use expansion::{expand_formula, expand_sequent, ExpansionSequent, ExpansionTree, InstanceSet};
pub use logic::{Atom, Formula, Polarity, Sequent, Substitution, Term};
