//! Expansion trees and expansion sequents: shallow and deep readings, and
//! construction from formulas plus instance substitutions.

mod build;
pub(crate) mod json;
mod tree;

pub use build::{
    expand_formula, expand_formula_with, expand_sequent, expand_sequent_with, ExpandError,
    ExpandOptions, InstanceSet, DUMMY_CONSTANT,
};
pub use tree::{ExpansionSequent, ExpansionTree, TreeError, WeakInstance};
