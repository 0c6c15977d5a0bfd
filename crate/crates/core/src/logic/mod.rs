//! First-order syntax: terms, formulas, sequents, polarity, substitution,
//! rectification and matching.

mod formula;
mod literal;
mod matching;
pub(crate) mod parser;
mod polarity;
mod print;
mod rectify;
mod sequent;
mod subst;
mod term;

pub use formula::{Connective, Formula, Quantifier};
pub use literal::{clause_conjunction, clause_disjunction, Literal};
pub use matching::{match_atom, match_formula, match_term, Matcher};
pub use parser::{parse_formula, parse_term, ParseError};
pub use polarity::{
    child_polarity, classify_quantifier, polarity_at, quantifier_strengths, subformula_at,
    PathError, Polarity, Strength,
};
pub use print::Unicode;
pub use rectify::{rectify, rectify_formula, RectifyReport, Renaming};
pub use sequent::{Sequent, SequentPos, Side};
pub use subst::{fresh_name, Substitution};
pub use term::{ArityError, Atom, Signature, Term, EQ};
