//! Import of connection-calculus proofs: input formulas, their clauses and
//! the proof steps with bindings.

mod dnf;
mod import;
mod matching;
mod skolem;
mod trace;

pub use dnf::{definitional_dnf, GeneratedClause, DEFAULT_DEF_THRESHOLD, DEF_PREFIX};
pub use import::{
    import_leancop, match_trace, LeanCoPError, LeanCoPOptions, LeanCoPReport, MatchedTrace,
    UnmatchedClause,
};
pub use matching::{match_clause, match_clauses, match_equality_clause, ClauseMatch, Unmatched};
pub use skolem::{SkolemError, SkolemRegistry, DEFAULT_SKOLEM_PREFIX};
pub use trace::{
    parse_leancop, ClauseOrigin, InputFormula, LeanCoPParseError, LeanCoPTrace, ProofStep, Role,
    StepRule, TraceClause,
};
