//! Import of SMT resolution refutations: the leaves of the refutation are
//! input clauses and instances of equality axioms; the axiom instances are
//! recovered by matching against the axiom schemas.

pub(crate) mod equality;
mod import;
mod schema;
mod trace;

pub use import::{import_verit, leaf_clauses, LeafClauses, VeritImportError, VeritReport};
pub use schema::{
    make_schema, match_axiom_instance, match_schema, AxiomKind, AxiomMatch, AxiomSchema,
    SchemaError, SchemaKind, EXHAUSTIVE_LIMIT,
};
pub use trace::{parse_verit, Rule, TraceError, VeritStep, VeritTrace};
