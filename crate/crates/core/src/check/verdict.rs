use serde::{Deserialize, Serialize};

use super::dependency::{dependency_relation, is_acyclic};
use super::{deep_sequent, is_tautology, Assignment};
use crate::expansion::ExpansionSequent;

/// Outcome of checking an expansion sequent. `cycle` lists occurrence paths
/// such as `antecedent[0]/1/0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub is_proof: bool,
    pub tautology: bool,
    pub acyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Assignment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
}

/// Whether `es` is an expansion proof: its deep sequent is a tautology and
/// its dependency relation is acyclic.
pub fn verdict(es: &ExpansionSequent) -> Verdict {
    let (tautology, counterexample) = is_tautology(&deep_sequent(es));
    let (acyclic, cycle) = is_acyclic(&dependency_relation(es));
    Verdict {
        is_proof: tautology && acyclic,
        tautology,
        acyclic,
        counterexample,
        cycle: cycle.map(|c| c.iter().map(ToString::to_string).collect()),
    }
}
