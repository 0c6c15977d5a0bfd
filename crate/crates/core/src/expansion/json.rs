//! Wire form of expansion trees.
//!
//! Every node is an object tagged by `"kind"`:
//! `atom` (`atom`), `neg` (`child`), `and`/`or`/`imp` (`left`, `right`),
//! `weak` (`var`, `body`, `instances: [{term, child}]`) and
//! `strong` (`var`, `body`, `eigenvariable`, `child`). Terms and formulas are
//! strings in the TPTP-style notation.

use serde::{Deserialize, Serialize};

use super::tree::{ExpansionTree, WeakInstance};
use crate::logic::{Atom, Connective, Formula, Term};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub(crate) enum NodeDto {
    Atom {
        atom: Atom,
    },
    Neg {
        child: Box<NodeDto>,
    },
    And {
        left: Box<NodeDto>,
        right: Box<NodeDto>,
    },
    Or {
        left: Box<NodeDto>,
        right: Box<NodeDto>,
    },
    Imp {
        left: Box<NodeDto>,
        right: Box<NodeDto>,
    },
    Weak {
        var: String,
        body: Formula,
        instances: Vec<InstanceDto>,
    },
    Strong {
        var: String,
        body: Formula,
        eigenvariable: String,
        child: Box<NodeDto>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct InstanceDto {
    term: Term,
    child: NodeDto,
}

impl From<ExpansionTree> for NodeDto {
    fn from(t: ExpansionTree) -> Self {
        let b = |t: ExpansionTree| Box::new(NodeDto::from(t));
        match t {
            ExpansionTree::Atom(atom) => NodeDto::Atom { atom },
            ExpansionTree::Neg(c) => NodeDto::Neg { child: b(*c) },
            ExpansionTree::Binary(c, l, r) => {
                let (left, right) = (b(*l), b(*r));
                match c {
                    Connective::And => NodeDto::And { left, right },
                    Connective::Or => NodeDto::Or { left, right },
                    Connective::Imp => NodeDto::Imp { left, right },
                }
            }
            ExpansionTree::Weak {
                var,
                body,
                instances,
            } => NodeDto::Weak {
                var,
                body,
                instances: instances
                    .into_iter()
                    .map(|i| InstanceDto {
                        term: i.term,
                        child: i.child.into(),
                    })
                    .collect(),
            },
            ExpansionTree::Strong {
                var,
                body,
                eigenvariable,
                child,
            } => NodeDto::Strong {
                var,
                body,
                eigenvariable,
                child: b(*child),
            },
        }
    }
}

impl TryFrom<NodeDto> for ExpansionTree {
    type Error = String;

    fn try_from(n: NodeDto) -> Result<Self, Self::Error> {
        let b = |n: Box<NodeDto>| ExpansionTree::try_from(*n).map(Box::new);
        Ok(match n {
            NodeDto::Atom { atom } => ExpansionTree::Atom(atom),
            NodeDto::Neg { child } => ExpansionTree::Neg(b(child)?),
            NodeDto::And { left, right } => {
                ExpansionTree::Binary(Connective::And, b(left)?, b(right)?)
            }
            NodeDto::Or { left, right } => {
                ExpansionTree::Binary(Connective::Or, b(left)?, b(right)?)
            }
            NodeDto::Imp { left, right } => {
                ExpansionTree::Binary(Connective::Imp, b(left)?, b(right)?)
            }
            NodeDto::Weak {
                var,
                body,
                instances,
            } => {
                if instances.is_empty() {
                    return Err(format!("weak node `{var}` has no instances"));
                }
                ExpansionTree::Weak {
                    var,
                    body,
                    instances: instances
                        .into_iter()
                        .map(|i| {
                            Ok(WeakInstance {
                                term: i.term,
                                child: ExpansionTree::try_from(i.child)?,
                            })
                        })
                        .collect::<Result<_, String>>()?,
                }
            }
            NodeDto::Strong {
                var,
                body,
                eigenvariable,
                child,
            } => {
                if !is_variable_name(&eigenvariable) {
                    return Err(format!("`{eigenvariable}` is not a variable name"));
                }
                ExpansionTree::Strong {
                    var,
                    body,
                    eigenvariable,
                    child: b(child)?,
                }
            }
        })
    }
}

fn is_variable_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_uppercase() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use crate::expansion::{ExpansionSequent, ExpansionTree};
    use crate::logic::{parse_formula, Atom, Term};

    fn leaf(s: &str) -> ExpansionTree {
        match parse_formula(s).unwrap() {
            crate::logic::Formula::Atom(a) => ExpansionTree::Atom(a),
            _ => unreachable!(),
        }
    }

    #[test]
    fn field_names_are_stable() {
        let t = ExpansionTree::weak(
            "X",
            parse_formula("p(X) => ![Y]: p(Y)").unwrap(),
            vec![(
                Term::constant("c"),
                ExpansionTree::binary(
                    crate::logic::Connective::Imp,
                    leaf("p(c)"),
                    ExpansionTree::strong(
                        "Y",
                        parse_formula("p(Y)").unwrap(),
                        "Alpha",
                        leaf("p(Alpha)"),
                    ),
                ),
            )],
        );
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "kind": "weak",
                "var": "X",
                "body": "p(X) => ![Y]: p(Y)",
                "instances": [{
                    "term": "c",
                    "child": {
                        "kind": "imp",
                        "left": {"kind": "atom", "atom": "p(c)"},
                        "right": {
                            "kind": "strong",
                            "var": "Y",
                            "body": "p(Y)",
                            "eigenvariable": "Alpha",
                            "child": {"kind": "atom", "atom": "p(Alpha)"}
                        }
                    }
                }]
            })
        );
        let back: ExpansionTree = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn sequent_round_trip_with_unusual_symbols() {
        let es = ExpansionSequent::new(
            vec![ExpansionTree::Atom(Atom::eq(
                Term::constant("A"),
                Term::app("f", vec![Term::constant("x!1")]),
            ))],
            vec![ExpansionTree::neg(leaf("q"))],
        );
        let text = serde_json::to_string(&es).unwrap();
        assert_eq!(serde_json::from_str::<ExpansionSequent>(&text).unwrap(), es);
    }

    #[test]
    fn malformed_nodes_are_rejected() {
        let empty = r#"{"kind":"weak","var":"X","body":"p(X)","instances":[]}"#;
        assert!(serde_json::from_str::<ExpansionTree>(empty).is_err());
        let bad_eigen = r#"{"kind":"strong","var":"X","body":"p(X)","eigenvariable":"a","child":{"kind":"atom","atom":"p(a)"}}"#;
        assert!(serde_json::from_str::<ExpansionTree>(bad_eigen).is_err());
        let not_atom = r#"{"kind":"atom","atom":"p & q"}"#;
        assert!(serde_json::from_str::<ExpansionTree>(not_atom).is_err());
    }
}
