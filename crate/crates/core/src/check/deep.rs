use serde::{Deserialize, Serialize};

use crate::expansion::ExpansionSequent;
use crate::logic::{Formula, Polarity, Sequent};

/// Quantifier-free sequent obtained by reading every tree deeply.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeepSequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl DeepSequent {
    pub fn to_sequent(&self) -> Sequent {
        Sequent::new(self.antecedent.clone(), self.succedent.clone())
    }
}

/// Antecedent trees are read at negative polarity, succedent trees at
/// positive polarity.
pub fn deep_sequent(es: &ExpansionSequent) -> DeepSequent {
    DeepSequent {
        antecedent: es
            .antecedent
            .iter()
            .map(|t| t.deep(Polarity::Negative))
            .collect(),
        succedent: es
            .succedent
            .iter()
            .map(|t| t.deep(Polarity::Positive))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::ExpansionTree;
    use crate::logic::{parse_formula, Connective, Term};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn leaf(s: &str) -> ExpansionTree {
        match f(s) {
            Formula::Atom(a) => ExpansionTree::Atom(a),
            other => panic!("not an atom: {other}"),
        }
    }

    #[test]
    fn single_instance_is_the_instance() {
        let es = ExpansionSequent::new(
            vec![ExpansionTree::weak(
                "X",
                f("p(X)"),
                vec![(Term::constant("c"), leaf("p(c)"))],
            )],
            vec![leaf("p(c)")],
        );
        let ds = deep_sequent(&es);
        assert_eq!(ds.antecedent, vec![f("p(c)")]);
        assert_eq!(ds.succedent, vec![f("p(c)")]);
    }

    #[test]
    fn empty_stays_empty() {
        assert_eq!(
            deep_sequent(&ExpansionSequent::default()),
            DeepSequent::default()
        );
    }

    #[test]
    fn drinker() {
        let body = f("p(X) => ![Y]: p(Y)");
        let inst = |t: &str, eigen: &str| {
            ExpansionTree::binary(
                Connective::Imp,
                leaf(&format!("p({t})")),
                ExpansionTree::strong("Y", f("p(Y)"), eigen, leaf(&format!("p({eigen})"))),
            )
        };
        let es = ExpansionSequent::new(
            vec![],
            vec![ExpansionTree::weak(
                "X",
                body,
                vec![
                    (Term::constant("c"), inst("c", "Alpha")),
                    (Term::var("Alpha"), inst("Alpha", "Beta")),
                ],
            )],
        );
        assert_eq!(
            deep_sequent(&es).succedent,
            vec![f("(p(c) => p(Alpha)) | (p(Alpha) => p(Beta))")]
        );
    }
}
