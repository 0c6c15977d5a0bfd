use serde::{Deserialize, Serialize};

use super::formula::{Formula, Quantifier};

/// Polarity of a subformula. Antecedent formulas are negative, succedent
/// formulas positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Negative = 0,
    Positive = 1,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Positive => Polarity::Negative,
        }
    }
}

/// Strength of a quantifier occurrence: strong ones get an eigenvariable,
/// weak ones get instance terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Strong,
    Weak,
}

impl Strength {
    pub fn of(q: Quantifier, p: Polarity) -> Strength {
        match (q, p) {
            (Quantifier::Forall, Polarity::Positive) | (Quantifier::Exists, Polarity::Negative) => {
                Strength::Strong
            }
            _ => Strength::Weak,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("child index {index} at path position {position} does not exist")]
    BadIndex { position: usize, index: usize },
    #[error("subformula at the given path is not a quantifier")]
    NotAQuantifier,
}

/// Polarity of a child given the polarity of its parent.
pub fn child_polarity(parent: &Formula, index: usize, p: Polarity) -> Polarity {
    match parent {
        Formula::Neg(_) => p.flip(),
        Formula::Imp(..) if index == 0 => p.flip(),
        _ => p,
    }
}

/// Walks `path` from the root, returning the addressed subformula and its polarity.
pub fn subformula_at<'a>(
    formula: &'a Formula,
    path: &[usize],
    root: Polarity,
) -> Result<(&'a Formula, Polarity), PathError> {
    let mut cur = formula;
    let mut p = root;
    for (position, &index) in path.iter().enumerate() {
        let child = *cur
            .children()
            .get(index)
            .ok_or(PathError::BadIndex { position, index })?;
        p = child_polarity(cur, index, p);
        cur = child;
    }
    Ok((cur, p))
}

pub fn polarity_at(
    formula: &Formula,
    path: &[usize],
    root: Polarity,
) -> Result<Polarity, PathError> {
    subformula_at(formula, path, root).map(|(_, p)| p)
}

pub fn classify_quantifier(
    formula: &Formula,
    path: &[usize],
    root: Polarity,
) -> Result<Strength, PathError> {
    let (sub, p) = subformula_at(formula, path, root)?;
    let (q, _, _) = sub.as_quantifier().ok_or(PathError::NotAQuantifier)?;
    Ok(Strength::of(q, p))
}

/// Every quantifier of `formula` with its binder name and strength, in pre-order.
pub fn quantifier_strengths(formula: &Formula, root: Polarity) -> Vec<(String, Strength)> {
    fn go(f: &Formula, p: Polarity, out: &mut Vec<(String, Strength)>) {
        if let Some((q, v, _)) = f.as_quantifier() {
            out.push((v.to_string(), Strength::of(q, p)));
        }
        for (i, c) in f.children().into_iter().enumerate() {
            go(c, child_polarity(f, i, p), out);
        }
    }
    let mut out = Vec::new();
    go(formula, root, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use Polarity::*;

    #[test]
    fn flip_involution() {
        for p in [Negative, Positive] {
            assert_eq!(p.flip().flip(), p);
            assert_ne!(p.flip(), p);
        }
    }

    #[test]
    fn implication_flips_left_only() {
        let f = parse_formula("a => b").unwrap();
        assert_eq!(polarity_at(&f, &[0], Positive).unwrap(), Negative);
        assert_eq!(polarity_at(&f, &[1], Positive).unwrap(), Positive);
        assert_eq!(polarity_at(&f, &[], Negative).unwrap(), Negative);
    }

    #[test]
    fn negation_then_forall_then_left_of_implication() {
        let f = parse_formula("~ ![X]: (a(X) => b(X))").unwrap();
        assert_eq!(polarity_at(&f, &[0, 0, 0], Positive).unwrap(), Positive);
    }

    #[test]
    fn bad_path_names_first_bad_index() {
        let f = parse_formula("~ p").unwrap();
        assert_eq!(
            polarity_at(&f, &[0, 1], Positive),
            Err(PathError::BadIndex {
                position: 1,
                index: 1
            })
        );
        assert_eq!(
            polarity_at(&f, &[3], Positive),
            Err(PathError::BadIndex {
                position: 0,
                index: 3
            })
        );
    }

    #[test]
    fn strong_and_weak() {
        let all = parse_formula("![X]: p(X)").unwrap();
        assert_eq!(
            classify_quantifier(&all, &[], Positive).unwrap(),
            Strength::Strong
        );
        assert_eq!(
            classify_quantifier(&all, &[], Negative).unwrap(),
            Strength::Weak
        );
        let neg_ex = parse_formula("~ ?[X]: p(X)").unwrap();
        assert_eq!(
            classify_quantifier(&neg_ex, &[0], Positive).unwrap(),
            Strength::Strong
        );
        assert_eq!(
            classify_quantifier(&neg_ex, &[], Positive),
            Err(PathError::NotAQuantifier)
        );
    }

    #[test]
    fn strengths_in_preorder() {
        let f = parse_formula("?[X]: (p(X) => ![Y]: p(Y))").unwrap();
        assert_eq!(
            quantifier_strengths(&f, Positive),
            vec![("X".into(), Strength::Weak), ("Y".into(), Strength::Strong)]
        );
    }
}
