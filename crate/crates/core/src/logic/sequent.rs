use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::polarity::Polarity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Antecedent,
    Succedent,
}

impl Side {
    pub fn polarity(self) -> Polarity {
        match self {
            Side::Antecedent => Polarity::Negative,
            Side::Succedent => Polarity::Positive,
        }
    }
}

/// Position of a formula (or tree) inside a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequentPos {
    pub side: Side,
    pub index: usize,
}

impl std::fmt::Display for SequentPos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = match self.side {
            Side::Antecedent => "antecedent",
            Side::Succedent => "succedent",
        };
        write!(f, "{side}[{}]", self.index)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }

    /// Formulas with their positions, antecedent first.
    pub fn iter(&self) -> impl Iterator<Item = (SequentPos, &Formula)> {
        let ant = self.antecedent.iter().enumerate().map(|(index, f)| {
            (
                SequentPos {
                    side: Side::Antecedent,
                    index,
                },
                f,
            )
        });
        let suc = self.succedent.iter().enumerate().map(|(index, f)| {
            (
                SequentPos {
                    side: Side::Succedent,
                    index,
                },
                f,
            )
        });
        ant.chain(suc)
    }

    pub fn get(&self, pos: SequentPos) -> Option<&Formula> {
        match pos.side {
            Side::Antecedent => self.antecedent.get(pos.index),
            Side::Succedent => self.succedent.get(pos.index),
        }
    }
}

impl std::ops::Index<SequentPos> for Sequent {
    type Output = Formula;

    fn index(&self, pos: SequentPos) -> &Formula {
        self.get(pos)
            .unwrap_or_else(|| panic!("no formula at {pos}"))
    }
}
