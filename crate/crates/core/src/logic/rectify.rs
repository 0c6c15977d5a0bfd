use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::sequent::{Sequent, SequentPos};
use super::term::Term;

/// One binder renamed by [`rectify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Renaming {
    pub new_name: String,
    pub position: SequentPos,
    pub old_name: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectifyReport {
    pub renamings: Vec<Renaming>,
}

impl RectifyReport {
    /// Original binder name for a (possibly renamed) bound variable.
    pub fn original_name<'a>(&'a self, name: &'a str) -> &'a str {
        self.renamings
            .iter()
            .find(|r| r.new_name == name)
            .map_or(name, |r| r.old_name.as_str())
    }
}

struct Rectifier {
    used: BTreeSet<String>,
    free: BTreeSet<String>,
    seen: BTreeSet<String>,
    counter: usize,
    report: RectifyReport,
}

impl Rectifier {
    fn binder(&mut self, v: &str, pos: SequentPos) -> String {
        if !self.seen.contains(v) && !self.free.contains(v) {
            self.seen.insert(v.to_string());
            return v.to_string();
        }
        let fresh = loop {
            self.counter += 1;
            let cand = format!("{v}_{}", self.counter);
            if !self.used.contains(&cand) {
                break cand;
            }
        };
        self.used.insert(fresh.clone());
        self.seen.insert(fresh.clone());
        self.report.renamings.push(Renaming {
            new_name: fresh.clone(),
            position: pos,
            old_name: v.to_string(),
        });
        fresh
    }

    fn walk(&mut self, f: &Formula, env: &mut Vec<(String, String)>, pos: SequentPos) -> Formula {
        match f {
            Formula::Atom(a) => {
                let renamed = a.args.iter().map(|t| rename_term(t, env)).collect();
                Formula::atom(a.pred.clone(), renamed)
            }
            Formula::Neg(g) => Formula::not(self.walk(g, env, pos)),
            Formula::And(l, r) => {
                let l = self.walk(l, env, pos);
                Formula::and(l, self.walk(r, env, pos))
            }
            Formula::Or(l, r) => {
                let l = self.walk(l, env, pos);
                Formula::or(l, self.walk(r, env, pos))
            }
            Formula::Imp(l, r) => {
                let l = self.walk(l, env, pos);
                Formula::imp(l, self.walk(r, env, pos))
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = f.as_quantifier().expect("quantifier").0;
                let new = self.binder(v, pos);
                env.push((v.clone(), new.clone()));
                let body = self.walk(body, env, pos);
                env.pop();
                Formula::quantified(q, new, body)
            }
        }
    }
}

fn rename_term(t: &Term, env: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(old, _)| old == v)
            .map_or_else(|| t.clone(), |(_, new)| Term::Var(new.clone())),
        Term::App(h, args) => Term::App(
            h.clone(),
            args.iter().map(|a| rename_term(a, env)).collect(),
        ),
    }
}

/// Renames binders so that all bound variables of the sequent are pairwise
/// distinct and disjoint from its free variables. Fresh names are
/// `<old>_<counter>` with one counter for the whole sequent; the first
/// binder with a given name keeps it.
pub fn rectify(sequent: &Sequent) -> (Sequent, RectifyReport) {
    let mut used = BTreeSet::new();
    let mut free = BTreeSet::new();
    for (_, f) in sequent.iter() {
        used.extend(f.all_var_names());
        free.extend(f.free_vars());
    }
    let mut r = Rectifier {
        used,
        free,
        seen: BTreeSet::new(),
        counter: 0,
        report: RectifyReport::default(),
    };
    let mut out = Sequent::default();
    for (pos, f) in sequent.iter() {
        let g = r.walk(f, &mut Vec::new(), pos);
        match pos.side {
            super::Side::Antecedent => out.antecedent.push(g),
            super::Side::Succedent => out.succedent.push(g),
        }
    }
    (out, r.report)
}

/// Rectifies a single formula, treated as the only antecedent formula.
pub fn rectify_formula(f: &Formula) -> Formula {
    let (s, _) = rectify(&Sequent::new(vec![f.clone()], vec![]));
    s.antecedent
        .into_iter()
        .next()
        .expect("one formula in, one out")
}
