//! Text and DOT renderings of expansion sequents.

use std::fmt::Write;

use exproof_core::check::deep_sequent;
use exproof_core::logic::{Connective, Polarity, SequentPos, Side, Unicode};
use exproof_core::{ExpansionSequent, ExpansionTree};

const BOLD: &str = "\x1b[1m";
const CYAN: &str = "\x1b[36m";
const RESET: &str = "\x1b[0m";

/// Shallow sequent followed by one `instances:` line per weak variable.
pub fn show_shallow(es: &ExpansionSequent, color: bool) -> String {
    let mut out = turnstile(&Unicode(&es.shallow()).to_string(), color);
    for (var, terms) in es.instances_by_var() {
        let terms: Vec<String> = terms.iter().map(ToString::to_string).collect();
        let label = if color {
            format!("{CYAN}instances:{RESET}")
        } else {
            "instances:".into()
        };
        write!(out, "\n{label} {var} ∈ {{{}}}", terms.join(", ")).unwrap();
    }
    out
}

pub fn show_deep(es: &ExpansionSequent, color: bool) -> String {
    turnstile(&Unicode(&deep_sequent(es).to_sequent()).to_string(), color)
}

fn turnstile(s: &str, color: bool) -> String {
    if color {
        s.replace('⊢', &format!("{BOLD}⊢{RESET}"))
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

struct Dot {
    out: String,
    next: usize,
}

impl Dot {
    fn node(&mut self, label: &str) -> usize {
        let id = self.next;
        self.next += 1;
        writeln!(self.out, "  n{id} [label=\"{}\"];", escape(label)).unwrap();
        id
    }

    fn edge(&mut self, from: usize, to: usize, label: Option<&str>) {
        match label {
            Some(l) => writeln!(self.out, "  n{from} -> n{to} [label=\"{}\"];", escape(l)).unwrap(),
            None => writeln!(self.out, "  n{from} -> n{to};").unwrap(),
        }
    }

    fn tree(&mut self, t: &ExpansionTree, p: Polarity) -> usize {
        match t {
            ExpansionTree::Atom(a) => self.node(&a.to_string()),
            ExpansionTree::Neg(c) => {
                let id = self.node("¬");
                let child = self.tree(c, p.flip());
                self.edge(id, child, None);
                id
            }
            ExpansionTree::Binary(c, l, r) => {
                let id = self.node(match c {
                    Connective::And => "∧",
                    Connective::Or => "∨",
                    Connective::Imp => "→",
                });
                let left = self.tree(l, t.child_polarity(0, p));
                let right = self.tree(r, p);
                self.edge(id, left, None);
                self.edge(id, right, None);
                id
            }
            ExpansionTree::Weak { var, instances, .. } => {
                let q = if p == Polarity::Positive {
                    "∃"
                } else {
                    "∀"
                };
                let id = self.node(&format!("{q}{var}"));
                for i in instances {
                    let child = self.tree(&i.child, p);
                    self.edge(id, child, Some(&i.term.to_string()));
                }
                id
            }
            ExpansionTree::Strong {
                var,
                eigenvariable,
                child,
                ..
            } => {
                let q = if p == Polarity::Positive {
                    "∀"
                } else {
                    "∃"
                };
                let id = self.node(&format!("{q}{var}\neigenvariable {eigenvariable}"));
                let c = self.tree(child, p);
                self.edge(id, c, None);
                id
            }
        }
    }
}

fn graph_name(pos: SequentPos) -> String {
    let side = match pos.side {
        Side::Antecedent => "antecedent",
        Side::Succedent => "succedent",
    };
    format!("{side}_{}", pos.index)
}

/// One `digraph` per tree. Quantifier nodes show their binder, weak edges
/// carry the instance term and strong nodes name their eigenvariable.
pub fn dot(es: &ExpansionSequent) -> String {
    let mut out = String::new();
    for (pos, t) in es.iter() {
        let mut d = Dot {
            out: String::new(),
            next: 0,
        };
        d.tree(t, pos.side.polarity());
        writeln!(out, "digraph {} {{", graph_name(pos)).unwrap();
        out.push_str("  rankdir=TB;\n  node [shape=box];\n");
        out.push_str(&d.out);
        out.push_str("}\n");
    }
    out
}
