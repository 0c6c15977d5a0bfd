use std::fmt::{self, Display, Formatter};

use super::formula::Formula;
use super::sequent::Sequent;
use super::term::{Atom, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Notation {
    Tptp,
    Unicode,
}

struct Symbols {
    forall: &'static str,
    exists: &'static str,
    not: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
}

impl Notation {
    fn symbols(self) -> Symbols {
        match self {
            Notation::Tptp => Symbols {
                forall: "!",
                exists: "?",
                not: "~",
                and: " & ",
                or: " | ",
                imp: " => ",
            },
            Notation::Unicode => Symbols {
                forall: "∀",
                exists: "∃",
                not: "¬",
                and: " ∧ ",
                or: " ∨ ",
                imp: " → ",
            },
        }
    }
}

fn is_plain_functor(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        Some(c) if c.is_ascii_digit() => chars.all(|c| c.is_ascii_digit()),
        _ => false,
    }
}

fn write_functor(f: &mut Formatter<'_>, s: &str) -> fmt::Result {
    if is_plain_functor(s) {
        f.write_str(s)
    } else {
        f.write_str("'")?;
        for c in s.chars() {
            if c == '\'' || c == '\\' {
                f.write_str("\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("'")
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(h, args) => {
                write_functor(f, h)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.is_eq() {
            return write!(f, "{} = {}", self.args[0], self.args[1]);
        }
        Term::App(self.pred.clone(), self.args.clone()).fmt(f)
    }
}

fn write_formula(
    f: &mut Formatter<'_>,
    form: &Formula,
    n: Notation,
    unary_ctx: bool,
) -> fmt::Result {
    let sym = n.symbols();
    match form {
        Formula::Atom(a) => {
            if unary_ctx && a.is_eq() {
                write!(f, "({a})")
            } else {
                write!(f, "{a}")
            }
        }
        Formula::Neg(g) => {
            f.write_str(sym.not)?;
            write_formula(f, g, n, true)
        }
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let q = if matches!(form, Formula::Forall(..)) {
                sym.forall
            } else {
                sym.exists
            };
            match n {
                Notation::Tptp => write!(f, "{q}[{v}]: ")?,
                Notation::Unicode => write!(f, "{q}{v} ")?,
            }
            write_formula(f, b, n, true)
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            let op = match form {
                Formula::And(..) => sym.and,
                Formula::Or(..) => sym.or,
                _ => sym.imp,
            };
            if unary_ctx {
                f.write_str("(")?;
            }
            write_formula(f, l, n, true)?;
            f.write_str(op)?;
            write_formula(f, r, n, true)?;
            if unary_ctx {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self, Notation::Tptp, false)
    }
}

/// Mathematical rendering (`∀X p(X) → q`), used for human-facing output.
pub struct Unicode<'a, T: ?Sized>(pub &'a T);

impl Display for Unicode<'_, Formula> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self.0, Notation::Unicode, false)
    }
}

impl Display for Unicode<'_, Sequent> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0.antecedent)?;
        if self.0.antecedent.is_empty() {
            f.write_str("⊢")?;
        } else {
            f.write_str(" ⊢")?;
        }
        if !self.0.succedent.is_empty() {
            f.write_str(" ")?;
            write_list(f, &self.0.succedent)?;
        }
        Ok(())
    }
}

fn write_list(f: &mut Formatter<'_>, fs: &[Formula]) -> fmt::Result {
    for (i, g) in fs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{}", Unicode(g))?;
    }
    Ok(())
}

impl Display for Sequent {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let join = |fs: &[Formula]| {
            fs.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{} |- {}", join(&self.antecedent), join(&self.succedent))
    }
}
