//! Reader for connection-proof traces in three parts:
//!
//! ```text
//! fof(ax1, axiom, ![X]: p(X)).
//! cnf(1, plain, [-p(X1)], clausify(ax1)).
//! cnf(2, plain, [p(a)], clausify(co)).
//! cnf(s1, plain, [p(a)], start(2)).
//! cnf(s2, plain, [-p(a)], extension(1, bind([X1], [a]))).
//! ```
//!
//! Clause lines carry `clausify(name)` or `theory(equality)`; proof lines
//! carry `start(N)`, `extension(N)` (either with an optional
//! `bind([vars], [terms])`) or `reduction(...)`. Negative literals are
//! prefixed with `~` or `-`.

use std::collections::BTreeSet;

use crate::logic::parser::{GeneralTerm, Parser, Tok};
use crate::logic::{Formula, Literal, ParseError, Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Axiom,
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputFormula {
    pub name: String,
    pub role: Role,
    pub formula: Formula,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseOrigin {
    Input(String),
    Equality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceClause {
    pub number: String,
    pub literals: Vec<Literal>,
    pub origin: ClauseOrigin,
    pub line: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepRule {
    Start,
    Extension,
    Reduction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub id: String,
    pub rule: StepRule,
    /// Clause the step copies; `None` for reductions.
    pub clause: Option<String>,
    /// Binding for the variables of that clause.
    pub binding: Substitution,
    pub literals: Vec<Literal>,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeanCoPTrace {
    pub inputs: Vec<InputFormula>,
    pub clauses: Vec<TraceClause>,
    pub steps: Vec<ProofStep>,
}

impl LeanCoPTrace {
    pub fn clause(&self, number: &str) -> Option<&TraceClause> {
        self.clauses.iter().find(|c| c.number == number)
    }

    pub fn input(&self, name: &str) -> Option<&InputFormula> {
        self.inputs.iter().find(|i| i.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LeanCoPParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("{line}: formula `{name}` has unknown role `{role}`")]
    UnknownRole {
        name: String,
        role: String,
        line: usize,
    },
    #[error("{line}: `{name}` is defined twice")]
    Duplicate { name: String, line: usize },
    #[error("{line}: clause {clause} comes from `{formula}`, which is not an input formula")]
    UnknownFormula {
        clause: String,
        formula: String,
        line: usize,
    },
    #[error("{line}: step `{step}` uses clause {clause}, which is not declared")]
    UnknownClause {
        step: String,
        clause: String,
        line: usize,
    },
}

enum Annotation {
    Input(String),
    Equality,
    Step(StepRule, Option<String>, Substitution),
}

fn literal(p: &mut Parser) -> Result<Literal, ParseError> {
    let at = p.error_here("expected a literal");
    let minus = p.eat("-");
    let f = p.unary()?;
    let f = if minus { Formula::not(f) } else { f };
    match f {
        Formula::Atom(a) => Ok(Literal::pos(a)),
        Formula::Neg(inner) => match *inner {
            Formula::Atom(a) => Ok(Literal::neg(a)),
            _ => Err(at),
        },
        _ => Err(at),
    }
}

fn literal_list(p: &mut Parser) -> Result<Vec<Literal>, ParseError> {
    p.expect("[")?;
    let mut out = Vec::new();
    if !p.eat("]") {
        out.push(literal(p)?);
        while p.eat(",") {
            out.push(literal(p)?);
        }
        p.expect("]")?;
    }
    Ok(out)
}

fn gterm_to_term(g: &GeneralTerm) -> Option<Term> {
    match g {
        GeneralTerm::Var(v) => Some(Term::var(v.clone())),
        GeneralTerm::App(f, args) => Some(Term::app(
            f.clone(),
            args.iter().map(gterm_to_term).collect::<Option<_>>()?,
        )),
        GeneralTerm::List(_) => None,
    }
}

fn binding(p: &mut Parser, g: &GeneralTerm) -> Result<Substitution, ParseError> {
    let bad = || p.error_here("expected `bind([Vars], [Terms])`");
    let GeneralTerm::App(head, args) = g else {
        return Err(bad());
    };
    let [GeneralTerm::List(vars), GeneralTerm::List(terms)] = args.as_slice() else {
        return Err(bad());
    };
    if head != "bind" || vars.len() != terms.len() {
        return Err(bad());
    }
    let mut out = Substitution::new();
    for (v, t) in vars.iter().zip(terms) {
        let (GeneralTerm::Var(v), Some(t)) = (v, gterm_to_term(t)) else {
            return Err(bad());
        };
        out.insert(v.clone(), t);
    }
    Ok(out)
}

fn annotation(p: &mut Parser) -> Result<Annotation, ParseError> {
    let here = p.error_here("");
    let g = p.general_term()?;
    let err = |message: String| ParseError {
        message,
        ..here.clone()
    };
    let GeneralTerm::App(head, args) = &g else {
        return Err(err("expected a clause origin or an inference".into()));
    };
    let name_arg = |args: &[GeneralTerm]| match args {
        [GeneralTerm::App(n, inner)] if inner.is_empty() => Some(n.clone()),
        _ => None,
    };
    match head.as_str() {
        "clausify" => name_arg(args)
            .map(Annotation::Input)
            .ok_or_else(|| err("expected `clausify(name)`".into())),
        "theory" => match name_arg(args).as_deref() {
            Some("equality") => Ok(Annotation::Equality),
            _ => Err(err("only `theory(equality)` is supported".into())),
        },
        "start" | "extension" => {
            let rule = if head == "start" {
                StepRule::Start
            } else {
                StepRule::Extension
            };
            let (clause, bind) = match args.as_slice() {
                [GeneralTerm::App(n, inner)] if inner.is_empty() => {
                    (n.clone(), Substitution::new())
                }
                [GeneralTerm::App(n, inner), b] if inner.is_empty() => (n.clone(), binding(p, b)?),
                _ => {
                    return Err(err(format!(
                        "expected `{head}(N)` or `{head}(N, bind(...))`"
                    )))
                }
            };
            Ok(Annotation::Step(rule, Some(clause), bind))
        }
        "reduction" => Ok(Annotation::Step(
            StepRule::Reduction,
            None,
            Substitution::new(),
        )),
        other => Err(err(format!("unknown annotation `{other}`"))),
    }
}

pub fn parse_leancop(text: &str) -> Result<LeanCoPTrace, LeanCoPParseError> {
    let mut p = Parser::new(text)?;
    let mut trace = LeanCoPTrace::default();
    let mut names = BTreeSet::new();
    while !p.at_eof() {
        let line = p.peek().line;
        let kind = match p.peek_tok() {
            Tok::Lower(k) if k == "fof" || k == "cnf" => k.clone(),
            other => {
                return Err(p
                    .error_here(format!("expected `fof` or `cnf`, found {other}"))
                    .into())
            }
        };
        p.next();
        p.expect("(")?;
        let name = p.name()?;
        p.expect(",")?;
        let role = p.name()?;
        p.expect(",")?;
        if kind == "fof" {
            let formula = p.formula()?;
            // Optional trailing annotations are skipped.
            while p.eat(",") {
                p.general_term()?;
            }
            p.expect(")")?;
            p.expect(".")?;
            let role = match role.as_str() {
                "axiom" | "hypothesis" | "definition" | "lemma" | "theorem" => Role::Axiom,
                "conjecture" => Role::Conjecture,
                _ => return Err(LeanCoPParseError::UnknownRole { name, role, line }),
            };
            if !names.insert(("fof", name.clone())) {
                return Err(LeanCoPParseError::Duplicate { name, line });
            }
            trace.inputs.push(InputFormula {
                name,
                role,
                formula,
                line,
            });
            continue;
        }
        let literals = literal_list(&mut p)?;
        p.expect(",")?;
        let ann = annotation(&mut p)?;
        p.expect(")")?;
        p.expect(".")?;
        if !names.insert(("cnf", name.clone())) {
            return Err(LeanCoPParseError::Duplicate { name, line });
        }
        match ann {
            Annotation::Input(source) => trace.clauses.push(TraceClause {
                number: name,
                literals,
                origin: ClauseOrigin::Input(source),
                line,
            }),
            Annotation::Equality => trace.clauses.push(TraceClause {
                number: name,
                literals,
                origin: ClauseOrigin::Equality,
                line,
            }),
            Annotation::Step(rule, clause, binding) => trace.steps.push(ProofStep {
                id: name,
                rule,
                clause,
                binding,
                literals,
                line,
            }),
        }
    }
    for c in &trace.clauses {
        if let ClauseOrigin::Input(f) = &c.origin {
            if trace.input(f).is_none() {
                return Err(LeanCoPParseError::UnknownFormula {
                    clause: c.number.clone(),
                    formula: f.clone(),
                    line: c.line,
                });
            }
        }
    }
    for s in &trace.steps {
        if let Some(c) = &s.clause {
            if trace.clause(c).is_none() {
                return Err(LeanCoPParseError::UnknownClause {
                    step: s.id.clone(),
                    clause: c.clone(),
                    line: s.line,
                });
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    const BASIC: &str = "
        % part 1
        fof(ax1, axiom, ![X]: p(X)).
        fof(co, conjecture, p(a)).
        % part 2
        cnf(1, plain, [-p(X1)], clausify(ax1)).
        cnf(2, plain, [p(a)], clausify(co)).
        % part 3
        cnf('s1', plain, [p(a)], start(2)).
        cnf('s2', plain, [-p(a)], extension(1, bind([X1], [a]))).
    ";

    #[test]
    fn three_parts() {
        let t = parse_leancop(BASIC).unwrap();
        assert_eq!(t.inputs.len(), 2);
        assert_eq!(t.inputs[0].role, Role::Axiom);
        assert_eq!(t.inputs[0].formula, parse_formula("![X]: p(X)").unwrap());
        assert_eq!(t.clauses[0].origin, ClauseOrigin::Input("ax1".into()));
        assert_eq!(t.clauses[0].literals[0].to_string(), "~p(X1)");
        assert_eq!(t.steps[0].rule, StepRule::Start);
        assert_eq!(t.steps[0].clause.as_deref(), Some("2"));
        assert!(t.steps[0].binding.is_empty());
        assert_eq!(t.steps[1].id, "s2");
        assert_eq!(
            t.steps[1].binding,
            Substitution::from([("X1", Term::constant("a"))])
        );
    }

    #[test]
    fn single_lines() {
        let t = parse_leancop("cnf('s1', plain, [p(a)], start(1, bind([X1], [a]))).\nfof(ax1, axiom, p(a)).\ncnf(1, plain, [p(X1)], clausify(ax1)).").unwrap();
        assert_eq!(t.steps[0].binding.get("X1"), Some(&Term::constant("a")));
        let t =
            parse_leancop("cnf(3, plain, [X = Y, ~ Y = X, -(X = X), a != b], theory(equality)).")
                .unwrap();
        let shown: Vec<String> = t.clauses[0]
            .literals
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(shown, ["X = Y", "~(Y = X)", "~(X = X)", "~(a = b)"]);
        assert_eq!(t.clauses[0].origin, ClauseOrigin::Equality);
    }

    #[test]
    fn reductions_carry_no_clause() {
        let t = parse_leancop("cnf(s3, plain, [p(a)], reduction('s1', [x])).").unwrap();
        assert_eq!(t.steps[0].rule, StepRule::Reduction);
        assert_eq!(t.steps[0].clause, None);
    }

    #[test]
    fn errors() {
        let e = parse_leancop("fof(a, belief, p).").unwrap_err();
        assert!(matches!(e, LeanCoPParseError::UnknownRole { .. }));
        let e = parse_leancop("cnf(s1, plain, [p], start(7)).").unwrap_err();
        assert!(matches!(e, LeanCoPParseError::UnknownClause { .. }), "{e}");
        let e = parse_leancop("cnf(1, plain, [p], clausify(nowhere)).").unwrap_err();
        assert!(matches!(e, LeanCoPParseError::UnknownFormula { .. }));
        let e = parse_leancop("fof(a, axiom, p).\nfof(a, axiom, q).").unwrap_err();
        assert_eq!(
            e,
            LeanCoPParseError::Duplicate {
                name: "a".into(),
                line: 2
            }
        );
        let e = parse_leancop("fof(a, axiom, p)\n").unwrap_err();
        assert!(
            matches!(e, LeanCoPParseError::Syntax(ParseError { line: 2, .. })),
            "{e}"
        );
        let e = parse_leancop("cnf(1, plain, [p & q], clausify(a)).").unwrap_err();
        assert!(matches!(e, LeanCoPParseError::Syntax(_)));
        let e = parse_leancop("cnf(s, plain, [p], start(1, bind([X], [a, b]))).").unwrap_err();
        assert!(matches!(e, LeanCoPParseError::Syntax(_)));
    }
}
