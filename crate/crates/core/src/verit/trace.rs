//! Reader for resolution-refutation traces in the s-expression form
//!
//! ```text
//! (set .c1 (input :conclusion ((= a b))))
//! (set .c3 (eq_transitive :conclusion ((not (= a b)) (not (= b c)) (= a c))))
//! (set .c9 (resolution :clauses (.c1 .c3) :conclusion ((= a c))))
//! ```
//!
//! `;` starts a line comment. Symbols may be written `|like this|`.

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::{Atom, Literal, ParseError, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Input,
    EqTransitive,
    EqCongruent,
    EqCongruentPred,
    EqReflexive,
    Resolution,
    Other(String),
}

impl Rule {
    pub fn from_name(name: &str) -> Rule {
        match name {
            "input" => Rule::Input,
            "eq_transitive" => Rule::EqTransitive,
            "eq_congruent" => Rule::EqCongruent,
            "eq_congruent_pred" => Rule::EqCongruentPred,
            "eq_reflexive" => Rule::EqReflexive,
            "resolution" => Rule::Resolution,
            other => Rule::Other(other.to_string()),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Rule::Input => "input",
            Rule::EqTransitive => "eq_transitive",
            Rule::EqCongruent => "eq_congruent",
            Rule::EqCongruentPred => "eq_congruent_pred",
            Rule::EqReflexive => "eq_reflexive",
            Rule::Resolution => "resolution",
            Rule::Other(s) => s,
        }
    }

    /// Input and equality-axiom rules; these never have premises.
    pub fn is_leaf_rule(&self) -> bool {
        !matches!(self, Rule::Resolution | Rule::Other(_))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeritStep {
    pub id: String,
    pub rule: Rule,
    pub premises: Vec<String>,
    pub conclusion: Vec<Literal>,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VeritTrace {
    pub steps: Vec<VeritStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("{line}: step `{step}` cites `{premise}`, which is not an earlier step")]
    DanglingPremise {
        step: String,
        premise: String,
        line: usize,
    },
    #[error("{line}: step id `{id}` is already defined")]
    DuplicateId { id: String, line: usize },
}

#[derive(Clone, Debug)]
enum SExp {
    Sym {
        text: String,
        line: usize,
        column: usize,
    },
    List {
        items: Vec<SExp>,
        line: usize,
        column: usize,
    },
}

impl SExp {
    fn pos(&self) -> (usize, usize) {
        match self {
            SExp::Sym { line, column, .. } | SExp::List { line, column, .. } => (*line, *column),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.pos();
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn sym(&self) -> Option<&str> {
        match self {
            SExp::Sym { text, .. } => Some(text),
            SExp::List { .. } => None,
        }
    }
}

fn read_all(text: &str) -> Result<Vec<SExp>, ParseError> {
    let mut stack: Vec<(Vec<SExp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let err = |line, column, message: &str| ParseError {
        line,
        column,
        message: message.to_string(),
    };
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            c if c.is_whitespace() => {
                advance(&mut chars);
            }
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    advance(&mut chars);
                }
            }
            '(' => {
                advance(&mut chars);
                stack.push((Vec::new(), l, col));
            }
            ')' => {
                advance(&mut chars);
                let (items, line, column) =
                    stack.pop().ok_or_else(|| err(l, col, "unbalanced `)`"))?;
                let e = SExp::List {
                    items,
                    line,
                    column,
                };
                match stack.last_mut() {
                    Some(parent) => parent.0.push(e),
                    None => top.push(e),
                }
            }
            _ => {
                let mut s = String::new();
                if c == '|' {
                    advance(&mut chars);
                    loop {
                        match advance(&mut chars) {
                            Some('|') => break,
                            Some(c) => s.push(c),
                            None => return Err(err(l, col, "unterminated `|` symbol")),
                        }
                    }
                } else {
                    while let Some(&c) = chars.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                            break;
                        }
                        s.push(c);
                        advance(&mut chars);
                    }
                }
                let e = SExp::Sym {
                    text: s,
                    line: l,
                    column: col,
                };
                match stack.last_mut() {
                    Some(parent) => parent.0.push(e),
                    None => return Err(e.error("expected `(`")),
                }
            }
        }
    }
    if let Some((_, l, c)) = stack.last() {
        return Err(err(*l, *c, "unclosed `(`"));
    }
    Ok(top)
}

/// Connectives and binders that cannot appear in a clause literal.
const NON_CLAUSAL: &[&str] = &[
    "and", "or", "=>", "xor", "ite", "distinct", "forall", "exists", "let", "!", "not",
];

fn term(e: &SExp) -> Result<Term, ParseError> {
    match e {
        SExp::Sym { text, .. } => {
            if NON_CLAUSAL.contains(&text.as_str()) || text == "=" {
                return Err(e.error(format!("`{text}` cannot be used as a term")));
            }
            Ok(Term::constant(text.clone()))
        }
        SExp::List { items, .. } => {
            let (head, args) = items.split_first().ok_or_else(|| e.error("empty term"))?;
            let f = head
                .sym()
                .ok_or_else(|| head.error("expected a function symbol"))?;
            if NON_CLAUSAL.contains(&f) || f == "=" {
                return Err(head.error(format!("`{f}` cannot be used as a term")));
            }
            if args.is_empty() {
                return Err(e.error("application without arguments"));
            }
            Ok(Term::app(
                f,
                args.iter().map(term).collect::<Result<_, _>>()?,
            ))
        }
    }
}

fn atom(e: &SExp) -> Result<Atom, ParseError> {
    match e {
        SExp::Sym { text, .. } => {
            if NON_CLAUSAL.contains(&text.as_str()) || text == "=" {
                return Err(e.error(format!("`{text}` is not an atom")));
            }
            Ok(Atom::new(text.clone(), vec![]))
        }
        SExp::List { items, .. } => {
            let (head, args) = items
                .split_first()
                .ok_or_else(|| e.error("empty literal"))?;
            let p = head
                .sym()
                .ok_or_else(|| head.error("expected a predicate symbol"))?;
            if NON_CLAUSAL.contains(&p) {
                return Err(head.error(format!("`{p}` is not allowed in a clause literal")));
            }
            if p == "=" {
                if args.len() != 2 {
                    return Err(head.error("`=` takes exactly two arguments"));
                }
                return Ok(Atom::eq(term(&args[0])?, term(&args[1])?));
            }
            Ok(Atom::new(
                p,
                args.iter().map(term).collect::<Result<_, _>>()?,
            ))
        }
    }
}

fn literal(e: &SExp) -> Result<Literal, ParseError> {
    if let SExp::List { items, .. } = e {
        if items.first().and_then(SExp::sym) == Some("not") {
            if items.len() != 2 {
                return Err(e.error("`not` takes exactly one argument"));
            }
            return Ok(Literal::neg(atom(&items[1])?));
        }
    }
    Ok(Literal::pos(atom(e)?))
}

fn step_id(e: &SExp) -> Result<String, ParseError> {
    match e.sym().and_then(|s| s.strip_prefix('.')) {
        Some(id) if !id.is_empty() => Ok(id.to_string()),
        _ => Err(e.error("expected a step id of the form `.name`")),
    }
}

fn step(e: &SExp) -> Result<VeritStep, ParseError> {
    let SExp::List { items, line, .. } = e else {
        return Err(e.error("expected `(set ...)`"));
    };
    if items.first().and_then(SExp::sym) != Some("set") {
        return Err(e.error("expected `(set ...)`"));
    }
    if items.len() != 3 {
        return Err(e.error("`set` takes a step id and a rule application"));
    }
    let id = step_id(&items[1])?;
    let SExp::List { items: body, .. } = &items[2] else {
        return Err(items[2].error("expected `(rule ...)`"));
    };
    let (rule, attrs) = body
        .split_first()
        .ok_or_else(|| items[2].error("empty rule application"))?;
    let rule = Rule::from_name(
        rule.sym()
            .ok_or_else(|| rule.error("expected a rule name"))?,
    );
    let mut premises = None;
    let mut conclusion = None;
    let mut rest = attrs.iter();
    while let Some(key) = rest.next() {
        let value = rest
            .next()
            .ok_or_else(|| key.error("attribute without a value"))?;
        let SExp::List { items: values, .. } = value else {
            return Err(value.error("expected a parenthesised list"));
        };
        match key.sym() {
            Some(":clauses") if premises.is_none() => {
                if values.is_empty() {
                    return Err(value.error("`:clauses` needs at least one step id"));
                }
                premises = Some(values.iter().map(step_id).collect::<Result<Vec<_>, _>>()?);
            }
            Some(":conclusion") if conclusion.is_none() => {
                conclusion = Some(values.iter().map(literal).collect::<Result<Vec<_>, _>>()?);
            }
            Some(k @ (":clauses" | ":conclusion")) => {
                return Err(key.error(format!("`{k}` given twice")))
            }
            _ => return Err(key.error("expected `:clauses` or `:conclusion`")),
        }
    }
    let conclusion = conclusion.ok_or_else(|| items[2].error("missing `:conclusion`"))?;
    let premises = premises.unwrap_or_default();
    if rule.is_leaf_rule() && !premises.is_empty() {
        return Err(items[2].error(format!("`{rule}` steps cannot have premises")));
    }
    Ok(VeritStep {
        id,
        rule,
        premises,
        conclusion,
        line: *line,
    })
}

pub fn parse_verit(text: &str) -> Result<VeritTrace, TraceError> {
    let mut steps: Vec<VeritStep> = Vec::new();
    let mut ids = BTreeSet::new();
    for e in read_all(text)? {
        let s = step(&e)?;
        for p in &s.premises {
            if !ids.contains(p) {
                return Err(TraceError::DanglingPremise {
                    step: s.id.clone(),
                    premise: p.clone(),
                    line: s.line,
                });
            }
        }
        if !ids.insert(s.id.clone()) {
            return Err(TraceError::DuplicateId {
                id: s.id,
                line: s.line,
            });
        }
        steps.push(s);
    }
    Ok(VeritTrace { steps })
}
