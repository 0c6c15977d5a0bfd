//! Reader for the TPTP-flavoured formula notation.
//!
//! `!` and `?` are the quantifiers, `~`, `&`, `|` and `=>` the connectives
//! and `=`/`!=` infix equality. Identifiers starting with an upper-case
//! letter or `_` are variables; lower-case identifiers, integers and
//! single-quoted words are function or predicate symbols.

use super::formula::Formula;
use super::term::{Atom, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Lower(String),
    Upper(String),
    Quoted(String),
    Int(String),
    Dollar(String),
    Punct(&'static str),
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Int(s) | Tok::Dollar(s) => write!(f, "`{s}`"),
            Tok::Quoted(s) => write!(f, "`'{s}'`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const PUNCT: &[&str] = &[
    "<=>", "<~>", "=>", "<=", "~|", "~&", "!=", "(", ")", "[", "]", ",", ":", ".", "!", "?", "~",
    "&", "|", "=", "-", "+",
];

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| ParseError {
        line,
        column,
        message,
    };
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let (l0, c0) = (line, col);
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(err(l0, c0, "unterminated comment".into()));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' || c == '$' || c.is_ascii_digit() {
            let start = i;
            bump!();
            let digits = c.is_ascii_digit();
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || (!digits && chars[i] == '_'))
                && !(digits && !chars[i].is_ascii_digit())
            {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if c == '$' {
                Tok::Dollar(word)
            } else if digits {
                Tok::Int(word)
            } else if c.is_ascii_uppercase() || c == '_' {
                Tok::Upper(word)
            } else {
                Tok::Lower(word)
            };
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            continue;
        }
        if c == '\'' {
            bump!();
            let mut word = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated quoted word".into())),
                    Some('\'') => {
                        bump!();
                        break;
                    }
                    Some('\\') => {
                        bump!();
                        match chars.get(i) {
                            Some(&e) => {
                                word.push(e);
                                bump!();
                            }
                            None => return Err(err(l0, c0, "unterminated quoted word".into())),
                        }
                    }
                    Some(&ch) => {
                        word.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Token {
                tok: Tok::Quoted(word),
                line: l0,
                column: c0,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match PUNCT.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                for _ in 0..p.chars().count() {
                    bump!();
                }
                out.push(Token {
                    tok: Tok::Punct(p),
                    line: l0,
                    column: c0,
                });
            }
            None => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// A TPTP general term, as found in annotations such as `clausify(ax1)` or
/// `bind([X1],[a])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum GeneralTerm {
    Var(String),
    App(String, Vec<GeneralTerm>),
    List(Vec<GeneralTerm>),
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn peek_tok(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek_tok() == &Tok::Eof
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek_tok(), Tok::Punct(q) if *q == p)
    }

    pub fn eat(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{p}`, found {}", self.peek_tok())))
        }
    }

    pub fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error_here(format!(
                "unexpected {} after end of expression",
                self.peek_tok()
            )))
        }
    }

    /// A name: lower word, quoted word or integer.
    pub fn name(&mut self) -> Result<String, ParseError> {
        match self.peek_tok().clone() {
            Tok::Lower(s) | Tok::Quoted(s) | Tok::Int(s) => {
                self.next();
                Ok(s)
            }
            other => Err(self.error_here(format!("expected a name, found {other}"))),
        }
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat("=>") {
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        if self.eat("<=") {
            let rhs = self.disjunction()?;
            return Ok(Formula::imp(rhs, lhs));
        }
        for p in ["<=>", "<~>", "~|", "~&"] {
            if self.is_punct(p) {
                return Err(self.error_here(format!("connective `{p}` is not supported")));
            }
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.eat("|") {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    pub fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.is_punct("!") || self.is_punct("?") {
            let universal = self.is_punct("!");
            self.next();
            self.expect("[")?;
            let mut vars = vec![self.variable()?];
            while self.eat(",") {
                vars.push(self.variable()?);
            }
            self.expect("]")?;
            self.expect(":")?;
            let mut body = self.unary()?;
            for v in vars.into_iter().rev() {
                body = if universal {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                };
            }
            return Ok(body);
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        self.atomic_formula()
    }

    /// An atom, or `s != t` read as `~ (s = t)`.
    pub fn atomic_formula(&mut self) -> Result<Formula, ParseError> {
        let save = self.pos;
        if let Tok::Upper(_) | Tok::Lower(_) | Tok::Quoted(_) | Tok::Int(_) = self.peek_tok() {
            let lhs = self.term()?;
            if self.eat("!=") {
                return Ok(Formula::not(Formula::eq(lhs, self.term()?)));
            }
            self.pos = save;
        }
        Ok(Formula::Atom(self.atom()?))
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.peek_tok().clone() {
            Tok::Upper(v) => {
                self.next();
                if self.is_punct(":") && matches!(self.peek_at(1), Tok::Lower(_) | Tok::Dollar(_)) {
                    return Err(self.error_here("typed variables are not supported"));
                }
                Ok(v)
            }
            other => Err(self.error_here(format!("expected a variable, found {other}"))),
        }
    }

    pub fn atom(&mut self) -> Result<Atom, ParseError> {
        let start = self.peek().clone();
        if let Tok::Dollar(w) = &start.tok {
            return Err(self.error_here(format!("`{w}` is not supported")));
        }
        let lhs = self.term()?;
        if self.eat("=") {
            return Ok(Atom::eq(lhs, self.term()?));
        }
        if self.is_punct("!=") {
            return Err(self.error_here("expected an atom, found a negated equation"));
        }
        match lhs {
            Term::App(p, args) => Ok(Atom::new(p, args)),
            Term::Var(v) => Err(ParseError {
                line: start.line,
                column: start.column,
                message: format!("variable `{v}` used as a formula"),
            }),
        }
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek_tok().clone() {
            Tok::Upper(v) => {
                self.next();
                Ok(Term::Var(v))
            }
            Tok::Lower(_) | Tok::Quoted(_) | Tok::Int(_) => {
                let head = self.name()?;
                let mut args = Vec::new();
                if self.eat("(") {
                    args.push(self.term()?);
                    while self.eat(",") {
                        args.push(self.term()?);
                    }
                    self.expect(")")?;
                }
                Ok(Term::App(head, args))
            }
            Tok::Dollar(w) => Err(self.error_here(format!("`{w}` is not supported"))),
            other => Err(self.error_here(format!("expected a term, found {other}"))),
        }
    }

    pub fn general_term(&mut self) -> Result<GeneralTerm, ParseError> {
        if self.eat("[") {
            let items = self.general_terms_until("]")?;
            return Ok(GeneralTerm::List(items));
        }
        if let Tok::Upper(v) = self.peek_tok().clone() {
            self.next();
            return Ok(GeneralTerm::Var(v));
        }
        let head = self.name()?;
        let args = if self.eat("(") {
            self.general_terms_until(")")?
        } else {
            Vec::new()
        };
        Ok(GeneralTerm::App(head, args))
    }

    fn general_terms_until(&mut self, close: &str) -> Result<Vec<GeneralTerm>, ParseError> {
        let mut items = Vec::new();
        if !self.eat(close) {
            items.push(self.general_term()?);
            while self.eat(",") {
                items.push(self.general_term()?);
            }
            self.expect(close)?;
        }
        Ok(items)
    }
}

/// Parses a formula; `a != b` is read as `~ (a = b)`.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for src in [
            "![X]: (p(X) => ?[Y]: q(X,Y))",
            "~ (a = b)",
            "(p & q) & r",
            "p & (q | r)",
            "(p => q) => r",
            "p => (q => r)",
            "'A'(b) = f(X)",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{src}");
        }
    }

    #[test]
    fn quantifier_binds_tightly() {
        let f = parse_formula("![X]: p(X) & q").unwrap();
        assert!(matches!(f, Formula::And(..)));
        let g = parse_formula("![X,Y]: r(X,Y)").unwrap();
        assert_eq!(g.to_string(), "![X]: ![Y]: r(X,Y)");
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("a => b => c").unwrap(),
            parse_formula("a => (b => c)").unwrap()
        );
        assert_eq!(
            parse_formula("a <= b").unwrap(),
            parse_formula("b => a").unwrap()
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("a | b & c").unwrap(),
            parse_formula("a | (b & c)").unwrap()
        );
        assert_eq!(
            parse_formula("~ a & b").unwrap(),
            parse_formula("(~ a) & b").unwrap()
        );
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_formula("p(a) &\n  <=> q").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_formula("p <=> q").unwrap_err();
        assert!(e.message.contains("not supported"), "{e}");
        let e = parse_formula("X").unwrap_err();
        assert!(e.message.contains("variable"), "{e}");
        assert!(parse_formula("p(a").is_err());
        assert!(parse_formula("p(a) q").is_err());
    }

    #[test]
    fn disequality_sugar() {
        assert_eq!(
            parse_formula("a != b").unwrap(),
            parse_formula("~ (a = b)").unwrap()
        );
    }

    #[test]
    fn comments_are_skipped() {
        let f = parse_formula("% header\np /* inline */ & q").unwrap();
        assert_eq!(f.to_string(), "p & q");
    }
}
