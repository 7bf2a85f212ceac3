//! Parser for the ASCII formula syntax written by the printer.
//!
//! Quivers and morphisms may be literals or names from an environment.
//! Quantifiers met in operand position extend as far right as possible.

use std::collections::HashMap;
use std::fmt;

use super::{Formula, QuantKind, Term, Variable};
use crate::quiver::{Quiver, QuiverMorphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for FormulaParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for FormulaParseError {}

/// Named quivers, morphisms and free variables visible to the parser.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub quivers: HashMap<String, Quiver>,
    pub morphisms: HashMap<String, QuiverMorphism>,
    pub free: Vec<Variable>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(usize),
    Sym(&'static str),
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

const SYMBOLS: [&str; 17] = [
    "<->", "->", "exists!", "{", "}", "[", "]", "(", ")", "|", "&", "~", "=", ".", ";", ">", ",",
];

fn lex(src: &str) -> Result<Lexer, FormulaParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let n = s.parse().map_err(|_| FormulaParseError {
                line,
                column: col,
                message: format!("number `{s}` too large"),
            })?;
            toks.push((Tok::Num(n), start.0, start.1));
            col += j - i;
            i = j;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            if s == "exists" && chars.get(j) == Some(&'!') {
                toks.push((Tok::Sym("exists!"), start.0, start.1));
                j += 1;
            } else {
                toks.push((Tok::Ident(s), start.0, start.1));
            }
            col += j - i;
            i = j;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| s.len() <= 3 && rest.starts_with(**s) && **s != "exists!") {
            Some(s) => {
                toks.push((Tok::Sym(s), start.0, start.1));
                i += s.len();
                col += s.len();
            }
            None => {
                return Err(FormulaParseError {
                    line,
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexer { toks })
}

struct Parser<'e> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    env: &'e Env,
    scope: Vec<Variable>,
}

const KEYWORDS: [&str; 8] = ["forall", "exists", "true", "false", "and", "or", "commute", "restr"];

impl<'e> Parser<'e> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormulaParseError> {
        let (_, line, column) = self.toks[self.pos];
        Err(FormulaParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), FormulaParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn number(&mut self) -> Result<usize, FormulaParseError> {
        match *self.peek() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.err(format!("expected a number, found {}", self.describe())),
        }
    }

    fn ident(&mut self) -> Result<String, FormulaParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected a name, found {}", self.describe())),
        }
    }

    fn quiver(&mut self) -> Result<Quiver, FormulaParseError> {
        if let Tok::Ident(_) = self.peek() {
            let name = self.ident()?;
            return match self.env.quivers.get(&name) {
                Some(q) => Ok(q.clone()),
                None => {
                    self.pos -= 1;
                    self.err(format!("unknown quiver `{name}`"))
                }
            };
        }
        self.expect("{")?;
        let n = self.number()?;
        self.expect("|")?;
        let mut arrows = Vec::new();
        while !self.eat("}") {
            let s = self.number()?;
            self.expect(">")?;
            let t = self.number()?;
            arrows.push((s, t));
        }
        let (q, perm) = match Quiver::canonicalize(n, &arrows) {
            Ok(x) => x,
            Err(e) => return self.err(e.to_string()),
        };
        if !perm.is_identity() {
            return self.err(format!("quiver literal {q} must list arrows in canonical order"));
        }
        Ok(q)
    }

    fn morphism(&mut self) -> Result<QuiverMorphism, FormulaParseError> {
        if let Tok::Ident(_) = self.peek() {
            if !matches!(self.toks[self.pos + 1].0, Tok::Sym("->")) {
                let name = self.ident()?;
                return match self.env.morphisms.get(&name) {
                    Some(m) => Ok(m.clone()),
                    None => {
                        self.pos -= 1;
                        self.err(format!("unknown morphism `{name}`"))
                    }
                };
            }
        }
        let dom = self.quiver()?;
        self.expect("->")?;
        let cod = self.quiver()?;
        self.expect(";")?;
        let mut vs = Vec::new();
        while let Tok::Num(_) = self.peek() {
            vs.push(self.number()?);
        }
        self.expect(";")?;
        let mut as_ = Vec::new();
        while let Tok::Num(_) = self.peek() {
            as_.push(self.number()?);
        }
        match QuiverMorphism::new(dom, cod, vs, as_) {
            Ok(m) => Ok(m),
            Err(e) => self.err(e.to_string()),
        }
    }

    fn term(&mut self) -> Result<Term, FormulaParseError> {
        if self.is_kw("restr") {
            self.pos += 1;
            self.expect("[")?;
            let m = self.morphism()?;
            self.expect("]")?;
            self.expect("(")?;
            let at = self.pos;
            let t = self.term()?;
            self.expect(")")?;
            if t.sort() != m.codomain() {
                self.pos = at;
                return self.err(format!("term of sort {} where {} is expected", t.sort(), m.codomain()));
            }
            return Ok(Term::restr(&m, t));
        }
        let name = self.ident()?;
        let v = self
            .scope
            .iter()
            .rev()
            .chain(self.env.free.iter().rev())
            .find(|v| v.name == name)
            .cloned();
        match v {
            Some(v) => Ok(v.term()),
            None => {
                self.pos -= 1;
                self.err(format!("unbound variable `{name}`"))
            }
        }
    }

    fn quantifier(&mut self) -> Result<Option<Formula>, FormulaParseError> {
        let kind = if self.is_kw("forall") {
            QuantKind::Forall
        } else if self.is_kw("exists") {
            QuantKind::Exists
        } else if matches!(self.peek(), Tok::Sym("exists!")) {
            QuantKind::ExistsUnique
        } else {
            return Ok(None);
        };
        self.pos += 1;
        self.expect("[")?;
        let q = self.quiver()?;
        self.expect("]")?;
        let name = self.ident()?;
        self.expect(".")?;
        let v = Variable::new(name, q);
        self.scope.push(v.clone());
        let body = self.formula();
        self.scope.pop();
        Ok(Some(Formula::quantifier(kind, &v, body?)))
    }

    fn formula(&mut self) -> Result<Formula, FormulaParseError> {
        if let Some(f) = self.quantifier()? {
            return Ok(f);
        }
        let a = self.implication()?;
        if self.eat("<->") {
            let b = self.implication()?;
            return Ok(Formula::iff(a, b));
        }
        Ok(a)
    }

    fn implication(&mut self) -> Result<Formula, FormulaParseError> {
        let a = self.disjunction()?;
        if self.eat("->") {
            let b = match self.quantifier()? {
                Some(f) => f,
                None => self.implication()?,
            };
            return Ok(Formula::implies(a, b));
        }
        Ok(a)
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaParseError> {
        let mut parts = vec![self.conjunction()?];
        while self.eat("|") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaParseError> {
        let mut parts = vec![self.unary()?];
        while self.eat("&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if let Some(f) = self.quantifier()? {
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, FormulaParseError> {
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        for (kw, f) in [("true", Formula::tt()), ("false", Formula::ff())] {
            if self.is_kw(kw) {
                self.pos += 1;
                return Ok(f);
            }
        }
        for kw in ["and", "or"] {
            if self.is_kw(kw) {
                self.pos += 1;
                self.expect("(")?;
                let f = self.formula()?;
                self.expect(")")?;
                return Ok(if kw == "and" {
                    Formula::And(vec![f])
                } else {
                    Formula::Or(vec![f])
                });
            }
        }
        if self.is_kw("commute") {
            self.pos += 1;
            self.expect("(")?;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(Formula::commute(t));
        }
        let at = self.pos;
        let a = self.term()?;
        self.expect("=")?;
        let b = self.term()?;
        if a.sort() != b.sort() {
            self.pos = at;
            return self.err(format!("sides of `=` have sorts {} and {}", a.sort(), b.sort()));
        }
        Ok(Formula::eq(a, b))
    }
}

pub fn parse_formula(src: &str, env: &Env) -> Result<Formula, FormulaParseError> {
    let lexer = lex(src)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        env,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after formula", p.describe()));
    }
    Ok(f)
}

pub fn parse_quiver(src: &str) -> Result<Quiver, FormulaParseError> {
    let env = Env::default();
    let mut p = Parser {
        toks: lex(src)?.toks,
        pos: 0,
        env: &env,
        scope: Vec::new(),
    };
    let q = p.quiver()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after quiver", p.describe()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::schemas;

    fn roundtrip(f: &Formula) {
        let s = f.to_string();
        let g = parse_formula(&s, &Env::default()).unwrap_or_else(|e| panic!("{e}\n{s}"));
        assert_eq!(&g, f, "{s}");
    }

    #[test]
    fn schema_roundtrips() {
        roundtrip(&schemas::empty_eu());
        roundtrip(&schemas::comp_e());
        roundtrip(&schemas::id_e());
        roundtrip(&schemas::com_eq());
        roundtrip(&schemas::eq_path_concat(1, 2, 0, 1));
        roundtrip(&schemas::zero_e());
        roundtrip(&schemas::ker_e());
        roundtrip(&schemas::coker_e());
        roundtrip(&schemas::epi_normal());
        roundtrip(&Formula::tt());
        roundtrip(&Formula::And(vec![Formula::ff()]));
    }

    #[test]
    fn named_sorts_and_errors() {
        let mut env = Env::default();
        env.quivers.insert("A".into(), Quiver::path_quiver(1));
        let f = parse_formula("forall[A] x. commute(x) -> x = x", &env).unwrap();
        assert_eq!(f.to_string(), "forall[{2| 0>1}] x. commute(x) -> x = x");
        let e = parse_formula("forall[A] x. commute(y)", &env).unwrap_err();
        assert_eq!((e.line, e.column), (1, 22));
        let e = parse_formula("forall[{2| 1>0 0>1}] x. true", &env).unwrap_err();
        assert!(e.message.contains("canonical"));
        let e = parse_formula("forall[{1|}] x. forall[{2|}] y. x = y", &env).unwrap_err();
        assert!(e.message.contains("sorts"));
        assert!(parse_formula("true true", &env).is_err());
        assert!(parse_formula("@", &env).is_err());
    }

    #[test]
    fn quantifier_in_tail() {
        let f = parse_formula("true & forall[{1|}] x. x = x | false", &Env::default()).unwrap();
        assert_eq!(f.to_string(), "true & (forall[{1|}] x. x = x | false)");
    }

    #[test]
    fn quiver_literal() {
        assert_eq!(parse_quiver("{3| 0>1 1>2}").unwrap(), Quiver::new(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(parse_quiver("{2| 0>5}").is_err());
    }
}
