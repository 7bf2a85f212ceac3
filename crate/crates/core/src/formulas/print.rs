//! ASCII rendering of quivers, morphisms, terms and formulas.
//!
//! Quivers print as `{3| 0>1 0>2 1>2}` and morphisms as
//! `{dom} -> {cod} ; vertex images ; arrow images`. The formula grammar,
//! loosest binding first:
//!
//! ```text
//! φ ::= forall[Q] x. φ | exists[Q] x. φ | exists![Q] x. φ
//!     | φ <-> φ | φ -> φ | φ | φ ... | φ & φ ... | ~φ
//!     | t = t | commute(t) | true | false | and(φ) | or(φ) | (φ)
//! t ::= x | restr[m](t)
//! ```
//!
//! `->` associates to the right, `&` and `|` are n-ary, and `and(φ)` /
//! `or(φ)` write one-element conjunctions and disjunctions so printing and
//! parsing round-trip exactly.

use std::fmt;

use super::{Formula, Term};
use crate::quiver::{Quiver, QuiverMorphism};

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}|", self.vertex_count())?;
        for a in 0..self.arrow_count() {
            write!(f, " {}>{}", self.source(a), self.target(a))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for QuiverMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ;", self.domain(), self.codomain())?;
        for v in self.vertex_map() {
            write!(f, " {v}")?;
        }
        write!(f, " ;")?;
        for a in self.arrow_map() {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", v.name),
            Term::Restr(m, t) => write!(f, "restr[{m}]({t})"),
        }
    }
}

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const ATOM: u8 = 6;

fn level(phi: &Formula) -> u8 {
    match phi {
        Formula::Forall(..) | Formula::Exists(..) | Formula::ExistsUnique(..) => 0,
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(cs) if cs.len() >= 2 => OR,
        Formula::And(cs) if cs.len() >= 2 => AND,
        Formula::Not(_) => NOT,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    if level(phi) < min {
        write!(f, "(")?;
        write_at(f, phi, 0)?;
        return write!(f, ")");
    }
    match phi {
        Formula::Eq(a, b) => write!(f, "{a} = {b}"),
        Formula::Commute(t) => write!(f, "commute({t})"),
        Formula::Not(a) => {
            write!(f, "~")?;
            write_at(f, a, NOT)
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let and = matches!(phi, Formula::And(_));
            match cs.len() {
                0 => write!(f, "{}", if and { "true" } else { "false" }),
                1 => {
                    write!(f, "{}(", if and { "and" } else { "or" })?;
                    write_at(f, &cs[0], 0)?;
                    write!(f, ")")
                }
                _ => {
                    let (sep, lvl) = if and { (" & ", AND + 1) } else { (" | ", OR + 1) };
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            write!(f, "{sep}")?;
                        }
                        write_at(f, c, lvl)?;
                    }
                    Ok(())
                }
            }
        }
        Formula::Implies(a, b) => {
            write_at(f, a, IMPLIES + 1)?;
            write!(f, " -> ")?;
            write_at(f, b, IMPLIES)
        }
        Formula::Iff(a, b) => {
            write_at(f, a, IFF + 1)?;
            write!(f, " <-> ")?;
            write_at(f, b, IFF + 1)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) | Formula::ExistsUnique(v, body) => {
            let kw = match phi {
                Formula::Forall(..) => "forall",
                Formula::Exists(..) => "exists",
                _ => "exists!",
            };
            write!(f, "{kw}[{}] {}. ", v.sort, v.name)?;
            write_at(f, body, 0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::Variable;

    #[test]
    fn quiver_and_morphism() {
        let q = Quiver::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(q.to_string(), "{3| 0>1 0>2 1>2}");
        assert_eq!(Quiver::empty().to_string(), "{0|}");
        let m = q.vertex_embedding(1);
        assert_eq!(m.to_string(), "{1|} -> {3| 0>1 0>2 1>2} ; 1 ;");
    }

    #[test]
    fn parenthesization() {
        let d = Quiver::discrete(1);
        let x = Variable::new("x", d.clone());
        let y = Variable::new("y", d);
        let e = Formula::eq(x.term(), y.term());
        let c = Formula::commute(x.term());
        let phi = Formula::implies(
            Formula::implies(e.clone(), c.clone()),
            Formula::and(vec![Formula::or(vec![e.clone(), c.clone()]), Formula::not(c.clone())]),
        );
        assert_eq!(phi.to_string(), "(x = y -> commute(x)) -> (x = y | commute(x)) & ~commute(x)");
        let q = Formula::and(vec![Formula::forall(&x, c.clone()), Formula::And(vec![e.clone()])]);
        assert_eq!(q.to_string(), "(forall[{1|}] x. commute(x)) & and(x = y)");
        assert_eq!(Formula::tt().to_string(), "true");
        assert_eq!(Formula::not(Formula::ff()).to_string(), "~false");
    }
}
