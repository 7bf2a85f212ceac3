//! The declaration language for quivers, morphisms, categories, monoids and
//! queries.
//!
//! ```text
//! quiver Sq { vertices: 4  arrows: a 0 1, b 1 3, c 0 2, d 2 3 }
//! morphism top : T -> Sq { arrows: x->a, y->b }
//! category C { objects: 2  hom 0 1: f g  id 0: 1A  id 1: 1B }
//! monoid M { generators: a b  relations: ab, "" }
//! query commerge Sq with top
//! ```
//!
//! Lists end at a newline, a closing brace or the next keyword of the block.
//! Comma-separated lists may continue on the next line after a comma.

mod parse;
mod print;
mod run;

use std::fmt;

pub use parse::parse;
pub use run::{dual_document, run, Report, RunOptions, EXIT_INPUT, EXIT_INVALID, EXIT_OK, EXIT_UNKNOWN};

use crate::formulas::schemas::Budget;
use crate::models::FiniteCategory;
use crate::quiver::{Quiver, QuiverMorphism};
use crate::reductions::MonoidPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax(String),
    Duplicate(String),
    Unresolved(String),
    Range(String),
    Invariant(String),
}

/// A located error; columns count characters from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub kind: ErrorKind,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, msg) = match &self.kind {
            ErrorKind::Syntax(m) => ("syntax error", m.clone()),
            ErrorKind::Duplicate(n) => ("duplicate name", format!("`{n}` already declared")),
            ErrorKind::Unresolved(n) => ("unresolved reference", n.clone()),
            ErrorKind::Range(m) => ("out of range", m.clone()),
            ErrorKind::Invariant(m) => ("invalid declaration", m.clone()),
        };
        write!(f, "line {}, column {}: {what}: {msg} (at `{}`)", self.line, self.column, self.token)
    }
}

impl std::error::Error for DslError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverDecl {
    pub name: String,
    pub quiver: Quiver,
    /// label of each canonical arrow id
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub morphism: QuiverMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: String,
    pub category: FiniteCategory,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidDecl {
    pub name: String,
    pub presentation: MonoidPresentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryKind {
    Tcat,
    Tab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodeMode {
    Loop,
    Layered(usize),
    Acyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Commerge { quiver: String, premises: Vec<String> },
    CommergeBounded { quiver: String, premises: Vec<String>, bound: usize },
    Dual(String),
    Paths(String),
    Eval { file: String, category: String },
    Axioms { theory: TheoryKind, budget: Budget },
    Encode { monoid: String, mode: EncodeMode },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Quiver(QuiverDecl),
    Morphism(MorphismDecl),
    Category(CategoryDecl),
    Monoid(MonoidDecl),
    Query(Query),
}

impl Decl {
    pub fn name(&self) -> Option<&str> {
        match self {
            Decl::Quiver(d) => Some(&d.name),
            Decl::Morphism(d) => Some(&d.name),
            Decl::Category(d) => Some(&d.name),
            Decl::Monoid(d) => Some(&d.name),
            Decl::Query(_) => None,
        }
    }
}

/// Parsed declarations in source order. Equality ignores source positions.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub decls: Vec<Decl>,
    /// line of each declaration
    pub lines: Vec<usize>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl Eq for Document {}

impl Document {
    fn find(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == Some(name))
    }

    pub fn quiver(&self, name: &str) -> Option<&QuiverDecl> {
        match self.find(name) {
            Some(Decl::Quiver(q)) => Some(q),
            _ => None,
        }
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDecl> {
        match self.find(name) {
            Some(Decl::Morphism(m)) => Some(m),
            _ => None,
        }
    }

    pub fn category(&self, name: &str) -> Option<&CategoryDecl> {
        match self.find(name) {
            Some(Decl::Category(c)) => Some(c),
            _ => None,
        }
    }

    pub fn monoid(&self, name: &str) -> Option<&MonoidDecl> {
        match self.find(name) {
            Some(Decl::Monoid(m)) => Some(m),
            _ => None,
        }
    }

    pub fn queries(&self) -> impl Iterator<Item = &Query> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Query(q) => Some(q),
            _ => None,
        })
    }

    /// Quivers and morphisms by name, for formula parsing.
    pub fn formula_env(&self) -> crate::formulas::parse::Env {
        let mut env = crate::formulas::parse::Env::default();
        for d in &self.decls {
            match d {
                Decl::Quiver(q) => {
                    env.quivers.insert(q.name.clone(), q.quiver.clone());
                }
                Decl::Morphism(m) => {
                    env.morphisms.insert(m.name.clone(), m.morphism.clone());
                }
                _ => {}
            }
        }
        env
    }
}
