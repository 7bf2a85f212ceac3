//! Canonical text for documents; `parse(print(d)) == d` for parsed documents.

use std::fmt::{self, Write};

use super::parse::{hom_order, is_plain_word};
use super::{CategoryDecl, Decl, Document, EncodeMode, MonoidDecl, MorphismDecl, Query, QuiverDecl, TheoryKind};
use crate::models::FiniteCategory;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn word_or_quoted(s: &str) -> String {
    if is_plain_word(s) {
        s.to_string()
    } else {
        quoted(s)
    }
}

pub fn quiver_decl(d: &QuiverDecl) -> String {
    let q = &d.quiver;
    let mut s = format!("quiver {} {{ vertices: {}", d.name, q.vertex_count());
    if q.arrow_count() > 0 {
        let arrows: Vec<String> = (0..q.arrow_count())
            .map(|a| format!("{} {} {}", d.labels[a], q.source(a), q.target(a)))
            .collect();
        write!(s, "  arrows: {}", arrows.join(", ")).unwrap();
    }
    s.push_str(" }");
    s
}

pub fn morphism_decl(d: &MorphismDecl, source_labels: &[String], target_labels: &[String]) -> String {
    let m = &d.morphism;
    let mut s = format!("morphism {} : {} -> {} {{", d.name, d.source, d.target);
    if !m.vertex_map().is_empty() {
        let vs: Vec<String> = m.vertex_map().iter().enumerate().map(|(v, w)| format!("{v}->{w}")).collect();
        write!(s, " vertices: {}", vs.join(", ")).unwrap();
    }
    if !m.arrow_map().is_empty() {
        let sep = if m.vertex_map().is_empty() { "" } else { " " };
        let arrows: Vec<String> = m
            .arrow_map()
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}->{}", source_labels[a], target_labels[b]))
            .collect();
        write!(s, "{sep} arrows: {}", arrows.join(", ")).unwrap();
    }
    s.push_str(" }");
    s
}

pub fn category_decl(name: &str, c: &FiniteCategory) -> String {
    let mut s = format!("category {name} {{\n  objects: {}\n", c.object_count());
    for ((a, b), fs) in hom_order(c) {
        let names: Vec<&str> = fs.iter().map(|&f| c.morphism_name(f)).collect();
        writeln!(s, "  hom {a} {b}: {}", names.join(" ")).unwrap();
    }
    for a in 0..c.object_count() {
        writeln!(s, "  id {a}: {}", c.morphism_name(c.identity(a as u32))).unwrap();
    }
    let mut comps = Vec::new();
    let m = c.morphism_count() as u32;
    for f in 0..m {
        for g in 0..m {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.compose(g, f) {
                comps.push(format!(
                    "{} = {} . {}",
                    c.morphism_name(h),
                    c.morphism_name(g),
                    c.morphism_name(f)
                ));
            }
        }
    }
    if !comps.is_empty() {
        writeln!(s, "  compose: {}", comps.join(",\n           ")).unwrap();
    }
    s.push('}');
    s
}

pub fn monoid_decl(d: &MonoidDecl) -> String {
    let p = &d.presentation;
    let mut s = format!("monoid {} {{ generators: {}", d.name, p.generators.join(" "));
    if !p.relations.is_empty() {
        let rels: Vec<String> = p
            .relations
            .iter()
            .map(|w| {
                let text: String = w.iter().map(|&g| p.generators[g].as_str()).collect();
                if text.is_empty() {
                    "\"\"".into()
                } else {
                    text
                }
            })
            .collect();
        write!(s, "  relations: {}", rels.join(", ")).unwrap();
    }
    s.push_str(" }");
    s
}

fn with_clause(premises: &[String]) -> String {
    if premises.is_empty() {
        String::new()
    } else {
        format!(" with {}", premises.join(", "))
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Commerge { quiver, premises } => write!(f, "query commerge {quiver}{}", with_clause(premises)),
            Query::CommergeBounded {
                quiver,
                premises,
                bound,
            } => write!(f, "query commerge-bounded {quiver}{} bound {bound}", with_clause(premises)),
            Query::Dual(n) => write!(f, "query dual {n}"),
            Query::Paths(n) => write!(f, "query paths {n}"),
            Query::Eval { file, category } => write!(f, "query eval {} in {category}", word_or_quoted(file)),
            Query::Axioms { theory, budget } => {
                let t = match theory {
                    TheoryKind::Tcat => "tcat",
                    TheoryKind::Tab => "tab",
                };
                write!(
                    f,
                    "query axioms {t} budget {} {} {}",
                    budget.max_vertices, budget.max_arrows, budget.max_path_len
                )
            }
            Query::Encode { monoid, mode } => match mode {
                EncodeMode::Loop => write!(f, "query encode {monoid} loop"),
                EncodeMode::Layered(k) => write!(f, "query encode {monoid} layered {k}"),
                EncodeMode::Acyclic => write!(f, "query encode {monoid} acyclic"),
            },
        }
    }
}

impl Document {
    /// One declaration, resolving labels through earlier quivers.
    pub fn decl_text(&self, d: &Decl) -> String {
        match d {
            Decl::Quiver(q) => quiver_decl(q),
            Decl::Morphism(m) => {
                let labels = |n: &str| self.quiver(n).map(|q| q.labels.clone()).unwrap_or_default();
                morphism_decl(m, &labels(&m.source), &labels(&m.target))
            }
            Decl::Category(CategoryDecl { name, category }) => category_decl(name, category),
            Decl::Monoid(m) => monoid_decl(m),
            Decl::Query(q) => q.to_string(),
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{}", self.decl_text(d))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;

    #[test]
    fn round_trip() {
        let src = "quiver A { vertices: 2 arrows: x 0 1 }\n\
                   quiver B { vertices: 3 arrows: b 1 2, a 0 1 }\n\
                   morphism m : A -> B { arrows: x->b }\n\
                   monoid M { generators: a b relations: ab, \"\", b }\n\
                   category C { objects: 1 hom 0 0: e 1 id 0: 1 compose: e = e . e }\n\
                   query commerge B with m\nquery commerge-bounded B bound 4\nquery dual B\n\
                   query eval \"dir/has space.f\" in C\nquery eval f.txt in diamond\n\
                   query axioms tcat budget 2 2 2\nquery encode M acyclic\nquery paths A\n";
        let doc = parse(src).unwrap();
        let printed = doc.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(doc, again);
        assert_eq!(printed, again.to_string());
    }
}
