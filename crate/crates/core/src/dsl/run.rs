//! Executing queries and rendering their results as stable text.

use super::{Decl, Document, EncodeMode, Query, QuiverDecl, TheoryKind};
use crate::decide::{bounded_commerge_with, decide_commerge, decide_commerge_checked, CommergeInstance, Verdict};
use crate::formulas::parse::parse_formula;
use crate::formulas::schemas::{tab_axioms, tcat_axioms};
use crate::formulas::Signature;
use crate::models::{samples, Categorical, EvalLimits, Evaluator};
use crate::paths::{bounded_paths, enumerate_paths};
use crate::reductions::{acyclic_layered_quiver, layered_encoding, loop_encoding, Encoding};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// show witnesses by arrow label instead of id
    pub witness: bool,
    /// cross-check every decision against the naive closure
    pub oracle: bool,
    /// evaluation and countermodel search cap
    pub cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            witness: false,
            oracle: false,
            cap: EvalLimits::default().max_domain,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    fn emit(&mut self, line: impl Into<String>, code: i32) {
        self.lines.push(line.into());
        self.exit_code = self.exit_code.max(code);
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// Runs the queries in order. `loader` returns the contents of a formula file.
pub fn run(doc: &Document, opts: &RunOptions, loader: &dyn Fn(&str) -> Result<String, String>) -> Report {
    let mut report = Report::default();
    for q in doc.queries() {
        if let Err(msg) = run_query(doc, q, opts, loader, &mut report) {
            report.emit(format!("error: {q}: {msg}"), EXIT_INPUT);
        }
    }
    report
}

fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Valid => EXIT_OK,
        Verdict::Invalid { .. } => EXIT_INVALID,
        Verdict::Unknown { .. } => EXIT_UNKNOWN,
    }
}

fn show(v: &Verdict, labels: &[String], opts: &RunOptions) -> String {
    if opts.witness {
        v.display_with(labels)
    } else {
        v.to_string()
    }
}

fn instance(doc: &Document, quiver: &str, premises: &[String], sig: Signature) -> Result<(CommergeInstance, QuiverDecl), String> {
    let q = doc.quiver(quiver).ok_or("unknown quiver")?.clone();
    let ms = premises
        .iter()
        .map(|m| doc.morphism(m).map(|d| d.morphism.clone()).ok_or(format!("unknown morphism `{m}`")))
        .collect::<Result<Vec<_>, _>>()?;
    let inst = CommergeInstance::new(q.quiver.clone(), ms, sig).map_err(|e| e.to_string())?;
    Ok((inst, q))
}

fn decide(inst: &CommergeInstance, opts: &RunOptions) -> Result<Verdict, String> {
    let v = if opts.oracle {
        decide_commerge_checked(inst)
    } else {
        decide_commerge(inst)
    };
    v.map_err(|e| e.to_string())
}

fn run_query(
    doc: &Document,
    q: &Query,
    opts: &RunOptions,
    loader: &dyn Fn(&str) -> Result<String, String>,
    report: &mut Report,
) -> Result<(), String> {
    match q {
        Query::Commerge { quiver, premises } => {
            let (inst, decl) = instance(doc, quiver, premises, Signature::Sigma)?;
            let v = decide(&inst, opts)?;
            report.emit(show(&v, &decl.labels, opts), verdict_code(&v));
        }
        Query::CommergeBounded {
            quiver,
            premises,
            bound,
        } => {
            let (inst, decl) = instance(doc, quiver, premises, Signature::SigmaRing)?;
            let cats = samples::all();
            let cap = opts.cap.min(20_000);
            let (v, _) = bounded_commerge_with(&inst, *bound, &cats, cap).map_err(|e| e.to_string())?;
            if opts.oracle && inst.quiver.is_acyclic() && inst.premises.iter().all(|m| m.is_embedding()) {
                let checked = decide_commerge_checked(&inst).map_err(|e| e.to_string())?;
                if !matches!(v, Verdict::Unknown { .. }) && checked.is_valid() != v.is_valid() {
                    return Err(format!("oracle mismatch: {v} vs {checked}"));
                }
            }
            report.emit(show(&v, &decl.labels, opts), verdict_code(&v));
        }
        Query::Dual(name) => {
            let d = doc.find(name).ok_or("unknown name")?;
            let dual = dual_decl(doc, d);
            for line in doc_with(doc, &dual).lines() {
                report.emit(line, EXIT_OK);
            }
        }
        Query::Paths(name) => {
            let decl = doc.quiver(name).ok_or("unknown quiver")?;
            let (paths, head) = match enumerate_paths(&decl.quiver) {
                Ok(p) => (p, format!("paths {name}:")),
                Err(_) => {
                    let bound = decl.quiver.arrow_count().max(1);
                    (bounded_paths(&decl.quiver, bound), format!("paths {name} bound={bound}:"))
                }
            };
            report.emit(format!("{head} {}", paths.len()), EXIT_OK);
            for p in &paths {
                report.emit(
                    format!("  {}->{} {}", p.source(), p.target(), p.display_with(&decl.labels)),
                    EXIT_OK,
                );
            }
        }
        Query::Eval { file, category } => {
            let text = loader(file)?;
            let phi = parse_formula(&text, &doc.formula_env()).map_err(|e| format!("{file}: {e}"))?;
            let cat = match doc.category(category) {
                Some(c) => c.category.clone(),
                None => samples::by_name(category).ok_or("unknown category")?,
            };
            let interp = Categorical::new(cat);
            let mut ev = Evaluator::new(&interp, EvalLimits::with_cap(opts.cap));
            let head = format!("eval {file} in {category}:");
            match ev.eval(&phi) {
                Ok(true) => report.emit(format!("{head} true"), EXIT_OK),
                Ok(false) => report.emit(format!("{head} false"), EXIT_INVALID),
                Err(e) if e.is_resource() => report.emit(format!("{head} UNKNOWN ({e})"), EXIT_UNKNOWN),
                Err(e) => return Err(e.to_string()),
            }
        }
        Query::Axioms { theory, budget } => {
            let th = match theory {
                TheoryKind::Tcat => tcat_axioms(*budget),
                TheoryKind::Tab => tab_axioms(*budget),
            };
            let mut schemas: Vec<&str> = Vec::new();
            for a in &th.axioms {
                if !schemas.contains(&a.schema) {
                    schemas.push(a.schema);
                }
            }
            let counts: Vec<String> = schemas.iter().map(|s| format!("{s}={}", th.count(s))).collect();
            report.emit(
                format!(
                    "axioms {} budget {} {} {}: {} instances ({})",
                    th.name,
                    budget.max_vertices,
                    budget.max_arrows,
                    budget.max_path_len,
                    th.len(),
                    counts.join(" ")
                ),
                EXIT_OK,
            );
        }
        Query::Encode { monoid, mode } => {
            let p = &doc.monoid(monoid).ok_or("unknown monoid")?.presentation;
            let (enc, mode_text) = match mode {
                EncodeMode::Loop => (loop_encoding(p), "loop".to_string()),
                EncodeMode::Layered(k) => (layered_encoding(p, *k).map_err(|e| e.to_string())?, format!("layered {k}")),
                EncodeMode::Acyclic => {
                    let a = acyclic_layered_quiver(p).map_err(|e| e.to_string())?;
                    let inst = a.instance();
                    let enc = Encoding {
                        instance: inst,
                        labels: a.labels,
                        premise_names: a.premise_names,
                    };
                    (enc, format!("acyclic k={}", a.k))
                }
            };
            let inst = &enc.instance;
            report.emit(
                format!(
                    "encode {monoid} {mode_text}: vertices={} arrows={} premises={}",
                    inst.quiver.vertex_count(),
                    inst.quiver.arrow_count(),
                    inst.premises.len()
                ),
                EXIT_OK,
            );
            let sigma = CommergeInstance::new(inst.quiver.clone(), inst.premises.clone(), Signature::Sigma);
            if let Ok(sigma) = sigma {
                let v = decide(&sigma, opts)?;
                report.emit(show(&v, &enc.labels, opts), verdict_code(&v));
            }
        }
    }
    Ok(())
}

/// The dual of one declaration; quivers keep their labels on the reversed arrows.
fn dual_decl(doc: &Document, d: &Decl) -> Decl {
    match d {
        Decl::Quiver(q) => Decl::Quiver(dual_quiver_decl(q)),
        Decl::Morphism(m) => {
            let mut m = m.clone();
            m.morphism = m.morphism.dual();
            Decl::Morphism(m)
        }
        Decl::Category(c) => {
            let mut c = c.clone();
            c.category = c.category.opposite().with_name(c.name.clone());
            Decl::Category(c)
        }
        other => {
            let _ = doc;
            other.clone()
        }
    }
}

fn dual_quiver_decl(q: &QuiverDecl) -> QuiverDecl {
    let (dual, perm) = q.quiver.dual();
    let mut labels = vec![String::new(); q.labels.len()];
    for (a, l) in q.labels.iter().enumerate() {
        labels[perm.apply(a)] = l.clone();
    }
    QuiverDecl {
        name: q.name.clone(),
        quiver: dual,
        labels,
    }
}

/// Text of `d` printed against the dual document, so morphisms find dual labels.
fn doc_with(doc: &Document, d: &Decl) -> String {
    dual_document(doc).decl_text(d)
}

/// Every quiver, morphism and category replaced by its dual; monoids and
/// queries are kept. Formula files named by `eval` queries are not dualized.
pub fn dual_document(doc: &Document) -> Document {
    Document {
        decls: doc.decls.iter().map(|d| dual_decl(doc, d)).collect(),
        lines: doc.lines.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    const SQUARE: &str = "quiver Sq { vertices: 4  arrows: a 0 1, b 1 3, c 0 2, d 2 3, e 0 3 }\n\
        quiver T { vertices: 3  arrows: x 0 1, y 1 2, z 0 2 }\n\
        morphism top : T -> Sq { arrows: x->a, y->b, z->e }\n\
        morphism bot : T -> Sq { arrows: x->c, y->d, z->e }\n";

    fn no_files(_: &str) -> Result<String, String> {
        Err("no files".into())
    }

    fn run_src(src: &str, opts: RunOptions) -> Report {
        run(&parse(src).unwrap(), &opts, &no_files)
    }

    #[test]
    fn square_with_two_triangles() {
        let r = run_src(&format!("{SQUARE}query commerge Sq with top, bot\n"), RunOptions::default());
        assert_eq!((r.lines.clone(), r.exit_code), (vec!["VALID".to_string()], 0));
        let plain = "quiver S { vertices: 4  arrows: a 0 1, b 1 3, c 0 2, d 2 3 }\nquery commerge S\n";
        let r = run_src(plain, RunOptions { witness: true, ..Default::default() });
        assert_eq!((r.lines.clone(), r.exit_code), (vec!["INVALID p=[a,b] q=[c,d]".to_string()], EXIT_INVALID));
        let r = run_src(plain, RunOptions::default());
        assert_eq!(r.lines, ["INVALID p=[0,2] q=[1,3]"]);
    }

    #[test]
    fn dual_matches_primal() {
        let src = format!("{SQUARE}query commerge Sq with top\nquery commerge Sq with top, bot\n");
        let doc = parse(&src).unwrap();
        let dual = parse(&dual_document(&doc).to_string()).unwrap();
        let a = run(&doc, &RunOptions::default(), &no_files);
        let b = run(&dual, &RunOptions::default(), &no_files);
        let verdicts = |r: &Report| r.lines.iter().map(|l| l.split(' ').next().unwrap().to_string()).collect::<Vec<_>>();
        assert_eq!(verdicts(&a), verdicts(&b));
    }

    #[test]
    fn errors_are_exit_3_and_keep_going() {
        let src = "quiver L { vertices: 1  arrows: l 0 0 }\nquery commerge L\nquery paths L\n";
        let r = run_src(src, RunOptions::default());
        assert_eq!(r.exit_code, EXIT_INPUT);
        assert!(r.lines[0].starts_with("error: query commerge L:"));
        assert_eq!(r.lines[1], "paths L bound=1: 2");
    }

    #[test]
    fn eval_reads_formula_files() {
        let doc = parse("quiver P { vertices: 1 }\nquery eval f in terminal\nquery eval g in arrow\n").unwrap();
        let loader = |name: &str| -> Result<String, String> {
            Ok(match name {
                "f" => "forall[{1|}] x. commute(x)".into(),
                _ => "exists[{1|}] x. ~commute(x)".into(),
            })
        };
        let r = run(&doc, &RunOptions::default(), &loader);
        assert_eq!(r.lines, ["eval f in terminal: true", "eval g in arrow: false"]);
        assert_eq!(r.exit_code, EXIT_INVALID);
    }
}
