//! Browser bindings: run a document, list the paths of a quiver, dualize.
//!
//! Every function takes document text and returns plain text, so the page
//! needs no glue beyond the generated module.

use wasm_bindgen::prelude::*;

use chase_core::dsl::{self, RunOptions};
use chase_core::paths::{bounded_paths, enumerate_paths};

const NO_FILES: &str = "formula files are not available in the browser";

/// The report of `chase run`, followed by an `exit N` line.
#[wasm_bindgen]
pub fn run_document(src: &str, witness: bool) -> String {
    let doc = match dsl::parse(src) {
        Ok(d) => d,
        Err(e) => return format!("{e}\nexit {}", dsl::EXIT_INPUT),
    };
    let opts = RunOptions {
        witness,
        ..RunOptions::default()
    };
    let report = dsl::run(&doc, &opts, &|_| Err(NO_FILES.to_string()));
    format!("{}exit {}", report.text(), report.exit_code)
}

/// Paths of the named quiver, or of every quiver when `name` is empty.
/// Cyclic quivers are cut at length equal to their arrow count.
#[wasm_bindgen]
pub fn list_paths(src: &str, name: &str) -> String {
    let doc = match dsl::parse(src) {
        Ok(d) => d,
        Err(e) => return e.to_string(),
    };
    let mut out = String::new();
    let mut found = false;
    for d in &doc.decls {
        let dsl::Decl::Quiver(q) = d else { continue };
        if !name.is_empty() && q.name != name {
            continue;
        }
        found = true;
        let (paths, note) = match enumerate_paths(&q.quiver) {
            Ok(p) => (p, String::new()),
            Err(_) => {
                let bound = q.quiver.arrow_count().max(1);
                (bounded_paths(&q.quiver, bound), format!(" up to length {bound}"))
            }
        };
        out += &format!("{}: {} paths{note}\n", q.name, paths.len());
        for p in paths {
            out += &format!("  {}->{} {}\n", p.source(), p.target(), p.display_with(&q.labels));
        }
    }
    if !found {
        return format!("no quiver named `{name}`");
    }
    out
}

/// The dual document: arrows reversed, categories replaced by opposites.
#[wasm_bindgen]
pub fn dual_document(src: &str) -> String {
    match dsl::parse(src) {
        Ok(d) => dsl::dual_document(&d).to_string(),
        Err(e) => e.to_string(),
    }
}
