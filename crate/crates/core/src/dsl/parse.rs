use std::collections::{BTreeMap, HashSet};

use super::{
    CategoryDecl, Decl, Document, DslError, EncodeMode, ErrorKind, MonoidDecl, MorphismDecl, Query, QuiverDecl,
    TheoryKind,
};
use crate::formulas::schemas::Budget;
use crate::models::{samples, CategoryBuilder, MorphId, ObjectId};
use crate::quiver::{Quiver, QuiverMorphism};
use crate::reductions::MonoidPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Punct(&'static str),
    Newline,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

impl Token {
    fn text(&self) -> String {
        match &self.tok {
            Tok::Word(w) => w.clone(),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Punct(p) => p.to_string(),
            Tok::Newline => "newline".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '/' | '-')
}

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, token: String, msg: &str| DslError {
        line,
        column,
        token,
        kind: ErrorKind::Syntax(msg.into()),
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, column: c0 });
        match c {
            '\n' => {
                push(&mut out, Tok::Newline);
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {}
            '{' | '}' | ':' | ',' | '=' | ';' => {
                let p = match c {
                    '{' => "{",
                    '}' => "}",
                    ':' => ":",
                    ',' => ",",
                    '=' => "=",
                    _ => ";",
                };
                push(&mut out, Tok::Punct(p));
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(&mut out, Tok::Punct("->"));
                i += 2;
                col += 2;
                continue;
            }
            '"' => {
                let mut s = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => return Err(err(l0, c0, "\"".into(), "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match chars.get(j + 1) {
                            Some(&e @ ('"' | '\\')) => {
                                s.push(e);
                                j += 2;
                            }
                            _ => return Err(err(line, col + (j - i), "\\".into(), "bad escape")),
                        },
                        Some(&ch) => {
                            s.push(ch);
                            j += 1;
                        }
                    }
                }
                push(&mut out, Tok::Str(s));
                col += j + 1 - i;
                i = j + 1;
                continue;
            }
            c if is_word_char(c) => {
                let mut j = i;
                while j < chars.len() && is_word_char(chars[j]) && !(chars[j] == '-' && chars.get(j + 1) == Some(&'>')) {
                    j += 1;
                }
                push(&mut out, Tok::Word(chars[i..j].iter().collect()));
                col += j - i;
                i = j;
                continue;
            }
            other => return Err(err(l0, c0, other.to_string(), "unexpected character")),
        }
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

const QUIVER_KEYS: &[&str] = &["vertices", "arrows"];
const CATEGORY_KEYS: &[&str] = &["objects", "hom", "id", "compose"];
const MONOID_KEYS: &[&str] = &["generators", "relations"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    doc: Document,
    names: HashSet<String>,
}

type PResult<T> = Result<T, DslError>;

fn error_at(t: &Token, kind: ErrorKind) -> DslError {
    DslError {
        line: t.line,
        column: t.column,
        token: t.text(),
        kind,
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(error_at(self.peek(), ErrorKind::Syntax(msg.into())))
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.next();
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek().tok, Tok::Punct(q) if q == p)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(x) if x == w)
    }

    fn punct(&mut self, p: &str) -> PResult<()> {
        if self.is_punct(p) {
            self.next();
            Ok(())
        } else {
            self.syntax(format!("expected `{p}`"))
        }
    }

    /// Inside braces, newlines only separate list items.
    fn punct_in_block(&mut self, p: &str) -> PResult<()> {
        self.skip_newlines();
        self.punct(p)
    }

    fn keyword(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.next();
            Ok(())
        } else {
            self.syntax(format!("expected `{w}`"))
        }
    }

    fn word(&mut self, what: &str) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                Ok((w, self.next()))
            }
            _ => self.syntax(format!("expected {what}")),
        }
    }

    fn word_or_str(&mut self, what: &str) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Word(w) | Tok::Str(w) => {
                let w = w.clone();
                Ok((w, self.next()))
            }
            _ => self.syntax(format!("expected {what}")),
        }
    }

    fn number(&mut self, what: &str) -> PResult<(usize, Token)> {
        let (w, t) = self.word(what)?;
        if let Ok(n) = w.parse::<usize>() {
            return Ok((n, t));
        }
        if w.starts_with('-') && w[1..].chars().all(|c| c.is_ascii_digit()) && w.len() > 1 {
            return Err(error_at(&t, ErrorKind::Range(format!("{what} must be non-negative"))));
        }
        Err(error_at(&t, ErrorKind::Syntax(format!("expected {what}"))))
    }

    fn bounded_number(&mut self, what: &str, limit: usize) -> PResult<usize> {
        let (n, t) = self.number(what)?;
        if n >= limit {
            return Err(error_at(&t, ErrorKind::Range(format!("{what} {n} not below {limit}"))));
        }
        Ok(n)
    }

    /// After an item: a comma continues the list (newlines allowed after it).
    fn list_continues(&mut self) -> bool {
        if self.is_punct(",") {
            self.next();
            self.skip_newlines();
            true
        } else {
            false
        }
    }

    /// A space-separated list stops at a newline, `;`, `}` or a block keyword.
    fn at_list_end(&self, keys: &[&str]) -> bool {
        match &self.peek().tok {
            Tok::Word(w) => keys.contains(&w.as_str()),
            _ => true,
        }
    }

    fn end_of_line(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline => {
                self.next();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.syntax("expected end of line"),
        }
    }

    fn block_key(&mut self, keys: &[&str]) -> PResult<Option<(String, Token)>> {
        loop {
            self.skip_newlines();
            if self.is_punct(";") {
                self.next();
                continue;
            }
            if self.is_punct("}") {
                self.next();
                return Ok(None);
            }
            let (w, t) = self.word("a block key or `}`")?;
            if !keys.contains(&w.as_str()) {
                return Err(error_at(
                    &t,
                    ErrorKind::Syntax(format!("unknown key, expected one of {}", keys.join(", "))),
                ));
            }
            return Ok(Some((w, t)));
        }
    }

    fn declare(&mut self, t: &Token, name: &str) -> PResult<()> {
        if !self.names.insert(name.to_string()) {
            return Err(error_at(t, ErrorKind::Duplicate(name.into())));
        }
        Ok(())
    }

    fn push(&mut self, line: usize, d: Decl) {
        self.doc.decls.push(d);
        self.doc.lines.push(line);
    }

    fn document(mut self) -> PResult<Document> {
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::Eof {
                return Ok(self.doc);
            }
            let (kw, t) = self.word("a declaration")?;
            let decl = match kw.as_str() {
                "quiver" => Decl::Quiver(self.quiver()?),
                "morphism" => Decl::Morphism(self.morphism()?),
                "category" => Decl::Category(self.category()?),
                "monoid" => Decl::Monoid(self.monoid()?),
                "query" => Decl::Query(self.query()?),
                _ => {
                    return Err(error_at(
                        &t,
                        ErrorKind::Syntax("expected quiver, morphism, category, monoid or query".into()),
                    ))
                }
            };
            self.end_of_line()?;
            self.push(t.line, decl);
        }
    }

    fn quiver(&mut self) -> PResult<QuiverDecl> {
        let (name, nt) = self.word("a quiver name")?;
        self.declare(&nt, &name)?;
        self.punct_in_block("{")?;
        let mut vertices = None;
        let mut arrows: Vec<(String, Token, usize, usize)> = Vec::new();
        while let Some((key, kt)) = self.block_key(QUIVER_KEYS)? {
            self.punct(":")?;
            match key.as_str() {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(error_at(&kt, ErrorKind::Duplicate("vertices".into())));
                    }
                    vertices = Some(self.number("a vertex count")?.0);
                }
                _ => {
                    let n = vertices.ok_or_else(|| error_at(&kt, ErrorKind::Syntax("`vertices` must come first".into())))?;
                    if self.at_list_end(QUIVER_KEYS) {
                        continue;
                    }
                    loop {
                        let (label, lt) = self.word("an arrow label")?;
                        if arrows.iter().any(|a| a.0 == label) {
                            return Err(error_at(&lt, ErrorKind::Duplicate(label)));
                        }
                        let s = self.bounded_number("source vertex", n)?;
                        let t = self.bounded_number("target vertex", n)?;
                        arrows.push((label, lt, s, t));
                        if !self.list_continues() {
                            break;
                        }
                    }
                }
            }
        }
        let n = vertices.ok_or_else(|| error_at(&nt, ErrorKind::Syntax("missing `vertices`".into())))?;
        let pairs: Vec<(usize, usize)> = arrows.iter().map(|a| (a.2, a.3)).collect();
        let (quiver, perm) = Quiver::canonicalize(n, &pairs).map_err(|e| error_at(&nt, ErrorKind::Invariant(e.to_string())))?;
        let mut labels = vec![String::new(); arrows.len()];
        for (i, a) in arrows.into_iter().enumerate() {
            labels[perm.apply(i)] = a.0;
        }
        Ok(QuiverDecl { name, quiver, labels })
    }

    fn quiver_ref(&mut self) -> PResult<(QuiverDecl, Token)> {
        let (name, t) = self.word("a quiver name")?;
        match self.doc.quiver(&name) {
            Some(q) => Ok((q.clone(), t)),
            None => Err(error_at(&t, ErrorKind::Unresolved(format!("no quiver named `{name}`")))),
        }
    }

    fn morphism(&mut self) -> PResult<MorphismDecl> {
        let (name, nt) = self.word("a morphism name")?;
        self.declare(&nt, &name)?;
        self.punct(":")?;
        let (src, _) = self.quiver_ref()?;
        self.punct("->")?;
        let (dst, _) = self.quiver_ref()?;
        self.punct_in_block("{")?;
        let (n, m) = (src.quiver.vertex_count(), dst.quiver.vertex_count());
        let mut vmap: Vec<Option<(usize, Token)>> = vec![None; n];
        let mut amap: Vec<Option<usize>> = vec![None; src.quiver.arrow_count()];
        let set_vertex = |vmap: &mut Vec<Option<(usize, Token)>>, v: usize, w: usize, t: &Token| match &vmap[v] {
            Some((old, _)) if *old != w => Err(error_at(
                t,
                ErrorKind::Invariant(format!("vertex {v} sent to both {old} and {w}")),
            )),
            _ => {
                vmap[v] = Some((w, t.clone()));
                Ok(())
            }
        };
        while let Some((key, _)) = self.block_key(QUIVER_KEYS)? {
            self.punct(":")?;
            if self.at_list_end(QUIVER_KEYS) {
                continue;
            }
            loop {
                if key == "vertices" {
                    let t = self.peek().clone();
                    let v = self.bounded_number("source vertex", n)?;
                    self.punct("->")?;
                    let w = self.bounded_number("target vertex", m)?;
                    set_vertex(&mut vmap, v, w, &t)?;
                } else {
                    let (l1, t1) = self.word("an arrow label")?;
                    let a = src.labels.iter().position(|l| *l == l1).ok_or_else(|| {
                        error_at(&t1, ErrorKind::Unresolved(format!("no arrow `{l1}` in `{}`", src.name)))
                    })?;
                    self.punct("->")?;
                    let (l2, t2) = self.word("an arrow label")?;
                    let b = dst.labels.iter().position(|l| *l == l2).ok_or_else(|| {
                        error_at(&t2, ErrorKind::Unresolved(format!("no arrow `{l2}` in `{}`", dst.name)))
                    })?;
                    if amap[a].is_some_and(|old| old != b) {
                        return Err(error_at(&t1, ErrorKind::Invariant(format!("arrow `{l1}` mapped twice"))));
                    }
                    amap[a] = Some(b);
                    let (s, t) = src.quiver.arrows()[a];
                    let (s2, t2v) = dst.quiver.arrows()[b];
                    set_vertex(&mut vmap, s, s2, &t1)?;
                    set_vertex(&mut vmap, t, t2v, &t1)?;
                }
                if !self.list_continues() {
                    break;
                }
            }
        }
        let invariant = |msg: String| error_at(&nt, ErrorKind::Invariant(msg));
        let vertex_map = vmap
            .iter()
            .enumerate()
            .map(|(v, x)| x.as_ref().map(|x| x.0).ok_or_else(|| invariant(format!("vertex {v} has no image"))))
            .collect::<PResult<Vec<_>>>()?;
        let arrow_map = amap
            .iter()
            .enumerate()
            .map(|(a, x)| x.ok_or_else(|| invariant(format!("arrow `{}` has no image", src.labels[a]))))
            .collect::<PResult<Vec<_>>>()?;
        let morphism = QuiverMorphism::new(src.quiver.clone(), dst.quiver.clone(), vertex_map, arrow_map)
            .map_err(|e| invariant(e.to_string()))?;
        Ok(MorphismDecl {
            name,
            source: src.name,
            target: dst.name,
            morphism,
        })
    }

    fn category(&mut self) -> PResult<CategoryDecl> {
        let (name, nt) = self.word("a category name")?;
        self.declare(&nt, &name)?;
        self.punct_in_block("{")?;
        let mut objects = None;
        let mut homs: Vec<(usize, usize, String, Token)> = Vec::new();
        let mut ids: Vec<(usize, String, Token)> = Vec::new();
        let mut comps: Vec<[(String, Token); 3]> = Vec::new();
        while let Some((key, kt)) = self.block_key(CATEGORY_KEYS)? {
            if key == "objects" {
                self.punct(":")?;
                if objects.is_some() {
                    return Err(error_at(&kt, ErrorKind::Duplicate("objects".into())));
                }
                objects = Some(self.number("an object count")?.0);
                continue;
            }
            let n = objects.ok_or_else(|| error_at(&kt, ErrorKind::Syntax("`objects` must come first".into())))?;
            match key.as_str() {
                "hom" => {
                    let a = self.bounded_number("object", n)?;
                    let b = self.bounded_number("object", n)?;
                    self.punct(":")?;
                    while !self.at_list_end(CATEGORY_KEYS) {
                        let (f, ft) = self.word("a morphism name")?;
                        if homs.iter().any(|h| h.0 == a && h.1 == b && h.2 == f) {
                            return Err(error_at(&ft, ErrorKind::Duplicate(f)));
                        }
                        homs.push((a, b, f, ft));
                    }
                }
                "id" => {
                    let a = self.bounded_number("object", n)?;
                    self.punct(":")?;
                    let (f, ft) = self.word("a morphism name")?;
                    if ids.iter().any(|i| i.0 == a) {
                        return Err(error_at(&ft, ErrorKind::Duplicate(format!("id {a}"))));
                    }
                    ids.push((a, f, ft));
                }
                _ => {
                    self.punct(":")?;
                    if self.at_list_end(CATEGORY_KEYS) {
                        continue;
                    }
                    loop {
                        let h = self.word("a morphism name")?;
                        self.punct("=")?;
                        let g = self.word("a morphism name")?;
                        if !self.is_word(".") {
                            return self.syntax("expected `.`");
                        }
                        self.next();
                        let f = self.word("a morphism name")?;
                        comps.push([h, g, f]);
                        if !self.list_continues() {
                            break;
                        }
                    }
                }
            }
        }
        let n = objects.ok_or_else(|| error_at(&nt, ErrorKind::Syntax("missing `objects`".into())))?;
        homs.sort_by_key(|h| (h.0, h.1));
        let mut b = CategoryBuilder::new(name.clone(), n);
        for (s, t, f, ft) in &homs {
            b.morphism(f.clone(), *s as ObjectId, *t as ObjectId)
                .map_err(|e| error_at(ft, ErrorKind::Invariant(e.to_string())))?;
        }
        for (a, f, ft) in &ids {
            let id = b
                .find(f, *a as ObjectId, *a as ObjectId)
                .ok_or_else(|| error_at(ft, ErrorKind::Unresolved(format!("no morphism `{f}` in hom({a}, {a})"))))?;
            b.identity(*a as ObjectId, id).map_err(|e| error_at(ft, ErrorKind::Invariant(e.to_string())))?;
        }
        let by_name = |name: &str| -> Vec<MorphId> {
            homs.iter()
                .enumerate()
                .filter(|(_, h)| h.2 == name)
                .map(|(i, _)| i as MorphId)
                .collect()
        };
        for [(h, ht), (g, gt), (f, ft)] in &comps {
            let (hs, gs, fs) = (by_name(h), by_name(g), by_name(f));
            for (list, name, t) in [(&hs, h, ht), (&gs, g, gt), (&fs, f, ft)] {
                if list.is_empty() {
                    return Err(error_at(t, ErrorKind::Unresolved(format!("no morphism named `{name}`"))));
                }
            }
            let mut found = Vec::new();
            for &fi in &fs {
                for &gi in &gs {
                    for &hi in &hs {
                        if b.target_of(fi) == b.source_of(gi)
                            && b.source_of(hi) == b.source_of(fi)
                            && b.target_of(hi) == b.target_of(gi)
                        {
                            found.push((hi, gi, fi));
                        }
                    }
                }
            }
            match found.as_slice() {
                [(hi, gi, fi)] => b
                    .compose(*hi, *gi, *fi)
                    .map_err(|e| error_at(ht, ErrorKind::Invariant(e.to_string())))?,
                [] => {
                    return Err(error_at(
                        ht,
                        ErrorKind::Invariant(format!("`{h} = {g} . {f}` has mismatched endpoints")),
                    ))
                }
                _ => return Err(error_at(ht, ErrorKind::Syntax(format!("`{h} = {g} . {f}` is ambiguous")))),
            }
        }
        let category = b.build().map_err(|e| error_at(&nt, ErrorKind::Invariant(e.to_string())))?;
        Ok(CategoryDecl { name, category })
    }

    fn monoid(&mut self) -> PResult<MonoidDecl> {
        let (name, nt) = self.word("a monoid name")?;
        self.declare(&nt, &name)?;
        self.punct_in_block("{")?;
        let mut gens: Vec<String> = Vec::new();
        let mut rels = Vec::new();
        let mut seen_gens = false;
        while let Some((key, kt)) = self.block_key(MONOID_KEYS)? {
            self.punct(":")?;
            if key == "generators" {
                if seen_gens {
                    return Err(error_at(&kt, ErrorKind::Duplicate("generators".into())));
                }
                seen_gens = true;
                while !self.at_list_end(MONOID_KEYS) {
                    let (g, gt) = self.word("a generator")?;
                    if g.chars().count() != 1 {
                        return Err(error_at(&gt, ErrorKind::Invariant("generators are single characters".into())));
                    }
                    if gens.contains(&g) {
                        return Err(error_at(&gt, ErrorKind::Duplicate(g)));
                    }
                    gens.push(g);
                }
                continue;
            }
            if !seen_gens {
                return Err(error_at(&kt, ErrorKind::Syntax("`generators` must come first".into())));
            }
            if !matches!(self.peek().tok, Tok::Str(_)) && self.at_list_end(MONOID_KEYS) {
                continue;
            }
            loop {
                let (w, wt) = self.word_or_str("a relator")?;
                let mut word = Vec::new();
                for c in w.chars() {
                    let i = gens.iter().position(|g| g.starts_with(c)).ok_or_else(|| {
                        error_at(&wt, ErrorKind::Unresolved(format!("`{c}` is not a generator")))
                    })?;
                    word.push(i);
                }
                rels.push(word);
                if !self.list_continues() {
                    break;
                }
            }
        }
        let presentation =
            MonoidPresentation::new(gens, rels).map_err(|e| error_at(&nt, ErrorKind::Invariant(e.to_string())))?;
        Ok(MonoidDecl { name, presentation })
    }

    fn premises(&mut self, quiver: &QuiverDecl) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        if !self.is_word("with") {
            return Ok(out);
        }
        self.next();
        loop {
            let (m, mt) = self.word("a morphism name")?;
            let decl = self
                .doc
                .morphism(&m)
                .ok_or_else(|| error_at(&mt, ErrorKind::Unresolved(format!("no morphism named `{m}`"))))?;
            if decl.morphism.codomain() != &quiver.quiver {
                return Err(error_at(
                    &mt,
                    ErrorKind::Invariant(format!("`{m}` does not land in `{}`", quiver.name)),
                ));
            }
            out.push(m);
            if !self.is_punct(",") {
                return Ok(out);
            }
            self.next();
        }
    }

    fn query(&mut self) -> PResult<Query> {
        let (kind, kt) = self.word("a query kind")?;
        match kind.as_str() {
            "commerge" | "commerge-bounded" => {
                let (q, _) = self.quiver_ref()?;
                let premises = self.premises(&q)?;
                if kind == "commerge" {
                    return Ok(Query::Commerge {
                        quiver: q.name,
                        premises,
                    });
                }
                self.keyword("bound")?;
                let bound = self.number("a path length bound")?.0;
                Ok(Query::CommergeBounded {
                    quiver: q.name,
                    premises,
                    bound,
                })
            }
            "dual" => {
                let (n, t) = self.word("a declaration name")?;
                match self.doc.find(&n) {
                    Some(Decl::Quiver(_) | Decl::Morphism(_) | Decl::Category(_)) => Ok(Query::Dual(n)),
                    _ => Err(error_at(&t, ErrorKind::Unresolved(format!("no quiver, morphism or category `{n}`")))),
                }
            }
            "paths" => Ok(Query::Paths(self.quiver_ref()?.0.name)),
            "eval" => {
                let (file, _) = self.word_or_str("a formula file")?;
                self.keyword("in")?;
                let (c, ct) = self.word("a category name")?;
                if self.doc.category(&c).is_none() && samples::by_name(&c).is_none() {
                    return Err(error_at(&ct, ErrorKind::Unresolved(format!("no category named `{c}`"))));
                }
                Ok(Query::Eval { file, category: c })
            }
            "axioms" => {
                let (th, tt) = self.word("tcat or tab")?;
                let theory = match th.as_str() {
                    "tcat" => TheoryKind::Tcat,
                    "tab" => TheoryKind::Tab,
                    _ => return Err(error_at(&tt, ErrorKind::Syntax("expected tcat or tab".into()))),
                };
                self.keyword("budget")?;
                let budget = Budget {
                    max_vertices: self.number("a vertex bound")?.0,
                    max_arrows: self.number("an arrow bound")?.0,
                    max_path_len: self.number("a path length bound")?.0,
                };
                Ok(Query::Axioms { theory, budget })
            }
            "encode" => {
                let (m, mt) = self.word("a monoid name")?;
                if self.doc.monoid(&m).is_none() {
                    return Err(error_at(&mt, ErrorKind::Unresolved(format!("no monoid named `{m}`"))));
                }
                let (mode, modet) = self.word("loop, layered or acyclic")?;
                let mode = match mode.as_str() {
                    "loop" => EncodeMode::Loop,
                    "acyclic" => EncodeMode::Acyclic,
                    "layered" => EncodeMode::Layered(self.number("a layer count")?.0),
                    _ => return Err(error_at(&modet, ErrorKind::Syntax("expected loop, layered or acyclic".into()))),
                };
                Ok(Query::Encode { monoid: m, mode })
            }
            _ => Err(error_at(
                &kt,
                ErrorKind::Syntax("expected commerge, commerge-bounded, dual, paths, eval, axioms or encode".into()),
            )),
        }
    }
}

/// Parses a whole document; the first error stops parsing.
pub fn parse(src: &str) -> Result<Document, DslError> {
    let toks = lex(src)?;
    Parser {
        toks,
        pos: 0,
        doc: Document::default(),
        names: HashSet::new(),
    }
    .document()
}

/// Object pairs in hom order, for printing.
pub(super) fn hom_order(c: &crate::models::FiniteCategory) -> BTreeMap<(usize, usize), Vec<MorphId>> {
    let mut out = BTreeMap::new();
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let h = c.hom(a as ObjectId, b as ObjectId);
            if !h.is_empty() {
                out.insert((a, b), h.to_vec());
            }
        }
    }
    out
}

pub(super) fn is_plain_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_word_char) && !s.contains("->")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> (usize, usize, ErrorKind) {
        let e = parse(src).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn pushout_shape_canonicalizes() {
        let doc = parse("quiver P { vertices: 5  arrows: d 3 4, c 2 4, b 1 3, a 0 1, e 0 2 }").unwrap();
        let q = doc.quiver("P").unwrap();
        assert_eq!(q.quiver.vertex_count(), 5);
        assert_eq!(q.quiver.arrow_count(), 5);
        assert_eq!(q.labels, ["a", "e", "b", "c", "d"]);
    }

    #[test]
    fn negative_vertex_count_is_a_range_error() {
        let (line, col, k) = kind("\nquiver Q { vertices: -1 }");
        assert_eq!((line, col), (2, 22));
        assert!(matches!(k, ErrorKind::Range(_)));
    }

    #[test]
    fn error_kinds_are_distinct() {
        assert!(matches!(kind("quiver Q { vertices 1 }").2, ErrorKind::Syntax(_)));
        assert!(matches!(kind("quiver Q { vertices: 1 }\nquiver Q { vertices: 1 }").2, ErrorKind::Duplicate(_)));
        assert!(matches!(kind("query paths Nope").2, ErrorKind::Unresolved(_)));
        assert!(matches!(kind("quiver Q { vertices: 2 arrows: a 0 2 }").2, ErrorKind::Range(_)));
        let bad_cat = "category C { objects: 1  hom 0 0: e }";
        assert!(matches!(kind(bad_cat).2, ErrorKind::Invariant(_)));
    }

    #[test]
    fn morphism_infers_vertices() {
        let src = "quiver A { vertices: 2  arrows: x 0 1 }\n\
                   quiver B { vertices: 3  arrows: a 0 1, b 1 2 }\n\
                   morphism m : A -> B { arrows: x->b }";
        let doc = parse(src).unwrap();
        assert_eq!(doc.morphism("m").unwrap().morphism.vertex_map(), &[1, 2]);
        let missing = "quiver A { vertices: 1 }\nquiver B { vertices: 1 }\nmorphism m : A -> B { }";
        assert!(matches!(kind(missing).2, ErrorKind::Invariant(_)));
    }

    #[test]
    fn category_with_composites() {
        let src = "category C {\n  objects: 2\n  hom 0 1: f\n  hom 0 0: 1A e\n  hom 1 1: 1B\n  id 0: 1A\n  id 1: 1B\n  compose: e = e . e, f = f . e\n}";
        let doc = parse(src).unwrap();
        let c = &doc.category("C").unwrap().category;
        assert_eq!(c.morphism_count(), 4);
        // ids follow hom order, not declaration order
        assert_eq!(c.morphism_name(0), "1A");
        assert_eq!(c.morphism_name(2), "f");
    }

    #[test]
    fn monoid_and_queries() {
        let src = "monoid M { generators: a b; relations: ab, \"\" }\nquery encode M layered 3\nquery axioms tab budget 1 2 3";
        let doc = parse(src).unwrap();
        assert_eq!(doc.monoid("M").unwrap().presentation.relations, vec![vec![0, 1], vec![]]);
        assert_eq!(doc.queries().count(), 2);
    }

    #[test]
    fn comments_and_continuations() {
        let src = "# a square\nquiver S { vertices: 4  # corners\n  arrows: a 0 1, b 1 3,\n          c 0 2, d 2 3 }\n";
        assert_eq!(parse(src).unwrap().quiver("S").unwrap().quiver.arrow_count(), 4);
    }

    #[test]
    fn garbage_is_located() {
        let e = parse("quiver Q { vertices: 1 } @").unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (1, 26, "@"));
    }
}
