//! Many-sorted first-order formulas whose sorts are quivers.
//!
//! Terms are variables or restrictions `restr_m(t)`; atoms are `s ≈ t` and
//! `commute(t)`. Variables are named and carry their sort; schema builders
//! draw bound names from a [`schemas::Names`] supply so no capture occurs.

pub mod parse;
pub mod print;
pub mod schemas;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::quiver::{Quiver, QuiverMorphism};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Variable {
    pub name: String,
    pub sort: Quiver,
}

impl Variable {
    pub fn new(name: impl Into<String>, sort: Quiver) -> Variable {
        Variable {
            name: name.into(),
            sort,
        }
    }

    pub fn term(&self) -> Term {
        Term::Var(self.clone())
    }

    pub fn dual(&self) -> Variable {
        Variable {
            name: self.name.clone(),
            sort: self.sort.dual_quiver(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Variable),
    /// `restr_m(t)`: sort `dom(m)`, argument of sort `cod(m)`.
    Restr(QuiverMorphism, Box<Term>),
}

impl Term {
    pub fn restr(m: &QuiverMorphism, t: Term) -> Term {
        Term::Restr(m.clone(), Box::new(t))
    }

    /// The sort the term denotes (not checked against its argument).
    pub fn sort(&self) -> &Quiver {
        match self {
            Term::Var(v) => &v.sort,
            Term::Restr(m, _) => m.domain(),
        }
    }

    pub fn head_var(&self) -> &Variable {
        match self {
            Term::Var(v) => v,
            Term::Restr(_, t) => t.head_var(),
        }
    }

    pub fn dual(&self) -> Term {
        match self {
            Term::Var(v) => Term::Var(v.dual()),
            Term::Restr(m, t) => Term::Restr(m.dual(), Box::new(t.dual())),
        }
    }

    fn substitute(&self, var: &Variable, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) => self.clone(),
            Term::Restr(m, t) => Term::Restr(m.clone(), Box::new(t.substitute(var, by))),
        }
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v.name == from => Term::Var(Variable::new(to, v.sort.clone())),
            Term::Var(_) => self.clone(),
            Term::Restr(m, t) => Term::Restr(m.clone(), Box::new(t.rename(from, to))),
        }
    }

    fn morphisms<'a>(&'a self, out: &mut Vec<&'a QuiverMorphism>) {
        if let Term::Restr(m, t) = self {
            out.push(m);
            t.morphisms(out);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Eq(Term, Term),
    Commute(Term),
    Not(Box<Formula>),
    /// Empty conjunction is true.
    And(Vec<Formula>),
    /// Empty disjunction is false.
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Variable, Box<Formula>),
    Exists(Variable, Box<Formula>),
    ExistsUnique(Variable, Box<Formula>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Signature {
    /// Acyclic sorts, embeddings only.
    Sigma,
    /// Any finite quiver and any morphism.
    SigmaRing,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WfError(pub String);

impl fmt::Display for WfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for WfError {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuantKind {
    Forall,
    Exists,
    ExistsUnique,
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn commute(t: Term) -> Formula {
        Formula::Commute(t)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn tt() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn ff() -> Formula {
        Formula::Or(Vec::new())
    }

    /// Conjunction; a single conjunct is returned as is.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    pub fn or(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &Variable, body: Formula) -> Formula {
        Formula::Forall(v.clone(), Box::new(body))
    }

    pub fn exists(v: &Variable, body: Formula) -> Formula {
        Formula::Exists(v.clone(), Box::new(body))
    }

    pub fn exists_unique(v: &Variable, body: Formula) -> Formula {
        Formula::ExistsUnique(v.clone(), Box::new(body))
    }

    /// `∀v1 ... ∀vn. body`, outermost first.
    pub fn forall_all(vars: &[Variable], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |b, v| Formula::forall(v, b))
    }

    pub fn quantifier(kind: QuantKind, v: &Variable, body: Formula) -> Formula {
        match kind {
            QuantKind::Forall => Formula::forall(v, body),
            QuantKind::Exists => Formula::exists(v, body),
            QuantKind::ExistsUnique => Formula::exists_unique(v, body),
        }
    }

    pub fn as_quantifier(&self) -> Option<(QuantKind, &Variable, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((QuantKind::Forall, v, b)),
            Formula::Exists(v, b) => Some((QuantKind::Exists, v, b)),
            Formula::ExistsUnique(v, b) => Some((QuantKind::ExistsUnique, v, b)),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<Variable>) {
        let term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<Variable>| {
            let v = t.head_var();
            if !bound.contains(&v.name) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Formula::Commute(t) => term(t, bound, out),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) | Formula::ExistsUnique(v, f) => {
                bound.push(v.name.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Eq(a, b) => {
                out.insert(a.head_var().name.clone());
                out.insert(b.head_var().name.clone());
            }
            Formula::Commute(t) => {
                out.insert(t.head_var().name.clone());
            }
            Formula::Forall(v, _) | Formula::Exists(v, _) | Formula::ExistsUnique(v, _) => {
                out.insert(v.name.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Eq(..) | Formula::Commute(_) => {}
            Formula::Not(g) => g.visit(f),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.visit(f);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Forall(_, g) | Formula::Exists(_, g) | Formula::ExistsUnique(_, g) => {
                g.visit(f)
            }
        }
    }

    /// All sorts of variables and domains/codomains of restriction symbols.
    pub fn sorts(&self) -> BTreeSet<Quiver> {
        let mut out = BTreeSet::new();
        let mut terms: Vec<&Term> = Vec::new();
        self.visit(&mut |f| match f {
            Formula::Eq(a, b) => {
                terms.push(a);
                terms.push(b);
            }
            Formula::Commute(t) => terms.push(t),
            Formula::Forall(v, _) | Formula::Exists(v, _) | Formula::ExistsUnique(v, _) => {
                out.insert(v.sort.clone());
            }
            _ => {}
        });
        for t in terms {
            out.insert(t.head_var().sort.clone());
            let mut ms = Vec::new();
            t.morphisms(&mut ms);
            for m in ms {
                out.insert(m.domain().clone());
                out.insert(m.codomain().clone());
            }
        }
        out
    }

    /// Every restriction symbol occurring.
    pub fn morphisms(&self) -> Vec<QuiverMorphism> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            let mut ms = Vec::new();
            match f {
                Formula::Eq(a, b) => {
                    a.morphisms(&mut ms);
                    b.morphisms(&mut ms);
                }
                Formula::Commute(t) => t.morphisms(&mut ms),
                _ => {}
            }
            out.extend(ms.into_iter().cloned());
        });
        out
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Commute(_) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(Formula::quantifier_depth).max().unwrap_or(0)
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) | Formula::ExistsUnique(_, f) => {
                1 + f.quantifier_depth()
            }
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// The dual formula: every sort and restriction symbol replaced by its
    /// dual; names are kept.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.dual(), b.dual()),
            Formula::Commute(t) => Formula::Commute(t.dual()),
            Formula::Not(f) => Formula::not(f.dual()),
            Formula::And(fs) => Formula::And(fs.iter().map(Formula::dual).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(Formula::dual).collect()),
            Formula::Implies(a, b) => Formula::implies(a.dual(), b.dual()),
            Formula::Iff(a, b) => Formula::iff(a.dual(), b.dual()),
            Formula::Forall(v, f) => Formula::forall(&v.dual(), f.dual()),
            Formula::Exists(v, f) => Formula::exists(&v.dual(), f.dual()),
            Formula::ExistsUnique(v, f) => Formula::exists_unique(&v.dual(), f.dual()),
        }
    }

    /// Capture-avoiding substitution of the free occurrences of `var`.
    pub fn substitute(&self, var: &Variable, by: &Term) -> Formula {
        let by_names: BTreeSet<String> = {
            let mut s = BTreeSet::new();
            s.insert(by.head_var().name.clone());
            s
        };
        self.subst(var, by, &by_names)
    }

    fn subst(&self, var: &Variable, by: &Term, by_names: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(var, by), b.substitute(var, by)),
            Formula::Commute(t) => Formula::Commute(t.substitute(var, by)),
            Formula::Not(f) => Formula::not(f.subst(var, by, by_names)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.subst(var, by, by_names)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.subst(var, by, by_names)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(a.subst(var, by, by_names), b.subst(var, by, by_names))
            }
            Formula::Iff(a, b) => Formula::iff(a.subst(var, by, by_names), b.subst(var, by, by_names)),
            Formula::Forall(v, f) | Formula::Exists(v, f) | Formula::ExistsUnique(v, f) => {
                let (kind, _, _) = self.as_quantifier().unwrap();
                if v.name == var.name {
                    return self.clone();
                }
                if !f.free_vars().contains(var) {
                    return self.clone();
                }
                if by_names.contains(&v.name) {
                    let mut avoid = f.names();
                    avoid.extend(by_names.iter().cloned());
                    avoid.insert(var.name.clone());
                    let fresh = fresh_name(&v.name, &avoid);
                    let renamed = f.rename_free(&v.name, &fresh);
                    let nv = Variable::new(fresh, v.sort.clone());
                    Formula::quantifier(kind, &nv, renamed.subst(var, by, by_names))
                } else {
                    Formula::quantifier(kind, v, f.subst(var, by, by_names))
                }
            }
        }
    }

    /// Renames free occurrences of the name `from`.
    fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
            Formula::Commute(t) => Formula::Commute(t.rename(from, to)),
            Formula::Not(f) => Formula::not(f.rename_free(from, to)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename_free(from, to)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rename_free(from, to)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Iff(a, b) => Formula::iff(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Forall(v, f) | Formula::Exists(v, f) | Formula::ExistsUnique(v, f) => {
                if v.name == from {
                    self.clone()
                } else {
                    let (kind, _, _) = self.as_quantifier().unwrap();
                    Formula::quantifier(kind, v, f.rename_free(from, to))
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new())
    }

    /// Checks sorts, arities and the restrictions of the chosen signature.
    /// The diagnostic names the first violation found.
    pub fn well_formed(&self, sig: Signature) -> Result<(), WfError> {
        let mut scope: Vec<Variable> = Vec::new();
        let mut free: BTreeMap<String, Quiver> = BTreeMap::new();
        self.check(sig, &mut scope, &mut free)
    }

    fn check(
        &self,
        sig: Signature,
        scope: &mut Vec<Variable>,
        free: &mut BTreeMap<String, Quiver>,
    ) -> Result<(), WfError> {
        match self {
            Formula::Eq(a, b) => {
                check_term(a, sig, scope, free)?;
                check_term(b, sig, scope, free)?;
                if a.sort() != b.sort() {
                    return Err(WfError(format!(
                        "equation between sorts {:?} and {:?}",
                        a.sort(),
                        b.sort()
                    )));
                }
                Ok(())
            }
            Formula::Commute(t) => check_term(t, sig, scope, free),
            Formula::Not(f) => f.check(sig, scope, free),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().try_for_each(|f| f.check(sig, scope, free))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.check(sig, scope, free)?;
                b.check(sig, scope, free)
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) | Formula::ExistsUnique(v, f) => {
                check_sort(&v.sort, sig)?;
                scope.push(v.clone());
                let r = f.check(sig, scope, free);
                scope.pop();
                r
            }
        }
    }
}

fn check_sort(q: &Quiver, sig: Signature) -> Result<(), WfError> {
    if sig == Signature::Sigma && !q.is_acyclic() {
        return Err(WfError(format!("sort {q:?} is cyclic")));
    }
    Ok(())
}

fn check_term(
    t: &Term,
    sig: Signature,
    scope: &[Variable],
    free: &mut BTreeMap<String, Quiver>,
) -> Result<(), WfError> {
    match t {
        Term::Var(v) => {
            check_sort(&v.sort, sig)?;
            match scope.iter().rev().find(|b| b.name == v.name) {
                Some(b) if b.sort != v.sort => Err(WfError(format!(
                    "variable {} used at sort {:?} but bound at {:?}",
                    v.name, v.sort, b.sort
                ))),
                Some(_) => Ok(()),
                None => match free.get(&v.name) {
                    Some(s) if *s != v.sort => Err(WfError(format!(
                        "free variable {} used at two sorts",
                        v.name
                    ))),
                    _ => {
                        free.insert(v.name.clone(), v.sort.clone());
                        Ok(())
                    }
                },
            }
        }
        Term::Restr(m, arg) => {
            check_term(arg, sig, scope, free)?;
            if arg.sort() != m.codomain() {
                return Err(WfError(format!(
                    "restriction along {m:?} applied to a term of sort {:?}",
                    arg.sort()
                )));
            }
            if sig == Signature::Sigma {
                check_sort(m.domain(), sig)?;
                check_sort(m.codomain(), sig)?;
                if !m.is_embedding() {
                    return Err(WfError(format!("restriction along non-embedding {m:?}")));
                }
            }
            Ok(())
        }
    }
}

fn alpha(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
    fn var_eq(x: &Variable, y: &Variable, env: &[(String, String)]) -> bool {
        if x.sort != y.sort {
            return false;
        }
        for (l, r) in env.iter().rev() {
            if *l == x.name || *r == y.name {
                return *l == x.name && *r == y.name;
            }
        }
        x.name == y.name
    }
    fn term_eq(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
        match (s, t) {
            (Term::Var(x), Term::Var(y)) => var_eq(x, y, env),
            (Term::Restr(m, s), Term::Restr(n, t)) => m == n && term_eq(s, t, env),
            _ => false,
        }
    }
    match (a, b) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => term_eq(a1, b1, env) && term_eq(a2, b2, env),
        (Formula::Commute(s), Formula::Commute(t)) => term_eq(s, t, env),
        (Formula::Not(f), Formula::Not(g)) => alpha(f, g, env),
        (Formula::And(fs), Formula::And(gs)) | (Formula::Or(fs), Formula::Or(gs)) => {
            fs.len() == gs.len() && fs.iter().zip(gs).all(|(f, g)| alpha(f, g, env))
        }
        (Formula::Implies(a1, a2), Formula::Implies(b1, b2))
        | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => alpha(a1, b1, env) && alpha(a2, b2, env),
        _ => match (a.as_quantifier(), b.as_quantifier()) {
            (Some((k1, v1, f1)), Some((k2, v2, f2))) if k1 == k2 && v1.sort == v2.sort => {
                env.push((v1.name.clone(), v2.name.clone()));
                let r = alpha(f1, f2, env);
                env.pop();
                r
            }
            _ => false,
        },
    }
}

/// `base` with a numeric suffix, avoiding `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !used.contains(n))
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn arrow() -> Quiver {
        Quiver::path_quiver(1)
    }

    #[test]
    fn free_variables_and_closure() {
        let x = Variable::new("x", arrow());
        let y = Variable::new("y", arrow());
        let body = Formula::eq(x.term(), y.term());
        assert_eq!(body.free_vars().len(), 2);
        let closed = Formula::forall_all(&[x.clone(), y.clone()], body);
        assert!(closed.is_closed());
        assert_eq!(closed.quantifier_depth(), 2);
    }

    #[test]
    fn dual_is_involutive() {
        let q = Quiver::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let x = Variable::new("x", q.clone());
        let f = Formula::forall(&x, Formula::commute(Term::restr(&q.arrow_embedding(1), x.term())));
        let d = f.dual();
        assert_ne!(d, f);
        assert_eq!(d.dual(), f);
        assert!(d.well_formed(Signature::Sigma).is_ok());
    }

    #[test]
    fn commute_over_arrow_dualizes_to_reversed_arrow() {
        let x = Variable::new("x", arrow());
        let f = Formula::forall(&x, Formula::commute(x.term()));
        let Formula::Forall(v, _) = f.dual() else { panic!() };
        assert_eq!(v.sort.arrows(), &[(1, 0)]);
    }

    #[test]
    fn loop_sorts_rejected_for_sigma() {
        let lp = Quiver::new(1, &[(0, 0)]).unwrap();
        let x = Variable::new("x", lp);
        let f = Formula::forall(&x, Formula::commute(x.term()));
        assert!(f.well_formed(Signature::SigmaRing).is_ok());
        assert!(f.well_formed(Signature::Sigma).is_err());
    }

    #[test]
    fn non_embedding_rejected_for_sigma() {
        let par = Quiver::new(2, &[(0, 1), (0, 1)]).unwrap();
        let fold = QuiverMorphism::new(par.clone(), arrow(), vec![0, 1], vec![0, 0]).unwrap();
        let x = Variable::new("x", arrow());
        let f = Formula::forall(&x, Formula::commute(Term::restr(&fold, x.term())));
        assert!(f.well_formed(Signature::SigmaRing).is_ok());
        let err = f.well_formed(Signature::Sigma).unwrap_err();
        assert!(err.0.contains("non-embedding"));
    }

    #[test]
    fn ill_sorted_restriction_rejected() {
        let tri = Quiver::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let x = Variable::new("x", arrow());
        let f = Formula::forall(&x, Formula::commute(Term::restr(&tri.arrow_embedding(0), x.term())));
        assert!(f.well_formed(Signature::SigmaRing).is_err());
    }

    #[test]
    fn substitution_avoids_capture() {
        let x = Variable::new("x", arrow());
        let y = Variable::new("y", arrow());
        // ∀y. x = y, substitute x := y
        let f = Formula::forall(&y, Formula::eq(x.term(), y.term()));
        let g = f.substitute(&x, &y.term());
        let Formula::Forall(b, body) = &g else { panic!() };
        assert_ne!(b.name, "y");
        assert_eq!(**body, Formula::eq(y.term(), b.term()));
        assert!(g.free_vars().contains(&y));
    }

    #[test]
    fn alpha_equivalence() {
        let x = Variable::new("x", arrow());
        let y = Variable::new("y", arrow());
        let f = Formula::forall(&x, Formula::commute(x.term()));
        let g = Formula::forall(&y, Formula::commute(y.term()));
        assert!(f.alpha_eq(&g));
        let h = Formula::exists(&y, Formula::commute(y.term()));
        assert!(!f.alpha_eq(&h));
        let open = Formula::forall(&x, Formula::eq(x.term(), y.term()));
        let other = Formula::forall(&y, Formula::eq(y.term(), y.term()));
        assert!(!open.alpha_eq(&other));
    }

    #[test]
    fn fresh_names_skip_used() {
        let used: BTreeSet<String> = ["x1".to_string(), "x2".to_string()].into();
        assert_eq!(fresh_name("x", &used), "x3");
        assert_eq!(fresh_name("x1", &used), "x3");
    }
}
