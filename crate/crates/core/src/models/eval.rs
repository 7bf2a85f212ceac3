//! Tarskian evaluation over finite interpretations.
//!
//! Formulas are compiled to a slot machine first. Each quantifier looks for
//! guards in its body: conjuncts that must hold for the body to matter, such
//! as the premises of a universal or the conjuncts of an existential. Guards of
//! the form `restr_m(x) = t`, with `t` already bound, become fiber constraints
//! so the candidates for `x` are enumerated directly instead of filtered from
//! the whole domain. Quantifier results are memoized on the values of their
//! free variables.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::interp::Interpretation;
use super::EvalError;
use crate::formulas::{Formula, QuantKind, Term, Variable};
use crate::quiver::{Quiver, QuiverMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalLimits {
    /// Largest domain or fiber ever materialized.
    pub max_domain: usize,
    /// Total quantifier steps allowed per evaluation.
    pub max_work: Option<u64>,
    /// Memo entries kept before the table is flushed.
    pub memo_entries: usize,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            max_domain: 200_000,
            max_work: None,
            memo_entries: 1 << 20,
        }
    }
}

impl EvalLimits {
    pub fn with_cap(max_domain: usize) -> EvalLimits {
        EvalLimits {
            max_domain,
            ..EvalLimits::default()
        }
    }
}

#[derive(Debug, Clone)]
enum CTerm {
    Slot(usize),
    Restr(usize, Box<CTerm>),
}

#[derive(Debug, Clone)]
enum Node {
    Eq(CTerm, CTerm),
    Commute(usize, CTerm),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Quant(Box<QNode>),
}

#[derive(Debug, Clone)]
struct QNode {
    kind: QuantKind,
    slot: usize,
    sort: usize,
    body: Node,
    /// `restr_r(x) = value`
    constraints: Vec<(usize, CTerm)>,
    filters: Vec<Node>,
    memo_id: usize,
    memo_keys: Vec<usize>,
    /// off when the body is cheap or the fiber is a single point
    memo: bool,
}

struct Program<I: Interpretation> {
    sorts: Vec<I::Sort>,
    sort_quivers: Vec<Quiver>,
    restrs: Vec<I::Restr>,
    root: Node,
    slots: usize,
}

struct Compiler<'a, I: Interpretation> {
    interp: &'a I,
    sort_ids: HashMap<Quiver, usize>,
    sorts: Vec<I::Sort>,
    sort_quivers: Vec<Quiver>,
    restr_ids: HashMap<QuiverMorphism, usize>,
    restrs: Vec<I::Restr>,
    morphisms: Vec<QuiverMorphism>,
    scope: Vec<(Variable, usize)>,
    slot_sorts: Vec<Quiver>,
    memo_count: usize,
}

impl<'a, I: Interpretation> Compiler<'a, I> {
    fn new(interp: &'a I) -> Self {
        Compiler {
            interp,
            sort_ids: HashMap::new(),
            sorts: Vec::new(),
            sort_quivers: Vec::new(),
            restr_ids: HashMap::new(),
            restrs: Vec::new(),
            morphisms: Vec::new(),
            scope: Vec::new(),
            slot_sorts: Vec::new(),
            memo_count: 0,
        }
    }

    fn sort(&mut self, q: &Quiver) -> Result<usize, EvalError> {
        if let Some(&i) = self.sort_ids.get(q) {
            return Ok(i);
        }
        let s = self.interp.sort(q)?;
        self.sorts.push(s);
        self.sort_quivers.push(q.clone());
        self.sort_ids.insert(q.clone(), self.sorts.len() - 1);
        Ok(self.sorts.len() - 1)
    }

    fn restr(&mut self, m: &QuiverMorphism) -> Result<usize, EvalError> {
        if let Some(&i) = self.restr_ids.get(m) {
            return Ok(i);
        }
        let r = self.interp.restriction(m)?;
        self.restrs.push(r);
        self.morphisms.push(m.clone());
        self.restr_ids.insert(m.clone(), self.restrs.len() - 1);
        Ok(self.restrs.len() - 1)
    }

    fn bind(&mut self, v: &Variable) -> usize {
        let slot = self.slot_sorts.len();
        self.slot_sorts.push(v.sort.clone());
        self.scope.push((v.clone(), slot));
        slot
    }

    fn term(&mut self, t: &Term) -> Result<CTerm, EvalError> {
        match t {
            Term::Var(v) => self
                .scope
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|&(_, s)| CTerm::Slot(s))
                .ok_or_else(|| EvalError::FreeVariable(v.name.clone())),
            Term::Restr(m, inner) => {
                if m.codomain() != inner.sort() {
                    return Err(EvalError::IllSorted(format!("restr[{m}]({inner})")));
                }
                let inner = self.term(inner)?;
                Ok(CTerm::Restr(self.restr(m)?, Box::new(inner)))
            }
        }
    }

    fn formula(&mut self, phi: &Formula) -> Result<Node, EvalError> {
        Ok(match phi {
            Formula::Eq(a, b) => {
                if a.sort() != b.sort() {
                    return Err(EvalError::IllSorted(format!("{a} = {b}")));
                }
                Node::Eq(self.term(a)?, self.term(b)?)
            }
            Formula::Commute(t) => {
                let s = self.sort(t.sort())?;
                Node::Commute(s, self.term(t)?)
            }
            Formula::Not(a) => Node::Not(Box::new(self.formula(a)?)),
            Formula::And(cs) => Node::And(cs.iter().map(|c| self.formula(c)).collect::<Result<_, _>>()?),
            Formula::Or(cs) => Node::Or(cs.iter().map(|c| self.formula(c)).collect::<Result<_, _>>()?),
            Formula::Implies(a, b) => Node::Implies(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Iff(a, b) => Node::Iff(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Forall(v, body) | Formula::Exists(v, body) | Formula::ExistsUnique(v, body) => {
                let kind = phi.as_quantifier().unwrap().0;
                let sort = self.sort(&v.sort)?;
                let outer: BTreeSet<usize> = self.scope.iter().map(|&(_, s)| s).collect();
                let slot = self.bind(v);
                let body = self.formula(body);
                self.scope.pop();
                let body = body?;
                let (constraints, filters) = self.guards(kind, slot, &outer, &body);
                let mut keys = free_slots(&body);
                keys.remove(&slot);
                let memo = has_quantifier(&body) && !self.determined(&v.sort, &constraints);
                self.memo_count += 1;
                Node::Quant(Box::new(QNode {
                    kind,
                    slot,
                    sort,
                    body,
                    constraints,
                    filters,
                    memo_id: self.memo_count - 1,
                    memo_keys: keys.into_iter().collect(),
                    memo,
                }))
            }
        })
    }

    fn guards(
        &mut self,
        kind: QuantKind,
        x: usize,
        outer: &BTreeSet<usize>,
        body: &Node,
    ) -> (Vec<(usize, CTerm)>, Vec<Node>) {
        let mut found = Vec::new();
        match kind {
            QuantKind::Forall => premises(body, &mut found),
            _ => conjuncts(body, &mut found),
        }
        let mut constraints = Vec::new();
        let mut filters = Vec::new();
        for n in found {
            let free = free_slots(n);
            if !free.contains(&x) || !free.iter().all(|s| *s == x || outer.contains(s)) {
                continue;
            }
            if let Node::Eq(l, r) = n {
                let fixed = [(l, r), (r, l)].into_iter().find_map(|(chain, value)| {
                    let mut slots = BTreeSet::new();
                    term_slots(value, &mut slots);
                    if slots.contains(&x) {
                        return None;
                    }
                    let m = self.chain_composite(chain, x)?;
                    let id = self.restr(&m).ok()?;
                    Some((id, value.clone()))
                });
                if let Some(c) = fixed {
                    constraints.push(c);
                    continue;
                }
            }
            filters.push(n.clone());
        }
        (constraints, filters)
    }

    /// Whether the constraint images cover every vertex and arrow of `q`.
    fn determined(&self, q: &Quiver, constraints: &[(usize, CTerm)]) -> bool {
        let mut vs = vec![false; q.vertex_count()];
        let mut as_ = vec![false; q.arrow_count()];
        for (r, _) in constraints {
            let m = &self.morphisms[*r];
            m.vertex_map().iter().for_each(|&v| vs[v] = true);
            m.arrow_map().iter().for_each(|&a| as_[a] = true);
        }
        vs.into_iter().chain(as_).all(|b| b)
    }

    /// For `restr_{a1}(…restr_{an}(x))`, the morphism `an ∘ … ∘ a1`.
    fn chain_composite(&self, t: &CTerm, x: usize) -> Option<QuiverMorphism> {
        let mut acc: Option<QuiverMorphism> = None;
        let mut cur = t;
        loop {
            match cur {
                CTerm::Slot(s) if *s == x => {
                    return Some(acc.unwrap_or_else(|| self.slot_sorts[x].identity()));
                }
                CTerm::Slot(_) => return None,
                CTerm::Restr(r, inner) => {
                    let m = &self.morphisms[*r];
                    acc = Some(match acc {
                        None => m.clone(),
                        Some(a) => m.after(&a).ok()?,
                    });
                    cur = inner;
                }
            }
        }
    }
}

fn premises<'n>(n: &'n Node, out: &mut Vec<&'n Node>) {
    match n {
        Node::Quant(q) if q.kind == QuantKind::Forall => premises(&q.body, out),
        Node::Implies(a, b) => {
            conjuncts(a, out);
            premises(b, out);
        }
        _ => {}
    }
}

fn conjuncts<'n>(n: &'n Node, out: &mut Vec<&'n Node>) {
    match n {
        Node::And(cs) => cs.iter().for_each(|c| conjuncts(c, out)),
        Node::Quant(q) if q.kind != QuantKind::Forall => conjuncts(&q.body, out),
        other => out.push(other),
    }
}

fn has_quantifier(n: &Node) -> bool {
    match n {
        Node::Eq(..) | Node::Commute(..) => false,
        Node::Not(a) => has_quantifier(a),
        Node::And(cs) | Node::Or(cs) => cs.iter().any(has_quantifier),
        Node::Implies(a, b) | Node::Iff(a, b) => has_quantifier(a) || has_quantifier(b),
        Node::Quant(_) => true,
    }
}

fn term_slots(t: &CTerm, out: &mut BTreeSet<usize>) {
    match t {
        CTerm::Slot(s) => {
            out.insert(*s);
        }
        CTerm::Restr(_, inner) => term_slots(inner, out),
    }
}

fn free_slots(n: &Node) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    collect_free(n, &mut out);
    out
}

fn collect_free(n: &Node, out: &mut BTreeSet<usize>) {
    match n {
        Node::Eq(a, b) => {
            term_slots(a, out);
            term_slots(b, out);
        }
        Node::Commute(_, t) => term_slots(t, out),
        Node::Not(a) => collect_free(a, out),
        Node::And(cs) | Node::Or(cs) => cs.iter().for_each(|c| collect_free(c, out)),
        Node::Implies(a, b) | Node::Iff(a, b) => {
            collect_free(a, out);
            collect_free(b, out);
        }
        Node::Quant(q) => {
            let mut inner = BTreeSet::new();
            collect_free(&q.body, &mut inner);
            inner.remove(&q.slot);
            out.extend(inner);
        }
    }
}

/// Evaluates formulas against one interpretation, caching whole domains
/// across calls.
pub struct Evaluator<'a, I: Interpretation> {
    interp: &'a I,
    limits: EvalLimits,
    domains: HashMap<Quiver, Rc<Vec<I::Elem>>>,
    work: u64,
}

struct Run<'p, 'a, I: Interpretation> {
    interp: &'a I,
    prog: &'p Program<I>,
    limits: EvalLimits,
    domains: &'p mut HashMap<Quiver, Rc<Vec<I::Elem>>>,
    env: Vec<Option<I::Elem>>,
    memo: HashMap<(usize, Vec<I::Elem>), bool>,
    work: u64,
}

impl<'a, I: Interpretation> Evaluator<'a, I> {
    pub fn new(interp: &'a I, limits: EvalLimits) -> Self {
        Evaluator {
            interp,
            limits,
            domains: HashMap::new(),
            work: 0,
        }
    }

    pub fn limits(&self) -> EvalLimits {
        self.limits
    }

    pub fn set_limits(&mut self, limits: EvalLimits) {
        self.limits = limits;
    }

    /// Quantifier steps taken by the last evaluation.
    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn eval(&mut self, phi: &Formula) -> Result<bool, EvalError> {
        self.eval_with(phi, &[])
    }

    /// Evaluates an open formula under a valuation of its free variables.
    pub fn eval_with(&mut self, phi: &Formula, valuation: &[(Variable, I::Elem)]) -> Result<bool, EvalError> {
        let mut c = Compiler::new(self.interp);
        let mut env = Vec::new();
        for (v, e) in valuation {
            c.bind(v);
            env.push(Some(e.clone()));
        }
        let root = c.formula(phi)?;
        let prog = Program::<I> {
            sorts: c.sorts,
            sort_quivers: c.sort_quivers,
            restrs: c.restrs,
            root,
            slots: c.slot_sorts.len(),
        };
        env.resize(prog.slots, None);
        let mut run = Run {
            interp: self.interp,
            prog: &prog,
            limits: self.limits,
            domains: &mut self.domains,
            env,
            memo: HashMap::new(),
            work: 0,
        };
        let out = run.node(&prog.root);
        self.work = run.work;
        out
    }
}

impl<'p, 'a, I: Interpretation> Run<'p, 'a, I> {
    fn term(&self, t: &CTerm) -> Cow<'_, I::Elem> {
        match t {
            CTerm::Slot(s) => Cow::Borrowed(self.env[*s].as_ref().expect("slot bound")),
            CTerm::Restr(r, inner) => Cow::Owned(self.interp.restrict(&self.prog.restrs[*r], &self.term(inner))),
        }
    }

    fn node(&mut self, n: &Node) -> Result<bool, EvalError> {
        Ok(match n {
            Node::Eq(a, b) => self.term(a) == self.term(b),
            Node::Commute(s, t) => {
                let e = self.term(t);
                self.interp.commutes(&self.prog.sorts[*s], &e)
            }
            Node::Not(a) => !self.node(a)?,
            Node::And(cs) => {
                for c in cs {
                    if !self.node(c)? {
                        return Ok(false);
                    }
                }
                true
            }
            Node::Or(cs) => {
                for c in cs {
                    if self.node(c)? {
                        return Ok(true);
                    }
                }
                false
            }
            Node::Implies(a, b) => !self.node(a)? || self.node(b)?,
            Node::Iff(a, b) => self.node(a)? == self.node(b)?,
            Node::Quant(q) => self.quant(q)?,
        })
    }

    fn domain(&mut self, sort: usize) -> Result<Rc<Vec<I::Elem>>, EvalError> {
        let q = &self.prog.sort_quivers[sort];
        if let Some(d) = self.domains.get(q) {
            return Ok(d.clone());
        }
        let d = Rc::new(self.interp.domain(&self.prog.sorts[sort], self.limits.max_domain)?);
        self.domains.insert(q.clone(), d.clone());
        Ok(d)
    }

    fn candidates(&mut self, q: &QNode) -> Result<Rc<Vec<I::Elem>>, EvalError> {
        if q.constraints.is_empty() {
            return self.domain(q.sort);
        }
        let values: Vec<I::Elem> = q.constraints.iter().map(|(_, t)| self.term(t).into_owned()).collect();
        let cons: Vec<(&I::Restr, &I::Elem)> = q
            .constraints
            .iter()
            .zip(&values)
            .map(|((r, _), v)| (&self.prog.restrs[*r], v))
            .collect();
        if self.interp.has_fiber() {
            return Ok(Rc::new(self.interp.fiber(
                &self.prog.sorts[q.sort],
                &cons,
                self.limits.max_domain,
            )?));
        }
        let all = self.domain(q.sort)?;
        Ok(Rc::new(
            all.iter()
                .filter(|e| cons.iter().all(|(r, v)| self.interp.restrict(r, e) == **v))
                .cloned()
                .collect(),
        ))
    }

    fn quant(&mut self, q: &QNode) -> Result<bool, EvalError> {
        let key = if q.memo {
            let key = (q.memo_id, q.memo_keys.iter().map(|&s| self.env[s].clone().expect("slot bound")).collect::<Vec<_>>());
            if let Some(&v) = self.memo.get(&key) {
                return Ok(v);
            }
            Some(key)
        } else {
            None
        };
        let cands = self.candidates(q)?;
        let mut count = 0usize;
        // value when no candidate decides the quantifier early
        let mut result = match q.kind {
            QuantKind::Forall => true,
            QuantKind::Exists | QuantKind::ExistsUnique => false,
        };
        for e in cands.iter() {
            self.work += 1;
            if let Some(max) = self.limits.max_work {
                if self.work > max {
                    self.env[q.slot] = None;
                    return Err(EvalError::WorkLimit(max));
                }
            }
            self.env[q.slot] = Some(e.clone());
            let mut pass = true;
            for f in &q.filters {
                if !self.node(f)? {
                    pass = false;
                    break;
                }
            }
            if !pass {
                continue;
            }
            let b = self.node(&q.body)?;
            match q.kind {
                QuantKind::Forall if !b => {
                    result = false;
                    break;
                }
                QuantKind::Exists if b => {
                    result = true;
                    break;
                }
                QuantKind::ExistsUnique if b => {
                    count += 1;
                    if count == 2 {
                        break;
                    }
                }
                _ => {}
            }
        }
        self.env[q.slot] = None;
        if q.kind == QuantKind::ExistsUnique {
            result = count == 1;
        }
        if let Some(key) = key {
            if self.memo.len() >= self.limits.memo_entries {
                self.memo.clear();
            }
            self.memo.insert(key, result);
        }
        Ok(result)
    }
}

/// Evaluates a closed formula with default limits.
pub fn evaluate<I: Interpretation>(phi: &Formula, interp: &I) -> Result<bool, EvalError> {
    Evaluator::new(interp, EvalLimits::default()).eval(phi)
}

/// Reference evaluator: plain recursion over whole domains with no guards or
/// memo. Exponential; for cross-checking only.
pub fn evaluate_naive<I: Interpretation>(
    phi: &Formula,
    interp: &I,
    cap: usize,
    env: &mut Vec<(Variable, I::Elem)>,
) -> Result<bool, EvalError> {
    fn term<I: Interpretation>(t: &Term, interp: &I, env: &[(Variable, I::Elem)]) -> Result<I::Elem, EvalError> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, e)| e.clone())
                .ok_or_else(|| EvalError::FreeVariable(v.name.clone())),
            Term::Restr(m, inner) => Ok(interp.restrict(&interp.restriction(m)?, &term(inner, interp, env)?)),
        }
    }
    Ok(match phi {
        Formula::Eq(a, b) => term(a, interp, env)? == term(b, interp, env)?,
        Formula::Commute(t) => interp.commutes(&interp.sort(t.sort())?, &term(t, interp, env)?),
        Formula::Not(a) => !evaluate_naive(a, interp, cap, env)?,
        Formula::And(cs) => {
            for c in cs {
                if !evaluate_naive(c, interp, cap, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(cs) => {
            for c in cs {
                if evaluate_naive(c, interp, cap, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !evaluate_naive(a, interp, cap, env)? || evaluate_naive(b, interp, cap, env)?,
        Formula::Iff(a, b) => evaluate_naive(a, interp, cap, env)? == evaluate_naive(b, interp, cap, env)?,
        Formula::Forall(v, body) | Formula::Exists(v, body) | Formula::ExistsUnique(v, body) => {
            let dom = interp.domain(&interp.sort(&v.sort)?, cap)?;
            let mut count = 0;
            for e in dom {
                env.push((v.clone(), e));
                let b = evaluate_naive(body, interp, cap, env);
                env.pop();
                if b? {
                    count += 1;
                }
            }
            match phi {
                Formula::Forall(..) => count == interp.domain_size(&interp.sort(&v.sort)?) as usize,
                Formula::Exists(..) => count > 0,
                _ => count == 1,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::schemas;
    use crate::models::interp::{Categorical, Dual, Table};
    use crate::models::samples;
    use crate::quiver::Quiver;

    fn interps() -> Vec<Categorical> {
        samples::all().into_iter().map(Categorical::new).collect()
    }

    #[test]
    fn empty_eu_and_com_eq() {
        for m in interps() {
            assert!(evaluate(&schemas::empty_eu(), &m).unwrap(), "{}", m.category().name());
            assert!(evaluate(&schemas::com_eq(), &m).unwrap(), "{}", m.category().name());
        }
    }

    #[test]
    fn parallel_commerge_fails_in_arrow_free_parallel() {
        let q = Quiver::new(2, &[(0, 1), (0, 1)]).unwrap();
        let phi = schemas::commerge_formula(&q, &[]).unwrap();
        let arrow = Categorical::new(samples::arrow());
        // only one morphism A → B: every parallel pair agrees
        assert!(evaluate(&phi, &arrow).unwrap());
        let par = Categorical::new(samples::parallel());
        assert!(!evaluate(&phi, &par).unwrap());
    }

    #[test]
    fn guarded_matches_naive() {
        let formulas = vec![
            schemas::comp_e(),
            schemas::id_e(),
            schemas::empty_eu(),
            schemas::eq_path_sym(1, 1),
            schemas::com_eq(),
        ];
        for m in interps().into_iter().take(5) {
            for phi in &formulas {
                let fast = evaluate(phi, &m).unwrap();
                let slow = evaluate_naive(phi, &m, 200_000, &mut Vec::new()).unwrap();
                assert_eq!(fast, slow, "{} on {}", phi, m.category().name());
            }
        }
    }

    #[test]
    fn dual_interpretation_matches_opposite() {
        let phi = schemas::comp_e();
        for c in samples::all().into_iter().take(5) {
            let d = Dual(Categorical::new(c.clone()));
            let op = Categorical::new(c.opposite());
            assert_eq!(evaluate(&phi, &d).unwrap(), evaluate(&phi, &op).unwrap());
        }
    }

    #[test]
    fn errors() {
        let x = Variable::new("x", Quiver::discrete(1));
        let m = Categorical::new(samples::terminal());
        assert!(matches!(evaluate(&Formula::commute(x.term()), &m), Err(EvalError::FreeVariable(_))));
        assert!(evaluate_naive(&Formula::commute(x.term()), &m, 10, &mut vec![]).is_err());
        let t = Table::new();
        assert!(matches!(
            evaluate(&Formula::forall(&x, Formula::tt()), &t),
            Err(EvalError::MissingDomain(_))
        ));
        let big = Categorical::new(samples::linear_f2());
        let y = Variable::new("y", Quiver::path_quiver(3));
        let mut ev = Evaluator::new(&big, EvalLimits::with_cap(1000));
        assert!(matches!(ev.eval(&Formula::forall(&y, Formula::tt())), Err(EvalError::Resource { .. })));
        let mut ev = Evaluator::new(
            &big,
            EvalLimits {
                max_work: Some(10),
                ..EvalLimits::default()
            },
        );
        let z = Variable::new("z", Quiver::path_quiver(1));
        assert!(matches!(ev.eval(&Formula::forall(&z, Formula::tt())), Err(EvalError::WorkLimit(10))));
    }

    #[test]
    fn valuation_and_exists_unique() {
        let m = Categorical::new(samples::arrow());
        let x = Variable::new("x", Quiver::discrete(1));
        let mut ev = Evaluator::new(&m, EvalLimits::default());
        let d = super::super::diagram::Diagram::new(vec![1], vec![]);
        assert!(ev.eval_with(&Formula::commute(x.term()), &[(x.clone(), d)]).unwrap());
        // two objects: not unique
        assert!(!ev.eval(&Formula::exists_unique(&x, Formula::tt())).unwrap());
        assert!(ev.eval(&Formula::exists(&x, Formula::tt())).unwrap());
    }
}
