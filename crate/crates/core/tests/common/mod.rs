//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use chase_core::formulas::{Formula, QuantKind, Term, Variable};
use chase_core::quiver::{quivers_up_to_iso, Quiver, QuiverMorphism};

/// A stream of choices; wraps around so any vector drives a full build.
pub struct Choices<'a> {
    v: &'a [u32],
    i: usize,
}

impl<'a> Choices<'a> {
    pub fn new(v: &'a [u32]) -> Self {
        assert!(!v.is_empty());
        Choices { v, i: 0 }
    }

    pub fn pick(&mut self, n: usize) -> usize {
        let x = self.v[self.i % self.v.len()].wrapping_add((self.i / self.v.len()) as u32 * 7919);
        self.i += 1;
        x as usize % n.max(1)
    }

    pub fn coin(&mut self, percent: usize) -> bool {
        self.pick(100) < percent
    }
}

/// Quivers with at most three vertices and three arrows, cyclic included.
pub fn sort_pool() -> Vec<Quiver> {
    quivers_up_to_iso(3, 3, false)
}

/// Morphisms into `q` used for restriction terms.
pub fn maps_into(q: &Quiver) -> Vec<QuiverMorphism> {
    let mut out = vec![q.identity()];
    out.extend((0..q.vertex_count()).map(|v| q.vertex_embedding(v)));
    out.extend((0..q.arrow_count()).map(|a| q.arrow_embedding(a)));
    for (vs, arrows) in chase_core::quiver::sub_quiver_supports(q) {
        if vs.len() < q.vertex_count() || arrows.len() < q.arrow_count() {
            out.push(q.sub_quiver(&vs, &arrows).unwrap());
        }
    }
    out
}

struct Builder<'a, 'b> {
    ch: &'b mut Choices<'a>,
    pool: &'b [Quiver],
    fresh: usize,
    fuel: usize,
}

impl Builder<'_, '_> {
    fn restr(&mut self, v: &Variable) -> Term {
        let maps = maps_into(&v.sort);
        let m = &maps[self.ch.pick(maps.len())];
        if m.is_identity() {
            v.term()
        } else {
            Term::restr(m, v.term())
        }
    }

    fn atom(&mut self, scope: &[Variable]) -> Formula {
        let x = &scope[self.ch.pick(scope.len())];
        let t1 = self.restr(x);
        if self.ch.coin(30) {
            return Formula::commute(t1);
        }
        let y = &scope[self.ch.pick(scope.len())];
        let matching: Vec<QuiverMorphism> = maps_into(&y.sort)
            .into_iter()
            .filter(|m| m.domain() == t1.sort())
            .collect();
        if matching.is_empty() {
            return Formula::commute(t1);
        }
        let m = &matching[self.ch.pick(matching.len())];
        let t2 = if m.is_identity() { y.term() } else { Term::restr(m, y.term()) };
        Formula::eq(t1, t2)
    }

    /// Links a new variable to an outer one through a shared vertex, so the
    /// inner quantifier ranges over a fiber.
    fn guard(&mut self, v: &Variable, scope: &[Variable]) -> Option<Formula> {
        let outer: Vec<&Variable> = scope.iter().filter(|w| w.sort.vertex_count() > 0).collect();
        if outer.is_empty() || v.sort.vertex_count() == 0 {
            return None;
        }
        let w = outer[self.ch.pick(outer.len())];
        let a = v.sort.vertex_embedding(self.ch.pick(v.sort.vertex_count()));
        let b = w.sort.vertex_embedding(self.ch.pick(w.sort.vertex_count()));
        Some(Formula::eq(Term::restr(&a, v.term()), Term::restr(&b, w.term())))
    }

    fn quantified(&mut self, scope: &mut Vec<Variable>, depth: usize) -> Formula {
        // small sorts are more likely
        let i = self.ch.pick(self.pool.len()).min(self.ch.pick(self.pool.len()));
        let v = Variable::new(format!("v{}", self.fresh), self.pool[i].clone());
        self.fresh += 1;
        let kind = [QuantKind::Forall, QuantKind::Exists, QuantKind::ExistsUnique][self.ch.pick(3)];
        let guard = if self.ch.coin(70) { self.guard(&v, scope) } else { None };
        scope.push(v.clone());
        let body = self.formula(scope, depth - 1);
        scope.pop();
        let body = match (guard, kind) {
            (Some(g), QuantKind::Forall) => Formula::implies(g, body),
            (Some(g), _) => Formula::and(vec![g, body]),
            (None, _) => body,
        };
        Formula::quantifier(kind, &v, body)
    }

    fn formula(&mut self, scope: &mut Vec<Variable>, depth: usize) -> Formula {
        self.fuel = self.fuel.saturating_sub(1);
        let can_quantify = depth > 0 && self.fuel > 0;
        if scope.is_empty() {
            if can_quantify && !self.ch.coin(5) {
                return self.quantified(scope, depth);
            }
            return if self.ch.coin(50) { Formula::tt() } else { Formula::ff() };
        }
        let k = if self.fuel == 0 { 0 } else { self.ch.pick(11) };
        match k {
            0..=3 => self.atom(scope),
            4 => Formula::not(self.formula(scope, depth)),
            5 => Formula::And(vec![self.formula(scope, depth), self.formula(scope, depth)]),
            6 => Formula::Or(vec![self.formula(scope, depth), self.formula(scope, depth)]),
            7 => Formula::implies(self.formula(scope, depth), self.formula(scope, depth)),
            8 => Formula::iff(self.formula(scope, depth), self.formula(scope, depth)),
            _ if can_quantify => self.quantified(scope, depth),
            _ => self.atom(scope),
        }
    }
}

/// A closed formula of quantifier depth at most `depth` over `pool` sorts.
pub fn random_formula(choices: &[u32], pool: &[Quiver], depth: usize) -> Formula {
    let mut ch = Choices::new(choices);
    let mut b = Builder {
        ch: &mut ch,
        pool,
        fresh: 0,
        fuel: 12,
    };
    b.formula(&mut Vec::new(), depth)
}

pub fn subsets(n: usize) -> Vec<BTreeSet<usize>> {
    (0..1u32 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}
