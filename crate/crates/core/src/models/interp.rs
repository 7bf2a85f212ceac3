//! Interpretations of the diagram signature.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::category::FiniteCategory;
use super::diagram::{count_diagrams, diagrams_with, is_commutative, Diagram};
use super::{EvalError, ModelError};
use crate::quiver::{Quiver, QuiverMorphism};

/// A model: finite domains per sort, `restr` maps and `commute` subsets.
///
/// `Sort` and `Restr` are prepared handles, resolved once per formula.
pub trait Interpretation {
    type Elem: Clone + Eq + Hash + Debug;
    type Sort: Clone + Debug;
    type Restr: Clone + Debug;

    fn sort(&self, q: &Quiver) -> Result<Self::Sort, EvalError>;
    fn restriction(&self, m: &QuiverMorphism) -> Result<Self::Restr, EvalError>;
    fn domain_size(&self, s: &Self::Sort) -> u128;
    /// The whole domain in a fixed order; errors above `cap`.
    fn domain(&self, s: &Self::Sort, cap: usize) -> Result<Vec<Self::Elem>, EvalError>;
    fn restrict(&self, r: &Self::Restr, e: &Self::Elem) -> Self::Elem;
    fn commutes(&self, s: &Self::Sort, e: &Self::Elem) -> bool;

    /// Whether `fiber` is cheaper than filtering the domain.
    fn has_fiber(&self) -> bool {
        false
    }

    /// Elements `e` of sort `s` with `restrict(r, e) = v` for each constraint,
    /// in domain order.
    fn fiber(
        &self,
        s: &Self::Sort,
        constraints: &[(&Self::Restr, &Self::Elem)],
        cap: usize,
    ) -> Result<Vec<Self::Elem>, EvalError> {
        Ok(self
            .domain(s, cap)?
            .into_iter()
            .filter(|e| constraints.iter().all(|(r, v)| self.restrict(r, e) == **v))
            .collect())
    }
}

/// Diagrams in a finite category.
#[derive(Debug, Clone)]
pub struct Categorical {
    category: Arc<FiniteCategory>,
}

impl Categorical {
    pub fn new(category: FiniteCategory) -> Categorical {
        Categorical {
            category: Arc::new(category),
        }
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }
}

impl Interpretation for Categorical {
    type Elem = Diagram;
    type Sort = Quiver;
    type Restr = QuiverMorphism;

    fn sort(&self, q: &Quiver) -> Result<Quiver, EvalError> {
        Ok(q.clone())
    }

    fn restriction(&self, m: &QuiverMorphism) -> Result<QuiverMorphism, EvalError> {
        Ok(m.clone())
    }

    fn domain_size(&self, s: &Quiver) -> u128 {
        count_diagrams(&self.category, s)
    }

    fn domain(&self, s: &Quiver, cap: usize) -> Result<Vec<Diagram>, EvalError> {
        Ok(super::diagram::diagrams(&self.category, s, cap)?)
    }

    fn restrict(&self, r: &QuiverMorphism, e: &Diagram) -> Diagram {
        e.pullback(r)
    }

    fn commutes(&self, s: &Quiver, e: &Diagram) -> bool {
        is_commutative(&self.category, s, e)
    }

    fn has_fiber(&self) -> bool {
        true
    }

    fn fiber(
        &self,
        s: &Quiver,
        constraints: &[(&QuiverMorphism, &Diagram)],
        cap: usize,
    ) -> Result<Vec<Diagram>, EvalError> {
        let mut fv = vec![None; s.vertex_count()];
        let mut fa = vec![None; s.arrow_count()];
        for (m, d) in constraints {
            for (v, &w) in m.vertex_map().iter().enumerate() {
                match fv[w] {
                    Some(o) if o != d.vertices[v] => return Ok(Vec::new()),
                    _ => fv[w] = Some(d.vertices[v]),
                }
            }
            for (a, &b) in m.arrow_map().iter().enumerate() {
                match fa[b] {
                    Some(f) if f != d.arrows[a] => return Ok(Vec::new()),
                    _ => fa[b] = Some(d.arrows[a]),
                }
            }
        }
        if fv.iter().all(Option::is_some) && fa.iter().all(Option::is_some) {
            let d = Diagram::new(fv.into_iter().flatten().collect(), fa.into_iter().flatten().collect());
            return Ok(if d.is_valid(&self.category, s) { vec![d] } else { Vec::new() });
        }
        Ok(diagrams_with(&self.category, s, &fv, &fa, cap)?)
    }
}

/// `M†`: sort `Q` read at `Q†`, `restr_m` read at `m†`.
#[derive(Debug, Clone)]
pub struct Dual<I>(pub I);

impl<I: Interpretation> Interpretation for Dual<I> {
    type Elem = I::Elem;
    type Sort = I::Sort;
    type Restr = I::Restr;

    fn sort(&self, q: &Quiver) -> Result<I::Sort, EvalError> {
        self.0.sort(&q.dual_quiver())
    }

    fn restriction(&self, m: &QuiverMorphism) -> Result<I::Restr, EvalError> {
        self.0.restriction(&m.dual())
    }

    fn domain_size(&self, s: &I::Sort) -> u128 {
        self.0.domain_size(s)
    }

    fn domain(&self, s: &I::Sort, cap: usize) -> Result<Vec<I::Elem>, EvalError> {
        self.0.domain(s, cap)
    }

    fn restrict(&self, r: &I::Restr, e: &I::Elem) -> I::Elem {
        self.0.restrict(r, e)
    }

    fn commutes(&self, s: &I::Sort, e: &I::Elem) -> bool {
        self.0.commutes(s, e)
    }

    fn has_fiber(&self) -> bool {
        self.0.has_fiber()
    }

    fn fiber(
        &self,
        s: &I::Sort,
        constraints: &[(&I::Restr, &I::Elem)],
        cap: usize,
    ) -> Result<Vec<I::Elem>, EvalError> {
        self.0.fiber(s, constraints, cap)
    }
}

#[derive(Debug, Clone)]
struct TableSort {
    size: u32,
    commute: Vec<bool>,
}

/// An explicit finite model: elements are `0..size` per sort.
///
/// Only the sorts and morphisms that were added are interpreted; anything else
/// is a missing-domain error.
#[derive(Debug, Clone, Default)]
pub struct Table {
    sort_ids: HashMap<Quiver, usize>,
    sorts: Vec<TableSort>,
    restr_ids: HashMap<QuiverMorphism, usize>,
    restrs: Vec<Vec<u32>>,
}

impl Table {
    pub fn new() -> Table {
        Table::default()
    }

    pub fn add_sort(&mut self, q: Quiver, commute: Vec<bool>) {
        let s = TableSort {
            size: commute.len() as u32,
            commute,
        };
        match self.sort_ids.get(&q) {
            Some(&i) => self.sorts[i] = s,
            None => {
                self.sort_ids.insert(q, self.sorts.len());
                self.sorts.push(s);
            }
        }
    }

    /// `table[e]` is the restriction of element `e` of the codomain sort.
    pub fn add_restriction(&mut self, m: QuiverMorphism, table: Vec<u32>) -> Result<(), EvalError> {
        let cod = self.sort_size(m.codomain())?;
        let dom = self.sort_size(m.domain())?;
        if table.len() != cod as usize || table.iter().any(|&x| x >= dom) {
            return Err(EvalError::IllSorted(format!("restriction table for {m}")));
        }
        match self.restr_ids.get(&m) {
            Some(&i) => self.restrs[i] = table,
            None => {
                self.restr_ids.insert(m, self.restrs.len());
                self.restrs.push(table);
            }
        }
        Ok(())
    }

    fn sort_size(&self, q: &Quiver) -> Result<u32, EvalError> {
        self.sort_ids
            .get(q)
            .map(|&i| self.sorts[i].size)
            .ok_or_else(|| EvalError::MissingDomain(q.to_string()))
    }

    pub fn set_commutes(&mut self, q: &Quiver, e: u32, value: bool) -> Result<(), EvalError> {
        let i = *self
            .sort_ids
            .get(q)
            .ok_or_else(|| EvalError::MissingDomain(q.to_string()))?;
        let slot = self.sorts[i]
            .commute
            .get_mut(e as usize)
            .ok_or_else(|| EvalError::IllSorted(format!("element {e} of {q}")))?;
        *slot = value;
        Ok(())
    }

    /// Copies the given sorts and morphisms out of another interpretation,
    /// numbering each domain in its own order.
    pub fn tabulate<I: Interpretation>(
        src: &I,
        sorts: &[Quiver],
        morphisms: &[QuiverMorphism],
        cap: usize,
    ) -> Result<Table, EvalError> {
        let mut t = Table::new();
        let mut index: HashMap<Quiver, HashMap<I::Elem, u32>> = HashMap::new();
        let mut elems: HashMap<Quiver, Vec<I::Elem>> = HashMap::new();
        let mut wanted: Vec<Quiver> = sorts.to_vec();
        for m in morphisms {
            wanted.push(m.domain().clone());
            wanted.push(m.codomain().clone());
        }
        for q in wanted {
            if elems.contains_key(&q) {
                continue;
            }
            let s = src.sort(&q)?;
            let dom = src.domain(&s, cap)?;
            t.add_sort(q.clone(), dom.iter().map(|e| src.commutes(&s, e)).collect());
            index.insert(q.clone(), dom.iter().cloned().zip(0..).collect());
            elems.insert(q, dom);
        }
        for m in morphisms {
            let r = src.restriction(m)?;
            let target = &index[m.domain()];
            let table = elems[m.codomain()]
                .iter()
                .map(|e| target[&src.restrict(&r, e)])
                .collect();
            t.add_restriction(m.clone(), table)?;
        }
        Ok(t)
    }
}

impl Interpretation for Table {
    type Elem = u32;
    type Sort = usize;
    type Restr = usize;

    fn sort(&self, q: &Quiver) -> Result<usize, EvalError> {
        self.sort_ids
            .get(q)
            .copied()
            .ok_or_else(|| EvalError::MissingDomain(q.to_string()))
    }

    fn restriction(&self, m: &QuiverMorphism) -> Result<usize, EvalError> {
        self.restr_ids
            .get(m)
            .copied()
            .ok_or_else(|| EvalError::MissingDomain(format!("restr[{m}]")))
    }

    fn domain_size(&self, s: &usize) -> u128 {
        self.sorts[*s].size as u128
    }

    fn domain(&self, s: &usize, cap: usize) -> Result<Vec<u32>, EvalError> {
        let size = self.sorts[*s].size;
        if size as usize > cap {
            return Err(ModelError::Resource {
                what: "table sort".into(),
                size: size as u128,
                cap,
            }
            .into());
        }
        Ok((0..size).collect())
    }

    fn restrict(&self, r: &usize, e: &u32) -> u32 {
        self.restrs[*r][*e as usize]
    }

    fn commutes(&self, s: &usize, e: &u32) -> bool {
        self.sorts[*s].commute[*e as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::samples;
    use crate::quiver::sp_embedding;

    #[test]
    fn categorical_fiber_matches_filter() {
        let c = Categorical::new(samples::monoid3());
        let q = Quiver::path_quiver(2);
        let m = sp_embedding(1, 2).unwrap();
        let all = c.domain(&q, 1000).unwrap();
        for d in c.domain(&Quiver::path_quiver(1), 100).unwrap() {
            let fast = c.fiber(&q, &[(&m, &d)], 1000).unwrap();
            let slow: Vec<_> = all.iter().filter(|e| e.pullback(&m) == d).cloned().collect();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn dual_reads_dual_sort() {
        let c = Categorical::new(samples::arrow());
        let d = Dual(c.clone());
        let q = Quiver::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(d.sort(&q).unwrap(), q.dual_quiver());
    }

    #[test]
    fn table_roundtrip() {
        let c = Categorical::new(samples::arrow());
        let m = sp_embedding(0, 1).unwrap();
        let t = Table::tabulate(&c, &[], &[m.clone()], 100).unwrap();
        let s = t.sort(m.codomain()).unwrap();
        let r = t.restriction(&m).unwrap();
        assert_eq!(t.domain(&s, 100).unwrap().len(), 3);
        // the identity diagram at B restricts to the vertex B
        let dom = c.domain(m.codomain(), 100).unwrap();
        let pt = c.domain(m.domain(), 100).unwrap();
        for (i, d) in dom.iter().enumerate() {
            assert_eq!(pt[t.restrict(&r, &(i as u32)) as usize], d.pullback(&m));
        }
        assert!(t.restriction(&crate::quiver::sp_embedding(1, 2).unwrap()).is_err());
    }
}
