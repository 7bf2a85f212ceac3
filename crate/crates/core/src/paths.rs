//! Paths, hom-sets of the free category, and path relations.
//!
//! A [`PathSpace`] interns every path of a quiver (all of them when the
//! quiver is acyclic, or all up to a length bound) under the deterministic
//! order (source, target, length, arrows). A [`PathRelation`] is a partition
//! of that space whose classes stay inside hom-sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::quiver::{ArrowId, Quiver, QuiverMorphism, VertexId};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("quiver has a cycle: infinite path set (use a length bound)")]
    InfinitePathSet,
    #[error("cannot concatenate: first path ends at {end}, second starts at {start}")]
    ExtremityMismatch { end: VertexId, start: VertexId },
    #[error("generator pair {0} and {1} do not share extremities")]
    GeneratorExtremities(Path, Path),
    #[error("path {0} is not a path of this quiver")]
    NotInQuiver(Path),
}

/// A path as its source and arrow list; `arrows` empty is the identity at `source`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn empty(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Checks the arrows chain in `q`.
    pub fn new(q: &Quiver, source: VertexId, arrows: Vec<ArrowId>) -> Result<Path, PathError> {
        let mut at = source;
        let bad = || {
            PathError::NotInQuiver(Path {
                source,
                target: source,
                arrows: arrows.clone(),
            })
        };
        if source >= q.vertex_count() {
            return Err(bad());
        }
        for &a in &arrows {
            if a >= q.arrow_count() || q.source(a) != at {
                return Err(bad());
            }
            at = q.target(a);
        }
        Ok(Path {
            source,
            target: at,
            arrows,
        })
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Path {
        Path {
            source: q.source(a),
            target: q.target(a),
            arrows: vec![a],
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn extremities(&self) -> (VertexId, VertexId) {
        (self.source, self.target)
    }

    /// `self` then `next`.
    pub fn concat(&self, next: &Path) -> Result<Path, PathError> {
        if self.target != next.source {
            return Err(PathError::ExtremityMismatch {
                end: self.target,
                start: next.source,
            });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Ok(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// `m_*(p)`.
    pub fn pushforward(&self, m: &QuiverMorphism) -> Path {
        Path {
            source: m.map_vertex(self.source),
            target: m.map_vertex(self.target),
            arrows: self.arrows.iter().map(|&a| m.map_arrow(a)).collect(),
        }
    }

    /// The path as a morphism `PQ_k -> q`.
    pub fn to_morphism(&self, q: &Quiver) -> QuiverMorphism {
        let mut vertices = vec![self.source];
        vertices.extend(self.arrows.iter().map(|&a| q.target(a)));
        QuiverMorphism::new(
            Quiver::path_quiver(self.len()),
            q.clone(),
            vertices,
            self.arrows.clone(),
        )
        .expect("a chained arrow list is a path-quiver morphism")
    }

    /// Reads a morphism out of `PQ_k` as a path.
    pub fn from_morphism(m: &QuiverMorphism) -> Option<Path> {
        m.domain().path_length()?;
        Some(Path {
            source: m.map_vertex(0),
            target: m.map_vertex(m.domain().vertex_count() - 1),
            arrows: m.arrow_map().to_vec(),
        })
    }

    /// The same arrows read in the dual quiver, in reverse order.
    pub fn dual(&self, dual_renumbering: &crate::quiver::Renumbering) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self
                .arrows
                .iter()
                .rev()
                .map(|&a| dual_renumbering.apply(a))
                .collect(),
        }
    }

    fn order_key(&self) -> (VertexId, VertexId, usize, &[ArrowId]) {
        (self.source, self.target, self.arrows.len(), &self.arrows)
    }

    pub fn display_with(&self, labels: &[String]) -> String {
        let names: Vec<&str> = self.arrows.iter().map(|&a| labels[a].as_str()).collect();
        format!("[{}]", names.join(","))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}->{}", self, self.source, self.target)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", ids.join(","))
    }
}

/// All paths of an acyclic quiver, sorted.
pub fn enumerate_paths(q: &Quiver) -> Result<Vec<Path>, PathError> {
    if !q.is_acyclic() {
        return Err(PathError::InfinitePathSet);
    }
    Ok(bounded_paths(q, q.arrow_count()))
}

/// All paths of length at most `max_len`, sorted.
pub fn bounded_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier: Vec<Path> = (0..q.vertex_count()).map(Path::empty).collect();
    out.extend(frontier.iter().cloned());
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.outgoing(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path {
                    source: p.source,
                    target: q.target(a),
                    arrows,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

/// Interned paths of one quiver, with one-arrow extension tables.
#[derive(Debug)]
pub struct PathSpace {
    quiver: Quiver,
    bound: Option<usize>,
    paths: Vec<Path>,
    ids: HashMap<Path, usize>,
    /// ids of `a·p` for arrows `a` ending where `p` starts
    left_ext: Vec<Vec<usize>>,
    /// ids of `p·b` for arrows `b` leaving where `p` ends
    right_ext: Vec<Vec<usize>>,
    hom_sets: BTreeMap<(VertexId, VertexId), Vec<usize>>,
}

impl PathSpace {
    pub fn new(q: &Quiver) -> Result<Arc<PathSpace>, PathError> {
        let paths = enumerate_paths(q)?;
        Ok(Arc::new(Self::from_paths(q, None, paths)))
    }

    pub fn bounded(q: &Quiver, max_len: usize) -> Arc<PathSpace> {
        let paths = bounded_paths(q, max_len);
        Arc::new(Self::from_paths(q, Some(max_len), paths))
    }

    fn from_paths(q: &Quiver, bound: Option<usize>, paths: Vec<Path>) -> PathSpace {
        let ids: HashMap<Path, usize> = paths.iter().cloned().zip(0..).collect();
        let mut left_ext = vec![Vec::new(); paths.len()];
        let mut right_ext = vec![Vec::new(); paths.len()];
        let mut hom_sets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (id, p) in paths.iter().enumerate() {
            hom_sets.entry(p.extremities()).or_default().push(id);
            for a in q.incoming(p.source) {
                let mut arrows = vec![a];
                arrows.extend_from_slice(&p.arrows);
                let ext = Path {
                    source: q.source(a),
                    target: p.target,
                    arrows,
                };
                if let Some(&e) = ids.get(&ext) {
                    left_ext[id].push(e);
                }
            }
            for b in q.outgoing(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(b);
                let ext = Path {
                    source: p.source,
                    target: q.target(b),
                    arrows,
                };
                if let Some(&e) = ids.get(&ext) {
                    right_ext[id].push(e);
                }
            }
        }
        PathSpace {
            quiver: q.clone(),
            bound,
            paths,
            ids,
            left_ext,
            right_ext,
            hom_sets,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn id(&self, p: &Path) -> Option<usize> {
        self.ids.get(p).copied()
    }

    pub fn path(&self, id: usize) -> &Path {
        &self.paths[id]
    }

    /// Path ids grouped by `(source, target)`, each group in path order.
    pub fn hom_sets(&self) -> &BTreeMap<(VertexId, VertexId), Vec<usize>> {
        &self.hom_sets
    }

    /// Every unordered pair of distinct paths sharing extremities, in order.
    pub fn same_extremity_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for ids in self.hom_sets.values() {
            for (i, &p) in ids.iter().enumerate() {
                for &q in &ids[i + 1..] {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn left_extensions(&self, id: usize) -> &[usize] {
        &self.left_ext[id]
    }

    pub fn right_extensions(&self, id: usize) -> &[usize] {
        &self.right_ext[id]
    }
}

/// An equivalence on the paths of a [`PathSpace`], confined to hom-sets.
#[derive(Debug, Clone)]
pub struct PathRelation {
    space: Arc<PathSpace>,
    /// least path id of each path's class
    labels: Vec<usize>,
    closed: bool,
}

impl PartialEq for PathRelation {
    fn eq(&self, other: &Self) -> bool {
        self.space.quiver == other.space.quiver
            && self.space.bound == other.space.bound
            && self.labels == other.labels
    }
}

impl PathRelation {
    /// Only the reflexive pairs.
    pub fn discrete(space: Arc<PathSpace>) -> PathRelation {
        let labels = (0..space.len()).collect();
        PathRelation {
            space,
            labels,
            closed: true,
        }
    }

    pub fn from_labels(space: Arc<PathSpace>, labels: Vec<usize>, closed: bool) -> PathRelation {
        assert_eq!(labels.len(), space.len());
        PathRelation {
            space,
            labels,
            closed,
        }
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn quiver(&self) -> &Quiver {
        &self.space.quiver
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn related_ids(&self, p: usize, q: usize) -> bool {
        self.labels[p] == self.labels[q]
    }

    pub fn related(&self, p: &Path, q: &Path) -> bool {
        match (self.space.id(p), self.space.id(q)) {
            (Some(a), Some(b)) => self.related_ids(a, b),
            _ => false,
        }
    }

    pub fn class_count(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, &l)| *i == l)
            .count()
    }

    /// Every same-extremity pair is related: the quotient category is thin.
    pub fn is_complete(&self) -> bool {
        self.witness_incompleteness().is_none()
    }

    /// The least unrelated same-extremity pair, if any.
    pub fn witness_incompleteness(&self) -> Option<(Path, Path)> {
        self.witness_ids()
            .map(|(p, q)| (self.space.paths[p].clone(), self.space.paths[q].clone()))
    }

    pub fn witness_ids(&self) -> Option<(usize, usize)> {
        for ids in self.space.hom_sets.values() {
            let first = ids[0];
            if let Some(&other) = ids.iter().find(|&&q| self.labels[q] != self.labels[first]) {
                return Some((first, other));
            }
        }
        None
    }

    /// Checks the concatenation law on every composable quadruple.
    pub fn is_congruence(&self) -> bool {
        let space = &*self.space;
        for &(p, q) in &self.pairs_in_classes() {
            let (pp, qq) = (&space.paths[p], &space.paths[q]);
            for u in space.paths.iter().filter(|u| u.target == pp.source) {
                for v in space.paths.iter().filter(|v| v.source == pp.target) {
                    let l = u.concat(pp).and_then(|x| x.concat(v)).ok();
                    let r = u.concat(qq).and_then(|x| x.concat(v)).ok();
                    if let (Some(l), Some(r)) = (l, r) {
                        match (space.id(&l), space.id(&r)) {
                            (Some(a), Some(b)) if !self.related_ids(a, b) => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    /// All related pairs `(p, q)` with `p < q`.
    pub fn pairs_in_classes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for ids in self.space.hom_sets.values() {
            for (i, &p) in ids.iter().enumerate() {
                for &q in &ids[i + 1..] {
                    if self.labels[p] == self.labels[q] {
                        out.push((p, q));
                    }
                }
            }
        }
        out
    }

    /// Classes stay inside hom-sets and labels are least members.
    pub fn respects_extremities(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| {
            l <= i
                && self.labels[l] == l
                && self.space.paths[i].extremities() == self.space.paths[l].extremities()
        })
    }
}

/// `tot_Q`: every same-extremity pair related.
pub fn total_relation(q: &Quiver) -> Result<PathRelation, PathError> {
    let space = PathSpace::new(q)?;
    let mut labels = vec![0; space.len()];
    for ids in space.hom_sets.values() {
        for &p in ids {
            labels[p] = ids[0];
        }
    }
    Ok(PathRelation {
        space,
        labels,
        closed: true,
    })
}

/// The smallest path relation on an acyclic quiver containing the generators.
pub fn close(q: &Quiver, generators: &[(Path, Path)]) -> Result<PathRelation, PathError> {
    let space = PathSpace::new(q)?;
    close_in(space, generators)
}

/// Congruence closure restricted to paths of length `<= max_len`; extensions
/// that would leave the bound are dropped.
pub fn close_bounded(
    q: &Quiver,
    max_len: usize,
    generators: &[(Path, Path)],
) -> Result<PathRelation, PathError> {
    close_in(PathSpace::bounded(q, max_len), generators)
}

/// Closes the generators inside a prepared space. Generators whose paths lie
/// outside a bounded space are ignored.
pub fn close_in(space: Arc<PathSpace>, generators: &[(Path, Path)]) -> Result<PathRelation, PathError> {
    let mut pending = Vec::with_capacity(generators.len());
    for (p, q) in generators {
        if p.extremities() != q.extremities() {
            return Err(PathError::GeneratorExtremities(p.clone(), q.clone()));
        }
        match (space.id(p), space.id(q)) {
            (Some(a), Some(b)) => pending.push((a, b)),
            _ if space.bound.is_some() => {}
            (None, _) => return Err(PathError::NotInQuiver(p.clone())),
            (_, None) => return Err(PathError::NotInQuiver(q.clone())),
        }
    }
    let labels = congruence_closure(&space, pending);
    Ok(PathRelation {
        space,
        labels,
        closed: true,
    })
}

/// Worklist congruence closure over interned path ids.
///
/// Each merged pair pushes its one-arrow whiskers on both sides; whiskering by
/// longer paths follows by iterating, and transitivity comes from the
/// union-find.
fn congruence_closure(space: &PathSpace, mut pending: Vec<(usize, usize)>) -> Vec<usize> {
    let mut uf = UnionFind::new(space.len());
    while let Some((p, q)) = pending.pop() {
        if !uf.union(p, q) {
            continue;
        }
        let (pl, ql) = (&space.left_ext[p], &space.left_ext[q]);
        // extensions line up: same extremities, same arrow order
        for (&a, &b) in pl.iter().zip(ql.iter()) {
            pending.push((a, b));
        }
        let (pr, qr) = (&space.right_ext[p], &space.right_ext[q]);
        for (&a, &b) in pr.iter().zip(qr.iter()) {
            pending.push((a, b));
        }
    }
    uf.labels()
}

/// Reference closure on an explicit pair set, kept deliberately naive.
///
/// Repeats symmetrization, transitive composition and two-sided extension by
/// arbitrary paths until nothing changes. Quadratic memory in the number of
/// paths; meant for cross-checking small instances only.
pub mod oracle {
    use std::collections::BTreeSet;

    use super::{Path, PathSpace};

    pub fn naive_close(space: &PathSpace, generators: &[(Path, Path)]) -> Vec<usize> {
        let n = space.len();
        let mut rel: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for (p, q) in generators {
            if let (Some(a), Some(b)) = (space.id(p), space.id(q)) {
                rel.insert((a, b));
            }
        }
        loop {
            let before = rel.len();
            let snapshot: Vec<(usize, usize)> = rel.iter().copied().collect();
            for &(a, b) in &snapshot {
                rel.insert((b, a));
            }
            let snapshot: Vec<(usize, usize)> = rel.iter().copied().collect();
            for &(a, b) in &snapshot {
                for &(c, d) in snapshot.iter().filter(|(c, _)| *c == b) {
                    let _ = c;
                    rel.insert((a, d));
                }
            }
            let snapshot: Vec<(usize, usize)> = rel.iter().copied().collect();
            for &(a, b) in &snapshot {
                let (pa, pb) = (space.path(a), space.path(b));
                for u in space.paths().iter().filter(|u| u.target() == pa.source()) {
                    for v in space.paths().iter().filter(|v| v.source() == pa.target()) {
                        let l = u.concat(pa).and_then(|x| x.concat(v));
                        let r = u.concat(pb).and_then(|x| x.concat(v));
                        if let (Ok(l), Ok(r)) = (l, r) {
                            if let (Some(x), Some(y)) = (space.id(&l), space.id(&r)) {
                                rel.insert((x, y));
                            }
                        }
                    }
                }
            }
            if rel.len() == before {
                break;
            }
        }
        let mut labels = vec![usize::MAX; n];
        for &(a, b) in &rel {
            labels[a] = labels[a].min(b);
        }
        labels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Quiver {
        // a: 0->1, c: 0->2, b: 1->3, d: 2->3 ; canonical 0:0->1 1:0->2 2:1->3 3:2->3
        Quiver::new(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap()
    }

    fn p(q: &Quiver, s: usize, arrows: &[usize]) -> Path {
        Path::new(q, s, arrows.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small_quivers() {
        let pq2 = Quiver::path_quiver(2);
        let paths = enumerate_paths(&pq2).unwrap();
        assert_eq!(paths.len(), 6);
        assert_eq!(paths[1], p(&pq2, 0, &[0]));
        assert_eq!(paths[2], p(&pq2, 0, &[0, 1]));
        assert_eq!(enumerate_paths(&Quiver::discrete(1)).unwrap().len(), 1);

        let fig = Quiver::new(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]).unwrap();
        let paths = enumerate_paths(&fig).unwrap();
        assert_eq!(paths.len(), 14);
        let to3 = paths.iter().filter(|p| p.extremities() == (0, 3)).count();
        assert_eq!(to3, 2);
    }

    #[test]
    fn cyclic_quivers_need_a_bound() {
        let lp = Quiver::new(1, &[(0, 0)]).unwrap();
        assert_eq!(enumerate_paths(&lp).unwrap_err(), PathError::InfinitePathSet);
        let b = bounded_paths(&lp, 3);
        assert_eq!(b.iter().map(Path::len).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(bounded_paths(&square(), 0).iter().all(Path::is_empty));
        assert_eq!(
            bounded_paths(&Quiver::path_quiver(2), 10),
            enumerate_paths(&Quiver::path_quiver(2)).unwrap()
        );
    }

    #[test]
    fn path_quiver_counts() {
        for k in 0..=6 {
            let n = enumerate_paths(&Quiver::path_quiver(k)).unwrap().len();
            assert_eq!(n, (k + 1) * (k + 2) / 2);
        }
    }

    #[test]
    fn concat_and_pushforward() {
        let pq2 = Quiver::path_quiver(2);
        let ab = p(&pq2, 0, &[0]).concat(&p(&pq2, 1, &[1])).unwrap();
        assert_eq!(ab.arrows(), &[0, 1]);
        assert_eq!(Path::empty(0).concat(&ab).unwrap(), ab);
        assert!(ab.concat(&p(&pq2, 0, &[0])).is_err());

        let tri = Quiver::new(3, &[(0, 2), (0, 1), (1, 2)]).unwrap();
        let a = tri.arrow_embedding(1);
        let pushed = p(&Quiver::path_quiver(1), 0, &[0]).pushforward(&a);
        assert_eq!(pushed, p(&tri, 0, &[1]));
        assert_eq!(Path::empty(1).pushforward(&a), Path::empty(2));
    }

    #[test]
    fn morphism_view_round_trips() {
        let q = square();
        let path = p(&q, 0, &[0, 2]);
        let m = path.to_morphism(&q);
        assert_eq!(m.domain(), &Quiver::path_quiver(2));
        assert_eq!(Path::from_morphism(&m).unwrap(), path);
    }

    #[test]
    fn total_relation_classes() {
        let tot = total_relation(&Quiver::path_quiver(2)).unwrap();
        assert_eq!(tot.class_count(), 6);
        assert!(tot.is_complete());
        let disc = total_relation(&Quiver::discrete(3)).unwrap();
        assert_eq!(disc.class_count(), 3);
        let par = Quiver::new(2, &[(0, 1), (0, 1)]).unwrap();
        let tot = total_relation(&par).unwrap();
        assert!(tot.related(&Path::arrow(&par, 0), &Path::arrow(&par, 1)));
    }

    #[test]
    fn closure_on_square() {
        let q = square();
        let top = p(&q, 0, &[0, 2]);
        let bottom = p(&q, 0, &[1, 3]);
        let r = close(&q, &[(top.clone(), bottom.clone())]).unwrap();
        assert!(r.related(&top, &bottom));
        assert_eq!(r.class_count(), r.space().len() - 1);
        assert!(r.is_complete());

        let none = close(&q, &[]).unwrap();
        assert_eq!(none.class_count(), none.space().len());
        assert_eq!(none.witness_incompleteness(), Some((top, bottom)));
    }

    #[test]
    fn closure_propagates_through_whiskers() {
        // triangle b: 0->1, c: 1->2, a: 0->2, plus x: 3->0 and y: 2->4
        let q = Quiver::new(5, &[(0, 1), (1, 2), (0, 2), (3, 0), (2, 4)]).unwrap();
        let a = Path::arrow(&q, 1);
        let bc = p(&q, 0, &[0, 2]);
        assert_eq!(bc.target(), 2);
        let r = close(&q, &[(a.clone(), bc.clone())]).unwrap();
        let x = Path::arrow(&q, 4);
        let y = Path::arrow(&q, 3);
        let l = x.concat(&a).unwrap().concat(&y).unwrap();
        let rr = x.concat(&bc).unwrap().concat(&y).unwrap();
        assert!(r.related(&l, &rr));
        assert!(r.is_congruence());
    }

    #[test]
    fn discrete_parallel_witness() {
        let par = Quiver::new(2, &[(0, 1), (0, 1)]).unwrap();
        let r = close(&par, &[]).unwrap();
        assert!(!r.is_complete());
        assert_eq!(
            r.witness_incompleteness(),
            Some((Path::arrow(&par, 0), Path::arrow(&par, 1)))
        );
    }

    #[test]
    fn bad_generators_rejected() {
        let q = square();
        let err = close(&q, &[(Path::arrow(&q, 0), Path::arrow(&q, 1))]).unwrap_err();
        assert!(matches!(err, PathError::GeneratorExtremities(..)));
    }

    #[test]
    fn oracle_matches_worklist_on_square_with_diagonal() {
        let q = Quiver::new(4, &[(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]).unwrap();
        let space = PathSpace::new(&q).unwrap();
        let paths = space.paths().to_vec();
        let gens: Vec<_> = paths
            .iter()
            .filter(|x| x.extremities() == (0, 3))
            .skip(1)
            .map(|x| (paths.iter().find(|y| y.extremities() == (0, 3)).unwrap().clone(), x.clone()))
            .take(1)
            .collect();
        let fast = close_in(space.clone(), &gens).unwrap();
        assert_eq!(fast.labels(), &oracle::naive_close(&space, &gens)[..]);
    }

    #[test]
    fn dual_paths_reverse() {
        let q = square();
        let (d, perm) = q.dual();
        let path = p(&q, 0, &[0, 2]);
        let dp = path.dual(&perm);
        assert!(Path::new(&d, dp.source(), dp.arrows().to_vec()).is_ok());
        assert_eq!(dp.extremities(), (3, 0));
    }
}
