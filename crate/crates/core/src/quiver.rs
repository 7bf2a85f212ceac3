//! Finite quivers, quiver morphisms and the standard constructions on them.
//!
//! Vertices are `0..vertex_count` and arrows are `0..arrow_count`. Every
//! [`Quiver`] is kept in canonical form: arrows sorted by `(source, target)`,
//! parallel arrows ordered by insertion. Two quivers are equal exactly when
//! they have the same vertex count and the same canonical arrow list.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::unionfind::UnionFind;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("arrow {index} ({from} -> {to}) references a vertex outside 0..{vertex_count}")]
    VertexOutOfRange {
        index: usize,
        from: VertexId,
        to: VertexId,
        vertex_count: usize,
    },
    #[error("unknown arrow id {0}")]
    UnknownArrow(ArrowId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("vertex map has length {found}, expected {expected}")]
    VertexMapLength { expected: usize, found: usize },
    #[error("arrow map has length {found}, expected {expected}")]
    ArrowMapLength { expected: usize, found: usize },
    #[error("arrow {arrow} is not mapped compatibly with its source and target")]
    NotEquivariant { arrow: ArrowId },
    #[error("cannot compose: codomain of the first morphism differs from the domain of the second")]
    DomainMismatch,
    #[error("bad path-quiver embedding: {0}")]
    BadEmbedding(String),
}

/// A finite quiver in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(VertexId, VertexId)>,
}

/// Maps an input arrow position to its canonical arrow id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renumbering(pub Vec<ArrowId>);

impl Renumbering {
    pub fn identity(n: usize) -> Self {
        Renumbering((0..n).collect())
    }

    pub fn apply(&self, old: ArrowId) -> ArrowId {
        self.0[old]
    }

    pub fn inverse(&self) -> Renumbering {
        let mut inv = vec![0; self.0.len()];
        for (old, &new) in self.0.iter().enumerate() {
            inv[new] = old;
        }
        Renumbering(inv)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Renumbering) -> Renumbering {
        Renumbering(self.0.iter().map(|&a| next.0[a]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &a)| i == a)
    }
}

impl Quiver {
    /// Builds the canonical quiver and reports where each input arrow landed.
    pub fn canonicalize(
        vertex_count: usize,
        arrows: &[(VertexId, VertexId)],
    ) -> Result<(Quiver, Renumbering), QuiverError> {
        for (index, &(source, target)) in arrows.iter().enumerate() {
            if source >= vertex_count || target >= vertex_count {
                return Err(QuiverError::VertexOutOfRange {
                    index,
                    from: source,
                    to: target,
                    vertex_count,
                });
            }
        }
        let mut order: Vec<usize> = (0..arrows.len()).collect();
        // stable: parallel arrows keep their input order
        order.sort_by_key(|&i| arrows[i]);
        let mut perm = vec![0; arrows.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let sorted = order.iter().map(|&i| arrows[i]).collect();
        Ok((
            Quiver {
                vertex_count,
                arrows: sorted,
            },
            Renumbering(perm),
        ))
    }

    pub fn new(vertex_count: usize, arrows: &[(VertexId, VertexId)]) -> Result<Quiver, QuiverError> {
        Self::canonicalize(vertex_count, arrows).map(|(q, _)| q)
    }

    pub fn empty() -> Quiver {
        Quiver {
            vertex_count: 0,
            arrows: Vec::new(),
        }
    }

    /// `n` vertices and no arrows.
    pub fn discrete(n: usize) -> Quiver {
        Quiver {
            vertex_count: n,
            arrows: Vec::new(),
        }
    }

    /// The linear quiver `0 -> 1 -> ... -> k`.
    pub fn path_quiver(k: usize) -> Quiver {
        Quiver {
            vertex_count: k + 1,
            arrows: (0..k).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[(VertexId, VertexId)] {
        &self.arrows
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a].0
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a].1
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, &(s, _))| s == v)
            .map(|(a, _)| a)
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, &(_, t))| t == v)
            .map(|(a, _)| a)
    }

    /// Returns `Some(k)` when this quiver is exactly `PQ_k`.
    pub fn path_length(&self) -> Option<usize> {
        if self.vertex_count == 0 {
            return None;
        }
        let k = self.vertex_count - 1;
        (*self == Quiver::path_quiver(k)).then_some(k)
    }

    /// No directed cycle, self-loops included.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count;
        let mut indegree = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indegree[t] += 1;
        }
        let mut stack: Vec<VertexId> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == n
    }

    /// Length of the longest path; `None` on cyclic quivers.
    pub fn longest_path(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let n = self.vertex_count;
        let mut best = vec![0usize; n];
        // relax n times; acyclic so this converges
        for _ in 0..n {
            for &(s, t) in &self.arrows {
                best[t] = best[t].max(best[s] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// The dual quiver and the renumbering from arrows of `self` to arrows of the dual.
    pub fn dual(&self) -> (Quiver, Renumbering) {
        let swapped: Vec<_> = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        Quiver::canonicalize(self.vertex_count, &swapped).expect("dual keeps vertices in range")
    }

    pub fn dual_quiver(&self) -> Quiver {
        self.dual().0
    }

    pub fn identity(&self) -> QuiverMorphism {
        QuiverMorphism {
            domain: self.clone(),
            codomain: self.clone(),
            vertex_map: (0..self.vertex_count).collect(),
            arrow_map: (0..self.arrows.len()).collect(),
        }
    }

    /// Spanning restriction to `arrows`, with its canonical embedding.
    pub fn restrict(&self, arrows: &BTreeSet<ArrowId>) -> Result<QuiverMorphism, QuiverError> {
        self.sub_quiver(&(0..self.vertex_count).collect(), arrows)
    }

    /// The sub-quiver on the given vertices and arrows, vertices relabelled in
    /// increasing order, together with its embedding into `self`.
    pub fn sub_quiver(
        &self,
        vertices: &BTreeSet<VertexId>,
        arrows: &BTreeSet<ArrowId>,
    ) -> Result<QuiverMorphism, QuiverError> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.vertex_count) {
            return Err(QuiverError::UnknownVertex(v));
        }
        let vertex_map: Vec<VertexId> = vertices.iter().copied().collect();
        let mut relabel = vec![usize::MAX; self.vertex_count];
        for (new, &old) in vertex_map.iter().enumerate() {
            relabel[old] = new;
        }
        let mut pairs = Vec::with_capacity(arrows.len());
        let mut arrow_list = Vec::with_capacity(arrows.len());
        for &a in arrows {
            if a >= self.arrows.len() {
                return Err(QuiverError::UnknownArrow(a));
            }
            let (s, t) = self.arrows[a];
            if relabel[s] == usize::MAX {
                return Err(QuiverError::UnknownVertex(s));
            }
            if relabel[t] == usize::MAX {
                return Err(QuiverError::UnknownVertex(t));
            }
            pairs.push((relabel[s], relabel[t]));
            arrow_list.push(a);
        }
        let (domain, perm) = Quiver::canonicalize(vertex_map.len(), &pairs)?;
        let mut arrow_map = vec![0; arrow_list.len()];
        for (i, &a) in arrow_list.iter().enumerate() {
            arrow_map[perm.apply(i)] = a;
        }
        Ok(QuiverMorphism {
            domain,
            codomain: self.clone(),
            vertex_map,
            arrow_map,
        })
    }

    /// `• -> self` picking out vertex `v`.
    pub fn vertex_embedding(&self, v: VertexId) -> QuiverMorphism {
        assert!(v < self.vertex_count, "vertex {v} out of range");
        QuiverMorphism {
            domain: Quiver::discrete(1),
            codomain: self.clone(),
            vertex_map: vec![v],
            arrow_map: Vec::new(),
        }
    }

    /// `PQ_1 -> self` picking out arrow `a`.
    pub fn arrow_embedding(&self, a: ArrowId) -> QuiverMorphism {
        let (s, t) = self.arrows[a];
        QuiverMorphism {
            domain: Quiver::path_quiver(1),
            codomain: self.clone(),
            vertex_map: vec![s, t],
            arrow_map: vec![a],
        }
    }

    /// Adds an apex vertex (id `vertex_count`) with one arrow to every vertex.
    ///
    /// The arrows of `self` keep their ids; the leg into `v` gets id
    /// `arrow_count + v`.
    pub fn cone(&self) -> Cone {
        let n = self.vertex_count;
        let m = self.arrows.len();
        let mut arrows = self.arrows.clone();
        arrows.extend((0..n).map(|v| (n, v)));
        let quiver = Quiver {
            vertex_count: n + 1,
            arrows,
        };
        debug_assert!(quiver.arrows.windows(2).all(|w| w[0] <= w[1]));
        let inclusion = QuiverMorphism {
            domain: self.clone(),
            codomain: quiver.clone(),
            vertex_map: (0..n).collect(),
            arrow_map: (0..m).collect(),
        };
        Cone {
            quiver,
            inclusion,
            apex: n,
            legs: (m..m + n).collect(),
        }
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({}; ", self.vertex_count)?;
        for (i, (s, t)) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}>{t}")?;
        }
        write!(f, ")")
    }
}

/// `cone(Q)` together with `i_Q`, the apex and the legs `a_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub quiver: Quiver,
    pub inclusion: QuiverMorphism,
    pub apex: VertexId,
    pub legs: Vec<ArrowId>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiverMorphism {
    domain: Quiver,
    codomain: Quiver,
    vertex_map: Vec<VertexId>,
    arrow_map: Vec<ArrowId>,
}

impl fmt::Debug for QuiverMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} -> {:?} [v {:?}] [a {:?}]",
            self.domain, self.codomain, self.vertex_map, self.arrow_map
        )
    }
}

impl QuiverMorphism {
    pub fn new(
        domain: Quiver,
        codomain: Quiver,
        vertex_map: Vec<VertexId>,
        arrow_map: Vec<ArrowId>,
    ) -> Result<Self, QuiverError> {
        if vertex_map.len() != domain.vertex_count {
            return Err(QuiverError::VertexMapLength {
                expected: domain.vertex_count,
                found: vertex_map.len(),
            });
        }
        if arrow_map.len() != domain.arrow_count() {
            return Err(QuiverError::ArrowMapLength {
                expected: domain.arrow_count(),
                found: arrow_map.len(),
            });
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= codomain.vertex_count) {
            return Err(QuiverError::UnknownVertex(v));
        }
        if let Some(&a) = arrow_map.iter().find(|&&a| a >= codomain.arrow_count()) {
            return Err(QuiverError::UnknownArrow(a));
        }
        for (a, &(s, t)) in domain.arrows.iter().enumerate() {
            let (s2, t2) = codomain.arrows[arrow_map[a]];
            if vertex_map[s] != s2 || vertex_map[t] != t2 {
                return Err(QuiverError::NotEquivariant { arrow: a });
            }
        }
        Ok(QuiverMorphism {
            domain,
            codomain,
            vertex_map,
            arrow_map,
        })
    }

    pub fn domain(&self) -> &Quiver {
        &self.domain
    }

    pub fn codomain(&self) -> &Quiver {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrow_map
    }

    pub fn map_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v]
    }

    pub fn map_arrow(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a]
    }

    pub fn is_embedding(&self) -> bool {
        fn injective(xs: &[usize]) -> bool {
            let set: BTreeSet<_> = xs.iter().collect();
            set.len() == xs.len()
        }
        injective(&self.vertex_map) && injective(&self.arrow_map)
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
            && self.arrow_map.iter().enumerate().all(|(i, &a)| i == a)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &QuiverMorphism) -> Result<QuiverMorphism, QuiverError> {
        compose_morphisms(self, first)
    }

    /// `m†: dom† -> cod†`, same underlying maps up to canonical renumbering.
    pub fn dual(&self) -> QuiverMorphism {
        let (dom, dom_perm) = self.domain.dual();
        let (cod, cod_perm) = self.codomain.dual();
        let mut arrow_map = vec![0; self.arrow_map.len()];
        for (a, &b) in self.arrow_map.iter().enumerate() {
            arrow_map[dom_perm.apply(a)] = cod_perm.apply(b);
        }
        QuiverMorphism {
            domain: dom,
            codomain: cod,
            vertex_map: self.vertex_map.clone(),
            arrow_map,
        }
    }

    /// `cone(m): cone(dom) -> cone(cod)`, apex to apex.
    pub fn cone(&self) -> QuiverMorphism {
        let dom = self.domain.cone();
        let cod = self.codomain.cone();
        let m = self.domain.arrow_count();
        let m2 = self.codomain.arrow_count();
        let mut vertex_map = self.vertex_map.clone();
        vertex_map.push(cod.apex);
        let mut arrow_map = self.arrow_map.clone();
        arrow_map.extend(self.vertex_map.iter().map(|&v| m2 + v));
        debug_assert_eq!(arrow_map.len(), m + self.domain.vertex_count);
        QuiverMorphism {
            domain: dom.quiver,
            codomain: cod.quiver,
            vertex_map,
            arrow_map,
        }
    }

    /// Image of vertices and arrows.
    pub fn image(&self) -> (BTreeSet<VertexId>, BTreeSet<ArrowId>) {
        (
            self.vertex_map.iter().copied().collect(),
            self.arrow_map.iter().copied().collect(),
        )
    }
}

/// `m2 ∘ m1`.
pub fn compose_morphisms(
    m2: &QuiverMorphism,
    m1: &QuiverMorphism,
) -> Result<QuiverMorphism, QuiverError> {
    if m1.codomain != m2.domain {
        return Err(QuiverError::DomainMismatch);
    }
    Ok(QuiverMorphism {
        domain: m1.domain.clone(),
        codomain: m2.codomain.clone(),
        vertex_map: m1.vertex_map.iter().map(|&v| m2.vertex_map[v]).collect(),
        arrow_map: m1.arrow_map.iter().map(|&a| m2.arrow_map[a]).collect(),
    })
}

/// Leftmost embedding `PQ_k -> PQ_l`.
pub fn sp_embedding(k: usize, l: usize) -> Result<QuiverMorphism, QuiverError> {
    shifted_embedding(k, l, 0)
}

/// Rightmost embedding `PQ_k -> PQ_l`.
pub fn tp_embedding(k: usize, l: usize) -> Result<QuiverMorphism, QuiverError> {
    if k > l {
        return Err(QuiverError::BadEmbedding(format!("PQ_{k} does not fit in PQ_{l}")));
    }
    shifted_embedding(k, l, l - k)
}

fn shifted_embedding(k: usize, l: usize, shift: usize) -> Result<QuiverMorphism, QuiverError> {
    if k > l {
        return Err(QuiverError::BadEmbedding(format!("PQ_{k} does not fit in PQ_{l}")));
    }
    Ok(QuiverMorphism {
        domain: Quiver::path_quiver(k),
        codomain: Quiver::path_quiver(l),
        vertex_map: (0..=k).map(|i| i + shift).collect(),
        arrow_map: (0..k).map(|i| i + shift).collect(),
    })
}

/// The two endpoints of a nontrivial path-quiver: `0 ↦ 0`, `1 ↦ k`.
pub fn st_embedding(k: usize) -> Result<QuiverMorphism, QuiverError> {
    if k == 0 {
        return Err(QuiverError::BadEmbedding(
            "st needs a nontrivial path-quiver".into(),
        ));
    }
    Ok(QuiverMorphism {
        domain: Quiver::discrete(2),
        codomain: Quiver::path_quiver(k),
        vertex_map: vec![0, k],
        arrow_map: Vec::new(),
    })
}

/// A pushout `(Q', m'_1, m'_2)` of a span `Q1 <- Q -> Q2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutResult {
    pub pushout: Quiver,
    pub inj1: QuiverMorphism,
    pub inj2: QuiverMorphism,
}

impl PushoutResult {
    /// The three conditions of a pushout configuration.
    pub fn is_pushout_configuration(&self, m1: &QuiverMorphism, m2: &QuiverMorphism) -> bool {
        let (Ok(left), Ok(right)) = (self.inj1.after(m1), self.inj2.after(m2)) else {
            return false;
        };
        if left != right {
            return false;
        }
        let (v1, a1) = self.inj1.image();
        let (v2, a2) = self.inj2.image();
        let covers_v = v1.union(&v2).count() == self.pushout.vertex_count();
        let covers_a = a1.union(&a2).count() == self.pushout.arrow_count();
        let (vc, ac) = left.image();
        let meet_v: BTreeSet<_> = v1.intersection(&v2).copied().collect();
        let meet_a: BTreeSet<_> = a1.intersection(&a2).copied().collect();
        covers_v && covers_a && meet_v == vc && meet_a == ac
    }
}

/// Glues `codomain(m1)` and `codomain(m2)` along the common domain.
///
/// Vertices and arrows of the result are the classes of `Q1 ⊔ Q2` under the
/// identifications `m1(x) ~ m2(x)`, numbered by their least member (first
/// component before second), then canonicalized.
pub fn pushout(m1: &QuiverMorphism, m2: &QuiverMorphism) -> Result<PushoutResult, QuiverError> {
    if m1.domain != m2.domain {
        return Err(QuiverError::DomainMismatch);
    }
    let q1 = &m1.codomain;
    let q2 = &m2.codomain;
    let (n1, n2) = (q1.vertex_count, q2.vertex_count);
    let (a1, a2) = (q1.arrow_count(), q2.arrow_count());

    let mut vuf = UnionFind::new(n1 + n2);
    for v in 0..m1.domain.vertex_count {
        vuf.union(m1.vertex_map[v], n1 + m2.vertex_map[v]);
    }
    let mut auf = UnionFind::new(a1 + a2);
    for a in 0..m1.domain.arrow_count() {
        auf.union(m1.arrow_map[a], a1 + m2.arrow_map[a]);
    }

    // number classes by their least member
    let vclass = number_classes(&mut vuf);
    let aclass = number_classes(&mut auf);
    let vertex_count = vclass.iter().copied().max().map_or(0, |c| c + 1);
    let arrow_classes = aclass.iter().copied().max().map_or(0, |c| c + 1);

    let mut ends = vec![(0, 0); arrow_classes];
    for a in 0..a1 {
        let (s, t) = q1.arrows[a];
        ends[aclass[a]] = (vclass[s], vclass[t]);
    }
    for a in 0..a2 {
        let (s, t) = q2.arrows[a];
        ends[aclass[a1 + a]] = (vclass[n1 + s], vclass[n1 + t]);
    }
    let (pushout, perm) = Quiver::canonicalize(vertex_count, &ends)?;

    let inj1 = QuiverMorphism {
        domain: q1.clone(),
        codomain: pushout.clone(),
        vertex_map: (0..n1).map(|v| vclass[v]).collect(),
        arrow_map: (0..a1).map(|a| perm.apply(aclass[a])).collect(),
    };
    let inj2 = QuiverMorphism {
        domain: q2.clone(),
        codomain: pushout.clone(),
        vertex_map: (0..n2).map(|v| vclass[n1 + v]).collect(),
        arrow_map: (0..a2).map(|a| perm.apply(aclass[a1 + a])).collect(),
    };
    Ok(PushoutResult {
        pushout,
        inj1,
        inj2,
    })
}

fn number_classes(uf: &mut UnionFind) -> Vec<usize> {
    let n = uf.len();
    let mut root_id = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for (x, slot) in out.iter_mut().enumerate() {
        let r = uf.find(x);
        if root_id[r] == usize::MAX {
            root_id[r] = next;
            next += 1;
        }
        *slot = root_id[r];
    }
    out
}

/// All sub-quivers as `(vertex set, arrow set)` pairs, in a fixed order.
pub fn sub_quiver_supports(q: &Quiver) -> Vec<(BTreeSet<VertexId>, BTreeSet<ArrowId>)> {
    let n = q.vertex_count();
    let m = q.arrow_count();
    assert!(n < 20 && m < 20, "sub-quiver enumeration is exponential");
    let mut out = Vec::new();
    for vmask in 0u32..(1 << n) {
        let allowed: Vec<ArrowId> = (0..m)
            .filter(|&a| {
                let (s, t) = q.arrows[a];
                vmask & (1 << s) != 0 && vmask & (1 << t) != 0
            })
            .collect();
        for amask in 0u32..(1 << allowed.len()) {
            let vs = (0..n).filter(|&v| vmask & (1 << v) != 0).collect();
            let arrows = allowed
                .iter()
                .enumerate()
                .filter(|(i, _)| amask & (1 << i) != 0)
                .map(|(_, &a)| a)
                .collect();
            out.push((vs, arrows));
        }
    }
    out
}

/// One representative per isomorphism class of quivers with at most
/// `max_vertices` vertices and `max_arrows` arrows, optionally acyclic only.
///
/// The representative is the lexicographically least arrow list over all
/// vertex relabellings.
pub fn quivers_up_to_iso(max_vertices: usize, max_arrows: usize, acyclic_only: bool) -> Vec<Quiver> {
    let mut seen = BTreeSet::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| !acyclic_only || s < t || n == 0)
            .collect();
        let perms = permutations(n);
        // multisets of pairs of size <= max_arrows
        let mut stack: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, Vec::new())];
        while let Some((start, arrows)) = stack.pop() {
            let q = Quiver::new(n, &arrows).expect("pairs in range");
            if !acyclic_only || q.is_acyclic() {
                seen.insert(iso_representative(&q, &perms));
            }
            if arrows.len() < max_arrows {
                for i in start..pairs.len() {
                    let mut next = arrows.clone();
                    next.push(pairs[i]);
                    stack.push((i, next));
                }
            }
        }
    }
    let mut out: Vec<Quiver> = seen.into_iter().collect();
    out.sort_by(|a, b| {
        (a.vertex_count, a.arrow_count(), &a.arrows).cmp(&(b.vertex_count, b.arrow_count(), &b.arrows))
    });
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut current, &mut out);
    out
}

fn heap_permute(k: usize, xs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(xs.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, xs, out);
        if k % 2 == 0 {
            xs.swap(i, k - 1);
        } else {
            xs.swap(0, k - 1);
        }
    }
}

fn iso_representative(q: &Quiver, perms: &[Vec<usize>]) -> Quiver {
    perms
        .iter()
        .map(|p| {
            let arrows: Vec<_> = q.arrows.iter().map(|&(s, t)| (p[s], p[t])).collect();
            Quiver::new(q.vertex_count, &arrows).expect("permutation keeps range")
        })
        .min()
        .unwrap_or_else(|| q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set<T: Ord + Copy>(xs: &[T]) -> BTreeSet<T> {
        xs.iter().copied().collect()
    }

    #[test]
    fn canonical_numbering_matches_drawing_convention() {
        let (q, perm) = Quiver::canonicalize(3, &[(0, 1), (0, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!(q.arrows(), &[(0, 1), (0, 2), (1, 2), (1, 2)]);
        assert!(perm.is_identity());

        let (q, perm) = Quiver::canonicalize(2, &[(1, 0), (0, 1)]).unwrap();
        assert_eq!(q.arrows(), &[(0, 1), (1, 0)]);
        assert_eq!(perm.0, vec![1, 0]);

        assert_eq!(Quiver::new(0, &[]).unwrap(), Quiver::empty());
    }

    #[test]
    fn out_of_range_arrow_is_named() {
        let err = Quiver::new(2, &[(0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, QuiverError::VertexOutOfRange { index: 1, .. }));
    }

    #[test]
    fn parallel_arrows_keep_input_order() {
        let (_, perm) = Quiver::canonicalize(3, &[(1, 2), (0, 1), (1, 2)]).unwrap();
        assert_eq!(perm.0, vec![1, 0, 2]);
    }

    #[test]
    fn dual_of_path_quiver() {
        let (d, perm) = Quiver::path_quiver(2).dual();
        assert_eq!(d.arrows(), &[(1, 0), (2, 1)]);
        assert!(perm.is_identity());
        assert_eq!(Quiver::empty().dual_quiver(), Quiver::empty());
    }

    #[test]
    fn dual_is_an_involution() {
        let q = Quiver::new(3, &[(0, 2), (1, 0), (2, 1), (0, 2), (1, 1)]).unwrap();
        let (d, p1) = q.dual();
        let (dd, p2) = d.dual();
        assert_eq!(dd, q);
        assert!(p1.then(&p2).is_identity());
    }

    #[test]
    fn acyclicity() {
        for k in 0..6 {
            assert!(Quiver::path_quiver(k).is_acyclic());
        }
        assert!(!Quiver::new(1, &[(0, 0)]).unwrap().is_acyclic());
        let fig = Quiver::new(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]).unwrap();
        assert!(fig.is_acyclic());
        assert!(!Quiver::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap().is_acyclic());
        assert_eq!(fig.longest_path(), Some(3));
    }

    #[test]
    fn restriction_of_triangle() {
        // a: 0->2, b: 0->1, c: 1->2 ; canonical ids b=0, a=1, c=2
        let tri = Quiver::new(3, &[(0, 2), (0, 1), (1, 2)]).unwrap();
        let m = tri.restrict(&set(&[0, 2])).unwrap();
        assert_eq!(m.domain().vertex_count(), 3);
        assert_eq!(m.domain().arrows(), &[(0, 1), (1, 2)]);
        assert_eq!(m.arrow_map(), &[0, 2]);
        assert!(m.is_embedding());

        let all = tri.restrict(&set(&[0, 1, 2])).unwrap();
        assert!(all.is_identity());
        let none = tri.restrict(&BTreeSet::new()).unwrap();
        assert_eq!(*none.domain(), Quiver::discrete(3));
        assert_eq!(tri.restrict(&set(&[7])).unwrap_err(), QuiverError::UnknownArrow(7));
    }

    #[test]
    fn path_embeddings() {
        let sp = sp_embedding(1, 3).unwrap();
        assert_eq!(sp.vertex_map(), &[0, 1]);
        assert_eq!(sp.arrow_map(), &[0]);
        let tp = tp_embedding(1, 3).unwrap();
        assert_eq!(tp.vertex_map(), &[2, 3]);
        assert_eq!(tp.arrow_map(), &[2]);
        let st = st_embedding(2).unwrap();
        assert_eq!(st.vertex_map(), &[0, 2]);
        assert!(st.arrow_map().is_empty());
        assert!(sp_embedding(3, 1).is_err());
        assert!(st_embedding(0).is_err());
    }

    #[test]
    fn composition() {
        let sp12 = sp_embedding(1, 2).unwrap();
        let sp23 = sp_embedding(2, 3).unwrap();
        let c = compose_morphisms(&sp23, &sp12).unwrap();
        assert_eq!(c, sp_embedding(1, 3).unwrap());
        assert!(c.is_embedding());
        let id = Quiver::path_quiver(3).identity();
        assert_eq!(id.after(&c).unwrap(), c);
        assert_eq!(
            compose_morphisms(&sp12, &sp12).unwrap_err(),
            QuiverError::DomainMismatch
        );
    }

    #[test]
    fn morphism_validation() {
        let pq1 = Quiver::path_quiver(1);
        let loop1 = Quiver::new(1, &[(0, 0)]).unwrap();
        assert!(QuiverMorphism::new(pq1.clone(), loop1.clone(), vec![0, 0], vec![0]).is_ok());
        let pq2 = Quiver::path_quiver(2);
        assert!(matches!(
            QuiverMorphism::new(pq1, pq2, vec![0, 2], vec![0]),
            Err(QuiverError::NotEquivariant { arrow: 0 })
        ));
    }

    #[test]
    fn pushout_of_two_path_quivers() {
        let st3 = st_embedding(3).unwrap();
        let st2 = st_embedding(2).unwrap();
        let po = pushout(&st3, &st2).unwrap();
        let expected = Quiver::new(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]).unwrap();
        assert_eq!(po.pushout, expected);
        assert!(po.inj1.is_embedding() && po.inj2.is_embedding());
        assert!(po.is_pushout_configuration(&st3, &st2));
    }

    #[test]
    fn pushout_degenerate_cases() {
        let q1 = Quiver::path_quiver(1);
        let q2 = Quiver::new(2, &[(1, 0)]).unwrap();
        let e1 = QuiverMorphism::new(Quiver::empty(), q1.clone(), vec![], vec![]).unwrap();
        let e2 = QuiverMorphism::new(Quiver::empty(), q2.clone(), vec![], vec![]).unwrap();
        let po = pushout(&e1, &e2).unwrap();
        assert_eq!(po.pushout, Quiver::new(4, &[(0, 1), (3, 2)]).unwrap());
        assert!(po.is_pushout_configuration(&e1, &e2));

        let id = q1.identity();
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.pushout, q1);
        assert!(po.inj1.is_identity() && po.inj2.is_identity());
    }

    #[test]
    fn cones() {
        let c = Quiver::empty().cone();
        assert_eq!(c.quiver, Quiver::discrete(1));
        let c = Quiver::discrete(2).cone();
        assert_eq!(c.quiver.arrows(), &[(2, 0), (2, 1)]);
        assert_eq!(c.legs, vec![0, 1]);
        let c = Quiver::path_quiver(1).cone();
        assert_eq!(c.quiver.arrows(), &[(0, 1), (2, 0), (2, 1)]);
        assert_eq!(c.apex, 2);
        let a = Quiver::path_quiver(2).arrow_embedding(1).cone();
        assert_eq!(a.domain(), &Quiver::path_quiver(1).cone().quiver);
        assert_eq!(a.vertex_map(), &[1, 2, 3]);
        assert_eq!(a.arrow_map(), &[1, 3, 4]);
    }

    #[test]
    fn sub_quivers_relabel_vertices() {
        let q = Quiver::path_quiver(2);
        let m = q.sub_quiver(&set(&[1, 2]), &set(&[1])).unwrap();
        assert_eq!(*m.domain(), Quiver::path_quiver(1));
        assert_eq!(m.vertex_map(), &[1, 2]);
        assert_eq!(sub_quiver_supports(&q).len(), 13);
    }

    #[test]
    fn iso_classes_small() {
        // 1 empty, 1 dot, 2 vertices: discrete, one arrow, two parallel
        let qs = quivers_up_to_iso(2, 2, true);
        assert_eq!(qs.len(), 5);
        assert!(qs.iter().all(Quiver::is_acyclic));
    }
}
