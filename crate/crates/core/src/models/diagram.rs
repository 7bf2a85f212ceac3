//! Diagrams as vertex/arrow assignments, with pullback, path composites and
//! the commutativity test.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::category::{FiniteCategory, MorphId, ObjectId};
use super::ModelError;
use crate::paths::Path;
use crate::quiver::{Quiver, QuiverMorphism};

/// A functor `free(Q) → C`, determined by where it sends vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub vertices: Vec<ObjectId>,
    pub arrows: Vec<MorphId>,
}

impl Diagram {
    pub fn new(vertices: Vec<ObjectId>, arrows: Vec<MorphId>) -> Diagram {
        Diagram { vertices, arrows }
    }

    pub fn is_valid(&self, c: &FiniteCategory, q: &Quiver) -> bool {
        self.vertices.len() == q.vertex_count()
            && self.arrows.len() == q.arrow_count()
            && self.vertices.iter().all(|&o| (o as usize) < c.object_count())
            && q.arrows().iter().zip(&self.arrows).all(|(&(s, t), &f)| {
                (f as usize) < c.morphism_count()
                    && c.source(f) == self.vertices[s]
                    && c.target(f) == self.vertices[t]
            })
    }

    /// `m*(D) = D ∘ Φ_m`.
    pub fn pullback(&self, m: &QuiverMorphism) -> Diagram {
        Diagram {
            vertices: m.vertex_map().iter().map(|&v| self.vertices[v]).collect(),
            arrows: m.arrow_map().iter().map(|&a| self.arrows[a]).collect(),
        }
    }

    /// Composite along a path of the shape; identity on empty paths.
    pub fn path_value(&self, c: &FiniteCategory, p: &Path) -> MorphId {
        let mut acc = c.identity(self.vertices[p.source()]);
        for &a in p.arrows() {
            acc = c.compose_raw(self.arrows[a], acc);
        }
        acc
    }

    pub fn display(&self, c: &FiniteCategory) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let as_: Vec<&str> = self.arrows.iter().map(|&f| c.morphism_name(f)).collect();
        format!("vertices=[{}] arrows=[{}]", vs.join(","), as_.join(","))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.vertices, self.arrows)
    }
}

/// `comp(D)` for a diagram over `PQ_k`.
pub fn comp(c: &FiniteCategory, q: &Quiver, d: &Diagram) -> Result<MorphId, ModelError> {
    let k = q.path_length().ok_or(ModelError::NotPathShape)?;
    let p = Path::new(q, 0, (0..k).collect()).map_err(|_| ModelError::NotPathShape)?;
    Ok(d.path_value(c, &p))
}

/// Value-set fixpoint: for each source vertex, the set of composites reaching
/// each vertex must be a singleton (the identity at the source itself).
pub fn is_commutative(c: &FiniteCategory, q: &Quiver, d: &Diagram) -> bool {
    let n = q.vertex_count();
    let m = c.morphism_count();
    let mut seen = vec![false; n * m];
    let mut value: Vec<MorphId> = vec![MorphId::MAX; n];
    let mut queue = VecDeque::new();
    for u in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        value.iter_mut().for_each(|v| *v = MorphId::MAX);
        let id = c.identity(d.vertices[u]);
        value[u] = id;
        seen[u * m + id as usize] = true;
        queue.clear();
        queue.push_back((u, id));
        while let Some((v, f)) = queue.pop_front() {
            for a in q.outgoing(v) {
                let w = q.target(a);
                let g = c.compose_raw(d.arrows[a], f);
                if seen[w * m + g as usize] {
                    continue;
                }
                if value[w] != MorphId::MAX {
                    return false;
                }
                value[w] = g;
                seen[w * m + g as usize] = true;
                queue.push_back((w, g));
            }
        }
    }
    true
}

/// Commutativity checked over every path of length at most `max_len`.
///
/// Paths are taken length by length; each layer keeps the set of composites
/// of the paths of exactly that length, so the check is literal without
/// listing exponentially many paths.
pub fn is_commutative_bruteforce(c: &FiniteCategory, q: &Quiver, d: &Diagram, max_len: usize) -> bool {
    let n = q.vertex_count();
    for s in 0..n {
        let mut reached: Vec<Option<MorphId>> = vec![None; n];
        let mut layer: Vec<BTreeSet<MorphId>> = vec![BTreeSet::new(); n];
        layer[s].insert(c.identity(d.vertices[s]));
        for len in 0..=max_len {
            for (t, values) in layer.iter().enumerate() {
                for &f in values {
                    match reached[t] {
                        Some(g) if g != f => return false,
                        _ => reached[t] = Some(f),
                    }
                }
            }
            if len == max_len || layer.iter().all(BTreeSet::is_empty) {
                break;
            }
            let mut next = vec![BTreeSet::new(); n];
            for (v, values) in layer.iter().enumerate() {
                for a in q.outgoing(v) {
                    for &f in values {
                        next[q.target(a)].insert(c.compose_raw(d.arrows[a], f));
                    }
                }
            }
            layer = next;
        }
    }
    true
}

/// Number of diagrams over `q`, saturating.
pub fn count_diagrams(c: &FiniteCategory, q: &Quiver) -> u128 {
    count_with(c, q, &vec![None; q.vertex_count()], &vec![None; q.arrow_count()])
}

fn count_with(c: &FiniteCategory, q: &Quiver, fv: &[Option<ObjectId>], fa: &[Option<MorphId>]) -> u128 {
    let Some(fv) = derive_vertices(c, q, fv, fa) else { return 0 };
    let mut total: u128 = 0;
    let mut assign = vec![0; q.vertex_count()];
    fn rec(
        c: &FiniteCategory,
        q: &Quiver,
        fv: &[Option<ObjectId>],
        fa: &[Option<MorphId>],
        v: usize,
        assign: &mut [ObjectId],
        total: &mut u128,
    ) {
        if v == q.vertex_count() {
            let mut prod: u128 = 1;
            for (a, &(s, t)) in q.arrows().iter().enumerate() {
                if fa[a].is_none() {
                    prod = prod.saturating_mul(c.hom(assign[s], assign[t]).len() as u128);
                    if prod == 0 {
                        return;
                    }
                }
            }
            *total = total.saturating_add(prod);
            return;
        }
        let objs: Vec<ObjectId> = match fv[v] {
            Some(o) => vec![o],
            None => (0..c.object_count() as ObjectId).collect(),
        };
        for o in objs {
            assign[v] = o;
            rec(c, q, fv, fa, v + 1, assign, total);
        }
    }
    rec(c, q, &fv, fa, 0, &mut assign, &mut total);
    total
}

/// Vertex constraints implied by fixed arrows; `None` on conflict.
fn derive_vertices(
    c: &FiniteCategory,
    q: &Quiver,
    fv: &[Option<ObjectId>],
    fa: &[Option<MorphId>],
) -> Option<Vec<Option<ObjectId>>> {
    let mut out = fv.to_vec();
    for (a, f) in fa.iter().enumerate() {
        if let Some(f) = *f {
            for (v, o) in [(q.source(a), c.source(f)), (q.target(a), c.target(f))] {
                match out[v] {
                    Some(x) if x != o => return None,
                    _ => out[v] = Some(o),
                }
            }
        }
    }
    Some(out)
}

/// All diagrams over `q`, lexicographic in (vertices, arrows).
pub fn diagrams(c: &FiniteCategory, q: &Quiver, cap: usize) -> Result<Vec<Diagram>, ModelError> {
    diagrams_with(c, q, &vec![None; q.vertex_count()], &vec![None; q.arrow_count()], cap)
}

/// Diagrams extending a partial assignment, in lexicographic order.
pub fn diagrams_with(
    c: &FiniteCategory,
    q: &Quiver,
    fixed_vertices: &[Option<ObjectId>],
    fixed_arrows: &[Option<MorphId>],
    cap: usize,
) -> Result<Vec<Diagram>, ModelError> {
    let size = count_with(c, q, fixed_vertices, fixed_arrows);
    if size > cap as u128 {
        return Err(ModelError::Resource {
            what: format!("diagrams over {q} in {}", c.name()),
            size,
            cap,
        });
    }
    let Some(fv) = derive_vertices(c, q, fixed_vertices, fixed_arrows) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(size as usize);
    let mut d = Diagram::new(vec![0; q.vertex_count()], vec![0; q.arrow_count()]);
    enumerate(c, q, &fv, fixed_arrows, 0, &mut d, &mut out);
    Ok(out)
}

fn enumerate(
    c: &FiniteCategory,
    q: &Quiver,
    fv: &[Option<ObjectId>],
    fa: &[Option<MorphId>],
    pos: usize,
    d: &mut Diagram,
    out: &mut Vec<Diagram>,
) {
    let n = q.vertex_count();
    if pos < n {
        match fv[pos] {
            Some(o) => {
                d.vertices[pos] = o;
                enumerate(c, q, fv, fa, pos + 1, d, out);
            }
            None => {
                for o in 0..c.object_count() as ObjectId {
                    d.vertices[pos] = o;
                    enumerate(c, q, fv, fa, pos + 1, d, out);
                }
            }
        }
        return;
    }
    let a = pos - n;
    if a == q.arrow_count() {
        out.push(d.clone());
        return;
    }
    match fa[a] {
        Some(f) => {
            d.arrows[a] = f;
            enumerate(c, q, fv, fa, pos + 1, d, out);
        }
        None => {
            let (s, t) = (d.vertices[q.source(a)], d.vertices[q.target(a)]);
            for &f in c.hom(s, t) {
                d.arrows[a] = f;
                enumerate(c, q, fv, fa, pos + 1, d, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::samples;
    use crate::quiver::sp_embedding;

    #[test]
    fn arrow_category_one_arrow_shape() {
        let c = samples::arrow();
        let ds = diagrams(&c, &Quiver::path_quiver(1), 100).unwrap();
        assert_eq!(ds.len(), 3);
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
        assert!(ds.iter().all(|d| d.is_valid(&c, &Quiver::path_quiver(1))));
    }

    #[test]
    fn comp_and_pullback() {
        let c = samples::monoid3();
        let q = Quiver::path_quiver(2);
        let a = c.find("a", 0, 0).unwrap();
        let b = c.find("b", 0, 0).unwrap();
        let d = Diagram::new(vec![0, 0, 0], vec![a, b]);
        // left-zero band: b ∘ a = b
        assert_eq!(comp(&c, &q, &d).unwrap(), c.compose(b, a).unwrap());
        let e = d.pullback(&sp_embedding(1, 2).unwrap());
        assert_eq!(e.arrows, vec![a]);
        assert_eq!(comp(&c, &Quiver::path_quiver(0), &Diagram::new(vec![0], vec![])).unwrap(), c.identity(0));
        assert!(matches!(comp(&c, &Quiver::discrete(2), &Diagram::new(vec![0, 0], vec![])), Err(ModelError::NotPathShape)));
    }

    #[test]
    fn commutativity_triangle_and_loop() {
        let c = samples::monoid3();
        let (one, a, b) = (c.identity(0), c.find("a", 0, 0).unwrap(), c.find("b", 0, 0).unwrap());
        let t = Quiver::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        // arrow 1 is the long side 0→2, composite is arrow2 ∘ arrow0
        let good = Diagram::new(vec![0; 3], vec![a, c.compose(b, a).unwrap(), b]);
        let bad = Diagram::new(vec![0; 3], vec![a, one, b]);
        assert!(is_commutative(&c, &t, &good));
        assert!(!is_commutative(&c, &t, &bad));
        let lp = Quiver::new(1, &[(0, 0)]).unwrap();
        assert!(!is_commutative(&c, &lp, &Diagram::new(vec![0], vec![a])));
        assert!(is_commutative(&c, &lp, &Diagram::new(vec![0], vec![one])));
    }

    #[test]
    fn partial_assignment_and_cap() {
        let c = samples::linear_f2();
        let q = Quiver::path_quiver(1);
        assert_eq!(count_diagrams(&c, &q), 31);
        let f = c.hom(1, 2)[0];
        let ds = diagrams_with(&c, &q, &[None, None], &[Some(f)], 10).unwrap();
        assert_eq!(ds, vec![Diagram::new(vec![1, 2], vec![f])]);
        let none = diagrams_with(&c, &q, &[Some(0), None], &[Some(f)], 10).unwrap();
        assert!(none.is_empty());
        assert!(matches!(diagrams(&c, &Quiver::path_quiver(2), 100), Err(ModelError::Resource { .. })));
    }
}
