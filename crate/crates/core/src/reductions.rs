//! Commerge instances encoding finitely presented monoids.
//!
//! A presentation `⟨B⟩/R` is read with every relator equated to the
//! identity. The encodings are built so that the quotient of the free
//! category by the premises is the category of the monoid, which makes their
//! validity as hard as the triviality of the monoid.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::decide::CommergeInstance;
use crate::formulas::Signature;
use crate::quiver::{pushout, st_embedding, ArrowId, Quiver, QuiverMorphism, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("relator {relator} uses generator index {index}, alphabet has {size} symbols")]
    UnknownGenerator {
        relator: usize,
        index: usize,
        size: usize,
    },
    #[error("empty alphabet with a nonempty relator")]
    EmptyAlphabet,
    #[error("layer count {k} too small: need k >= 2 and k > {longest} (longest relator)")]
    LayersTooFew { k: usize, longest: usize },
    #[error("unknown generator symbol `{0}`")]
    UnknownSymbol(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generators: Vec<String>,
    /// Words over generator indices, each equated to the identity.
    pub relations: Vec<Vec<usize>>,
}

impl MonoidPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        for (r, word) in relations.iter().enumerate() {
            if let Some(&index) = word.iter().find(|&&g| g >= generators.len()) {
                if generators.is_empty() {
                    return Err(ReductionError::EmptyAlphabet);
                }
                return Err(ReductionError::UnknownGenerator {
                    relator: r,
                    index,
                    size: generators.len(),
                });
            }
        }
        Ok(MonoidPresentation {
            generators,
            relations,
        })
    }

    /// Single-character generators, relators written as strings; `""` is the
    /// empty relator.
    pub fn from_chars(generators: &str, relations: &[&str]) -> Result<Self, ReductionError> {
        let gens: Vec<String> = generators.chars().map(|c| c.to_string()).collect();
        let mut rels = Vec::new();
        for w in relations {
            let mut word = Vec::new();
            for c in w.chars() {
                let i = gens
                    .iter()
                    .position(|g| g.chars().next() == Some(c))
                    .ok_or_else(|| ReductionError::UnknownSymbol(c.to_string()))?;
                word.push(i);
            }
            rels.push(word);
        }
        MonoidPresentation::new(gens, rels)
    }

    pub fn longest_relator(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let single = self.generators.iter().all(|g| g.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&g| self.generators[g].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }
}

/// A generated instance with surface names for its arrows and premises.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub instance: CommergeInstance,
    /// Label of each canonical arrow id.
    pub labels: Vec<String>,
    pub premise_names: Vec<String>,
}

/// One vertex, a loop per generator (ids `0..|B|`) and a loop `e` (id `|B|`).
///
/// Premises: `m_e` from the one-loop quiver onto `e`, and for each nonempty
/// relator `ρ` of length `l` the morphism from the pushout of `st_l` and
/// `st_1` sending the path onto `ρ` and the extra arrow onto `e`. Empty
/// relators are trivial and add no premise.
pub fn loop_encoding(p: &MonoidPresentation) -> Encoding {
    let b = p.generators.len();
    let q = Quiver::new(1, &vec![(0, 0); b + 1]).unwrap();
    let e = b;
    let mut labels: Vec<String> = p.generators.clone();
    labels.push("e".into());
    let one_loop = Quiver::new(1, &[(0, 0)]).unwrap();
    let mut premises = vec![QuiverMorphism::new(one_loop, q.clone(), vec![0], vec![e]).unwrap()];
    let mut names = vec!["m_e".to_string()];
    for (r, word) in p.relations.iter().enumerate() {
        if word.is_empty() {
            continue;
        }
        let po = pushout(&st_embedding(word.len()).unwrap(), &st_embedding(1).unwrap()).unwrap();
        let mut arrow_map = vec![0; po.pushout.arrow_count()];
        for (i, &g) in word.iter().enumerate() {
            arrow_map[po.inj1.map_arrow(i)] = g;
        }
        arrow_map[po.inj2.map_arrow(0)] = e;
        let vertex_map = vec![0; po.pushout.vertex_count()];
        premises.push(QuiverMorphism::new(po.pushout, q.clone(), vertex_map, arrow_map).unwrap());
        names.push(format!("m_rho{r}"));
    }
    Encoding {
        instance: CommergeInstance::new_unchecked(q, premises, Signature::SigmaRing),
        labels,
        premise_names: names,
    }
}

/// Arrow ids of a layered quiver by their construction names.
#[derive(Debug, Clone)]
struct Layers {
    quiver: Quiver,
    labels: Vec<String>,
    /// `(generator, i, j, id)`
    b: Vec<(usize, VertexId, VertexId, ArrowId)>,
    /// `(i, j, id)`
    e: Vec<(VertexId, VertexId, ArrowId)>,
}

impl Layers {
    fn build(p: &MonoidPresentation, k: usize, all_e: bool) -> Layers {
        let mut pairs = Vec::new();
        let mut names = Vec::new();
        let mut b_raw = Vec::new();
        let mut e_raw = Vec::new();
        for (g, sym) in p.generators.iter().enumerate() {
            for i in 0..k {
                for j in i + 1..k {
                    b_raw.push((g, i, j, pairs.len()));
                    pairs.push((i, j));
                    names.push(format!("{sym}_{i}_{j}"));
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                if all_e || i < j {
                    e_raw.push((i, j, pairs.len()));
                    pairs.push((i, j));
                    names.push(format!("e_{i}_{j}"));
                }
            }
        }
        let (quiver, perm) = Quiver::canonicalize(k, &pairs).unwrap();
        let mut labels = vec![String::new(); names.len()];
        for (i, n) in names.into_iter().enumerate() {
            labels[perm.apply(i)] = n;
        }
        Layers {
            quiver,
            labels,
            b: b_raw.into_iter().map(|(g, i, j, a)| (g, i, j, perm.apply(a))).collect(),
            e: e_raw.into_iter().map(|(i, j, a)| (i, j, perm.apply(a))).collect(),
        }
    }

    fn b_arrow(&self, g: usize, i: usize, j: usize) -> ArrowId {
        self.b
            .iter()
            .find(|&&(h, s, t, _)| (h, s, t) == (g, i, j))
            .map(|&(.., a)| a)
            .unwrap()
    }

    fn e_arrow(&self, i: usize, j: usize) -> Option<ArrowId> {
        self.e
            .iter()
            .find(|&&(s, t, _)| (s, t) == (i, j))
            .map(|&(.., a)| a)
    }

    /// `A_{b,i,j} = {e_{0,i} (i≠0), b_{i,j}, e_{j,k-1} (j≠k-1), b_{0,k-1}}`.
    fn a_b(&self, g: usize, i: usize, j: usize, k: usize) -> BTreeSet<ArrowId> {
        let mut a = BTreeSet::new();
        if i != 0 {
            a.insert(self.e_arrow(0, i).unwrap());
        }
        a.insert(self.b_arrow(g, i, j));
        if j != k - 1 {
            a.insert(self.e_arrow(j, k - 1).unwrap());
        }
        a.insert(self.b_arrow(g, 0, k - 1));
        a
    }

    /// `A_ρ = {e_{0,l}, ρ_1 at (0,1), ..., ρ_l at (l-1,l)}`; `e_{0,0}` is
    /// dropped when absent from the quiver.
    fn a_rho(&self, word: &[usize]) -> BTreeSet<ArrowId> {
        let mut a = BTreeSet::new();
        if let Some(e) = self.e_arrow(0, word.len()) {
            a.insert(e);
        }
        for (i, &g) in word.iter().enumerate() {
            a.insert(self.b_arrow(g, i, i + 1));
        }
        a
    }
}

/// The cyclic layered quiver with `e_{i,j}` for all ordered pairs and the
/// premise family `A_e`, `A_{b,i,j}`, `A_ρ` as spanning-restriction
/// embeddings.
pub fn layered_encoding(p: &MonoidPresentation, k: usize) -> Result<Encoding, ReductionError> {
    let longest = p.longest_relator();
    if k < 2 || k <= longest {
        return Err(ReductionError::LayersTooFew { k, longest });
    }
    let layers = Layers::build(p, k, true);
    let q = &layers.quiver;
    let mut premises = Vec::new();
    let mut names = Vec::new();
    let a_e: BTreeSet<ArrowId> = layers.e.iter().map(|&(.., a)| a).collect();
    premises.push(q.restrict(&a_e).unwrap());
    names.push("A_e".to_string());
    for (g, sym) in p.generators.iter().enumerate() {
        for i in 0..k {
            for j in i + 1..k {
                premises.push(q.restrict(&layers.a_b(g, i, j, k)).unwrap());
                names.push(format!("A_{sym}_{i}_{j}"));
            }
        }
    }
    for (r, word) in p.relations.iter().enumerate() {
        premises.push(q.restrict(&layers.a_rho(word)).unwrap());
        names.push(format!("A_rho{r}"));
    }
    Ok(Encoding {
        instance: CommergeInstance::new_unchecked(q.clone(), premises, Signature::SigmaRing),
        labels: layers.labels.clone(),
        premise_names: names,
    })
}

/// The acyclic layered quiver `Q^k` and its premise family.
#[derive(Debug, Clone)]
pub struct AcyclicLayered {
    pub k: usize,
    pub quiver: Quiver,
    pub labels: Vec<String>,
    /// `A_{b,i,j}` then `A_ρ`, as spanning-restriction embeddings.
    pub premises: Vec<QuiverMorphism>,
    pub premise_names: Vec<String>,
    /// `(generator, i, j, arrow id)`
    pub b_arrows: Vec<(usize, VertexId, VertexId, ArrowId)>,
    /// `(i, j, arrow id)`
    pub e_arrows: Vec<(VertexId, VertexId, ArrowId)>,
    /// Image of each arrow under the projection: a generator, or `None` for
    /// the identity.
    pub projection: Vec<Option<usize>>,
}

pub fn acyclic_layered_quiver(p: &MonoidPresentation) -> Result<AcyclicLayered, ReductionError> {
    let k = (p.longest_relator() + 1).max(2);
    let layers = Layers::build(p, k, false);
    let q = &layers.quiver;
    let mut premises = Vec::new();
    let mut names = Vec::new();
    for (g, sym) in p.generators.iter().enumerate() {
        for i in 0..k {
            for j in i + 1..k {
                premises.push(q.restrict(&layers.a_b(g, i, j, k)).unwrap());
                names.push(format!("A_{sym}_{i}_{j}"));
            }
        }
    }
    for (r, word) in p.relations.iter().enumerate() {
        premises.push(q.restrict(&layers.a_rho(word)).unwrap());
        names.push(format!("A_rho{r}"));
    }
    let mut projection = vec![None; q.arrow_count()];
    for &(g, _, _, a) in &layers.b {
        projection[a] = Some(g);
    }
    Ok(AcyclicLayered {
        k,
        quiver: q.clone(),
        labels: layers.labels.clone(),
        premises,
        premise_names: names,
        b_arrows: layers.b.clone(),
        e_arrows: layers.e.clone(),
        projection,
    })
}

impl AcyclicLayered {
    /// Projects a path of `Q^k` to a word of the free monoid.
    pub fn project(&self, arrows: &[ArrowId]) -> Vec<usize> {
        arrows.iter().filter_map(|&a| self.projection[a]).collect()
    }

    pub fn instance(&self) -> CommergeInstance {
        CommergeInstance::new_unchecked(self.quiver.clone(), self.premises.clone(), Signature::Sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_encoding_shapes() {
        let p = MonoidPresentation::from_chars("b", &[]).unwrap();
        let enc = loop_encoding(&p);
        assert_eq!(enc.instance.quiver.vertex_count(), 1);
        assert_eq!(enc.instance.quiver.arrow_count(), 2);
        assert_eq!(enc.instance.premises.len(), 1);
        assert!(!enc.instance.quiver.is_acyclic());

        let p = MonoidPresentation::from_chars("ab", &["ab"]).unwrap();
        let enc = loop_encoding(&p);
        assert_eq!(enc.instance.quiver.arrow_count(), 3);
        assert_eq!(enc.premise_names, vec!["m_e", "m_rho0"]);
        let m = &enc.instance.premises[1];
        assert_eq!(m.domain().vertex_count(), 3);
        assert_eq!(m.domain().arrow_count(), 3);
        let mut images: Vec<_> = m.arrow_map().to_vec();
        images.sort();
        assert_eq!(images, vec![0, 1, 2]);
        assert!(!m.is_embedding());
    }

    #[test]
    fn layered_counts() {
        let p = MonoidPresentation::from_chars("b", &[]).unwrap();
        let enc = layered_encoding(&p, 2).unwrap();
        let q = &enc.instance.quiver;
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrow_count(), 1 + 4);
        assert_eq!(enc.premise_names, vec!["A_e", "A_b_0_1"]);
        assert!(!q.is_acyclic());
        assert!(enc.instance.premises.iter().all(QuiverMorphism::is_embedding));
        for k in 2..6 {
            let p = MonoidPresentation::from_chars("ab", &["a"]).unwrap();
            let enc = layered_encoding(&p, k).unwrap();
            assert_eq!(enc.instance.quiver.arrow_count(), 2 * k * (k - 1) / 2 + k * k);
        }
    }

    #[test]
    fn layered_rejects_short_layers() {
        let p = MonoidPresentation::from_chars("b", &["bb"]).unwrap();
        assert_eq!(
            layered_encoding(&p, 2).unwrap_err(),
            ReductionError::LayersTooFew { k: 2, longest: 2 }
        );
        assert!(layered_encoding(&p, 3).is_ok());
    }

    #[test]
    fn acyclic_layered_counts() {
        let p = MonoidPresentation::from_chars("b", &["bb"]).unwrap();
        let l = acyclic_layered_quiver(&p).unwrap();
        assert_eq!(l.k, 3);
        assert_eq!(l.b_arrows.len(), 3);
        assert_eq!(l.e_arrows.len(), 3);
        assert!(l.quiver.is_acyclic());
        assert_eq!(l.premises.len(), 3 + 1);
        for &(_, _, a) in &l.e_arrows {
            assert_eq!(l.projection[a], None);
        }
        assert_eq!(l.labels[l.b_arrows[0].3], "b_0_1");
    }

    #[test]
    fn empty_relator_gives_empty_restriction() {
        let p = MonoidPresentation::from_chars("b", &[""]).unwrap();
        let l = acyclic_layered_quiver(&p).unwrap();
        assert_eq!(l.k, 2);
        assert_eq!(l.premises.last().unwrap().domain().arrow_count(), 0);
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(
            MonoidPresentation::new(vec![], vec![vec![0]]).unwrap_err(),
            ReductionError::EmptyAlphabet
        );
        assert!(matches!(
            MonoidPresentation::new(vec!["a".into()], vec![vec![1]]),
            Err(ReductionError::UnknownGenerator { index: 1, .. })
        ));
        let p = MonoidPresentation::new(vec!["ab".into(), "c".into()], vec![vec![0, 1]]).unwrap();
        assert_eq!(p.word_string(&p.relations[0]), "ab c");
    }
}
