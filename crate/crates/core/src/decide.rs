//! Deciding whether commutativity of designated sub-diagrams forces
//! commutativity of the whole diagram.
//!
//! For acyclic shapes and embeddings the answer is exactly whether the path
//! relation generated by the pushed-forward complete relations of the premises
//! is complete, i.e. whether the quotient of the free category is thin.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formulas::schemas;
use crate::formulas::{Formula, Signature};
use crate::models::{diagrams, is_commutative, Diagram, FiniteCategory, ModelError};
use crate::paths::{bounded_paths, close_in, enumerate_paths, oracle, Path, PathError, PathRelation, PathSpace};
use crate::quiver::{Quiver, QuiverMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("premise {index} has codomain {found}, expected {expected}")]
    CodomainMismatch {
        index: usize,
        found: String,
        expected: String,
    },
    #[error("signature violation: {0}")]
    Signature(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("oracle disagrees with closure on {0}")]
    OracleMismatch(String),
}

/// `Commerge_{m_0..m_{k-1}}` as data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommergeInstance {
    pub quiver: Quiver,
    pub premises: Vec<QuiverMorphism>,
    pub signature: Signature,
}

impl CommergeInstance {
    pub fn new(
        quiver: Quiver,
        premises: Vec<QuiverMorphism>,
        signature: Signature,
    ) -> Result<CommergeInstance, DecideError> {
        let inst = CommergeInstance::new_unchecked(quiver, premises, signature);
        inst.validate()?;
        Ok(inst)
    }

    pub fn new_unchecked(quiver: Quiver, premises: Vec<QuiverMorphism>, signature: Signature) -> CommergeInstance {
        CommergeInstance {
            quiver,
            premises,
            signature,
        }
    }

    pub fn validate(&self) -> Result<(), DecideError> {
        for (index, m) in self.premises.iter().enumerate() {
            if m.codomain() != &self.quiver {
                return Err(DecideError::CodomainMismatch {
                    index,
                    found: m.codomain().to_string(),
                    expected: self.quiver.to_string(),
                });
            }
        }
        if self.signature == Signature::Sigma {
            self.check_sigma()?;
        }
        Ok(())
    }

    fn check_sigma(&self) -> Result<(), DecideError> {
        if !self.quiver.is_acyclic() {
            return Err(DecideError::Signature(format!("quiver {} is cyclic", self.quiver)));
        }
        if let Some(i) = self.premises.iter().position(|m| !m.is_embedding()) {
            return Err(DecideError::Signature(format!("premise {i} is not an embedding")));
        }
        Ok(())
    }

    pub fn formula(&self) -> Formula {
        schemas::commerge_formula(&self.quiver, &self.premises).expect("codomains checked")
    }

    /// The same problem on the dual quiver with dualized premises.
    pub fn dual(&self) -> CommergeInstance {
        CommergeInstance {
            quiver: self.quiver.dual_quiver(),
            premises: self.premises.iter().map(|m| m.dual()).collect(),
            signature: self.signature,
        }
    }

    /// Generators `m_*(p) ~ m_*(q)` for every same-extremity pair of each
    /// premise domain, paths bounded by `max_len` when given.
    fn generators(&self, max_len: Option<usize>) -> Result<Vec<(Path, Path)>, DecideError> {
        let mut gens = Vec::new();
        for m in &self.premises {
            let paths = match max_len {
                None => enumerate_paths(m.domain())?,
                Some(l) => bounded_paths(m.domain(), l),
            };
            // pairing each path with the first of its hom-set spans tot
            let mut first: std::collections::BTreeMap<(usize, usize), Path> = Default::default();
            for p in paths {
                let pushed = p.pushforward(m);
                match first.get(&p.extremities()) {
                    Some(f) => gens.push((f.clone(), pushed)),
                    None => {
                        first.insert(p.extremities(), pushed);
                    }
                }
            }
        }
        Ok(gens)
    }

    /// The closed relation generated by the premises.
    pub fn relation(&self) -> Result<PathRelation, DecideError> {
        let space = PathSpace::new(&self.quiver)?;
        Ok(close_in(space, &self.generators(None)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { p: Path, q: Path },
    Unknown { bound: usize },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid { .. })
    }

    /// The verdict line with arrows shown by label.
    pub fn display_with(&self, labels: &[String]) -> String {
        match self {
            Verdict::Invalid { p, q } => {
                format!("INVALID p={} q={}", p.display_with(labels), q.display_with(labels))
            }
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "VALID"),
            Verdict::Invalid { p, q } => write!(f, "INVALID p={p} q={q}"),
            Verdict::Unknown { bound } => write!(f, "UNKNOWN bound={bound}"),
        }
    }
}

fn verdict_of(r: &PathRelation) -> Verdict {
    match r.witness_incompleteness() {
        None => Verdict::Valid,
        Some((p, q)) => Verdict::Invalid { p, q },
    }
}

/// The decision procedure for acyclic shapes and embedding premises.
pub fn decide_commerge(inst: &CommergeInstance) -> Result<Verdict, DecideError> {
    inst.validate()?;
    inst.check_sigma()?;
    Ok(verdict_of(&inst.relation()?))
}

/// Same question answered by the naive fixpoint closure.
pub fn decide_commerge_oracle(inst: &CommergeInstance) -> Result<Verdict, DecideError> {
    inst.validate()?;
    inst.check_sigma()?;
    let space = PathSpace::new(&inst.quiver)?;
    let labels = oracle::naive_close(&space, &inst.generators(None)?);
    Ok(verdict_of(&PathRelation::from_labels(space, labels, true)))
}

/// Runs both and fails on any divergence.
pub fn decide_commerge_checked(inst: &CommergeInstance) -> Result<Verdict, DecideError> {
    let fast = decide_commerge(inst)?;
    let slow = decide_commerge_oracle(inst)?;
    if fast != slow {
        return Err(DecideError::OracleMismatch(format!("{} ({fast} vs {slow})", inst.quiver)));
    }
    Ok(fast)
}

/// A diagram in one of `categories` whose premise restrictions commute while
/// it does not; returns the category index too.
pub fn semantic_crosscheck(
    inst: &CommergeInstance,
    categories: &[FiniteCategory],
    cap: usize,
) -> Result<Option<(usize, Diagram)>, DecideError> {
    inst.validate()?;
    for (i, c) in categories.iter().enumerate() {
        for d in diagrams(c, &inst.quiver, cap)? {
            if is_commutative(c, &inst.quiver, &d) {
                continue;
            }
            if inst
                .premises
                .iter()
                .all(|m| is_commutative(c, m.domain(), &d.pullback(m)))
            {
                return Ok(Some((i, d)));
            }
        }
    }
    Ok(None)
}

/// The least same-extremity pair a diagram sends to different composites,
/// searching paths of growing length.
pub fn separating_pair(c: &FiniteCategory, q: &Quiver, d: &Diagram, start_len: usize) -> Option<(Path, Path)> {
    let limit = start_len.max(2 * c.morphism_count() * q.vertex_count().max(1));
    let mut len = start_len.max(1);
    loop {
        let paths = bounded_paths(q, len);
        let mut first: std::collections::BTreeMap<(usize, usize), (Path, u32)> = Default::default();
        let mut best: Option<(Path, Path)> = None;
        for p in paths {
            let v = d.path_value(c, &p);
            match first.get(&p.extremities()) {
                Some((f, fv)) if *fv != v => {
                    let cand = (f.clone(), p.clone());
                    if best.as_ref().map_or(true, |b| cand < *b) {
                        best = Some(cand);
                    }
                }
                Some(_) => {}
                None => {
                    first.insert(p.extremities(), (p, v));
                }
            }
        }
        if best.is_some() || len >= limit {
            return best;
        }
        len *= 2;
    }
}

/// Sound semi-check for arbitrary finite quivers and morphisms.
///
/// Answers like `decide_commerge` when the shape is acyclic and `max_len`
/// covers its longest path; otherwise INVALID needs a concrete countermodel
/// among `categories`, and everything else is UNKNOWN.
pub fn bounded_commerge_with(
    inst: &CommergeInstance,
    max_len: usize,
    categories: &[FiniteCategory],
    cap: usize,
) -> Result<(Verdict, Option<PathRelation>), DecideError> {
    inst.validate()?;
    let acyclic = inst.quiver.is_acyclic() && inst.premises.iter().all(|m| m.domain().is_acyclic());
    if acyclic && inst.quiver.longest_path().unwrap_or(0) <= max_len {
        let r = inst.relation()?;
        return Ok((verdict_of(&r), Some(r)));
    }
    let space: Arc<PathSpace> = PathSpace::bounded(&inst.quiver, max_len);
    let r = close_in(space, &inst.generators(Some(max_len))?)?;
    for (i, c) in categories.iter().enumerate() {
        let found = match semantic_crosscheck(inst, std::slice::from_ref(c), cap) {
            Ok(f) => f,
            Err(DecideError::Model(ModelError::Resource { .. })) => continue,
            Err(e) => return Err(e),
        };
        if let Some((_, d)) = found {
            let _ = i;
            if let Some((p, q)) = separating_pair(c, &inst.quiver, &d, max_len) {
                return Ok((Verdict::Invalid { p, q }, Some(r)));
            }
        }
    }
    Ok((Verdict::Unknown { bound: max_len }, Some(r)))
}

/// `bounded_commerge_with` over the shipped samples with a small cap.
pub fn bounded_commerge(inst: &CommergeInstance, max_len: usize) -> Result<Verdict, DecideError> {
    let cats = crate::models::samples::all();
    Ok(bounded_commerge_with(inst, max_len, &cats, 20_000)?.0)
}
