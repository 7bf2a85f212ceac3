//! Builders for the axiom schemas and the named open formulas.
//!
//! Open builders take terms for their arguments and draw bound names from a
//! [`Names`] supply. Dual-defined formulas (Colimit, Epi, Coker and the dual
//! axioms) are obtained by dualizing the primal builder, never by hand.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{fresh_name, Formula, Term, Variable};
use crate::paths::PathSpace;
use crate::quiver::{
    pushout, quivers_up_to_iso, sp_embedding, st_embedding, sub_quiver_supports, tp_embedding,
    Quiver, QuiverMorphism,
};
use crate::reductions::{acyclic_layered_quiver, MonoidPresentation, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("premise {0} does not map into the instance quiver")]
    CodomainMismatch(usize),
    #[error("argument of sort {0:?} is not a path-quiver")]
    NotPathQuiver(Quiver),
    #[error("argument sorts do not match the builder: expected {expected:?}, found {found:?}")]
    SortMismatch { expected: Quiver, found: Quiver },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Supply of fresh variable names.
#[derive(Debug, Clone, Default)]
pub struct Names {
    used: BTreeSet<String>,
}

impl Names {
    pub fn new() -> Names {
        Names::default()
    }

    /// A supply that never hands out a name occurring in `terms`.
    pub fn avoiding<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Names {
        let mut n = Names::new();
        for t in terms {
            n.reserve(&t.head_var().name);
        }
        n
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn fresh(&mut self, base: &str, sort: Quiver) -> Variable {
        let name = fresh_name(base, &self.used);
        self.used.insert(name.clone());
        Variable::new(name, sort)
    }

    fn reserve_terms(&mut self, terms: &[&Term]) {
        for t in terms {
            self.reserve(&t.head_var().name);
        }
    }
}

pub fn dot() -> Quiver {
    Quiver::discrete(1)
}

pub fn two_dots() -> Quiver {
    Quiver::discrete(2)
}

/// Arrows `0:0->1`, `1:0->2`, `2:1->2`.
pub fn triangle() -> Quiver {
    Quiver::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
}

/// Two parallel arrows `0 => 1`.
pub fn bigon() -> Quiver {
    Quiver::new(2, &[(0, 1), (0, 1)]).unwrap()
}

fn src() -> QuiverMorphism {
    Quiver::path_quiver(1).vertex_embedding(0)
}

fn tgt() -> QuiverMorphism {
    Quiver::path_quiver(1).vertex_embedding(1)
}

fn path_len(t: &Term) -> Result<usize, FormulaError> {
    t.sort()
        .path_length()
        .ok_or_else(|| FormulaError::NotPathQuiver(t.sort().clone()))
}

/// `Comp(x, y, z)`: `z` is the composite of `x` then `y`.
pub fn comp(n: &mut Names, x: &Term, y: &Term, z: &Term) -> Formula {
    n.reserve_terms(&[x, y, z]);
    let t = triangle();
    let w = n.fresh("w", t.clone());
    Formula::exists(
        &w,
        Formula::And(vec![
            Formula::eq(Term::restr(&t.arrow_embedding(0), w.term()), x.clone()),
            Formula::eq(Term::restr(&t.arrow_embedding(2), w.term()), y.clone()),
            Formula::eq(Term::restr(&t.arrow_embedding(1), w.term()), z.clone()),
            Formula::commute(w.term()),
        ]),
    )
}

/// `Id(x, y)`: `y` is the identity arrow on the object `x`.
pub fn id(n: &mut Names, x: &Term, y: &Term) -> Formula {
    n.reserve_terms(&[x, y]);
    let pq1 = Quiver::path_quiver(1);
    let z = n.fresh("z", pq1.clone());
    let w = n.fresh("w", pq1);
    let left = Formula::implies(
        comp(n, y, &z.term(), &w.term()),
        eq_path(n, &z.term(), &w.term()).expect("arrows are paths"),
    );
    let right = Formula::implies(
        comp(n, &z.term(), y, &w.term()),
        eq_path(n, &z.term(), &w.term()).expect("arrows are paths"),
    );
    Formula::And(vec![
        Formula::eq(Term::restr(&src(), y.clone()), x.clone()),
        Formula::forall_all(&[z, w], Formula::And(vec![left, right])),
    ])
}

/// `Cospan_{m'1,m'2}(x1, x2, x')`.
pub fn cospan(m1: &QuiverMorphism, m2: &QuiverMorphism, x1: &Term, x2: &Term, xp: &Term) -> Formula {
    Formula::And(vec![
        Formula::eq(Term::restr(m1, xp.clone()), x1.clone()),
        Formula::eq(Term::restr(m2, xp.clone()), x2.clone()),
    ])
}

/// `EqPath(x1, x2)` for terms whose sorts are path-quivers, following the
/// case split on trivial paths.
pub fn eq_path(n: &mut Names, x1: &Term, x2: &Term) -> Result<Formula, FormulaError> {
    let (k1, k2) = (path_len(x1)?, path_len(x2)?);
    n.reserve_terms(&[x1, x2]);
    Ok(match (k1, k2) {
        (0, 0) => Formula::eq(x1.clone(), x2.clone()),
        (0, _) => {
            let z = n.fresh("z", Quiver::path_quiver(1));
            let idf = id(n, x1, &z.term());
            let rest = eq_path(n, &z.term(), x2)?;
            Formula::exists(&z, Formula::And(vec![idf, rest]))
        }
        (_, 0) => eq_path(n, x2, x1)?,
        _ => {
            let (st1, st2) = (st_embedding(k1).unwrap(), st_embedding(k2).unwrap());
            let po = pushout(&st1, &st2).unwrap();
            let x = n.fresh("x", po.pushout.clone());
            Formula::And(vec![
                Formula::eq(Term::restr(&st1, x1.clone()), Term::restr(&st2, x2.clone())),
                Formula::forall(
                    &x,
                    Formula::implies(
                        cospan(&po.inj1, &po.inj2, x1, x2, &x.term()),
                        Formula::commute(x.term()),
                    ),
                ),
            ])
        }
    })
}

/// `Cone_Q(x, y)` with `x: Q` and `y: cone(Q)`.
pub fn cone(q: &Quiver, x: &Term, y: &Term) -> Formula {
    let c = q.cone();
    let mut parts = vec![Formula::eq(Term::restr(&c.inclusion, y.clone()), x.clone())];
    for a in 0..q.arrow_count() {
        let ca = q.arrow_embedding(a).cone();
        parts.push(Formula::commute(Term::restr(&ca, y.clone())));
    }
    Formula::and(parts)
}

/// `Limit_Q(x, y)`: `y` is a limit cone over `x`.
pub fn limit(n: &mut Names, q: &Quiver, x: &Term, y: &Term) -> Formula {
    n.reserve_terms(&[x, y]);
    let c = q.cone();
    let cc = c.quiver.cone();
    let z = n.fresh("z", c.quiver.clone());
    let w = n.fresh("w", cc.quiver.clone());
    let factor = Formula::exists_unique(
        &w,
        Formula::And(vec![
            cone(&c.quiver, y, &w.term()),
            Formula::eq(Term::restr(&c.inclusion.cone(), w.term()), z.term()),
        ]),
    );
    Formula::And(vec![
        cone(q, x, y),
        Formula::forall(&z, Formula::implies(cone(q, x, &z.term()), factor)),
    ])
}

/// `cone(Q†)†`, the sort of colimit cocones over `Q`.
pub fn cocone_quiver(q: &Quiver) -> Quiver {
    q.dual_quiver().cone().quiver.dual_quiver()
}

/// Instantiates the dual of `build` at `args`: the builder is run on
/// placeholders over the dual sorts, dualized, then the placeholders are
/// replaced by `args`.
fn dual_of(
    args: &[&Term],
    build: impl FnOnce(&mut Names, &[Term]) -> Formula,
) -> Formula {
    let mut n = Names::avoiding(args.iter().copied());
    let holders: Vec<Variable> = args
        .iter()
        .map(|a| n.fresh("p", a.sort().dual_quiver()))
        .collect();
    let holder_terms: Vec<Term> = holders.iter().map(Variable::term).collect();
    let mut f = build(&mut n, &holder_terms).dual();
    for (h, a) in holders.iter().zip(args) {
        f = f.substitute(&h.dual(), a);
    }
    f
}

/// `Colimit_Q(x, y) := Limit_{Q†}†` with `x: Q`, `y: cocone_quiver(Q)`.
pub fn colimit(q: &Quiver, x: &Term, y: &Term) -> Formula {
    let qd = q.dual_quiver();
    dual_of(&[x, y], |n, p| limit(n, &qd, &p[0], &p[1]))
}

/// Sort of `Mono`'s bound variable: arrows `g, h: 0->1`, `k: 0->2`, `f: 1->2`.
pub fn mono_quiver() -> Quiver {
    Quiver::new(3, &[(0, 1), (0, 1), (0, 2), (1, 2)]).unwrap()
}

/// `Mono(x)` for `x: PQ_1`.
pub fn mono(n: &mut Names, x: &Term) -> Formula {
    n.reserve_terms(&[x]);
    let q = mono_quiver();
    let (g, h, k, f) = (0, 1, 2, 3);
    let y = n.fresh("y", q.clone());
    let tri = |a: usize| q.restrict(&[a, f, k].into_iter().collect()).unwrap();
    let pair = q
        .sub_quiver(&[0, 1].into_iter().collect(), &[g, h].into_iter().collect())
        .unwrap();
    Formula::forall(
        &y,
        Formula::implies(
            Formula::And(vec![
                Formula::eq(Term::restr(&q.arrow_embedding(f), y.term()), x.clone()),
                Formula::commute(Term::restr(&tri(g), y.term())),
                Formula::commute(Term::restr(&tri(h), y.term())),
            ]),
            Formula::commute(Term::restr(&pair, y.term())),
        ),
    )
}

/// `Epi := Mono†`, for `x` of sort `PQ_1†`.
pub fn epi(x: &Term) -> Formula {
    dual_of(&[x], |n, p| mono(n, &p[0]))
}

/// `Zero(x)` for `x: •`.
pub fn zero(n: &mut Names, x: &Term) -> Formula {
    n.reserve_terms(&[x]);
    let y = n.fresh("y", Quiver::empty());
    let e = Quiver::empty();
    Formula::forall(
        &y,
        Formula::And(vec![limit(n, &e, &y.term(), x), colimit(&e, &y.term(), x)]),
    )
}

/// The cospan `T -> R <- B` (vertices `T=0, B=1, R=2`) whose limit is a kernel.
pub fn kernel_base() -> Quiver {
    Quiver::new(3, &[(0, 2), (1, 2)]).unwrap()
}

/// `Ker(x, y)`: `y` is a kernel of `x`; both arrows.
pub fn ker(n: &mut Names, x: &Term, y: &Term) -> Formula {
    n.reserve_terms(&[x, y]);
    let base = kernel_base();
    let c = base.cone();
    let qk = c.quiver.clone();
    let z = n.fresh("z", qk.clone());
    // arrow T->R is id 0, leg apex->T is legs[0]
    let zero_obj = Term::restr(&qk.vertex_embedding(1), z.term());
    Formula::exists(
        &z,
        Formula::And(vec![
            Formula::eq(Term::restr(&qk.arrow_embedding(0), z.term()), x.clone()),
            Formula::eq(Term::restr(&qk.arrow_embedding(c.legs[0]), z.term()), y.clone()),
            zero(n, &zero_obj),
            limit(n, &base, &Term::restr(&c.inclusion, z.term()), &z.term()),
        ]),
    )
}

/// `Coker := Ker†`.
pub fn coker(x: &Term, y: &Term) -> Formula {
    dual_of(&[x, y], |n, p| ker(n, &p[0], &p[1]))
}

pub fn empty_eu() -> Formula {
    let x = Variable::new("x", Quiver::empty());
    Formula::exists_unique(&x, Formula::eq(x.term(), x.term()))
}

/// `RestrComp_{m,m'}` for `m: Q -> Q'`, `m': Q' -> Q''`.
pub fn restr_comp(m: &QuiverMorphism, mp: &QuiverMorphism) -> Formula {
    let x = Variable::new("x", mp.codomain().clone());
    let composite = mp.after(m).expect("composable restriction pair");
    Formula::forall(
        &x,
        Formula::eq(
            Term::restr(m, Term::restr(mp, x.term())),
            Term::restr(&composite, x.term()),
        ),
    )
}

/// `PushoutEU` for the span `m1, m2` and its constructed pushout.
pub fn pushout_eu(m1: &QuiverMorphism, m2: &QuiverMorphism) -> Formula {
    let po = pushout(m1, m2).expect("span with a common domain");
    let x1 = Variable::new("x1", m1.codomain().clone());
    let x2 = Variable::new("x2", m2.codomain().clone());
    let xp = Variable::new("x", po.pushout.clone());
    Formula::forall_all(
        &[x1.clone(), x2.clone()],
        Formula::implies(
            Formula::eq(Term::restr(m1, x1.term()), Term::restr(m2, x2.term())),
            Formula::exists_unique(&xp, cospan(&po.inj1, &po.inj2, &x1.term(), &x2.term(), &xp.term())),
        ),
    )
}

/// Existence of composites, for composable arrows only.
pub fn comp_e() -> Formula {
    let mut n = Names::new();
    let pq1 = Quiver::path_quiver(1);
    let x = n.fresh("x", pq1.clone());
    let y = n.fresh("y", pq1.clone());
    let z = n.fresh("z", pq1);
    Formula::forall_all(
        &[x.clone(), y.clone()],
        Formula::implies(
            Formula::eq(Term::restr(&tgt(), x.term()), Term::restr(&src(), y.term())),
            Formula::exists(&z, comp(&mut n, &x.term(), &y.term(), &z.term())),
        ),
    )
}

pub fn id_e() -> Formula {
    let mut n = Names::new();
    let x = n.fresh("x", dot());
    let y = n.fresh("y", Quiver::path_quiver(1));
    Formula::forall(&x, Formula::exists(&y, id(&mut n, &x.term(), &y.term())))
}

fn path_vars(n: &mut Names, lens: &[usize]) -> Vec<Variable> {
    lens.iter()
        .map(|&k| n.fresh("x", Quiver::path_quiver(k)))
        .collect()
}

pub fn eq_path_refl(k: usize) -> Formula {
    let mut n = Names::new();
    let x = path_vars(&mut n, &[k]).remove(0);
    Formula::forall(&x, eq_path(&mut n, &x.term(), &x.term()).unwrap())
}

pub fn eq_path_sym(k1: usize, k2: usize) -> Formula {
    let mut n = Names::new();
    let v = path_vars(&mut n, &[k1, k2]);
    let (a, b) = (v[0].term(), v[1].term());
    let body = Formula::implies(
        eq_path(&mut n, &a, &b).unwrap(),
        eq_path(&mut n, &b, &a).unwrap(),
    );
    Formula::forall_all(&v, body)
}

pub fn eq_path_trans(k1: usize, k2: usize, k3: usize) -> Formula {
    let mut n = Names::new();
    let v = path_vars(&mut n, &[k1, k2, k3]);
    let (a, b, c) = (v[0].term(), v[1].term(), v[2].term());
    let body = Formula::implies(
        Formula::And(vec![
            eq_path(&mut n, &a, &b).unwrap(),
            eq_path(&mut n, &b, &c).unwrap(),
        ]),
        eq_path(&mut n, &a, &c).unwrap(),
    );
    Formula::forall_all(&v, body)
}

/// `EqPathConcat_{P1,P2,P'1,P'2}` with lengths `(k1, k2, k1', k2')`.
pub fn eq_path_concat(k1: usize, k2: usize, k1p: usize, k2p: usize) -> Formula {
    let mut n = Names::new();
    let v = path_vars(&mut n, &[k1, k2, k1p, k2p]);
    let (x1, x2, y1, y2) = (v[0].term(), v[1].term(), v[2].term(), v[3].term());
    let z1 = n.fresh("x", Quiver::path_quiver(k1 + k1p));
    let z2 = n.fresh("x", Quiver::path_quiver(k2 + k2p));
    let glue = Formula::eq(
        Term::restr(&tp_embedding(0, k1).unwrap(), x1.clone()),
        Term::restr(&sp_embedding(0, k1p).unwrap(), y1.clone()),
    );
    let c1 = cospan(
        &sp_embedding(k1, k1 + k1p).unwrap(),
        &tp_embedding(k1p, k1 + k1p).unwrap(),
        &x1,
        &y1,
        &z1.term(),
    );
    let c2 = cospan(
        &sp_embedding(k2, k2 + k2p).unwrap(),
        &tp_embedding(k2p, k2 + k2p).unwrap(),
        &x2,
        &y2,
        &z2.term(),
    );
    let premise = Formula::And(vec![
        eq_path(&mut n, &x1, &x2).unwrap(),
        eq_path(&mut n, &y1, &y2).unwrap(),
        glue,
    ]);
    let concl = Formula::forall_all(
        &[z1.clone(), z2.clone()],
        Formula::implies(
            Formula::And(vec![c1, c2]),
            eq_path(&mut n, &z1.term(), &z2.term()).unwrap(),
        ),
    );
    Formula::forall_all(&v, Formula::implies(premise, concl))
}

pub fn com_eq() -> Formula {
    let b = bigon();
    let x = Variable::new("x", b.clone());
    Formula::forall(
        &x,
        Formula::implies(
            Formula::commute(x.term()),
            Formula::eq(
                Term::restr(&b.arrow_embedding(0), x.term()),
                Term::restr(&b.arrow_embedding(1), x.term()),
            ),
        ),
    )
}

/// `PathCom_Q` over the unordered distinct same-extremity pairs of an acyclic `q`.
pub fn path_com(q: &Quiver) -> Formula {
    let mut n = Names::new();
    let x = n.fresh("x", q.clone());
    let space = PathSpace::new(q).expect("PathCom needs an acyclic quiver");
    let mut parts = Vec::new();
    for (p1, p2) in space.same_extremity_pairs() {
        let m1 = space.path(p1).to_morphism(q);
        let m2 = space.path(p2).to_morphism(q);
        parts.push(
            eq_path(
                &mut n,
                &Term::restr(&m1, x.term()),
                &Term::restr(&m2, x.term()),
            )
            .unwrap(),
        );
    }
    Formula::forall(&x, Formula::iff(Formula::And(parts), Formula::commute(x.term())))
}

pub fn zero_e() -> Formula {
    let mut n = Names::new();
    let x = n.fresh("x", dot());
    Formula::exists(&x, zero(&mut n, &x.term()))
}

pub fn product_e() -> Formula {
    let mut n = Names::new();
    let q = two_dots();
    let x = n.fresh("x", q.clone());
    let y = n.fresh("y", q.cone().quiver);
    Formula::forall(&x, Formula::exists(&y, limit(&mut n, &q, &x.term(), &y.term())))
}

pub fn coproduct_e() -> Formula {
    product_e().dual()
}

pub fn ker_e() -> Formula {
    let mut n = Names::new();
    let x = n.fresh("x", Quiver::path_quiver(1));
    let y = n.fresh("y", Quiver::path_quiver(1));
    Formula::forall(&x, Formula::exists(&y, ker(&mut n, &x.term(), &y.term())))
}

pub fn coker_e() -> Formula {
    ker_e().dual()
}

pub fn mono_normal() -> Formula {
    let mut n = Names::new();
    let x = n.fresh("x", Quiver::path_quiver(1));
    let y = n.fresh("y", Quiver::path_quiver(1));
    let m = mono(&mut n, &x.term());
    Formula::forall(
        &x,
        Formula::implies(m, Formula::exists(&y, ker(&mut n, &y.term(), &x.term()))),
    )
}

pub fn epi_normal() -> Formula {
    mono_normal().dual()
}

/// `∀_Q x. ⋀ commute(restr_{m_i}(x)) -> commute(x)`.
pub fn commerge_formula(q: &Quiver, premises: &[QuiverMorphism]) -> Result<Formula, FormulaError> {
    if let Some(i) = premises.iter().position(|m| m.codomain() != q) {
        return Err(FormulaError::CodomainMismatch(i));
    }
    let x = Variable::new("x", q.clone());
    let prem = premises
        .iter()
        .map(|m| Formula::commute(Term::restr(m, x.term())))
        .collect();
    Ok(Formula::forall(
        &x,
        Formula::implies(Formula::and(prem), Formula::commute(x.term())),
    ))
}

/// `CommergeWithId_M` over the acyclic layered quiver of the presentation.
pub fn commerge_with_id(p: &MonoidPresentation) -> Result<Formula, FormulaError> {
    let layered = acyclic_layered_quiver(p)?;
    let q = &layered.quiver;
    let mut n = Names::new();
    let x = n.fresh("x", q.clone());
    let mut parts = Vec::new();
    for &(i, _, e) in &layered.e_arrows {
        let v = Term::restr(&q.vertex_embedding(i), x.term());
        let a = Term::restr(&q.arrow_embedding(e), x.term());
        parts.push(id(&mut n, &v, &a));
    }
    for m in &layered.premises {
        parts.push(Formula::commute(Term::restr(m, x.term())));
    }
    Ok(Formula::forall(
        &x,
        Formula::implies(Formula::And(parts), Formula::commute(x.term())),
    ))
}

/// Finite bounds for instantiating schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_path_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axiom {
    pub schema: &'static str,
    pub params: String,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theory {
    pub name: String,
    pub axioms: Vec<Axiom>,
}

impl Theory {
    pub fn dual(&self) -> Theory {
        Theory {
            name: format!("{}-dual", self.name),
            axioms: self
                .axioms
                .iter()
                .map(|a| Axiom {
                    schema: a.schema,
                    params: a.params.clone(),
                    formula: a.formula.dual(),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn count(&self, schema: &str) -> usize {
        self.axioms.iter().filter(|a| a.schema == schema).count()
    }
}

fn axiom(schema: &'static str, params: String, formula: Formula) -> Axiom {
    Axiom {
        schema,
        params,
        formula,
    }
}

/// Embeddings of every sub-quiver of `q`, in support order.
fn sub_embeddings(q: &Quiver) -> Vec<QuiverMorphism> {
    sub_quiver_supports(q)
        .into_iter()
        .map(|(vs, arrows)| q.sub_quiver(&vs, &arrows).unwrap())
        .collect()
}

/// The inclusion between two sub-quiver embeddings into the same quiver,
/// `inner ⊆ outer`.
fn inclusion(inner: &QuiverMorphism, outer: &QuiverMorphism) -> QuiverMorphism {
    let vertex_map = inner
        .vertex_map()
        .iter()
        .map(|v| outer.vertex_map().iter().position(|w| w == v).unwrap())
        .collect();
    let arrow_map = inner
        .arrow_map()
        .iter()
        .map(|a| outer.arrow_map().iter().position(|b| b == a).unwrap())
        .collect();
    QuiverMorphism::new(
        inner.domain().clone(),
        outer.domain().clone(),
        vertex_map,
        arrow_map,
    )
    .unwrap()
}

/// `T_cat` instantiated within `budget`.
///
/// Sorts range over isomorphism classes of acyclic quivers within the vertex
/// and arrow bounds, morphisms over their sub-quiver embeddings, and path
/// schemas over `PQ_0 .. PQ_L`.
pub fn tcat_axioms(budget: Budget) -> Theory {
    let mut axioms = vec![
        axiom("EmptyEU", String::new(), empty_eu()),
        axiom("CompE", String::new(), comp_e()),
        axiom("IdE", String::new(), id_e()),
        axiom("ComEq", String::new(), com_eq()),
    ];
    let quivers = quivers_up_to_iso(budget.max_vertices, budget.max_arrows, true);
    for q in &quivers {
        for mp in sub_embeddings(q) {
            for m in sub_embeddings(mp.domain()) {
                axiom_push(&mut axioms, "RestrComp", format!("[{m}] [{mp}]"), restr_comp(&m, &mp));
            }
        }
    }
    for q in &quivers {
        let subs = sub_embeddings(q);
        for s1 in &subs {
            for s2 in &subs {
                let (v1, a1) = s1.image();
                let (v2, a2) = s2.image();
                if v1.union(&v2).count() != q.vertex_count() || a1.union(&a2).count() != q.arrow_count() {
                    continue;
                }
                let vs = v1.intersection(&v2).copied().collect();
                let arrows = a1.intersection(&a2).copied().collect();
                let meet = q.sub_quiver(&vs, &arrows).unwrap();
                let m1 = inclusion(&meet, s1);
                let m2 = inclusion(&meet, s2);
                axiom_push(&mut axioms, "PushoutEU", format!("[{m1}] [{m2}]"), pushout_eu(&m1, &m2));
            }
        }
    }
    let l = budget.max_path_len;
    for k in 0..=l {
        axioms.push(axiom("EqPathRefl", format!("{k}"), eq_path_refl(k)));
    }
    for k1 in 0..=l {
        for k2 in 0..=l {
            axioms.push(axiom("EqPathSym", format!("{k1},{k2}"), eq_path_sym(k1, k2)));
        }
    }
    for k1 in 0..=l {
        for k2 in 0..=l {
            for k3 in 0..=l {
                axioms.push(axiom(
                    "EqPathTrans",
                    format!("{k1},{k2},{k3}"),
                    eq_path_trans(k1, k2, k3),
                ));
            }
        }
    }
    for k1 in 0..=l {
        for k2 in 0..=l {
            for k3 in 0..=l {
                for k4 in 0..=l {
                    axioms.push(axiom(
                        "EqPathConcat",
                        format!("{k1},{k2},{k3},{k4}"),
                        eq_path_concat(k1, k2, k3, k4),
                    ));
                }
            }
        }
    }
    for q in &quivers {
        axioms.push(axiom("PathCom", format!("{q}"), path_com(q)));
    }
    Theory {
        name: "tcat".into(),
        axioms,
    }
}

fn axiom_push(axioms: &mut Vec<Axiom>, schema: &'static str, params: String, f: Formula) {
    axioms.push(axiom(schema, params, f));
}

/// The seven axioms added on top of `T_cat`.
pub fn abelian_axioms() -> Vec<Axiom> {
    vec![
        axiom("ZeroE", String::new(), zero_e()),
        axiom("ProductE", String::new(), product_e()),
        axiom("CoproductE", String::new(), coproduct_e()),
        axiom("KerE", String::new(), ker_e()),
        axiom("CokerE", String::new(), coker_e()),
        axiom("MonoNormal", String::new(), mono_normal()),
        axiom("EpiNormal", String::new(), epi_normal()),
    ]
}

/// `T_ab` within `budget`.
pub fn tab_axioms(budget: Budget) -> Theory {
    let mut t = tcat_axioms(budget);
    t.name = "tab".into();
    t.axioms.extend(abelian_axioms());
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::Signature;

    #[test]
    fn eq_path_between_dots_is_equality() {
        let x = Variable::new("x", dot());
        let y = Variable::new("y", dot());
        let f = eq_path(&mut Names::new(), &x.term(), &y.term()).unwrap();
        assert_eq!(f, Formula::eq(x.term(), y.term()));
    }

    #[test]
    fn open_builders_have_documented_arity() {
        let pq1 = Quiver::path_quiver(1);
        let (x, y, z) = (
            Variable::new("x", pq1.clone()),
            Variable::new("y", pq1.clone()),
            Variable::new("z", pq1.clone()),
        );
        let c = comp(&mut Names::new(), &x.term(), &y.term(), &z.term());
        assert_eq!(c.free_vars(), [x.clone(), y.clone(), z.clone()].into());
        let o = Variable::new("o", dot());
        let i = id(&mut Names::new(), &o.term(), &y.term());
        assert_eq!(i.free_vars(), [o, y.clone()].into());
        let l = limit(&mut Names::new(), &two_dots(), &Variable::new("a", two_dots()).term(),
            &Variable::new("b", two_dots().cone().quiver).term());
        assert_eq!(l.free_vars().len(), 2);
        assert!(l.well_formed(Signature::Sigma).is_ok());
    }

    #[test]
    fn bound_names_do_not_capture_arguments() {
        let pq1 = Quiver::path_quiver(1);
        let w = Variable::new("w1", pq1.clone());
        let c = comp(&mut Names::new(), &w.term(), &w.term(), &w.term());
        assert_eq!(c.free_vars(), [w].into());
    }

    #[test]
    fn closed_axioms_are_well_formed() {
        for f in [
            empty_eu(),
            comp_e(),
            id_e(),
            com_eq(),
            eq_path_refl(0),
            eq_path_refl(2),
            eq_path_sym(0, 2),
            eq_path_trans(1, 0, 2),
            eq_path_concat(1, 0, 2, 1),
            path_com(&bigon()),
            zero_e(),
            product_e(),
            coproduct_e(),
            ker_e(),
            coker_e(),
            mono_normal(),
            epi_normal(),
        ] {
            assert!(f.is_closed(), "{f:?}");
            assert!(f.well_formed(Signature::Sigma).is_ok(), "{f:?}");
            assert!(f.dual().well_formed(Signature::Sigma).is_ok());
        }
    }

    #[test]
    fn colimit_is_dual_of_limit() {
        let q = Quiver::path_quiver(1);
        let x = Variable::new("x", q.clone());
        let y = Variable::new("y", cocone_quiver(&q));
        let c = colimit(&q, &x.term(), &y.term());
        let xd = Variable::new("x", q.dual_quiver());
        let yd = Variable::new("y", q.dual_quiver().cone().quiver);
        let l = limit(&mut Names::new(), &q.dual_quiver(), &xd.term(), &yd.term());
        assert!(c.alpha_eq(&l.dual()));
    }

    #[test]
    fn epi_is_dual_of_mono() {
        let x = Variable::new("x", Quiver::path_quiver(1));
        let m = mono(&mut Names::new(), &x.term());
        let e = epi(&x.dual().term());
        assert!(m.dual().alpha_eq(&e));
    }

    #[test]
    fn cone_over_two_dots_is_only_the_equation() {
        let q = two_dots();
        let x = Variable::new("x", q.clone());
        let y = Variable::new("y", q.cone().quiver);
        assert!(matches!(cone(&q, &x.term(), &y.term()), Formula::Eq(..)));
    }

    #[test]
    fn path_com_over_bigon_has_one_pair() {
        let f = path_com(&bigon());
        let Formula::Forall(_, body) = f else { panic!() };
        let Formula::Iff(l, _) = *body else { panic!() };
        let Formula::And(parts) = *l else { panic!() };
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn commerge_rejects_foreign_premise() {
        let q = triangle();
        let other = bigon().arrow_embedding(0);
        assert_eq!(
            commerge_formula(&q, &[q.arrow_embedding(0), other]).unwrap_err(),
            FormulaError::CodomainMismatch(1)
        );
        let f = commerge_formula(&q, &[]).unwrap();
        assert!(f.is_closed());
    }

    #[test]
    fn theory_generation_is_deterministic() {
        let b = Budget {
            max_vertices: 2,
            max_arrows: 2,
            max_path_len: 1,
        };
        let t1 = tcat_axioms(b);
        let t2 = tcat_axioms(b);
        assert_eq!(t1, t2);
        for s in ["EmptyEU", "CompE", "IdE", "ComEq"] {
            assert_eq!(t1.count(s), 1);
        }
        assert_eq!(t1.count("EqPathConcat"), 16);
        assert!(t1.axioms.iter().all(|a| a.formula.is_closed()));
        assert!(t1
            .axioms
            .iter()
            .all(|a| a.formula.well_formed(Signature::Sigma).is_ok()));
        let d = t1.dual();
        assert!(d.axioms.iter().all(|a| a.formula.well_formed(Signature::Sigma).is_ok()));
    }

    #[test]
    fn concat_gluing_is_a_pushout() {
        let po = pushout(&tp_embedding(0, 2).unwrap(), &sp_embedding(0, 1).unwrap()).unwrap();
        assert_eq!(po.pushout, Quiver::path_quiver(3));
        assert_eq!(po.inj1, sp_embedding(2, 3).unwrap());
        assert_eq!(po.inj2, tp_embedding(1, 3).unwrap());
    }
}
