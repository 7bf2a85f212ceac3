mod common;

use proptest::prelude::*;

use chase_core::decide::{decide_commerge, CommergeInstance};
use chase_core::dsl;
use chase_core::formulas::parse::{parse_formula, Env};
use chase_core::formulas::Signature;
use chase_core::models::{diagrams, is_commutative, is_commutative_bruteforce, samples, Diagram};
use chase_core::paths::{close, enumerate_paths, oracle, Path, PathSpace};
use chase_core::quiver::{Quiver, QuiverMorphism};

use common::{random_formula, sort_pool};

fn arb_quiver(max_v: usize, max_a: usize, acyclic: bool) -> impl Strategy<Value = Quiver> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_a).prop_map(move |mut arrows| {
            if acyclic {
                // orient every arrow upwards and drop loops
                arrows.retain(|(s, t)| s != t);
                for a in arrows.iter_mut() {
                    if a.0 > a.1 {
                        *a = (a.1, a.0);
                    }
                }
            }
            Quiver::new(n, &arrows).unwrap()
        })
    })
}

fn arb_subset(n: usize) -> impl Strategy<Value = std::collections::BTreeSet<usize>> {
    prop::collection::btree_set(0..n.max(1), 0..=n).prop_map(move |s| s.into_iter().filter(|&a| a < n).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quiver_dual_is_an_involution(q in arb_quiver(5, 7, false)) {
        prop_assert_eq!(q.dual_quiver().dual_quiver(), q.clone());
        let (d, perm) = q.dual();
        for a in 0..q.arrow_count() {
            prop_assert_eq!(d.arrows()[perm.apply(a)], (q.target(a), q.source(a)));
        }
    }

    #[test]
    fn canonical_form_ignores_input_order(q in arb_quiver(4, 6, false), seed in any::<u64>()) {
        let mut arrows = q.arrows().to_vec();
        let n = arrows.len();
        for i in 0..n {
            let j = (seed as usize).wrapping_mul(i + 1) % n.max(1);
            arrows.swap(i, j);
        }
        prop_assert_eq!(Quiver::new(q.vertex_count(), &arrows).unwrap(), q);
    }

    #[test]
    fn restriction_dual_is_an_involution((q, s) in arb_quiver(4, 6, false).prop_flat_map(|q| {
        let n = q.arrow_count();
        (Just(q), arb_subset(n))
    })) {
        let m = q.restrict(&s).unwrap();
        prop_assert!(m.is_embedding());
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual().codomain().clone(), q.dual_quiver());
    }

    #[test]
    fn concatenation_is_associative_and_pushforward_functorial(
        (q, s) in arb_quiver(4, 6, true).prop_flat_map(|q| {
            let n = q.arrow_count();
            (Just(q), arb_subset(n))
        })
    ) {
        let paths = enumerate_paths(&q).unwrap();
        let m = q.restrict(&s).unwrap();
        let dom_paths = enumerate_paths(m.domain()).unwrap();
        for p in &dom_paths {
            for r in dom_paths.iter().filter(|r| r.source() == p.target()) {
                let pr = p.concat(r).unwrap();
                prop_assert_eq!(pr.pushforward(&m), p.pushforward(&m).concat(&r.pushforward(&m)).unwrap());
            }
        }
        for a in paths.iter().take(6) {
            for b in paths.iter().filter(|b| b.source() == a.target()).take(6) {
                for c in paths.iter().filter(|c| c.source() == b.target()).take(6) {
                    let l = a.concat(b).unwrap().concat(c).unwrap();
                    let r = a.concat(&b.concat(c).unwrap()).unwrap();
                    prop_assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn closure_matches_the_naive_oracle(
        (q, picks) in arb_quiver(4, 5, true).prop_flat_map(|q| {
            (Just(q), prop::collection::vec((any::<usize>(), any::<usize>()), 0..4))
        })
    ) {
        let space = PathSpace::new(&q).unwrap();
        let pairs = space.same_extremity_pairs();
        let gens: Vec<(Path, Path)> = if pairs.is_empty() {
            Vec::new()
        } else {
            picks.iter().map(|&(i, _)| {
                let (a, b) = pairs[i % pairs.len()];
                (space.path(a).clone(), space.path(b).clone())
            }).collect()
        };
        let r = close(&q, &gens).unwrap();
        prop_assert_eq!(r.labels().to_vec(), oracle::naive_close(&space, &gens));
        for (p, p2) in &gens {
            prop_assert!(r.related(p, p2));
        }
    }

    #[test]
    fn formula_dual_is_an_involution_and_prints_back(choices in prop::collection::vec(any::<u32>(), 1..64)) {
        let pool = sort_pool();
        let phi = random_formula(&choices, &pool, 2);
        prop_assert!(phi.is_closed());
        prop_assert!(phi.well_formed(Signature::SigmaRing).is_ok());
        prop_assert_eq!(phi.dual().dual(), phi.clone());
        let text = phi.to_string();
        let back = parse_formula(&text, &Env::default()).unwrap();
        prop_assert!(back.alpha_eq(&phi), "{}", text);
    }

    #[test]
    fn dsl_parser_never_panics(src in "\\PC{0,80}") {
        let _ = dsl::parse(&src);
    }

    #[test]
    fn dsl_parser_never_panics_on_near_misses(
        parts in prop::collection::vec(prop::sample::select(vec![
            "quiver", "morphism", "category", "monoid", "query", "Q", "{", "}", ":", ",", "->", "=", ".",
            "vertices", "arrows", "objects", "hom", "id", "compose", "generators", "relations", "0", "1",
            "-1", "a", "\"\"", "commerge", "with", "bound", "\n", ";", "paths", "dual", "#",
        ]), 0..40)
    ) {
        let _ = dsl::parse(&parts.join(" "));
    }

    #[test]
    fn dsl_round_trip(q in arb_quiver(4, 5, false), with_query in any::<bool>()) {
        let arrows: Vec<String> = q.arrows().iter().enumerate().map(|(a, (s, t))| format!("l{a} {s} {t}")).collect();
        let mut src = format!("quiver Q {{ vertices: {}  arrows: {} }}\n", q.vertex_count(), arrows.join(", "));
        if q.arrow_count() == 0 {
            src = format!("quiver Q {{ vertices: {} }}\n", q.vertex_count());
        }
        if with_query {
            src += "query paths Q\nquery commerge-bounded Q bound 2\n";
        }
        let doc = dsl::parse(&src).unwrap();
        let again = dsl::parse(&doc.to_string()).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.to_string(), doc.to_string());
    }

    #[test]
    fn dual_instance_has_the_same_verdict(
        (q, subsets) in arb_quiver(4, 5, true).prop_flat_map(|q| {
            let n = q.arrow_count();
            (Just(q), prop::collection::vec(arb_subset(n), 0..3))
        })
    ) {
        let premises: Vec<QuiverMorphism> = subsets.iter().map(|s| q.restrict(s).unwrap()).collect();
        let inst = CommergeInstance::new(q, premises, Signature::Sigma).unwrap();
        let a = decide_commerge(&inst).unwrap();
        let b = decide_commerge(&inst.dual()).unwrap();
        prop_assert_eq!(a.is_valid(), b.is_valid());
    }

    #[test]
    fn commutativity_matches_bruteforce(q in arb_quiver(3, 3, false), pick in any::<usize>()) {
        for c in samples::all() {
            let ds: Vec<Diagram> = diagrams(&c, &q, 50_000).unwrap_or_default();
            if ds.is_empty() {
                continue;
            }
            let d = &ds[pick % ds.len()];
            let bound = 2 * c.morphism_count();
            prop_assert_eq!(is_commutative(&c, &q, d), is_commutative_bruteforce(&c, &q, d, bound));
        }
    }
}

#[test]
fn samples_satisfy_category_laws() {
    for c in samples::all() {
        c.check_laws().unwrap();
        let op = c.opposite();
        op.check_laws().unwrap();
        assert_eq!(op.opposite().with_name(c.name()), c);
    }
}
