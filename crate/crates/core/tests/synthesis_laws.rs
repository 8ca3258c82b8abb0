mod common;

use std::sync::Arc;

use common::*;
use dynlog_core::automaton::Relation;
use dynlog_core::props::Proposition;
use dynlog_core::synthesis::{synthesize, synthesize_dual};
use dynlog_core::{
    Automaton, CanonicalStateSpace, Direction, Elem, PropositionAlgebra, PropositionSet, SpaceKind,
    TransitionFunctor, TruthLattice,
};
use proptest::prelude::*;

fn boolean_power(n: usize) -> PropositionAlgebra {
    PropositionAlgebra::all_crisp(Arc::new(TruthLattice::boolean()), state_set(n)).unwrap()
}

fn indicator(states: usize, f: impl Fn(usize) -> bool) -> Proposition {
    Proposition::new((0..states).map(|s| Elem(usize::from(f(s)))).collect())
}

/// Random subset of `set` always containing `keep`.
fn random_subset(rng: &mut SplitMix, set: &PropositionSet, keep: usize) -> Vec<usize> {
    (0..set.len()).filter(|&i| i == keep || rng.coin()).collect()
}

fn close(set: &PropositionSet, mut chosen: Vec<usize>, meets: bool) -> Vec<usize> {
    let lat = set.lattice();
    loop {
        let mut grew = false;
        for i in 0..chosen.len() {
            for j in 0..chosen.len() {
                let (p, q) = (set.member(chosen[i]), set.member(chosen[j]));
                let r = if meets { p.meet(q, lat) } else { p.join(q, lat) };
                let k = set.position(&r).unwrap();
                if !chosen.contains(&k) {
                    chosen.push(k);
                    grew = true;
                }
            }
        }
        if !grew {
            chosen.sort();
            return chosen;
        }
    }
}

fn labels(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("x{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn down_set_evaluations_are_full_bounded_morphisms(base in bounded_posets(4)) {
        let space = CanonicalStateSpace::down_sets(&base, 4096).unwrap();
        prop_assert!(space.family().is_full());
        for s in 0..space.len() {
            prop_assert!(!space.eval(s, base.bottom()));
            prop_assert!(space.eval(s, base.top()));
            for a in base.elements() {
                for b in base.elements() {
                    if base.leq(a, b) && !space.eval(s, b) {
                        prop_assert!(!space.eval(s, a));
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_partial_functor_extends_over_down_sets(base in bounded_posets(4), seed in any::<u64>(), k in 1usize..=2) {
        let mut rng = SplitMix(seed);
        let space = CanonicalStateSpace::down_sets(&base, 4096).unwrap();
        let b = space.embedding();
        let c = b.subset(&random_subset(&mut rng, b, b.top()));
        let n = space.len();
        let top = c.top_index().unwrap();
        let images = (0..k)
            .map(|_| {
                // Per state, an up-set of C generated by random members and top.
                let gens: Vec<Vec<usize>> = (0..n)
                    .map(|_| (0..c.len()).filter(|&i| i == top || rng.below(4) == 0).collect())
                    .collect();
                (0..c.len())
                    .map(|i| indicator(n, |s| gens[s].iter().any(|&g| c.leq(g, i))))
                    .collect()
            })
            .collect();
        let t = TransitionFunctor::new(Direction::Upper, c, labels(k), images).unwrap();
        let syn = synthesize(&space, &t);
        prop_assert!(syn.is_ok(), "{:?}", syn.err());
    }

    #[test]
    fn monotone_partial_lower_functor_extends_over_down_sets(base in bounded_posets(4), seed in any::<u64>()) {
        let mut rng = SplitMix(seed);
        let space = CanonicalStateSpace::down_sets(&base, 4096).unwrap();
        let b = space.embedding();
        let c = b.subset(&random_subset(&mut rng, b, b.bottom()));
        let n = space.len();
        let bot = c.bottom_index().unwrap();
        // Per state, a down-set of C generated by random members and bottom;
        // P(c)(t) = 0 exactly on it.
        let gens: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..c.len()).filter(|&i| i == bot || rng.below(3) == 0).collect())
            .collect();
        let table = (0..c.len())
            .map(|i| indicator(n, |t| !gens[t].iter().any(|&g| c.leq(i, g))))
            .collect();
        let p = TransitionFunctor::new(Direction::Lower, c, labels(1), vec![table]).unwrap();
        let syn = synthesize_dual(&space, &p);
        prop_assert!(syn.is_ok(), "{:?}", syn.err());
    }

    #[test]
    fn meet_preserving_functor_extends_over_ultrafilters(n in 1usize..=4, seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = SplitMix(seed);
        let b = boolean_power(n);
        let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 4096).unwrap();
        prop_assert_eq!(space.len(), n);
        let e = space.embedding();
        let chosen = close(e, random_subset(&mut rng, e, e.top()), true);
        let c = e.subset(&chosen);
        // Per state a principal filter of C: T(c)(s) = [c >= g_s].
        let images = (0..k)
            .map(|_| {
                let g: Vec<usize> = (0..n).map(|_| rng.below(c.len())).collect();
                (0..c.len()).map(|i| indicator(n, |s| c.leq(g[s], i))).collect()
            })
            .collect();
        let t = TransitionFunctor::new(Direction::Upper, c, labels(k), images).unwrap();
        let syn = synthesize(&space, &t);
        prop_assert!(syn.is_ok(), "{:?}", syn.err());
    }

    #[test]
    fn ground_truth_round_trip(n in 1usize..=4, seed in any::<u64>(), bits in proptest::collection::vec(any::<bool>(), 32)) {
        let mut rng = SplitMix(seed);
        let b = boolean_power(n);
        let truth = Automaton::from_triples(
            labels(2),
            b.states().clone(),
            (0..2).flat_map(|x| (0..n).flat_map(move |s| (0..n).map(move |t| (x, s, t))))
                .filter(|&(x, s, t)| bits[x * 16 + s * 4 + t]),
        ).unwrap();
        let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 4096).unwrap();

        let t_full = TransitionFunctor::from_automaton(Direction::Upper, &truth, &b).unwrap();
        let chosen = close(&b, random_subset(&mut rng, &b, b.top()), true);
        let t = space.transport(&t_full.restrict(&chosen), &b).unwrap();
        let syn = synthesize(&space, &t).unwrap();
        // Canonical states may be listed in another order, so compare by name.
        prop_assert!(truth.named_triples().is_subset(&syn.automaton.named_triples()));

        let p_full = TransitionFunctor::from_automaton(Direction::Lower, &truth, &b).unwrap();
        let chosen = close(&b, random_subset(&mut rng, &b, b.bottom()), false);
        let p = space.transport(&p_full.restrict(&chosen), &b).unwrap();
        prop_assert!(synthesize_dual(&space, &p).is_ok());
    }

    #[test]
    fn ultrafilters_match_atoms(n in 1usize..=4) {
        let base = boolean_power(n).as_poset().unwrap();
        let space = CanonicalStateSpace::ultrafilters(&base).unwrap();
        let atoms = TruthLattice::new(base).unwrap().atoms();
        prop_assert_eq!(space.len(), atoms.len());
        prop_assert!(space.family().is_full());
    }
}

#[test]
fn dual_skyline_synthesis() {
    let b = dynlog_core::props::skyline_algebra();
    let a = dynlog_core::automaton::skyline_automaton();
    let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 100).unwrap();
    let p_full = TransitionFunctor::from_automaton(Direction::Lower, &a, &b).unwrap();
    // Complements of {0, r, p', q', 1}.
    let c = b.select(&["0", "p", "q", "r'", "1"]).unwrap();
    let p = space.transport(&p_full.restrict(&c), &b).unwrap();
    let syn = synthesize_dual(&space, &p).unwrap();
    // Literal evaluation of the lower induced relation on C.
    for x in 0..2 {
        assert_eq!(
            *syn.automaton.fibre_relation(x),
            literal_induced_lower(p.domain(), p.table(x))
        );
    }
    // x2 is recovered exactly; for x1 only s3's row is loose because the
    // sole member of C true at s3 is 1.
    assert_eq!(syn.automaton.fibre_relation(1), a.fibre_relation(1));
    assert_eq!(
        *syn.automaton.fibre_relation(0),
        Relation::from_pairs(3, [(0, 1), (1, 0), (2, 0), (2, 1), (2, 2)]).unwrap()
    );
}

#[test]
fn meet_preservation_failure_has_a_witness() {
    // T(p') = T(q') = r' while T(p' /\ q') = T(r) = 0.
    let b = dynlog_core::props::skyline_algebra();
    let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 100).unwrap();
    let e = space.embedding();
    let names = ["0", "r", "p'", "q'", "1"];
    let c = e.subset(&e.select(&names).unwrap());
    let get = |n: &str| e.member(e.index_of(n).unwrap()).clone();
    let table = vec![get("0"), get("0"), get("r'"), get("r'"), get("1")];
    let t = TransitionFunctor::new(Direction::Upper, c, labels(1), vec![table]).unwrap();
    assert_eq!(t.check_laws(), Ok(()));
    // Oracle: scan pairs for T(y /\ z) != T(y) /\ T(z).
    let lat = t.domain().lattice();
    let mut found = None;
    for i in 0..5 {
        for j in (i + 1)..5 {
            let m = t.domain().member(i).meet(t.domain().member(j), lat);
            let k = t.domain().position(&m).unwrap();
            if *t.image(0, k) != t.image(0, i).meet(t.image(0, j), lat) && found.is_none() {
                found = Some((names[i], names[j]));
            }
        }
    }
    assert_eq!(found, Some(("p'", "q'")));
    match t.check_meet_preserving() {
        Err(dynlog_core::Precondition::NotMeetPreserving { left, right, .. }) => {
            assert_eq!((left.as_str(), right.as_str()), ("p'", "q'"));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(synthesize(&space, &t).is_err());
}
