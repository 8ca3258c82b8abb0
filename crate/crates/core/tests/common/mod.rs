//! Shared strategies and literal reference evaluations for the property tests.

#![allow(dead_code)]

use std::sync::Arc;

use dynlog_core::automaton::Relation;
use dynlog_core::props::Proposition;
use dynlog_core::{Automaton, Elem, Poset, PropositionAlgebra, PropositionSet, StateSet, TruthLattice};
use proptest::prelude::*;

pub fn lattices() -> Vec<TruthLattice> {
    vec![TruthLattice::boolean(), TruthLattice::chain3(), TruthLattice::diamond()]
}

pub fn state_set(n: usize) -> Arc<StateSet> {
    Arc::new(StateSet::new((1..=n).map(|i| format!("s{i}"))).unwrap())
}

/// A random instance: lattice, automaton, and an algebra containing both
/// constant propositions plus random extra tables.
#[derive(Clone, Debug)]
pub struct Instance {
    pub automaton: Automaton,
    pub algebra: PropositionAlgebra,
}

fn build_instance(
    lattice: TruthLattice,
    n: usize,
    labels: usize,
    bits: Vec<bool>,
    raw_tables: Vec<Vec<usize>>,
    crisp: bool,
) -> Instance {
    let lattice = Arc::new(lattice);
    let states = state_set(n);
    let inputs: Vec<String> = (1..=labels).map(|i| format!("x{i}")).collect();
    let triples = (0..labels)
        .flat_map(|x| (0..n).flat_map(move |s| (0..n).map(move |t| (x, s, t))))
        .filter(|&(x, s, t)| bits[(x * n + s) * n + t]);
    let automaton = Automaton::from_triples(inputs, states.clone(), triples).unwrap();

    let mut tables: Vec<Vec<Elem>> = vec![
        vec![lattice.bottom(); n],
        vec![lattice.top(); n],
    ];
    if crisp {
        for code in 0..1usize << n {
            tables.push(
                (0..n)
                    .map(|s| if code >> s & 1 == 1 { lattice.top() } else { lattice.bottom() })
                    .collect(),
            );
        }
    }
    for raw in raw_tables {
        tables.push(raw[..n].iter().map(|&v| Elem(v % lattice.len())).collect());
    }
    tables.sort();
    tables.dedup();
    let members = tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| (format!("b{i}"), t))
        .collect();
    let algebra = PropositionAlgebra::new(lattice, states, members).unwrap();
    Instance { automaton, algebra }
}

/// `|S| <= 5`, `|X| <= 3`, lattice among the three builtins, up to 30 extra
/// random tables. With `crisp`, every crisp table is included.
pub fn instances(crisp: bool) -> impl Strategy<Value = Instance> {
    (0usize..3, 1usize..=5, 1usize..=3)
        .prop_flat_map(move |(li, n, labels)| {
            (
                Just(li),
                Just(n),
                Just(labels),
                proptest::collection::vec(any::<bool>(), labels * n * n),
                proptest::collection::vec(proptest::collection::vec(0usize..4, 5), 0..30),
            )
        })
        .prop_map(move |(li, n, labels, bits, raw)| {
            build_instance(lattices().swap_remove(li), n, labels, bits, raw, crisp)
        })
}

/// Literal evaluation of `T_R(b)(s) = meet { b(t) | s R t }`.
pub fn literal_upper(lat: &TruthLattice, rel: &Relation, b: &Proposition) -> Proposition {
    let n = rel.size();
    Proposition::new(
        (0..n)
            .map(|s| {
                let succ: Vec<Elem> = (0..n).filter(|&t| rel.contains(s, t)).map(|t| b.at(t)).collect();
                lat.meet_subset(&succ).unwrap()
            })
            .collect(),
    )
}

/// Literal evaluation of `P_R(a)(t) = join { a(s) | s R t }`.
pub fn literal_lower(lat: &TruthLattice, rel: &Relation, a: &Proposition) -> Proposition {
    let n = rel.size();
    Proposition::new(
        (0..n)
            .map(|t| {
                let pred: Vec<Elem> = (0..n).filter(|&s| rel.contains(s, t)).map(|s| a.at(s)).collect();
                lat.join_subset(&pred).unwrap()
            })
            .collect(),
    )
}

/// Triple loop over `S x S x B`: `(s,t)` iff `T(b)(s) <= b(t)` for every `b`.
pub fn literal_induced_upper(domain: &PropositionSet, images: &[Proposition]) -> Relation {
    let lat = domain.lattice();
    let n = domain.states().len();
    let mut r = Relation::empty(n);
    for s in 0..n {
        for t in 0..n {
            let mut ok = true;
            for (i, b) in domain.members().iter().enumerate() {
                if !lat.leq(images[i].at(s), b.at(t)) {
                    ok = false;
                }
            }
            if ok {
                r.insert(s, t);
            }
        }
    }
    r
}

/// Triple loop over `S x S x A`: `(s,t)` iff `a(s) <= P(a)(t)` for every `a`.
pub fn literal_induced_lower(domain: &PropositionSet, images: &[Proposition]) -> Relation {
    let lat = domain.lattice();
    let n = domain.states().len();
    let mut r = Relation::empty(n);
    for s in 0..n {
        for t in 0..n {
            let mut ok = true;
            for (i, a) in domain.members().iter().enumerate() {
                if !lat.leq(a.at(s), images[i].at(t)) {
                    ok = false;
                }
            }
            if ok {
                r.insert(s, t);
            }
        }
    }
    r
}

/// Random bounded poset: `0`, `k` middle elements with a random strict order
/// among them (only `i < j` pairs by index), and `1`.
pub fn bounded_posets(max_middle: usize) -> impl Strategy<Value = Poset> {
    (0..=max_middle)
        .prop_flat_map(|k| (Just(k), proptest::collection::vec(any::<bool>(), k * k)))
        .prop_map(|(k, bits)| {
            let mut names = vec!["0".to_string()];
            names.extend((1..=k).map(|i| format!("e{i}")));
            names.push("1".to_string());
            let top = k + 1;
            Poset::from_relation(names, |a, b| {
                a == 0 || b == top || (a >= 1 && b >= 1 && a < b && b <= k && bits[(a - 1) * k + (b - 1)])
            })
            .unwrap()
        })
}

/// Small deterministic generator for choices that depend on sizes only known
/// after a strategy value has been built.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next() & 1 == 1
    }
}
