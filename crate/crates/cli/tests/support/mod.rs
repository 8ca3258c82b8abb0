//! Reference evaluations for the acceptance suite. Everything here works
//! from the lattice order alone: meets and joins are found by scanning for
//! greatest lower and least upper bounds, and induced relations by the
//! literal triple loop.

#![allow(dead_code)]

use std::sync::Arc;

use dynlog_core::automaton::Relation;
use dynlog_core::props::Proposition;
use dynlog_core::{Automaton, Elem, Poset, PropositionAlgebra, PropositionSet, StateSet, TruthLattice};
use rand::seq::SliceRandom;
use rand::Rng;

/// Greatest lower bound of `xs` by exhaustive search (top when empty).
pub fn glb(lat: &TruthLattice, xs: &[Elem]) -> Elem {
    let lower: Vec<Elem> = lat.elements().filter(|&e| xs.iter().all(|&x| lat.leq(e, x))).collect();
    *lower
        .iter()
        .find(|&&m| lower.iter().all(|&l| lat.leq(l, m)))
        .expect("complete lattice")
}

/// Least upper bound of `xs` by exhaustive search (bottom when empty).
pub fn lub(lat: &TruthLattice, xs: &[Elem]) -> Elem {
    let upper: Vec<Elem> = lat.elements().filter(|&e| xs.iter().all(|&x| lat.leq(x, e))).collect();
    *upper
        .iter()
        .find(|&&m| upper.iter().all(|&u| lat.leq(m, u)))
        .expect("complete lattice")
}

pub fn pointwise_leq(lat: &TruthLattice, p: &Proposition, q: &Proposition) -> bool {
    p.values().iter().zip(q.values()).all(|(&a, &b)| lat.leq(a, b))
}

/// `T_R(b)(s) = meet { b(t) | s R t }`.
pub fn upper(lat: &TruthLattice, rel: &Relation, b: &Proposition) -> Proposition {
    let n = rel.size();
    Proposition::new(
        (0..n)
            .map(|s| {
                let vals: Vec<Elem> = (0..n).filter(|&t| rel.contains(s, t)).map(|t| b.at(t)).collect();
                glb(lat, &vals)
            })
            .collect(),
    )
}

/// `P_R(a)(t) = join { a(s) | s R t }`.
pub fn lower(lat: &TruthLattice, rel: &Relation, a: &Proposition) -> Proposition {
    let n = rel.size();
    Proposition::new(
        (0..n)
            .map(|t| {
                let vals: Vec<Elem> = (0..n).filter(|&s| rel.contains(s, t)).map(|s| a.at(s)).collect();
                lub(lat, &vals)
            })
            .collect(),
    )
}

/// `(s,t)` iff `T(b)(s) <= b(t)` for every `b` in the domain.
pub fn induced_upper(lat: &TruthLattice, domain: &[Proposition], images: &[Proposition], n: usize) -> Relation {
    let mut r = Relation::empty(n);
    for s in 0..n {
        for t in 0..n {
            let mut keep = true;
            for (b, tb) in domain.iter().zip(images) {
                if !lat.leq(tb.at(s), b.at(t)) {
                    keep = false;
                }
            }
            if keep {
                r.insert(s, t);
            }
        }
    }
    r
}

/// `(s,t)` iff `a(s) <= P(a)(t)` for every `a` in the domain.
pub fn induced_lower(lat: &TruthLattice, domain: &[Proposition], images: &[Proposition], n: usize) -> Relation {
    let mut r = Relation::empty(n);
    for s in 0..n {
        for t in 0..n {
            let mut keep = true;
            for (a, pa) in domain.iter().zip(images) {
                if !lat.leq(a.at(s), pa.at(t)) {
                    keep = false;
                }
            }
            if keep {
                r.insert(s, t);
            }
        }
    }
    r
}

pub fn builtin_lattices() -> Vec<(&'static str, TruthLattice)> {
    vec![
        ("BOOL2", TruthLattice::boolean()),
        ("chain3", TruthLattice::chain3()),
        ("diamond", TruthLattice::diamond()),
    ]
}

pub fn states(n: usize) -> Arc<StateSet> {
    Arc::new(StateSet::new((1..=n).map(|i| format!("s{i}"))).unwrap())
}

pub fn random_automaton(rng: &mut impl Rng, n: usize, labels: usize) -> Automaton {
    let density: f64 = rng.gen_range(0.0..0.8);
    let inputs: Vec<String> = (1..=labels).map(|i| format!("x{i}")).collect();
    let mut triples = Vec::new();
    for x in 0..labels {
        for s in 0..n {
            for t in 0..n {
                if rng.gen_bool(density) {
                    triples.push((x, s, t));
                }
            }
        }
    }
    Automaton::from_triples(inputs, states(n), triples).unwrap()
}

/// Both constants, optionally every crisp table, and up to 12 random tables.
pub fn random_algebra(rng: &mut impl Rng, lat: &Arc<TruthLattice>, n: usize, crisp: bool) -> PropositionAlgebra {
    let elems: Vec<Elem> = lat.elements().collect();
    let mut tables: Vec<Vec<Elem>> = vec![vec![lat.bottom(); n], vec![lat.top(); n]];
    if crisp {
        for code in 0..1usize << n {
            tables.push((0..n).map(|s| if code >> s & 1 == 1 { lat.top() } else { lat.bottom() }).collect());
        }
    }
    for _ in 0..rng.gen_range(0..=12) {
        tables.push((0..n).map(|_| *elems.choose(rng).unwrap()).collect());
    }
    let mut seen: Vec<Vec<Elem>> = Vec::new();
    for t in tables {
        if !seen.contains(&t) {
            seen.push(t);
        }
    }
    let members = seen.into_iter().enumerate().map(|(i, t)| (format!("b{i}"), t)).collect();
    PropositionAlgebra::new(lat.clone(), states(n), members).unwrap()
}

/// Indices of a random subset of `set` containing `keep`, closed under
/// pointwise meets computed by [`glb`].
pub fn random_meet_closed(rng: &mut impl Rng, set: &PropositionSet, keep: usize) -> Vec<usize> {
    let lat = set.lattice();
    let mut chosen: Vec<usize> = (0..set.len()).filter(|&i| i == keep || rng.gen_bool(0.35)).collect();
    loop {
        let mut added = None;
        'scan: for &i in &chosen {
            for &j in &chosen {
                let m = Proposition::new(
                    (0..set.states().len())
                        .map(|s| glb(lat, &[set.member(i).at(s), set.member(j).at(s)]))
                        .collect(),
                );
                let k = set.position(&m).expect("closed algebra");
                if !chosen.contains(&k) {
                    added = Some(k);
                    break 'scan;
                }
            }
        }
        match added {
            Some(k) => chosen.push(k),
            None => break,
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Proper down-sets of `p` counted over every subset mask.
pub fn brute_force_down_sets(p: &Poset) -> usize {
    let n = p.len();
    (0u64..1 << n)
        .filter(|code| {
            let inside = |e: Elem| code >> e.0 & 1 == 1;
            inside(p.bottom())
                && !inside(p.top())
                && p.elements().all(|b| !inside(b) || p.elements().all(|a| !p.leq(a, b) || inside(a)))
        })
        .count()
}
