//! Finite bounded posets, finite lattices of truth values, and families of
//! bounded morphisms into a lattice.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::props::{PropositionAlgebra, StateSet};
use crate::{Error, Result};

/// Index of an element inside a [`Poset`] (and so inside a [`TruthLattice`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite bounded partial order over named elements.
///
/// The order is stored as a dense `n x n` boolean matrix, already closed
/// under reflexivity and transitivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<bool>,
    bottom: Elem,
    top: Elem,
}

impl Poset {
    /// Builds a poset from element names and a list of `(lower, upper)` pairs.
    /// The order is the reflexive-transitive closure of the pairs.
    pub fn from_covers<N, C>(names: &[N], covers: &[(C, C)]) -> Result<Poset>
    where
        N: AsRef<str>,
        C: AsRef<str>,
    {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownName(name.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            pairs.push((lookup(lo.as_ref())?, lookup(hi.as_ref())?));
        }
        Poset::from_relation(names, |a, b| pairs.contains(&(a, b)))
    }

    /// Builds a poset from a generating relation given as a predicate on
    /// element indices. The predicate need not be reflexive or transitive.
    pub fn from_relation(names: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let mut leq = alloc::vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = a == b || rel(a, b);
            }
        }
        // Warshall closure.
        for k in 0..n {
            for a in 0..n {
                if !leq[a * n + k] {
                    continue;
                }
                for b in 0..n {
                    if leq[k * n + b] {
                        leq[a * n + b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::CycleDetected(names[a].clone(), names[b].clone()));
                }
            }
        }
        let bottom = (0..n)
            .find(|&a| (0..n).all(|b| leq[a * n + b]))
            .ok_or(Error::NoBottom)?;
        let top = (0..n)
            .find(|&a| (0..n).all(|b| leq[b * n + a]))
            .ok_or(Error::NoTop)?;
        Ok(Poset {
            names,
            leq,
            bottom: Elem(bottom),
            top: Elem(top),
        })
    }

    /// A chain `names[0] < names[1] < ...`.
    pub fn chain<N: AsRef<str>>(names: &[N]) -> Result<Poset> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        Poset::from_relation(names, |a, b| a <= b)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: posets are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.len()).map(Elem)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.len()
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between,
    /// ordered by `(a, b)` index.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements sorted so that every element comes after all elements below
    /// it; ties are broken by declaration index.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&e| (self.elements().filter(|&d| self.lt(d, e)).count(), e));
        order
    }

    /// Whether the `members` mask is downward closed.
    pub fn is_down_set(&self, members: &[bool]) -> bool {
        self.elements().all(|b| {
            !members[b.0] || self.elements().all(|a| !self.leq(a, b) || members[a.0])
        })
    }

    /// Whether a map into `target` is order-preserving.
    pub fn is_monotone_into(&self, target: &Poset, map: &[Elem]) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| !self.leq(a, b) || target.leq(map[a.0], map[b.0]))
        })
    }
}

/// A non-trivial finite lattice with pairwise meet and join tables.
///
/// Finite and bounded, so every subset has a meet and a join; the empty meet
/// is the top element and the empty join is the bottom element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthLattice {
    poset: Poset,
    meet: Vec<Elem>,
    join: Vec<Elem>,
}

impl TruthLattice {
    /// Checks that every pair has a greatest lower bound and a least upper
    /// bound, and tabulates both.
    pub fn new(poset: Poset) -> Result<TruthLattice> {
        let n = poset.len();
        if n < 2 {
            return Err(Error::TrivialLattice);
        }
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for a in poset.elements() {
            for b in poset.elements() {
                let lower: Vec<Elem> = poset.elements().filter(|&c| poset.leq(c, a) && poset.leq(c, b)).collect();
                let upper: Vec<Elem> = poset.elements().filter(|&c| poset.leq(a, c) && poset.leq(b, c)).collect();
                let glb = greatest(&poset, &lower)
                    .ok_or_else(|| {
                        Error::NotALattice(poset.name(a).into(), poset.name(b).into(), "meet")
                    })?;
                let lub = least(&poset, &upper)
                    .ok_or_else(|| {
                        Error::NotALattice(poset.name(a).into(), poset.name(b).into(), "join")
                    })?;
                meet.push(glb);
                join.push(lub);
            }
        }
        Ok(TruthLattice { poset, meet, join })
    }

    /// The two-element lattice `0 < 1`.
    pub fn boolean() -> TruthLattice {
        TruthLattice::new(Poset::chain(&["0", "1"]).expect("chain")).expect("lattice")
    }

    /// The three-element chain `0 < m < 1`.
    pub fn chain3() -> TruthLattice {
        TruthLattice::new(Poset::chain(&["0", "m", "1"]).expect("chain")).expect("lattice")
    }

    /// The four-element diamond `0 < a, b < 1`.
    pub fn diamond() -> TruthLattice {
        let p = Poset::from_covers(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .expect("diamond");
        TruthLattice::new(p).expect("lattice")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.poset.bottom()
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.poset.top()
    }

    pub fn name(&self, e: Elem) -> &str {
        self.poset.name(e)
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.poset.index_of(name)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        self.poset.elements()
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.0 * self.len() + b.0]
    }

    /// Meet of any finite family; `top` when empty.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Join of any finite family; `bottom` when empty.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_subset(&self, xs: &[Elem]) -> Result<Elem> {
        self.check_elements(xs)?;
        Ok(self.meet_all(xs.iter().copied()))
    }

    pub fn join_subset(&self, xs: &[Elem]) -> Result<Elem> {
        self.check_elements(xs)?;
        Ok(self.join_all(xs.iter().copied()))
    }

    fn check_elements(&self, xs: &[Elem]) -> Result<()> {
        match xs.iter().find(|x| !self.poset.contains(**x)) {
            Some(x) => Err(Error::UnknownElement(x.0)),
            None => Ok(()),
        }
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        let bot = self.bottom();
        self.poset
            .covers()
            .into_iter()
            .filter(|&(a, _)| a == bot)
            .map(|(_, b)| b)
            .collect()
    }

    /// First triple violating `a /\ (b \/ c) = (a /\ b) \/ (a /\ c)`.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// The complement of `a`, if one exists. In a distributive lattice it is unique.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        self.elements()
            .find(|&b| self.meet(a, b) == self.bottom() && self.join(a, b) == self.top())
    }

    /// Succeeds iff the lattice is distributive and complemented.
    pub fn check_boolean(&self) -> Result<()> {
        if let Some((a, b, c)) = self.distributivity_witness() {
            return Err(Error::NotBoolean(alloc::format!(
                "not distributive at ({}, {}, {})",
                self.name(a),
                self.name(b),
                self.name(c)
            )));
        }
        if let Some(a) = self.elements().find(|&a| self.complement(a).is_none()) {
            return Err(Error::NotBoolean(alloc::format!(
                "`{}` has no complement",
                self.name(a)
            )));
        }
        Ok(())
    }
}

fn greatest(p: &Poset, candidates: &[Elem]) -> Option<Elem> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&d| p.leq(d, c)))
}

fn least(p: &Poset, candidates: &[Elem]) -> Option<Elem> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&d| p.leq(c, d)))
}

/// An indexed family of bounded morphisms `h_s : source -> target`.
#[derive(Clone, Debug)]
pub struct BoundedMorphismFamily {
    source: Poset,
    target: Arc<TruthLattice>,
    index: Vec<String>,
    maps: Vec<Vec<Elem>>,
}

impl BoundedMorphismFamily {
    /// `maps[i][e]` is `h_{index[i]}(e)`. Each map must be monotone and
    /// preserve both bounds.
    pub fn new(
        source: Poset,
        target: Arc<TruthLattice>,
        index: Vec<String>,
        maps: Vec<Vec<Elem>>,
    ) -> Result<BoundedMorphismFamily> {
        if index.is_empty() {
            return Err(Error::EmptyStates);
        }
        if index.len() != maps.len() {
            return Err(Error::CarrierMismatch);
        }
        for (name, map) in index.iter().zip(&maps) {
            let bad = |reason| Error::NotAMorphism {
                map: name.clone(),
                reason,
            };
            if map.len() != source.len() || map.iter().any(|e| !target.poset().contains(*e)) {
                return Err(bad("table has the wrong shape"));
            }
            if map[source.bottom().0] != target.bottom() {
                return Err(bad("bottom not preserved"));
            }
            if map[source.top().0] != target.top() {
                return Err(bad("top not preserved"));
            }
            if !source.is_monotone_into(target.poset(), map) {
                return Err(bad("not order-preserving"));
            }
        }
        Ok(BoundedMorphismFamily {
            source,
            target,
            index,
            maps,
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruthLattice> {
        &self.target
    }

    pub fn index(&self) -> &[String] {
        &self.index
    }

    /// `h_s(a)` for the `s`-th map.
    pub fn eval(&self, s: usize, a: Elem) -> Elem {
        self.maps[s][a.0]
    }

    /// First pair `(a, b)` with `h_s(a) <= h_s(b)` for every `s` but `a` not
    /// below `b`, scanning pairs in index order.
    pub fn reflection_witness(&self) -> Option<(Elem, Elem)> {
        for a in self.source.elements() {
            for b in self.source.elements() {
                if !self.source.leq(a, b)
                    && self.maps.iter().all(|h| self.target.leq(h[a.0], h[b.0]))
                {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether the family jointly reflects the order of the source.
    pub fn is_full(&self) -> bool {
        self.reflection_witness().is_none()
    }

    /// The image of the source under `a -> (h_s(a))_s`, as an algebra of
    /// propositions over the index set. Members keep the source element names.
    pub fn embed_pointwise(&self) -> Result<PropositionAlgebra> {
        if let Some((a, b)) = self.reflection_witness() {
            return Err(Error::NotFullSet(
                self.source.name(a).into(),
                self.source.name(b).into(),
            ));
        }
        let states = Arc::new(StateSet::new(self.index.clone())?);
        let members = self
            .source
            .elements()
            .map(|a| {
                let values = self.maps.iter().map(|h| h[a.0]).collect();
                (self.source.name(a).to_string(), values)
            })
            .collect();
        PropositionAlgebra::new(self.target.clone(), states, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn diamond() -> Poset {
        TruthLattice::diamond().poset().clone()
    }

    #[test]
    fn two_element_chain() {
        let p = Poset::from_covers(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(p.name(p.bottom()), "0");
        assert_eq!(p.name(p.top()), "1");
        assert!(p.leq(Elem(0), Elem(1)));
        assert!(!p.leq(Elem(1), Elem(0)));
    }

    #[test]
    fn diamond_has_incomparable_middle() {
        let p = diamond();
        let a = p.index_of("a").unwrap();
        let b = p.index_of("b").unwrap();
        assert!(!p.comparable(a, b));
        assert_eq!(p.covers().len(), 4);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Poset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, Error::CycleDetected("a".into(), "b".into()));
    }

    #[test]
    fn unbounded_is_rejected() {
        let err = Poset::from_covers(&["a", "b", "1"], &[("a", "1"), ("b", "1")]).unwrap_err();
        assert_eq!(err, Error::NoBottom);
        let err = Poset::from_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap_err();
        assert_eq!(err, Error::NoTop);
    }

    #[test]
    fn duplicate_and_unknown_names() {
        assert_eq!(
            Poset::from_covers::<_, &str>(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateName("a".into())
        );
        assert_eq!(
            Poset::from_covers(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownName("z".into())
        );
    }

    #[test]
    fn diamond_meets_and_joins() {
        let l = TruthLattice::diamond();
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        assert_eq!(l.name(l.meet(a, b)), "0");
        assert_eq!(l.name(l.join(a, b)), "1");
        assert_eq!(l.name(l.meet_subset(&[a, b]).unwrap()), "0");
        assert_eq!(l.name(l.join_subset(&[a, b]).unwrap()), "1");
    }

    #[test]
    fn empty_meet_is_top_and_empty_join_is_bottom() {
        for l in [TruthLattice::boolean(), TruthLattice::chain3(), TruthLattice::diamond()] {
            assert_eq!(l.meet_subset(&[]).unwrap(), l.top());
            assert_eq!(l.join_subset(&[]).unwrap(), l.bottom());
        }
    }

    #[test]
    fn chain_meet() {
        let l = TruthLattice::chain3();
        let m = l.index_of("m").unwrap();
        assert_eq!(l.meet_subset(&[m, l.top()]).unwrap(), m);
        assert_eq!(l.meet_subset(&[Elem(9)]).unwrap_err(), Error::UnknownElement(9));
    }

    // Oracle: list every upper bound of each pair and look for a least one.
    fn pair_without_join(p: &Poset) -> Option<(Elem, Elem)> {
        for a in p.elements() {
            for b in p.elements() {
                let ubs: Vec<Elem> = p.elements().filter(|&c| p.leq(a, c) && p.leq(b, c)).collect();
                if !ubs.iter().any(|&c| ubs.iter().all(|&d| p.leq(c, d))) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    #[test]
    fn bounded_non_lattice_is_rejected() {
        // 0 < a, b < c, d < 1: a and b have two minimal upper bounds.
        let p = Poset::from_covers(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap();
        let (a, b) = pair_without_join(&p).expect("oracle finds a pair");
        assert_eq!((p.name(a), p.name(b)), ("a", "b"));
        assert!(matches!(TruthLattice::new(p), Err(Error::NotALattice(..))));
    }

    #[test]
    fn one_element_lattice_is_trivial() {
        let p = Poset::chain(&["x"]).unwrap();
        assert_eq!(TruthLattice::new(p).unwrap_err(), Error::TrivialLattice);
    }

    #[test]
    fn lattice_laws_hold_on_builtins() {
        for l in [TruthLattice::boolean(), TruthLattice::chain3(), TruthLattice::diamond()] {
            for a in l.elements() {
                assert_eq!(l.meet(a, a), a);
                for b in l.elements() {
                    assert_eq!(l.meet(a, b), l.meet(b, a));
                    assert_eq!(l.join(a, b), l.join(b, a));
                    assert_eq!(l.meet(a, l.join(a, b)), a);
                    assert_eq!(l.join(a, l.meet(a, b)), a);
                    for c in l.elements() {
                        assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
                        assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn boolean_recognition() {
        assert!(TruthLattice::diamond().check_boolean().is_ok());
        assert!(TruthLattice::boolean().check_boolean().is_ok());
        assert!(matches!(
            TruthLattice::chain3().check_boolean(),
            Err(Error::NotBoolean(_))
        ));
        // N5 is not distributive.
        let n5 = Poset::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap();
        let n5 = TruthLattice::new(n5).unwrap();
        assert!(n5.distributivity_witness().is_some());
        assert_eq!(n5.atoms().len(), 2);
    }

    fn bool_family(source: Poset, maps: Vec<Vec<usize>>) -> Result<BoundedMorphismFamily> {
        let index = (0..maps.len()).map(|i| alloc::format!("s{}", i + 1)).collect();
        let maps = maps
            .into_iter()
            .map(|m| m.into_iter().map(Elem).collect())
            .collect();
        BoundedMorphismFamily::new(source, Arc::new(TruthLattice::boolean()), index, maps)
    }

    #[test]
    fn merging_incomparables_is_not_full() {
        // h(0)=0, h(a)=h(b)=h(1)=1 identifies a and b.
        let f = bool_family(diamond(), vec![vec![0, 1, 1, 1]]).unwrap();
        assert!(!f.is_full());
        assert!(matches!(f.embed_pointwise(), Err(Error::NotFullSet(..))));
    }

    #[test]
    fn projections_of_the_diamond_are_full() {
        let f = bool_family(diamond(), vec![vec![0, 1, 0, 1], vec![0, 0, 1, 1]]).unwrap();
        assert!(f.is_full());
        let alg = f.embed_pointwise().unwrap();
        assert_eq!(alg.len(), 4);
    }

    #[test]
    fn two_element_chain_is_always_full() {
        let f = bool_family(Poset::chain(&["0", "1"]).unwrap(), vec![vec![0, 1]]).unwrap();
        assert!(f.is_full());
    }

    #[test]
    fn non_morphisms_are_rejected() {
        assert!(matches!(
            bool_family(diamond(), vec![vec![1, 1, 1, 1]]),
            Err(Error::NotAMorphism { .. })
        ));
        assert!(matches!(
            bool_family(diamond(), vec![vec![0, 1, 0]]),
            Err(Error::NotAMorphism { .. })
        ));
    }

    #[test]
    fn identity_embedding_of_a_lattice() {
        let l = TruthLattice::chain3();
        let map: Vec<Elem> = l.elements().collect();
        let f = BoundedMorphismFamily::new(
            l.poset().clone(),
            Arc::new(l.clone()),
            vec!["s".into()],
            vec![map],
        )
        .unwrap();
        let alg = f.embed_pointwise().unwrap();
        assert_eq!(alg.len(), 3);
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(alg.leq(a.0, b.0), l.leq(a, b));
            }
        }
    }
}
