//! Transition frames `(S, R)` and labelled automata `(X, S, R)`.
//!
//! An automaton here is an acceptor only: no outputs, no initial or final
//! states. The labelled relation is stored as one binary relation (fibre)
//! per input.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::props::StateSet;
use crate::{Error, Result};

/// A binary relation on `0..n` stored as a dense boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            n,
            bits: alloc::vec![false; n * n],
        }
    }

    pub fn total(n: usize) -> Relation {
        Relation {
            n,
            bits: alloc::vec![true; n * n],
        }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for s in 0..n {
            r.insert(s, s);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Relation> {
        let mut r = Relation::empty(n);
        for (s, t) in pairs {
            if s >= n {
                return Err(Error::UnknownState(s));
            }
            if t >= n {
                return Err(Error::UnknownState(t));
            }
            r.insert(s, t);
        }
        Ok(r)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits[s * self.n + t]
    }

    #[inline]
    pub fn insert(&mut self, s: usize, t: usize) {
        self.bits[s * self.n + t] = true;
    }

    pub fn remove(&mut self, s: usize, t: usize) {
        self.bits[s * self.n + t] = false;
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |s| (0..self.n).map(move |t| (s, t)))
            .filter(move |&(s, t)| self.contains(s, t))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&t| self.contains(s, t))
    }

    pub fn predecessors(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&s| self.contains(s, t))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect(),
        }
    }
}

/// A state set with one binary transition relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionFrame {
    states: Arc<StateSet>,
    rel: Relation,
}

impl TransitionFrame {
    pub fn new(states: Arc<StateSet>, rel: Relation) -> Result<TransitionFrame> {
        if rel.size() != states.len() {
            return Err(Error::CarrierMismatch);
        }
        Ok(TransitionFrame { states, rel })
    }

    pub fn states(&self) -> &Arc<StateSet> {
        &self.states
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn into_relation(self) -> Relation {
        self.rel
    }

    fn check_state(&self, s: usize) -> Result<()> {
        if s < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(s))
        }
    }

    pub fn successors(&self, s: usize) -> Result<BTreeSet<usize>> {
        self.check_state(s)?;
        Ok(self.rel.successors(s).collect())
    }

    pub fn predecessors(&self, t: usize) -> Result<BTreeSet<usize>> {
        self.check_state(t)?;
        Ok(self.rel.predecessors(t).collect())
    }
}

/// A finite automaton `(X, S, R)` with `R` split into per-input fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    inputs: Vec<String>,
    states: Arc<StateSet>,
    fibres: Vec<Relation>,
}

impl Automaton {
    /// An automaton with no transitions.
    pub fn new(inputs: Vec<String>, states: Arc<StateSet>) -> Result<Automaton> {
        if inputs.is_empty() {
            return Err(Error::EmptyInputs);
        }
        for (i, x) in inputs.iter().enumerate() {
            if inputs[..i].contains(x) {
                return Err(Error::DuplicateName(x.clone()));
            }
        }
        let fibres = inputs.iter().map(|_| Relation::empty(states.len())).collect();
        Ok(Automaton {
            inputs,
            states,
            fibres,
        })
    }

    /// Builds an automaton from `(input, from, to)` index triples.
    pub fn from_triples(
        inputs: Vec<String>,
        states: Arc<StateSet>,
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Automaton> {
        let mut a = Automaton::new(inputs, states)?;
        for (x, s, t) in triples {
            a.add(x, s, t)?;
        }
        Ok(a)
    }

    /// Builds an automaton from one relation per input.
    pub fn from_fibres(inputs: Vec<String>, states: Arc<StateSet>, fibres: Vec<Relation>) -> Result<Automaton> {
        let mut a = Automaton::new(inputs, states)?;
        if fibres.len() != a.inputs.len() || fibres.iter().any(|r| r.size() != a.states.len()) {
            return Err(Error::CarrierMismatch);
        }
        a.fibres = fibres;
        Ok(a)
    }

    pub fn add(&mut self, x: usize, s: usize, t: usize) -> Result<()> {
        if x >= self.inputs.len() {
            return Err(Error::UnknownInput(alloc::format!("#{x}")));
        }
        let n = self.states.len();
        if s >= n {
            return Err(Error::UnknownState(s));
        }
        if t >= n {
            return Err(Error::UnknownState(t));
        }
        self.fibres[x].insert(s, t);
        Ok(())
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn states(&self) -> &Arc<StateSet> {
        &self.states
    }

    pub fn input_index(&self, x: &str) -> Option<usize> {
        self.inputs.iter().position(|i| i == x)
    }

    pub fn fibre_relation(&self, x: usize) -> &Relation {
        &self.fibres[x]
    }

    pub fn fibres(&self) -> &[Relation] {
        &self.fibres
    }

    /// The frame `(S, R_x)` for a named input.
    pub fn fibre(&self, x: &str) -> Result<TransitionFrame> {
        let i = self
            .input_index(x)
            .ok_or_else(|| Error::UnknownInput(x.to_string()))?;
        Ok(self.frame(i))
    }

    pub fn frame(&self, x: usize) -> TransitionFrame {
        TransitionFrame {
            states: self.states.clone(),
            rel: self.fibres[x].clone(),
        }
    }

    /// All `(input, from, to)` triples, ordered by input then pair.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.fibres
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.pairs().map(move |(s, t)| (x, s, t)))
    }

    /// Triples by name, for comparisons across differently indexed automata.
    pub fn named_triples(&self) -> BTreeSet<(String, String, String)> {
        self.triples()
            .map(|(x, s, t)| {
                (
                    self.inputs[x].clone(),
                    self.states.name(s).to_string(),
                    self.states.name(t).to_string(),
                )
            })
            .collect()
    }

    /// True iff every state has at most one successor per input.
    pub fn is_deterministic(&self) -> bool {
        self.fibres
            .iter()
            .all(|r| (0..r.size()).all(|s| r.successors(s).nth(1).is_none()))
    }
}

/// The running airport-shuttle automaton: inputs `x1 x2`, states `s1 s2 s3`.
pub fn skyline_automaton() -> Automaton {
    let states = Arc::new(StateSet::new(["s1", "s2", "s3"]).expect("states"));
    Automaton::from_triples(
        alloc::vec!["x1".into(), "x2".into()],
        states,
        [(0, 0, 1), (0, 1, 0), (0, 2, 2), (1, 1, 2), (1, 2, 2)],
    )
    .expect("skyline automaton")
}
