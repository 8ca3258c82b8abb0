//! Propositions as value tables `S -> M`, ordered pointwise.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::{Deref, Index};

use crate::order::{Elem, Poset, TruthLattice};
use crate::{Error, Result};

/// A non-empty set of named states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSet {
    names: Vec<String>,
}

impl StateSet {
    pub fn new<N: Into<String>>(names: impl IntoIterator<Item = N>) -> Result<StateSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyStates);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(StateSet { names })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A total map from states to lattice elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Proposition(Vec<Elem>);

impl Proposition {
    pub fn new(values: Vec<Elem>) -> Proposition {
        Proposition(values)
    }

    pub fn constant(value: Elem, states: usize) -> Proposition {
        Proposition(alloc::vec![value; states])
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.0
    }

    #[inline]
    pub fn at(&self, s: usize) -> Elem {
        self.0[s]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leq(&self, other: &Proposition, lattice: &TruthLattice) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| lattice.leq(a, b))
    }

    pub fn meet(&self, other: &Proposition, lattice: &TruthLattice) -> Proposition {
        Proposition(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| lattice.meet(a, b))
                .collect(),
        )
    }

    pub fn join(&self, other: &Proposition, lattice: &TruthLattice) -> Proposition {
        Proposition(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| lattice.join(a, b))
                .collect(),
        )
    }

    /// Whether every value is the bottom or the top of `lattice`.
    pub fn is_crisp(&self, lattice: &TruthLattice) -> bool {
        self.0
            .iter()
            .all(|&v| v == lattice.bottom() || v == lattice.top())
    }
}

impl Index<usize> for Proposition {
    type Output = Elem;

    fn index(&self, s: usize) -> &Elem {
        &self.0[s]
    }
}

impl From<Vec<Elem>> for Proposition {
    fn from(values: Vec<Elem>) -> Self {
        Proposition(values)
    }
}

/// `p <= q` pointwise. Both tables must be over the same states and lattice.
pub fn pointwise_leq(lattice: &TruthLattice, p: &Proposition, q: &Proposition) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::CarrierMismatch);
    }
    if let Some(v) = p.0.iter().chain(&q.0).find(|v| !lattice.poset().contains(**v)) {
        return Err(Error::UnknownElement(v.0));
    }
    Ok(p.leq(q, lattice))
}

/// A finite set of distinct, named propositions over one lattice and state set,
/// ordered pointwise. No bounds are required.
#[derive(Clone, Debug)]
pub struct PropositionSet {
    lattice: Arc<TruthLattice>,
    states: Arc<StateSet>,
    names: Vec<String>,
    members: Vec<Proposition>,
}

impl PropositionSet {
    pub fn new(
        lattice: Arc<TruthLattice>,
        states: Arc<StateSet>,
        members: Vec<(String, Vec<Elem>)>,
    ) -> Result<PropositionSet> {
        let mut names: Vec<String> = Vec::with_capacity(members.len());
        let mut props: Vec<Proposition> = Vec::with_capacity(members.len());
        for (name, values) in members {
            if values.len() != states.len() || values.iter().any(|v| !lattice.poset().contains(*v)) {
                return Err(Error::MalformedTable(name));
            }
            if names.contains(&name) {
                return Err(Error::DuplicateName(name));
            }
            let p = Proposition(values);
            if let Some(i) = props.iter().position(|q| *q == p) {
                return Err(Error::DuplicateMember(names[i].clone(), name));
            }
            names.push(name);
            props.push(p);
        }
        Ok(PropositionSet {
            lattice,
            states,
            names,
            members: props,
        })
    }

    pub fn lattice(&self) -> &Arc<TruthLattice> {
        &self.lattice
    }

    pub fn states(&self) -> &Arc<StateSet> {
        &self.states
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn member(&self, i: usize) -> &Proposition {
        &self.members[i]
    }

    pub fn members(&self) -> &[Proposition] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Proposition)> {
        self.names.iter().map(String::as_str).zip(&self.members)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of the member with this value table.
    pub fn position(&self, p: &Proposition) -> Option<usize> {
        self.members.iter().position(|q| q == p)
    }

    pub fn contains(&self, p: &Proposition) -> bool {
        self.position(p).is_some()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.members[i].leq(&self.members[j], &self.lattice)
    }

    /// Whether both sets live over equal lattices and state sets.
    pub fn same_carrier(&self, other: &PropositionSet) -> bool {
        (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
            && (Arc::ptr_eq(&self.states, &other.states) || self.states == other.states)
    }

    pub fn constant(&self, value: Elem) -> Proposition {
        Proposition::constant(value, self.states.len())
    }

    pub fn top_index(&self) -> Option<usize> {
        self.position(&self.constant(self.lattice.top()))
    }

    pub fn bottom_index(&self) -> Option<usize> {
        self.position(&self.constant(self.lattice.bottom()))
    }

    /// Resolves member names to indices.
    pub fn select<N: AsRef<str>>(&self, names: &[N]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| Error::NotAMember(n.as_ref().to_string()))
            })
            .collect()
    }

    /// The members at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PropositionSet {
        let mut seen: Vec<usize> = Vec::with_capacity(indices.len());
        for &i in indices {
            if !seen.contains(&i) {
                seen.push(i);
            }
        }
        PropositionSet {
            lattice: self.lattice.clone(),
            states: self.states.clone(),
            names: seen.iter().map(|&i| self.names[i].clone()).collect(),
            members: seen.iter().map(|&i| self.members[i].clone()).collect(),
        }
    }

    /// Whether every `{0,1}`-valued table over the states is a member.
    pub fn contains_all_crisp(&self) -> bool {
        let n = self.states.len();
        if n >= usize::BITS as usize {
            return false;
        }
        let crisp = self
            .members
            .iter()
            .filter(|p| p.is_crisp(&self.lattice))
            .count();
        crisp == 1usize << n
    }

    /// First pair whose pointwise meet is not a member.
    pub fn meet_closure_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if !self.contains(&self.members[i].meet(&self.members[j], &self.lattice)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First pair whose pointwise join is not a member.
    pub fn join_closure_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if !self.contains(&self.members[i].join(&self.members[j], &self.lattice)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The members as an abstract poset under the pointwise order, with the
    /// member names as element names. Fails when the set is not bounded.
    pub fn as_poset(&self) -> Result<Poset> {
        Poset::from_relation(self.names.clone(), |a, b| self.leq(a, b))
    }
}

/// A bounded subposet of `M^S`: a [`PropositionSet`] containing the
/// constant-bottom and constant-top propositions.
#[derive(Clone, Debug)]
pub struct PropositionAlgebra {
    set: PropositionSet,
}

impl PropositionAlgebra {
    pub fn new(
        lattice: Arc<TruthLattice>,
        states: Arc<StateSet>,
        members: Vec<(String, Vec<Elem>)>,
    ) -> Result<PropositionAlgebra> {
        PropositionAlgebra::from_set(PropositionSet::new(lattice, states, members)?)
    }

    pub fn from_set(set: PropositionSet) -> Result<PropositionAlgebra> {
        if set.bottom_index().is_none() {
            return Err(Error::MissingBound("bottom"));
        }
        if set.top_index().is_none() {
            return Err(Error::MissingBound("top"));
        }
        Ok(PropositionAlgebra { set })
    }

    /// Every `{0,1}`-valued table over `states`, in binary counting order with
    /// the first state most significant. Tables are named like `(0,1,1)`.
    pub fn all_crisp(lattice: Arc<TruthLattice>, states: Arc<StateSet>) -> Result<PropositionAlgebra> {
        let n = states.len();
        if n >= 20 {
            return Err(Error::SizeCapExceeded {
                what: "states",
                size: n,
                cap: 19,
            });
        }
        let (bot, top) = (lattice.bottom(), lattice.top());
        let members = (0..1usize << n)
            .map(|code| {
                let values: Vec<Elem> = (0..n)
                    .map(|s| if code >> (n - 1 - s) & 1 == 1 { top } else { bot })
                    .collect();
                (table_name(&lattice, &values), values)
            })
            .collect();
        PropositionAlgebra::new(lattice, states, members)
    }

    /// The whole power `M^S`, in lexicographic order of element indices.
    pub fn full_power(lattice: Arc<TruthLattice>, states: Arc<StateSet>) -> Result<PropositionAlgebra> {
        let n = states.len();
        let m = lattice.len();
        let total = m.checked_pow(n as u32).filter(|&t| t <= 1 << 20).ok_or(
            Error::SizeCapExceeded {
                what: "algebra members",
                size: usize::MAX,
                cap: 1 << 20,
            },
        )?;
        let members = (0..total)
            .map(|mut code| {
                let mut values = alloc::vec![Elem(0); n];
                for s in (0..n).rev() {
                    values[s] = Elem(code % m);
                    code /= m;
                }
                (table_name(&lattice, &values), values)
            })
            .collect();
        PropositionAlgebra::new(lattice, states, members)
    }

    pub fn as_set(&self) -> &PropositionSet {
        &self.set
    }

    pub fn into_set(self) -> PropositionSet {
        self.set
    }

    pub fn top(&self) -> usize {
        self.set.top_index().expect("bounded")
    }

    pub fn bottom(&self) -> usize {
        self.set.bottom_index().expect("bounded")
    }
}

impl Deref for PropositionAlgebra {
    type Target = PropositionSet;

    fn deref(&self) -> &PropositionSet {
        &self.set
    }
}

/// Display name for a raw value table, e.g. `(1,0,0)`.
pub fn table_name(lattice: &TruthLattice, values: &[Elem]) -> String {
    let mut s = String::from("(");
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(lattice.name(*v));
    }
    s.push(')');
    s
}

/// A subposet of an algebra used as the domain of a partial functor.
///
/// Only the bound that the intended construction needs is checked; the
/// meet-closed flag records whether closure under pointwise meets was verified.
#[derive(Clone, Debug)]
pub struct Subposet {
    set: PropositionSet,
    meet_closed: bool,
}

impl Subposet {
    /// A subposet containing the top proposition.
    pub fn containing_top(parent: &PropositionSet, chosen: &[usize]) -> Result<Subposet> {
        let set = parent.subset(chosen);
        if set.top_index().is_none() {
            return Err(Error::MissingTop);
        }
        let meet_closed = set.meet_closure_witness().is_none();
        Ok(Subposet { set, meet_closed })
    }

    /// A subposet containing the bottom proposition.
    pub fn containing_bottom(parent: &PropositionSet, chosen: &[usize]) -> Result<Subposet> {
        let set = parent.subset(chosen);
        if set.bottom_index().is_none() {
            return Err(Error::MissingBottom);
        }
        let meet_closed = set.meet_closure_witness().is_none();
        Ok(Subposet { set, meet_closed })
    }

    /// A subposet containing top and closed under pointwise meets.
    pub fn meet_closed(parent: &PropositionSet, chosen: &[usize]) -> Result<Subposet> {
        let set = parent.subset(chosen);
        if set.top_index().is_none() {
            return Err(Error::MissingTop);
        }
        if let Some((i, j)) = set.meet_closure_witness() {
            return Err(Error::NotMeetClosed(
                set.name(i).to_string(),
                set.name(j).to_string(),
            ));
        }
        Ok(Subposet {
            set,
            meet_closed: true,
        })
    }

    pub fn is_meet_closed(&self) -> bool {
        self.meet_closed
    }

    pub fn as_set(&self) -> &PropositionSet {
        &self.set
    }

    pub fn into_set(self) -> PropositionSet {
        self.set
    }
}

impl Deref for Subposet {
    type Target = PropositionSet;

    fn deref(&self) -> &PropositionSet {
        &self.set
    }
}

/// The propositions of the running airport-shuttle example: states
/// `s1 s2 s3`, members `0 p q r p' q' r' 1` over the two-element lattice.
pub fn skyline_algebra() -> PropositionAlgebra {
    let lattice = Arc::new(TruthLattice::boolean());
    let states = Arc::new(StateSet::new(["s1", "s2", "s3"]).expect("states"));
    let rows: [(&str, [usize; 3]); 8] = [
        ("0", [0, 0, 0]),
        ("p", [1, 0, 0]),
        ("q", [0, 1, 0]),
        ("r", [0, 0, 1]),
        ("p'", [0, 1, 1]),
        ("q'", [1, 0, 1]),
        ("r'", [1, 1, 0]),
        ("1", [1, 1, 1]),
    ];
    let members = rows
        .iter()
        .map(|(n, v)| (n.to_string(), v.iter().map(|&x| Elem(x)).collect()))
        .collect();
    PropositionAlgebra::new(lattice, states, members).expect("skyline algebra")
}
