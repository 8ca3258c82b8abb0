//! Building an automaton from a partially known transition functor.
//!
//! The propositions `B` are given as an abstract bounded poset. A canonical
//! state space supplies a full family of two-valued evaluations of `B`:
//!
//! * [`SpaceKind::DownSet`]: one state per proper down-set `D` (`0 ∈ D`,
//!   `1 ∉ D`), with `h_D(a) = 0` iff `a ∈ D`. Works for any bounded poset.
//! * [`SpaceKind::Ultrafilter`]: one state per ultrafilter `W` of a finite
//!   Boolean algebra (the principal filter of an atom), with `h_W(a) = 1`
//!   iff `a ∈ W`.
//!
//! Embedding `B` through the family turns it into propositions over the
//! canonical states. A partial upper functor on a subposet `C ∋ 1` then
//! induces a relation on those states, and the upper functor of that relation
//! agrees with the given one on all of `C`. [`synthesize`] computes the
//! relation and checks the agreement; [`synthesize_dual`] does the same for
//! lower functors.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::automaton::Automaton;
use crate::dynamics::{Direction, TransitionFunctor};
use crate::order::{BoundedMorphismFamily, Elem, Poset, TruthLattice};
use crate::props::{Proposition, PropositionAlgebra, PropositionSet, StateSet};
use crate::{Error, Precondition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    DownSet,
    Ultrafilter,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::DownSet => "downset",
            SpaceKind::Ultrafilter => "ultrafilter",
        }
    }
}

/// A canonical state space for a bounded poset `B`.
#[derive(Clone, Debug)]
pub struct CanonicalStateSpace {
    kind: SpaceKind,
    base: Poset,
    states: Arc<StateSet>,
    /// Per state, membership mask over `base`: the down-set `D` or the
    /// ultrafilter `W`.
    sets: Vec<Vec<bool>>,
    embedding: PropositionAlgebra,
}

impl CanonicalStateSpace {
    /// One state per proper down-set of `base`. Fails when more than
    /// `max_states` down-sets exist.
    pub fn down_sets(base: &Poset, max_states: usize) -> Result<CanonicalStateSpace> {
        let sets = enumerate_proper_down_sets(base, max_states)?;
        let names = sets.iter().map(|d| down_set_name(base, d)).collect();
        CanonicalStateSpace::build(SpaceKind::DownSet, base.clone(), names, sets)
    }

    /// One state per ultrafilter of `base`, which must be a Boolean lattice.
    pub fn ultrafilters(base: &Poset) -> Result<CanonicalStateSpace> {
        let lattice = TruthLattice::new(base.clone()).map_err(|e| Error::NotBoolean(e.to_string()))?;
        lattice.check_boolean()?;
        let atoms = lattice.atoms();
        let sets: Vec<Vec<bool>> = atoms
            .iter()
            .map(|&atom| base.elements().map(|a| base.leq(atom, a)).collect())
            .collect();
        let names = atoms.iter().map(|&a| base.name(a).to_string()).collect();
        CanonicalStateSpace::build(SpaceKind::Ultrafilter, base.clone(), names, sets)
    }

    /// The canonical space of a concrete proposition algebra, whose abstract
    /// poset is the pointwise order on its members.
    ///
    /// For ultrafilter spaces, when every atom is the indicator of a single
    /// state, the canonical state is named after that state, so that `2^S`
    /// recovers `S` itself.
    pub fn for_algebra(
        algebra: &PropositionAlgebra,
        kind: SpaceKind,
        max_states: usize,
    ) -> Result<CanonicalStateSpace> {
        let base = algebra.as_poset()?;
        match kind {
            SpaceKind::DownSet => CanonicalStateSpace::down_sets(&base, max_states),
            SpaceKind::Ultrafilter => {
                let space = CanonicalStateSpace::ultrafilters(&base)?;
                let lat = algebra.lattice();
                let point = |p: &Proposition| {
                    let mut hit = None;
                    for (s, &v) in p.values().iter().enumerate() {
                        if v == lat.top() && hit.is_none() {
                            hit = Some(s);
                        } else if v != lat.bottom() {
                            return None;
                        }
                    }
                    hit
                };
                let renamed: Option<Vec<String>> = space
                    .states
                    .names()
                    .iter()
                    .map(|atom| {
                        let i = algebra.index_of(atom).expect("atom is a member");
                        point(algebra.member(i)).map(|s| algebra.states().name(s).to_string())
                    })
                    .collect();
                match renamed {
                    Some(names) => {
                        CanonicalStateSpace::build(space.kind, space.base, names, space.sets)
                    }
                    None => Ok(space),
                }
            }
        }
    }

    fn build(kind: SpaceKind, base: Poset, names: Vec<String>, sets: Vec<Vec<bool>>) -> Result<CanonicalStateSpace> {
        let states = Arc::new(StateSet::new(names)?);
        let family = family_of(kind, &base, &states, &sets)?;
        if !family.is_full() {
            return Err(Error::InvariantViolated("canonical evaluations are not a full set"));
        }
        let embedding = family.embed_pointwise()?;
        Ok(CanonicalStateSpace {
            kind,
            base,
            states,
            sets,
            embedding,
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn states(&self) -> &Arc<StateSet> {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Members of the down-set or ultrafilter behind state `s`.
    pub fn members(&self, s: usize) -> Vec<Elem> {
        self.base.elements().filter(|e| self.sets[s][e.0]).collect()
    }

    /// `h_s(a)` as a boolean.
    pub fn eval(&self, s: usize, a: Elem) -> bool {
        match self.kind {
            SpaceKind::DownSet => !self.sets[s][a.0],
            SpaceKind::Ultrafilter => self.sets[s][a.0],
        }
    }

    /// The evaluations as a bounded morphism family into the two-element lattice.
    pub fn family(&self) -> BoundedMorphismFamily {
        family_of(self.kind, &self.base, &self.states, &self.sets).expect("validated at construction")
    }

    /// `B` embedded as propositions over the canonical states, members named
    /// as in the base poset and listed in the same order.
    pub fn embedding(&self) -> &PropositionAlgebra {
        &self.embedding
    }

    /// Rewrites a functor given on a concrete algebra (whose pointwise order
    /// is `base`) into canonical coordinates. Every image must be a member
    /// of `algebra`.
    pub fn transport(&self, functor: &TransitionFunctor, algebra: &PropositionSet) -> Result<TransitionFunctor> {
        if algebra.names() != self.base.names() || !functor.domain().same_carrier(algebra) {
            return Err(Error::CarrierMismatch);
        }
        let to_canonical = |p: &Proposition| -> Result<Proposition> {
            let i = algebra
                .position(p)
                .ok_or_else(|| Error::NotAMember(crate::props::table_name(algebra.lattice(), p.values())))?;
            Ok(self.embedding.member(i).clone())
        };
        let domain_idx: Vec<usize> = functor
            .domain()
            .members()
            .iter()
            .map(|p| {
                algebra
                    .position(p)
                    .ok_or_else(|| Error::NotAMember(crate::props::table_name(algebra.lattice(), p.values())))
            })
            .collect::<Result<_>>()?;
        let domain = self.embedding.subset(&domain_idx);
        let mut images = Vec::with_capacity(functor.labels().len());
        for x in 0..functor.labels().len() {
            images.push(
                functor
                    .table(x)
                    .iter()
                    .map(to_canonical)
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        TransitionFunctor::new(functor.direction(), domain, functor.labels().to_vec(), images)
    }
}

fn family_of(kind: SpaceKind, base: &Poset, states: &StateSet, sets: &[Vec<bool>]) -> Result<BoundedMorphismFamily> {
    let two = Arc::new(TruthLattice::boolean());
    let maps = sets
        .iter()
        .map(|set| {
            base.elements()
                .map(|a| {
                    let one = match kind {
                        SpaceKind::DownSet => !set[a.0],
                        SpaceKind::Ultrafilter => set[a.0],
                    };
                    Elem(usize::from(one))
                })
                .collect()
        })
        .collect();
    BoundedMorphismFamily::new(base.clone(), two, states.names().to_vec(), maps)
}

/// All down-sets `D` of `base` with `0 ∈ D` and `1 ∉ D`, ordered by size and
/// then by member indices.
pub fn enumerate_proper_down_sets(base: &Poset, max_states: usize) -> Result<Vec<Vec<bool>>> {
    let order = base.linear_extension();
    let below: Vec<Vec<Elem>> = base
        .elements()
        .map(|e| base.elements().filter(|&d| base.lt(d, e)).collect())
        .collect();
    let mut out: Vec<Vec<bool>> = Vec::new();
    let mut mask = alloc::vec![false; base.len()];
    // Walks `order` bottom-up: an element may join only if everything below
    // it already has, so every down-set is produced exactly once.
    fn walk(
        depth: usize,
        order: &[Elem],
        below: &[Vec<Elem>],
        base: &Poset,
        mask: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        cap: usize,
    ) -> Result<()> {
        if depth == order.len() {
            if out.len() == cap {
                return Err(Error::SizeCapExceeded {
                    what: "canonical states",
                    size: cap.saturating_add(1),
                    cap,
                });
            }
            out.push(mask.clone());
            return Ok(());
        }
        let e = order[depth];
        let forced_in = e == base.bottom();
        let forced_out = e == base.top();
        let allowed = below[e.0].iter().all(|d| mask[d.0]);
        if !forced_out && allowed {
            mask[e.0] = true;
            walk(depth + 1, order, below, base, mask, out, cap)?;
            mask[e.0] = false;
        }
        if !forced_in {
            walk(depth + 1, order, below, base, mask, out, cap)?;
        }
        Ok(())
    }
    walk(0, &order, &below, base, &mut mask, &mut out, max_states)?;
    out.sort_by_key(|m| {
        let members: Vec<usize> = (0..m.len()).filter(|&i| m[i]).collect();
        (members.len(), members)
    });
    Ok(out)
}

/// `{a,b}`: the maximal elements of the down-set in declaration order.
fn down_set_name(base: &Poset, set: &[bool]) -> String {
    let mut name = String::from("{");
    let mut first = true;
    for e in base.elements() {
        let maximal = set[e.0] && !base.elements().any(|f| set[f.0] && base.lt(e, f));
        if maximal {
            if !first {
                name.push(',');
            }
            name.push_str(base.name(e));
            first = false;
        }
    }
    name.push('}');
    name
}

/// The synthesized automaton together with the functor it induces on all of `B`.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub automaton: Automaton,
    pub extension: TransitionFunctor,
}

/// Builds `(X, S_B, R_T)` from an upper functor `T` on a subposet `C ∋ 1` of
/// the embedded `B`, then checks that `T_{R_T}` restricted to `C` is `T`.
///
/// Each `T_x` must be monotone with `T_x(1) = 1`; over an ultrafilter space
/// it must also preserve meets on a meet-closed `C`.
pub fn synthesize(space: &CanonicalStateSpace, functor: &TransitionFunctor) -> Result<Synthesis> {
    if functor.direction() != Direction::Upper {
        return Err(Precondition::WrongDirection { expected: "upper" }.into());
    }
    let positions = domain_positions(space, functor)?;
    if functor.domain().top_index().is_none() {
        return Err(Precondition::MissingTop.into());
    }
    functor.check_laws()?;
    if space.kind == SpaceKind::Ultrafilter {
        functor.check_meet_preserving()?;
    }
    extend(space, functor, Direction::Upper, &positions)
}

/// Order dual of [`synthesize`]: a lower functor `P` on `C ∋ 0` with
/// `P_x(0) = 0` yields `(X, S_B, R^P)`, and `P_{R^P}` must agree with `P` on
/// `C`. Over an ultrafilter space `P` must preserve joins on a join-closed `C`.
pub fn synthesize_dual(space: &CanonicalStateSpace, functor: &TransitionFunctor) -> Result<Synthesis> {
    if functor.direction() != Direction::Lower {
        return Err(Precondition::WrongDirection { expected: "lower" }.into());
    }
    let positions = domain_positions(space, functor)?;
    if functor.domain().bottom_index().is_none() {
        return Err(Precondition::MissingBottom.into());
    }
    functor.check_laws()?;
    if space.kind == SpaceKind::Ultrafilter {
        functor.check_join_preserving()?;
    }
    extend(space, functor, Direction::Lower, &positions)
}

fn domain_positions(space: &CanonicalStateSpace, functor: &TransitionFunctor) -> Result<Vec<usize>> {
    let b = space.embedding();
    if !functor.domain().same_carrier(b) {
        return Err(Error::CarrierMismatch);
    }
    functor
        .domain()
        .iter()
        .map(|(name, p)| b.position(p).ok_or_else(|| Error::NotAMember(name.to_string())))
        .collect()
}

fn extend(
    space: &CanonicalStateSpace,
    functor: &TransitionFunctor,
    direction: Direction,
    positions: &[usize],
) -> Result<Synthesis> {
    let automaton = functor.induced_automaton()?;
    let extension = TransitionFunctor::from_automaton(direction, &automaton, space.embedding())?;
    for x in 0..functor.labels().len() {
        for (i, &k) in positions.iter().enumerate() {
            if extension.image(x, k) != functor.image(x, i) {
                return Err(Error::ExtensionMismatch {
                    member: functor.domain().name(i).to_string(),
                    label: functor.labels()[x].clone(),
                });
            }
        }
    }
    Ok(Synthesis { automaton, extension })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{skyline_automaton, Relation};
    use crate::dynamics::labelled_functors;
    use crate::props::skyline_algebra;
    use alloc::vec;

    fn cube() -> Poset {
        skyline_algebra().as_poset().unwrap()
    }

    // Oracle: test every subset mask for the proper down-set conditions.
    fn brute_force_count(p: &Poset) -> usize {
        (0u32..1 << p.len())
            .filter(|code| {
                let m: Vec<bool> = (0..p.len()).map(|i| code >> i & 1 == 1).collect();
                m[p.bottom().0] && !m[p.top().0] && p.is_down_set(&m)
            })
            .count()
    }

    #[test]
    fn down_set_counts() {
        let chain = Poset::chain(&["0", "1"]).unwrap();
        let diamond = TruthLattice::diamond().poset().clone();
        for (p, expected) in [(chain, 1), (diamond, 4), (cube(), 18)] {
            assert_eq!(brute_force_count(&p), expected);
            let space = CanonicalStateSpace::down_sets(&p, 4096).unwrap();
            assert_eq!(space.len(), expected);
        }
    }

    #[test]
    fn diamond_down_set_names() {
        let p = TruthLattice::diamond().poset().clone();
        let space = CanonicalStateSpace::down_sets(&p, 100).unwrap();
        assert_eq!(space.states().names(), &["{0}", "{a}", "{b}", "{a,b}"]);
    }

    #[test]
    fn down_set_cap() {
        let err = CanonicalStateSpace::down_sets(&cube(), 10).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { .. }));
    }

    #[test]
    fn ultrafilter_spaces() {
        let two = Poset::chain(&["0", "1"]).unwrap();
        assert_eq!(CanonicalStateSpace::ultrafilters(&two).unwrap().len(), 1);
        let diamond = TruthLattice::diamond().poset().clone();
        let space = CanonicalStateSpace::ultrafilters(&diamond).unwrap();
        assert_eq!(space.states().names(), &["a", "b"]);
        let chain3 = Poset::chain(&["0", "m", "1"]).unwrap();
        assert!(matches!(CanonicalStateSpace::ultrafilters(&chain3), Err(Error::NotBoolean(_))));
    }

    #[test]
    fn skyline_ultrafilters_are_the_states() {
        let b = skyline_algebra();
        let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 100).unwrap();
        assert_eq!(space.states().names(), &["s1", "s2", "s3"]);
        for (name, p) in b.iter() {
            let e = space.embedding();
            assert_eq!(e.member(e.index_of(name).unwrap()), p);
        }
    }

    #[test]
    fn skyline_synthesis() {
        let b = skyline_algebra();
        let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 100).unwrap();
        let (t, _) = labelled_functors(&skyline_automaton(), &b).unwrap();
        let c = t.restrict(&b.select(&["0", "r", "p'", "q'", "1"]).unwrap());
        let t = space.transport(&c, &b).unwrap();
        let syn = synthesize(&space, &t).unwrap();
        // No member of C separates s3 from the x1-successors of s1 and s2,
        // so those two extra pairs survive; the x2 fibre is exact.
        let x1 = Relation::from_pairs(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 2)]).unwrap();
        assert_eq!(*syn.automaton.fibre_relation(0), x1);
        assert_eq!(syn.automaton.fibre_relation(1), skyline_automaton().fibre_relation(1));
    }

    #[test]
    fn top_only_domain_gives_total_relation() {
        let p = TruthLattice::diamond().poset().clone();
        let space = CanonicalStateSpace::down_sets(&p, 100).unwrap();
        let e = space.embedding();
        let top = e.index_of("1").unwrap();
        let c = e.subset(&[top]);
        let t = TransitionFunctor::new(
            Direction::Upper,
            c,
            vec!["x".into()],
            vec![vec![e.member(top).clone()]],
        )
        .unwrap();
        let syn = synthesize(&space, &t).unwrap();
        assert_eq!(syn.automaton.fibre_relation(0).len(), 16);
    }

    #[test]
    fn bottom_only_domain_gives_total_relation() {
        let p = TruthLattice::diamond().poset().clone();
        let space = CanonicalStateSpace::down_sets(&p, 100).unwrap();
        let e = space.embedding();
        let bot = e.index_of("0").unwrap();
        let c = e.subset(&[bot]);
        let pf = TransitionFunctor::new(
            Direction::Lower,
            c,
            vec!["x".into()],
            vec![vec![e.member(bot).clone()]],
        )
        .unwrap();
        let syn = synthesize_dual(&space, &pf).unwrap();
        assert_eq!(syn.automaton.fibre_relation(0).len(), 16);
    }

    #[test]
    fn hypothesis_failures_are_reported() {
        let b = skyline_algebra();
        let space = CanonicalStateSpace::for_algebra(&b, SpaceKind::Ultrafilter, 100).unwrap();
        let e = space.embedding();
        let c = e.subset(&e.select(&["r", "1"]).unwrap());
        // T(1) = r breaks the unit law.
        let r = e.member(e.index_of("r").unwrap()).clone();
        let t = TransitionFunctor::new(Direction::Upper, c.clone(), vec!["x".into()], vec![vec![r.clone(), r]]).unwrap();
        assert!(matches!(
            synthesize(&space, &t),
            Err(Error::PreconditionFailed(Precondition::TopNotPreserved { .. }))
        ));
        // A lower functor is rejected by the upper construction.
        let one = e.member(e.top()).clone();
        let p = TransitionFunctor::new(Direction::Lower, c, vec!["x".into()], vec![vec![one.clone(), one]]).unwrap();
        assert!(matches!(
            synthesize(&space, &p),
            Err(Error::PreconditionFailed(Precondition::WrongDirection { .. }))
        ));
    }
}
