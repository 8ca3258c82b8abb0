//! Transition functors built from relations, relations induced by functors,
//! and the recoverability checks that tie the two together.
//!
//! For a relation `R` on `S` and a proposition `b`,
//!
//! * the upper functor is `T_R(b)(s) = meet { b(t) | s R t }` (top when `s`
//!   has no successor),
//! * the lower functor is `P_R(a)(t) = join { a(s) | s R t }` (bottom when
//!   `t` has no predecessor).
//!
//! Going the other way, a functor `T` on a domain `B` induces
//! `R_T = { (s, t) | T(b)(s) <= b(t) for all b in B }` and a functor `P` on
//! `A` induces `R^P = { (s, t) | a(s) <= P(a)(t) for all a in A }`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::automaton::{Automaton, Relation, TransitionFrame};
use crate::order::{Elem, TruthLattice};
use crate::props::{Proposition, PropositionSet};
use crate::{Error, Precondition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Upper,
    Lower,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }
}

/// A labelled family of maps from a domain of propositions into `M^S`.
///
/// Images are raw value tables and need not belong to the domain.
#[derive(Clone, Debug)]
pub struct TransitionFunctor {
    direction: Direction,
    domain: PropositionSet,
    labels: Vec<String>,
    /// `images[x][i]` is the image of domain member `i` under label `x`.
    images: Vec<Vec<Proposition>>,
}

impl TransitionFunctor {
    pub fn new(
        direction: Direction,
        domain: PropositionSet,
        labels: Vec<String>,
        images: Vec<Vec<Proposition>>,
    ) -> Result<TransitionFunctor> {
        if labels.len() != images.len() {
            return Err(Error::CarrierMismatch);
        }
        for (i, x) in labels.iter().enumerate() {
            if labels[..i].contains(x) {
                return Err(Error::DuplicateName(x.clone()));
            }
        }
        let n = domain.states().len();
        for (x, table) in labels.iter().zip(&images) {
            if table.len() != domain.len() {
                return Err(Error::MalformedTable(x.clone()));
            }
            for p in table {
                if p.len() != n || p.values().iter().any(|v| !domain.lattice().poset().contains(*v)) {
                    return Err(Error::MalformedTable(x.clone()));
                }
            }
        }
        Ok(TransitionFunctor {
            direction,
            domain,
            labels,
            images,
        })
    }

    /// The single-label functor of `frame` on `domain`.
    pub fn from_frame(
        direction: Direction,
        frame: &TransitionFrame,
        domain: &PropositionSet,
        label: &str,
    ) -> Result<TransitionFunctor> {
        if **frame.states() != **domain.states() {
            return Err(Error::CarrierMismatch);
        }
        let table = apply_relation(direction, frame.relation(), domain);
        TransitionFunctor::new(direction, domain.clone(), alloc::vec![label.to_string()], alloc::vec![table])
    }

    /// One table per input of `automaton`, each computed from its fibre.
    pub fn from_automaton(
        direction: Direction,
        automaton: &Automaton,
        domain: &PropositionSet,
    ) -> Result<TransitionFunctor> {
        if **automaton.states() != **domain.states() {
            return Err(Error::CarrierMismatch);
        }
        let images = automaton
            .fibres()
            .iter()
            .map(|r| apply_relation(direction, r, domain))
            .collect();
        TransitionFunctor::new(direction, domain.clone(), automaton.inputs().to_vec(), images)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn domain(&self) -> &PropositionSet {
        &self.domain
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, x: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == x)
    }

    /// Image of domain member `i` under label `x`.
    #[inline]
    pub fn image(&self, x: usize, i: usize) -> &Proposition {
        &self.images[x][i]
    }

    pub fn table(&self, x: usize) -> &[Proposition] {
        &self.images[x]
    }

    /// Image of a named domain member under a named label.
    pub fn apply(&self, x: &str, member: &str) -> Result<&Proposition> {
        let xi = self
            .label_index(x)
            .ok_or_else(|| Error::UnknownInput(x.to_string()))?;
        let i = self
            .domain
            .index_of(member)
            .ok_or_else(|| Error::NotAMember(member.to_string()))?;
        Ok(self.image(xi, i))
    }

    /// The same functor on a subset of its domain.
    pub fn restrict(&self, members: &[usize]) -> TransitionFunctor {
        let domain = self.domain.subset(members);
        let picked: Vec<usize> = domain
            .names()
            .iter()
            .map(|n| self.domain.index_of(n).expect("subset member"))
            .collect();
        TransitionFunctor {
            direction: self.direction,
            domain,
            labels: self.labels.clone(),
            images: self
                .images
                .iter()
                .map(|t| picked.iter().map(|&i| t[i].clone()).collect())
                .collect(),
        }
    }

    /// The one-label functor for label `x`.
    pub fn single(&self, x: usize) -> TransitionFunctor {
        TransitionFunctor {
            direction: self.direction,
            domain: self.domain.clone(),
            labels: alloc::vec![self.labels[x].clone()],
            images: alloc::vec![self.images[x].clone()],
        }
    }

    fn lattice(&self) -> &TruthLattice {
        self.domain.lattice()
    }

    /// Whether every image is a member of `target`.
    pub fn maps_into(&self, target: &PropositionSet) -> bool {
        self.images.iter().flatten().all(|p| target.contains(p))
    }

    /// First `(label, i, j)` with `i <= j` in the domain but image `i` not
    /// below image `j`.
    pub fn monotonicity_witness(&self) -> Option<(usize, usize, usize)> {
        let lat = self.lattice();
        for (x, table) in self.images.iter().enumerate() {
            for i in 0..self.domain.len() {
                for j in 0..self.domain.len() {
                    if self.domain.leq(i, j) && !table[i].leq(&table[j], lat) {
                        return Some((x, i, j));
                    }
                }
            }
        }
        None
    }

    /// First label violating the unit law: `T(1) = 1` for upper functors,
    /// `P(0) = 0` for lower ones. Vacuous when the bound is not in the domain.
    pub fn unit_witness(&self) -> Option<usize> {
        let lat = self.lattice();
        let (idx, value) = match self.direction {
            Direction::Upper => (self.domain.top_index(), lat.top()),
            Direction::Lower => (self.domain.bottom_index(), lat.bottom()),
        };
        let idx = idx?;
        let unit = self.domain.constant(value);
        (0..self.labels.len()).find(|&x| self.images[x][idx] != unit)
    }

    /// Checks the functor laws (monotone, unit) and reports the first failure.
    pub fn check_laws(&self) -> core::result::Result<(), Precondition> {
        if let Some((x, i, j)) = self.monotonicity_witness() {
            return Err(Precondition::NotMonotone {
                label: self.labels[x].clone(),
                lo: self.domain.name(i).to_string(),
                hi: self.domain.name(j).to_string(),
            });
        }
        if let Some(x) = self.unit_witness() {
            let label = self.labels[x].clone();
            return Err(match self.direction {
                Direction::Upper => Precondition::TopNotPreserved { label },
                Direction::Lower => Precondition::BottomNotPreserved { label },
            });
        }
        Ok(())
    }

    /// Whether each map preserves binary meets and the top element. The
    /// domain must contain top and be closed under pointwise meets.
    pub fn check_meet_preserving(&self) -> core::result::Result<(), Precondition> {
        self.check_lattice_preserving(true)
    }

    /// Order dual of [`check_meet_preserving`](Self::check_meet_preserving).
    pub fn check_join_preserving(&self) -> core::result::Result<(), Precondition> {
        self.check_lattice_preserving(false)
    }

    fn check_lattice_preserving(&self, meets: bool) -> core::result::Result<(), Precondition> {
        let lat = self.lattice();
        let d = &self.domain;
        let unit = if meets { d.top_index() } else { d.bottom_index() };
        let Some(unit) = unit else {
            return Err(if meets {
                Precondition::MissingTop
            } else {
                Precondition::MissingBottom
            });
        };
        let unit_value = d.member(unit).clone();
        for (x, table) in self.images.iter().enumerate() {
            if table[unit] != unit_value {
                let label = self.labels[x].clone();
                return Err(if meets {
                    Precondition::TopNotPreserved { label }
                } else {
                    Precondition::BottomNotPreserved { label }
                });
            }
        }
        let op = |p: &Proposition, q: &Proposition| if meets { p.meet(q, lat) } else { p.join(q, lat) };
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                let (left, right) = (d.name(i).to_string(), d.name(j).to_string());
                let Some(k) = d.position(&op(d.member(i), d.member(j))) else {
                    return Err(if meets {
                        Precondition::DomainNotMeetClosed { left, right }
                    } else {
                        Precondition::DomainNotJoinClosed { left, right }
                    });
                };
                for (x, table) in self.images.iter().enumerate() {
                    if table[k] != op(&table[i], &table[j]) {
                        let label = self.labels[x].clone();
                        return Err(if meets {
                            Precondition::NotMeetPreserving { label, left, right }
                        } else {
                            Precondition::NotJoinPreserving { label, left, right }
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The relation induced by label `x`: `R_T` for upper functors, `R^P`
    /// for lower ones, quantifying over this functor's domain only.
    pub fn induced_relation(&self, x: usize) -> Relation {
        match self.direction {
            Direction::Upper => induced_upper_relation(&self.domain, &self.images[x]),
            Direction::Lower => induced_lower_relation(&self.domain, &self.images[x]),
        }
    }

    /// The induced automaton `(X, S, R_T)` (or `(X, S, R^P)`).
    pub fn induced_automaton(&self) -> Result<Automaton> {
        let fibres = (0..self.labels.len()).map(|x| self.induced_relation(x)).collect();
        Automaton::from_fibres(self.labels.clone(), self.domain.states().clone(), fibres)
    }
}

fn apply_relation(direction: Direction, rel: &Relation, domain: &PropositionSet) -> Vec<Proposition> {
    let lat = domain.lattice();
    let n = rel.size();
    domain
        .members()
        .iter()
        .map(|b| {
            let values: Vec<Elem> = match direction {
                Direction::Upper => (0..n)
                    .map(|s| lat.meet_all(rel.successors(s).map(|t| b.at(t))))
                    .collect(),
                Direction::Lower => (0..n)
                    .map(|t| lat.join_all(rel.predecessors(t).map(|s| b.at(s))))
                    .collect(),
            };
            Proposition::new(values)
        })
        .collect()
}

/// `T_R` on `domain` for a single frame.
pub fn upper_functor_from_frame(frame: &TransitionFrame, domain: &PropositionSet) -> Result<TransitionFunctor> {
    TransitionFunctor::from_frame(Direction::Upper, frame, domain, "R")
}

/// `P_R` on `domain` for a single frame.
pub fn lower_functor_from_frame(frame: &TransitionFrame, domain: &PropositionSet) -> Result<TransitionFunctor> {
    TransitionFunctor::from_frame(Direction::Lower, frame, domain, "R")
}

/// The labelled upper and lower functors `(T_R, P_R)` of an automaton.
pub fn labelled_functors(
    automaton: &Automaton,
    domain: &PropositionSet,
) -> Result<(TransitionFunctor, TransitionFunctor)> {
    Ok((
        TransitionFunctor::from_automaton(Direction::Upper, automaton, domain)?,
        TransitionFunctor::from_automaton(Direction::Lower, automaton, domain)?,
    ))
}

/// `R_T` for one table `images[i] = T(domain[i])`.
///
/// Members with `T(b)(s) = 0` impose nothing on row `s`, so each row only
/// tests the members whose image at `s` is above bottom.
pub fn induced_upper_relation(domain: &PropositionSet, images: &[Proposition]) -> Relation {
    let lat = domain.lattice();
    let n = domain.states().len();
    let mut rel = Relation::empty(n);
    let mut active: Vec<(Elem, &Proposition)> = Vec::with_capacity(domain.len());
    for s in 0..n {
        active.clear();
        active.extend(
            images
                .iter()
                .zip(domain.members())
                .map(|(img, b)| (img.at(s), b))
                .filter(|(v, _)| *v != lat.bottom()),
        );
        for t in 0..n {
            if active.iter().all(|&(v, b)| lat.leq(v, b.at(t))) {
                rel.insert(s, t);
            }
        }
    }
    rel
}

/// `R^P` for one table `images[i] = P(domain[i])`.
///
/// Members with `a(s) = 0` impose nothing on row `s`.
pub fn induced_lower_relation(domain: &PropositionSet, images: &[Proposition]) -> Relation {
    let lat = domain.lattice();
    let n = domain.states().len();
    let mut rel = Relation::empty(n);
    let mut active: Vec<(Elem, &Proposition)> = Vec::with_capacity(domain.len());
    for s in 0..n {
        active.clear();
        active.extend(
            domain
                .members()
                .iter()
                .zip(images)
                .map(|(a, img)| (a.at(s), img))
                .filter(|(v, _)| *v != lat.bottom()),
        );
        for t in 0..n {
            if active.iter().all(|&(v, img)| lat.leq(v, img.at(t))) {
                rel.insert(s, t);
            }
        }
    }
    rel
}

/// A failure of `P_x(a) <= b  <=>  a <= T_x(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionWitness {
    pub label: usize,
    /// Index of `a` in the lower functor's domain.
    pub lower: usize,
    /// Index of `b` in the upper functor's domain.
    pub upper: usize,
    /// Value of `P_x(a) <= b`; the other side has the opposite value.
    pub lower_holds: bool,
}

/// Checks the Galois condition for every label and every `a` in the domain of
/// `lower`, `b` in the domain of `upper`. Returns the first failure in
/// `(label, a, b)` order.
pub fn check_adjunction(
    lower: &TransitionFunctor,
    upper: &TransitionFunctor,
) -> Result<Option<AdjunctionWitness>> {
    check_pair_shape(lower, upper)?;
    let lat = lower.lattice();
    let (a_dom, b_dom) = (lower.domain(), upper.domain());
    for x in 0..lower.labels.len() {
        for i in 0..a_dom.len() {
            let p = lower.image(x, i);
            for j in 0..b_dom.len() {
                let left = p.leq(b_dom.member(j), lat);
                let right = a_dom.member(i).leq(upper.image(x, j), lat);
                if left != right {
                    return Ok(Some(AdjunctionWitness {
                        label: x,
                        lower: i,
                        upper: j,
                        lower_holds: left,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn check_pair_shape(lower: &TransitionFunctor, upper: &TransitionFunctor) -> Result<()> {
    if lower.direction != Direction::Lower {
        return Err(Precondition::WrongDirection { expected: "lower" }.into());
    }
    if upper.direction != Direction::Upper {
        return Err(Precondition::WrongDirection { expected: "upper" }.into());
    }
    if !lower.domain.same_carrier(&upper.domain) || lower.labels != upper.labels {
        return Err(Error::CarrierMismatch);
    }
    Ok(())
}

/// Closure flags and observed inclusions between `R_T` and `R^P` for an
/// adjoint pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    /// `P(A) ⊆ B` for every label.
    pub lower_into_upper_domain: bool,
    /// `T(B) ⊆ A` for every label.
    pub upper_into_lower_domain: bool,
    pub upper_subset_lower: bool,
    pub lower_subset_upper: bool,
    pub equal: bool,
    /// `R_{T_x}` per label.
    pub upper_relations: Vec<Relation>,
    /// `R^{P_x}` per label.
    pub lower_relations: Vec<Relation>,
}

/// Computes both induced relations of an adjoint pair together with the
/// closure flags, and enforces the implications
/// `P(A) ⊆ B ⇒ R_T ⊆ R^P` and `T(B) ⊆ A ⇒ R^P ⊆ R_T`.
pub fn check_inclusion_conditions(
    lower: &TransitionFunctor,
    upper: &TransitionFunctor,
) -> Result<InclusionReport> {
    if let Some(w) = check_adjunction(lower, upper)? {
        return Err(Error::AdjunctionRequired {
            label: lower.labels[w.label].clone(),
            lower: lower.domain.name(w.lower).to_string(),
            upper: upper.domain.name(w.upper).to_string(),
        });
    }
    let lower_into_upper_domain = lower.maps_into(upper.domain());
    let upper_into_lower_domain = upper.maps_into(lower.domain());
    let upper_relations: Vec<Relation> = (0..upper.labels.len()).map(|x| upper.induced_relation(x)).collect();
    let lower_relations: Vec<Relation> = (0..lower.labels.len()).map(|x| lower.induced_relation(x)).collect();
    let upper_subset_lower = upper_relations
        .iter()
        .zip(&lower_relations)
        .all(|(t, p)| t.is_subset(p));
    let lower_subset_upper = upper_relations
        .iter()
        .zip(&lower_relations)
        .all(|(t, p)| p.is_subset(t));
    if lower_into_upper_domain && !upper_subset_lower {
        return Err(Error::InvariantViolated("P(A) ⊆ B but R_T ⊄ R^P"));
    }
    if upper_into_lower_domain && !lower_subset_upper {
        return Err(Error::InvariantViolated("T(B) ⊆ A but R^P ⊄ R_T"));
    }
    Ok(InclusionReport {
        lower_into_upper_domain,
        upper_into_lower_domain,
        upper_subset_lower,
        lower_subset_upper,
        equal: upper_subset_lower && lower_subset_upper,
        upper_relations,
        lower_relations,
    })
}

/// Result of searching for separating propositions for every non-transition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessReport {
    /// Every `(s, t) ∉ R` has some `b` with `meet{b(u) | s R u} ≰ b(t) ≠ 1`.
    pub upper_ok: bool,
    /// Every `(s, t) ∉ R` has some `a` with `join{a(u) | u R t} ≱ a(s) ≠ 0`.
    pub lower_ok: bool,
    /// A single `b^t` serves all `s` with `(s, t) ∉ R`, for every `t`.
    pub upper_uniform: bool,
    /// A single `a^s` serves all `t` with `(s, t) ∉ R`, for every `s`.
    pub lower_uniform: bool,
    /// First separating member (index into `B`) per non-transition.
    pub upper_witnesses: BTreeMap<(usize, usize), usize>,
    /// First separating member (index into `A`) per non-transition.
    pub lower_witnesses: BTreeMap<(usize, usize), usize>,
}

/// Searches the separating propositions that guarantee `R = R_{T_R}` (upper)
/// and `R = R^{P_R}` (lower), then confirms the guaranteed equalities.
pub fn check_recovery_witnesses(
    frame: &TransitionFrame,
    upper_domain: &PropositionSet,
    lower_domain: &PropositionSet,
) -> Result<WitnessReport> {
    if **frame.states() != **upper_domain.states() || !upper_domain.same_carrier(lower_domain) {
        return Err(Error::CarrierMismatch);
    }
    let rel = frame.relation();
    let lat = upper_domain.lattice();
    let n = rel.size();
    let separates_upper = |b: &Proposition, s: usize, t: usize| {
        let m = lat.meet_all(rel.successors(s).map(|u| b.at(u)));
        !lat.leq(m, b.at(t)) && b.at(t) != lat.top()
    };
    let separates_lower = |a: &Proposition, s: usize, t: usize| {
        let j = lat.join_all(rel.predecessors(t).map(|u| a.at(u)));
        !lat.leq(a.at(s), j) && a.at(s) != lat.bottom()
    };
    let mut report = WitnessReport {
        upper_ok: true,
        lower_ok: true,
        upper_uniform: true,
        lower_uniform: true,
        ..WitnessReport::default()
    };
    for s in 0..n {
        for t in 0..n {
            if rel.contains(s, t) {
                continue;
            }
            match upper_domain.members().iter().position(|b| separates_upper(b, s, t)) {
                Some(i) => {
                    report.upper_witnesses.insert((s, t), i);
                }
                None => report.upper_ok = false,
            }
            match lower_domain.members().iter().position(|a| separates_lower(a, s, t)) {
                Some(i) => {
                    report.lower_witnesses.insert((s, t), i);
                }
                None => report.lower_ok = false,
            }
        }
    }
    report.upper_uniform = (0..n).all(|t| {
        let sources: Vec<usize> = (0..n).filter(|&s| !rel.contains(s, t)).collect();
        upper_domain
            .members()
            .iter()
            .any(|b| sources.iter().all(|&s| separates_upper(b, s, t)))
    });
    report.lower_uniform = (0..n).all(|s| {
        let targets: Vec<usize> = (0..n).filter(|&t| !rel.contains(s, t)).collect();
        lower_domain
            .members()
            .iter()
            .any(|a| targets.iter().all(|&t| separates_lower(a, s, t)))
    });
    if report.upper_ok {
        let t = upper_functor_from_frame(frame, upper_domain)?;
        if t.induced_relation(0) != *rel {
            return Err(Error::InvariantViolated("upper witnesses exist but R ≠ R_{T_R}"));
        }
    }
    if report.lower_ok {
        let p = lower_functor_from_frame(frame, lower_domain)?;
        if p.induced_relation(0) != *rel {
            return Err(Error::InvariantViolated("lower witnesses exist but R ≠ R^{P_R}"));
        }
    }
    Ok(report)
}

/// Per-label outcome of [`recover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelRecovery {
    pub label: String,
    pub original: Relation,
    pub induced_upper: Relation,
    pub induced_lower: Relation,
    pub upper_matches: bool,
    pub lower_matches: bool,
}

#[derive(Clone, Debug)]
pub struct RecoveryReport {
    pub labels: Vec<LabelRecovery>,
    /// `T_R(B) ⊆ B^X`.
    pub upper_closed: bool,
    /// `P_R(B) ⊆ B^X`.
    pub lower_closed: bool,
    /// `{0,1}^S ⊆ B`.
    pub crisp_complete: bool,
    pub upper_functor: TransitionFunctor,
    pub lower_functor: TransitionFunctor,
}

impl RecoveryReport {
    pub fn recoverable_from_upper(&self) -> bool {
        self.labels.iter().all(|l| l.upper_matches)
    }

    pub fn recoverable_from_lower(&self) -> bool {
        self.labels.iter().all(|l| l.lower_matches)
    }

    /// Recoverable from both functors for every label.
    pub fn overall(&self) -> bool {
        self.recoverable_from_upper() && self.recoverable_from_lower()
    }

    /// The upper induced automaton `(X, S, R_{T_R})`.
    pub fn upper_automaton(&self) -> Automaton {
        self.upper_functor.induced_automaton().expect("well-formed functor")
    }

    /// The lower induced automaton `(X, S, R^{P_R})`.
    pub fn lower_automaton(&self) -> Automaton {
        self.lower_functor.induced_automaton().expect("well-formed functor")
    }
}

/// Builds `T_R` and `P_R` on `domain`, induces both automata back, and
/// compares them with `automaton`.
///
/// Enforced guarantees: when the domain contains every crisp table both sides
/// recover; when one side recovers and the other functor maps into the
/// domain, both recover.
pub fn recover(automaton: &Automaton, domain: &PropositionSet) -> Result<RecoveryReport> {
    let (upper, lower) = labelled_functors(automaton, domain)?;
    let labels: Vec<LabelRecovery> = automaton
        .inputs()
        .iter()
        .enumerate()
        .map(|(x, label)| {
            let original = automaton.fibre_relation(x).clone();
            let induced_upper = upper.induced_relation(x);
            let induced_lower = lower.induced_relation(x);
            LabelRecovery {
                label: label.clone(),
                upper_matches: induced_upper == original,
                lower_matches: induced_lower == original,
                original,
                induced_upper,
                induced_lower,
            }
        })
        .collect();
    let report = RecoveryReport {
        upper_closed: upper.maps_into(domain),
        lower_closed: lower.maps_into(domain),
        crisp_complete: domain.contains_all_crisp(),
        labels,
        upper_functor: upper,
        lower_functor: lower,
    };
    if report.crisp_complete && !report.overall() {
        return Err(Error::InvariantViolated("crisp-complete domain but not recoverable"));
    }
    if report.recoverable_from_upper() && report.upper_closed && !report.recoverable_from_lower() {
        return Err(Error::InvariantViolated("R = R_T and T(B) ⊆ B but R ≠ R^P"));
    }
    if report.recoverable_from_lower() && report.lower_closed && !report.recoverable_from_upper() {
        return Err(Error::InvariantViolated("R = R^P and P(B) ⊆ B but R ≠ R_T"));
    }
    Ok(report)
}
