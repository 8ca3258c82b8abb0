use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Hypotheses of the synthesis constructions that a partial functor can violate.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Precondition {
    #[error("map for label `{label}` is not monotone: `{lo}` <= `{hi}` but images are not ordered")]
    NotMonotone { label: String, lo: String, hi: String },
    #[error("map for label `{label}` does not send the top element to top")]
    TopNotPreserved { label: String },
    #[error("map for label `{label}` does not send the bottom element to bottom")]
    BottomNotPreserved { label: String },
    #[error("map for label `{label}` does not preserve the meet of `{left}` and `{right}`")]
    NotMeetPreserving {
        label: String,
        left: String,
        right: String,
    },
    #[error("map for label `{label}` does not preserve the join of `{left}` and `{right}`")]
    NotJoinPreserving {
        label: String,
        left: String,
        right: String,
    },
    #[error("domain is not closed under meets: `{left}` /\\ `{right}` is missing")]
    DomainNotMeetClosed { left: String, right: String },
    #[error("domain is not closed under joins: `{left}` \\/ `{right}` is missing")]
    DomainNotJoinClosed { left: String, right: String },
    #[error("domain must contain the top element")]
    MissingTop,
    #[error("domain must contain the bottom element")]
    MissingBottom,
    #[error("expected an {expected} functor")]
    WrongDirection { expected: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("poset has no bottom element")]
    NoBottom,
    #[error("poset has no top element")]
    NoTop,
    #[error("poset is empty")]
    EmptyPoset,
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("the one-element lattice is not a valid truth lattice")]
    TrivialLattice,
    #[error("element index {0} is out of range")]
    UnknownElement(usize),
    #[error("state index {0} is out of range")]
    UnknownState(usize),
    #[error("unknown input `{0}`")]
    UnknownInput(String),
    #[error("state set must be non-empty")]
    EmptyStates,
    #[error("input set must be non-empty")]
    EmptyInputs,
    #[error("map `{map}` is not a bounded morphism: {reason}")]
    NotAMorphism { map: String, reason: &'static str },
    #[error("morphism family does not reflect order: `{0}` is not below `{1}`")]
    NotFullSet(String, String),
    #[error("operands live over different lattices or state sets")]
    CarrierMismatch,
    #[error("proposition `{0}` has a malformed value table")]
    MalformedTable(String),
    #[error("propositions `{0}` and `{1}` have the same value table")]
    DuplicateMember(String, String),
    #[error("proposition algebra lacks the constant {0} proposition")]
    MissingBound(&'static str),
    #[error("subposet is not closed under meets: `{0}` /\\ `{1}` is missing")]
    NotMeetClosed(String, String),
    #[error("subposet must contain the top element")]
    MissingTop,
    #[error("subposet must contain the bottom element")]
    MissingBottom,
    #[error("`{0}` is not a member of the algebra")]
    NotAMember(String),
    #[error("functor pair is not adjoint (label `{label}`, a = `{lower}`, b = `{upper}`)")]
    AdjunctionRequired {
        label: String,
        lower: String,
        upper: String,
    },
    #[error("not a Boolean algebra: {0}")]
    NotBoolean(String),
    #[error("{what} count {size} exceeds the cap of {cap}")]
    SizeCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("extension disagrees with the given functor at `{member}` for label `{label}`")]
    ExtensionMismatch { member: String, label: String },
    #[error("internal invariant violated: {0}")]
    InvariantViolated(&'static str),
}

impl From<Precondition> for Error {
    fn from(p: Precondition) -> Self {
        Error::PreconditionFailed(p)
    }
}
