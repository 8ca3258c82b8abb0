//! Dynamic logic for finite automata.
//!
//! Propositions about an automaton are value tables `S -> M` over a finite
//! complete lattice `M` of truth values. Each input label of the automaton
//! induces an upper transition functor ("after every transition, `b` holds")
//! and a lower one ("some predecessor satisfied `a`"). This crate computes
//! those functors, recovers transition relations from them, and synthesizes
//! an automaton from a partially known upper functor over a canonical state
//! space built from the proposition poset.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod dynamics;
mod error;
pub mod order;
pub mod props;
pub mod synthesis;

pub use automaton::{Automaton, Relation, TransitionFrame};
pub use dynamics::{
    AdjunctionWitness, Direction, InclusionReport, LabelRecovery, RecoveryReport,
    TransitionFunctor, WitnessReport,
};
pub use error::{Error, Precondition, Result};
pub use order::{BoundedMorphismFamily, Elem, Poset, TruthLattice};
pub use props::{PropositionAlgebra, PropositionSet, StateSet, Subposet};
pub use synthesis::{CanonicalStateSpace, SpaceKind, Synthesis};

/// Size limits applied before exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_algebra: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 12,
            max_algebra: 4096,
        }
    }
}

impl Limits {
    pub const UNLIMITED: Limits = Limits {
        max_states: usize::MAX,
        max_algebra: usize::MAX,
    };

    pub fn check_states(&self, n: usize) -> Result<()> {
        if n > self.max_states {
            return Err(Error::SizeCapExceeded {
                what: "states",
                size: n,
                cap: self.max_states,
            });
        }
        Ok(())
    }

    pub fn check_algebra(&self, n: usize) -> Result<()> {
        if n > self.max_algebra {
            return Err(Error::SizeCapExceeded {
                what: "algebra members",
                size: n,
                cap: self.max_algebra,
            });
        }
        Ok(())
    }
}
