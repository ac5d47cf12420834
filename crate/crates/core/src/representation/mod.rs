//! Support maps and weighted composition decompositions.
//!
//! For a separating homomorphism `H: A -> B` every point `y` of the target
//! space gets a support point `h(y)` and a weight `ω[y]`, a homomorphism from
//! the evaluation image of `A` at `h(y)` into `G`, such that
//! `Hf(y) = ω[y](f(h(y)))` for every `f` in `A`.

mod decompose;
mod equivalence;
mod propositions;
mod support;

use thiserror::Error;

use crate::group::Elem;
use crate::hom::HomError;
use crate::sets::ClosureOverflow;

pub use decompose::{decompose, weight_at, DecomposeOptions, Decomposition, Hypotheses, InverseCheck};
pub use equivalence::{decide_equivalence, Equivalence, NotEquivalentReason, DEFAULT_SEARCH_CAP};
pub use propositions::{check_propositions, PropStatus, Proposition, PropositionReport};
pub use support::{is_support, minimal_supports_oracle, singleton_support, support_map, SupportReport};

/// Largest point space the subset-enumerating oracles accept.
pub const MAX_ORACLE_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("homomorphism is not separating (source elements {f} and {g})")]
    NotSeparating { f: usize, g: usize },
    #[error("functional is null{}", .y.map(|y| format!(" at target point {y}")).unwrap_or_default())]
    NullFunctional { y: Option<usize> },
    #[error("no singleton support lies in every support at target point {y} (singleton supports: {candidates:?})")]
    SupportAmbiguous { y: usize, candidates: Vec<usize> },
    #[error("weight at target point {y} sends {g} to both {first} and {second}")]
    WeightIllDefined { y: usize, g: Elem, first: Elem, second: Elem },
    #[error("Hf(y) != ω[y](f(h(y))) for source element {f} at target point {y}")]
    RepresentationFailed { f: usize, y: usize },
    #[error("conclusion violated: {0}")]
    ConclusionViolated(String),
    #[error("support oracle disagrees with the support map at target point {y}")]
    OracleDisagreement { y: usize },
    #[error("{0} points is too many for subset enumeration (max {MAX_ORACLE_POINTS})")]
    TooManyPoints(usize),
    #[error("codes are over different groups")]
    GroupMismatch,
    #[error("equivalence search exceeded its budget of {cap} candidates")]
    SearchBudgetExceeded { cap: u64 },
    #[error(transparent)]
    Closure(#[from] ClosureOverflow),
    #[error(transparent)]
    Hom(#[from] HomError),
}
