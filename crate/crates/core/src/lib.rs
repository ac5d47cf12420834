//! Separating homomorphisms between group codes.
//!
//! A code is a subgroup `A` of `G^X` for a finite group `G` and a finite point
//! set `X`. A homomorphism `H: A -> B` is separating when functions with
//! disjoint cozero sets are sent to functions with disjoint cozero sets. Such
//! maps are weighted composition operators: there is a support map
//! `h: Y -> X` and per-point weights `ω[y]` with `Hf(y) = ω[y](f(h(y)))`.
//!
//! This crate builds the pieces from the bottom up:
//!
//! * [`group`]: finite groups from multiplication tables, endomorphism and
//!   automorphism enumeration.
//! * [`sets`]: point spaces, subsets, and union/intersection closure of set
//!   families.
//! * [`code`]: codes as enumerated function groups; [`checks`] holds the
//!   structural hypotheses (point separation, density, controllability).
//! * [`hom`]: homomorphisms between codes and the separating checks.
//! * [`representation`]: supports, the support map, weights, the full
//!   decomposition with its inverse-consistency checks, and code
//!   equivalence search.
//! * [`instance`] and [`report`]: the plain-text instance format and the
//!   command reports used by the `sephom` binary.

pub mod checks;
pub mod code;
pub mod group;
pub mod hom;
pub mod instance;
pub mod report;
pub mod representation;
pub mod sets;

pub use checks::{CodeReport, Verdict};
pub use code::{FunctionGroup, GFunction};
pub use group::{Elem, FiniteGroup, GroupMap, MapKind, Subgroup};
pub use hom::{CodeHom, PointFunctional};
pub use representation::{decide_equivalence, decompose, Decomposition, Equivalence};
pub use sets::{PointSet, PointSpace, SetFamily};
