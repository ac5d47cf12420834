use crate::hom::{CodeHom, PointFunctional};
use crate::sets::PointSet;

use super::{RepresentationError, MAX_ORACLE_POINTS};

/// `S` is a support of `φ` when every `f` vanishing on `S` has `φ(f) = e`.
pub fn is_support(phi: &PointFunctional, s: PointSet) -> bool {
    let a = phi.source();
    let e = a.group().identity();
    (0..a.len()).all(|f| !s.is_subset(a.zero_set(f)) || phi.value(f) == e)
}

/// Inclusion-minimal supports of a functional, found by exhaustive subset
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    /// In (cardinality, bitmask) order.
    pub minimal: Vec<PointSet>,
    /// `Some(x)` iff `{x}` is the only minimal support, i.e. a support
    /// contained in every other support.
    pub singleton_minimum: Option<usize>,
}

impl SupportReport {
    pub fn is_singleton_minimum(&self) -> bool {
        self.singleton_minimum.is_some()
    }
}

/// Brute-force support oracle: scans all `2^|X|` subsets in increasing
/// cardinality and keeps those containing no smaller support.
pub fn minimal_supports_oracle(phi: &PointFunctional) -> Result<SupportReport, RepresentationError> {
    let n = phi.source().n_points();
    if n > MAX_ORACLE_POINTS {
        return Err(RepresentationError::TooManyPoints(n));
    }
    if phi.is_null() {
        return Err(RepresentationError::NullFunctional { y: None });
    }
    let mut minimal: Vec<PointSet> = Vec::new();
    for s in PointSet::all_subsets(n) {
        if minimal.iter().any(|m| m.is_subset(s)) {
            continue;
        }
        if is_support(phi, s) {
            minimal.push(s);
        }
    }
    let singleton_minimum = match minimal.as_slice() {
        [only] if only.len() == 1 => only.points().next(),
        _ => None,
    };
    Ok(SupportReport { minimal, singleton_minimum })
}

/// The unique point `x` with `{x}` a support contained in every support, or
/// the list of singleton supports when there is no such point.
///
/// A singleton support `{x}` lies in every support iff `X \ {x}` is not a
/// support, so one extra check decides minimality.
pub fn singleton_support(phi: &PointFunctional) -> Result<usize, Vec<usize>> {
    let n = phi.source().n_points();
    let candidates: Vec<usize> = (0..n).filter(|&x| is_support(phi, PointSet::singleton(x))).collect();
    match candidates.as_slice() {
        &[x] if !is_support(phi, PointSet::full(n).without(x)) => Ok(x),
        _ => Err(candidates),
    }
}

/// `h(y)` for every target point: the singleton minimum support of
/// `f -> Hf(y)`.
pub fn support_map(hom: &CodeHom) -> Result<Vec<usize>, RepresentationError> {
    if let Some(&(f, g)) = hom.is_separating().witness() {
        return Err(RepresentationError::NotSeparating { f, g });
    }
    (0..hom.target().n_points())
        .map(|y| {
            let phi = hom.point_functional(y);
            if phi.is_null() {
                return Err(RepresentationError::NullFunctional { y: Some(y) });
            }
            singleton_support(&phi).map_err(|candidates| RepresentationError::SupportAmbiguous { y, candidates })
        })
        .collect()
}
