//! Exhaustive checks of the structural facts about supports and support maps
//! on one concrete homomorphism.

use std::fmt;

use crate::checks::{controllable, separates_points};
use crate::hom::{Biseparation, CodeHom};
use crate::sets::PointSet;

use super::support::{is_support, minimal_supports_oracle, support_map};
use super::{RepresentationError, MAX_ORACLE_POINTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Proposition {
    /// The whole space is a support.
    SupportWholeSpace,
    /// The empty set is never a support of a non-null functional.
    SupportNonempty,
    /// Supersets of supports are supports.
    SupportUpwardClosed,
    /// Functions agreeing on a support have the same value.
    SupportEqualRestriction,
    /// Any two supports meet (needs a controllable, point-separating source).
    SupportsIntersect,
    /// The minimal support is a single point (same hypotheses).
    SupportSingletonMinimum,
    /// `A' ⊆ Z(f)` implies `h⁻¹(A') ⊆ Z(Hf)` for nonempty proper `A'`.
    SupportMapZeroPreimage,
    /// `h(coz(Hf)) ⊆ coz(f)`.
    SupportMapCozeroImage,
    /// Injective `H` gives a surjective `h` (controllable, point-separating source).
    SupportMapOnto,
    /// Biseparating `H` gives a bijective `h` (both codes controllable and point-separating).
    SupportMapBijective,
}

impl Proposition {
    pub fn key(self) -> &'static str {
        match self {
            Self::SupportWholeSpace => "support_whole_space",
            Self::SupportNonempty => "support_nonempty",
            Self::SupportUpwardClosed => "support_upward_closed",
            Self::SupportEqualRestriction => "support_equal_restriction",
            Self::SupportsIntersect => "supports_intersect",
            Self::SupportSingletonMinimum => "support_singleton_minimum",
            Self::SupportMapZeroPreimage => "support_map_zero_preimage",
            Self::SupportMapCozeroImage => "support_map_cozero_image",
            Self::SupportMapOnto => "support_map_onto",
            Self::SupportMapBijective => "support_map_bijective",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropStatus {
    Pass,
    Fail(String),
    /// Hypothesis not met; the reason names it.
    Skipped(&'static str),
}

impl fmt::Display for PropStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropStatus::Pass => f.write_str("pass"),
            PropStatus::Fail(w) => write!(f, "fail: {w}"),
            PropStatus::Skipped(r) => write!(f, "skipped: {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionReport {
    pub entries: Vec<(Proposition, PropStatus)>,
}

impl PropositionReport {
    /// No entry failed (skipped entries are fine).
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|(_, s)| !matches!(s, PropStatus::Fail(_)))
    }

    pub fn status(&self, p: Proposition) -> Option<&PropStatus> {
        self.entries.iter().find(|(q, _)| *q == p).map(|(_, s)| s)
    }
}

fn first_failure(mut witnesses: impl Iterator<Item = String>) -> PropStatus {
    witnesses.next().map_or(PropStatus::Pass, PropStatus::Fail)
}

/// Runs every check against `hom`, which must be separating with a
/// well-defined support map. Hypothesis-dependent checks are skipped when
/// the hypothesis fails.
pub fn check_propositions(hom: &CodeHom, closure_cap: usize) -> Result<PropositionReport, RepresentationError> {
    let h = support_map(hom)?;
    let a = hom.source();
    let b = hom.target();
    let n = a.n_points();
    if n > MAX_ORACLE_POINTS {
        return Err(RepresentationError::TooManyPoints(n));
    }
    let space = a.space();
    let subsets = PointSet::all_subsets(n);
    let functionals: Vec<_> = (0..b.n_points()).map(|y| hom.point_functional(y)).collect();
    // supports[y]: every support of f -> Hf(y), in subset order.
    let supports: Vec<Vec<PointSet>> = functionals
        .iter()
        .map(|phi| subsets.iter().copied().filter(|&s| is_support(phi, s)).collect())
        .collect();
    let at = |y: usize| b.space().label(y).to_string();

    let source_ok = separates_points(a).holds() && controllable(a, closure_cap)?.holds();
    let target_ok = separates_points(b).holds() && controllable(b, closure_cap)?.holds();

    let mut entries = Vec::new();

    entries.push((
        Proposition::SupportWholeSpace,
        first_failure(
            (0..functionals.len())
                .filter(|&y| !supports[y].contains(&space.full()))
                .map(|y| format!("y={}", at(y))),
        ),
    ));

    entries.push((
        Proposition::SupportNonempty,
        first_failure(
            (0..functionals.len())
                .filter(|&y| supports[y].contains(&PointSet::EMPTY))
                .map(|y| format!("y={}", at(y))),
        ),
    ));

    entries.push((
        Proposition::SupportUpwardClosed,
        first_failure((0..functionals.len()).flat_map(|y| {
            let sy = &supports[y];
            sy.iter()
                .flat_map(move |&s| (0..n).filter(move |&x| !s.contains(x)).map(move |x| (s, s.with(x))))
                .filter(move |(_, bigger)| !sy.contains(bigger))
                .map(move |(s, bigger)| {
                    format!("y={} support={} superset={}", at(y), space.format_set(s), space.format_set(bigger))
                })
        })),
    ));

    let mut equal_restriction = PropStatus::Pass;
    'outer: for (y, phi) in functionals.iter().enumerate() {
        for &s in &supports[y] {
            for f in 0..a.len() {
                for g in f + 1..a.len() {
                    if a.element(f).agrees_on(a.element(g), s) && phi.value(f) != phi.value(g) {
                        equal_restriction = PropStatus::Fail(format!(
                            "y={} support={} f={} g={}",
                            at(y),
                            space.format_set(s),
                            a.format_function(a.element(f)),
                            a.format_function(a.element(g)),
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    entries.push((Proposition::SupportEqualRestriction, equal_restriction));

    if source_ok {
        entries.push((
            Proposition::SupportsIntersect,
            first_failure((0..functionals.len()).flat_map(|y| {
                let sy = &supports[y];
                sy.iter()
                    .enumerate()
                    .flat_map(move |(i, &s)| sy[i + 1..].iter().map(move |&t| (s, t)))
                    .filter(|(s, t)| s.is_disjoint(*t))
                    .map(move |(s, t)| format!("y={} {} {}", at(y), space.format_set(s), space.format_set(t)))
            })),
        ));
        let mut singleton = PropStatus::Pass;
        for (y, phi) in functionals.iter().enumerate() {
            let report = minimal_supports_oracle(phi)?;
            if report.singleton_minimum != Some(h[y]) {
                let minimal: Vec<String> = report.minimal.iter().map(|s| space.format_set(*s)).collect();
                singleton = PropStatus::Fail(format!("y={} minimal={}", at(y), minimal.join(",")));
                break;
            }
        }
        entries.push((Proposition::SupportSingletonMinimum, singleton));
    } else {
        entries.push((Proposition::SupportsIntersect, PropStatus::Skipped("source not controllable and point-separating")));
        entries.push((
            Proposition::SupportSingletonMinimum,
            PropStatus::Skipped("source not controllable and point-separating"),
        ));
    }

    let preimage = |s: PointSet| -> PointSet { (0..h.len()).filter(|&y| s.contains(h[y])).collect() };
    let full = space.full();
    entries.push((
        Proposition::SupportMapZeroPreimage,
        first_failure(
            subsets
                .iter()
                .copied()
                .filter(|s| !s.is_empty() && *s != full)
                .flat_map(|s| (0..a.len()).map(move |f| (s, f)))
                .filter(|&(s, f)| s.is_subset(a.zero_set(f)) && !preimage(s).is_subset(b.zero_set(hom.apply(f))))
                .map(|(s, f)| format!("set={} f={}", space.format_set(s), a.format_function(a.element(f)))),
        ),
    ));

    entries.push((
        Proposition::SupportMapCozeroImage,
        first_failure(
            (0..a.len())
                .filter(|&f| {
                    let image: PointSet = b.cozero_set(hom.apply(f)).points().map(|y| h[y]).collect();
                    !image.is_subset(a.cozero_set(f))
                })
                .map(|f| format!("f={}", a.format_function(a.element(f)))),
        ),
    ));

    let onto = {
        let hit: PointSet = h.iter().copied().collect();
        (0..n)
            .find(|&x| !hit.contains(x))
            .map_or(PropStatus::Pass, |x| PropStatus::Fail(format!("x={} not in image", space.label(x))))
    };
    entries.push((
        Proposition::SupportMapOnto,
        if !hom.is_injective() {
            PropStatus::Skipped("homomorphism not injective")
        } else if !source_ok {
            PropStatus::Skipped("source not controllable and point-separating")
        } else {
            onto.clone()
        },
    ));

    let bijective = if h.len() != n {
        PropStatus::Fail(format!("{} target points for {} source points", h.len(), n))
    } else {
        let mut sorted = h.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == n {
            PropStatus::Pass
        } else {
            PropStatus::Fail("support map is not injective".into())
        }
    };
    entries.push((
        Proposition::SupportMapBijective,
        if hom.is_biseparating() != Ok(Biseparation::Biseparating) {
            PropStatus::Skipped("homomorphism not biseparating")
        } else if !(source_ok && target_ok) {
            PropStatus::Skipped("codes not controllable and point-separating")
        } else {
            bijective
        },
    ));

    Ok(PropositionReport { entries })
}
