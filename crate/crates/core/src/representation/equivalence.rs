use std::sync::Arc;

use itertools::Itertools;

use crate::code::{FunctionGroup, GFunction};
use crate::group::{GroupMap, Subgroup};
use crate::hom::CodeHom;

use super::decompose::Decomposition;
use super::RepresentationError;

/// Default number of `(h, ω)` candidates the equivalence search may test.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// Certificate: the induced map `Tf(y) = ω[y](f(h(y)))` with its point
    /// bijection and automorphism weights.
    Equivalent(Box<Decomposition>),
    NotEquivalent(NotEquivalentReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotEquivalentReason {
    PointCountMismatch,
    SizeMismatch,
    /// The multisets of cozero sizes differ.
    CozeroProfileMismatch,
    /// The multisets of evaluation-image orders differ.
    ImageProfileMismatch,
    /// Every point bijection and weight assignment was ruled out.
    NoWitness,
}

impl std::fmt::Display for NotEquivalentReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::PointCountMismatch => "point-count-mismatch",
            Self::SizeMismatch => "size-mismatch",
            Self::CozeroProfileMismatch => "cozero-profile-mismatch",
            Self::ImageProfileMismatch => "image-profile-mismatch",
            Self::NoWitness => "no-witness",
        })
    }
}

fn cozero_profile(code: &FunctionGroup) -> Vec<usize> {
    (0..code.len()).map(|i| code.cozero_set(i).len()).sorted().collect()
}

fn images(code: &FunctionGroup) -> Vec<Subgroup> {
    (0..code.n_points()).map(|x| code.evaluation_image(x)).collect()
}

/// Searches for a point bijection `h: Y -> X` and automorphisms `ω[y]` with
/// `{y -> ω[y](f(h(y))) : f in A} = B`.
///
/// Bijections are tried in lexicographic order of `(h(y0), h(y1), ...)` and,
/// for each, weight tuples in lexicographic order of automorphism index; the
/// first hit is returned. Branches are skipped only when an invariant rules
/// them out, so skipping never changes which witness comes first. Each
/// candidate actually tested counts against `cap`.
pub fn decide_equivalence(
    a: &Arc<FunctionGroup>,
    b: &Arc<FunctionGroup>,
    cap: u64,
) -> Result<Equivalence, RepresentationError> {
    use NotEquivalentReason::*;
    if a.group() != b.group() {
        return Err(RepresentationError::GroupMismatch);
    }
    let n = a.n_points();
    if n != b.n_points() {
        return Ok(Equivalence::NotEquivalent(PointCountMismatch));
    }
    if a.len() != b.len() {
        return Ok(Equivalence::NotEquivalent(SizeMismatch));
    }
    if cozero_profile(a) != cozero_profile(b) {
        return Ok(Equivalence::NotEquivalent(CozeroProfileMismatch));
    }
    let (images_a, images_b) = (images(a), images(b));
    let orders = |v: &[Subgroup]| v.iter().map(Subgroup::len).sorted().collect::<Vec<_>>();
    if orders(&images_a) != orders(&images_b) {
        return Ok(Equivalence::NotEquivalent(ImageProfileMismatch));
    }

    let group = a.group();
    let auts = group.automorphisms();
    // maps_onto[x][y]: automorphisms carrying the image of A at x onto the
    // image of B at y.
    let maps_onto: Vec<Vec<Vec<usize>>> = images_a
        .iter()
        .map(|ia| {
            images_b
                .iter()
                .map(|ib| {
                    (0..auts.len())
                        .filter(|&k| {
                            ia.len() == ib.len()
                                && ia.members().iter().all(|&g| ib.contains(auts[k].apply(g).unwrap()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut tested: u64 = 0;
    for h in (0..n).permutations(n) {
        let allowed: Vec<&Vec<usize>> = (0..n).map(|y| &maps_onto[h[y]][y]).collect();
        if allowed.iter().any(|choices| choices.is_empty()) {
            continue;
        }
        for choice in allowed.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
            tested += 1;
            if tested > cap {
                return Err(RepresentationError::SearchBudgetExceeded { cap });
            }
            let weights: Vec<&GroupMap> = choice.iter().map(|&k| &auts[k]).collect();
            let transform =
                |f: &GFunction| GFunction::new((0..n).map(|y| weights[y].apply(f.at(h[y])).unwrap()).collect());
            // T is injective on C(X, G) and |A| = |B|, so T(A) = B iff the
            // generators land in B.
            if a.generators().iter().all(|g| b.contains(&transform(g))) {
                let hom = CodeHom::from_fn(a.clone(), b.clone(), transform)?;
                let d = Decomposition::from_parts(hom, h, weights.into_iter().cloned().collect());
                d.verify()?;
                return Ok(Equivalence::Equivalent(Box::new(d)));
            }
        }
    }
    Ok(Equivalence::NotEquivalent(NoWitness))
}
