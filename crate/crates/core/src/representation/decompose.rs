use crate::checks::CodeReport;
use crate::group::{GroupMap, MapKind};
use crate::hom::{Biseparation, CodeHom};
use crate::sets::DEFAULT_CLOSURE_CAP;

use super::support::{minimal_supports_oracle, support_map};
use super::RepresentationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Cap for the set-family closures used by the controllability checks.
    pub closure_cap: usize,
    /// Cross-check every support point against the subset-enumeration oracle.
    pub oracle: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self { closure_cap: DEFAULT_CLOSURE_CAP, oracle: false }
    }
}

/// Hypothesis verdicts gathered while decomposing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses {
    pub source: CodeReport,
    pub target: CodeReport,
    /// `None` when `H` is not a bijection.
    pub biseparation: Option<Biseparation>,
}

impl Hypotheses {
    /// `H` is biseparating and both codes separate points, are controllable
    /// and pointwise dense.
    pub fn all_hold(&self) -> bool {
        self.biseparation == Some(Biseparation::Biseparating)
            && self.source.satisfies_representation_hypotheses()
            && self.target.satisfies_representation_hypotheses()
    }
}

/// Decomposition `(k, ρ)` of `H⁻¹`, checked against `(h, ω)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseCheck {
    /// `k: X -> Y`.
    pub support_map: Vec<usize>,
    /// `ρ[x]` for each source point `x`.
    pub weights: Vec<GroupMap>,
}

/// `Hf(y) = ω[y](f(h(y)))` for all `f` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    hom: CodeHom,
    support_map: Vec<usize>,
    weights: Vec<GroupMap>,
    hypotheses: Option<Hypotheses>,
    inverse: Option<InverseCheck>,
}

impl Decomposition {
    pub(crate) fn from_parts(hom: CodeHom, support_map: Vec<usize>, weights: Vec<GroupMap>) -> Self {
        Self { hom, support_map, weights, hypotheses: None, inverse: None }
    }

    pub fn hom(&self) -> &CodeHom {
        &self.hom
    }

    /// `h(y)` for each target point.
    pub fn support_map(&self) -> &[usize] {
        &self.support_map
    }

    pub fn weights(&self) -> &[GroupMap] {
        &self.weights
    }

    pub fn weight_kind(&self, y: usize) -> MapKind {
        self.weights[y].kind()
    }

    /// Present when produced by [`decompose`].
    pub fn hypotheses(&self) -> Option<&Hypotheses> {
        self.hypotheses.as_ref()
    }

    /// Present when every hypothesis held and the inverse was decomposed.
    pub fn inverse(&self) -> Option<&InverseCheck> {
        self.inverse.as_ref()
    }

    pub fn support_map_is_bijective(&self) -> bool {
        let n = self.hom.source().n_points();
        let mut hit = vec![false; n];
        for &x in &self.support_map {
            hit[x] = true;
        }
        self.support_map.len() == n && hit.iter().all(|&b| b)
    }

    /// Re-checks the representation identity on every `(f, y)`.
    pub fn verify(&self) -> Result<(), RepresentationError> {
        let a = self.hom.source();
        for (f, func) in a.elements().iter().enumerate() {
            let hf = self.hom.image(f);
            for (y, (&x, w)) in self.support_map.iter().zip(&self.weights).enumerate() {
                if w.apply(func.at(x)) != Some(hf.at(y)) {
                    return Err(RepresentationError::RepresentationFailed { f, y });
                }
            }
        }
        Ok(())
    }
}

/// `ω[y]`, defined on `{f(h(y)) : f in A}` by `ω[y](f(h(y))) = Hf(y)`.
pub fn weight_at(hom: &CodeHom, support_map: &[usize], y: usize) -> Result<GroupMap, RepresentationError> {
    let a = hom.source();
    let group = a.group();
    let x = support_map[y];
    let mut images = vec![None; group.order()];
    for (f, func) in a.elements().iter().enumerate() {
        let g = func.at(x);
        let v = hom.image(f).at(y);
        match images[g] {
            None => images[g] = Some(v),
            Some(first) if first != v => {
                return Err(RepresentationError::WeightIllDefined { y, g, first, second: v });
            }
            Some(_) => {}
        }
    }
    GroupMap::new(group, images)
        .map_err(|e| RepresentationError::ConclusionViolated(format!("weight at target point {y}: {e}")))
}

fn decompose_unchecked(hom: &CodeHom, options: &DecomposeOptions) -> Result<Decomposition, RepresentationError> {
    let h = support_map(hom)?;
    if options.oracle {
        for (y, &x) in h.iter().enumerate() {
            let report = minimal_supports_oracle(&hom.point_functional(y))?;
            if report.singleton_minimum != Some(x) {
                return Err(RepresentationError::OracleDisagreement { y });
            }
        }
    }
    let weights = (0..h.len())
        .map(|y| weight_at(hom, &h, y))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Decomposition::from_parts(hom.clone(), h, weights);
    d.verify()?;
    Ok(d)
}

/// Support map and weights of a separating homomorphism.
///
/// The hypotheses of the representation theorem are always evaluated and
/// recorded. When all of them hold, the stronger conclusions are asserted as
/// well: `h` is a bijection, every weight is an automorphism, and the
/// decomposition `(k, ρ)` of `H⁻¹` satisfies `k = h⁻¹` and
/// `ρ[h(y)] ∘ ω[y] = ω[y] ∘ ρ[h(y)] = id`. A failure of any of these is
/// reported as [`RepresentationError::ConclusionViolated`].
pub fn decompose(hom: &CodeHom, options: &DecomposeOptions) -> Result<Decomposition, RepresentationError> {
    let mut d = decompose_unchecked(hom, options)?;
    let hypotheses = Hypotheses {
        source: CodeReport::compute(hom.source(), options.closure_cap)?,
        target: CodeReport::compute(hom.target(), options.closure_cap)?,
        biseparation: hom.is_biseparating().ok(),
    };
    if hypotheses.all_hold() {
        d.inverse = Some(check_conclusions(&d, options)?);
    }
    d.hypotheses = Some(hypotheses);
    Ok(d)
}

fn check_conclusions(d: &Decomposition, options: &DecomposeOptions) -> Result<InverseCheck, RepresentationError> {
    let violated = |msg: String| Err(RepresentationError::ConclusionViolated(msg));
    if !d.support_map_is_bijective() {
        return violated("support map is not a bijection".into());
    }
    if let Some(y) = (0..d.weights.len()).find(|&y| d.weight_kind(y) != MapKind::Automorphism) {
        return violated(format!("weight at target point {y} is not an automorphism"));
    }
    let inverse = decompose_unchecked(&d.hom.inverse()?, options)?;
    let h = &d.support_map;
    let k = inverse.support_map();
    if let Some(y) = (0..h.len()).find(|&y| k[h[y]] != y) {
        return violated(format!("k(h(y)) != y at target point {y}"));
    }
    if let Some(x) = (0..k.len()).find(|&x| h[k[x]] != x) {
        return violated(format!("h(k(x)) != x at source point {x}"));
    }
    let group = d.hom.source().group();
    for (y, omega) in d.weights.iter().enumerate() {
        let rho = &inverse.weights()[h[y]];
        if !rho.compose(group, omega).is_identity() || !omega.compose(group, rho).is_identity() {
            return violated(format!("ρ[h(y)] is not inverse to ω[y] at target point {y}"));
        }
    }
    Ok(InverseCheck { support_map: k.to_vec(), weights: inverse.weights().to_vec() })
}
