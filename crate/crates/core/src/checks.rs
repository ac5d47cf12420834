//! Structural hypotheses on a code: point separation, strong separation,
//! pointwise density and controllability.
//!
//! Every failing check reports the first counterexample in enumeration order
//! (points by index, code elements in list order, sets in family order).

use std::collections::HashMap;

use crate::code::FunctionGroup;
use crate::sets::{ClosureOverflow, PointSet, SetFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A triple `(f, D1, D2)` for which no `(U, g)` exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlWitness {
    /// Element index of `f`.
    pub f: usize,
    pub d1: PointSet,
    pub d2: PointSet,
}

/// For every ordered pair of distinct points `(x1, x2)` some `f` has
/// `f(x1) != e` and `f(x2) = e`. Witness: the first failing pair.
pub fn separates_points(code: &FunctionGroup) -> Verdict<(usize, usize)> {
    let n = code.n_points();
    for x1 in 0..n {
        for x2 in (0..n).filter(|&x2| x2 != x1) {
            let found = (0..code.len()).any(|i| {
                let z = code.zero_set(i);
                !z.contains(x1) && z.contains(x2)
            });
            if !found {
                return Verdict::Fails((x1, x2));
            }
        }
    }
    Verdict::Holds
}

/// For every pair of distinct points `x1 < x2` there are `f1, f2` with
/// `x_i in coz(f_i)` and disjoint cozeros.
pub fn strongly_separates_points(code: &FunctionGroup) -> Verdict<(usize, usize)> {
    let n = code.n_points();
    let mut cozeros: Vec<PointSet> = (0..code.len()).map(|i| code.cozero_set(i)).collect();
    cozeros.sort();
    cozeros.dedup();
    for x1 in 0..n {
        for x2 in x1 + 1..n {
            let found = cozeros.iter().filter(|c| c.contains(x1)).any(|c1| {
                cozeros
                    .iter()
                    .any(|c2| c2.contains(x2) && c1.is_disjoint(*c2))
            });
            if !found {
                return Verdict::Fails((x1, x2));
            }
        }
    }
    Verdict::Holds
}

/// Every evaluation `f -> f(x)` maps the code onto `G`. Witness: first point
/// whose image is a proper subgroup.
pub fn pointwise_dense(code: &FunctionGroup) -> Verdict<usize> {
    match (0..code.n_points()).find(|&x| !code.evaluation_image(x).is_whole()) {
        Some(x) => Verdict::Fails(x),
        None => Verdict::Holds,
    }
}

/// Controllability: for every `f` and disjoint `D1, D2` in the closure of
/// the zero sets there are `U` in the closure of the cozero sets and `g` in
/// the code with `D1 ⊆ U ⊆ X \ D2`, `g = f` on `D1` and `g = e` on
/// `Z(f) ∪ (X \ U)`.
///
/// For a candidate `g` the admissible `U` are exactly the family members
/// containing `D1 ∪ coz(g)` and missing `D2`; since the family is closed
/// under intersection it suffices to test the smallest member containing
/// `D1 ∪ coz(g)`.
pub fn controllable(code: &FunctionGroup, cap: usize) -> Result<Verdict<ControlWitness>, ClosureOverflow> {
    let zero_closure = code.zero_family().sigma_closure(cap)?;
    let cozero_closure = code.cozero_family().sigma_closure(cap)?;
    let mut envelopes = Envelopes::new(&cozero_closure);

    for f in 0..code.len() {
        let fz = code.zero_set(f);
        let func = code.element(f);
        for &d1 in zero_closure.sets() {
            let mut reachable: Vec<PointSet> = Vec::new();
            for g in 0..code.len() {
                if fz.is_subset(code.zero_set(g)) && code.element(g).agrees_on(func, d1) {
                    if let Some(u) = envelopes.smallest_containing(d1.union(code.cozero_set(g))) {
                        if !reachable.contains(&u) {
                            reachable.push(u);
                        }
                    }
                }
            }
            for &d2 in zero_closure.sets().iter().filter(|d2| d2.is_disjoint(d1)) {
                if !reachable.iter().any(|u| u.is_disjoint(d2)) {
                    return Ok(Verdict::Fails(ControlWitness { f, d1, d2 }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Smallest member of an intersection-closed family containing a given set.
struct Envelopes<'a> {
    family: &'a SetFamily,
    cache: HashMap<PointSet, Option<PointSet>>,
}

impl<'a> Envelopes<'a> {
    fn new(family: &'a SetFamily) -> Self {
        Self { family, cache: HashMap::new() }
    }

    fn smallest_containing(&mut self, m: PointSet) -> Option<PointSet> {
        let family = self.family;
        *self.cache.entry(m).or_insert_with(|| {
            family
                .sets()
                .iter()
                .filter(|s| m.is_subset(**s))
                .copied()
                .reduce(PointSet::intersection)
        })
    }
}

/// The four hypothesis verdicts for one code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeReport {
    pub separates_points: Verdict<(usize, usize)>,
    pub strongly_separates_points: Verdict<(usize, usize)>,
    pub pointwise_dense: Verdict<usize>,
    pub controllable: Verdict<ControlWitness>,
}

impl CodeReport {
    pub fn compute(code: &FunctionGroup, cap: usize) -> Result<Self, ClosureOverflow> {
        Ok(Self {
            separates_points: separates_points(code),
            strongly_separates_points: strongly_separates_points(code),
            pointwise_dense: pointwise_dense(code),
            controllable: controllable(code, cap)?,
        })
    }

    /// Separates points, is controllable and pointwise dense.
    pub fn satisfies_representation_hypotheses(&self) -> bool {
        self.separates_points.holds() && self.controllable.holds() && self.pointwise_dense.holds()
    }
}
