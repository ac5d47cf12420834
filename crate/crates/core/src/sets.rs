//! Finite point spaces, subsets of them, and set families closed under
//! binary union and intersection.
//!
//! Every space is finite and discrete, so every subset is clopen. Subsets are
//! bitmasks over at most 64 points.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub const MAX_POINTS: usize = 64;

/// Default bound on the size of a closed set family (the power set of 12
/// points).
pub const DEFAULT_CLOSURE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("a point space needs at least one point")]
    Empty,
    #[error("{0} points exceed the supported maximum of {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
}

/// A finite set of labelled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpace {
    labels: Vec<String>,
}

impl PointSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, SpaceError> {
        if labels.is_empty() {
            return Err(SpaceError::Empty);
        }
        if labels.len() > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Points labelled `{prefix}0, {prefix}1, ...`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Self::new((0..n).map(|i| format!("{prefix}{i}")).collect()).expect("valid numbered space")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn point(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// `{x0,x2}` style rendering with point labels.
    pub fn format_set(&self, set: PointSet) -> String {
        let inner: Vec<&str> = set.points().map(|i| self.label(i)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// A subset of a point space, as a bitmask over point indices.
///
/// Ordered by cardinality first, then by bitmask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        PointSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    /// Complement inside a space of `n` points.
    pub fn complement(self, n: usize) -> Self {
        PointSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of an `n`-point space, in [`Ord`] order.
    pub fn all_subsets(n: usize) -> Vec<PointSet> {
        assert!(n < 64, "power set of {n} points");
        let mut all: Vec<PointSet> = (0..1u64 << n).map(PointSet).collect();
        all.sort();
        all
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(PointSet::EMPTY, PointSet::with)
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("set family closure reached {reached} sets, over the cap of {cap}")]
pub struct ClosureOverflow {
    pub reached: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("no disjoint pair in the closed family separates the two sets")]
    NotSeparable,
    #[error("sets to separate must be nonempty and disjoint")]
    PreconditionViolated,
    #[error(transparent)]
    Closure(#[from] ClosureOverflow),
}

/// Distinct subsets of one space, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n_points: usize,
    sets: Vec<PointSet>,
}

impl SetFamily {
    pub fn new(n_points: usize, sets: impl IntoIterator<Item = PointSet>) -> Self {
        let full = PointSet::full(n_points);
        let mut sets: Vec<PointSet> = sets.into_iter().collect();
        debug_assert!(sets.iter().all(|s| s.is_subset(full)));
        sets.sort();
        sets.dedup();
        Self { n_points, sets }
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Smallest superfamily closed under binary union and intersection.
    ///
    /// The empty set and the whole space appear only if generated.
    pub fn sigma_closure(&self, cap: usize) -> Result<SetFamily, ClosureOverflow> {
        if self.sets.len() > cap {
            return Err(ClosureOverflow { reached: self.sets.len(), cap });
        }
        let mut seen: HashSet<PointSet> = self.sets.iter().copied().collect();
        let mut all = self.sets.clone();
        let mut frontier = 0;
        while frontier < all.len() {
            let s = all[frontier];
            frontier += 1;
            let mut i = 0;
            while i < all.len() {
                let t = all[i];
                i += 1;
                for candidate in [s.union(t), s.intersection(t)] {
                    if seen.insert(candidate) {
                        all.push(candidate);
                        if all.len() > cap {
                            return Err(ClosureOverflow { reached: all.len(), cap });
                        }
                    }
                }
            }
        }
        Ok(SetFamily::new(self.n_points, all))
    }

    /// Disjoint `D_A ⊇ a`, `D_B ⊇ b` from the closure of this family; the
    /// first such pair in (D_A, D_B) order.
    pub fn separate_disjoint(
        &self,
        a: PointSet,
        b: PointSet,
        cap: usize,
    ) -> Result<(PointSet, PointSet), SeparationError> {
        if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
            return Err(SeparationError::PreconditionViolated);
        }
        let closed = self.sigma_closure(cap)?;
        for &da in closed.sets().iter().filter(|d| a.is_subset(**d)) {
            if let Some(&db) = closed
                .sets()
                .iter()
                .find(|d| b.is_subset(**d) && d.is_disjoint(da))
            {
                return Ok((da, db));
            }
        }
        Err(SeparationError::NotSeparable)
    }
}
