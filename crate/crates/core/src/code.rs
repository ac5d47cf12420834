//! Group codes: subgroups of `G^X` enumerated element by element.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::sets::{PointSet, PointSpace, SetFamily};

/// Default bound on the number of code elements.
pub const DEFAULT_CODE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator {index} has {len} values for a space of {points} points")]
    LengthMismatch { index: usize, len: usize, points: usize },
    #[error("generator {index} uses value {value}, not an element of the group")]
    InvalidValue { index: usize, value: usize },
    #[error("code would exceed {cap} elements")]
    SizeOverflow { cap: usize },
}

/// A function `X -> G`, stored as its value tuple in point order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GFunction(Vec<Elem>);

impl GFunction {
    pub fn new(values: Vec<Elem>) -> Self {
        GFunction(values)
    }

    pub fn constant(n_points: usize, value: Elem) -> Self {
        GFunction(vec![value; n_points])
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    #[inline]
    pub fn at(&self, x: usize) -> Elem {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &GFunction, group: &FiniteGroup) -> GFunction {
        GFunction(self.0.iter().zip(&other.0).map(|(&a, &b)| group.mul(a, b)).collect())
    }

    /// Pointwise inverse.
    pub fn inv(&self, group: &FiniteGroup) -> GFunction {
        GFunction(self.0.iter().map(|&a| group.inv(a)).collect())
    }

    /// `Z(f)`: points where `f` takes the identity.
    pub fn zero_set(&self, group: &FiniteGroup) -> PointSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == group.identity())
            .map(|(x, _)| x)
            .collect()
    }

    /// `coz(f)`: points where `f` differs from the identity.
    pub fn cozero_set(&self, group: &FiniteGroup) -> PointSet {
        self.zero_set(group).complement(self.0.len())
    }

    pub fn agrees_on(&self, other: &GFunction, set: PointSet) -> bool {
        set.points().all(|x| self.0[x] == other.0[x])
    }

    /// Space-separated element labels, e.g. `a b e`.
    pub fn display<'a>(&'a self, group: &'a FiniteGroup) -> impl fmt::Display + 'a {
        DisplayFunction { f: self, group }
    }
}

impl fmt::Debug for GFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

struct DisplayFunction<'a> {
    f: &'a GFunction,
    group: &'a FiniteGroup,
}

impl fmt::Display for DisplayFunction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.f.values().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.group.label(v))?;
        }
        Ok(())
    }
}

/// A subgroup of `C(X, G)` together with its enumerated elements.
///
/// Elements are listed breadth-first from the identity: each new element is
/// `parent * generator`, with parents taken in list order and generators in
/// input order. `derivation(k)` records that pair, so every element carries a
/// word in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionGroup {
    space: Arc<PointSpace>,
    group: Arc<FiniteGroup>,
    generators: Vec<GFunction>,
    generator_index: Vec<usize>,
    elements: Vec<GFunction>,
    derivation: Vec<Option<(usize, usize)>>,
    index: HashMap<GFunction, usize>,
    zero_sets: Vec<PointSet>,
}

impl FunctionGroup {
    /// Closes `generators` under pointwise products.
    pub fn generate(
        space: Arc<PointSpace>,
        group: Arc<FiniteGroup>,
        generators: Vec<GFunction>,
        cap: usize,
    ) -> Result<Self, CodeError> {
        let n = space.len();
        for (index, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(CodeError::LengthMismatch { index, len: g.len(), points: n });
            }
            if let Some(&value) = g.values().iter().find(|&&v| v >= group.order()) {
                return Err(CodeError::InvalidValue { index, value });
            }
        }
        if cap == 0 {
            return Err(CodeError::SizeOverflow { cap });
        }
        let identity = GFunction::constant(n, group.identity());
        let mut elements = vec![identity.clone()];
        let mut derivation = vec![None];
        let mut index = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let p = elements[next].mul(g, &group);
                if !index.contains_key(&p) {
                    if elements.len() == cap {
                        return Err(CodeError::SizeOverflow { cap });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                    derivation.push(Some((next, gi)));
                }
            }
            next += 1;
        }
        let generator_index = generators.iter().map(|g| index[g]).collect();
        let zero_sets = elements.iter().map(|f| f.zero_set(&group)).collect();
        Ok(Self { space, group, generators, generator_index, elements, derivation, index, zero_sets })
    }

    /// The whole of `C(X, G)`, generated by the functions that take one
    /// non-identity value at a single point.
    pub fn full(space: Arc<PointSpace>, group: Arc<FiniteGroup>, cap: usize) -> Result<Self, CodeError> {
        let n = space.len();
        let e = group.identity();
        let mut generators = Vec::new();
        for x in 0..n {
            for g in (0..group.order()).filter(|&g| g != e) {
                let mut v = vec![e; n];
                v[x] = g;
                generators.push(GFunction::new(v));
            }
        }
        Self::generate(space, group, generators, cap)
    }

    pub fn space(&self) -> &Arc<PointSpace> {
        &self.space
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n_points(&self) -> usize {
        self.space.len()
    }

    pub fn generators(&self) -> &[GFunction] {
        &self.generators
    }

    /// Element index of each generator.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_index
    }

    pub fn elements(&self) -> &[GFunction] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GFunction {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the constant identity function.
    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, f: &GFunction) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &GFunction) -> bool {
        self.index.contains_key(f)
    }

    /// `(parent, generator)` with `element(k) = element(parent) * generators[generator]`.
    pub fn derivation(&self, k: usize) -> Option<(usize, usize)> {
        self.derivation[k]
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].mul(&self.elements[j], &self.group);
        self.index[&p]
    }

    pub fn inv_index(&self, i: usize) -> usize {
        self.index[&self.elements[i].inv(&self.group)]
    }

    pub fn zero_set(&self, i: usize) -> PointSet {
        self.zero_sets[i]
    }

    pub fn cozero_set(&self, i: usize) -> PointSet {
        self.zero_sets[i].complement(self.n_points())
    }

    /// `Z(A) = {Z(f) : f in A}`.
    pub fn zero_family(&self) -> SetFamily {
        SetFamily::new(self.n_points(), self.zero_sets.iter().copied())
    }

    /// `coz(A) = {coz(f) : f in A}`.
    pub fn cozero_family(&self) -> SetFamily {
        SetFamily::new(self.n_points(), (0..self.len()).map(|i| self.cozero_set(i)))
    }

    /// `{f(x) : f in A}`, members sorted by element index.
    pub fn evaluation_image(&self, x: usize) -> Subgroup {
        let mut values: Vec<Elem> = self.elements.iter().map(|f| f.at(x)).collect();
        values.sort_unstable();
        values.dedup();
        // Already a subgroup; the closure only builds the membership table.
        let sub = self.group.subgroup_closure(&values);
        debug_assert_eq!(sub.len(), values.len());
        sub
    }

    pub fn format_function(&self, f: &GFunction) -> String {
        f.display(&self.group).to_string()
    }

    pub fn format_set(&self, s: PointSet) -> String {
        self.space.format_set(s)
    }
}
