//! Group homomorphisms between codes over the same group.

use std::sync::Arc;

use thiserror::Error;

use crate::checks::Verdict;
use crate::code::{FunctionGroup, GFunction};
use crate::group::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("source and target codes are over different groups")]
    GroupMismatch,
    #[error("expected {expected} generator images, got {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("image of generator {generator} is not in the target code")]
    ImageOutsideTarget { generator: usize },
    #[error("element {element} receives two different images")]
    NotWellDefined { element: usize },
    #[error("H(f*g) != H(f)*H(g) for elements {f} and {g}")]
    NotHomomorphic { f: usize, g: usize },
    #[error("element map has {len} entries for a code of {expected} elements")]
    MapLength { len: usize, expected: usize },
    #[error("map is not a bijection onto the target code")]
    NotBijective,
}

/// `H: A -> B`, stored as the image index of every element of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeHom {
    source: Arc<FunctionGroup>,
    target: Arc<FunctionGroup>,
    element_map: Vec<usize>,
}

impl CodeHom {
    /// Extends generator images along the element derivations of `source`.
    ///
    /// Every edge `f -> f * gen` of the generator graph is checked, which
    /// makes the extension single-valued; the law is then checked on all
    /// pairs.
    pub fn from_generator_images(
        source: Arc<FunctionGroup>,
        target: Arc<FunctionGroup>,
        images: &[GFunction],
    ) -> Result<Self, HomError> {
        if source.group() != target.group() {
            return Err(HomError::GroupMismatch);
        }
        let expected = source.generators().len();
        if images.len() != expected {
            return Err(HomError::GeneratorCount { expected, found: images.len() });
        }
        let gen_images = images
            .iter()
            .enumerate()
            .map(|(generator, f)| target.index_of(f).ok_or(HomError::ImageOutsideTarget { generator }))
            .collect::<Result<Vec<_>, _>>()?;

        let mut element_map = vec![target.identity_index(); source.len()];
        for k in 1..source.len() {
            let (parent, generator) = source.derivation(k).expect("non-identity element");
            element_map[k] = target.mul_index(element_map[parent], gen_images[generator]);
        }
        for (generator, &gi) in source.generator_indices().iter().enumerate() {
            if element_map[gi] != gen_images[generator] {
                return Err(HomError::NotWellDefined { element: gi });
            }
        }
        for k in 0..source.len() {
            for (generator, &gen_index) in source.generator_indices().iter().enumerate() {
                let next = source.mul_index(k, gen_index);
                if element_map[next] != target.mul_index(element_map[k], gen_images[generator]) {
                    return Err(HomError::NotWellDefined { element: next });
                }
            }
        }
        Self::from_element_map(source, target, element_map)
    }

    /// Wraps an explicit element map after checking the law on all pairs.
    pub fn from_element_map(
        source: Arc<FunctionGroup>,
        target: Arc<FunctionGroup>,
        element_map: Vec<usize>,
    ) -> Result<Self, HomError> {
        if source.group() != target.group() {
            return Err(HomError::GroupMismatch);
        }
        if element_map.len() != source.len() {
            return Err(HomError::MapLength { len: element_map.len(), expected: source.len() });
        }
        if element_map.iter().any(|&t| t >= target.len()) {
            return Err(HomError::ImageOutsideTarget { generator: usize::MAX });
        }
        for f in 0..source.len() {
            for g in 0..source.len() {
                let fg = source.mul_index(f, g);
                if element_map[fg] != target.mul_index(element_map[f], element_map[g]) {
                    return Err(HomError::NotHomomorphic { f, g });
                }
            }
        }
        Ok(Self { source, target, element_map })
    }

    /// Builds `H` from a function on value tuples, e.g. a weighted
    /// composition.
    pub fn from_fn(
        source: Arc<FunctionGroup>,
        target: Arc<FunctionGroup>,
        map: impl Fn(&GFunction) -> GFunction,
    ) -> Result<Self, HomError> {
        let mut element_map = Vec::with_capacity(source.len());
        for f in source.elements() {
            let image = map(f);
            let generator = source.generators().iter().position(|g| g == f).unwrap_or(usize::MAX);
            element_map.push(target.index_of(&image).ok_or(HomError::ImageOutsideTarget { generator })?);
        }
        Self::from_element_map(source, target, element_map)
    }

    pub fn source(&self) -> &Arc<FunctionGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FunctionGroup> {
        &self.target
    }

    pub fn element_map(&self) -> &[usize] {
        &self.element_map
    }

    /// Target index of `H(source element i)`.
    pub fn apply(&self, i: usize) -> usize {
        self.element_map[i]
    }

    pub fn image(&self, i: usize) -> &GFunction {
        self.target.element(self.element_map[i])
    }

    pub fn generator_images(&self) -> Vec<GFunction> {
        self.source
            .generator_indices()
            .iter()
            .map(|&g| self.image(g).clone())
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.element_map.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<CodeHom, HomError> {
        if !self.is_bijective() {
            return Err(HomError::NotBijective);
        }
        let mut inv = vec![0; self.target.len()];
        for (f, &t) in self.element_map.iter().enumerate() {
            inv[t] = f;
        }
        Ok(CodeHom {
            source: self.target.clone(),
            target: self.source.clone(),
            element_map: inv,
        })
    }

    /// Disjoint cozeros in `A` map to disjoint cozeros in `B`. Witness: the
    /// first pair `(f, g)`, `f < g`, that violates this.
    pub fn is_separating(&self) -> Verdict<(usize, usize)> {
        let a = &self.source;
        let b = &self.target;
        for f in 0..a.len() {
            for g in f + 1..a.len() {
                if a.cozero_set(f).is_disjoint(a.cozero_set(g))
                    && !b.cozero_set(self.apply(f)).is_disjoint(b.cozero_set(self.apply(g)))
                {
                    return Verdict::Fails((f, g));
                }
            }
        }
        Verdict::Holds
    }

    pub fn is_biseparating(&self) -> Result<Biseparation, HomError> {
        let inverse = self.inverse()?;
        if let Verdict::Fails(w) = self.is_separating() {
            return Ok(Biseparation::ForwardFails(w));
        }
        if let Verdict::Fails(w) = inverse.is_separating() {
            return Ok(Biseparation::BackwardFails(w));
        }
        Ok(Biseparation::Biseparating)
    }

    /// `f -> Hf(y)`.
    pub fn point_functional(&self, y: usize) -> PointFunctional {
        let values = self.element_map.iter().map(|&t| self.target.element(t).at(y)).collect();
        PointFunctional::new(self.source.clone(), values)
    }
}

/// Outcome of the biseparating check on a bijective homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Biseparation {
    Biseparating,
    /// `H` fails; witness pair in the source.
    ForwardFails((usize, usize)),
    /// `H⁻¹` fails; witness pair in the target.
    BackwardFails((usize, usize)),
}

/// A homomorphism `A -> G`, e.g. an evaluation `f -> f(x)` or `f -> Hf(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFunctional {
    source: Arc<FunctionGroup>,
    values: Vec<Elem>,
    is_null: bool,
}

impl PointFunctional {
    fn new(source: Arc<FunctionGroup>, values: Vec<Elem>) -> Self {
        let e = source.group().identity();
        let is_null = values.iter().all(|&v| v == e);
        Self { source, values, is_null }
    }

    /// `f -> f(x)`.
    pub fn evaluation(source: Arc<FunctionGroup>, x: usize) -> Self {
        let values = source.elements().iter().map(|f| f.at(x)).collect();
        Self::new(source, values)
    }

    pub fn source(&self) -> &Arc<FunctionGroup> {
        &self.source
    }

    pub fn value(&self, f: usize) -> Elem {
        self.values[f]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// Every element is sent to the identity.
    pub fn is_null(&self) -> bool {
        self.is_null
    }

    /// No two elements with disjoint cozeros both take a non-identity value.
    pub fn is_separating(&self) -> Verdict<(usize, usize)> {
        let a = &self.source;
        let e = a.group().identity();
        for f in 0..a.len() {
            for g in f + 1..a.len() {
                if self.values[f] != e
                    && self.values[g] != e
                    && a.cozero_set(f).is_disjoint(a.cozero_set(g))
                {
                    return Verdict::Fails((f, g));
                }
            }
        }
        Verdict::Holds
    }
}
