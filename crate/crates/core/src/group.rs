//! Finite groups given by multiplication tables.
//!
//! Elements are addressed by their index in the label list. Every group
//! built through [`FiniteGroup::new`] has had closure, identity, inverses and
//! associativity checked exhaustively, so downstream code can treat the table
//! as a genuine group law.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Index of an element inside its [`FiniteGroup`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("table has {rows} rows but the group has {order} elements")]
    RowCount { rows: usize, order: usize },
    #[error("table row {row} has {len} entries but the group has {order} elements")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry ({row}, {col}) = {value} is not an element index")]
    NotClosed { row: Elem, col: Elem, value: usize },
    #[error("no element acts as a two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: Elem },
    #[error("table is not associative: with elements numbered from 0, ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
}

/// A finite group stored as a dense multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    /// Row-major: `table[a * order + b]` is the index of `a * b`.
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("labels", &self.labels)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a labelled multiplication table and builds the group.
    ///
    /// Checks run in the order closure, identity, inverses, associativity; the
    /// first failure is reported with the offending indices.
    pub fn new(labels: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let order = labels.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        if table.len() != order {
            return Err(GroupError::RowCount { rows: table.len(), order });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare { row, len: entries.len(), order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::NotClosed { row, col, value });
                }
                flat.push(value);
            }
        }
        let mul = |a: Elem, b: Elem| flat[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverse = Vec::with_capacity(order);
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or(GroupError::MissingInverse { element: g })?;
            inverse.push(inv);
        }

        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        Ok(Self { labels, table: flat, identity, inverse })
    }

    /// The group with one element, labelled `e`.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Cyclic group of order `n` (n >= 1). Element `k` is the `k`-th power of
    /// the generator; labels are `e, a, b, c, d, f, ...` (skipping `e`) for
    /// `n <= 26` and `g<k>` beyond that.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        const LETTERS: &[u8] = b"abcdfghijklmnopqrstuvwxyz";
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                k if n <= LETTERS.len() + 1 => (LETTERS[k - 1] as char).to_string(),
                k => format!("g{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table).expect("cyclic table is a group")
    }

    /// Direct product `self x other`; element `(a, b)` has index
    /// `a * |other| + b` and label `(a,b)`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (m, n) = (self.order(), other.order());
        let labels = (0..m * n)
            .map(|i| format!("({},{})", self.label(i / n), other.label(i % n)))
            .collect();
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Self::new(labels, table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// Rows of the multiplication table as element indices.
    pub fn table_rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.table.chunks(self.order())
    }

    /// Smallest subgroup containing `seeds`.
    ///
    /// Members are listed breadth-first: the identity, then the distinct seeds
    /// in input order, then products `m * s` in discovery order.
    pub fn subgroup_closure(&self, seeds: &[Elem]) -> Subgroup {
        let mut gens: Vec<Elem> = Vec::new();
        for &s in seeds {
            if !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut contains = vec![false; self.order()];
        let mut members = vec![self.identity];
        contains[self.identity] = true;
        for &s in &gens {
            if !contains[s] {
                contains[s] = true;
                members.push(s);
            }
        }
        let mut queue: VecDeque<Elem> = members.iter().copied().collect();
        while let Some(m) = queue.pop_front() {
            for &s in &gens {
                let p = self.mul(m, s);
                if !contains[p] {
                    contains[p] = true;
                    members.push(p);
                    queue.push_back(p);
                }
            }
        }
        Subgroup { members, contains }
    }

    /// Every endomorphism of the group, in lexicographic order of the image
    /// tuple `(phi(0), phi(1), ...)`.
    ///
    /// Backtracks over element images in index order; each assignment is
    /// propagated through the multiplication table so that forced images are
    /// fixed (or the branch rejected) before the next branching point.
    /// Intended for `|G| <= 16`.
    pub fn endomorphisms(&self) -> Vec<GroupMap> {
        let n = self.order();
        let mut out = Vec::new();
        self.extend_endomorphisms(vec![None; n], &mut out);
        out
    }

    fn extend_endomorphisms(&self, partial: Vec<Option<Elem>>, out: &mut Vec<GroupMap>) {
        let Some(next) = partial.iter().position(Option::is_none) else {
            let images = partial.into_iter().map(|x| x.expect("complete")).collect::<Vec<_>>();
            out.push(GroupMap::classified_total(self, images));
            return;
        };
        for value in 0..self.order() {
            let mut trial = partial.clone();
            if self.assign_and_propagate(&mut trial, next, value) {
                self.extend_endomorphisms(trial, out);
            }
        }
    }

    /// Sets `map[at] = value` and closes the partial map under the forced
    /// consequences `map[a*b] = map[a]*map[b]`. Returns false on conflict.
    fn assign_and_propagate(&self, map: &mut [Option<Elem>], at: Elem, value: Elem) -> bool {
        map[at] = Some(value);
        let mut work = vec![at];
        while let Some(i) = work.pop() {
            let fi = map[i].expect("assigned");
            for j in 0..self.order() {
                let Some(fj) = map[j] else { continue };
                for (a, b, fa, fb) in [(i, j, fi, fj), (j, i, fj, fi)] {
                    let p = self.mul(a, b);
                    let v = self.mul(fa, fb);
                    match map[p] {
                        Some(existing) if existing != v => return false,
                        Some(_) => {}
                        None => {
                            map[p] = Some(v);
                            work.push(p);
                        }
                    }
                }
            }
        }
        true
    }

    /// The bijective endomorphisms, in the same order as [`Self::endomorphisms`].
    pub fn automorphisms(&self) -> Vec<GroupMap> {
        self.endomorphisms()
            .into_iter()
            .filter(|m| m.kind() == MapKind::Automorphism)
            .collect()
    }
}

/// A subgroup of some [`FiniteGroup`], with membership flags over the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Elem>,
    contains: Vec<bool>,
}

impl Subgroup {
    /// Members in the order they were produced.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// Members sorted by element index.
    pub fn sorted_members(&self) -> Vec<Elem> {
        (0..self.contains.len()).filter(|&g| self.contains[g]).collect()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.contains.get(g).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the subgroup is the whole parent group.
    pub fn is_whole(&self) -> bool {
        self.members.len() == self.contains.len()
    }

    /// Same member set, regardless of listing order.
    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.contains == other.contains
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// Defined on a proper subgroup only.
    PartialHomomorphism,
    Endomorphism,
    Automorphism,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::PartialHomomorphism => "partial-homomorphism",
            MapKind::Endomorphism => "endomorphism",
            MapKind::Automorphism => "automorphism",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("image table has {len} entries for a group of order {order}")]
    Length { len: usize, order: usize },
    #[error("image of {element} is not an element index")]
    ImageOutOfRange { element: Elem },
    #[error("domain is not a subgroup (missing product or inverse of {element})")]
    DomainNotSubgroup { element: Elem },
    #[error("phi({a}*{b}) != phi({a})*phi({b})")]
    NotHomomorphic { a: Elem, b: Elem },
}

/// A homomorphism from a subgroup of `G` into `G`.
///
/// `images[g]` is `None` outside the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupMap {
    images: Vec<Option<Elem>>,
    kind: MapKind,
}

impl GroupMap {
    /// Checks that the domain is a subgroup and the law holds on it, then
    /// classifies the map.
    pub fn new(group: &FiniteGroup, images: Vec<Option<Elem>>) -> Result<Self, MapError> {
        let order = group.order();
        if images.len() != order {
            return Err(MapError::Length { len: images.len(), order });
        }
        if let Some(element) = (0..order).find(|&g| images[g].is_some_and(|v| v >= order)) {
            return Err(MapError::ImageOutOfRange { element });
        }
        let domain: Vec<Elem> = (0..order).filter(|&g| images[g].is_some()).collect();
        if images[group.identity()].is_none() {
            return Err(MapError::DomainNotSubgroup { element: group.identity() });
        }
        for &a in &domain {
            if images[group.inv(a)].is_none() {
                return Err(MapError::DomainNotSubgroup { element: a });
            }
            for &b in &domain {
                match images[group.mul(a, b)] {
                    None => return Err(MapError::DomainNotSubgroup { element: a }),
                    Some(ab) => {
                        let (fa, fb) = (images[a].unwrap(), images[b].unwrap());
                        if ab != group.mul(fa, fb) {
                            return Err(MapError::NotHomomorphic { a, b });
                        }
                    }
                }
            }
        }
        if domain.len() == order {
            let total = images.into_iter().map(Option::unwrap).collect();
            Ok(Self::classified_total(group, total))
        } else {
            Ok(Self { images, kind: MapKind::PartialHomomorphism })
        }
    }

    fn classified_total(group: &FiniteGroup, images: Vec<Elem>) -> Self {
        let mut hit = vec![false; group.order()];
        for &v in &images {
            hit[v] = true;
        }
        let kind = if hit.iter().all(|&h| h) {
            MapKind::Automorphism
        } else {
            MapKind::Endomorphism
        };
        Self { images: images.into_iter().map(Some).collect(), kind }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Self::classified_total(group, (0..group.order()).collect())
    }

    /// Sends every element to the identity.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::classified_total(group, vec![group.identity(); group.order()])
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn apply(&self, g: Elem) -> Option<Elem> {
        self.images.get(g).copied().flatten()
    }

    pub fn images(&self) -> &[Option<Elem>] {
        &self.images
    }

    /// Domain elements in index order.
    pub fn domain(&self) -> Vec<Elem> {
        (0..self.images.len()).filter(|&g| self.images[g].is_some()).collect()
    }

    pub fn is_total(&self) -> bool {
        self.kind != MapKind::PartialHomomorphism
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, v)| *v == Some(g))
    }

    /// `self ∘ inner`, defined where `inner` is defined and lands in the
    /// domain of `self`.
    pub fn compose(&self, group: &FiniteGroup, inner: &GroupMap) -> GroupMap {
        let images = inner.images.iter().map(|v| v.and_then(|x| self.apply(x))).collect();
        GroupMap::new(group, images).expect("composite of homomorphisms is a homomorphism")
    }

    /// Two-sided inverse of an automorphism.
    pub fn inverse(&self, group: &FiniteGroup) -> Option<GroupMap> {
        if self.kind != MapKind::Automorphism {
            return None;
        }
        let mut inv = vec![None; self.images.len()];
        for (g, v) in self.images.iter().enumerate() {
            inv[v.unwrap()] = Some(g);
        }
        Some(GroupMap::new(group, inv).expect("inverse automorphism"))
    }
}
