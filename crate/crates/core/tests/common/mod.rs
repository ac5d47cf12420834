//! Unoptimized reimplementations of the definitions, used to cross-check the
//! library. Functions are plain value vectors and point sets are `u64`
//! masks; nothing here calls into the library's checks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use sephom::FiniteGroup;

pub type Values = Vec<usize>;

/// Closes `gens` under pointwise products, starting from the identity.
pub fn naive_span(group: &FiniteGroup, n: usize, gens: &[Values]) -> Vec<Values> {
    let mut set: BTreeSet<Values> = BTreeSet::from([vec![group.identity(); n]]);
    loop {
        let mut next = set.clone();
        for f in &set {
            for g in gens {
                next.insert(f.iter().zip(g).map(|(&a, &b)| group.mul(a, b)).collect());
            }
        }
        if next.len() == set.len() {
            return set.into_iter().collect();
        }
        set = next;
    }
}

pub fn zero_mask(group: &FiniteGroup, f: &[usize]) -> u64 {
    f.iter()
        .enumerate()
        .filter(|&(_, &v)| v == group.identity())
        .fold(0, |m, (x, _)| m | 1 << x)
}

pub fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Smallest family containing `sets` and closed under pairwise union and
/// intersection, sorted by (cardinality, mask).
pub fn naive_closure(sets: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut fam: BTreeSet<u64> = sets.into_iter().collect();
    loop {
        let mut next = fam.clone();
        for &a in &fam {
            for &b in &fam {
                next.insert(a | b);
                next.insert(a & b);
            }
        }
        if next.len() == fam.len() {
            break;
        }
        fam = next;
    }
    fam.into_iter().sorted_by_key(|&s| (s.count_ones(), s)).collect()
}

/// First ordered pair `(x1, x2)` with no `f` having `f(x1) != e = f(x2)`.
pub fn naive_separates(group: &FiniteGroup, n: usize, elems: &[Values]) -> Option<(usize, usize)> {
    let e = group.identity();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .find(|&(a, b)| !elems.iter().any(|f| f[a] != e && f[b] == e))
}

/// First unordered pair with no `f1, f2` of disjoint cozeros, `xi ∈ coz(fi)`.
pub fn naive_strongly_separates(group: &FiniteGroup, n: usize, elems: &[Values]) -> Option<(usize, usize)> {
    let e = group.identity();
    let coz = |f: &Values| full_mask(n) & !zero_mask(group, f);
    (0..n).tuple_combinations().find(|&(a, b)| {
        !elems.iter().any(|f1| {
            f1[a] != e && elems.iter().any(|f2| f2[b] != e && coz(f1) & coz(f2) == 0)
        })
    })
}

/// First point where the evaluation image is not all of `G`.
pub fn naive_dense(group: &FiniteGroup, n: usize, elems: &[Values]) -> Option<usize> {
    (0..n).find(|&x| elems.iter().map(|f| f[x]).collect::<BTreeSet<_>>().len() != group.order())
}

/// Whether the triple `(f, D1, D2)` has a witnessing `(U, g)`.
pub fn naive_control_triple(group: &FiniteGroup, n: usize, elems: &[Values], f: &Values, d1: u64, d2: u64) -> bool {
    let e = group.identity();
    let cozeros = naive_closure(elems.iter().map(|g| full_mask(n) & !zero_mask(group, g)));
    let zf = zero_mask(group, f);
    cozeros.iter().any(|&u| {
        d1 & !u == 0
            && u & d2 == 0
            && elems.iter().any(|g| {
                (0..n).all(|x| {
                    let bit = 1u64 << x;
                    (d1 & bit == 0 || g[x] == f[x]) && ((zf | (full_mask(n) & !u)) & bit == 0 || g[x] == e)
                })
            })
    })
}

/// First `(f, D1, D2)` in (element, closure, closure) order without a witness.
pub fn naive_controllable(group: &FiniteGroup, n: usize, elems: &[Values]) -> Option<(Values, u64, u64)> {
    let zeros = naive_closure(elems.iter().map(|f| zero_mask(group, f)));
    for f in elems {
        for &d1 in &zeros {
            for &d2 in zeros.iter().filter(|&&d2| d1 & d2 == 0) {
                if !naive_control_triple(group, n, elems, f, d1, d2) {
                    return Some((f.clone(), d1, d2));
                }
            }
        }
    }
    None
}

/// Every permutation of the elements that respects the multiplication.
pub fn naive_automorphisms(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    (0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|a| (0..n).all(|b| p[group.mul(a, b)] == group.mul(p[a], p[b]))))
        .collect()
}

/// Inclusion-minimal sets `S` such that every `f` vanishing on `S` has
/// `phi(f) = e`, listed by (cardinality, mask).
pub fn naive_minimal_supports(group: &FiniteGroup, n: usize, elems: &[Values], phi: &[usize]) -> Vec<u64> {
    let e = group.identity();
    let is_support = |s: u64| {
        elems
            .iter()
            .zip(phi)
            .all(|(f, &v)| s & !zero_mask(group, f) != 0 || v == e)
    };
    let supports: Vec<u64> = (0..1u64 << n).filter(|&s| is_support(s)).collect();
    supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&t| t != s && t & !s == 0))
        .sorted_by_key(|&s| (s.count_ones(), s))
        .collect()
}

/// All subgroups of `C(X, Z2)` for `|X| = n`, as element lists; each comes
/// with a basis. Subsets of the `2^n` functions are scanned exhaustively.
pub fn z2_subgroups(n: usize) -> Vec<(Vec<Values>, Vec<Values>)> {
    assert!(n <= 3, "2^(2^n) subsets");
    let size = 1usize << n;
    let to_values = |m: usize| (0..n).map(|x| (m >> x) & 1).collect::<Values>();
    let mut out = Vec::new();
    for subset in 0u64..1 << size {
        let members: Vec<usize> = (0..size).filter(|&m| subset >> m & 1 == 1).collect();
        if !members.contains(&0) {
            continue;
        }
        if !members.iter().all(|&a| members.iter().all(|&b| members.contains(&(a ^ b)))) {
            continue;
        }
        let mut basis: Vec<usize> = Vec::new();
        let mut span: BTreeSet<usize> = BTreeSet::from([0]);
        for &m in &members {
            if !span.contains(&m) {
                basis.push(m);
                span = span.iter().flat_map(|&s| [s, s ^ m]).collect();
            }
        }
        out.push((members.into_iter().map(to_values).collect(), basis.into_iter().map(to_values).collect()));
    }
    out
}
