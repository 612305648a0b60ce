//! Explicit finite posets with a maximal element, and the structural checkers
//! used throughout the crate (projections, dense and complete embeddings,
//! generic filters, quotients).
//!
//! Conditions are ordered the forcing way: stronger conditions are lower, and
//! `leq(x, y)` reads "x extends y".

mod census;
mod checks;
mod iso;
mod separative;

use std::fmt::Debug;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub use census::{antichain_census, AntichainCensus, DEFAULT_CENSUS_CAP};
pub use checks::{
    check_complete_embedding, check_dense_embedding, check_directed_closed, check_projection,
    image_generic, preserves_maximal_antichains, quotient_poset, Clause, Outcome, Projection,
    Verification,
};
pub use iso::{poset_isomorphic, IsoResult, DEFAULT_ISO_BUDGET, DEFAULT_ISO_CAP};
pub use separative::{separative_quotient, SeparativeQuotient};

#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    /// `below[x]` = { z : z <= x }
    below: Vec<BitSet>,
    /// `above[x]` = { z : x <= z }
    above: Vec<BitSet>,
    top: usize,
}

impl<T> FinitePoset<T> {
    /// Builds a poset from elements and an order predicate. The predicate must
    /// be a partial order with a greatest element.
    pub fn new(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = elements.len();
        let mut below = vec![BitSet::new(n); n];
        for (y, by) in below.iter_mut().enumerate() {
            for x in 0..n {
                if leq(&elements[x], &elements[y]) {
                    by.insert(x);
                }
            }
        }
        Self::from_below(elements, below)
    }

    /// Builds from an explicit relation: `below[y]` holds every `x <= y`.
    pub fn from_below(elements: Vec<T>, below: Vec<BitSet>) -> Result<Self> {
        let n = elements.len();
        assert_eq!(below.len(), n);
        for (x, bx) in below.iter().enumerate() {
            if !bx.contains(x) {
                return Err(Error::NotAPartialOrder(format!("not reflexive at {x}")));
            }
        }
        for y in 0..n {
            for x in below[y].iter() {
                if x != y && below[x].contains(y) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not antisymmetric at ({x}, {y})"
                    )));
                }
                if !below[x].is_subset(&below[y]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive through ({x}, {y})"
                    )));
                }
            }
        }
        let mut above = vec![BitSet::new(n); n];
        for (y, b) in below.iter().enumerate() {
            for x in b.iter() {
                above[x].insert(y);
            }
        }
        let top = (0..n)
            .find(|&t| below[t].count() == n)
            .ok_or(Error::NoTop)?;
        Ok(FinitePoset {
            elements,
            below,
            above,
            top,
        })
    }

    /// Collapses a preorder by mutual `<=` and returns the resulting poset
    /// together with the class index of every input element. Each class is
    /// represented by its first member.
    pub fn from_preorder(
        elements: Vec<T>,
        leq: impl Fn(&T, &T) -> bool,
    ) -> Result<(Self, Vec<usize>)>
    where
        T: Clone,
    {
        let n = elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            class_of[x] = c;
            for y in x + 1..n {
                if class_of[y] == usize::MAX
                    && leq(&elements[x], &elements[y])
                    && leq(&elements[y], &elements[x])
                {
                    class_of[y] = c;
                }
            }
        }
        let rep_elems: Vec<T> = reps.iter().map(|&r| elements[r].clone()).collect();
        let poset = FinitePoset::new(rep_elems, leq)?;
        Ok((poset, class_of))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn below(&self, x: usize) -> &BitSet {
        &self.below[x]
    }

    pub fn above(&self, x: usize) -> &BitSet {
        &self.above[x]
    }

    /// True iff `x` and `y` have a common lower bound.
    pub fn compatible(&self, x: usize, y: usize) -> bool {
        self.below[x].intersects(&self.below[y])
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.below[x].count() == 1
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    /// The sub-poset on `indices` (kept in the given order) with the induced order.
    pub fn induced(&self, indices: &[usize]) -> Result<FinitePoset<T>>
    where
        T: Clone,
    {
        if !indices.contains(&self.top) {
            return Err(Error::PredicateExcludesTop);
        }
        let m = indices.len();
        let below = indices
            .iter()
            .map(|&y| {
                BitSet::from_indices(
                    m,
                    indices
                        .iter()
                        .enumerate()
                        .filter(|&(_, &x)| self.leq(x, y))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        let elements = indices.iter().map(|&i| self.elements[i].clone()).collect();
        FinitePoset::from_below(elements, below)
    }

    /// Induced sub-poset on the elements satisfying `keep`; also returns the
    /// source index of every kept element.
    pub fn restrict(&self, keep: impl Fn(&T) -> bool) -> Result<(FinitePoset<T>, Vec<usize>)>
    where
        T: Clone,
    {
        let idx: Vec<usize> = (0..self.len())
            .filter(|&i| keep(&self.elements[i]))
            .collect();
        Ok((self.induced(&idx)?, idx))
    }

    /// Same carrier with elements relabelled.
    pub fn map_elements<U>(&self, f: impl Fn(&T) -> U) -> FinitePoset<U> {
        FinitePoset {
            elements: self.elements.iter().map(f).collect(),
            below: self.below.clone(),
            above: self.above.clone(),
            top: self.top,
        }
    }

    /// Upward cone of `x`.
    pub fn cone(&self, x: usize) -> Filter {
        Filter {
            members: self.above[x].clone(),
        }
    }

    /// Whether `set` meets every dense subset of the poset. Over a finite poset
    /// this holds iff `set` contains a minimal element.
    pub fn meets_every_dense_set(&self, set: &BitSet) -> bool {
        set.iter().any(|x| self.is_minimal(x))
    }

    /// True iff `members` is a filter: contains top, upward closed, downward directed.
    pub fn is_filter(&self, members: &BitSet) -> bool {
        if !members.contains(self.top) {
            return false;
        }
        let ms: Vec<usize> = members.iter().collect();
        ms.iter().all(|&x| self.above[x].is_subset(members))
            && ms.iter().all(|&x| {
                ms.iter().all(|&y| {
                    let mut common = self.below[x].clone();
                    common.intersect_with(&self.below[y]);
                    common.intersect_with(members);
                    !common.is_empty()
                })
            })
    }
}

/// A filter, stored as its member set. The poset it lives in is passed
/// explicitly to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    pub members: BitSet,
}

impl Filter {
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The unique minimal member when the filter is generic over a finite poset.
    pub fn generator<T>(&self, poset: &FinitePoset<T>) -> Option<usize> {
        let mins: Vec<usize> = self
            .members
            .iter()
            .filter(|&x| poset.is_minimal(x))
            .collect();
        match mins.as_slice() {
            [m] if poset.above(*m) == &self.members => Some(*m),
            _ => None,
        }
    }

    pub fn is_generic<T>(&self, poset: &FinitePoset<T>) -> bool {
        self.generator(poset).is_some()
    }
}

/// The generic filters of a finite poset: the upward cones of its minimal
/// elements, in index order of the minimal elements.
pub fn generic_filters<T>(poset: &FinitePoset<T>) -> Vec<Filter> {
    poset
        .minimal_elements()
        .into_iter()
        .map(|m| poset.cone(m))
        .collect()
}

pub fn compatible<T>(poset: &FinitePoset<T>, x: usize, y: usize) -> bool {
    poset.compatible(x, y)
}

/// A total function between the index sets of two posets. Carries no claim;
/// the checkers establish its properties.
#[derive(Debug)]
pub struct OrderMap<'a, S, T> {
    pub source: &'a FinitePoset<S>,
    pub target: &'a FinitePoset<T>,
    pub map: Vec<usize>,
}

impl<S, T> Clone for OrderMap<'_, S, T> {
    fn clone(&self) -> Self {
        OrderMap {
            source: self.source,
            target: self.target,
            map: self.map.clone(),
        }
    }
}

impl<'a, S, T> OrderMap<'a, S, T> {
    pub fn new(source: &'a FinitePoset<S>, target: &'a FinitePoset<T>, map: Vec<usize>) -> Self {
        assert_eq!(map.len(), source.len(), "order map must be total");
        debug_assert!(map.iter().all(|&t| t < target.len()));
        OrderMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(poset: &'a FinitePoset<S>) -> OrderMap<'a, S, S> {
        OrderMap {
            source: poset,
            target: poset,
            map: (0..poset.len()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn with_map(&self, map: Vec<usize>) -> Self {
        OrderMap::new(self.source, self.target, map)
    }
}

/// Coordinatewise product. Element `(i, j)` sits at index `i * |Q| + j`.
pub fn product<A: Clone, B: Clone>(p: &FinitePoset<A>, q: &FinitePoset<B>) -> FinitePoset<(A, B)> {
    let (n, m) = (p.len(), q.len());
    let mut elements = Vec::with_capacity(n * m);
    let mut below = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            elements.push((p.elements[i].clone(), q.elements[j].clone()));
            let mut b = BitSet::new(n * m);
            for x in p.below[i].iter() {
                for y in q.below[j].iter() {
                    b.insert(x * m + y);
                }
            }
            below.push(b);
        }
    }
    FinitePoset::from_below(elements, below).expect("product of posets is a poset")
}

pub fn product_index(q_len: usize, i: usize, j: usize) -> usize {
    i * q_len + j
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// A chain `0 > 1 > ... > n-1` with 0 on top.
    pub fn chain(n: usize) -> FinitePoset<usize> {
        FinitePoset::new((0..n).collect(), |x, y| x >= y).unwrap()
    }

    /// Top (index 0) above `n` incomparable atoms.
    pub fn atoms(n: usize) -> FinitePoset<usize> {
        FinitePoset::new((0..=n).collect(), |x, y| x == y || *y == 0).unwrap()
    }

    /// Subsets of a `k`-set ordered by reverse inclusion (full binary tree-like lattice).
    pub fn reverse_powerset(k: usize) -> FinitePoset<usize> {
        FinitePoset::new((0..1usize << k).collect(), |x, y| x & y == *y).unwrap()
    }

    /// Tree: top 0, children 1 and 2, node 1 has children 3 and 4.
    pub fn small_tree() -> FinitePoset<usize> {
        let parent = [None, Some(0), Some(0), Some(1), Some(1)];
        FinitePoset::new((0..5).collect(), move |&x, &y| {
            let mut cur = Some(x);
            while let Some(c) = cur {
                if c == y {
                    return true;
                }
                cur = parent[c];
            }
            false
        })
        .unwrap()
    }
}
