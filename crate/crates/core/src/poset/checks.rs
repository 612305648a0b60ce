//! Exhaustive structural checkers. Failures are data: every clause reports
//! either a pass or the least counterexample under index order.

use std::fmt;

use rayon::prelude::*;

use super::{census, Filter, FinitePoset, OrderMap};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Vec<usize>),
    Skip(String),
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    fn from_counterexample(ce: Option<Vec<usize>>) -> Self {
        ce.map_or(Outcome::Pass, Outcome::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub clauses: Vec<Clause>,
}

impl Verification {
    fn push(&mut self, name: &'static str, outcome: Outcome) {
        self.clauses.push(Clause { name, outcome });
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.outcome.is_pass())
    }

    pub fn clause(&self, name: &str) -> Option<&Outcome> {
        self.clauses
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.outcome)
    }

    /// First failing clause with its counterexample.
    pub fn counterexample(&self) -> Option<(&'static str, &[usize])> {
        self.clauses.iter().find_map(|c| match &c.outcome {
            Outcome::Fail(ce) => Some((c.name, ce.as_slice())),
            _ => None,
        })
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "{}: PASS", c.name)?,
                Outcome::Fail(ce) => writeln!(f, "{}: FAIL {:?}", c.name, ce)?,
                Outcome::Skip(why) => writeln!(f, "{}: SKIP ({})", c.name, why)?,
            }
        }
        Ok(())
    }
}

/// Least `i` in `0..n` (with its witness) for which `f` reports a counterexample.
/// The parallel search returns the same answer as a sequential scan.
fn first_counterexample<F>(n: usize, f: F) -> Option<Vec<usize>>
where
    F: Fn(usize) -> Option<Vec<usize>> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(f)
}

fn order_preserving<S: Sync, T: Sync>(m: &OrderMap<'_, S, T>) -> Outcome {
    let (src, tgt) = (m.source, m.target);
    Outcome::from_counterexample(first_counterexample(src.len(), |x| {
        src.above(x)
            .iter()
            .find(|&y| !tgt.leq(m.apply(x), m.apply(y)))
            .map(|y| vec![x, y])
    }))
}

/// `pre_below[p]` = { s : m(s) <= p }.
fn preimage_of_cones<S, T>(m: &OrderMap<'_, S, T>) -> Vec<BitSet> {
    let mut pre = vec![BitSet::new(m.source.len()); m.target.len()];
    for s in 0..m.source.len() {
        for p in m.target.above(m.apply(s)).iter() {
            pre[p].insert(s);
        }
    }
    pre
}

/// Checks order preservation, `m(top) = top`, and the projection law: whenever
/// `p <= m(q)` there is `q' <= q` with `m(q') <= p`.
pub fn check_projection<S: Sync, T: Sync>(m: &OrderMap<'_, S, T>) -> Verification {
    let (src, tgt) = (m.source, m.target);
    let mut v = Verification::default();
    v.push("order_preserving", order_preserving(m));
    v.push(
        "top_preserving",
        if m.apply(src.top()) == tgt.top() {
            Outcome::Pass
        } else {
            Outcome::Fail(vec![src.top()])
        },
    );
    let pre = preimage_of_cones(m);
    v.push(
        "projection_law",
        Outcome::from_counterexample(first_counterexample(src.len(), |q| {
            tgt.below(m.apply(q))
                .iter()
                .find(|&p| !src.below(q).intersects(&pre[p]))
                .map(|p| vec![q, p])
        })),
    );
    v
}

/// Checks `x <= y ⇔ m(x) <= m(y)`, injectivity, and density of the range.
pub fn check_dense_embedding<S: Sync, T: Sync>(m: &OrderMap<'_, S, T>) -> Verification {
    let (src, tgt) = (m.source, m.target);
    let n = src.len();
    let mut v = Verification::default();
    v.push(
        "order_isomorphism",
        Outcome::from_counterexample(first_counterexample(n, |x| {
            (0..n)
                .find(|&y| src.leq(x, y) != tgt.leq(m.apply(x), m.apply(y)))
                .map(|y| vec![x, y])
        })),
    );
    v.push(
        "injective",
        Outcome::from_counterexample(first_counterexample(n, |x| {
            (x + 1..n)
                .find(|&y| m.apply(x) == m.apply(y))
                .map(|y| vec![x, y])
        })),
    );
    let range = BitSet::from_indices(tgt.len(), m.map.iter().copied());
    v.push(
        "dense_range",
        Outcome::from_counterexample(first_counterexample(tgt.len(), |t| {
            (!tgt.below(t).intersects(&range)).then(|| vec![t])
        })),
    );
    v
}

/// Checks order preservation, preservation of incompatibility, and that every
/// target condition has a reduction: some `s` such that every `s' <= s` maps to
/// something compatible with it. For finite posets this is equivalent to
/// preserving maximal antichains.
pub fn check_complete_embedding<S: Sync, T: Sync>(m: &OrderMap<'_, S, T>) -> Verification {
    let (src, tgt) = (m.source, m.target);
    let n = src.len();
    let mut v = Verification::default();
    v.push("order_preserving", order_preserving(m));
    v.push(
        "incompatibility_preserving",
        Outcome::from_counterexample(first_counterexample(n, |x| {
            (x + 1..n)
                .find(|&y| !src.compatible(x, y) && tgt.compatible(m.apply(x), m.apply(y)))
                .map(|y| vec![x, y])
        })),
    );
    v.push(
        "reduction",
        Outcome::from_counterexample(first_counterexample(tgt.len(), |t| {
            let good = BitSet::from_indices(n, (0..n).filter(|&s| tgt.compatible(m.apply(s), t)));
            (!(0..n).any(|s| src.below(s).is_subset(&good))).then(|| vec![t])
        })),
    );
    v
}

/// Direct check that the image of every maximal antichain of the source is a
/// maximal antichain of the target. Exponential; skipped above `cap` elements.
pub fn preserves_maximal_antichains<S, T>(m: &OrderMap<'_, S, T>, cap: usize) -> Verification {
    let mut v = Verification::default();
    if m.source.len() > cap {
        v.push(
            "maximal_antichains_preserved",
            Outcome::Skip(format!("source size {} > {cap}", m.source.len())),
        );
        return v;
    }
    let tgt = m.target;
    let antichains = census::maximal_antichains(m.source);
    let ce = antichains.into_iter().find(|a| {
        let image: Vec<usize> = a.iter().map(|&s| m.apply(s)).collect();
        let pairwise = image.iter().enumerate().all(|(i, &x)| {
            image[i + 1..]
                .iter()
                .all(|&y| x == y || !tgt.compatible(x, y))
        });
        let maximal = (0..tgt.len()).all(|t| image.iter().any(|&x| tgt.compatible(x, t)));
        !(pairwise && maximal)
    });
    v.push(
        "maximal_antichains_preserved",
        Outcome::from_counterexample(ce),
    );
    v
}

/// Upper bound on the number of subsets [`check_directed_closed`] inspects.
pub const DIRECTED_SUBSET_BUDGET: u64 = 5_000_000;

/// Every downward-directed subset of size `< bound` has a lower bound in `P`.
pub fn check_directed_closed<T>(poset: &FinitePoset<T>, bound: usize) -> Verification {
    let mut v = Verification::default();
    let n = poset.len();
    let max_size = bound.saturating_sub(1).min(n);
    let total: u64 = (2..=max_size).map(|k| binomial(n as u64, k as u64)).sum();
    if total > DIRECTED_SUBSET_BUDGET {
        v.push(
            "directed_subsets_bounded",
            Outcome::Skip(format!("{total} subsets exceed budget")),
        );
        return v;
    }
    let mut ce = None;
    for k in 2..=max_size {
        let mut current = Vec::with_capacity(k);
        if let Some(found) = first_bad_subset(poset, k, 0, &mut current) {
            ce = Some(found);
            break;
        }
    }
    v.push("directed_subsets_bounded", Outcome::from_counterexample(ce));
    v
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn first_bad_subset<T>(
    poset: &FinitePoset<T>,
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if current.len() == k {
        let members = BitSet::from_indices(poset.len(), current.iter().copied());
        let directed = current.iter().all(|&x| {
            current.iter().all(|&y| {
                let mut c = poset.below(x).clone();
                c.intersect_with(poset.below(y));
                c.intersects(&members)
            })
        });
        if !directed {
            return None;
        }
        let mut common = BitSet::full(poset.len());
        for &x in current.iter() {
            common.intersect_with(poset.below(x));
        }
        return common.is_empty().then(|| current.clone());
    }
    for x in start..poset.len() {
        current.push(x);
        let found = first_bad_subset(poset, k, x + 1, current);
        current.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// An order map that has passed [`check_projection`].
#[derive(Debug)]
pub struct Projection<'a, S, T> {
    map: OrderMap<'a, S, T>,
}

impl<'a, S: Sync, T: Sync> Projection<'a, S, T> {
    pub fn verify(map: OrderMap<'a, S, T>) -> Result<Self> {
        let v = check_projection(&map);
        match v.counterexample() {
            None => Ok(Projection { map }),
            Some((clause, ce)) => Err(Error::NotAProjection {
                clause,
                counterexample: ce.to_vec(),
            }),
        }
    }
}

impl<'a, S, T> Projection<'a, S, T> {
    pub fn map(&self) -> &OrderMap<'a, S, T> {
        &self.map
    }

    /// Upward closure of `m[H]`; asserted to be generic in the target.
    pub fn image_generic(&self, h: &Filter) -> Result<Filter> {
        let (src, tgt) = (self.map.source, self.map.target);
        if !h.is_generic(src) {
            return Err(Error::NotAGeneric);
        }
        let mut members = BitSet::new(tgt.len());
        for x in h.members.iter() {
            members.union_with(tgt.above(self.map.apply(x)));
        }
        let image = Filter { members };
        if !image.is_generic(tgt) {
            return Err(Error::ImageNotGeneric);
        }
        Ok(image)
    }

    /// The sub-poset of the source on `m⁻¹[G]`, with the source index of each element.
    pub fn quotient_poset(&self, g: &Filter) -> Result<(FinitePoset<S>, Vec<usize>)>
    where
        S: Clone,
    {
        let (src, tgt) = (self.map.source, self.map.target);
        if !g.is_generic(tgt) {
            return Err(Error::NotAGeneric);
        }
        let idx: Vec<usize> = (0..src.len())
            .filter(|&s| g.contains(self.map.apply(s)))
            .collect();
        if idx.is_empty() {
            return Err(Error::EmptyQuotient);
        }
        Ok((src.induced(&idx)?, idx))
    }
}

pub fn image_generic<S: Sync, T: Sync>(m: &OrderMap<'_, S, T>, h: &Filter) -> Result<Filter> {
    Projection::verify(m.clone())?.image_generic(h)
}

pub fn quotient_poset<S: Sync + Clone, T: Sync>(
    m: &OrderMap<'_, S, T>,
    g: &Filter,
) -> Result<(FinitePoset<S>, Vec<usize>)> {
    Projection::verify(m.clone())?.quotient_poset(g)
}
