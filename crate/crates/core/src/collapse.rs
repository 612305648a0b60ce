//! Laver collapses, `Col(mu, kappa)` and its ordinal-domain dense part.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{is_easton, CardinalFrame, Stage};
use crate::poset::FinitePoset;

/// Largest poset the enumerators will build.
pub const MAX_ENUMERATION: usize = 2_000_000;

/// A partial function on naturals.
pub type PartialFn = BTreeMap<usize, usize>;

/// A Laver collapse condition: stage ↦ partial function. A stage mapped to the
/// empty function is different from an absent stage.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaverCondition {
    entries: BTreeMap<Stage, PartialFn>,
}

impl LaverCondition {
    pub fn new(entries: BTreeMap<Stage, PartialFn>) -> Self {
        LaverCondition { entries }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &BTreeMap<Stage, PartialFn> {
        &self.entries
    }

    pub fn entry(&self, stage: Stage) -> Option<&PartialFn> {
        self.entries.get(&stage)
    }

    pub fn stages(&self) -> BTreeSet<Stage> {
        self.entries.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self <= other`: every entry of `other` is contained in the matching entry of `self`.
    pub fn extends(&self, other: &LaverCondition) -> bool {
        other.entries.iter().all(|(stage, g)| {
            self.entries
                .get(stage)
                .is_some_and(|f| g.iter().all(|(k, v)| f.get(k) == Some(v)))
        })
    }

    /// Least `ξ` bounding every entry domain.
    pub fn domain_bound(&self) -> usize {
        self.entries
            .values()
            .filter_map(|f| f.keys().next_back())
            .map(|&k| k + 1)
            .max()
            .unwrap_or(0)
    }

    /// Keeps only the stages satisfying `keep`.
    pub fn restricted(&self, keep: impl Fn(Stage) -> bool) -> LaverCondition {
        LaverCondition {
            entries: self
                .entries
                .iter()
                .filter(|(&s, _)| keep(s))
                .map(|(&s, f)| (s, f.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for LaverCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (stage, g)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{stage}↦{g:?}")?;
        }
        write!(f, "}}")
    }
}

/// Stages, domain bound and per-stage alphabet of a Laver poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaverShape {
    pub stages: Vec<Stage>,
    /// Entry domains are subsets of `[0, domain_bound)`.
    pub domain_bound: usize,
    pub alphabet: BTreeMap<Stage, usize>,
}

impl LaverShape {
    /// The shape of `L(lower, upper)` over a frame: regular stages strictly
    /// between the parameters, domains below some `ξ < lower`.
    pub fn between(frame: &CardinalFrame, lower: Stage, upper: Stage) -> Result<Self> {
        for s in [lower, upper] {
            if !(frame.is_regular(s) || s == frame.lambda_top()) {
                return Err(Error::ParameterNotRegular(s));
            }
        }
        if lower >= upper || lower == 0 {
            return Err(Error::BadInterval { lower, upper });
        }
        let stages = frame.regulars_between(lower, upper);
        let alphabet = stages
            .iter()
            .map(|&s| {
                frame
                    .alphabet_at(s)
                    .map(|a| (s, a))
                    .ok_or(Error::MissingAlphabet(s))
            })
            .collect::<Result<_>>()?;
        Ok(LaverShape {
            stages,
            domain_bound: lower - 1,
            alphabet,
        })
    }

    /// Number of conditions, by the closed form `∏ (1 + (a + 1)^bound)`.
    pub fn size(&self) -> Option<usize> {
        self.stages.iter().try_fold(1usize, |acc, s| {
            let per = (self.alphabet[s] + 1).checked_pow(self.domain_bound as u32)?;
            acc.checked_mul(per + 1)
        })
    }

    /// Whether `c` is a condition of this shape.
    pub fn admits(&self, c: &LaverCondition, frame: &CardinalFrame) -> bool {
        is_easton(&c.stages(), frame)
            && c.entries.iter().all(|(s, f)| {
                self.alphabet
                    .get(s)
                    .is_some_and(|&a| f.iter().all(|(&k, &v)| k < self.domain_bound && v < a))
            })
    }
}

/// All partial functions from `[0, len)` into `[0, alphabet)`.
pub fn partial_functions(len: usize, alphabet: usize) -> Vec<PartialFn> {
    let mut out = vec![PartialFn::new()];
    for k in 0..len {
        let mut next = Vec::with_capacity(out.len() * (alphabet + 1));
        for f in &out {
            next.push(f.clone());
            for v in 0..alphabet {
                let mut g = f.clone();
                g.insert(k, v);
                next.push(g);
            }
        }
        out = next;
    }
    out
}

/// All conditions of a shape, ordered by `(domain set, entries)`; the empty
/// condition comes first and is the top.
pub fn enumerate_laver(shape: &LaverShape, frame: &CardinalFrame) -> Result<Vec<LaverCondition>> {
    let size = shape.size().unwrap_or(usize::MAX);
    if size > MAX_ENUMERATION {
        return Err(Error::CapExceeded {
            size,
            cap: MAX_ENUMERATION,
        });
    }
    let mut conds = vec![LaverCondition::empty()];
    for &stage in &shape.stages {
        let options = partial_functions(shape.domain_bound, shape.alphabet[&stage]);
        let mut next = Vec::with_capacity(conds.len() * (options.len() + 1));
        for c in &conds {
            next.push(c.clone());
            for f in &options {
                let mut d = c.clone();
                d.entries.insert(stage, f.clone());
                next.push(d);
            }
        }
        conds = next;
    }
    conds.retain(|c| is_easton(&c.stages(), frame));
    conds.sort_by(|a, b| (a.stages(), a).cmp(&(b.stages(), b)));
    Ok(conds)
}

pub fn build_laver_shape(
    shape: &LaverShape,
    frame: &CardinalFrame,
) -> Result<FinitePoset<LaverCondition>> {
    FinitePoset::new(enumerate_laver(shape, frame)?, LaverCondition::extends)
}

/// `L(lower, upper)` over the frame.
pub fn build_laver(
    frame: &CardinalFrame,
    lower: Stage,
    upper: Stage,
) -> Result<FinitePoset<LaverCondition>> {
    build_laver_shape(&LaverShape::between(frame, lower, upper)?, frame)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Below,
    AtAndAbove,
}

/// Conditions whose stages all lie on one side of `cut`, with the induced order.
pub fn restrict_laver(
    frame: &CardinalFrame,
    poset: &FinitePoset<LaverCondition>,
    cut: Stage,
    side: Side,
) -> Result<(FinitePoset<LaverCondition>, Vec<usize>)> {
    if !frame.is_regular(cut) {
        return Err(Error::ParameterNotRegular(cut));
    }
    poset.restrict(|c| {
        c.entries.keys().all(|&s| match side {
            Side::Below => s < cut,
            Side::AtAndAbove => s >= cut,
        })
    })
}

/// A `Col(mu, kappa)` condition: a partial function from `[0, mu)` with fewer
/// than `mu` points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColCondition {
    pub assignments: PartialFn,
}

impl ColCondition {
    pub fn extends(&self, other: &ColCondition) -> bool {
        other
            .assignments
            .iter()
            .all(|(k, v)| self.assignments.get(k) == Some(v))
    }
}

/// A `Col` condition whose domain is an initial segment `[0, len)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdinalColCondition {
    values: Vec<usize>,
}

impl OrdinalColCondition {
    pub fn new(values: Vec<usize>) -> Self {
        OrdinalColCondition { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn extends(&self, other: &OrdinalColCondition) -> bool {
        self.values.starts_with(&other.values)
    }

    pub fn as_col(&self) -> ColCondition {
        ColCondition {
            assignments: self.values.iter().copied().enumerate().collect(),
        }
    }
}

impl fmt::Display for OrdinalColCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

pub fn build_col(frame: &CardinalFrame) -> Result<FinitePoset<ColCondition>> {
    let mu = frame.mu();
    let mut conds: Vec<ColCondition> = partial_functions(mu, frame.col_alphabet())
        .into_iter()
        .filter(|f| f.len() < mu)
        .map(|assignments| ColCondition { assignments })
        .collect();
    conds.sort_by(|a, b| {
        let ka: Vec<usize> = a.assignments.keys().copied().collect();
        let kb: Vec<usize> = b.assignments.keys().copied().collect();
        (ka.len(), ka, a).cmp(&(kb.len(), kb, b))
    });
    FinitePoset::new(conds, ColCondition::extends)
}

/// All ordinal-domain conditions of length `< mu`, shortest first.
pub fn enumerate_col_dense(frame: &CardinalFrame) -> Vec<OrdinalColCondition> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 1..frame.mu() {
        layer = layer
            .iter()
            .flat_map(|p: &Vec<usize>| {
                (0..frame.col_alphabet()).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.into_iter().map(OrdinalColCondition::new).collect()
}

pub fn build_col_dense(frame: &CardinalFrame) -> Result<FinitePoset<OrdinalColCondition>> {
    FinitePoset::new(enumerate_col_dense(frame), OrdinalColCondition::extends)
}

/// Index in `col` of every element of `dense`.
pub fn col_dense_inclusion(
    col: &FinitePoset<ColCondition>,
    dense: &FinitePoset<OrdinalColCondition>,
) -> Vec<usize> {
    dense
        .elements()
        .iter()
        .map(|p| {
            let c = p.as_col();
            col.elements()
                .iter()
                .position(|x| *x == c)
                .expect("dense conditions lie in Col")
        })
        .collect()
}
