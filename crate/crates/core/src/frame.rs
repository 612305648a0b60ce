//! Cardinal frames: the finite stand-in for `mu < kappa < lambda` together with
//! the designated regular stages and the value alphabets of every coordinate.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A stage is a natural number playing the role of an ordinal below the frame top.
pub type Stage = usize;

/// Unvalidated frame description, as read from a frame file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawFrame {
    pub stage_count: usize,
    pub regulars: BTreeSet<Stage>,
    pub mu: Stage,
    pub kappa: Stage,
    pub lambda_top: Stage,
    pub alphabet: BTreeMap<Stage, usize>,
    pub col_alphabet: usize,
}

/// A validated cardinal frame. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalFrame {
    stage_count: usize,
    regulars: BTreeSet<Stage>,
    mu: Stage,
    kappa: Stage,
    lambda_top: Stage,
    alphabet: BTreeMap<Stage, usize>,
    col_alphabet: usize,
    max_club_top: usize,
}

impl CardinalFrame {
    pub fn stage_count(&self) -> usize {
        self.stage_count
    }

    pub fn regulars(&self) -> &BTreeSet<Stage> {
        &self.regulars
    }

    pub fn mu(&self) -> Stage {
        self.mu
    }

    pub fn kappa(&self) -> Stage {
        self.kappa
    }

    pub fn lambda_top(&self) -> Stage {
        self.lambda_top
    }

    pub fn col_alphabet(&self) -> usize {
        self.col_alphabet
    }

    pub fn alphabet(&self) -> &BTreeMap<Stage, usize> {
        &self.alphabet
    }

    /// Largest reachable `sup` of a club code: `mu - 1` steps of width at most
    /// `col_alphabet`. This is the size of the abstract copy of "below kappa"
    /// in which club codes and the upper collapse's function domains live.
    pub fn max_club_top(&self) -> usize {
        self.max_club_top
    }

    pub fn is_regular(&self, stage: Stage) -> bool {
        self.regulars.contains(&stage)
    }

    /// Value-set size at a coordinate. The kappa coordinate carries the
    /// `Col(mu, kappa)` alphabet.
    pub fn alphabet_at(&self, stage: Stage) -> Option<usize> {
        if stage == self.kappa {
            Some(self.col_alphabet)
        } else {
            self.alphabet.get(&stage).copied()
        }
    }

    /// Regular stages strictly between `lower` and `upper`.
    pub fn regulars_between(&self, lower: Stage, upper: Stage) -> Vec<Stage> {
        self.regulars
            .iter()
            .copied()
            .filter(|&s| lower < s && s < upper)
            .collect()
    }

    /// Regular stages in `(kappa, lambda_top)`.
    pub fn upper_stages(&self) -> Vec<Stage> {
        self.regulars_between(self.kappa, self.lambda_top)
    }

    /// Regular stages in `(mu, kappa)`.
    pub fn lower_stages(&self) -> Vec<Stage> {
        self.regulars_between(self.mu, self.kappa)
    }

    pub fn to_raw(&self) -> RawFrame {
        RawFrame {
            stage_count: self.stage_count,
            regulars: self.regulars.clone(),
            mu: self.mu,
            kappa: self.kappa,
            lambda_top: self.lambda_top,
            alphabet: self.alphabet.clone(),
            col_alphabet: self.col_alphabet,
        }
    }
}

pub fn validate_frame(raw: &RawFrame) -> Result<CardinalFrame> {
    let &RawFrame {
        stage_count,
        mu,
        kappa,
        lambda_top,
        col_alphabet,
        ..
    } = raw;

    if mu == 0 {
        return Err(Error::OrderingViolation("mu must be positive".into()));
    }
    if mu >= kappa {
        return Err(Error::OrderingViolation(format!(
            "mu = {mu} >= kappa = {kappa}"
        )));
    }
    if kappa >= lambda_top {
        return Err(Error::OrderingViolation(format!(
            "kappa = {kappa} >= lambda = {lambda_top}"
        )));
    }
    if lambda_top > stage_count {
        return Err(Error::OrderingViolation(format!(
            "lambda = {lambda_top} > stages = {stage_count}"
        )));
    }
    if let Some(&s) = raw.regulars.iter().find(|&&s| s >= stage_count) {
        return Err(Error::StageOutOfRange {
            stage: s,
            stage_count,
        });
    }
    for (name, stage) in [("mu", mu), ("kappa", kappa)] {
        if !raw.regulars.contains(&stage) {
            return Err(Error::NonRegularStage { name, stage });
        }
    }
    if col_alphabet == 0 {
        return Err(Error::ZeroAlphabet("col_alphabet".into()));
    }
    for (&stage, &size) in &raw.alphabet {
        if !raw.regulars.contains(&stage) {
            return Err(Error::AlphabetOnNonRegular(stage));
        }
        if stage == kappa {
            return Err(Error::AlphabetOnKappa(stage));
        }
        if size == 0 {
            return Err(Error::ZeroAlphabet(format!("stage {stage}")));
        }
    }
    if let Some(&missing) = raw
        .regulars
        .iter()
        .find(|&&s| mu < s && s < lambda_top && s != kappa && !raw.alphabet.contains_key(&s))
    {
        return Err(Error::MissingAlphabet(missing));
    }

    let max_club_top = (mu - 1)
        .checked_mul(col_alphabet)
        .ok_or_else(|| Error::OrderingViolation("max_club_top overflows".into()))?;

    Ok(CardinalFrame {
        stage_count,
        regulars: raw.regulars.clone(),
        mu,
        kappa,
        lambda_top,
        alphabet: raw.alphabet.clone(),
        col_alphabet,
        max_club_top,
    })
}

/// `X` is Easton when for every regular stage `alpha`, the supremum of
/// `X ∩ [0, alpha)` lies below `alpha`. An empty intersection satisfies the bound.
pub fn is_easton(set: &BTreeSet<Stage>, frame: &CardinalFrame) -> bool {
    frame
        .regulars
        .iter()
        .all(|&alpha| match set.range(..alpha).next_back() {
            None => true,
            Some(&sup) => sup < alpha,
        })
}
