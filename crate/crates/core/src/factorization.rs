//! Block factorization of the upper Laver collapse over the club code of a
//! collapse condition, the triple map it induces on the full collapse, and
//! the composed projection onto the two-step iteration.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::club::{block_decode, block_encode, block_space, derive_club};
use crate::collapse::{
    build_laver, build_laver_shape, enumerate_col_dense, LaverCondition, LaverShape,
    OrdinalColCondition, PartialFn,
};
use crate::error::{Error, Result};
use crate::frame::{is_easton, CardinalFrame, Stage};
use crate::poset::{
    generic_filters, poset_isomorphic, product, product_index, quotient_poset, separative_quotient,
    Filter, FinitePoset, IsoResult, OrderMap, Outcome,
};
use crate::term::{build_iteration, name_index, Iteration, LaverTermEmbedding};

/// A condition with its `Col` coordinate and, per upper stage, one block
/// index for each block of the derived club.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockIndexedCondition {
    pub col_part: OrdinalColCondition,
    pub upper_part: BTreeMap<Stage, Vec<usize>>,
}

impl BlockIndexedCondition {
    pub fn extends(&self, other: &BlockIndexedCondition) -> bool {
        self.col_part.extends(&other.col_part)
            && other
                .upper_part
                .iter()
                .all(|(s, q)| self.upper_part.get(s).is_some_and(|p| p.starts_with(q)))
    }

    /// Every upper sequence has length `|dom(col_part)|`.
    pub fn is_uniform(&self) -> bool {
        self.upper_part
            .values()
            .all(|q| q.len() == self.col_part.len())
    }

    /// Sequences are no longer than the club and every index fits its block.
    pub fn check_blocks(&self, alphabet: &BTreeMap<Stage, usize>) -> Result<()> {
        let club = derive_club(&self.col_part);
        for (&stage, seq) in &self.upper_part {
            let a = *alphabet.get(&stage).ok_or(Error::MissingAlphabet(stage))?;
            if seq.len() > club.block_count() {
                return Err(Error::BlockInvariantViolated(format!(
                    "stage {stage} has {} indices for {} blocks",
                    seq.len(),
                    club.block_count()
                )));
            }
            for (i, &idx) in seq.iter().enumerate() {
                let count = block_space(club.block(i).len(), a)?;
                if idx >= count {
                    return Err(Error::BlockInvariantViolated(format!(
                        "stage {stage} block {i}: index {idx} >= {count}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Pads every upper sequence to the club length with index 0.
pub fn densify(r: &BlockIndexedCondition) -> BlockIndexedCondition {
    let gamma = r.col_part.len();
    let upper_part = r
        .upper_part
        .iter()
        .map(|(&s, q)| {
            let mut q = q.clone();
            q.resize(gamma, 0);
            (s, q)
        })
        .collect();
    BlockIndexedCondition {
        col_part: r.col_part.clone(),
        upper_part,
    }
}

/// `r ↦ (p, s)` with `s(δ)` assembled blockwise by decoding each index.
pub fn pi_factorize(
    r: &BlockIndexedCondition,
    alphabet: &BTreeMap<Stage, usize>,
) -> Result<(OrdinalColCondition, LaverCondition)> {
    if !r.is_uniform() {
        return Err(Error::BlockInvariantViolated(
            "upper sequences differ in length".into(),
        ));
    }
    r.check_blocks(alphabet)?;
    let club = derive_club(&r.col_part);
    let mut entries = BTreeMap::new();
    for (&stage, seq) in &r.upper_part {
        let mut f = PartialFn::new();
        for (i, &idx) in seq.iter().enumerate() {
            let block = club.block(i);
            let values = block_decode(idx, block.clone(), alphabet[&stage])?;
            f.extend(block.zip(values));
        }
        entries.insert(stage, f);
    }
    Ok((r.col_part.clone(), LaverCondition::new(entries)))
}

/// Extends every entry of `s` to `[0, sup C_p)` with value 0.
pub fn strengthen(p: &OrdinalColCondition, s: &LaverCondition) -> Result<LaverCondition> {
    let sup = derive_club(p).sup();
    let mut entries = BTreeMap::new();
    for (&stage, f) in s.entries() {
        if f.keys().next_back().is_some_and(|&k| k >= sup) {
            return Err(Error::DomainMismatch {
                stage,
                expected: sup,
            });
        }
        let mut g = f.clone();
        for alpha in 0..sup {
            g.entry(alpha).or_insert(0);
        }
        entries.insert(stage, g);
    }
    Ok(LaverCondition::new(entries))
}

/// The member of `D` factorizing to `(p, s)`. With `strengthen_first`, `s` is
/// first padded to the club supremum.
pub fn pi_inverse(
    p: &OrdinalColCondition,
    s: &LaverCondition,
    alphabet: &BTreeMap<Stage, usize>,
    strengthen_first: bool,
) -> Result<BlockIndexedCondition> {
    let s = if strengthen_first {
        strengthen(p, s)?
    } else {
        s.clone()
    };
    let club = derive_club(p);
    let sup = club.sup();
    let mut upper_part = BTreeMap::new();
    for (&stage, f) in s.entries() {
        if f.len() != sup || f.keys().next_back().is_some_and(|&k| k >= sup) {
            return Err(Error::DomainMismatch {
                stage,
                expected: sup,
            });
        }
        let a = *alphabet.get(&stage).ok_or(Error::MissingAlphabet(stage))?;
        let seq = club
            .blocks()
            .map(|b| {
                let values: Vec<usize> = b.clone().map(|alpha| f[&alpha]).collect();
                block_encode(&values, b, a)
            })
            .collect::<Result<Vec<_>>>()?;
        upper_part.insert(stage, seq);
    }
    Ok(BlockIndexedCondition {
        col_part: p.clone(),
        upper_part,
    })
}

/// Ambient block-indexed conditions: upper sequences no longer than the club.
pub fn enumerate_ambient(
    frame: &CardinalFrame,
    alphabet: &BTreeMap<Stage, usize>,
) -> Result<Vec<BlockIndexedCondition>> {
    let stages = frame.upper_stages();
    let mut out = Vec::new();
    for p in enumerate_col_dense(frame) {
        let club = derive_club(&p);
        let mut options_per_stage = Vec::with_capacity(stages.len());
        for &stage in &stages {
            let a = *alphabet.get(&stage).ok_or(Error::MissingAlphabet(stage))?;
            let mut seqs = vec![Vec::new()];
            let mut layer = vec![Vec::new()];
            for i in 0..club.block_count() {
                let count = block_space(club.block(i).len(), a)?;
                layer = layer
                    .iter()
                    .flat_map(|q: &Vec<usize>| {
                        (0..count).map(move |j| {
                            let mut q = q.clone();
                            q.push(j);
                            q
                        })
                    })
                    .collect();
                seqs.extend(layer.iter().cloned());
            }
            options_per_stage.push(seqs);
        }
        let mut conds = vec![BTreeMap::new()];
        for (k, &stage) in stages.iter().enumerate() {
            let mut next = Vec::new();
            for c in &conds {
                next.push(c.clone());
                for q in &options_per_stage[k] {
                    let mut d = c.clone();
                    d.insert(stage, q.clone());
                    next.push(d);
                }
            }
            conds = next;
        }
        out.extend(
            conds
                .into_iter()
                .filter(|u| is_easton(&u.keys().copied().collect::<BTreeSet<_>>(), frame))
                .map(|upper_part| BlockIndexedCondition {
                    col_part: p.clone(),
                    upper_part,
                }),
        );
    }
    Ok(out)
}

/// The shape of the upper collapse targeted by the factorization: upper
/// stages, domains below the largest club supremum.
pub fn upper_shape(frame: &CardinalFrame, alphabet: &BTreeMap<Stage, usize>) -> LaverShape {
    LaverShape {
        stages: frame.upper_stages(),
        domain_bound: frame.max_club_top(),
        alphabet: alphabet.clone(),
    }
}

/// Upper-stage alphabets of the frame.
pub fn frame_upper_alphabet(frame: &CardinalFrame) -> Result<BTreeMap<Stage, usize>> {
    frame
        .upper_stages()
        .into_iter()
        .map(|s| {
            frame
                .alphabet_at(s)
                .map(|a| (s, a))
                .ok_or(Error::MissingAlphabet(s))
        })
        .collect()
}

/// Every object of the factorization over one frame and upper alphabet.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub alphabet: BTreeMap<Stage, usize>,
    pub ambient: FinitePoset<BlockIndexedCondition>,
    pub domain: FinitePoset<BlockIndexedCondition>,
    /// Index in `ambient` of every element of `domain`.
    pub inclusion: Vec<usize>,
    pub col_dense: FinitePoset<OrdinalColCondition>,
    pub upper: FinitePoset<LaverCondition>,
    pub target: FinitePoset<(OrdinalColCondition, LaverCondition)>,
    /// Index in `target` of `pi_factorize` of every element of `domain`.
    pub pi: Vec<usize>,
}

impl Factorization {
    pub fn new(frame: &CardinalFrame) -> Result<Self> {
        Self::with_alphabet(frame, frame_upper_alphabet(frame)?)
    }

    pub fn with_alphabet(frame: &CardinalFrame, alphabet: BTreeMap<Stage, usize>) -> Result<Self> {
        let ambient = FinitePoset::new(
            enumerate_ambient(frame, &alphabet)?,
            BlockIndexedCondition::extends,
        )?;
        let (domain, inclusion) = ambient.restrict(BlockIndexedCondition::is_uniform)?;
        let col_dense = FinitePoset::new(enumerate_col_dense(frame), OrdinalColCondition::extends)?;
        let upper = build_laver_shape(&upper_shape(frame, &alphabet), frame)?;
        let target = product(&col_dense, &upper);
        let index: HashMap<&(OrdinalColCondition, LaverCondition), usize> = target
            .elements()
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let pi = domain
            .elements()
            .iter()
            .map(|r| {
                let pair = pi_factorize(r, &alphabet)?;
                index
                    .get(&pair)
                    .copied()
                    .ok_or_else(|| Error::UnknownCondition(format!("{} {}", pair.0, pair.1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization {
            alphabet,
            ambient,
            domain,
            inclusion,
            col_dense,
            upper,
            target,
            pi,
        })
    }

    pub fn inclusion_map(&self) -> OrderMap<'_, BlockIndexedCondition, BlockIndexedCondition> {
        OrderMap::new(&self.domain, &self.ambient, self.inclusion.clone())
    }

    pub fn pi_map(
        &self,
    ) -> OrderMap<'_, BlockIndexedCondition, (OrdinalColCondition, LaverCondition)> {
        OrderMap::new(&self.domain, &self.target, self.pi.clone())
    }

    /// Least element of `D` on which `pi_inverse ∘ pi_factorize` is not the identity.
    pub fn inverse_roundtrip(&self) -> Outcome {
        let bad = self.domain.elements().iter().position(|r| {
            pi_factorize(r, &self.alphabet)
                .and_then(|(p, s)| pi_inverse(&p, &s, &self.alphabet, false))
                .map_or(true, |back| &back != r)
        });
        bad.map_or(Outcome::Pass, |i| Outcome::Fail(vec![i]))
    }

    /// Range density restricted to targets `(p, s)` whose entries stay below
    /// the club supremum of `p`.
    pub fn coupled_density(&self) -> Outcome {
        let range: BTreeSet<usize> = self.pi.iter().copied().collect();
        let bad = (0..self.target.len()).find(|&t| {
            let (p, s) = self.target.element(t);
            let sup = derive_club(p).sup();
            let coupled = s.entries().values().all(|f| f.keys().all(|&k| k < sup));
            coupled && !range.iter().any(|&x| self.target.leq(x, t))
        });
        bad.map_or(Outcome::Pass, |t| Outcome::Fail(vec![t]))
    }
}

/// The map `(a, r) ↦ (a, p, s)` from `P × D` into `P × Col × L(κ, λ)`.
#[derive(Clone, Debug)]
pub struct TripleMap {
    pub lower: FinitePoset<LaverCondition>,
    pub factorization: Factorization,
    pub source: FinitePoset<(LaverCondition, BlockIndexedCondition)>,
    pub target: FinitePoset<(LaverCondition, (OrdinalColCondition, LaverCondition))>,
    pub map: Vec<usize>,
}

impl TripleMap {
    pub fn new(frame: &CardinalFrame) -> Result<Self> {
        let lower = build_laver(frame, frame.mu(), frame.kappa())?;
        let factorization = Factorization::new(frame)?;
        let source = product(&lower, &factorization.domain);
        let target = product(&lower, &factorization.target);
        let d = factorization.domain.len();
        let t = factorization.target.len();
        let map = (0..source.len())
            .map(|x| product_index(t, x / d, factorization.pi[x % d]))
            .collect();
        Ok(TripleMap {
            lower,
            factorization,
            source,
            target,
            map,
        })
    }

    pub fn order_map(
        &self,
    ) -> OrderMap<
        '_,
        (LaverCondition, BlockIndexedCondition),
        (LaverCondition, (OrdinalColCondition, LaverCondition)),
    > {
        OrderMap::new(&self.source, &self.target, self.map.clone())
    }
}

/// Which name each block index is sent to when composing with the term embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    Faithful,
    /// Every name index replaced by 0.
    Collapsed,
}

/// `(a, r) ↦ (a, term_embed(s_r))` from `P × D` into `P ∗ L(κ, λ)`, where `D`
/// is built with name-count alphabets.
#[derive(Clone, Debug)]
pub struct ComposedProjection {
    pub lower: FinitePoset<LaverCondition>,
    /// `L(κ, λ)` with the frame alphabets.
    pub upper: FinitePoset<LaverCondition>,
    pub upper_alphabet: BTreeMap<Stage, usize>,
    /// Block factorization over `a(δ)^(#generics)` alphabets.
    pub factorization: Factorization,
    /// Source conditions of the term embedding.
    pub names: FinitePoset<LaverCondition>,
    pub iteration: Iteration,
    pub source: FinitePoset<(LaverCondition, BlockIndexedCondition)>,
    pub map: Vec<usize>,
}

impl ComposedProjection {
    pub fn new(frame: &CardinalFrame, term_cap: usize) -> Result<Self> {
        Self::with_embedding(frame, term_cap, Embedding::Faithful)
    }

    pub fn with_embedding(
        frame: &CardinalFrame,
        term_cap: usize,
        embedding: Embedding,
    ) -> Result<Self> {
        let lower = build_laver(frame, frame.mu(), frame.kappa())?;
        let upper_alphabet = frame_upper_alphabet(frame)?;
        let shape = upper_shape(frame, &upper_alphabet);
        let upper = build_laver_shape(&shape, frame)?;
        let iteration = build_iteration(&lower, &upper, term_cap)?;
        let emb = LaverTermEmbedding::new(&lower, &upper, upper_alphabet.clone());
        let name_shape = emb.source_shape(&shape)?;
        let names = build_laver_shape(&name_shape, frame)?;
        let factorization = Factorization::with_alphabet(frame, name_shape.alphabet.clone())?;
        let source = product(&lower, &factorization.domain);
        let d = factorization.domain.len();
        let map = (0..source.len())
            .map(|x| {
                let (_, s) =
                    pi_factorize(factorization.domain.element(x % d), &factorization.alphabet)?;
                let s = match embedding {
                    Embedding::Faithful => s,
                    Embedding::Collapsed => zero_values(&s),
                };
                let name = name_index(&emb.term_embed(&s)?, upper.len())?;
                Ok(iteration.class(x / d, name))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComposedProjection {
            lower,
            upper,
            upper_alphabet,
            factorization,
            names,
            iteration,
            source,
            map,
        })
    }

    pub fn order_map(
        &self,
    ) -> OrderMap<'_, (LaverCondition, BlockIndexedCondition), (usize, crate::term::TermName)> {
        OrderMap::new(&self.source, &self.iteration.poset, self.map.clone())
    }

    pub fn embedding(&self) -> LaverTermEmbedding<'_> {
        LaverTermEmbedding::new(&self.lower, &self.upper, self.upper_alphabet.clone())
    }

    /// `{ q : term_embed(q)(G) ∈ H }` as a sub-poset of the name-valued collapse,
    /// for a generic `K` of the iteration with components `G` and `H`.
    pub fn quotient_q(&self, k: &Filter) -> Result<FinitePoset<LaverCondition>> {
        let (g, h) = self.iteration.split_generic(&self.lower, k)?;
        let emb = self.embedding();
        let mut keep = Vec::new();
        for (i, q) in self.names.elements().iter().enumerate() {
            if h.binary_search(&emb.term_embed(q)?.at(g)).is_ok() {
                keep.push(i);
            }
        }
        self.names.induced(&keep)
    }

    /// Separative quotients of `π⁻¹[K]` and `ℚ × Col` are isomorphic.
    pub fn check_quotient_equivalence(&self, k: &Filter, iso_cap: usize) -> Result<Outcome> {
        let (pre, _) = quotient_poset(&self.order_map(), k)?;
        let q = self.quotient_q(k)?;
        let rhs = product(&q, &self.factorization.col_dense);
        Ok(separative_equivalence(&pre, &rhs, iso_cap))
    }

    pub fn iteration_generics(&self) -> Vec<Filter> {
        generic_filters(&self.iteration.poset)
    }
}

fn zero_values(s: &LaverCondition) -> LaverCondition {
    LaverCondition::new(
        s.entries()
            .iter()
            .map(|(&st, f)| (st, f.keys().map(|&k| (k, 0)).collect()))
            .collect(),
    )
}

/// Compares separative quotients by isomorphism search. Over the cap or
/// budget the outcome is a skip; a definite mismatch reports both sizes.
pub fn separative_equivalence<A: Clone, B: Clone>(
    a: &FinitePoset<A>,
    b: &FinitePoset<B>,
    iso_cap: usize,
) -> Outcome {
    let sa = separative_quotient(a).poset;
    let sb = separative_quotient(b).poset;
    match poset_isomorphic(&sa, &sb, iso_cap) {
        Ok(IsoResult::Found(_)) => Outcome::Pass,
        Ok(IsoResult::No) => Outcome::Fail(vec![sa.len(), sb.len()]),
        Ok(IsoResult::Exhausted) => Outcome::Skip("isomorphism budget exhausted".into()),
        Err(e) => Outcome::Skip(e.to_string()),
    }
}
