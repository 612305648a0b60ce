//! Term forcing over finite posets. A name is modeled extensionally: one
//! value per generic filter of the base poset, in `generic_filters` order.

use std::collections::{BTreeMap, HashMap};

use crate::club::{block_decode, block_encode, block_space};
use crate::collapse::{LaverCondition, LaverShape, PartialFn};
use crate::error::{Error, Result};
use crate::frame::Stage;
use crate::poset::{
    check_projection, generic_filters, product, Filter, FinitePoset, OrderMap, Verification,
};

pub const DEFAULT_TERM_CAP: usize = 4096;

/// For each generic of the base poset, the index of a condition of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermName(Vec<usize>);

impl TermName {
    pub fn new(values: Vec<usize>) -> Self {
        TermName(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn at(&self, generic: usize) -> usize {
        self.0[generic]
    }

    pub fn constant(value: usize, generics: usize) -> Self {
        TermName(vec![value; generics])
    }
}

/// Position of `g` among the generics of `p`.
pub fn generic_position<T>(p: &FinitePoset<T>, g: &Filter) -> Result<usize> {
    generic_filters(p)
        .iter()
        .position(|h| h == g)
        .ok_or(Error::NotAGeneric)
}

/// `σ(G)`, as an index into `Q`.
pub fn eval_name<T>(p: &FinitePoset<T>, sigma: &TermName, g: &Filter) -> Result<usize> {
    Ok(sigma.at(generic_position(p, g)?))
}

/// Index of a name in the term poset enumeration.
pub fn name_index(sigma: &TermName, q_len: usize) -> Result<usize> {
    block_encode(sigma.values(), 0..sigma.values().len(), q_len)
}

/// All names `P → Q` ordered pointwise.
pub fn build_term_poset<P, Q>(
    p: &FinitePoset<P>,
    q: &FinitePoset<Q>,
    cap: usize,
) -> Result<FinitePoset<TermName>> {
    let g = generic_filters(p).len();
    let size = block_space(g, q.len()).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::TermPosetTooLarge { size, cap });
    }
    let names = (0..size)
        .map(|i| block_decode(i, 0..g, q.len()).map(TermName))
        .collect::<Result<Vec<_>>>()?;
    FinitePoset::new(names, |a, b| {
        a.0.iter().zip(&b.0).all(|(&x, &y)| q.leq(x, y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterationOrder {
    /// `σ1(G) <= σ0(G)` for the generics containing `p1`.
    ThroughBase,
    /// `σ1(G) <= σ0(G)` for every generic.
    AllGenerics,
}

/// The two-step iteration `P ∗ Q̇` on the carrier `P × T(P, Q)`.
#[derive(Clone, Debug)]
pub struct Iteration {
    pub term: FinitePoset<TermName>,
    /// Classes of `(base index, name)` under mutual `<=`.
    pub poset: FinitePoset<(usize, TermName)>,
    /// Class of the carrier element at `product_index(|T|, p, t)`.
    pub class_of: Vec<usize>,
    pub generics: Vec<Filter>,
}

impl Iteration {
    pub fn class(&self, base: usize, name: usize) -> usize {
        self.class_of[base * self.term.len() + name]
    }

    /// `H = { σ(G) : (p, σ) ∈ K }` for a generic `K` of the iteration, with the
    /// position of `G` among the base generics.
    pub fn split_generic<P>(&self, p: &FinitePoset<P>, k: &Filter) -> Result<(usize, Vec<usize>)> {
        let min = k.generator(&self.poset).ok_or(Error::NotAGeneric)?;
        if !k.is_generic(&self.poset) {
            return Err(Error::NotAGeneric);
        }
        let (base, _) = &self.poset.elements()[min];
        let g = generic_position(p, &p.cone(*base))?;
        let mut h: Vec<usize> = k
            .members
            .iter()
            .map(|c| self.poset.element(c).1.at(g))
            .collect();
        h.sort_unstable();
        h.dedup();
        Ok((g, h))
    }
}

pub fn build_iteration<P, Q>(
    p: &FinitePoset<P>,
    q: &FinitePoset<Q>,
    cap: usize,
) -> Result<Iteration> {
    build_iteration_with(p, q, cap, IterationOrder::ThroughBase)
}

pub fn build_iteration_with<P, Q>(
    p: &FinitePoset<P>,
    q: &FinitePoset<Q>,
    cap: usize,
    order: IterationOrder,
) -> Result<Iteration> {
    let term = build_term_poset(p, q, cap)?;
    let size = p.len() * term.len();
    if size > cap {
        return Err(Error::TermPosetTooLarge { size, cap });
    }
    let generics = generic_filters(p);
    let carrier: Vec<(usize, TermName)> = (0..p.len())
        .flat_map(|b| term.elements().iter().map(move |t| (b, t.clone())))
        .collect();
    let leq = |x: &(usize, TermName), y: &(usize, TermName)| {
        p.leq(x.0, y.0)
            && generics.iter().enumerate().all(|(k, g)| {
                (order == IterationOrder::ThroughBase && !g.contains(x.0))
                    || q.leq(x.1.at(k), y.1.at(k))
            })
    };
    let (poset, class_of) = FinitePoset::from_preorder(carrier, leq)?;
    Ok(Iteration {
        term,
        poset,
        class_of,
        generics,
    })
}

/// The identity on `P × T(P, Q)`, from the product order to the iteration order.
pub fn check_laver_projection<P: Clone + Sync, Q>(
    p: &FinitePoset<P>,
    q: &FinitePoset<Q>,
    cap: usize,
) -> Result<Verification> {
    let it = build_iteration(p, q, cap)?;
    let prod = product(p, &it.term);
    Ok(check_projection(&OrderMap::new(
        &prod,
        &it.poset,
        it.class_of.clone(),
    )))
}

/// Least carrier pair on which the two iteration orders disagree.
pub fn iteration_order_difference<P, Q>(
    p: &FinitePoset<P>,
    q: &FinitePoset<Q>,
    cap: usize,
) -> Result<Option<(usize, usize)>> {
    let a = build_iteration_with(p, q, cap, IterationOrder::ThroughBase)?;
    let b = build_iteration_with(p, q, cap, IterationOrder::AllGenerics)?;
    let n = a.class_of.len();
    let leq = |it: &Iteration, x: usize, y: usize| it.poset.leq(it.class_of[x], it.class_of[y]);
    Ok((0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| leq(&a, x, y) != leq(&b, x, y)))
}

/// Every function from `generics` positions into `[0, alphabet)`, in codec order.
pub fn tau_enumeration(generics: usize, alphabet: usize) -> Result<Vec<Vec<usize>>> {
    let n = block_space(generics, alphabet)?;
    (0..n)
        .map(|i| block_decode(i, 0..generics, alphabet))
        .collect()
}

/// Term embedding of a Laver poset with name-indexed values into the term
/// poset over a Laver target `Q`.
#[derive(Clone, Debug)]
pub struct LaverTermEmbedding<'a> {
    generics: usize,
    target: &'a FinitePoset<LaverCondition>,
    index: HashMap<&'a LaverCondition, usize>,
    alphabet: BTreeMap<Stage, usize>,
}

impl<'a> LaverTermEmbedding<'a> {
    pub fn new<P>(
        p: &FinitePoset<P>,
        target: &'a FinitePoset<LaverCondition>,
        alphabet: BTreeMap<Stage, usize>,
    ) -> Self {
        let index = target
            .elements()
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        LaverTermEmbedding {
            generics: generic_filters(p).len(),
            target,
            index,
            alphabet,
        }
    }

    pub fn generic_count(&self) -> usize {
        self.generics
    }

    /// `a(δ)^(#generics)`.
    pub fn name_alphabet(&self, stage: Stage) -> Result<usize> {
        let a = *self
            .alphabet
            .get(&stage)
            .ok_or(Error::MissingAlphabet(stage))?;
        block_space(self.generics, a)
    }

    /// The target shape with every alphabet replaced by its name count.
    pub fn source_shape(&self, target: &LaverShape) -> Result<LaverShape> {
        let alphabet = target
            .stages
            .iter()
            .map(|&s| self.name_alphabet(s).map(|n| (s, n)))
            .collect::<Result<_>>()?;
        Ok(LaverShape {
            stages: target.stages.clone(),
            domain_bound: target.domain_bound,
            alphabet,
        })
    }

    /// `τ^δ_i` as a function on generic positions.
    pub fn tau(&self, stage: Stage, i: usize) -> Result<Vec<usize>> {
        let a = self.alphabet[&stage];
        block_decode(i, 0..self.generics, a).map_err(|_| Error::AlphabetMismatch {
            stage,
            value: i,
            count: self.name_alphabet(stage).unwrap_or(0),
        })
    }

    /// `G ↦` the condition with the domains of `q` and values `τ^δ_{q(δ)(α)}(G)`.
    pub fn term_embed(&self, q: &LaverCondition) -> Result<TermName> {
        let mut per_generic = vec![BTreeMap::new(); self.generics];
        for (&stage, f) in q.entries() {
            let mut decoded: Vec<PartialFn> = vec![PartialFn::new(); self.generics];
            for (&alpha, &i) in f {
                for (k, v) in self.tau(stage, i)?.into_iter().enumerate() {
                    decoded[k].insert(alpha, v);
                }
            }
            for (k, g) in decoded.into_iter().enumerate() {
                per_generic[k].insert(stage, g);
            }
        }
        per_generic
            .into_iter()
            .map(|entries| {
                let c = LaverCondition::new(entries);
                self.index
                    .get(&c)
                    .copied()
                    .ok_or_else(|| Error::UnknownCondition(c.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(TermName)
    }

    /// A source condition whose embedding lies below `sigma`: stages and
    /// domains are unions over generics, undefined values default to 0.
    pub fn term_reduce(&self, sigma: &TermName) -> Result<LaverCondition> {
        let values: Vec<&LaverCondition> = sigma
            .values()
            .iter()
            .map(|&i| self.target.element(i))
            .collect();
        let mut domains: BTreeMap<Stage, Vec<usize>> = BTreeMap::new();
        for c in &values {
            for (&stage, f) in c.entries() {
                domains.entry(stage).or_default().extend(f.keys().copied());
            }
        }
        let mut entries = BTreeMap::new();
        for (stage, mut dom) in domains {
            dom.sort_unstable();
            dom.dedup();
            let a = *self
                .alphabet
                .get(&stage)
                .ok_or(Error::MissingAlphabet(stage))?;
            let mut f = PartialFn::new();
            for alpha in dom {
                let column: Vec<usize> = values
                    .iter()
                    .map(|c| {
                        c.entry(stage)
                            .and_then(|g| g.get(&alpha))
                            .copied()
                            .unwrap_or(0)
                    })
                    .collect();
                f.insert(alpha, block_encode(&column, 0..self.generics, a)?);
            }
            entries.insert(stage, f);
        }
        Ok(LaverCondition::new(entries))
    }

    /// Index in `term` of `term_embed(c)` for every element of `source`.
    pub fn embedding_map(
        &self,
        source: &FinitePoset<LaverCondition>,
        term: &FinitePoset<TermName>,
    ) -> Result<Vec<usize>> {
        debug_assert_eq!(
            term.len(),
            block_space(self.generics, self.target.len()).unwrap_or(0)
        );
        source
            .elements()
            .iter()
            .map(|c| name_index(&self.term_embed(c)?, self.target.len()))
            .collect()
    }
}
