//! Separative quotient: identify conditions that are compatible with exactly
//! the same conditions, and order classes by `[x] <= [y]` iff every extension
//! of `x` is compatible with `y`.

use std::collections::HashMap;

use super::{FinitePoset, OrderMap};
use crate::bitset::BitSet;

#[derive(Clone, Debug)]
pub struct SeparativeQuotient<T> {
    /// Classes, each labelled by its least-index member.
    pub poset: FinitePoset<T>,
    pub class_of: Vec<usize>,
    /// Least-index member of each class.
    pub representatives: Vec<usize>,
}

impl<T> SeparativeQuotient<T> {
    /// The projection of the original poset onto its classes.
    pub fn class_map<'a>(&'a self, original: &'a FinitePoset<T>) -> OrderMap<'a, T, T> {
        OrderMap::new(original, &self.poset, self.class_of.clone())
    }
}

pub fn separative_quotient<T: Clone>(poset: &FinitePoset<T>) -> SeparativeQuotient<T> {
    let n = poset.len();
    let compat: Vec<BitSet> = (0..n)
        .map(|x| BitSet::from_indices(n, (0..n).filter(|&z| poset.compatible(x, z))))
        .collect();

    let mut class_of = vec![0; n];
    let mut representatives = Vec::new();
    let mut seen: HashMap<&BitSet, usize> = HashMap::new();
    for x in 0..n {
        let c = *seen.entry(&compat[x]).or_insert_with(|| {
            representatives.push(x);
            representatives.len() - 1
        });
        class_of[x] = c;
    }

    let k = representatives.len();
    let below = (0..k)
        .map(|cy| {
            let y = representatives[cy];
            BitSet::from_indices(
                k,
                (0..k).filter(|&cx| poset.below(representatives[cx]).is_subset(&compat[y])),
            )
        })
        .collect();
    let elements = representatives
        .iter()
        .map(|&r| poset.element(r).clone())
        .collect();
    let poset = FinitePoset::from_below(elements, below)
        .expect("separative quotient of a poset is a poset");
    SeparativeQuotient {
        poset,
        class_of,
        representatives,
    }
}
