//! Antichains in the forcing sense: sets of pairwise incompatible conditions.
//! Maximal antichains are the maximal cliques of the incompatibility graph,
//! enumerated with pivoted Bron–Kerbosch.

use super::FinitePoset;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub const DEFAULT_CENSUS_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntichainCensus {
    pub max_size: usize,
    pub maximal_count: u64,
    /// Every maximal antichain, sorted, when requested and within cap.
    pub list: Option<Vec<Vec<usize>>>,
}

pub fn antichain_census<T>(
    poset: &FinitePoset<T>,
    want_list: bool,
    cap: usize,
) -> Result<AntichainCensus> {
    if want_list && poset.len() > cap {
        return Err(Error::CensusCapExceeded {
            size: poset.len(),
            cap,
        });
    }
    let graph = incompatibility_graph(poset);
    let mut acc = Accumulator {
        max_size: 0,
        count: 0,
        list: want_list.then(Vec::new),
    };
    let n = poset.len();
    let mut r = Vec::new();
    bron_kerbosch(&graph, &mut r, BitSet::full(n), BitSet::new(n), &mut acc);
    let list = acc.list.map(|mut l| {
        l.sort();
        l
    });
    Ok(AntichainCensus {
        max_size: acc.max_size,
        maximal_count: acc.count,
        list,
    })
}

pub(crate) fn maximal_antichains<T>(poset: &FinitePoset<T>) -> Vec<Vec<usize>> {
    antichain_census(poset, true, usize::MAX)
        .expect("uncapped census")
        .list
        .unwrap_or_default()
}

fn incompatibility_graph<T>(poset: &FinitePoset<T>) -> Vec<BitSet> {
    let n = poset.len();
    (0..n)
        .map(|x| BitSet::from_indices(n, (0..n).filter(|&y| !poset.compatible(x, y))))
        .collect()
}

struct Accumulator {
    max_size: usize,
    count: u64,
    list: Option<Vec<Vec<usize>>>,
}

fn bron_kerbosch(
    graph: &[BitSet],
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    acc: &mut Accumulator,
) {
    if p.is_empty() && x.is_empty() {
        acc.count += 1;
        acc.max_size = acc.max_size.max(r.len());
        if let Some(list) = acc.list.as_mut() {
            let mut a = r.clone();
            a.sort_unstable();
            list.push(a);
        }
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    let mut pivot_nbrs: Option<&BitSet> = None;
    let mut best = 0;
    for u in p.iter().chain(x.iter()) {
        let mut c = graph[u].clone();
        c.intersect_with(&p);
        let k = c.count();
        if pivot_nbrs.is_none() || k > best {
            best = k;
            pivot_nbrs = Some(&graph[u]);
        }
    }
    let candidates: Vec<usize> = match pivot_nbrs {
        Some(nb) => p.iter().filter(|&v| !nb.contains(v)).collect(),
        None => p.iter().collect(),
    };
    for v in candidates {
        let mut np = p.clone();
        np.intersect_with(&graph[v]);
        let mut nx = x.clone();
        nx.intersect_with(&graph[v]);
        r.push(v);
        bron_kerbosch(graph, r, np, nx, acc);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn single_element() {
        let c = antichain_census(&chain(1), true, 20).unwrap();
        assert_eq!((c.max_size, c.maximal_count), (1, 1));
    }

    #[test]
    fn atoms_form_the_maximum_antichain() {
        for n in 1..6 {
            let c = antichain_census(&atoms(n), true, 20).unwrap();
            assert_eq!(c.max_size, n);
            // {top} and the set of atoms
            assert_eq!(c.maximal_count, 2);
            assert!(c.list.unwrap().contains(&(1..=n).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn tree_census() {
        // maximal antichains: {0}, {1,2}, {2,3,4}
        let c = antichain_census(&small_tree(), true, 20).unwrap();
        assert_eq!(c.max_size, 3);
        assert_eq!(c.list.unwrap(), vec![vec![0], vec![1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn list_cap() {
        assert!(matches!(
            antichain_census(&chain(5), true, 4),
            Err(Error::CensusCapExceeded { size: 5, cap: 4 })
        ));
        assert!(antichain_census(&chain(5), false, 4).is_ok());
    }
}
