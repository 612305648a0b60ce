//! Brute-force oracles that only use `leq` and `len` of the posets they inspect.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use collapse_lab::config::parse_frame_file;
use collapse_lab::frame::{validate_frame, CardinalFrame};
use collapse_lab::poset::FinitePoset;

pub fn frame_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../frames")
        .join(format!("{name}.frame"))
}

pub fn frame(name: &str) -> CardinalFrame {
    let text = std::fs::read_to_string(frame_path(name)).unwrap();
    validate_frame(&parse_frame_file(&text).unwrap()).unwrap()
}

pub fn naive_compatible<T>(p: &FinitePoset<T>, x: usize, y: usize) -> bool {
    (0..p.len()).any(|z| p.leq(z, x) && p.leq(z, y))
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

#[derive(Debug, PartialEq, Eq)]
pub struct NaiveCensus {
    pub max_size: usize,
    pub maximal: Vec<Vec<usize>>,
}

/// Every subset of pairwise incompatible elements, keeping the maximal ones.
pub fn naive_antichains<T>(p: &FinitePoset<T>) -> NaiveCensus {
    let n = p.len();
    assert!(n <= 16, "oracle is exponential");
    let antichain = |s: &[usize]| {
        s.iter()
            .all(|&x| s.iter().all(|&y| x == y || !naive_compatible(p, x, y)))
    };
    let all: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|m| members(m, n))
        .filter(|s| antichain(s))
        .collect();
    let max_size = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut maximal: Vec<Vec<usize>> = all
        .iter()
        .filter(|s| (0..n).all(|z| s.contains(&z) || s.iter().any(|&x| naive_compatible(p, x, z))))
        .cloned()
        .collect();
    maximal.sort();
    NaiveCensus { max_size, maximal }
}

/// Filters meeting every dense subset, found by enumerating all subsets.
pub fn naive_generics<T>(p: &FinitePoset<T>) -> Vec<BTreeSet<usize>> {
    let n = p.len();
    assert!(n <= 12, "oracle is exponential");
    let dense: Vec<u32> = (1u32..1 << n)
        .filter(|&m| (0..n).all(|x| (0..n).any(|y| m >> y & 1 == 1 && p.leq(y, x))))
        .collect();
    let is_filter = |m: u32| {
        let s = members(m, n);
        !s.is_empty()
            && s.iter()
                .all(|&x| (0..n).all(|y| !p.leq(x, y) || m >> y & 1 == 1))
            && s.iter().all(|&x| {
                s.iter()
                    .all(|&y| s.iter().any(|&z| p.leq(z, x) && p.leq(z, y)))
            })
    };
    let mut out: Vec<BTreeSet<usize>> = (1u32..1 << n)
        .filter(|&m| is_filter(m) && dense.iter().all(|&d| d & m != 0))
        .map(|m| members(m, n).into_iter().collect())
        .collect();
    out.sort_by_key(|s| s.iter().copied().collect::<Vec<_>>());
    out
}

/// Separative quotient through the minimal elements below each condition:
/// `x ~ y` iff `M(x) = M(y)`, ordered by inclusion of `M`.
pub struct NaiveSeparative {
    pub class_of: Vec<usize>,
    /// `M` of each class, in first-occurrence order.
    pub keys: Vec<BTreeSet<usize>>,
}

impl NaiveSeparative {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.keys[a].is_subset(&self.keys[b])
    }
}

pub fn naive_separative<T>(p: &FinitePoset<T>) -> NaiveSeparative {
    let n = p.len();
    let minimal: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| !p.leq(y, x) || y == x))
        .collect();
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut keys = Vec::new();
    let class_of = (0..n)
        .map(|x| {
            let m: BTreeSet<usize> = minimal.iter().copied().filter(|&z| p.leq(z, x)).collect();
            *index.entry(m.clone()).or_insert_with(|| {
                keys.push(m);
                keys.len() - 1
            })
        })
        .collect();
    NaiveSeparative { class_of, keys }
}

/// Closed-form size of a Laver poset: each stage is absent or carries one of
/// `(a + 1)^bound` partial functions.
pub fn laver_size(alphabets: &[usize], bound: u32) -> usize {
    alphabets.iter().map(|a| 1 + (a + 1).pow(bound)).product()
}

/// Random partial order with top 0 on `n` elements: `j <= i` edges for `i < j`,
/// closed transitively.
pub fn random_poset(n: usize, edges: &[bool]) -> FinitePoset<usize> {
    let mut rel = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        rel[i][i] = true;
        rel[i][0] = true;
        for j in i + 1..n {
            if edges.get(k).copied().unwrap_or(false) {
                rel[j][i] = true;
            }
            k += 1;
        }
    }
    for m in 0..n {
        for x in 0..n {
            for y in 0..n {
                if rel[x][m] && rel[m][y] {
                    rel[x][y] = true;
                }
            }
        }
    }
    FinitePoset::new((0..n).collect(), |&x, &y| rel[x][y]).unwrap()
}

/// Every poset of at most `limit` elements built by the suites on the
/// reference frames, labelled by origin.
pub fn suite_posets(limit: usize) -> Vec<(String, FinitePoset<()>)> {
    use collapse_lab::collapse::{build_col, build_col_dense, build_laver};
    use collapse_lab::factorization::{ComposedProjection, Factorization};
    use collapse_lab::poset::{product, quotient_poset};
    use collapse_lab::term::build_term_poset;

    let mut out = Vec::new();
    let mut push = |label: String, p: FinitePoset<()>| {
        if p.len() <= limit {
            out.push((label, p));
        }
    };
    for name in ["f1", "f2", "f1-lower", "smallest"] {
        let f = frame(name);
        let lower = build_laver(&f, f.mu(), f.kappa()).unwrap();
        push(format!("{name}/lower"), lower.map_elements(|_| ()));
        push(
            format!("{name}/col"),
            build_col(&f).unwrap().map_elements(|_| ()),
        );
        push(
            format!("{name}/col_dense"),
            build_col_dense(&f).unwrap().map_elements(|_| ()),
        );
        let fac = Factorization::new(&f).unwrap();
        push(format!("{name}/upper"), fac.upper.map_elements(|_| ()));
        push(format!("{name}/domain"), fac.domain.map_elements(|_| ()));
        push(format!("{name}/ambient"), fac.ambient.map_elements(|_| ()));
        if let Ok(term) = build_term_poset(&lower, &fac.upper, 4096) {
            push(format!("{name}/term"), term.map_elements(|_| ()));
        }
        if let Ok(t) = ComposedProjection::new(&f, 4096) {
            push(format!("{name}/names"), t.names.map_elements(|_| ()));
            push(
                format!("{name}/iteration"),
                t.iteration.poset.map_elements(|_| ()),
            );
            for (k, g) in t.iteration_generics().iter().enumerate() {
                if let Ok((pre, _)) = quotient_poset(&t.order_map(), g) {
                    push(format!("{name}/preimage{k}"), pre.map_elements(|_| ()));
                }
                let q = t.quotient_q(g).unwrap();
                push(format!("{name}/q{k}"), q.map_elements(|_| ()));
                let qc = product(&q, &t.factorization.col_dense);
                push(format!("{name}/q{k}xcol"), qc.map_elements(|_| ()));
            }
        }
    }
    out
}
