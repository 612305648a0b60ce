mod common;

use std::collections::BTreeSet;

use collapse_lab::poset::{antichain_census, generic_filters, separative_quotient, FinitePoset};
use common::*;
use proptest::prelude::*;

pub fn census_agrees<T>(p: &FinitePoset<T>) -> bool {
    let fast = antichain_census(p, true, usize::MAX).unwrap();
    let slow = naive_antichains(p);
    fast.max_size == slow.max_size
        && fast.maximal_count as usize == slow.maximal.len()
        && fast.list.as_ref() == Some(&slow.maximal)
}

pub fn generics_agree<T>(p: &FinitePoset<T>) -> bool {
    let fast: Vec<BTreeSet<usize>> = generic_filters(p)
        .iter()
        .map(|g| g.members.iter().collect())
        .collect();
    let mut fast = fast;
    fast.sort_by_key(|s| s.iter().copied().collect::<Vec<_>>());
    fast == naive_generics(p)
}

pub fn separative_agrees<T: Clone>(p: &FinitePoset<T>) -> bool {
    let fast = separative_quotient(p);
    let slow = naive_separative(p);
    let n = p.len();
    fast.poset.len() == slow.keys.len()
        && (0..n).all(|x| {
            (0..n).all(|y| {
                (fast.class_of[x] == fast.class_of[y]) == (slow.class_of[x] == slow.class_of[y])
                    && fast.poset.leq(fast.class_of[x], fast.class_of[y])
                        == slow.leq(slow.class_of[x], slow.class_of[y])
            })
        })
}

#[test]
fn suite_posets_match_brute_force() {
    let posets = suite_posets(12);
    assert!(posets.len() >= 20, "only {} posets collected", posets.len());
    for (label, p) in &posets {
        assert!(census_agrees(p), "census disagrees on {label}");
        assert!(generics_agree(p), "generics disagree on {label}");
        assert!(
            separative_agrees(p),
            "separative quotient disagrees on {label}"
        );
    }
}

#[test]
fn laver_sizes_match_closed_form() {
    use collapse_lab::collapse::build_laver;
    for name in ["f1", "f2", "f1-lower", "smallest"] {
        let f = frame(name);
        let mut params: Vec<usize> = f.regulars().iter().copied().collect();
        params.push(f.lambda_top());
        for &lo in f.regulars() {
            for &hi in params.iter().filter(|&&h| h > lo) {
                let Ok(p) = build_laver(&f, lo, hi) else {
                    continue;
                };
                let alphabets: Vec<usize> = f
                    .regulars_between(lo, hi)
                    .iter()
                    .map(|&s| f.alphabet_at(s).unwrap())
                    .collect();
                assert_eq!(
                    p.len(),
                    laver_size(&alphabets, (lo - 1) as u32),
                    "{name} L({lo},{hi})"
                );
            }
        }
    }
}

fn arb_poset() -> impl Strategy<Value = FinitePoset<usize>> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |e| random_poset(n, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn census_matches_oracle(p in arb_poset()) {
        prop_assert!(census_agrees(&p));
    }

    #[test]
    fn generics_match_oracle(p in arb_poset()) {
        prop_assert!(generics_agree(&p));
    }

    #[test]
    fn separative_matches_oracle(p in arb_poset()) {
        prop_assert!(separative_agrees(&p));
    }

    #[test]
    fn separative_quotient_is_idempotent(p in arb_poset()) {
        let once = separative_quotient(&p).poset;
        let twice = separative_quotient(&once).poset;
        prop_assert_eq!(once.len(), twice.len());
    }
}
