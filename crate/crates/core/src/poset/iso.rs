//! Order-isomorphism search by backtracking over invariant-compatible candidates.

use super::FinitePoset;
use crate::error::{Error, Result};

pub const DEFAULT_ISO_CAP: usize = 16;
pub const DEFAULT_ISO_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// `map[i]` is the image in `Q` of element `i` of `P`.
    Found(Vec<usize>),
    /// Definitely not isomorphic.
    No,
    /// The search budget ran out first.
    Exhausted,
}

impl IsoResult {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoResult::Found(_))
    }
}

pub fn poset_isomorphic<A, B>(
    p: &FinitePoset<A>,
    q: &FinitePoset<B>,
    cap: usize,
) -> Result<IsoResult> {
    poset_isomorphic_with_budget(p, q, cap, DEFAULT_ISO_BUDGET)
}

pub fn poset_isomorphic_with_budget<A, B>(
    p: &FinitePoset<A>,
    q: &FinitePoset<B>,
    cap: usize,
    budget: u64,
) -> Result<IsoResult> {
    let size = p.len().max(q.len());
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    if p.len() != q.len() {
        return Ok(IsoResult::No);
    }
    let inv_p: Vec<(usize, usize)> = (0..p.len()).map(|x| invariant(p, x)).collect();
    let inv_q: Vec<(usize, usize)> = (0..q.len()).map(|x| invariant(q, x)).collect();
    let (mut sp, mut sq) = (inv_p.clone(), inv_q.clone());
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return Ok(IsoResult::No);
    }

    // assign the most constrained (rarest invariant) elements first
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| (inv_q.iter().filter(|&&i| i == inv_p[x]).count(), x));

    let mut search = Search {
        p,
        q,
        inv_p: &inv_p,
        inv_q: &inv_q,
        order: &order,
        map: vec![usize::MAX; p.len()],
        used: vec![false; q.len()],
        budget,
    };
    Ok(match search.run(0) {
        Some(true) => IsoResult::Found(search.map),
        Some(false) => IsoResult::No,
        None => IsoResult::Exhausted,
    })
}

fn invariant<T>(p: &FinitePoset<T>, x: usize) -> (usize, usize) {
    (p.below(x).count(), p.above(x).count())
}

struct Search<'a, A, B> {
    p: &'a FinitePoset<A>,
    q: &'a FinitePoset<B>,
    inv_p: &'a [(usize, usize)],
    inv_q: &'a [(usize, usize)],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
    budget: u64,
}

impl<A, B> Search<'_, A, B> {
    /// `Some(true)` found, `Some(false)` refuted, `None` out of budget.
    fn run(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let x = self.order[depth];
        for y in 0..self.q.len() {
            if self.used[y] || self.inv_q[y] != self.inv_p[x] {
                continue;
            }
            if self.budget == 0 {
                return None;
            }
            self.budget -= 1;
            let consistent = self.order[..depth].iter().all(|&x2| {
                let y2 = self.map[x2];
                self.p.leq(x, x2) == self.q.leq(y, y2) && self.p.leq(x2, x) == self.q.leq(y2, y)
            });
            if !consistent {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            match self.run(depth + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        Some(false)
    }
}
