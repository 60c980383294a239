//! Exact `β^d(n)` on small instances by minimum set cover.
//!
//! Candidates are all weight-`d` bicolorings up to global negation (a
//! coloring and its negation bisect the same edges). Family sizes
//! `k = lower_best, lower_best + 1, ...` are tried in turn; each is decided
//! by a depth-first search that picks the uncovered edge with the fewest
//! remaining candidates and branches on the candidates bisecting it.
//! Candidates already tried at a node are banned in later sibling
//! branches, since any cover using them was explored in their own branch.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use log::debug;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::lower_bound;
use crate::coloring::{bisects_mask, Bicoloring};
use crate::construct::general_family;
use crate::edge::{is_trivial_mask, Edge};
use crate::error::{check_order, Error, Result};
use crate::family::{Family, Provenance};

pub const DEFAULT_MAX_CANDIDATES: usize = 5000;
pub const DEFAULT_MAX_UNIVERSE: usize = 4096;

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Largest family size to try.
    pub max_k: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct Guardrails {
    pub max_candidates: usize,
    pub max_universe: usize,
}

impl Default for Guardrails {
    fn default() -> Self {
        Guardrails {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            max_universe: DEFAULT_MAX_UNIVERSE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    /// Sizes up to `proven_infeasible` were ruled out before the budget ran
    /// out (or `max_k` was reached).
    LowerBoundOnly,
    /// Nothing beyond the closed-form lower bound was established.
    Timeout,
}

fn secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

fn witness_lines<S: Serializer>(f: &Option<Family>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        None => s.serialize_none(),
        Some(f) => s.collect_seq(f.colorings().iter().map(ToString::to_string)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub d: usize,
    pub status: Status,
    /// The optimum when `status` is optimal, otherwise the best lower bound.
    pub value: usize,
    pub lower_best: u64,
    /// Largest family size shown to be insufficient.
    pub proven_infeasible: Option<usize>,
    pub nodes_explored: u64,
    #[serde(rename = "elapsed_secs", serialize_with = "secs")]
    pub elapsed: Duration,
    #[serde(serialize_with = "witness_lines")]
    pub witness: Option<Family>,
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of candidates: `C(n, d) 2^(d-1)`.
pub fn candidate_count(n: usize, d: usize) -> u128 {
    binomial(n as u64, d as u64) << (d - 1)
}

/// Masks of every weight-`d` support in increasing numeric order.
fn supports(n: usize, d: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = Some((1u64 << d) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        // Gosper's hack: next larger integer with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        next = (r != 0).then(|| (((r ^ cur) >> 2) / c) | r);
        Some(cur)
    })
}

/// Candidates as `(+1, -1)` masks; the lowest support vertex is always `+1`.
fn candidate_masks(n: usize, d: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in supports(n, d) {
        let members: Vec<u64> = (0..n as u64)
            .filter(|i| s >> i & 1 == 1)
            .map(|i| 1 << i)
            .collect();
        let first = members[0];
        for pattern in 0..1u64 << (d - 1) {
            let mut pos = first;
            for (bit, &m) in members[1..].iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    pos |= m;
                }
            }
            out.push((pos, s & !pos));
        }
    }
    out
}

/// All weight-`d` bicolorings of `[n]` whose first non-zero entry is `+1`.
pub fn enumerate_candidates(n: usize, d: usize) -> Result<Vec<Bicoloring>> {
    check_order(n, d, n)?;
    if n > 63 {
        return Err(Error::Guardrail(format!(
            "candidate enumeration needs n <= 63, got {n}"
        )));
    }
    candidate_masks(n, d)
        .into_iter()
        .map(|(p, q)| Bicoloring::from_masks(n, p, q))
        .collect()
}

type Bits = Vec<u64>;

fn popcount(b: &[u64]) -> u32 {
    b.iter().map(|w| w.count_ones()).sum()
}

fn test_bit(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut [u64], i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

enum Outcome {
    Found(Vec<u32>),
    Exhausted,
    Aborted,
}

struct Searcher<'a> {
    /// Edges bisected by each candidate.
    cover: &'a [Bits],
    /// Candidates bisecting each edge.
    covering: &'a [Vec<u32>],
    /// Dynamic gain bounds are computed only when this is cheap.
    dynamic_gain: bool,
    static_gain: u32,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Searcher<'_> {
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|m| n > m);
        let over_time =
            n.is_multiple_of(1024) && self.deadline.is_some_and(|t| Instant::now() >= t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Candidates to branch on at this node, best first; `None` prunes.
    fn branches(&self, uncovered: &[u64], depth: usize, banned: &[u64]) -> Option<Vec<u32>> {
        let remaining = popcount(uncovered);
        let gain_of = |c: u32| -> u32 {
            self.cover[c as usize]
                .iter()
                .zip(uncovered)
                .map(|(a, b)| (a & b).count_ones())
                .sum()
        };
        let max_gain = if self.dynamic_gain {
            (0..self.cover.len() as u32)
                .filter(|&c| !test_bit(banned, c as usize))
                .map(gain_of)
                .max()
                .unwrap_or(0)
        } else {
            self.static_gain
        };
        if (depth as u64) * (max_gain as u64) < remaining as u64 {
            return None;
        }
        let mut best: Option<(usize, usize)> = None;
        for (wi, &w) in uncovered.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let e = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let live = self.covering[e]
                    .iter()
                    .filter(|&&c| !test_bit(banned, c as usize))
                    .count();
                if live == 0 {
                    return None;
                }
                if best.is_none_or(|(_, b)| live < b) {
                    best = Some((e, live));
                }
            }
        }
        let (edge, _) = best?;
        let mut cands: Vec<(u32, u32)> = self.covering[edge]
            .iter()
            .copied()
            .filter(|&c| !test_bit(banned, c as usize))
            .map(|c| (gain_of(c), c))
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Some(cands.into_iter().map(|(_, c)| c).collect())
    }

    fn dfs(
        &self,
        uncovered: &[u64],
        depth: usize,
        banned: &mut Bits,
        chosen: &mut Vec<u32>,
    ) -> Outcome {
        if uncovered.iter().all(|&w| w == 0) {
            return Outcome::Found(chosen.clone());
        }
        if depth == 0 {
            return Outcome::Exhausted;
        }
        if !self.tick() {
            return Outcome::Aborted;
        }
        let Some(branches) = self.branches(uncovered, depth, banned) else {
            return Outcome::Exhausted;
        };
        let saved = banned.clone();
        for c in branches {
            let next: Bits = uncovered
                .iter()
                .zip(&self.cover[c as usize])
                .map(|(u, v)| u & !v)
                .collect();
            chosen.push(c);
            let r = self.dfs(&next, depth - 1, banned, chosen);
            chosen.pop();
            match r {
                Outcome::Exhausted => set_bit(banned, c as usize),
                other => {
                    *banned = saved;
                    return other;
                }
            }
        }
        *banned = saved;
        Outcome::Exhausted
    }

    /// Root level: sibling branches run in parallel, each with the earlier
    /// siblings banned; the first success in branch order wins.
    fn root(&self, uncovered: &[u64], depth: usize, banned_words: usize) -> Outcome {
        if uncovered.iter().all(|&w| w == 0) {
            return Outcome::Found(Vec::new());
        }
        if depth == 0 {
            return Outcome::Exhausted;
        }
        if !self.tick() {
            return Outcome::Aborted;
        }
        let empty = vec![0u64; banned_words];
        let Some(branches) = self.branches(uncovered, depth, &empty) else {
            return Outcome::Exhausted;
        };
        let results: Vec<Outcome> = branches
            .par_iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut banned = empty.clone();
                for &b in &branches[..i] {
                    set_bit(&mut banned, b as usize);
                }
                let next: Bits = uncovered
                    .iter()
                    .zip(&self.cover[c as usize])
                    .map(|(u, v)| u & !v)
                    .collect();
                let mut chosen = vec![c];
                self.dfs(&next, depth - 1, &mut banned, &mut chosen)
            })
            .collect();
        let mut aborted = false;
        for r in results {
            match r {
                Outcome::Found(w) => return Outcome::Found(w),
                Outcome::Aborted => aborted = true,
                Outcome::Exhausted => {}
            }
        }
        if aborted {
            Outcome::Aborted
        } else {
            Outcome::Exhausted
        }
    }
}

pub fn exact_beta(n: usize, d: usize, budget: &Budget) -> Result<SearchResult> {
    exact_beta_with(n, d, budget, &Guardrails::default())
}

pub fn exact_beta_with(
    n: usize,
    d: usize,
    budget: &Budget,
    guard: &Guardrails,
) -> Result<SearchResult> {
    let start = Instant::now();
    let lower = lower_bound(n, d)?;
    let count = candidate_count(n, d);
    if count > guard.max_candidates as u128 {
        return Err(Error::Guardrail(format!(
            "{count} candidates exceed the cap of {}",
            guard.max_candidates
        )));
    }
    let universe_size = (1u128 << n.min(127)) - (n as u128 + 1) - u128::from(d % 2 == 1);
    if n > 30 || universe_size > guard.max_universe as u128 {
        return Err(Error::Guardrail(format!(
            "{universe_size} non-trivial edges exceed the cap of {}",
            guard.max_universe
        )));
    }

    let cands = candidate_masks(n, d);
    let universe: Vec<u64> = (0..1u64 << n)
        .filter(|&a| !is_trivial_mask(a, n, d))
        .collect();
    let words = universe.len().div_ceil(64);
    let mut cover: Vec<Bits> = vec![vec![0; words]; cands.len()];
    let mut covering: Vec<Vec<u32>> = vec![Vec::new(); universe.len()];
    for (e, &a) in universe.iter().enumerate() {
        for (c, &(p, q)) in cands.iter().enumerate() {
            if bisects_mask(p, q, a) {
                set_bit(&mut cover[c], e);
                covering[e].push(c as u32);
            }
        }
    }
    if let Some(e) = covering.iter().position(Vec::is_empty) {
        let edge = Edge::from_mask(n, universe[e])?;
        return Err(Error::Unbisectable(edge.to_brace_string()));
    }

    // A known feasible size caps the search.
    let ceiling = if d < n {
        general_family(n, d)?.len()
    } else {
        universe.len()
    };
    let max_k = budget.max_k.map_or(ceiling, |m| m.min(ceiling));

    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let searcher = Searcher {
        cover: &cover,
        covering: &covering,
        dynamic_gain: cands.len() * words <= 1 << 16,
        static_gain: cover.iter().map(|b| popcount(b)).max().unwrap_or(0),
        nodes: &nodes,
        stop: &stop,
        max_nodes: budget.max_nodes,
        deadline: budget.max_time.map(|t| start + t),
    };
    let full: Bits = {
        let mut b = vec![0u64; words];
        (0..universe.len()).for_each(|e| set_bit(&mut b, e));
        b
    };

    let mut proven_infeasible: Option<usize> = None;
    let first_k = (lower.lower_best as usize).max(1);
    let finish = |status, value, proven, witness| SearchResult {
        n,
        d,
        status,
        value,
        lower_best: lower.lower_best,
        proven_infeasible: proven,
        nodes_explored: nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        witness,
    };
    for k in first_k..=max_k {
        match searcher.root(&full, k, cands.len().div_ceil(64)) {
            Outcome::Found(chosen) => {
                let members = chosen
                    .iter()
                    .map(|&c| {
                        let (p, q) = cands[c as usize];
                        Bicoloring::from_masks(n, p, q)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let witness = Family::from_colorings(n, d, members, Provenance::External)?;
                debug!(
                    "exact ({n}, {d}): optimum {} after {} nodes",
                    witness.len(),
                    nodes.load(Ordering::Relaxed)
                );
                return Ok(finish(
                    Status::Optimal,
                    witness.len(),
                    proven_infeasible,
                    Some(witness),
                ));
            }
            Outcome::Exhausted => {
                debug!("exact ({n}, {d}): k={k} infeasible");
                proven_infeasible = Some(k);
            }
            Outcome::Aborted => break,
        }
    }
    let floor = lower.lower_best as usize;
    Ok(match proven_infeasible {
        Some(k) => finish(Status::LowerBoundOnly, (k + 1).max(floor), Some(k), None),
        None => finish(Status::Timeout, floor, None, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_full, Mode};
    use std::collections::HashSet;

    #[test]
    fn candidate_counts() {
        assert_eq!(enumerate_candidates(3, 2).unwrap().len(), 6);
        assert_eq!(enumerate_candidates(5, 4).unwrap().len(), 40);
        for (n, d) in [(4, 2), (5, 3), (6, 4), (6, 6), (7, 5)] {
            assert_eq!(
                enumerate_candidates(n, d).unwrap().len() as u128,
                candidate_count(n, d)
            );
        }
    }

    #[test]
    fn candidates_are_canonical_and_negation_complete() {
        let cands = enumerate_candidates(5, 3).unwrap();
        let set: HashSet<_> = cands.iter().cloned().collect();
        assert_eq!(set.len(), cands.len());
        for x in &cands {
            let first = x.support().next().unwrap();
            assert_eq!(x.sign(first), crate::coloring::Sign::Plus);
            assert!(!set.contains(&x.negated()));
        }
    }

    #[test]
    fn small_optima() {
        for (n, d, want) in [(3, 2, 3), (4, 2, 6), (5, 4, 5)] {
            let r = exact_beta(n, d, &Budget::default()).unwrap();
            assert_eq!(r.status, Status::Optimal);
            assert_eq!(r.value, want, "({n},{d})");
            let w = r.witness.unwrap();
            assert_eq!(w.len(), want);
            assert!(verify_full(&w, Mode::Exhaustive).unwrap().complete);
        }
    }

    #[test]
    fn guardrails_and_budget() {
        let tight = Guardrails {
            max_candidates: 10,
            ..Default::default()
        };
        assert!(matches!(
            exact_beta_with(5, 4, &Budget::default(), &tight),
            Err(Error::Guardrail(_))
        ));
        let r = exact_beta(
            6,
            3,
            &Budget {
                max_nodes: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_ne!(r.status, Status::Optimal);
        assert!(r.value as u64 >= r.lower_best);
        let r = exact_beta(
            5,
            4,
            &Budget {
                max_k: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.status, Status::LowerBoundOnly);
        assert_eq!((r.value, r.proven_infeasible), (5, Some(4)));
        // A cap below the closed-form bound learns nothing new.
        let r = exact_beta(
            4,
            2,
            &Budget {
                max_k: Some(5),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((r.status, r.value), (Status::Timeout, 6));
    }

    #[test]
    fn unbisectable_points_at_full_weight() {
        // d = n = 4: odd 3-sets cannot be bisected.
        assert!(matches!(
            exact_beta(4, 4, &Budget::default()),
            Err(Error::Unbisectable(_))
        ));
        // d = n = 3: only pairs are non-trivial, and they can be.
        let r = exact_beta(3, 3, &Budget::default()).unwrap();
        assert_eq!(r.status, Status::Optimal);
    }
}
