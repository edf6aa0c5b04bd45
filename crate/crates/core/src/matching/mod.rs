//! Minimum-cost matchings between token multisets under graph distance.
//!
//! The minimum cost `c*(A, B)` lower-bounds the length of any token-sliding
//! sequence from `A` to `B`; on trees and interval graphs between feasible
//! configurations it is attained exactly.

mod assignment;
mod fast;

use std::collections::BTreeMap;
use std::fmt;

pub use fast::fast_match_intervals;

use crate::error::{Error, Result};
use crate::graph::{distances_from, succ_set, DistanceTable, Graph, INFINITE_DISTANCE};
use crate::multiset::TokenMultiset;
use crate::Vertex;

/// Total distance of a matching; `Infinite` when some pair is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchCost {
    Finite(u64),
    Infinite,
}

impl MatchCost {
    pub fn finite(self) -> Option<u64> {
        match self {
            MatchCost::Finite(c) => Some(c),
            MatchCost::Infinite => None,
        }
    }
}

impl fmt::Display for MatchCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchCost::Finite(c) => write!(f, "{c}"),
            MatchCost::Infinite => f.write_str("inf"),
        }
    }
}

/// A multiset of ordered pairs `(source, target)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: BTreeMap<(Vertex, Vertex), u32>,
    total: u64,
}

impl Matching {
    pub fn new() -> Self {
        Matching::default()
    }

    /// Sums the counts of repeated pairs. Builds the map in bulk, which is
    /// much faster than repeated [`Matching::add`] for large inputs.
    pub fn from_pairs<I: IntoIterator<Item = ((Vertex, Vertex), u32)>>(pairs: I) -> Self {
        let mut list: Vec<((Vertex, Vertex), u32)> =
            pairs.into_iter().filter(|&(_, c)| c > 0).collect();
        list.sort_unstable_by_key(|&(p, _)| p);
        list.dedup_by(|next, kept| {
            let same = next.0 == kept.0;
            if same {
                kept.1 += next.1;
            }
            same
        });
        let total = list.iter().map(|&(_, c)| c as u64).sum();
        Matching {
            pairs: list.into_iter().collect(),
            total,
        }
    }

    pub fn add(&mut self, u: Vertex, v: Vertex, count: u32) {
        if count == 0 {
            return;
        }
        *self.pairs.entry((u, v)).or_insert(0) += count;
        self.total += count as u64;
    }

    pub fn remove(&mut self, u: Vertex, v: Vertex, count: u32) -> Result<()> {
        let Some(have) = self.pairs.get_mut(&(u, v)) else {
            return Err(Error::Contract(format!("pair ({u}, {v}) is not matched")));
        };
        if *have < count {
            return Err(Error::Contract(format!(
                "pair ({u}, {v}) has multiplicity {have} < {count}"
            )));
        }
        *have -= count;
        if *have == 0 {
            self.pairs.remove(&(u, v));
        }
        self.total -= count as u64;
        Ok(())
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.pairs.get(&(u, v)).copied().unwrap_or(0)
    }

    /// Number of matched token pairs, counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// `((u, v), multiplicity)` ordered by `u`, then `v`.
    pub fn pairs(&self) -> impl Iterator<Item = ((Vertex, Vertex), u32)> + '_ {
        self.pairs.iter().map(|(&k, &c)| (k, c))
    }

    /// `M(u)`: the targets matched to source `u`, by increasing id.
    pub fn matches_of(&self, u: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.pairs
            .range((u, 0)..=(u, Vertex::MAX))
            .map(|(&(_, v), &c)| (v, c))
    }

    /// `M⁻¹(v)`: the sources matched to target `v`, by increasing id.
    pub fn sources_of(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.pairs
            .iter()
            .filter(move |(&(_, w), _)| w == v)
            .map(|(&(u, _), &c)| (u, c))
    }

    /// `M⁻¹`: every pair reversed.
    pub fn inverse(&self) -> Matching {
        Matching::from_pairs(self.pairs().map(|((u, v), c)| ((v, u), c)))
    }

    pub fn sources(&self, universe: usize) -> TokenMultiset {
        let mut m = TokenMultiset::new(universe);
        for ((u, _), c) in self.pairs() {
            m.add(u, c);
        }
        m
    }

    pub fn targets(&self, universe: usize) -> TokenMultiset {
        let mut m = TokenMultiset::new(universe);
        for ((_, v), c) in self.pairs() {
            m.add(v, c);
        }
        m
    }

    /// Checks the matching condition: sources sum to `a`, targets to `b`.
    pub fn is_between(&self, a: &TokenMultiset, b: &TokenMultiset) -> bool {
        let n = a.universe().max(b.universe());
        self.sources(n).same_tokens(a) && self.targets(n).same_tokens(b)
    }

    pub(crate) fn cost_in(&self, table: &DistanceTable) -> MatchCost {
        let mut total = 0u64;
        for ((u, v), c) in self.pairs() {
            let d = table.get(u, v);
            if d == INFINITE_DISTANCE {
                return MatchCost::Infinite;
            }
            total += d as u64 * c as u64;
        }
        MatchCost::Finite(total)
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// `c(M) = Σ d(u, v) · M(u, v)`.
pub fn matching_cost(m: &Matching, g: &Graph) -> MatchCost {
    let mut total = 0u64;
    let mut current: Option<(Vertex, Vec<u32>)> = None;
    for ((u, v), c) in m.pairs() {
        if current.as_ref().is_none_or(|(s, _)| *s != u) {
            current = Some((u, distances_from(g, u)));
        }
        let d = current.as_ref().unwrap().1[v];
        if d == INFINITE_DISTANCE {
            return MatchCost::Infinite;
        }
        total += d as u64 * c as u64;
    }
    MatchCost::Finite(total)
}

fn check_sizes(a: &TokenMultiset, b: &TokenMultiset) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Size {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Exact minimum-cost matching between `a` and `b`.
///
/// Tokens are expanded to unit capacity and solved as a dense assignment
/// problem, `O(k³)` for `k = |a|`. An infinite cost is returned (not an
/// error) when the components of `a` and `b` cannot be balanced.
pub fn min_cost_matching(
    g: &Graph,
    a: &TokenMultiset,
    b: &TokenMultiset,
) -> Result<(Matching, MatchCost)> {
    check_sizes(a, b)?;
    let mut rows: BTreeMap<Vertex, Vec<u32>> = BTreeMap::new();
    for u in a.support() {
        rows.insert(u, distances_from(g, u));
    }
    Ok(solve_expanded(a, b, |u, v| rows[&u][v], g.vertex_count()))
}

pub(crate) fn min_cost_matching_in(
    table: &DistanceTable,
    a: &TokenMultiset,
    b: &TokenMultiset,
    n: usize,
) -> Result<(Matching, MatchCost)> {
    check_sizes(a, b)?;
    Ok(solve_expanded(a, b, |u, v| table.get(u, v), n))
}

fn solve_expanded(
    a: &TokenMultiset,
    b: &TokenMultiset,
    dist: impl Fn(Vertex, Vertex) -> u32,
    n: usize,
) -> (Matching, MatchCost) {
    let left = a.expand();
    let right = b.expand();
    let k = left.len();
    // Any finite assignment costs at most k·(n−1) < unreachable.
    let unreachable = (k as i64) * (n as i64) + 1;
    let cost: Vec<Vec<i64>> = left
        .iter()
        .map(|&u| {
            right
                .iter()
                .map(|&v| match dist(u, v) {
                    INFINITE_DISTANCE => unreachable,
                    d => d as i64,
                })
                .collect()
        })
        .collect();
    let assignment = assignment::solve(&cost);

    let mut m = Matching::new();
    let mut total = 0i64;
    let mut infinite = false;
    for (i, &j) in assignment.iter().enumerate() {
        m.add(left[i], right[j], 1);
        infinite |= cost[i][j] == unreachable;
        total += cost[i][j];
    }
    let cost = if infinite {
        MatchCost::Infinite
    } else {
        MatchCost::Finite(total as u64)
    };
    (m, cost)
}

/// Largest `|a|` the factorial oracle accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 8;

/// Exhaustive minimum over all bijections between the token expansions.
pub fn brute_force_matching(g: &Graph, a: &TokenMultiset, b: &TokenMultiset) -> Result<MatchCost> {
    check_sizes(a, b)?;
    if a.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleScale(format!(
            "brute-force matching is capped at {BRUTE_FORCE_LIMIT} tokens, got {}",
            a.len()
        )));
    }
    let left = a.expand();
    let right = b.expand();
    let rows: Vec<Vec<u32>> = left.iter().map(|&u| distances_from(g, u)).collect();

    fn search(
        i: usize,
        used: &mut [bool],
        rows: &[Vec<u32>],
        right: &[Vertex],
        acc: u64,
        best: &mut Option<u64>,
    ) {
        if i == rows.len() {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
            return;
        }
        for j in 0..right.len() {
            let d = rows[i][right[j]];
            if used[j] || d == INFINITE_DISTANCE {
                continue;
            }
            used[j] = true;
            search(i + 1, used, rows, right, acc + d as u64, best);
            used[j] = false;
        }
    }

    let mut best = None;
    search(
        0,
        &mut vec![false; right.len()],
        &rows,
        &right,
        0,
        &mut best,
    );
    Ok(best.map_or(MatchCost::Infinite, MatchCost::Finite))
}

/// Rewrites a minimum-cost matching so that every token of `a ∩ b` is
/// matched to itself, by the exchange `(x,v),(v,y) → (v,v),(x,y)`.
pub fn normalize_matching(
    g: &Graph,
    m: &Matching,
    a: &TokenMultiset,
    b: &TokenMultiset,
) -> Result<Matching> {
    if !m.is_between(a, b) {
        return Err(Error::Contract(
            "matching does not pair the given multisets".into(),
        ));
    }
    let out = normalize_unchecked(m, a, b);
    debug_assert!(matching_cost(&out, g) <= matching_cost(m, g));
    Ok(out)
}

pub(crate) fn normalize_unchecked(m: &Matching, a: &TokenMultiset, b: &TokenMultiset) -> Matching {
    let mut out = m.clone();
    let n = a.universe().max(b.universe());
    for v in 0..n {
        let want = a.get(v).min(b.get(v));
        while out.get(v, v) < want {
            // Both exist while M(v,v) < min(a(v), b(v)).
            let (x, cx) = out
                .sources_of(v)
                .find(|&(x, _)| x != v)
                .expect("target v has a foreign source");
            let (y, cy) = out
                .matches_of(v)
                .find(|&(y, _)| y != v)
                .expect("source v has a foreign target");
            let c = cx.min(cy).min(want - out.get(v, v));
            out.remove(x, v, c).expect("pair present");
            out.remove(v, y, c).expect("pair present");
            out.add(v, v, c);
            out.add(x, y, c);
        }
    }
    out
}

/// `(M ∖ {(u, target)}) ∪ {(u_next, target)}` after sliding a source token
/// from `u` to `u_next` along a shortest path toward `target`.
pub fn rematch_after_slide(
    g: &Graph,
    m: &Matching,
    u: Vertex,
    u_next: Vertex,
    target: Vertex,
) -> Result<Matching> {
    if m.get(u, target) == 0 {
        return Err(Error::Contract(format!("({u}, {target}) is not matched")));
    }
    let succ = succ_set(g, u, target).map_err(|e| Error::Contract(e.to_string()))?;
    if !succ.contains(&u_next) {
        return Err(Error::Contract(format!(
            "{u_next} does not follow {u} on a shortest path to {target}"
        )));
    }
    let mut out = m.clone();
    out.remove(u, target, 1)?;
    out.add(u_next, target, 1);
    Ok(out)
}

/// `succ_M(u)`: neighbours of `u` on a shortest path to some match `≠ u`.
pub fn succ_toward_matches(g: &Graph, m: &Matching, u: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = m
        .matches_of(u)
        .filter(|&(v, _)| v != u)
        .filter_map(|(v, _)| succ_set(g, u, v).ok())
        .flatten()
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
