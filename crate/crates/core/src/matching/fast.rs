//! Greedy `O(n log n)` minimum matching on interval graphs.
//!
//! Vertices are swept by increasing right endpoint. Tokens waiting on the
//! current vertex first pair with opposite tokens in its closed
//! neighbourhood, preferring the smallest right endpoint; unpaired tokens
//! all slide together to the neighbour reaching furthest right. The cost is
//! the number of unit slides plus one per pair matched across an edge.

use crate::error::{Error, Result};
use crate::interval::IntervalRepresentation;
use crate::multiset::TokenMultiset;
use crate::Vertex;

use super::{MatchCost, Matching};

/// Compact index for per-vertex and per-token arrays; halves the memory
/// the sweep touches compared with `usize`.
type Idx = u32;
const NIL: Idx = Idx::MAX;

/// Min-tree over positions with "leftmost leaf below a threshold" search.
struct MinTree {
    size: usize,
    min: Vec<Idx>,
}

impl MinTree {
    const EMPTY: Idx = Idx::MAX;

    fn new(len: usize) -> Self {
        let size = len.next_power_of_two().max(1);
        MinTree {
            size,
            min: vec![Self::EMPTY; 2 * size],
        }
    }

    fn set(&mut self, pos: usize, value: Idx) {
        let mut i = pos + self.size;
        self.min[i] = value;
        while i > 1 {
            i /= 2;
            self.min[i] = self.min[2 * i].min(self.min[2 * i + 1]);
        }
    }

    fn first_below(&self, threshold: Idx) -> Option<usize> {
        if self.min[1] >= threshold {
            return None;
        }
        let mut i = 1;
        while i < self.size {
            i = if self.min[2 * i] < threshold {
                2 * i
            } else {
                2 * i + 1
            };
        }
        Some(i - self.size)
    }
}

const SOURCE: usize = 0;
const TARGET: usize = 1;

/// Vertices in increasing `key` order. Counting sort when the keys span
/// at most a few times `n` values, as normalized representations do.
fn sorted_by(n: usize, key: impl Fn(Vertex) -> i64) -> Vec<Idx> {
    let Some(lo) = (0..n).map(&key).min() else {
        return Vec::new();
    };
    let hi = (0..n).map(&key).max().unwrap_or(lo);
    let span = (hi as i128 - lo as i128 + 1) as u128;
    if span > 4 * n as u128 + 16 {
        let mut order: Vec<Idx> = (0..n as Idx).collect();
        order.sort_by_key(|&v| key(v as Vertex));
        return order;
    }
    let mut start = vec![0 as Idx; span as usize + 1];
    for v in 0..n {
        start[(key(v) - lo) as usize + 1] += 1;
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    let mut order = vec![0; n];
    for v in 0..n {
        let slot = &mut start[(key(v) - lo) as usize];
        order[*slot as usize] = v as Idx;
        *slot += 1;
    }
    order
}

/// Waiting tokens as one linked list per (side, vertex), so a whole group
/// moves to another vertex in `O(1)`.
struct Queues {
    head: Vec<Idx>,
    tail: Vec<Idx>,
    len: Vec<Idx>,
    next: Vec<Idx>,
    origin: Vec<Idx>,
}

impl Queues {
    fn new(slots: usize, tokens: usize) -> Self {
        Queues {
            head: vec![NIL; slots],
            tail: vec![NIL; slots],
            len: vec![0; slots],
            next: Vec::with_capacity(tokens),
            origin: Vec::with_capacity(tokens),
        }
    }

    fn len(&self, slot: usize) -> usize {
        self.len[slot] as usize
    }

    fn push(&mut self, slot: usize, origin: Vertex) {
        let token = self.origin.len() as Idx;
        self.origin.push(origin as Idx);
        self.next.push(self.head[slot]);
        if self.head[slot] == NIL {
            self.tail[slot] = token;
        }
        self.head[slot] = token;
        self.len[slot] += 1;
    }

    fn pop(&mut self, slot: usize) -> Vertex {
        let token = self.head[slot] as usize;
        self.head[slot] = self.next[token];
        self.len[slot] -= 1;
        self.origin[token] as Vertex
    }

    fn clear(&mut self, slot: usize) {
        self.head[slot] = NIL;
        self.len[slot] = 0;
    }

    /// Moves every token of `from` to the front of `to`.
    fn splice(&mut self, from: usize, to: usize) {
        if self.len[from] == 0 {
            return;
        }
        self.next[self.tail[from] as usize] = self.head[to];
        if self.head[to] == NIL {
            self.tail[to] = self.tail[from];
        }
        self.head[to] = self.head[from];
        self.len[to] += self.len[from];
        self.clear(from);
    }
}

struct Sweep<'a> {
    rep: &'a IntervalRepresentation,
    n: usize,
    /// Vertices by increasing right endpoint.
    order: Vec<Idx>,
    position: Vec<Idx>,
    /// Rank of each vertex's left endpoint among all left endpoints.
    left_rank: Vec<Idx>,
    /// Vertices by increasing left endpoint.
    by_left: Vec<Idx>,
    /// `furthest[i]`: the vertex reaching furthest right among the `i + 1`
    /// intervals with the smallest left endpoints.
    furthest: Vec<Idx>,
    waiting: Queues,
    /// Per side: left rank at the r-order position of every vertex holding
    /// waiting tokens.
    active: [MinTree; 2],
    /// Number of intervals starting before the current sweep point.
    started: usize,
}

impl<'a> Sweep<'a> {
    fn new(rep: &'a IntervalRepresentation, tokens: usize) -> Self {
        let n = rep.len();
        let order = sorted_by(n, |v| rep.right(v));
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i as Idx;
        }
        let by_left = sorted_by(n, |v| rep.left(v));
        let mut left_rank = vec![0; n];
        let mut furthest: Vec<Idx> = Vec::with_capacity(n);
        for (i, &v) in by_left.iter().enumerate() {
            left_rank[v as usize] = i as Idx;
            let best = match furthest.last() {
                Some(&w) if rep.right(w as Vertex) > rep.right(v as Vertex) => w,
                _ => v,
            };
            furthest.push(best);
        }
        Sweep {
            rep,
            n,
            order,
            position,
            left_rank,
            by_left,
            furthest,
            waiting: Queues::new(2 * n, tokens),
            active: [MinTree::new(n), MinTree::new(n)],
            started: 0,
        }
    }

    fn slot(&self, side: usize, v: Vertex) -> usize {
        side * self.n + v
    }

    fn refresh(&mut self, side: usize, v: Vertex) {
        let value = if self.waiting.len(self.slot(side, v)) == 0 {
            MinTree::EMPTY
        } else {
            self.left_rank[v]
        };
        self.active[side].set(self.position[v] as usize, value);
    }

    /// Moves the sweep to `v`; called with `v` in increasing right endpoint,
    /// so the count of intervals starting before `r(v)` only grows.
    fn advance(&mut self, v: Vertex) {
        let r = self.rep.right(v);
        while self.started < self.n && self.rep.left(self.by_left[self.started] as Vertex) < r {
            self.started += 1;
        }
    }

    /// Waiting vertex on `side` adjacent to (or equal to) the current
    /// vertex, with the smallest right endpoint. Waiting tokens only sit at
    /// right endpoints past the sweep point, so starting before it is
    /// exactly adjacency.
    fn nearest_waiting(&self, side: usize) -> Option<Vertex> {
        let pos = self.active[side].first_below(self.started as Idx)?;
        Some(self.order[pos] as Vertex)
    }

    /// Neighbour of the current vertex `v` with the largest right endpoint,
    /// if it lies right of `v`.
    fn push_target(&self, v: Vertex) -> Option<Vertex> {
        let w = self.furthest[self.started.checked_sub(1)?] as Vertex;
        (self.rep.right(w) > self.rep.right(v)).then_some(w)
    }
}

/// Minimum matching between `a` and `b` on the intersection graph of `rep`.
///
/// Tokens of `a ∩ b` are matched to themselves first; the greedy sweep runs
/// on the disjoint remainder. When some tokens cannot be paired (their
/// components are unbalanced) the cost is [`MatchCost::Infinite`] and the
/// returned matching holds only the pairs found.
pub fn fast_match_intervals(
    rep: &IntervalRepresentation,
    a: &TokenMultiset,
    b: &TokenMultiset,
) -> Result<(Matching, MatchCost)> {
    if a.len() != b.len() {
        return Err(Error::Size {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = rep.len();
    if a.support().chain(b.support()).any(|v| v >= n) {
        return Err(Error::Input("token outside the representation".into()));
    }
    let common = a.intersection(b);
    let moving = 2 * (a.len() - common.len());
    if n >= NIL as usize || moving >= NIL as u64 {
        return Err(Error::Input(
            "instance too large for the interval matcher".into(),
        ));
    }

    let mut pairs: Vec<((Vertex, Vertex), u32)> =
        Vec::with_capacity(common.support().count() + moving as usize / 2);
    pairs.extend(common.iter().map(|(v, c)| ((v, v), c)));
    let mut sweep = Sweep::new(rep, moving as usize);
    for (side, tokens) in [
        (SOURCE, a.difference(&common)),
        (TARGET, b.difference(&common)),
    ] {
        for (v, c) in tokens.iter() {
            let slot = sweep.slot(side, v);
            for _ in 0..c {
                sweep.waiting.push(slot, v);
            }
            sweep.refresh(side, v);
        }
    }

    let mut cost = 0u64;
    let mut stranded = false;
    for i in 0..n {
        let v = sweep.order[i] as Vertex;
        sweep.advance(v);
        for side in [SOURCE, TARGET] {
            let other = 1 - side;
            let here = sweep.slot(side, v);
            while sweep.waiting.len(here) > 0 {
                let Some(x) = sweep.nearest_waiting(other) else {
                    break;
                };
                let there = sweep.slot(other, x);
                let count = sweep.waiting.len(here).min(sweep.waiting.len(there));
                for _ in 0..count {
                    let mine = sweep.waiting.pop(here);
                    let theirs = sweep.waiting.pop(there);
                    let pair = if side == SOURCE {
                        (mine, theirs)
                    } else {
                        (theirs, mine)
                    };
                    pairs.push((pair, 1));
                }
                if x != v {
                    cost += count as u64;
                }
                sweep.refresh(side, v);
                sweep.refresh(other, x);
            }
        }

        for side in [SOURCE, TARGET] {
            let here = sweep.slot(side, v);
            let group = sweep.waiting.len(here);
            if group == 0 {
                continue;
            }
            match sweep.push_target(v) {
                Some(w) => {
                    cost += group as u64;
                    let to = sweep.slot(side, w);
                    sweep.waiting.splice(here, to);
                    sweep.refresh(side, w);
                }
                // v reaches furthest right in its component: nothing left to meet.
                None => {
                    stranded = true;
                    sweep.waiting.clear(here);
                }
            }
            sweep.refresh(side, v);
        }
    }

    let cost = if stranded {
        MatchCost::Infinite
    } else {
        MatchCost::Finite(cost)
    };
    Ok((Matching::from_pairs(pairs), cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::interval::{intersection_graph, normalize_representation};
    use crate::matching::{matching_cost, min_cost_matching};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p4() -> IntervalRepresentation {
        IntervalRepresentation::new(vec![(1, 4), (3, 6), (5, 8), (7, 10)]).unwrap()
    }

    fn tokens(n: usize, vs: &[Vertex]) -> TokenMultiset {
        TokenMultiset::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn identical_multisets_strip_to_identity() {
        let a = tokens(4, &[0, 2, 2]);
        let (m, c) = fast_match_intervals(&p4(), &a, &a).unwrap();
        assert_eq!(c, MatchCost::Finite(0));
        assert_eq!(m, Matching::from_pairs([((0, 0), 1), ((2, 2), 2)]));
    }

    #[test]
    fn path_examples() {
        let (m, c) = fast_match_intervals(&p4(), &tokens(4, &[0, 2]), &tokens(4, &[1, 3])).unwrap();
        assert_eq!(c, MatchCost::Finite(2));
        assert_eq!(matching_cost(&m, &intersection_graph(&p4())), c);

        let (m, c) = fast_match_intervals(&p4(), &tokens(4, &[0]), &tokens(4, &[3])).unwrap();
        assert_eq!(c, MatchCost::Finite(3));
        assert_eq!(m, Matching::from_pairs([((0, 3), 1)]));
    }

    #[test]
    fn target_tokens_walk_too() {
        let (m, c) = fast_match_intervals(&p4(), &tokens(4, &[3]), &tokens(4, &[0])).unwrap();
        assert_eq!(c, MatchCost::Finite(3));
        assert_eq!(m, Matching::from_pairs([((3, 0), 1)]));
    }

    #[test]
    fn unbalanced_components_are_infinite() {
        let rep = IntervalRepresentation::new(vec![(1, 2), (3, 4)]).unwrap();
        let (_, c) = fast_match_intervals(&rep, &tokens(2, &[0]), &tokens(2, &[1])).unwrap();
        assert_eq!(c, MatchCost::Infinite);
        assert!(fast_match_intervals(&rep, &tokens(2, &[0]), &tokens(2, &[])).is_err());
    }

    #[test]
    fn agrees_with_exact_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(2..=14);
            let rep = normalize_representation(&gen::random_intervals(n, &mut rng)).unwrap();
            let g = intersection_graph(&rep);
            let k = rng.gen_range(1..=5);
            let a = gen::random_multiset(n, k, &mut rng);
            let b = gen::random_multiset(n, k, &mut rng);
            let (m, fast) = fast_match_intervals(&rep, &a, &b).unwrap();
            let (_, exact) = min_cost_matching(&g, &a, &b).unwrap();
            assert_eq!(fast, exact, "{rep:?} {a:?} {b:?}");
            if fast != MatchCost::Infinite {
                assert!(m.is_between(&a, &b));
                assert_eq!(matching_cost(&m, &g), exact);
            }
        }
    }
}
