//! Interval representations with pairwise-distinct integer endpoints.

use crate::error::{Error, Result};
use crate::graph::{distances_from, Graph, INFINITE_DISTANCE};
use crate::Vertex;

/// Closed intervals `[left, right]`, one per vertex, with `left < right`
/// and all `2n` endpoints pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    intervals: Vec<(i64, i64)>,
}

/// How interval `u` sits relative to interval `v`. Exactly one holds for
/// any two intervals with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `r(u) < l(v)`
    LeftOf,
    RightOf,
    /// `l(v) < l(u)` and `r(u) < r(v)`
    NestedIn,
    Contains,
    /// `l(u) < l(v) < r(u) < r(v)`
    LeftIntersects,
    RightIntersects,
}

impl Relation {
    /// The relation of `v` to `u` given that of `u` to `v`.
    pub fn mirror(self) -> Relation {
        match self {
            Relation::LeftOf => Relation::RightOf,
            Relation::RightOf => Relation::LeftOf,
            Relation::NestedIn => Relation::Contains,
            Relation::Contains => Relation::NestedIn,
            Relation::LeftIntersects => Relation::RightIntersects,
            Relation::RightIntersects => Relation::LeftIntersects,
        }
    }

    pub fn intersects(self) -> bool {
        !matches!(self, Relation::LeftOf | Relation::RightOf)
    }
}

impl IntervalRepresentation {
    /// Validates an already-normalized representation.
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        let mut endpoints = Vec::with_capacity(2 * intervals.len());
        for (v, &(l, r)) in intervals.iter().enumerate() {
            if l >= r {
                return Err(Error::Input(format!(
                    "interval {v} = [{l}, {r}] needs left < right"
                )));
            }
            endpoints.push(l);
            endpoints.push(r);
        }
        endpoints.sort_unstable();
        if endpoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input(
                "interval endpoints must be pairwise distinct".into(),
            ));
        }
        Ok(IntervalRepresentation { intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    #[inline]
    pub fn left(&self, v: Vertex) -> i64 {
        self.intervals[v].0
    }

    #[inline]
    pub fn right(&self, v: Vertex) -> i64 {
        self.intervals[v].1
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    /// Vertices sorted by increasing right endpoint.
    pub fn by_right(&self) -> Vec<Vertex> {
        let mut order: Vec<Vertex> = (0..self.len()).collect();
        order.sort_unstable_by_key(|&v| self.right(v));
        order
    }
}

/// Rank-compresses raw closed intervals to endpoints `1..=2n`.
///
/// At equal raw coordinates left endpoints come before right endpoints, so
/// touching intervals such as `[1, 5]` and `[5, 9]` keep intersecting.
/// Ties within a kind are broken by vertex id.
pub fn normalize_representation(raw: &[(i64, i64)]) -> Result<IntervalRepresentation> {
    for (v, &(l, r)) in raw.iter().enumerate() {
        if l > r {
            return Err(Error::Input(format!(
                "interval {v} = [{l}, {r}] has left > right"
            )));
        }
    }
    // (coordinate, 0 = left / 1 = right, vertex)
    let mut events: Vec<(i64, u8, Vertex)> = raw
        .iter()
        .enumerate()
        .flat_map(|(v, &(l, r))| [(l, 0, v), (r, 1, v)])
        .collect();
    events.sort_unstable();
    let mut intervals = vec![(0, 0); raw.len()];
    for (rank, &(_, kind, v)) in events.iter().enumerate() {
        let rank = rank as i64 + 1;
        if kind == 0 {
            intervals[v].0 = rank;
        } else {
            intervals[v].1 = rank;
        }
    }
    // Left endpoints rank before right endpoints at equal coordinates, so
    // closed intervals that merely touch still intersect afterwards.
    IntervalRepresentation::new(intervals)
}

pub fn classify_relation(rep: &IntervalRepresentation, u: Vertex, v: Vertex) -> Result<Relation> {
    if u == v {
        return Err(Error::Input(format!("relation of vertex {u} with itself")));
    }
    let (lu, ru) = (rep.left(u), rep.right(u));
    let (lv, rv) = (rep.left(v), rep.right(v));
    Ok(if ru < lv {
        Relation::LeftOf
    } else if rv < lu {
        Relation::RightOf
    } else if lv < lu && ru < rv {
        Relation::NestedIn
    } else if lu < lv && rv < ru {
        Relation::Contains
    } else if lu < lv {
        Relation::LeftIntersects
    } else {
        Relation::RightIntersects
    })
}

/// Sweep over sorted endpoints; each opening interval meets every interval
/// currently open. Runs in `O(n log n + m)`.
pub fn intersection_graph(rep: &IntervalRepresentation) -> Graph {
    let n = rep.len();
    let mut events: Vec<(i64, Vertex)> = Vec::with_capacity(2 * n);
    for v in 0..n {
        events.push((rep.left(v), v));
        events.push((rep.right(v), v));
    }
    events.sort_unstable();

    let mut active: Vec<Vertex> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    let mut edges = Vec::new();
    for (x, v) in events {
        if x == rep.left(v) {
            edges.extend(active.iter().map(|&w| (w, v)));
            slot[v] = active.len();
            active.push(v);
        } else {
            let i = slot[v];
            active.swap_remove(i);
            if let Some(&moved) = active.get(i) {
                slot[moved] = i;
            }
        }
    }
    Graph::new(n, &edges).expect("sweep only produces valid edges")
}

/// Checks that along a shortest path `v_1 … v_k` with `r(v_1) < r(v_k)`,
/// for every `i ≤ k − 2`, `v_{i+2}` misses `v_i` and `v_{i+1}`
/// right-intersects `v_i`. The first interval is the one exception to the
/// latter: nothing shortcuts past `v_1`, so it may be nested in `v_2`.
pub fn check_shortest_path_structure(
    rep: &IntervalRepresentation,
    path: &[Vertex],
) -> Result<bool> {
    let g = intersection_graph(rep);
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return Err(Error::Input("empty path".into()));
    };
    if path.iter().any(|&v| v >= rep.len()) {
        return Err(Error::Input(
            "path names a vertex outside the representation".into(),
        ));
    }
    let d = distances_from(&g, first)[last];
    let is_walk = path.windows(2).all(|w| g.has_edge(w[0], w[1]));
    if !is_walk || d == INFINITE_DISTANCE || d as usize + 1 != path.len() {
        return Err(Error::Input("not a shortest path".into()));
    }
    if path.len() < 3 {
        return Ok(true);
    }
    if rep.right(first) > rep.right(last) {
        return Err(Error::Input(
            "path must run left to right: r(v_1) < r(v_k)".into(),
        ));
    }
    for i in 0..path.len() - 2 {
        let step = classify_relation(rep, path[i + 1], path[i])?;
        let skip = classify_relation(rep, path[i + 2], path[i])?;
        let step_ok = step == Relation::RightIntersects || (i == 0 && step == Relation::Contains);
        if !step_ok || skip.intersects() {
            return Ok(false);
        }
    }
    Ok(true)
}
