//! Brute-force ground truth for small instances: breadth-first search over
//! the reconfiguration graph, whose nodes are the feasible configurations
//! with a fixed token count and whose edges are single slides.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{is_dominating, is_hitting, Graph, SetSystem};
use crate::matching::{min_cost_matching, MatchCost};
use crate::moves::{expand_moves, MoveSequence};
use crate::multiset::TokenMultiset;
use crate::Vertex;

/// Default bound on visited configurations.
pub const DEFAULT_STATE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy)]
pub enum FeasibilityPredicate<'a> {
    Dominating(&'a Graph),
    Hitting(&'a SetSystem),
    /// Support independent and no stacked tokens.
    IndependentSet(&'a Graph),
}

impl FeasibilityPredicate<'_> {
    pub fn holds(&self, d: &TokenMultiset) -> bool {
        match self {
            FeasibilityPredicate::Dominating(g) => is_dominating(g, d),
            FeasibilityPredicate::Hitting(s) => is_hitting(s, d),
            FeasibilityPredicate::IndependentSet(g) => d
                .iter()
                .all(|(v, c)| c == 1 && g.neighbors(v).iter().all(|&w| !d.contains(w))),
        }
    }
}

/// Sorted token list; equal multisets have equal keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigurationKey(Vec<Vertex>);

impl ConfigurationKey {
    pub fn of(d: &TokenMultiset) -> Self {
        ConfigurationKey(d.expand())
    }

    pub fn tokens(&self) -> &[Vertex] {
        &self.0
    }

    fn to_multiset(&self, universe: usize) -> TokenMultiset {
        TokenMultiset::from_vertices(universe, self.0.iter().copied())
            .expect("key vertices in range")
    }

    /// Every key reachable by one slide, in a deterministic order.
    fn slides<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = ConfigurationKey> + 'a {
        (0..self.0.len())
            .filter(move |&i| i == 0 || self.0[i] != self.0[i - 1])
            .flat_map(move |i| {
                g.neighbors(self.0[i]).iter().map(move |&w| {
                    let mut next = self.0.clone();
                    next.remove(i);
                    let at = next.partition_point(|&x| x < w);
                    next.insert(at, w);
                    ConfigurationKey(next)
                })
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfsOutcome {
    Distance(u64),
    Unreachable,
    CapExceeded,
}

pub fn reconfig_distance_bfs(
    g: &Graph,
    pred: FeasibilityPredicate<'_>,
    start: &TokenMultiset,
    goal: &TokenMultiset,
    cap: usize,
) -> Result<BfsOutcome> {
    if start.len() != goal.len() {
        return Err(Error::Size {
            left: start.len(),
            right: goal.len(),
        });
    }
    if !pred.holds(start) || !pred.holds(goal) {
        return Err(Error::Feasibility(
            "oracle endpoints must be feasible".into(),
        ));
    }
    let n = g.vertex_count();
    let goal_key = ConfigurationKey::of(goal);
    let start_key = ConfigurationKey::of(start);
    if start_key == goal_key {
        return Ok(BfsOutcome::Distance(0));
    }
    let mut dist: HashMap<ConfigurationKey, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(start_key.clone(), 0);
    queue.push_back(start_key);
    while let Some(key) = queue.pop_front() {
        let d = dist[&key];
        for next in key.slides(g) {
            if dist.contains_key(&next) || !pred.holds(&next.to_multiset(n)) {
                continue;
            }
            if next == goal_key {
                return Ok(BfsOutcome::Distance(d + 1));
            }
            if dist.len() >= cap {
                return Ok(BfsOutcome::CapExceeded);
            }
            dist.insert(next.clone(), d + 1);
            queue.push_back(next);
        }
    }
    Ok(BfsOutcome::Unreachable)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// Configuration after the longest valid prefix.
    pub last: TokenMultiset,
    pub failure: Option<String>,
}

/// Replays `seq` from `start`, checking every slide and every configuration.
pub fn verify_sequence(
    g: &Graph,
    pred: FeasibilityPredicate<'_>,
    start: &TokenMultiset,
    seq: &MoveSequence,
) -> Verification {
    let mut current = start.clone();
    let fail = |current: TokenMultiset, why: String| Verification {
        ok: false,
        last: current,
        failure: Some(why),
    };
    if !pred.holds(&current) {
        return fail(current, "start configuration is infeasible".into());
    }
    for (step, (u, v)) in expand_moves(seq).into_iter().enumerate() {
        if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
            return fail(current, format!("step {step}: ({u}, {v}) is not an edge"));
        }
        if !current.contains(u) {
            return fail(current, format!("step {step}: no token on {u}"));
        }
        let mut next = current.clone();
        next.slide_in_place(u, v).expect("token present");
        if !pred.holds(&next) {
            return fail(
                current,
                format!("step {step}: sliding {u} -> {v} breaks feasibility"),
            );
        }
        current = next;
    }
    Verification {
        ok: true,
        last: current,
        failure: None,
    }
}

/// Valid, ends at `goal`, and as long as both the BFS distance and the
/// matching lower bound.
pub fn certify_optimality(
    g: &Graph,
    pred: FeasibilityPredicate<'_>,
    start: &TokenMultiset,
    goal: &TokenMultiset,
    seq: &MoveSequence,
) -> Result<bool> {
    let check = verify_sequence(g, pred, start, seq);
    if !check.ok || !check.last.same_tokens(goal) {
        return Ok(false);
    }
    let len = seq.total_length();
    let bfs = match reconfig_distance_bfs(g, pred, start, goal, DEFAULT_STATE_CAP)? {
        BfsOutcome::Distance(d) => d,
        BfsOutcome::CapExceeded => return Err(Error::CapExceeded(DEFAULT_STATE_CAP)),
        BfsOutcome::Unreachable => return Ok(false),
    };
    let (_, lower) = min_cost_matching(g, start, goal)?;
    Ok(len == bfs && lower == MatchCost::Finite(len))
}

/// DOT rendering of the component of `start` in the reconfiguration graph.
pub fn reconfiguration_dot(
    g: &Graph,
    pred: FeasibilityPredicate<'_>,
    start: &TokenMultiset,
    cap: usize,
) -> Result<String> {
    if !pred.holds(start) {
        return Err(Error::Feasibility(
            "start configuration is infeasible".into(),
        ));
    }
    let n = g.vertex_count();
    let mut index: HashMap<ConfigurationKey, usize> = HashMap::new();
    let mut nodes = vec![ConfigurationKey::of(start)];
    index.insert(nodes[0].clone(), 0);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let key = nodes[i].clone();
        for next in key.slides(g) {
            if !pred.holds(&next.to_multiset(n)) {
                continue;
            }
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if nodes.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(next.clone(), nodes.len());
                    nodes.push(next);
                    nodes.len() - 1
                }
            };
            if i < j {
                edges.push((i, j));
            }
        }
        i += 1;
    }
    let mut out = String::from("graph reconfiguration {\n");
    for (i, key) in nodes.iter().enumerate() {
        let label: Vec<String> = key.tokens().iter().map(|v| v.to_string()).collect();
        writeln!(out, "  s{i} [label=\"{}\"];", label.join(" ")).unwrap();
    }
    for (i, j) in edges {
        writeln!(out, "  s{i} -- s{j};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::Move;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn tokens(n: usize, vs: &[Vertex]) -> TokenMultiset {
        TokenMultiset::from_vertices(n, vs.iter().copied()).unwrap()
    }

    fn seq(moves: &[(Vertex, Vertex, u64)]) -> MoveSequence {
        moves.iter().map(|&(u, v, c)| Move::new(u, v, c)).collect()
    }

    #[test]
    fn bfs_examples() {
        let g = path(4);
        let dom = FeasibilityPredicate::Dominating(&g);
        let a = tokens(4, &[0, 2]);
        let b = tokens(4, &[1, 3]);
        assert_eq!(
            reconfig_distance_bfs(&g, dom, &a, &a, DEFAULT_STATE_CAP).unwrap(),
            BfsOutcome::Distance(0)
        );
        assert_eq!(
            reconfig_distance_bfs(&g, dom, &a, &b, DEFAULT_STATE_CAP).unwrap(),
            BfsOutcome::Distance(2)
        );

        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let ind = FeasibilityPredicate::IndependentSet(&c4);
        assert_eq!(
            reconfig_distance_bfs(&c4, ind, &a, &b, DEFAULT_STATE_CAP).unwrap(),
            BfsOutcome::Unreachable
        );

        assert!(matches!(
            reconfig_distance_bfs(&g, dom, &tokens(4, &[0]), &b, 10),
            Err(Error::Size { .. })
        ));
        assert!(matches!(
            reconfig_distance_bfs(&g, dom, &tokens(4, &[0, 1]), &b, 10),
            Err(Error::Feasibility(_))
        ));
    }

    #[test]
    fn bfs_reports_cap() {
        let g = path(8);
        let dom = FeasibilityPredicate::Dominating(&g);
        let a = tokens(8, &[0, 1, 3, 4, 6, 7]);
        let b = tokens(8, &[0, 1, 2, 4, 5, 7]);
        assert_eq!(
            reconfig_distance_bfs(&g, dom, &a, &b, 2).unwrap(),
            BfsOutcome::CapExceeded
        );
    }

    #[test]
    fn verify_examples() {
        let g = path(4);
        let dom = FeasibilityPredicate::Dominating(&g);
        let a = tokens(4, &[0, 2]);
        let v = verify_sequence(&g, dom, &a, &MoveSequence::new());
        assert!(v.ok && v.last == a && v.failure.is_none());

        let v = verify_sequence(&g, dom, &a, &seq(&[(0, 1, 1), (2, 3, 1)]));
        assert!(v.ok);
        assert_eq!(v.last, tokens(4, &[1, 3]));

        let v = verify_sequence(&g, dom, &a, &seq(&[(0, 2, 1)]));
        assert!(!v.ok);
        assert!(v.failure.unwrap().contains("not an edge"));
        assert_eq!(v.last, a);

        let v = verify_sequence(&g, dom, &a, &seq(&[(2, 1, 1)]));
        assert!(!v.ok);
        assert!(v.failure.unwrap().contains("feasibility"));
    }

    #[test]
    fn certify_examples() {
        let g = path(4);
        let dom = FeasibilityPredicate::Dominating(&g);
        let a = tokens(4, &[0, 2]);
        let b = tokens(4, &[1, 3]);
        assert!(certify_optimality(&g, dom, &a, &b, &seq(&[(0, 1, 1), (2, 3, 1)])).unwrap());
        let padded = seq(&[(0, 1, 1), (2, 3, 1), (1, 2, 1), (2, 1, 1)]);
        assert!(!certify_optimality(&g, dom, &a, &b, &padded).unwrap());
        assert!(certify_optimality(&g, dom, &a, &a, &MoveSequence::new()).unwrap());
    }

    #[test]
    fn dot_lists_component() {
        let g = path(3);
        let dom = FeasibilityPredicate::Dominating(&g);
        let dot = reconfiguration_dot(&g, dom, &tokens(3, &[1]), 100).unwrap();
        assert!(dot.starts_with("graph reconfiguration {"));
        assert_eq!(dot.matches("label").count(), 1);
        let dot = reconfiguration_dot(&g, dom, &tokens(3, &[0, 1]), 100).unwrap();
        assert!(dot.contains("--"));
    }
}
