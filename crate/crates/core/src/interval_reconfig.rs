//! Shortest dominating-set reconfiguration on interval graphs.
//!
//! The solver keeps a minimum-cost matching `M` between the current source
//! and target configurations, normalized so that shared tokens are matched
//! to themselves. Each round it looks for a *greedy move*: a matched pair
//! `(u, v)` and a step `u → u'` toward `v` that keeps the source dominating
//! (emitted at the front), or a step `v → v'` toward `u` that keeps the
//! target dominating (emitted reversed at the back). Every greedy move
//! lowers the matching cost by exactly one. When no greedy move exists the
//! matching is repaired by a cost-neutral exchange that exposes one.

use log::{debug, trace};

use crate::error::{Error, Result};
use crate::graph::{is_dominating, DistanceTable, Graph};
use crate::interval::{intersection_graph, IntervalRepresentation};
use crate::matching::{min_cost_matching_in, normalize_unchecked, MatchCost, Matching};
use crate::moves::{Move, MoveSequence};
use crate::multiset::TokenMultiset;
use crate::Vertex;

/// Outcome of a solve that may find the two configurations in different
/// sliding components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reachability<T> {
    Reachable(T),
    Unreachable,
}

impl<T> Reachability<T> {
    pub fn reachable(self) -> Option<T> {
        match self {
            Reachability::Reachable(t) => Some(t),
            Reachability::Unreachable => None,
        }
    }
}

/// Snapshot handed to observers each time the matching is repaired.
#[derive(Debug)]
pub struct RepairEvent<'a> {
    pub graph: &'a Graph,
    pub sources: &'a TokenMultiset,
    pub targets: &'a TokenMultiset,
    pub before: &'a Matching,
    pub after: &'a Matching,
}

/// Number of dominators of every vertex, for `O(deg)` slide checks.
#[derive(Debug, Clone)]
struct Coverage {
    count: Vec<u32>,
}

impl Coverage {
    fn of(g: &Graph, d: &TokenMultiset) -> Self {
        let count = (0..g.vertex_count())
            .map(|v| {
                d.contains(v) as u32
                    + g.neighbors(v).iter().filter(|&&w| d.contains(w)).count() as u32
            })
            .collect();
        Coverage { count }
    }

    /// Whether `slide(d, u, w)` is still dominating, given `d` is.
    fn slide_keeps(&self, g: &Graph, d: &TokenMultiset, u: Vertex, w: Vertex) -> bool {
        if u == w || d.get(u) >= 2 {
            return true;
        }
        let joins = !d.contains(w);
        let covered_by_w = |x: Vertex| joins && (x == w || g.has_edge(x, w));
        (self.count[u] > 1 || covered_by_w(u))
            && g.neighbors(u)
                .iter()
                .all(|&x| self.count[x] > 1 || covered_by_w(x))
    }

    /// Applies the slide to both the counts and `d`.
    fn slide(&mut self, g: &Graph, d: &mut TokenMultiset, u: Vertex, w: Vertex) {
        if u == w {
            return;
        }
        if d.get(u) == 1 {
            self.count[u] -= 1;
            for &x in g.neighbors(u) {
                self.count[x] -= 1;
            }
        }
        if !d.contains(w) {
            self.count[w] += 1;
            for &x in g.neighbors(w) {
                self.count[x] += 1;
            }
        }
        d.slide_in_place(u, w).expect("slide source holds a token");
    }
}

struct Solver<'a> {
    rep: &'a IntervalRepresentation,
    graph: Graph,
    dist: DistanceTable,
}

/// `(u, v, step)`: matched pair and the neighbour the moving token goes to.
type GreedyMove = (Vertex, Vertex, Vertex);

impl<'a> Solver<'a> {
    fn new(rep: &'a IntervalRepresentation) -> Self {
        let graph = intersection_graph(rep);
        let dist = DistanceTable::new(&graph);
        Solver { rep, graph, dist }
    }

    fn forward_move(&self, ds: &TokenMultiset, cov: &Coverage, m: &Matching) -> Option<GreedyMove> {
        m.pairs()
            .filter(|&((u, v), _)| u != v)
            .find_map(|((u, v), _)| {
                let step = self
                    .dist
                    .succ(&self.graph, u, v)
                    .into_iter()
                    .find(|&w| cov.slide_keeps(&self.graph, ds, u, w));
                trace!("forward scan ({u}, {v}) -> {step:?}");
                step.map(|w| (u, v, w))
            })
    }

    fn backward_move(
        &self,
        dt: &TokenMultiset,
        cov: &Coverage,
        m: &Matching,
    ) -> Option<GreedyMove> {
        m.pairs()
            .filter(|&((u, v), _)| u != v)
            .find_map(|((u, v), _)| {
                let step = self
                    .dist
                    .succ(&self.graph, v, u)
                    .into_iter()
                    .find(|&w| cov.slide_keeps(&self.graph, dt, v, w));
                trace!("backward scan ({u}, {v}) -> {step:?}");
                step.map(|w| (u, v, w))
            })
    }

    fn fix(
        &self,
        ds: &TokenMultiset,
        dt: &TokenMultiset,
        m: &Matching,
        cov_s: &Coverage,
        cov_t: &Coverage,
    ) -> Result<Matching> {
        let v = (0..self.rep.len())
            .filter(|&x| ds.get(x) != dt.get(x))
            .min_by_key(|&x| self.rep.right(x))
            .ok_or_else(|| Error::Contract("configurations are already equal".into()))?;
        if dt.get(v) > ds.get(v) {
            debug!("repair: v = {v} lies on the target side, solving transposed");
            return Ok(self.fix_oriented(dt, ds, &m.inverse(), cov_t, v)?.inverse());
        }
        self.fix_oriented(ds, dt, m, cov_s, v)
    }

    /// Finds `y ∈ dst ∖ src` adjacent to `v` with `slide(src, v, y)`
    /// dominating, and matches `v′ ∈ M(v)`, `y′ ∈ M⁻¹(y)` whose exchange
    /// `(v,v′),(y′,y) → (v,y),(y′,v′)` does not raise the cost.
    fn fix_oriented(
        &self,
        src: &TokenMultiset,
        dst: &TokenMultiset,
        m: &Matching,
        cov: &Coverage,
        v: Vertex,
    ) -> Result<Matching> {
        let mut candidates: Vec<Vertex> = self
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&y| dst.get(y) > src.get(y))
            .collect();
        candidates.sort_unstable_by_key(|&y| self.rep.right(y));

        let d = |a: Vertex, b: Vertex| self.dist.get(a, b) as u64;
        for y in candidates {
            if !cov.slide_keeps(&self.graph, src, v, y) {
                continue;
            }
            for (v2, _) in m.matches_of(v).filter(|&(x, _)| x != v) {
                for (y2, _) in m.sources_of(y).filter(|&(x, _)| x != y) {
                    if d(v, y) + d(y2, v2) <= d(v, v2) + d(y2, y) {
                        debug!("repair: ({v},{v2}),({y2},{y}) -> ({v},{y}),({y2},{v2})");
                        let mut out = m.clone();
                        out.remove(v, v2, 1)?;
                        out.remove(y2, y, 1)?;
                        out.add(v, y, 1);
                        out.add(y2, v2, 1);
                        return Ok(out);
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "no matching repair found around vertex {v}"
        )))
    }
}

fn check_inputs(
    rep: &IntervalRepresentation,
    g: &Graph,
    ds: &TokenMultiset,
    dt: &TokenMultiset,
) -> Result<()> {
    if ds.len() != dt.len() {
        return Err(Error::Size {
            left: ds.len(),
            right: dt.len(),
        });
    }
    let n = rep.len();
    if let Some(v) = ds.support().chain(dt.support()).find(|&v| v >= n) {
        return Err(Error::Input(format!("token on vertex {v} outside 0..{n}")));
    }
    if !is_dominating(g, ds) {
        return Err(Error::Feasibility(
            "source configuration is not dominating".into(),
        ));
    }
    if !is_dominating(g, dt) {
        return Err(Error::Feasibility(
            "target configuration is not dominating".into(),
        ));
    }
    Ok(())
}

/// Shortest reconfiguration between two dominating multisets of the
/// interval graph represented by `rep`.
pub fn reconf_interval(
    rep: &IntervalRepresentation,
    ds: &TokenMultiset,
    dt: &TokenMultiset,
) -> Result<Reachability<MoveSequence>> {
    reconf_interval_observed(rep, ds, dt, |_| {})
}

/// [`reconf_interval`], calling `on_repair` after every matching repair.
pub fn reconf_interval_observed(
    rep: &IntervalRepresentation,
    ds: &TokenMultiset,
    dt: &TokenMultiset,
    mut on_repair: impl FnMut(&RepairEvent<'_>),
) -> Result<Reachability<MoveSequence>> {
    let solver = Solver::new(rep);
    let g = &solver.graph;
    check_inputs(rep, g, ds, dt)?;
    let n = rep.len();

    let (m, cost) = min_cost_matching_in(&solver.dist, ds, dt, n)?;
    let MatchCost::Finite(mut remaining) = cost else {
        return Ok(Reachability::Unreachable);
    };
    let mut ds = ds.clone();
    let mut dt = dt.clone();
    let mut m = normalize_unchecked(&m, &ds, &dt);
    let mut cov_s = Coverage::of(g, &ds);
    let mut cov_t = Coverage::of(g, &dt);
    let mut front = MoveSequence::new();
    let mut back = Vec::new();
    let mut just_repaired = false;

    while remaining > 0 {
        if let Some((u, v, w)) = solver.forward_move(&ds, &cov_s, &m) {
            debug!("move {u} -> {w} toward {v}");
            cov_s.slide(g, &mut ds, u, w);
            m.remove(u, v, 1)?;
            m.add(w, v, 1);
            front.push(Move::new(u, w, 1));
        } else if let Some((u, v, w)) = solver.backward_move(&dt, &cov_t, &m) {
            debug!("target move {v} -> {w} toward {u}, emitted as {w} -> {v}");
            cov_t.slide(g, &mut dt, v, w);
            m.remove(u, v, 1)?;
            m.add(u, w, 1);
            back.push(Move::new(w, v, 1));
        } else {
            if just_repaired {
                return Err(Error::Internal(
                    "repaired matching exposes no greedy move".into(),
                ));
            }
            let fixed = solver.fix(&ds, &dt, &m, &cov_s, &cov_t)?;
            let fixed = normalize_unchecked(&fixed, &ds, &dt);
            debug_assert_eq!(fixed.cost_in(&solver.dist), m.cost_in(&solver.dist));
            on_repair(&RepairEvent {
                graph: g,
                sources: &ds,
                targets: &dt,
                before: &m,
                after: &fixed,
            });
            m = fixed;
            just_repaired = true;
            continue;
        }
        just_repaired = false;
        remaining -= 1;
        m = normalize_unchecked(&m, &ds, &dt);
        debug_assert_eq!(m.cost_in(&solver.dist), MatchCost::Finite(remaining));
    }
    if !ds.same_tokens(&dt) {
        return Err(Error::Internal(
            "matching cost reached zero on unequal configurations".into(),
        ));
    }

    for mv in back.into_iter().rev() {
        front.push(mv);
    }
    Ok(Reachability::Reachable(front))
}

/// One matching repair, for a stalled state of the greedy loop.
///
/// Preconditions, all checked: `ds ≠ dt`, both dominating, `m` a
/// normalized minimum-cost matching between them, and no greedy move
/// available under `m`.
pub fn fix_matching(
    rep: &IntervalRepresentation,
    g: &Graph,
    ds: &TokenMultiset,
    dt: &TokenMultiset,
    m: &Matching,
) -> Result<Matching> {
    check_inputs(rep, g, ds, dt)?;
    if *g != intersection_graph(rep) {
        return Err(Error::Input(
            "graph is not the intersection graph of the representation".into(),
        ));
    }
    if ds.same_tokens(dt) {
        return Err(Error::Contract("configurations are already equal".into()));
    }
    if !m.is_between(ds, dt) {
        return Err(Error::Contract(
            "matching does not pair the configurations".into(),
        ));
    }
    let solver = Solver::new(rep);
    let (_, optimum) = min_cost_matching_in(&solver.dist, ds, dt, rep.len())?;
    if m.cost_in(&solver.dist) != optimum {
        return Err(Error::Contract("matching is not minimum-cost".into()));
    }
    if normalize_unchecked(m, ds, dt) != *m {
        return Err(Error::Contract("matching is not normalized".into()));
    }
    let cov_s = Coverage::of(g, ds);
    let cov_t = Coverage::of(g, dt);
    if solver.forward_move(ds, &cov_s, m).is_some() || solver.backward_move(dt, &cov_t, m).is_some()
    {
        return Err(Error::Contract(
            "a greedy move is available; no repair needed".into(),
        ));
    }
    solver.fix(ds, dt, m, &cov_s, &cov_t)
}

/// Whether some greedy move exists under `m` (either side).
pub fn has_greedy_move(
    rep: &IntervalRepresentation,
    ds: &TokenMultiset,
    dt: &TokenMultiset,
    m: &Matching,
) -> bool {
    let solver = Solver::new(rep);
    let cov_s = Coverage::of(&solver.graph, ds);
    let cov_t = Coverage::of(&solver.graph, dt);
    solver.forward_move(ds, &cov_s, m).is_some() || solver.backward_move(dt, &cov_t, m).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::is_dominating;
    use crate::interval::normalize_representation;
    use crate::matching::{brute_force_matching, matching_cost, MatchCost};
    use crate::oracle::{reconfig_distance_bfs, verify_sequence, BfsOutcome, FeasibilityPredicate};
    use rand::Rng;

    fn tokens(n: usize, vs: &[Vertex]) -> TokenMultiset {
        TokenMultiset::from_vertices(n, vs.iter().copied()).unwrap()
    }

    fn p4() -> IntervalRepresentation {
        IntervalRepresentation::new(vec![(1, 4), (3, 6), (5, 8), (7, 10)]).unwrap()
    }

    #[test]
    fn equal_configurations() {
        let d = tokens(4, &[1, 2]);
        let out = reconf_interval(&p4(), &d, &d).unwrap().reachable().unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn path_of_four() {
        let out = reconf_interval(&p4(), &tokens(4, &[0, 2]), &tokens(4, &[1, 3]))
            .unwrap()
            .reachable()
            .unwrap();
        assert_eq!(out.total_length(), 2);
        let g = intersection_graph(&p4());
        let check = verify_sequence(
            &g,
            FeasibilityPredicate::Dominating(&g),
            &tokens(4, &[0, 2]),
            &out,
        );
        assert!(check.ok);
        assert_eq!(check.last, tokens(4, &[1, 3]));
    }

    #[test]
    fn triangle_single_move() {
        let rep = IntervalRepresentation::new(vec![(1, 4), (2, 5), (3, 6)]).unwrap();
        let out = reconf_interval(&rep, &tokens(3, &[0]), &tokens(3, &[2]))
            .unwrap()
            .reachable()
            .unwrap();
        assert_eq!(out.moves(), &[Move::new(0, 2, 1)]);
    }

    #[test]
    fn disconnected_is_unreachable() {
        // Two components {0,1} and {2}; moving a token across is impossible.
        let rep = IntervalRepresentation::new(vec![(1, 3), (2, 4), (5, 6)]).unwrap();
        let out = reconf_interval(&rep, &tokens(3, &[0, 2, 2]), &tokens(3, &[0, 1, 2])).unwrap();
        assert_eq!(out, Reachability::Unreachable);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            reconf_interval(&p4(), &tokens(4, &[1]), &tokens(4, &[1, 3])),
            Err(Error::Size { .. })
        ));
        assert!(matches!(
            reconf_interval(&p4(), &tokens(4, &[0, 1]), &tokens(4, &[1, 3])),
            Err(Error::Feasibility(_))
        ));
    }

    #[test]
    fn fix_matching_rejects_when_greedy_move_exists() {
        let rep = p4();
        let g = intersection_graph(&rep);
        let ds = tokens(4, &[0, 2]);
        let dt = tokens(4, &[1, 3]);
        let m = Matching::from_pairs([((0, 1), 1), ((2, 3), 1)]);
        assert!(matches!(
            fix_matching(&rep, &g, &ds, &dt, &m),
            Err(Error::Contract(_))
        ));
    }

    fn multisets(
        n: usize,
        k: usize,
        from: Vertex,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n {
            cur.push(v);
            multisets(n, k, v, cur, out);
            cur.pop();
        }
    }

    /// A six-interval graph on which the greedy loop stalls for a handful of
    /// dominating pairs, from both orientations.
    fn stalling_rep() -> IntervalRepresentation {
        IntervalRepresentation::new(vec![(5, 10), (1, 4), (2, 8), (3, 7), (9, 12), (6, 11)])
            .unwrap()
    }

    #[test]
    fn stall_example_is_repaired() {
        let rep = stalling_rep();
        let g = intersection_graph(&rep);
        let ds = tokens(6, &[2, 5]);
        let dt = tokens(6, &[0, 3]);
        let mut repairs = 0;
        let seq = reconf_interval_observed(&rep, &ds, &dt, |e| {
            repairs += 1;
            assert!(!has_greedy_move(&rep, e.sources, e.targets, e.before));
            assert!(has_greedy_move(&rep, e.sources, e.targets, e.after));
        })
        .unwrap()
        .reachable()
        .unwrap();
        assert!(repairs > 0);
        let optimum = brute_force_matching(&g, &ds, &dt).unwrap();
        assert_eq!(MatchCost::Finite(seq.total_length()), optimum);
    }

    /// Every stalled state reachable on the stalling graph, re-checked
    /// through the public entry point.
    #[test]
    fn repairs_on_exhaustive_stalls() {
        let rep = stalling_rep();
        let g = intersection_graph(&rep);
        let n = rep.len();
        let mut stalls = 0;
        let mut transposed = 0;
        for k in 1..=3 {
            let mut all = Vec::new();
            multisets(n, k, 0, &mut Vec::new(), &mut all);
            let doms: Vec<_> = all
                .into_iter()
                .map(|vs| TokenMultiset::from_vertices(n, vs).unwrap())
                .filter(|d| is_dominating(&g, d))
                .collect();
            for ds in &doms {
                for dt in &doms {
                    let mut events = Vec::new();
                    reconf_interval_observed(&rep, ds, dt, |e| {
                        events.push((
                            e.sources.clone(),
                            e.targets.clone(),
                            e.before.clone(),
                            e.after.clone(),
                        ))
                    })
                    .unwrap();
                    for (src, dst, before, after) in events {
                        stalls += 1;
                        let repaired = fix_matching(&rep, &g, &src, &dst, &before).unwrap();
                        assert_eq!(normalize_unchecked(&repaired, &src, &dst), after);
                        assert_eq!(matching_cost(&after, &g), matching_cost(&before, &g));
                        assert_eq!(
                            matching_cost(&after, &g),
                            brute_force_matching(&g, &src, &dst).unwrap()
                        );
                        assert!(has_greedy_move(&rep, &src, &dst, &after));

                        let v = (0..n)
                            .filter(|&x| src.get(x) != dst.get(x))
                            .min_by_key(|&x| rep.right(x))
                            .unwrap();
                        if dst.get(v) > src.get(v) {
                            transposed += 1;
                            let mirrored =
                                fix_matching(&rep, &g, &dst, &src, &before.inverse()).unwrap();
                            assert_eq!(mirrored.inverse(), repaired);
                        }
                    }
                }
            }
        }
        assert!(stalls > 0, "no stalled state found");
        assert!(transposed > 0, "no stall exercised the transposed branch");
        assert!(transposed < stalls, "no stall exercised the direct branch");
    }

    #[test]
    fn matches_oracle_on_small_instances() {
        let mut rng = gen::rng_from_seed(11);
        let mut solved = 0;
        while solved < 100 {
            let n = rng.gen_range(2..=8);
            let raw = gen::random_intervals(n, &mut rng);
            let rep = normalize_representation(&raw).unwrap();
            let g = intersection_graph(&rep);
            let base = gen::interval_min_dominating_set(&raw).unwrap();
            if base.len() > 3 {
                continue;
            }
            let k = rng.gen_range(base.len()..=3.min(n));
            let (ds, dt) = gen::dominating_pair(&g, &base, k, &mut rng).unwrap();
            let pred = FeasibilityPredicate::Dominating(&g);
            let bfs = reconfig_distance_bfs(&g, pred, &ds, &dt, 1_000_000).unwrap();
            match reconf_interval(&rep, &ds, &dt).unwrap() {
                Reachability::Reachable(seq) => {
                    assert_eq!(
                        BfsOutcome::Distance(seq.total_length()),
                        bfs,
                        "{raw:?} {ds:?} {dt:?}"
                    );
                    let check = verify_sequence(&g, pred, &ds, &seq);
                    assert!(check.ok && check.last.same_tokens(&dt));
                }
                Reachability::Unreachable => assert_eq!(bfs, BfsOutcome::Unreachable),
            }
            solved += 1;
        }
    }
}
