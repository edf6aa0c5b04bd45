//! Undirected graphs, rooted trees, BFS distances and the two feasibility
//! predicates (domination and hitting).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::multiset::TokenMultiset;
use crate::Vertex;

/// Distance sentinel for unreachable vertices.
pub const INFINITE_DISTANCE: u32 = u32::MAX;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop on vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `N(v)`, sorted.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// `N[v]` in increasing order.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.degree(v) + 1);
        let list = self.neighbors(v);
        let split = list.partition_point(|&w| w < v);
        out.extend_from_slice(&list[..split]);
        out.push(v);
        out.extend_from_slice(&list[split..]);
        out
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0
            || distances_from(self, 0)
                .iter()
                .all(|&d| d != INFINITE_DISTANCE)
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count + 1 == self.vertex_count() && self.is_connected()
    }
}

/// BFS distances from `source`; unreachable vertices get [`INFINITE_DISTANCE`].
pub fn distances_from(g: &Graph, source: Vertex) -> Vec<u32> {
    let mut dist = vec![INFINITE_DISTANCE; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == INFINITE_DISTANCE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Neighbours of `u` lying on some shortest `u`–`v` path; empty when `u == v`.
pub fn succ_set(g: &Graph, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
    if u == v {
        return Ok(Vec::new());
    }
    let from_target = distances_from(g, v);
    let d = from_target[u];
    if d == INFINITE_DISTANCE {
        return Err(Error::Unreachable { from: u, to: v });
    }
    Ok(g.neighbors(u)
        .iter()
        .copied()
        .filter(|&w| from_target[w] + 1 == d)
        .collect())
}

/// All-pairs BFS distances, for the solvers that query `d(u, v)` and
/// successor sets repeatedly.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            dist.extend(distances_from(g, s));
        }
        DistanceTable { n, dist }
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Same contract as [`succ_set`], answered from the table.
    pub fn succ(&self, g: &Graph, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let d = self.get(u, v);
        if u == v || d == INFINITE_DISTANCE {
            return Vec::new();
        }
        g.neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.get(w, v) + 1 == d)
            .collect()
    }
}

/// A tree with a fixed root, parent pointers, depths and a bottom-up order.
#[derive(Debug, Clone)]
pub struct RootedTree {
    base: Graph,
    root: Vertex,
    parent: Vec<Vertex>,
    depth: Vec<u32>,
    order: Vec<Vertex>,
}

impl RootedTree {
    pub fn new(base: Graph, root: Vertex) -> Result<Self> {
        let n = base.vertex_count();
        if root >= n {
            return Err(Error::Input(format!("root {root} outside 0..{n}")));
        }
        if base.edge_count() + 1 != n {
            return Err(Error::Input(format!(
                "a tree on {n} vertices needs {} edges, got {}",
                n - 1,
                base.edge_count()
            )));
        }
        let depth = distances_from(&base, root);
        if depth.contains(&INFINITE_DISTANCE) {
            return Err(Error::Input("graph is not connected".into()));
        }
        let mut parent = vec![root; n];
        for v in 0..n {
            if v != root {
                parent[v] = base
                    .neighbors(v)
                    .iter()
                    .copied()
                    .find(|&w| depth[w] + 1 == depth[v])
                    .expect("BFS layering gives every non-root vertex a parent");
            }
        }
        // Bucket by depth: deepest first, ties by increasing id.
        let max_depth = depth.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets = vec![Vec::new(); max_depth + 1];
        for v in 0..n {
            buckets[depth[v] as usize].push(v);
        }
        let order = buckets.into_iter().rev().flatten().collect();
        Ok(RootedTree {
            base,
            root,
            parent,
            depth,
            order,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Vertex {
        self.parent[v]
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v]
    }

    /// Vertices by decreasing depth; every vertex precedes its parent.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }
}

/// A family of non-empty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SetSystem {
    sets: Vec<Vec<Vertex>>,
}

impl SetSystem {
    /// Unvalidated family; sets are sorted and deduplicated.
    pub fn new(sets: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut sets = sets;
        for (i, s) in sets.iter_mut().enumerate() {
            if s.is_empty() {
                return Err(Error::Input(format!("set {i} is empty")));
            }
            s.sort_unstable();
            s.dedup();
        }
        Ok(SetSystem { sets })
    }

    /// Family over a tree; every set must induce a connected subtree.
    pub fn on_tree(tree: &RootedTree, sets: Vec<Vec<Vertex>>) -> Result<Self> {
        let system = SetSystem::new(sets)?;
        system.check_subtrees(tree)?;
        Ok(system)
    }

    pub fn sets(&self) -> &[Vec<Vertex>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// A vertex set of a rooted tree is connected iff exactly one of its
    /// members has its parent outside the set (or is the root).
    pub fn check_subtrees(&self, tree: &RootedTree) -> Result<()> {
        let n = tree.vertex_count();
        let mut stamp = vec![usize::MAX; n];
        for (i, set) in self.sets.iter().enumerate() {
            for &v in set {
                if v >= n {
                    return Err(Error::Input(format!(
                        "set {i} names vertex {v} outside 0..{n}"
                    )));
                }
                stamp[v] = i;
            }
            let tops = set
                .iter()
                .filter(|&&v| v == tree.root() || stamp[tree.parent(v)] != i)
                .count();
            if tops != 1 {
                return Err(Error::Input(format!("set {i} does not induce a subtree")));
            }
        }
        Ok(())
    }
}

/// Every vertex lies in `Supp(d)` or has a neighbour there.
pub fn is_dominating(g: &Graph, d: &TokenMultiset) -> bool {
    (0..g.vertex_count()).all(|v| d.contains(v) || g.neighbors(v).iter().any(|&w| d.contains(w)))
}

/// `Supp(h)` meets every set of the family.
pub fn is_hitting(system: &SetSystem, h: &TokenMultiset) -> bool {
    system
        .sets()
        .iter()
        .all(|s| s.iter().any(|&v| h.contains(v)))
}

/// `{N[v] : v ∈ V}`: its hitting sets are exactly the dominating sets.
pub fn closed_neighborhood_system(tree: &RootedTree) -> SetSystem {
    let g = tree.graph();
    SetSystem {
        sets: (0..g.vertex_count())
            .map(|v| g.closed_neighborhood(v))
            .collect(),
    }
}
