//! Seeded random instances.
//!
//! All randomness flows through a caller-supplied [`Rng`]; the CLI and the
//! test suites use [`rng_from_seed`] (ChaCha8 via `seed_from_u64`), whose
//! output stream is fixed across platforms and releases of `rand_chacha`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::{Instance, Structure, StructureKind};
use crate::graph::{Graph, RootedTree};
use crate::interval::{intersection_graph, normalize_representation};
use crate::multiset::TokenMultiset;
use crate::Vertex;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random recursive tree with shuffled labels.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    Graph::new(n, &random_tree_edges(n, rng)).expect("valid tree edges")
}

pub fn random_tree_edges<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(rng);
    (1..n)
        .map(|i| {
            let j = rng.gen_range(0..i);
            (labels[j].min(labels[i]), labels[j].max(labels[i]))
        })
        .collect()
}

/// A random tree plus a few extra random edges.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut edges = random_tree_edges(n, rng);
    if n >= 3 {
        for _ in 0..rng.gen_range(0..=n) {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("valid edges")
}

/// Raw closed intervals: left endpoint in `[0, 2n)`, length in `[0, n/2 + 1]`.
/// Endpoints may coincide; pass the result through
/// [`normalize_representation`].
pub fn random_intervals<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(i64, i64)> {
    let span = 2 * n as i64;
    let max_len = n as i64 / 2 + 1;
    (0..n)
        .map(|_| {
            let l = rng.gen_range(0..span.max(1));
            (l, l + rng.gen_range(0..=max_len))
        })
        .collect()
}

/// `k` tokens placed independently and uniformly (so they may stack).
pub fn random_multiset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> TokenMultiset {
    let mut m = TokenMultiset::new(n);
    for _ in 0..k {
        m.add(rng.gen_range(0..n), 1);
    }
    m
}

/// Connected vertex set of up to `size` vertices grown from a random seed vertex.
pub fn random_connected_subset<R: Rng + ?Sized>(
    g: &Graph,
    size: usize,
    rng: &mut R,
) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    let start = rng.gen_range(0..n);
    inside[start] = true;
    let mut set = vec![start];
    let mut frontier: Vec<Vertex> = g.neighbors(start).to_vec();
    while set.len() < size && !frontier.is_empty() {
        let w = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if inside[w] {
            continue;
        }
        inside[w] = true;
        set.push(w);
        frontier.extend(g.neighbors(w).iter().copied().filter(|&x| !inside[x]));
    }
    set.sort_unstable();
    set
}

/// Minimum dominating set of a tree: bottom-up, an undominated vertex
/// recruits its parent (or itself at the root).
pub fn tree_min_dominating_set(tree: &RootedTree) -> Vec<Vertex> {
    let g = tree.graph();
    let n = g.vertex_count();
    let mut chosen = vec![false; n];
    let mut dominated = vec![false; n];
    for &v in tree.order() {
        if dominated[v] {
            continue;
        }
        let pick = tree.parent(v);
        chosen[pick] = true;
        dominated[pick] = true;
        for &w in g.neighbors(pick) {
            dominated[w] = true;
        }
    }
    (0..n).filter(|&v| chosen[v]).collect()
}

/// Minimum dominating set of an interval graph: take the undominated
/// interval ending first and choose, among its closed neighbourhood, the
/// interval reaching furthest right.
pub fn interval_min_dominating_set(raw: &[(i64, i64)]) -> Result<Vec<Vertex>> {
    let rep = normalize_representation(raw)?;
    let g = intersection_graph(&rep);
    let mut dominated = vec![false; rep.len()];
    let mut chosen = Vec::new();
    for v in rep.by_right() {
        if dominated[v] {
            continue;
        }
        let pick = g
            .closed_neighborhood(v)
            .into_iter()
            .max_by_key(|&w| rep.right(w))
            .expect("closed neighbourhood contains v");
        chosen.push(pick);
        dominated[pick] = true;
        for &w in g.neighbors(pick) {
            dominated[w] = true;
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Grows `base` to `k` distinct vertices, then returns two independent
/// random walks from it. Every step slides one token to an unoccupied
/// neighbour and keeps the configuration dominating, so both results are
/// dominating sets of size `k` in the same reconfiguration component class.
pub fn dominating_pair<R: Rng + ?Sized>(
    g: &Graph,
    base: &[Vertex],
    k: usize,
    rng: &mut R,
) -> Result<(TokenMultiset, TokenMultiset)> {
    let n = g.vertex_count();
    if base.len() > k || k > n {
        return Err(Error::Feasibility(format!(
            "need {k} tokens but the greedy dominating set has {} vertices on {n}",
            base.len()
        )));
    }
    let mut start = TokenMultiset::from_vertices(n, base.iter().copied())?;
    let mut spare: Vec<Vertex> = (0..n).filter(|&v| !start.contains(v)).collect();
    spare.shuffle(rng);
    for &v in spare.iter().take(k - base.len()) {
        start.add(v, 1);
    }
    let steps = 4 * n;
    let a = random_walk(g, start.clone(), steps, rng);
    let b = random_walk(g, start, steps, rng);
    Ok((a, b))
}

fn random_walk<R: Rng + ?Sized>(
    g: &Graph,
    mut d: TokenMultiset,
    steps: usize,
    rng: &mut R,
) -> TokenMultiset {
    let mut cover: Vec<u32> = (0..g.vertex_count())
        .map(|v| {
            g.closed_neighborhood(v)
                .into_iter()
                .filter(|&w| d.contains(w))
                .count() as u32
        })
        .collect();
    for _ in 0..steps {
        let occupied: Vec<Vertex> = d.support().collect();
        let Some(&u) = occupied.choose(rng) else {
            break;
        };
        let Some(&w) = g.neighbors(u).choose(rng) else {
            continue;
        };
        if d.contains(w) {
            continue;
        }
        let w_closed = g.closed_neighborhood(w);
        let keeps = g
            .closed_neighborhood(u)
            .into_iter()
            .all(|x| cover[x] > 1 || w_closed.binary_search(&x).is_ok());
        if !keeps {
            continue;
        }
        for x in g.closed_neighborhood(u) {
            cover[x] -= 1;
        }
        for &x in &w_closed {
            cover[x] += 1;
        }
        d.slide_in_place(u, w).expect("u is occupied");
    }
    d
}

/// Path `0 – 1 – … – n−1` where a shared dominating core `{1, 4, 7, …}`
/// stays put while the spare vertices `{0, 3, 6, …}` of the left half hand
/// their tokens to the spare vertices of the right half. Roughly `n/6`
/// tokens each travel about `n/2` edges, so the unit-move count grows as
/// `n²` while the tree solver emits at most `n − 1` triples.
pub fn path_transfer_instance(n: usize) -> Instance {
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (v - 1, v)).collect();
    let mut core: Vec<Vertex> = (0..n).filter(|v| v % 3 == 1).collect();
    if n % 3 == 1 {
        // The last vertex would be left undominated.
        core.push(n - 1);
    }
    let spare: Vec<Vertex> = (0..n)
        .filter(|&v| v % 3 == 0 && core.last() != Some(&v))
        .collect();
    let half = spare.len() / 2;
    let mut sources = TokenMultiset::from_vertices(n, core.iter().copied()).expect("in range");
    let mut targets = sources.clone();
    for (&a, &b) in spare[..half].iter().zip(spare[spare.len() - half..].iter()) {
        sources.add(a, 1);
        targets.add(b, 1);
    }
    Instance {
        structure: Structure::Tree { n, edges },
        sources,
        targets,
    }
}

/// Structures tried before [`generate_instance`] gives up.
pub const GENERATION_RETRIES: usize = 64;

/// A random tree or interval instance whose two configurations are
/// dominating sets of `k` distinct vertices. Deterministic in `seed`.
pub fn generate_instance(kind: StructureKind, n: usize, k: usize, seed: u64) -> Result<Instance> {
    if n == 0 || k > n {
        return Err(Error::Input(format!(
            "need 1 <= n and k <= n, got n = {n}, k = {k}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..GENERATION_RETRIES {
        let (structure, g, base) = match kind {
            StructureKind::Tree | StructureKind::Graph => {
                let edges = random_tree_edges(n, &mut rng);
                let g = Graph::new(n, &edges)?;
                let base = tree_min_dominating_set(&RootedTree::new(g.clone(), 0)?);
                (Structure::Tree { n, edges }, g, base)
            }
            StructureKind::Intervals => {
                let raw = random_intervals(n, &mut rng);
                let g = intersection_graph(&normalize_representation(&raw)?);
                let base = interval_min_dominating_set(&raw)?;
                (Structure::Intervals(raw), g, base)
            }
        };
        if base.len() > k {
            continue;
        }
        let (sources, targets) = dominating_pair(&g, &base, k, &mut rng)?;
        return Ok(Instance {
            structure,
            sources,
            targets,
        });
    }
    Err(Error::Feasibility(format!(
        "no structure with a dominating set of size {k} after {GENERATION_RETRIES} tries"
    )))
}

/// Instances for runtime ladders. Trees use [`path_transfer_instance`]
/// (`seed` is ignored); interval instances use `k ≈ n / 10` tokens,
/// doubled until the generated structure admits a dominating set that small.
pub fn scaling_instance(kind: StructureKind, n: usize, seed: u64) -> Result<Instance> {
    if kind != StructureKind::Intervals {
        return Ok(path_transfer_instance(n));
    }
    let mut k = (n / 10).max(1);
    loop {
        match generate_instance(kind, n, k, seed) {
            Err(Error::Feasibility(_)) if k < n => k = (k * 2).min(n),
            other => return other,
        }
    }
}
