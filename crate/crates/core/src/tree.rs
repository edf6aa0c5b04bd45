//! Shortest token-sliding reconfiguration of hitting sets on trees.
//!
//! Repeatedly take the deepest vertex `v` where the two configurations
//! disagree (everything below `v` already agrees) and slide the surplus
//! tokens between `v` and its parent: forward on the source side, or on
//! the target side with the move recorded reversed at the back. Each slide
//! lowers the minimum matching cost by one, so the result is shortest.
//!
//! The deepest mismatch never gets deeper, so one pass over the vertices in
//! decreasing depth suffices; all surplus at `v` moves as one compressed
//! triple, giving `O(n)` time and at most `n − 1` triples.

use crate::error::{Error, Result};
use crate::graph::{closed_neighborhood_system, is_hitting, RootedTree, SetSystem};
use crate::moves::{Move, MoveSequence};
use crate::multiset::TokenMultiset;
use crate::Vertex;

/// Shortest reconfiguration between two hitting sets of a family of subtrees.
pub fn reconf_tree(
    tree: &RootedTree,
    system: &SetSystem,
    sources: &TokenMultiset,
    targets: &TokenMultiset,
) -> Result<MoveSequence> {
    system.check_subtrees(tree)?;
    check_inputs(tree, sources, targets)?;
    if !is_hitting(system, sources) {
        return Err(Error::Feasibility(
            "source configuration is not a hitting set".into(),
        ));
    }
    if !is_hitting(system, targets) {
        return Err(Error::Feasibility(
            "target configuration is not a hitting set".into(),
        ));
    }
    Ok(sweep(tree, sources, targets).0)
}

/// Shortest reconfiguration between two dominating multisets of a tree.
pub fn reconf_tree_dominating(
    tree: &RootedTree,
    sources: &TokenMultiset,
    targets: &TokenMultiset,
) -> Result<MoveSequence> {
    check_inputs(tree, sources, targets)?;
    let system = closed_neighborhood_system(tree);
    if !is_hitting(&system, sources) {
        return Err(Error::Feasibility(
            "source configuration is not dominating".into(),
        ));
    }
    if !is_hitting(&system, targets) {
        return Err(Error::Feasibility(
            "target configuration is not dominating".into(),
        ));
    }
    Ok(sweep(tree, sources, targets).0)
}

fn check_inputs(tree: &RootedTree, sources: &TokenMultiset, targets: &TokenMultiset) -> Result<()> {
    if sources.len() != targets.len() {
        return Err(Error::Size {
            left: sources.len(),
            right: targets.len(),
        });
    }
    let n = tree.vertex_count();
    if let Some(v) = sources.support().chain(targets.support()).find(|&v| v >= n) {
        return Err(Error::Input(format!("token on vertex {v} outside 0..{n}")));
    }
    Ok(())
}

/// The single bottom-up pass. Also returns the vertices where a mismatch
/// was resolved, in processing order.
fn sweep(
    tree: &RootedTree,
    sources: &TokenMultiset,
    targets: &TokenMultiset,
) -> (MoveSequence, Vec<Vertex>) {
    let n = tree.vertex_count();
    let mut src: Vec<u64> = (0..n).map(|v| sources.get(v) as u64).collect();
    let mut dst: Vec<u64> = (0..n).map(|v| targets.get(v) as u64).collect();
    let mut front = MoveSequence::new();
    let mut back = Vec::new();
    let mut resolved = Vec::new();

    for &v in tree.order() {
        if v == tree.root() || src[v] == dst[v] {
            continue;
        }
        let p = tree.parent(v);
        if src[v] > dst[v] {
            let surplus = src[v] - dst[v];
            src[v] -= surplus;
            src[p] += surplus;
            front.push(Move::new(v, p, surplus));
        } else {
            let surplus = dst[v] - src[v];
            dst[v] -= surplus;
            dst[p] += surplus;
            back.push(Move::new(p, v, surplus));
        }
        resolved.push(v);
    }
    debug_assert_eq!(src[tree.root()], dst[tree.root()]);

    for mv in back.into_iter().rev() {
        front.push(mv);
    }
    (front, resolved)
}
