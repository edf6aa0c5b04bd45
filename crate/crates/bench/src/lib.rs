//! Workloads shared by the criterion benches.

use tokslide_core::format::{Instance, StructureKind};
use tokslide_core::gen;
use tokslide_core::{IntervalRepresentation, TokenMultiset};

/// Path instance with `Θ(n)` tokens crossing half the path.
pub fn tree_workload(n: usize) -> Instance {
    gen::path_transfer_instance(n)
}

/// Random interval instance with `k ≈ n / 10` tokens (at least the
/// domination number).
pub fn interval_workload(n: usize, seed: u64) -> Instance {
    gen::scaling_instance(StructureKind::Intervals, n, seed).expect("interval workload")
}

/// Disjoint-support token sets for the fast matcher: `k` sources on the
/// leftmost-ending intervals, `k` targets on the rightmost-ending ones.
pub fn matching_workload(
    n: usize,
    seed: u64,
) -> (IntervalRepresentation, TokenMultiset, TokenMultiset) {
    let mut rng = gen::rng_from_seed(seed);
    let raw: Vec<(i64, i64)> = (0..n as i64)
        .map(|i| {
            let l = 4 * i + rand_offset(&mut rng);
            (l, l + 6)
        })
        .collect();
    let rep = tokslide_core::interval::normalize_representation(&raw).expect("valid intervals");
    let order = rep.by_right();
    let k = n / 4;
    let a = TokenMultiset::from_vertices(n, order[..k].iter().copied()).unwrap();
    let b = TokenMultiset::from_vertices(n, order[n - k..].iter().copied()).unwrap();
    (rep, a, b)
}

fn rand_offset(rng: &mut impl rand::Rng) -> i64 {
    rng.gen_range(0..3)
}
