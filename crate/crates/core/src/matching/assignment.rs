//! Dense shortest-augmenting-path assignment (Hungarian with potentials).

/// Minimum-cost perfect assignment of rows to columns of a square matrix.
/// Rows are inserted in index order, which fixes the tie-breaking.
/// Returns `col_of_row`.
pub(crate) fn solve(cost: &[Vec<i64>]) -> Vec<usize> {
    let k = cost.len();
    if k == 0 {
        return Vec::new();
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based; column 0 is the virtual source of each augmentation.
    let mut row_pot = vec![0i64; k + 1];
    let mut col_pot = vec![0i64; k + 1];
    let mut row_of_col = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    let mut min_slack = vec![INF; k + 1];
    let mut used = vec![false; k + 1];

    for row in 1..=k {
        row_of_col[0] = row;
        let mut col0 = 0;
        min_slack.fill(INF);
        used.fill(false);
        loop {
            used[col0] = true;
            let r = row_of_col[col0];
            let mut delta = INF;
            let mut col1 = 0;
            for col in 1..=k {
                if used[col] {
                    continue;
                }
                let slack = cost[r - 1][col - 1] - row_pot[r] - col_pot[col];
                if slack < min_slack[col] {
                    min_slack[col] = slack;
                    way[col] = col0;
                }
                if min_slack[col] < delta {
                    delta = min_slack[col];
                    col1 = col;
                }
            }
            for col in 0..=k {
                if used[col] {
                    row_pot[row_of_col[col]] += delta;
                    col_pot[col] -= delta;
                } else {
                    min_slack[col] -= delta;
                }
            }
            col0 = col1;
            if row_of_col[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            row_of_col[col0] = row_of_col[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0; k];
    for col in 1..=k {
        col_of_row[row_of_col[col] - 1] = col - 1;
    }
    col_of_row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(cost: &[Vec<i64>], assignment: &[usize]) -> i64 {
        assignment
            .iter()
            .enumerate()
            .map(|(r, &c)| cost[r][c])
            .sum()
    }

    #[test]
    fn small_matrices() {
        assert!(solve(&[]).is_empty());
        let cost = vec![vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2]];
        let a = solve(&cost);
        assert_eq!(total(&cost, &a), 5);

        let cost = vec![vec![7]];
        assert_eq!(solve(&cost), vec![0]);
    }

    #[test]
    fn agrees_with_enumeration() {
        // 4x4 matrices from a fixed LCG; compare against all 24 permutations.
        let mut state = 12345u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 10) as i64
        };
        for _ in 0..50 {
            let cost: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| next()).collect()).collect();
            let mut best = i64::MAX;
            let mut perm = [0, 1, 2, 3];
            permute(&mut perm, 0, &mut |p| best = best.min(total(&cost, p)));
            assert_eq!(total(&cost, &solve(&cost)), best);
        }
    }

    fn permute(p: &mut [usize; 4], i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute(p, i + 1, f);
            p.swap(i, j);
        }
    }
}
