//! Assignment and matching solvers.
//!
//! [`min_cost_assignment`] is the O(r²·c) Hungarian method with row/column
//! potentials for an `r × c` table with `r ≤ c`. [`maximum_matching`] is
//! Hopcroft–Karp on an adjacency-list bipartite graph. Both explore
//! candidates in index order, so ties resolve the same way on every run.

/// Assigns every row to a distinct column minimising the total cost.
///
/// Returns `col_of_row`. Panics if the table is ragged or has more rows
/// than columns.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let rows = cost.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = cost[0].len();
    assert!(cost.iter().all(|r| r.len() == cols), "ragged cost table");
    assert!(rows <= cols, "more rows ({rows}) than columns ({cols})");

    // 1-based indices; column 0 is the virtual start of each augmenting path.
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut row_of_col = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];

    for i in 1..=rows {
        row_of_col[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            assert!(j1 != 0, "cost table contains NaN");
            for j in 0..=cols {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; rows];
    for j in 1..=cols {
        if row_of_col[j] != 0 {
            col_of_row[row_of_col[j] - 1] = j - 1;
        }
    }
    col_of_row
}

/// Maximum-weight assignment of every row to a distinct column.
pub fn max_weight_assignment(weight: &[Vec<f64>]) -> Vec<usize> {
    let negated: Vec<Vec<f64>> = weight
        .iter()
        .map(|row| row.iter().map(|w| -w).collect())
        .collect();
    min_cost_assignment(&negated)
}

/// Maximum-cardinality matching. `adjacency[l]` lists the right vertices
/// adjacent to left vertex `l`; returns the partner of every left vertex.
pub fn maximum_matching(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let left_count = adjacency.len();
    let mut left_match: Vec<Option<usize>> = vec![None; left_count];
    let mut right_match: Vec<Option<usize>> = vec![None; right_count];
    let mut dist = vec![usize::MAX; left_count];

    loop {
        // BFS layers from free left vertices.
        let mut queue = std::collections::VecDeque::new();
        for l in 0..left_count {
            if left_match[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                match right_match[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left_count {
            if left_match[l].is_none() {
                augment(l, adjacency, &mut left_match, &mut right_match, &mut dist);
            }
        }
    }
    left_match
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    left_match: &mut [Option<usize>],
    right_match: &mut [Option<usize>],
    dist: &mut [usize],
) -> bool {
    for &r in &adjacency[l] {
        let ok = match right_match[r] {
            None => true,
            Some(l2) => {
                dist[l2] == dist[l].wrapping_add(1)
                    && augment(l2, adjacency, left_match, right_match, dist)
            }
        };
        if ok {
            left_match[l] = Some(r);
            right_match[r] = Some(l);
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
