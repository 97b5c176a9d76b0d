use alloc::vec::Vec;

/// Maximum-weight assignment of rows to distinct columns.
///
/// `weights` is row-major `rows × cols`. Returns, for every row, the column
/// it is matched to, or `None` when there are more rows than columns and the
/// row is left out. Runs the O(k^3) Hungarian method on the square padding
/// of the matrix with costs `max - w`.
pub fn max_weight_assignment(weights: &[i64], rows: usize, cols: usize) -> Vec<Option<usize>> {
    assert_eq!(weights.len(), rows * cols);
    let k = rows.max(cols);
    if k == 0 {
        return Vec::new();
    }
    let max = weights.iter().copied().max().unwrap_or(0);
    let cost = |i: usize, j: usize| -> i64 {
        if i < rows && j < cols {
            max - weights[i * cols + j]
        } else {
            max
        }
    };

    // Potentials and matching are 1-based; index 0 is the virtual root.
    let mut u = alloc::vec![0i64; k + 1];
    let mut v = alloc::vec![0i64; k + 1];
    let mut matched_row = alloc::vec![0usize; k + 1];
    let mut way = alloc::vec![0usize; k + 1];
    for i in 1..=k {
        matched_row[0] = i;
        let mut j0 = 0;
        let mut min_v = alloc::vec![i64::MAX; k + 1];
        let mut used = alloc::vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < min_v[j] {
                    min_v[j] = cur;
                    way[j] = j0;
                }
                if min_v[j] < delta {
                    delta = min_v[j];
                    j1 = j;
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_v[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = alloc::vec![None; rows];
    for (j, &i) in matched_row.iter().enumerate().take(k + 1).skip(1) {
        if i >= 1 && i <= rows && j <= cols {
            assignment[i - 1] = Some(j - 1);
        }
    }
    assignment
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn total(weights: &[i64], cols: usize, a: &[Option<usize>]) -> i64 {
        a.iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| weights[i * cols + j]))
            .sum()
    }

    #[test]
    fn square() {
        let w = [7, 1, 3, 2, 8, 1, 4, 3, 9];
        let a = max_weight_assignment(&w, 3, 3);
        assert_eq!(a, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn anti_diagonal_optimum() {
        let w = [1, 5, 5, 1];
        assert_eq!(max_weight_assignment(&w, 2, 2), vec![Some(1), Some(0)]);
    }

    #[test]
    fn more_rows_than_columns() {
        let w = [1, 9, 3];
        let a = max_weight_assignment(&w, 3, 1);
        assert_eq!(a, vec![None, Some(0), None]);
    }

    #[test]
    fn more_columns_than_rows() {
        let w = [1, 2, 9, 8, 1, 1];
        let a = max_weight_assignment(&w, 2, 3);
        assert_eq!(total(&w, 3, &a), 17);
    }

    #[test]
    fn empty() {
        assert!(max_weight_assignment(&[], 0, 0).is_empty());
        assert_eq!(max_weight_assignment(&[], 2, 0), vec![None, None]);
    }
}
