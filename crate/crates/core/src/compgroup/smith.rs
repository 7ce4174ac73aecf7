//! Smith normal form over ℤ for the small matrices that describe subgroups of
//! (ℤ/mℤ)^k.

/// Diagonal of the Smith normal form of `a` (rows × cols), together with a
/// unimodular `p_inv` such that the column lattice of `a` equals
/// `p_inv · diag(d) · ℤ^rows`.
///
/// The diagonal has `min(rows, cols)` entries, nonnegative, each dividing
/// the next.
pub(crate) fn smith(mut a: Vec<Vec<i64>>) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut p_inv: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..rows).map(|j| i64::from(i == j)).collect())
        .collect();

    // row ops on `a` are mirrored as inverse column ops on `p_inv`
    let swap_rows = |a: &mut Vec<Vec<i64>>, p: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a.swap(i, j);
        for row in p.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i += q * row_j
    let add_row = |a: &mut Vec<Vec<i64>>, p: &mut Vec<Vec<i64>>, i: usize, j: usize, q: i64| {
        for c in 0..a[i].len() {
            a[i][c] += q * a[j][c];
        }
        for row in p.iter_mut() {
            row[j] -= q * row[i];
        }
    };

    let t_max = rows.min(cols);
    for t in 0..t_max {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (finish(&a, t_max), p_inv);
            };
            if pi != t {
                swap_rows(&mut a, &mut p_inv, t, pi);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
            }

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    add_row(&mut a, &mut p_inv, i, t, -q);
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => add_row(&mut a, &mut p_inv, t, i, 1),
                None => break,
            }
        }
    }
    (finish(&a, t_max), p_inv)
}

fn finish(a: &[Vec<i64>], t_max: usize) -> Vec<i64> {
    (0..t_max).map(|t| a[t][t].abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, _) = smith(a);
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn p_inv_tracks_row_operations() {
        let a = vec![vec![3, 0, 3, 0], vec![1, 0, 0, 3]];
        let (d, p) = smith(a.clone());
        assert_eq!(d, vec![1, 3]);
        // columns p·diag(d) lie in the column lattice of a mod 3 span check:
        // p must be unimodular
        let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn zero_matrix() {
        let (d, _) = smith(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(d, vec![0, 0]);
    }
}
