//! Dense exact linear algebra over ℚ(ζ_m).
//!
//! Elimination always takes the first nonzero entry of a column as pivot;
//! exact field arithmetic makes magnitude heuristics pointless and this keeps
//! every basis reproducible.

mod matrix;
mod space;

pub use matrix::Matrix;
pub use space::LinearSpace;

use thiserror::Error;

use crate::cyclofield::{CycField, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("entries from Q(zeta_{0}) and Q(zeta_{1}) cannot be mixed")]
    FieldMismatch(u32, u32),
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("basis elements are linearly dependent")]
    Dependent,
}

/// Reduced row echelon form of a list of rows. Returns the pivot columns,
/// increasing; the rows are left in RREF with zero rows removed.
pub(crate) fn rref_rows(rows: &mut Vec<Vec<CycNum>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for e in rows[r][c..].iter_mut() {
                if !e.is_zero() {
                    *e = &*e * &inv;
                }
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<CycNum>> {
    m.rows().map(<[CycNum]>::to_vec).collect()
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows = matrix_rows(m);
    let pivots = rref_rows(&mut rows, m.ncols());
    while rows.len() < m.nrows() {
        rows.push(vec![m.field().zero(); m.ncols()]);
    }
    let out = if m.nrows() == 0 {
        Matrix::zeros(m.field(), 0, m.ncols())
    } else {
        Matrix::from_rows(m.field(), rows).expect("same shape")
    };
    (out, pivots)
}

pub fn mat_rank(m: &Matrix) -> usize {
    let mut rows = matrix_rows(m);
    rref_rows(&mut rows, m.ncols()).len()
}

/// Kernel basis read off a reduced row echelon form: one vector per free
/// column, in increasing column order, with that free variable set to 1 and
/// the other free variables to 0.
pub(crate) fn kernel_from_rref(
    field: &CycField,
    rows: &[Vec<CycNum>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<CycNum>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// Exact basis of the right nullspace `{v : Mv = 0}`. Empty when trivial.
pub fn mat_kernel(m: &Matrix) -> Vec<Vec<CycNum>> {
    let mut rows = matrix_rows(m);
    let pivots = rref_rows(&mut rows, m.ncols());
    kernel_from_rref(m.field(), &rows, &pivots, m.ncols())
}

/// Determinant: cofactor expansion up to 4x4, Bareiss elimination above.
///
/// Panics on non-square input.
pub fn mat_det(m: &Matrix) -> CycNum {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n <= 4 {
        let cols: Vec<usize> = (0..n).collect();
        cofactor(m, 0, &cols)
    } else {
        bareiss(m)
    }
}

fn cofactor(m: &Matrix, row: usize, cols: &[usize]) -> CycNum {
    let field = m.field();
    if cols.is_empty() {
        return field.one();
    }
    let mut acc = field.zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a * &cofactor(m, row + 1, &rest);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn bareiss(m: &Matrix) -> CycNum {
    let field = m.field();
    let n = m.nrows();
    let mut a = matrix_rows(m);
    let mut sign = false;
    let mut prev = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return field.zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        let prev_inv = prev.inv().expect("previous pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &num * &prev_inv;
            }
            a[i][k] = field.zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Exact inverse by Gauss-Jordan elimination on `[A | I]`.
pub fn mat_inv(m: &Matrix) -> Result<Matrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let field = m.field();
    let mut rows: Vec<Vec<CycNum>> = m
        .rows()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.to_vec();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let pivots = rref_rows(&mut rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    let inv_rows = rows.into_iter().map(|r| r[n..].to_vec()).collect();
    Matrix::from_rows(field, inv_rows)
}

impl Matrix {
    pub fn det(&self) -> CycNum {
        mat_det(self)
    }

    pub fn inv(&self) -> Result<Matrix, LinalgError> {
        mat_inv(self)
    }

    pub fn rank(&self) -> usize {
        mat_rank(self)
    }

    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        mat_kernel(self)
    }
}
