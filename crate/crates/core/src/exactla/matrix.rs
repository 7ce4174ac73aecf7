use std::fmt;

use crate::cyclofield::{CycField, CycNum};

use super::LinalgError;

/// Dense row-major matrix over ℚ(ζ_m). Rectangular shapes are allowed; the
/// square-only operations assert or report it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: CycField,
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(field: &CycField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &CycField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// The matrix unit E_ij (0-based indices).
    pub fn unit(field: &CycField, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.data[i * n + j] = field.one();
        m
    }

    pub fn diag(field: &CycField, entries: &[CycNum]) -> Result<Self, LinalgError> {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            check_field(field, e)?;
            m.data[i * n + i] = e.clone();
        }
        Ok(m)
    }

    pub fn from_rows(field: &CycField, rows: Vec<Vec<CycNum>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Ragged);
            }
            for e in row {
                check_field(field, &e)?;
                data.push(e);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integer literals.
    pub fn from_ints<R: AsRef<[i64]>>(field: &CycField, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Self::from_rows(field, rows).expect("integer literal matrix is well formed")
    }

    /// Reassembles a row-major vector of length `rows*cols`.
    pub fn from_vec(
        field: &CycField,
        rows: usize,
        cols: usize,
        data: Vec<CycNum>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        for e in &data {
            check_field(field, e)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycNum) {
        assert_eq!(value.field(), &self.field, "entry from a different field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycNum]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Row-major vectorization: row 1, then row 2, and so on.
    pub fn vectorize(&self) -> Vec<CycNum> {
        self.data.clone()
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn same_shape(&self, other: &Matrix, op: &'static str) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    /// Exact product.
    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ));
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Scales so the first nonzero entry in row-major order equals 1.
    pub fn normalized(&self) -> Matrix {
        match self.data.iter().find(|e| !e.is_zero()) {
            Some(lead) if !lead.is_one() => {
                let s = lead.inv().expect("nonzero lead");
                self.scale(&s)
            }
            _ => self.clone(),
        }
    }
}

fn check_field(field: &CycField, e: &CycNum) -> Result<(), LinalgError> {
    if e.field() == field {
        Ok(())
    } else {
        Err(LinalgError::FieldMismatch(field.order(), e.order()))
    }
}

/// `[[a,b],[c,d]]` with entries in the cyclotomic expression grammar.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{}", self.field.order(), self)
    }
}
