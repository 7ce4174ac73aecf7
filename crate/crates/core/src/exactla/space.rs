use crate::cyclofield::{CycField, CycNum};

use super::{rref_rows, LinalgError, Matrix};

/// A subspace of n×n matrices, held as a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpace {
    field: CycField,
    n: usize,
    basis: Vec<Matrix>,
}

impl LinearSpace {
    pub fn new(field: &CycField, n: usize, basis: Vec<Matrix>) -> Result<Self, LinalgError> {
        for b in &basis {
            if b.field() != field {
                return Err(LinalgError::FieldMismatch(field.order(), b.field().order()));
            }
            if (b.nrows(), b.ncols()) != (n, n) {
                return Err(LinalgError::DimensionMismatch {
                    op: "space",
                    left: (n, n),
                    right: (b.nrows(), b.ncols()),
                });
            }
        }
        let space = LinearSpace {
            field: field.clone(),
            n,
            basis,
        };
        if space.stacked_rank() != space.basis.len() {
            return Err(LinalgError::Dependent);
        }
        Ok(space)
    }

    /// Wraps kernel vectors of an n²-column system. The caller guarantees
    /// independence (kernel bases from RREF are independent by construction).
    pub(crate) fn from_kernel(field: &CycField, n: usize, vectors: Vec<Vec<CycNum>>) -> Self {
        let basis = vectors
            .into_iter()
            .map(|v| Matrix::from_vec(field, n, n, v).expect("n*n kernel vector"))
            .collect();
        LinearSpace {
            field: field.clone(),
            n,
            basis,
        }
    }

    pub fn zero(field: &CycField, n: usize) -> Self {
        LinearSpace {
            field: field.clone(),
            n,
            basis: Vec::new(),
        }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    /// Matrix size; the ambient space has dimension n².
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    fn stacked_rank(&self) -> usize {
        let mut rows: Vec<Vec<CycNum>> = self.basis.iter().map(Matrix::vectorize).collect();
        rref_rows(&mut rows, self.n * self.n).len()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        if m.field() != &self.field || (m.nrows(), m.ncols()) != (self.n, self.n) {
            return false;
        }
        if m.is_zero() {
            return true;
        }
        let mut rows: Vec<Vec<CycNum>> = self.basis.iter().map(Matrix::vectorize).collect();
        rows.push(m.vectorize());
        rref_rows(&mut rows, self.n * self.n).len() == self.basis.len()
    }

    /// True when both spaces have the same span.
    pub fn same_span(&self, other: &LinearSpace) -> bool {
        self.n == other.n
            && self.dim() == other.dim()
            && other.basis.iter().all(|b| self.contains(b))
    }

    /// `Σ c_j B_j`; `coeffs` must have one entry per basis element.
    pub fn combination(&self, coeffs: &[CycNum]) -> Matrix {
        assert_eq!(
            coeffs.len(),
            self.basis.len(),
            "one coefficient per basis element"
        );
        let mut acc = Matrix::zeros(&self.field, self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.try_add(&b.scale(c)).expect("same shape");
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_dependent_basis() {
        let f = CycField::new(3).unwrap();
        let a = Matrix::unit(&f, 2, 0, 1);
        let b = a.scale(&f.gen());
        assert_eq!(
            LinearSpace::new(&f, 2, vec![a.clone(), b]).unwrap_err(),
            LinalgError::Dependent
        );
        let s = LinearSpace::new(&f, 2, vec![a.clone(), Matrix::identity(&f, 2)]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&a.try_add(&Matrix::identity(&f, 2)).unwrap()));
        assert!(!s.contains(&Matrix::unit(&f, 2, 1, 0)));
    }
}
