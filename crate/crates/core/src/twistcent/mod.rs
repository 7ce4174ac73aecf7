//! Twisted commutation strata.
//!
//! For invertible A and X, `[X]` commutes with `[A]` in PGL_n exactly when
//! `XA = ξAX` with ξⁿ = 1 (compare determinants of `XAX⁻¹A⁻¹ = ξI`). Given
//! generators `A_1..A_k` and a twist tuple `(e_1..e_k)` the stratum is the
//! linear space
//!
//! ```text
//! { X : X·A_i − ζ^(e_i)·A_i·X = 0 for every i },   ζ = primitive m-th root
//! ```
//!
//! together with an invertible witness when the space meets GL_n.
//!
//! Systems are written against the row-major vectorization `vec(X)[i*n+j] =
//! X[i][j]`: equation `(i, j)` of `XA − ξAX = 0` reads
//! `Σ_k A[k][j]·X[i][k] − ξ·Σ_k A[i][k]·X[k][j] = 0`.

mod witness;

pub use witness::{find_invertible, WitnessSearch};

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::cyclofield::{CycField, CycNum, FieldError};
use crate::exactla::{kernel_from_rref, rref_rows, LinearSpace, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralizerError {
    #[error("a generator set needs at least one matrix")]
    Empty,
    #[error("generator {index} is {rows}x{cols}, expected {n}x{n}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("generator {index} is over Q(zeta_{found}), expected Q(zeta_{expected})")]
    FieldMismatch {
        index: usize,
        found: u32,
        expected: u32,
    },
    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("twist has {found} exponents for {expected} generators")]
    TwistLength { found: usize, expected: usize },
    #[error("twist exponent {exponent} outside [0, {m})")]
    TwistRange { exponent: u32, m: u32 },
    #[error("twist factor is not a root of unity")]
    NotRootOfUnity,
}

/// Ordered, non-empty list of invertible n×n generators over one field,
/// with the root-of-unity order `m` used for twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    field: CycField,
    n: usize,
    m: u32,
    gens: Vec<Matrix>,
}

impl GeneratorSet {
    /// Generators for the PGL_n criterion: twists are n-th roots of unity.
    pub fn new(gens: Vec<Matrix>) -> Result<Self, CentralizerError> {
        let n = gens.first().ok_or(CentralizerError::Empty)?.nrows();
        Self::with_twist_order(gens, n as u32)
    }

    pub fn with_twist_order(gens: Vec<Matrix>, m: u32) -> Result<Self, CentralizerError> {
        let first = gens.first().ok_or(CentralizerError::Empty)?;
        let field = first.field().clone();
        let n = first.nrows();
        field.root_of_unity(m)?;
        for (index, g) in gens.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(CentralizerError::Shape {
                    index,
                    rows: g.nrows(),
                    cols: g.ncols(),
                    n,
                });
            }
            if g.field() != &field {
                return Err(CentralizerError::FieldMismatch {
                    index,
                    found: g.field().order(),
                    expected: field.order(),
                });
            }
            if g.det().is_zero() {
                return Err(CentralizerError::SingularGenerator { index });
            }
        }
        Ok(GeneratorSet { field, n, m, gens })
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Order of the twisting roots of unity.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The primitive m-th root ζ that twist exponents refer to.
    pub fn root(&self) -> CycNum {
        self.field
            .root_of_unity(self.m)
            .expect("checked at construction")
    }

    /// A copy with one more generator appended.
    pub fn with_generator(&self, extra: Matrix) -> Result<Self, CentralizerError> {
        let mut gens = self.gens.clone();
        gens.push(extra);
        Self::with_twist_order(gens, self.m)
    }

    /// All m^k twist tuples in lexicographic order.
    pub fn twists(&self) -> Vec<TwistTuple> {
        let k = self.gens.len();
        let total = (self.m as usize).pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut e = vec![0u32; k];
                for slot in e.iter_mut().rev() {
                    *slot = (idx % self.m as usize) as u32;
                    idx /= self.m as usize;
                }
                TwistTuple(e)
            })
            .collect()
    }
}

/// One exponent per generator; generator i is twisted by ζ^(e_i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistTuple(pub Vec<u32>);

impl TwistTuple {
    pub fn zero(k: usize) -> Self {
        TwistTuple(vec![0; k])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &TwistTuple, m: u32) -> TwistTuple {
        TwistTuple(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a + b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, m: u32) -> TwistTuple {
        TwistTuple(self.0.iter().map(|a| (m - a % m) % m).collect())
    }
}

impl fmt::Display for TwistTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumStatus {
    EmptySpace,
    NoInvertible,
    Witnessed,
}

impl StratumStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StratumStatus::EmptySpace => "empty-space",
            StratumStatus::NoInvertible => "no-invertible",
            StratumStatus::Witnessed => "nonempty-with-witness",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Stratum {
    pub twist: TwistTuple,
    pub space: LinearSpace,
    pub witness: Option<Matrix>,
}

impl Stratum {
    pub fn status(&self) -> StratumStatus {
        if self.space.dim() == 0 {
            StratumStatus::EmptySpace
        } else if self.witness.is_some() {
            StratumStatus::Witnessed
        } else {
            StratumStatus::NoInvertible
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// The n²×n² matrix L with `L·vec(X) = 0 ⇔ XA − ξAX = 0`.
pub fn build_twisted_system(a: &Matrix, xi: &CycNum) -> Result<Matrix, CentralizerError> {
    let field = a.field();
    if xi.field() != field {
        return Err(FieldError::OrderMismatch(field.order(), xi.order()).into());
    }
    let roots = if field.order().is_multiple_of(2) {
        field.order()
    } else {
        2 * field.order()
    };
    if !xi.pow(roots).is_one() {
        return Err(CentralizerError::NotRootOfUnity);
    }
    let n = a.nrows();
    let rows = twisted_rows(a, xi);
    Ok(Matrix::from_rows(field, rows).unwrap_or_else(|_| Matrix::zeros(field, 0, n * n)))
}

fn twisted_rows(a: &Matrix, xi: &CycNum) -> Vec<Vec<CycNum>> {
    let field = a.field();
    let n = a.nrows();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![field.zero(); n * n];
            for k in 0..n {
                let right = a.get(k, j);
                if !right.is_zero() {
                    let idx = i * n + k;
                    row[idx] = &row[idx] + right;
                }
                let left = a.get(i, k);
                if !left.is_zero() {
                    let idx = k * n + j;
                    row[idx] = &row[idx] - &(xi * left);
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn check_twist(gens: &GeneratorSet, twist: &TwistTuple) -> Result<(), CentralizerError> {
    if twist.0.len() != gens.len() {
        return Err(CentralizerError::TwistLength {
            found: twist.0.len(),
            expected: gens.len(),
        });
    }
    if let Some(&exponent) = twist.0.iter().find(|&&e| e >= gens.m) {
        return Err(CentralizerError::TwistRange {
            exponent,
            m: gens.m,
        });
    }
    Ok(())
}

/// Solution space of the twisted equations only, without a witness search.
pub fn stratum_space(
    gens: &GeneratorSet,
    twist: &TwistTuple,
) -> Result<LinearSpace, CentralizerError> {
    check_twist(gens, twist)?;
    let n = gens.n;
    let zeta = gens.root();
    let mut rows = Vec::with_capacity(gens.len() * n * n);
    for (a, &e) in gens.gens.iter().zip(&twist.0) {
        rows.extend(twisted_rows(a, &zeta.pow(e)));
    }
    let pivots = rref_rows(&mut rows, n * n);
    let kernel = kernel_from_rref(&gens.field, &rows, &pivots, n * n);
    Ok(LinearSpace::from_kernel(&gens.field, n, kernel))
}

/// Stacks the k twisted systems, takes one kernel, and looks for an
/// invertible element of it.
pub fn solve_stratum<R: Rng + ?Sized>(
    gens: &GeneratorSet,
    twist: &TwistTuple,
    search: &WitnessSearch,
    rng: &mut R,
) -> Result<Stratum, CentralizerError> {
    let space = stratum_space(gens, twist)?;
    let witness = find_invertible(&space, search, rng);
    Ok(Stratum {
        twist: twist.clone(),
        space,
        witness,
    })
}

/// The untwisted stratum: the commutant of the generators.
pub fn centralizer<R: Rng + ?Sized>(
    gens: &GeneratorSet,
    search: &WitnessSearch,
    rng: &mut R,
) -> Stratum {
    solve_stratum(gens, &TwistTuple::zero(gens.len()), search, rng)
        .expect("zero twist always matches the generator count")
}
