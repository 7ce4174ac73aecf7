//! Deciding whether a linear space of matrices meets GL_n, and producing an
//! invertible element when it does.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use rand::Rng;

use crate::cyclofield::{CycField, CycNum};
use crate::exactla::{LinearSpace, Matrix};

/// Parameters of the randomized phase of [`find_invertible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    /// Random integer combinations tried before the exact fallback.
    pub trials: u32,
    /// Coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            trials: 32,
            coeff_bound: 10,
        }
    }
}

/// Returns an invertible element of `space`, normalized so that its first
/// nonzero entry is 1, or `None` when every element is singular.
///
/// Search order: each basis element, then the sum of the basis, then
/// `search.trials` random integer combinations, and finally an exact
/// decision: det(Σ t_j B_j) is expanded as a polynomial in the t_j. If that
/// polynomial is identically zero no witness exists; otherwise it has degree
/// at most n in each variable and cannot vanish on all of {0..n}^d, so a
/// grid scan finds a witness.
pub fn find_invertible<R: Rng + ?Sized>(
    space: &LinearSpace,
    search: &WitnessSearch,
    rng: &mut R,
) -> Option<Matrix> {
    let d = space.dim();
    if d == 0 {
        return None;
    }
    let field = space.field();

    if let Some(b) = space.basis().iter().find(|b| !b.det().is_zero()) {
        return Some(b.normalized());
    }
    if d > 1 {
        let sum = space.combination(&vec![field.one(); d]);
        if !sum.det().is_zero() {
            return Some(sum.normalized());
        }
    }

    let bound = search.coeff_bound.max(1);
    for _ in 0..search.trials {
        let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let candidate = integer_combination(space, &coeffs);
        if !candidate.det().is_zero() {
            return Some(candidate.normalized());
        }
    }

    let det = symbolic_det(space);
    if det.is_empty() {
        return None;
    }
    let n = space.n() as i64;
    let mut point = vec![0i64; d];
    loop {
        if !evaluate(field, &det, &point).is_zero() {
            return Some(integer_combination(space, &point).normalized());
        }
        // advance the odometer over {0..n}^d
        let mut i = d;
        loop {
            if i == 0 {
                unreachable!("nonzero polynomial of degree <= n per variable vanished on the grid");
            }
            i -= 1;
            if point[i] < n {
                point[i] += 1;
                break;
            }
            point[i] = 0;
        }
    }
}

fn integer_combination(space: &LinearSpace, coeffs: &[i64]) -> Matrix {
    let field = space.field();
    let cs: Vec<CycNum> = coeffs.iter().map(|&c| field.from_int(c)).collect();
    space.combination(&cs)
}

/// Sparse multivariate polynomial: exponent vector ↦ coefficient.
pub(crate) type MultiPoly = BTreeMap<Vec<u8>, CycNum>;

/// det(Σ_j t_j B_j) as a polynomial in t_1..t_d; empty map means zero.
///
/// Laplace expansion row by row over column subsets, so the cost is
/// n·2^n polynomial-times-linear-form products.
pub(crate) fn symbolic_det(space: &LinearSpace) -> MultiPoly {
    let n = space.n();
    let d = space.dim();
    let field = space.field();
    // linear form of entry (r, c): list of (variable, coefficient)
    let forms: Vec<Vec<(usize, CycNum)>> = (0..n * n)
        .map(|idx| {
            space
                .basis()
                .iter()
                .enumerate()
                .filter_map(|(j, b)| {
                    let e = &b.entries()[idx];
                    (!e.is_zero()).then(|| (j, e.clone()))
                })
                .collect()
        })
        .collect();

    let mut layer: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    layer.insert(0, BTreeMap::from([(vec![0u8; d], field.one())]));
    for r in 0..n {
        let mut next: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (&mask, poly) in &layer {
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let form = &forms[r * n + c];
                if form.is_empty() {
                    continue;
                }
                let wider = mask | (1 << c);
                let pos = (wider & ((1u32 << c) - 1)).count_ones() as usize;
                let negate = (r + pos) % 2 == 1;
                let target = next.entry(wider).or_default();
                for (mono, coef) in poly {
                    for (var, lc) in form {
                        let mut m = mono.clone();
                        m[*var] += 1;
                        let mut term = coef * lc;
                        if negate {
                            term = -term;
                        }
                        let slot = target.entry(m).or_insert_with(|| field.zero());
                        *slot = &*slot + &term;
                    }
                }
            }
        }
        for poly in next.values_mut() {
            poly.retain(|_, c| !c.is_zero());
        }
        next.retain(|_, p| !p.is_empty());
        layer = next;
    }
    layer.remove(&((1u32 << n) - 1)).unwrap_or_default()
}

pub(crate) fn evaluate(field: &CycField, poly: &MultiPoly, point: &[i64]) -> CycNum {
    let mut acc = field.zero();
    for (mono, coef) in poly {
        let mut v = BigInt::from(1);
        for (e, &t) in mono.iter().zip(point) {
            v *= BigInt::from(t).pow(u32::from(*e));
        }
        acc = acc + coef.scale(&BigRational::from_integer(v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(f: &CycField, basis: Vec<Matrix>) -> LinearSpace {
        LinearSpace::new(f, basis[0].nrows(), basis).unwrap()
    }

    #[test]
    fn cyclic_span_gives_permutation() {
        let f = CycField::new(3).unwrap();
        let s = space(
            &f,
            vec![
                Matrix::unit(&f, 3, 0, 1),
                Matrix::unit(&f, 3, 1, 2),
                Matrix::unit(&f, 3, 2, 0),
            ],
        );
        let w = find_invertible(
            &s,
            &WitnessSearch::default(),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert_eq!(
            w.unwrap(),
            Matrix::from_ints(&f, &[[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        );
    }

    #[test]
    fn nilpotent_span_has_no_witness() {
        let f = CycField::new(3).unwrap();
        let s = space(&f, vec![Matrix::unit(&f, 3, 0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(find_invertible(&s, &WitnessSearch::default(), &mut rng).is_none());
        let s = space(
            &f,
            vec![
                Matrix::unit(&f, 3, 0, 1),
                Matrix::unit(&f, 3, 0, 2),
                Matrix::unit(&f, 3, 1, 2),
            ],
        );
        assert!(find_invertible(&s, &WitnessSearch::default(), &mut rng).is_none());
        assert!(symbolic_det(&s).is_empty());
    }

    #[test]
    fn identity_span() {
        let f = CycField::new(3).unwrap();
        let s = space(&f, vec![Matrix::identity(&f, 3)]);
        let w = find_invertible(
            &s,
            &WitnessSearch::default(),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert!(w.unwrap().is_identity());
    }

    #[test]
    fn exact_fallback_finds_witness_without_random_trials() {
        // basis elements and their sum are singular; det = t1 t2 (t1 - t2)
        let f = CycField::new(3).unwrap();
        let b1 = Matrix::from_ints(&f, &[[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        let b2 = Matrix::from_ints(&f, &[[0, 0, 0], [0, 1, 0], [0, 0, -1]]);
        let s = space(&f, vec![b1, b2]);
        let search = WitnessSearch {
            trials: 0,
            coeff_bound: 10,
        };
        let det = symbolic_det(&s);
        assert_eq!(det.len(), 2);
        let w = find_invertible(&s, &search, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(!w.det().is_zero());
        assert!(s.contains(&w));
    }

    #[test]
    fn symbolic_det_matches_evaluation() {
        let f = CycField::new(3).unwrap();
        let z = f.gen();
        let b1 = Matrix::from_ints(&f, &[[1, 2, 0], [0, 1, 1], [1, 0, 1]]);
        let b2 = Matrix::identity(&f, 3).scale(&z);
        let b3 = Matrix::from_ints(&f, &[[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let s = space(&f, vec![b1, b2, b3]);
        let det = symbolic_det(&s);
        for p in [[1, 0, 0], [2, -1, 3], [0, 0, 1], [1, 1, 1]] {
            let direct = integer_combination(&s, &p).det();
            assert_eq!(evaluate(&f, &det, &p), direct);
        }
    }
}
