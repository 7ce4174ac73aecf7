//! Test-side oracles and samplers, written against plain field arithmetic
//! only so they do not share code paths with the solver.
#![allow(dead_code)]

use pglcent::{CycField, CycNum, GeneratorSet, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn f3() -> CycField {
    CycField::new(3).unwrap()
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &Matrix) -> CycNum {
    let n = m.nrows();
    let f = m.field();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = f.zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = f.one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        total = if inversions % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

pub fn naive_mul(a: &Matrix, b: &Matrix) -> Vec<Vec<CycNum>> {
    let f = a.field();
    (0..a.nrows())
        .map(|i| {
            (0..b.ncols())
                .map(|j| {
                    (0..a.ncols()).fold(f.zero(), |acc, k| &acc + &(a.get(i, k) * b.get(k, j)))
                })
                .collect()
        })
        .collect()
}

/// `X·A == ξ·A·X`, entry by entry.
pub fn twisted_commutes(x: &Matrix, a: &Matrix, xi: &CycNum) -> bool {
    let xa = naive_mul(x, a);
    let ax = naive_mul(a, x);
    xa.iter()
        .zip(&ax)
        .all(|(r1, r2)| r1.iter().zip(r2).all(|(p, q)| *p == xi * q))
}

pub fn in_stratum(x: &Matrix, gens: &GeneratorSet, twist: &[u32]) -> bool {
    let root = gens.field().root_of_unity(gens.m()).unwrap();
    gens.gens()
        .iter()
        .zip(twist)
        .all(|(a, &e)| twisted_commutes(x, a, &root.pow(e)))
}

pub fn root_power<R: Rng>(f: &CycField, rng: &mut R) -> CycNum {
    f.gen().pow(rng.gen_range(0..3))
}

fn permutation_matrix(f: &CycField, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(f, n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, f.one());
    }
    m
}

/// Permutation matrix with root-of-unity (optionally rescaled) entries.
pub fn monomial<R: Rng>(f: &CycField, rng: &mut R) -> Matrix {
    let mut perm = [0, 1, 2];
    perm.shuffle(rng);
    let scale = f.from_int(rng.gen_range(1..=3));
    let mut m = Matrix::zeros(f, 3, 3);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, &scale * &root_power(f, rng));
    }
    m
}

pub fn clock(f: &CycField) -> Matrix {
    let z = f.gen();
    Matrix::diag(f, &[f.one(), z.clone(), z.pow(2)]).unwrap()
}

pub fn shift(f: &CycField) -> Matrix {
    permutation_matrix(f, &[1, 2, 0])
}

pub fn root_diagonal<R: Rng>(f: &CycField, rng: &mut R) -> Matrix {
    let d: Vec<CycNum> = (0..3).map(|_| root_power(f, rng)).collect();
    Matrix::diag(f, &d).unwrap()
}

pub fn integer_diagonal<R: Rng>(f: &CycField, rng: &mut R) -> Matrix {
    let d: Vec<CycNum> = (0..3)
        .map(|_| f.from_int([1, 2, 3, -1][rng.gen_range(0..4)]))
        .collect();
    Matrix::diag(f, &d).unwrap()
}

/// Invertible integer matrix with entries in `[-b, b]`, mostly zeros when
/// `sparse`.
pub fn integer_matrix<R: Rng>(f: &CycField, rng: &mut R, n: usize, b: i64, sparse: bool) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if sparse && rng.gen_bool(0.5) {
                            0
                        } else {
                            rng.gen_range(-b..=b)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = Matrix::from_ints(f, &rows);
        if !leibniz_det(&m).is_zero() {
            return m;
        }
    }
}

/// A generator drawn from a mix of shapes that make nontrivial strata common.
pub fn generator<R: Rng>(f: &CycField, rng: &mut R) -> Matrix {
    match rng.gen_range(0..6) {
        0 => monomial(f, rng),
        1 => clock(f),
        2 => shift(f),
        3 => root_diagonal(f, rng),
        4 => integer_diagonal(f, rng),
        _ => integer_matrix(f, rng, 3, 2, true),
    }
}

pub fn generator_set<R: Rng>(f: &CycField, rng: &mut R, max_k: usize) -> GeneratorSet {
    let k = rng.gen_range(1..=max_k);
    GeneratorSet::new((0..k).map(|_| generator(f, rng)).collect()).unwrap()
}

/// Nonzero scalar: a small rational times a root of unity.
pub fn scalar<R: Rng>(f: &CycField, rng: &mut R) -> CycNum {
    let num = [1, -1, 2, -3, 5][rng.gen_range(0..5)];
    let den = rng.gen_range(1..=4);
    &f.from_ratio(num, den) * &root_power(f, rng)
}
