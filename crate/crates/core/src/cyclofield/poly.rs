//! Dense univariate polynomial helpers over ℚ and ℤ, ascending coefficient order.

use num::{BigInt, BigRational, One, Zero};

pub(crate) fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn trim_int(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of `num` by the monic integer polynomial `den`.
fn div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    trim_int(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        let shift = top - dd;
        quot[shift] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Integer coefficients of the m-th cyclotomic polynomial, ascending.
pub(crate) fn cyclotomic(m: u32) -> Vec<BigInt> {
    // Φ_m = (z^m - 1) / ∏_{d | m, d < m} Φ_d
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = div_exact_int(&p, &cyclotomic(d));
        }
    }
    trim_int(&mut p);
    p
}

#[cfg(test)]
pub(crate) fn totient(m: u32) -> usize {
    (1..=m).filter(|k| num::integer::gcd(*k, m) == 1).count()
}

/// Remainder of `p` modulo the monic polynomial `modulus` (in place, result length `deg modulus`).
pub(crate) fn reduce_monic(p: &mut Vec<BigRational>, modulus: &[BigRational]) {
    let deg = modulus.len() - 1;
    trim(p);
    if p.len() > deg {
        for top in (deg..p.len()).rev() {
            let c = p[top].clone();
            if c.is_zero() {
                continue;
            }
            let shift = top - deg;
            for (i, d) in modulus.iter().enumerate() {
                if !d.is_zero() {
                    p[shift + i] -= &c * d;
                }
            }
        }
    }
    p.resize(deg, BigRational::zero());
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Polynomial long division over ℚ; `b` must be nonzero and trimmed.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let top = rem.len() - 1;
        let c = &rem[top] / &lead;
        let shift = top - db;
        for (i, d) in b.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Bezout coefficient `s` with `s*a ≡ g (mod modulus)` and the gcd `g`, via the
/// extended Euclidean algorithm. `a` must be nonzero and trimmed.
pub(crate) fn ext_gcd(
    a: &[BigRational],
    modulus: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
        (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (s0, r0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), ints(&[1, 1]));
        assert_eq!(cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..40 {
            assert_eq!(cyclotomic(m).len() - 1, totient(m), "m = {m}");
        }
    }
}
