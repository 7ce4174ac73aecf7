//! Exact arithmetic in the cyclotomic field ℚ(ζ_m), realized as ℚ[z]/Φ_m(z).
//!
//! Elements are stored as their unique reduced representative: a coefficient
//! vector of length φ(m) in the power basis `1, z, …, z^(φ(m)-1)`. Two values
//! are equal exactly when their orders and coefficient vectors agree.
//!
//! Values of different orders never mix. The checked operations (`try_add`,
//! `try_mul`, …) report [`FieldError::OrderMismatch`]; the operator impls panic
//! on mismatch and are meant for code that has already validated its inputs.

mod expr;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

pub use expr::ExprError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("mismatched cyclotomic orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive {root}-th root of unity in Q(zeta_{order})")]
    NoRootOfUnity { root: u32, order: u32 },
}

struct FieldData {
    order: u32,
    /// Monic Φ_m, ascending, length φ(m)+1.
    modulus: Vec<BigRational>,
}

/// Handle to ℚ(ζ_m). Cheap to clone; handles for the same order share storage.
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

impl CycField {
    pub fn new(order: u32) -> Result<Self, FieldError> {
        if order == 0 {
            return Err(FieldError::ZeroOrder);
        }
        static CACHE: OnceLock<Mutex<HashMap<u32, CycField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
        let field = cache.entry(order).or_insert_with(|| {
            let modulus = poly::cyclotomic(order)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            CycField(Arc::new(FieldData { order, modulus }))
        });
        Ok(field.clone())
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// φ(m), the dimension of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    /// Reduces an arbitrary polynomial in `z` to its canonical representative.
    pub fn elem(&self, mut coeffs: Vec<BigRational>) -> CycNum {
        poly::reduce_monic(&mut coeffs, &self.0.modulus);
        CycNum {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> CycNum {
        self.elem(Vec::new())
    }

    pub fn one(&self) -> CycNum {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> CycNum {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(&self, numer: i64, denom: i64) -> CycNum {
        self.from_rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_rational(&self, q: BigRational) -> CycNum {
        self.elem(vec![q])
    }

    /// The generator `z`, a primitive m-th root of unity.
    pub fn gen(&self) -> CycNum {
        self.elem(vec![BigRational::zero(), BigRational::one()])
    }

    /// A primitive `root`-th root of unity, when the field contains one.
    ///
    /// ℚ(ζ_m) holds exactly the roots of unity of order dividing lcm(2, m).
    /// The returned root is ζ_L^(L/root) with L = lcm(2, m), where ζ_L = z for
    /// even m and ζ_L = -z^((m+1)/2) for odd m.
    pub fn root_of_unity(&self, root: u32) -> Result<CycNum, FieldError> {
        let m = self.order();
        let full = if m.is_multiple_of(2) { m } else { 2 * m };
        if root == 0 || full % root != 0 {
            return Err(FieldError::NoRootOfUnity { root, order: m });
        }
        let base = if m.is_multiple_of(2) {
            self.gen()
        } else {
            -self.gen().pow(m.div_ceil(2))
        };
        Ok(base.pow(full / root))
    }

    /// Parses an expression such as `2+3*z^2` or `-1/4*z`.
    pub fn parse(&self, text: &str) -> Result<CycNum, ExprError> {
        expr::parse(self, text)
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
    }
}

impl Eq for CycField {}

impl Hash for CycField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
    }
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order())
    }
}

/// An element of ℚ(ζ_m) in canonical reduced form.
#[derive(Clone)]
pub struct CycNum {
    field: CycField,
    coeffs: Vec<BigRational>,
}

/// Builds the canonical representative of `poly` in ℚ(ζ_order).
pub fn cyc_make(order: u32, poly: Vec<BigRational>) -> Result<CycNum, FieldError> {
    Ok(CycField::new(order)?.elem(poly))
}

impl CycNum {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Coefficients in the power basis; always `φ(m)` long.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if this element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.split_first() {
            None => Some(BigRational::zero()),
            Some((c0, rest)) if rest.iter().all(Zero::is_zero) => Some(c0.clone()),
            _ => None,
        }
    }

    fn check(&self, other: &CycNum) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(&q));
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q));
        }
        Ok(self.field.elem(poly::mul(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended gcd with Φ_m.
    pub fn inv(&self) -> Result<CycNum, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let mut a = self.coeffs.clone();
        poly::trim(&mut a);
        let (s, g) = poly::ext_gcd(&a, &self.field.0.modulus);
        // Φ_m is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let g = g[0].recip();
        Ok(self.field.elem(s.into_iter().map(|c| c * &g).collect()))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<CycNum, FieldError> {
        let mag = u32::try_from(e.unsigned_abs()).expect("exponent out of range");
        if e < 0 {
            Ok(self.inv()?.pow(mag))
        } else {
            Ok(self.pow(mag))
        }
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Prints in the expression grammar accepted by [`CycField::parse`].
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            if wrote && !term.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&term)?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn coeffs(x: &CycNum) -> Vec<BigRational> {
        x.coeffs().to_vec()
    }

    #[test]
    fn make_reduces_modulo_cyclotomic() {
        let z2 = cyc_make(3, vec![q(0), q(0), q(1)]).unwrap();
        assert_eq!(coeffs(&z2), vec![q(-1), q(-1)]);
        let five = cyc_make(3, vec![q(5)]).unwrap();
        assert_eq!(coeffs(&five), vec![q(5), q(0)]);
        let i2 = cyc_make(4, vec![q(0), q(0), q(1)]).unwrap();
        assert_eq!(coeffs(&i2), vec![q(-1), q(0)]);
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(cyc_make(0, vec![q(1)]).unwrap_err(), FieldError::ZeroOrder);
    }

    #[test]
    fn multiplication_examples() {
        let f = CycField::new(3).unwrap();
        let z = f.gen();
        assert_eq!(&z * &z, f.elem(vec![q(-1), q(-1)]));
        assert_eq!(&z * &z.pow(2), f.one());
        assert_eq!(f.from_int(2) * f.from_ratio(1, 2), f.one());
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = CycField::new(3).unwrap().gen();
        let b = CycField::new(4).unwrap().gen();
        assert_eq!(a.try_mul(&b).unwrap_err(), FieldError::OrderMismatch(3, 4));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn inverse_examples() {
        let f = CycField::new(3).unwrap();
        let z = f.gen();
        assert_eq!(z.inv().unwrap(), f.elem(vec![q(-1), q(-1)]));
        assert_eq!(f.from_int(4).inv().unwrap(), f.from_ratio(1, 4));
        let one_plus_z = f.one() + &z;
        let inv = one_plus_z.inv().unwrap();
        assert_eq!(inv, -z.clone());
        assert_eq!(&one_plus_z * &inv, f.one());
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn roots_of_unity() {
        for m in 1..=12u32 {
            let f = CycField::new(m).unwrap();
            let z = f.gen();
            assert!(z.pow(m).is_one(), "z^{m} != 1");
            for j in 1..m {
                assert!(!z.pow(j).is_one(), "z^{j} == 1 in Q(zeta_{m})");
            }
        }
        let f = CycField::new(3).unwrap();
        let zeta6 = f.root_of_unity(6).unwrap();
        assert!(zeta6.pow(6).is_one());
        assert!(!zeta6.pow(3).is_one());
        assert!(!zeta6.pow(2).is_one());
        assert_eq!(f.root_of_unity(3).unwrap(), f.gen());
        assert_eq!(f.root_of_unity(2).unwrap(), f.from_int(-1));
        assert!(f.root_of_unity(4).is_err());
        let rationals = CycField::new(1).unwrap();
        assert_eq!(rationals.root_of_unity(2).unwrap(), rationals.from_int(-1));
    }

    #[test]
    fn display_uses_expression_grammar() {
        let f = CycField::new(5).unwrap();
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.from_ratio(-1, 4).to_string(), "-1/4");
        let x = f.parse("2+3*z^2-z-1/4*z^3").unwrap();
        assert_eq!(x.to_string(), "2-z+3*z^2-1/4*z^3");
        assert_eq!(f.parse(&x.to_string()).unwrap(), x);
    }
}
