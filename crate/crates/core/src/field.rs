//! Exact scalars over ℚ or a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic 2 requires an explicit override")]
    CharacteristicTwo,
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// An odd prime field. Use [`Field::prime_unchecked`] for 𝔽₂.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        Field::prime_unchecked(p)
    }

    /// Any prime field, including characteristic 2.
    pub fn prime_unchecked(p: u64) -> Result<Field, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldScalar {
        match self {
            Field::Rational => FieldScalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldScalar::Prime {
                residue: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den`, reduced. Panics if `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> FieldScalar {
        let d = self.from_i64(den).inv().expect("zero denominator");
        self.from_i64(num) * d
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of ℚ (kept in lowest terms by `BigRational`) or of 𝔽_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rational,
            FieldScalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_zero(),
            FieldScalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_one(),
            FieldScalar::Prime { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldScalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldScalar::Rational(q) => FieldScalar::Rational(q.recip()),
            FieldScalar::Prime { residue, modulus } => FieldScalar::Prime {
                residue: mod_pow(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Small integer value, if the scalar is one (rationals) or its
    /// symmetric residue (prime fields).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldScalar::Rational(q) => {
                if q.is_integer() {
                    i64::try_from(q.to_integer()).ok()
                } else {
                    None
                }
            }
            FieldScalar::Prime { residue, modulus } => {
                let r = *residue as i64;
                let m = *modulus as i64;
                Some(if r > m / 2 { r - m } else { r })
            }
        }
    }

    fn combine(&self, other: &FieldScalar, op: fn(u64, u64, u64) -> u64) -> (u64, u64) {
        match (self, other) {
            (
                FieldScalar::Prime { residue: a, modulus: p },
                FieldScalar::Prime { residue: b, modulus: q },
            ) => {
                assert_eq!(p, q, "mixing scalars of different prime fields");
                (op(*a, *b, *p), *p)
            }
            _ => panic!("mixing rational and prime-field scalars"),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(q) => write!(f, "{q}"),
            FieldScalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)] // residues are reduced mod p
impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            _ => {
                let (residue, modulus) = self.combine(rhs, |a, b, p| (a + b) % p);
                FieldScalar::Prime { residue, modulus }
            }
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a - b),
            _ => {
                let (residue, modulus) = self.combine(rhs, |a, b, p| (a + p - b) % p);
                FieldScalar::Prime { residue, modulus }
            }
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            _ => {
                let (residue, modulus) = self.combine(rhs, |a, b, p| a * b % p);
                FieldScalar::Prime { residue, modulus }
            }
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Prime { residue, modulus } => FieldScalar::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl FieldScalar {
    /// True when a rational scalar has positive denominator (always, by
    /// construction) and a prime residue lies in `[0, p)`.
    pub fn is_canonical(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.denom().is_positive(),
            FieldScalar::Prime { residue, modulus } => residue < modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_constructor_rejects_two_and_composites() {
        assert_eq!(Field::prime(2), Err(FieldError::CharacteristicTwo));
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert!(Field::prime_unchecked(2).is_ok());
        assert_eq!(Field::prime(5), Ok(Field::Prime(5)));
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Rational.ratio(6, -4);
        assert_eq!(q, Field::Rational.ratio(-3, 2));
        assert!(q.is_canonical());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
        assert_eq!(f.from_i64(-1).to_i64(), Some(-1));
    }
}
