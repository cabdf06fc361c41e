use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Arbitrary-precision rational; always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Coefficient field of the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, PolyError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(PolyError::NotPrime(p))
        }
    }

    pub fn is_exact_rational(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(Rational::zero()),
            Field::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(Rational::one()),
            Field::Prime(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            Field::Rationals => Coeff::Q(Rational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Fp(v.rem_euclid(p as i64) as u64),
        }
    }

    /// Maps a rational into this field. Fails for a denominator divisible by p.
    pub fn from_rational(&self, r: &Rational) -> Result<Coeff, PolyError> {
        match *self {
            Field::Rationals => Ok(Coeff::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = mod_big(r.numer(), &pb);
                let den = mod_big(r.denom(), &pb);
                if den == 0 {
                    return Err(PolyError::DivisionByZero);
                }
                Ok(Coeff::Fp(mul_mod(num, inv_mod(den, p), p)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x + y) % p),
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rationals, Coeff::Q(x)) => Coeff::Q(-x),
            (Field::Prime(p), Coeff::Fp(x)) => Coeff::Fp((p - x) % p),
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(mul_mod(*x, *y, *p)),
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff, PolyError> {
        if a.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rationals, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (Field::Prime(p), Coeff::Fp(x)) => Coeff::Fp(inv_mod(*x, *p)),
            _ => panic!("coefficient does not belong to field {self:?}"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff, PolyError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field element. The variant always matches the [`Field`] of the
/// surrounding context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(Rational),
    Fp(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_zero(),
            Coeff::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_one(),
            Coeff::Fp(x) => *x == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_negative(),
            Coeff::Fp(_) => false,
        }
    }

    pub fn abs(&self) -> Coeff {
        match self {
            Coeff::Q(x) => Coeff::Q(x.abs()),
            Coeff::Fp(x) => Coeff::Fp(*x),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Q(x) if x.is_integer() => x.numer().to_i64(),
            Coeff::Q(_) => None,
            Coeff::Fp(x) => Some(*x as i64),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(x) => write!(f, "{x}"),
            Coeff::Fp(x) => write!(f, "{x}"),
        }
    }
}

fn mod_big(x: &BigInt, p: &BigInt) -> u64 {
    let r = ((x % p) + p) % p;
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}
