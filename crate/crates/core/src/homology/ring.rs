//! Coefficient rings for elimination. Operations return `None` on overflow.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Sync + Send {
    type E: Clone + Send + Sync + Debug;

    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Inverse of `a` when it is a unit.
    fn unit_inverse(&self, a: &Self::E) -> Option<Self::E>;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Option<Self::E>;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Option<Self::E>;
    /// Exact integer value, for rings embedded in `Z`.
    fn to_bigint(&self, a: &Self::E) -> Option<BigInt>;
}

/// `Z` with 64-bit entries.
pub struct Int64;

impl Ring for Int64 {
    type E = i64;

    fn from_i64(&self, v: i64) -> i64 {
        v
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &i64) -> Option<i64> {
        (a.abs() == 1).then_some(*a)
    }
    fn mul(&self, a: &i64, b: &i64) -> Option<i64> {
        a.checked_mul(*b)
    }
    fn sub_mul(&self, a: &i64, b: &i64, c: &i64) -> Option<i64> {
        a.checked_sub(b.checked_mul(*c)?)
    }
    fn to_bigint(&self, a: &i64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
}

/// `Z` with arbitrary precision.
pub struct BigZ;

impl Ring for BigZ {
    type E = BigInt;

    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        a.abs().is_one().then(|| a.clone())
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a * b)
    }
    fn sub_mul(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> Option<BigInt> {
        Some(a - b * c)
    }
    fn to_bigint(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
}

/// The prime field `F_p`, `p < 2^31`.
pub struct Fp(pub u32);

impl Fp {
    fn red(&self, v: i128) -> u32 {
        v.rem_euclid(self.0 as i128) as u32
    }
}

impl Ring for Fp {
    type E = u32;

    fn from_i64(&self, v: i64) -> u32 {
        self.red(v as i128)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // a^(p-2)
        let p = self.0 as u64;
        let (mut base, mut e, mut r) = (*a as u64, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(r as u32)
    }
    fn mul(&self, a: &u32, b: &u32) -> Option<u32> {
        Some((*a as u64 * *b as u64 % self.0 as u64) as u32)
    }
    fn sub_mul(&self, a: &u32, b: &u32, c: &u32) -> Option<u32> {
        Some(self.red(*a as i128 - (*b as i128 * *c as i128)))
    }
    fn to_bigint(&self, _: &u32) -> Option<BigInt> {
        None
    }
}

/// The rationals.
pub struct Rationals;

impl Ring for Rationals {
    type E = BigRational;

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        Some(a * b)
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> Option<BigRational> {
        Some(a - b * c)
    }
    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
