//! The universal exact scalar and small integer helpers.
//!
//! Every quantity in this crate is an arbitrary-precision rational; [`Rat`]
//! is kept reduced (gcd of numerator and denominator is 1) with a strictly
//! positive denominator by construction.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Arbitrary-precision exact rational, the scalar used everywhere.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `n/d`, reduced on construction. Panics if `d = 0`.
pub fn ratio<N: Into<BigInt>, D: Into<BigInt>>(n: N, d: D) -> Rat {
    Rat::new(n.into(), d.into())
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).fold(BigInt::one(), |a, b| a * b)
}

/// `1/n!` for `n >= 0`; zero for negative `n` (reciprocal gamma pole).
///
/// Several coefficient identities are stated with factorials of `-1` in a
/// denominator at their boundary index; this convention makes them total.
pub fn inv_factorial(n: i64) -> Rat {
    if n < 0 {
        Rat::zero()
    } else {
        Rat::new(BigInt::one(), factorial(n as u64))
    }
}

/// `2^e` for any integer `e`, exact for negative exponents.
pub fn pow2(e: i64) -> Rat {
    let mag = BigInt::from(2u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::one(), mag)
    }
}

/// Binomial coefficient `C(n, k)` for non-negative integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}
