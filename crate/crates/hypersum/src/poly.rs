//! Dense exact polynomials in the Faulhaber variable `y = N(N+L+1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::rat::{rat, Rat};

/// Polynomial in `y` with rational coefficients, tagged with the level `L`
/// that fixes the substitution `y = N(N+L+1)` used by [`PolyY::eval_at_n`].
///
/// The tag is evaluation metadata only: as ring elements two polynomials are
/// the same whenever their coefficients agree, and arithmetic on constants
/// (degree < 1) is level-agnostic. Mixing non-constant polynomials from
/// different levels is a bug and panics in debug builds.
#[derive(Clone)]
pub struct PolyY {
    level: u32,
    /// Ascending powers of `y`; the last stored coefficient is nonzero.
    coeffs: Vec<Rat>,
}

impl PolyY {
    pub fn new(level: u32, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyY { level, coeffs }
    }

    pub fn zero_at(level: u32) -> Self {
        PolyY {
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(level: u32, c: Rat) -> Self {
        Self::new(level, vec![c])
    }

    /// `c0 + c1*y`.
    pub fn linear(level: u32, c0: Rat, c1: Rat) -> Self {
        Self::new(level, vec![c0, c1])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }

    /// Evaluate at integer `N` through `y = N(N+L+1)`.
    pub fn eval_at_n(&self, n: i64) -> Rat {
        let y = rat(n) * rat(n + self.level as i64 + 1);
        self.eval(&y)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero_at(self.level);
        }
        Self::new(self.level, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; panics if `d` does not divide `self` in `Q[y]`.
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.coeffs.is_empty(), "polynomial division by zero");
        let level = self.join_level(d);
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        if rem.len() < d.coeffs.len() {
            assert!(rem.is_empty(), "inexact polynomial division");
            return Self::zero_at(level);
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd {
            let deg = rem.len() - 1;
            let q = &rem[deg] / lead;
            for j in 0..=dd {
                let t = &q * &d.coeffs[j];
                rem[deg - dd + j] = &rem[deg - dd + j] - t;
            }
            debug_assert!(rem[deg].is_zero());
            rem.pop();
            quot[deg - dd] = q;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        assert!(rem.is_empty(), "inexact polynomial division");
        Self::new(level, quot)
    }

    /// Splits into `(content, primitive)`: `self = content * primitive` with
    /// `primitive` an integer-coefficient polynomial of content 1 and positive
    /// leading coefficient. The zero polynomial has content 0 and primitive 0.
    pub fn content_and_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.coeffs.is_empty() {
            return (Rat::zero(), Vec::new());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &scaled {
            g = g.gcd(v);
        }
        if scaled.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = scaled.iter().map(|v| v / &g).collect();
        (Rat::new(g, den_lcm), prim)
    }

    /// Level for the result of a binary operation. Constants defer to the
    /// other operand.
    fn join_level(&self, other: &Self) -> u32 {
        debug_assert!(
            self.coeffs.len() < 2 || other.coeffs.len() < 2 || self.level == other.level,
            "mixed polynomial levels: {} vs {}",
            self.level,
            other.level
        );
        if self.coeffs.len() >= 2 {
            self.level
        } else {
            other.level
        }
    }
}

impl PartialEq for PolyY {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for PolyY {}

impl fmt::Debug for PolyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyY(L={}, {:?})", self.level, self.coeffs)
    }
}

impl Add for PolyY {
    type Output = PolyY;
    fn add(self, rhs: PolyY) -> PolyY {
        let level = self.join_level(&rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        PolyY::new(level, out)
    }
}

impl Sub for PolyY {
    type Output = PolyY;
    fn sub(self, rhs: PolyY) -> PolyY {
        let level = self.join_level(&rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        PolyY::new(level, out)
    }
}

impl Mul for PolyY {
    type Output = PolyY;
    fn mul(self, rhs: PolyY) -> PolyY {
        let level = self.join_level(&rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyY::zero_at(level);
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        PolyY::new(level, out)
    }
}

impl Neg for PolyY {
    type Output = PolyY;
    fn neg(self) -> PolyY {
        PolyY {
            level: self.level,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Zero for PolyY {
    fn zero() -> Self {
        PolyY::zero_at(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolyY {
    fn one() -> Self {
        PolyY::constant(0, Rat::one())
    }
}

// Dense polynomial helpers over a plain coefficient vector (used for
// expansions in the variable N, which carries no level tag).

pub(crate) fn dense_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    out
}

pub(crate) fn dense_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
            x + y
        })
        .collect()
}

/// Substitute the polynomial `inner` for the variable of `outer` (Horner).
pub(crate) fn dense_compose(outer: &[Rat], inner: &[Rat]) -> Vec<Rat> {
    let mut acc: Vec<Rat> = Vec::new();
    for c in outer.iter().rev() {
        acc = dense_mul(&acc, inner);
        acc = dense_add(&acc, std::slice::from_ref(c));
    }
    acc
}

pub(crate) fn dense_trim(mut a: Vec<Rat>) -> Vec<Rat> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn trims_leading_zeros_and_tracks_degree() {
        let p = PolyY::new(0, vec![rat(1), rat(0), rat(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(PolyY::zero_at(3).degree().is_none());
    }

    #[test]
    fn eval_at_n_uses_the_level() {
        // y + 1 at N = 2 with L = 3: y = 2*6 = 12.
        let p = PolyY::linear(3, rat(1), rat(1));
        assert_eq!(p.eval_at_n(2), rat(13));
        // Same coefficients at L = 0: y = 2*3 = 6.
        let q = PolyY::linear(0, rat(1), rat(1));
        assert_eq!(q.eval_at_n(2), rat(7));
    }

    #[test]
    fn arithmetic_and_exact_division_round_trip() {
        let a = PolyY::new(2, vec![rat(-1), rat(0), rat(3)]);
        let b = PolyY::linear(2, rat(5), rat(-2));
        let prod = a.clone() * b.clone();
        assert_eq!(prod.exact_div(&b), a);
        assert_eq!(prod.exact_div(&a), b);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        let a = PolyY::linear(0, rat(1), rat(1));
        let b = PolyY::linear(0, rat(0), rat(1));
        let _ = a.exact_div(&b);
    }

    #[test]
    fn content_extraction_normalizes_sign() {
        // -16y^2 + 32y + 16 = -16 * (y^2 - 2y - 1); leading must become positive.
        let p = PolyY::new(3, vec![rat(16), rat(32), rat(-16)]);
        let (content, prim) = p.content_and_primitive();
        assert_eq!(content, rat(-16));
        assert_eq!(
            prim,
            vec![BigInt::from(-1), BigInt::from(-2), BigInt::from(1)]
        );
        // Rational content.
        let q = PolyY::new(0, vec![ratio(3, 2), ratio(9, 4)]);
        let (c, pr) = q.content_and_primitive();
        assert_eq!(c, ratio(3, 4));
        assert_eq!(pr, vec![BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn dense_compose_substitutes() {
        // (t^2 + 1) with t = 2x: 4x^2 + 1.
        let outer = vec![rat(1), rat(0), rat(1)];
        let inner = vec![rat(0), rat(2)];
        assert_eq!(
            dense_trim(dense_compose(&outer, &inner)),
            vec![rat(1), rat(0), rat(4)]
        );
    }
}
