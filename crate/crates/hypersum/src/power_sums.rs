//! Ordinary (level 0) power sums: brute force, the Bernoulli-number formula,
//! the coefficient closed form in `x = 2N+1`, and the odd-integer sums.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::coefficients::{bernoulli, c_table};
use crate::hypersums::{theorem3_factored, FactoredHypersum};
use crate::rat::{binomial, factorial, inv_factorial, pow2, rat, Rat};

/// `1^k + 2^k + ... + N^k` by literal summation.
pub fn sum_powers_brute(k: u32, n: u64) -> BigInt {
    (1..=n)
        .map(|j| BigInt::from(j).pow(k))
        .fold(BigInt::zero(), |a, b| a + b)
}

/// The Bernoulli-number formula for `S_k(N)`, `k >= 1`, with its sign twist
/// on the `n = k` term applied literally (the stored convention is
/// `B_1 = -1/2`, and the formula's `(-1)^{delta_nk}` compensates).
pub fn faulhaber_eval(k: u32, n: i64) -> Rat {
    assert!(k >= 1);
    let nv = rat(n);
    let mut acc = Rat::zero();
    for j in 1..=k as u64 + 1 {
        let mut term = Rat::from_integer(binomial(k as u64 + 1, j))
            * bernoulli(k as u64 + 1 - j)
            * nv.pow(j as i32);
        if j == k as u64 {
            term = -term;
        }
        acc += term;
    }
    acc / rat(k as i64 + 1)
}

/// Closed form in `x = 2N+1`:
/// `S_k = k!/2^(k+1) sum_{q=0..floor(k/2)} C_q (x^(k+1-2q) - 1)/(k+1-2q)!`.
///
/// Valid for every `k >= 0` and any integer `N` (it is a polynomial).
pub fn theorem1_eval(k: u32, n: i64) -> Rat {
    theorem1_eval_x(k, &rat(2 * n + 1))
}

/// Same closed form evaluated at an arbitrary rational `x`; the variable
/// change `y = (x^2 - 1)/4` makes this the evaluation of `S_k` at rational
/// arguments of `y`.
pub fn theorem1_eval_x(k: u32, x: &Rat) -> Rat {
    let c = c_table(k as usize / 2);
    let mut acc = Rat::zero();
    for q in 0..=k as usize / 2 {
        let e = k as i64 + 1 - 2 * q as i64;
        let term = c.value(q) * (x.pow(e as i32) - Rat::one()) * inv_factorial(e);
        acc += term;
    }
    Rat::from_integer(factorial(k as u64)) * pow2(-(k as i64) - 1) * acc
}

/// Coefficients of the closed form as a polynomial in `x`, ascending.
pub fn theorem1_poly_x(k: u32) -> Vec<Rat> {
    let c = c_table(k as usize / 2);
    let scale = Rat::from_integer(factorial(k as u64)) * pow2(-(k as i64) - 1);
    let mut coeffs = vec![Rat::zero(); k as usize + 2];
    for q in 0..=k as usize / 2 {
        let e = (k as usize + 1) - 2 * q;
        let w = c.value(q) * inv_factorial(e as i64) * &scale;
        coeffs[e] = &coeffs[e] + &w;
        coeffs[0] = &coeffs[0] - w;
    }
    coeffs
}

/// `1^k + 3^k + 5^k + ... + N^k` for odd `N`, by the coefficient formula
/// `(k!/2) sum_q C_q (N+1)^(k+1-2q)/(k+1-2q)!`.
pub fn odd_power_sum(k: u32, n: u64) -> Rat {
    assert!(n % 2 == 1, "odd_power_sum needs odd N, got {n}");
    let c = c_table(k as usize / 2);
    let np1 = rat(n as i64 + 1);
    let mut acc = Rat::zero();
    for q in 0..=k as usize / 2 {
        let e = k as i64 + 1 - 2 * q as i64;
        acc += c.value(q) * np1.pow(e as i32) * inv_factorial(e);
    }
    Rat::from_integer(factorial(k as u64)) / rat(2) * acc
}

/// Brute-force companion of [`odd_power_sum`].
pub fn odd_power_sum_brute(k: u32, n: u64) -> BigInt {
    assert!(n % 2 == 1, "odd_power_sum_brute needs odd N, got {n}");
    (1..=n)
        .step_by(2)
        .map(|j| BigInt::from(j).pow(k))
        .fold(BigInt::zero(), |a, b| a + b)
}

/// Checks that the odd sum is the shifted-and-scaled ordinary sum:
/// with `y' = N(N+2)/4`, the odd sum equals `2^k [S_k(y') - S_k(-1/4)]`.
///
/// `S_k` at the rational arguments is evaluated through the `x` form at
/// `x = N+1` (so `y = y'`) and `x = 0` (so `y = -1/4`).
pub fn odd_sum_shift_check(k: u32, n: u64) -> bool {
    assert!(n % 2 == 1 && k >= 1);
    let lhs = odd_power_sum(k, n);
    let at_shift = theorem1_eval_x(k, &rat(n as i64 + 1));
    let at_quarter = theorem1_eval_x(k, &Rat::zero());
    lhs == pow2(k as i64) * (at_shift - at_quarter)
}

/// The level-0 factored form in `y = N(N+1)`.
pub fn powersum_poly_y(k: u32) -> FactoredHypersum {
    theorem3_factored(0, k)
}
