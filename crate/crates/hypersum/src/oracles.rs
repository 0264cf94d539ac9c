//! Independent ground-truth evaluators.
//!
//! Nothing here shares factorial or coefficient code with the closed-form
//! modules: the brute-force oracle uses only integer addition and
//! multiplication, and the Stirling-number route keeps its own local
//! combinatorial helpers. That independence is the point: these are the
//! referees the formula paths are judged against.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::rat::Rat;

/// Triangular table of Stirling numbers of the second kind.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Builds rows `0..=k_max` from `S(k,q) = q S(k-1,q) + S(k-1,q-1)`.
    pub fn new(k_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k_max + 1);
        rows.push(vec![BigInt::one()]);
        for k in 1..=k_max {
            let prev = &rows[k - 1];
            let mut row = Vec::with_capacity(k + 1);
            row.push(BigInt::zero());
            for q in 1..=k {
                let stay = if q < prev.len() {
                    BigInt::from(q as u64) * &prev[q]
                } else {
                    BigInt::zero()
                };
                let split = prev[q - 1].clone();
                row.push(stay + split);
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn get(&self, k: usize, q: usize) -> &BigInt {
        assert!(
            k < self.rows.len() && q <= k,
            "Stirling index ({k},{q}) out of range"
        );
        &self.rows[k][q]
    }
}

/// Stirling number of the second kind `S(k, q)`; rejects `q > k`.
pub fn stirling2(k: usize, q: usize) -> BigInt {
    assert!(q <= k, "stirling2({k},{q}): need q <= k");
    StirlingTable::new(k).get(k, q).clone()
}

/// Literal nested summation: `S_k^(L)(N)` by doing the sums.
///
/// Computed as a running table: the level-0 row is `n^k` prefix sums, and
/// each further level is the prefix sum of the one below. The empty sum at
/// `N = 0` is 0.
pub fn hypersum_brute(level: u32, k: u32, n: u64) -> BigInt {
    let n = n as usize;
    // row[j] = S_k^(0)(j) for j = 0..=n
    let mut row: Vec<BigInt> = Vec::with_capacity(n + 1);
    row.push(BigInt::zero());
    for j in 1..=n {
        let term = BigInt::from(j as u64).pow(k);
        let prev = row[j - 1].clone();
        row.push(prev + term);
    }
    for _ in 0..level {
        for j in 1..=n {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row[n].clone()
}

/// Polynomial binomial coefficient `C(t, r) = t(t-1)...(t-r+1)/r!`, valid
/// for any integer `t` including negative values.
pub fn binomial_poly(t: i64, r: u64) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..r {
        num *= BigInt::from(t - j as i64);
        den *= BigInt::from(j + 1);
    }
    Rat::new(num, den)
}

/// The Stirling-number closed form
/// `S_k^(L)(N) = sum_q S(k,q) q! C(N+L+1, q+L+1)`.
///
/// With the polynomial binomial this is defined for every integer `N`, which
/// is what makes the zero locus at `N = 0, -1, ..., -L-1` directly testable.
///
/// The displayed formula holds for `k >= 1`; at `k = 0` its `q = 0` term
/// over-counts the empty summand, so that case is routed through
/// `S_0^(L) = S_1^(L-1)` to stay equal to the nested-sum definition.
pub fn hypersum_stirling(level: u32, k: u32, n: i64) -> Rat {
    if k == 0 {
        return match level {
            0 => Rat::from_integer(BigInt::from(n)),
            _ => hypersum_stirling(level - 1, 1, n),
        };
    }
    let table = StirlingTable::new(k as usize);
    let mut acc = Rat::zero();
    let mut q_fact = BigInt::one();
    for q in 0..=k as usize {
        if q > 0 {
            q_fact *= BigInt::from(q as u64);
        }
        let s = table.get(k as usize, q);
        if s.is_zero() {
            continue;
        }
        let b = binomial_poly(n + level as i64 + 1, q as u64 + level as u64 + 1);
        acc += Rat::from_integer(s * &q_fact) * b;
    }
    acc
}
