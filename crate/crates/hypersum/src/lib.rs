//! Exact arithmetic for iterated power sums.
//!
//! A hypersum `S_k^(L)(N)` is the `L`-fold iterated summation of the k-th
//! powers of `1..=N`; `L = 0` is the ordinary power sum. This crate computes
//! these polynomials by several independent routes (literal nested summation,
//! the Stirling-number binomial formula, closed-form coefficient expansions,
//! and a factored determinant form in the variable `y = N(N+L+1)`) and ships
//! the self-check machinery that proves the routes agree exactly.
//!
//! Everything is exact: the universal scalar is an arbitrary-precision
//! rational and no floating point appears anywhere.

pub mod cli;
pub mod coefficients;
pub mod hypersums;
pub mod ltt;
pub mod oracles;
pub mod poly;
pub mod power_sums;
pub mod rat;
pub mod selfcheck;

pub use coefficients::{bernoulli, c_hyper_table, c_table, euler_table, CoeffTable};
pub use hypersums::{
    core_expansion_coeffs, hypersum_k0, theorem2_eval, theorem3_eval, theorem3_factored,
    FactoredHypersum, XVariable,
};
pub use oracles::{hypersum_brute, hypersum_stirling, stirling2};
pub use poly::PolyY;
pub use rat::Rat;
