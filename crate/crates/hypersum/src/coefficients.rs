//! The `C_p` coefficient family, its hyper-level extensions, and the
//! executable recursion-identity suite.
//!
//! The base sequence is defined by the convolution
//! `sum_{q=0..p} C_{p-q}/(2q+1)! = 0` for `p > 0` with `C_0 = 1`; it is the
//! power-series inverse of the odd reciprocal factorials. Level-`L` tables
//! are `L`-fold convolutions of the base table with itself and collect the
//! series coefficients of the `(L+1)`-th power of that inverse.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::ltt::{ltt_from_harmonic, Harmonic};
use crate::rat::{factorial, inv_factorial, pow2, rat, ratio, Rat};

/// Coefficient table for one hyper-level: `values[p]` holds `C_p^(L)`,
/// with level 0 housing the base `C_p` sequence.
///
/// Tables are immutable after construction; requesting an index beyond the
/// built depth panics rather than silently extending.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    level: u32,
    values: Vec<Rat>,
}

impl CoeffTable {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Largest index stored.
    pub fn p_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, p: usize) -> &Rat {
        assert!(
            p < self.values.len(),
            "coefficient index {} beyond table depth {}",
            p,
            self.p_max()
        );
        &self.values[p]
    }

    /// Entry with the sign convention `C^(L)_p = 0` for negative `p`.
    pub fn value_or_zero(&self, p: i64) -> Rat {
        if p < 0 {
            Rat::zero()
        } else {
            self.value(p as usize).clone()
        }
    }

    /// Convolution of two tables; levels compose as the underlying series
    /// powers multiply, so the result has level `a.level + b.level + 1`.
    pub fn convolve(&self, other: &CoeffTable) -> CoeffTable {
        let depth = self.values.len().min(other.values.len());
        let values = (0..depth)
            .map(|p| {
                let mut acc = Rat::zero();
                for q in 0..=p {
                    acc += &self.values[q] * &other.values[p - q];
                }
                acc
            })
            .collect();
        CoeffTable {
            level: self.level + other.level + 1,
            values,
        }
    }

    /// Copy of the table with one entry replaced. Exists for fault-injection
    /// harnesses that need to demonstrate disagreement detection.
    pub fn with_value(&self, p: usize, v: Rat) -> CoeffTable {
        let mut values = self.values.clone();
        assert!(p < values.len());
        values[p] = v;
        CoeffTable {
            level: self.level,
            values,
        }
    }
}

/// Base table `C_0..C_{p_max}`, solved from the defining convolution.
///
/// Factorials up to `(2 p_max + 3)!` are computed once up front; every
/// identity in this module divides by them.
pub fn c_table(p_max: usize) -> CoeffTable {
    let inv_fact = inv_factorial_table(2 * p_max + 3);
    let mut values: Vec<Rat> = Vec::with_capacity(p_max + 1);
    values.push(Rat::one());
    for p in 1..=p_max {
        let mut acc = Rat::zero();
        for q in 1..=p {
            acc += &values[p - q] * &inv_fact[2 * q + 1];
        }
        values.push(-acc);
    }
    CoeffTable { level: 0, values }
}

/// Level-`L` table built by `L`-fold convolution of the base table.
pub fn c_hyper_table(level: u32, p_max: usize) -> CoeffTable {
    let base = c_table(p_max);
    let mut table = base.clone();
    for _ in 0..level {
        table = table.convolve(&base);
    }
    debug_assert_eq!(table.level, level);
    table
}

/// Bernoulli number `B_n`. Stored convention: `B_1 = -1/2`; odd indices
/// above 1 vanish; even indices come from the bridge
/// `B_{2p} = (2p)! C_p / (2 - 2^{2p})`.
pub fn bernoulli(n: u64) -> Rat {
    match n {
        0 => Rat::one(),
        1 => ratio(-1, 2),
        _ if n % 2 == 1 => Rat::zero(),
        _ => {
            let p = (n / 2) as usize;
            let c = c_table(p);
            let num = Rat::from_integer(factorial(n)) * c.value(p);
            num / (rat(2) - pow2(n as i64))
        }
    }
}

/// Scaled Euler numbers `E_{2p}/(2p)!` for `p = 0..=p_max`, extracted as the
/// series inverse of the even reciprocal-factorial kernel.
pub fn euler_table(p_max: usize) -> Vec<Rat> {
    ltt_from_harmonic(Harmonic::Q, p_max + 1)
        .inv()
        .coeffs()
        .to_vec()
}

fn inv_factorial_table(n_max: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut f = BigInt::one();
    out.push(Rat::one());
    for n in 1..=n_max {
        f *= BigInt::from(n);
        out.push(Rat::new(BigInt::one(), f.clone()));
    }
    out
}

/// Outcome of one identity family over its index range.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Human-readable description of the index range that was verified.
    pub range: String,
    /// `None` on success; otherwise the offending `(identity, p, L, N)` tuple.
    pub failure: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// Runs the whole recursion-identity suite by exact arithmetic.
///
/// A failure here signals an implementation bug, never an expected state;
/// the report carries the first offending index tuple per identity.
pub fn verify_identity_suite(p_max: usize, l_max: u32) -> IdentityReport {
    let c = c_table(p_max + 1);
    let euler = euler_table(p_max);
    let inv_fact = inv_factorial_table(2 * p_max + 4);
    let mut checks = Vec::new();

    let mut run = |name: &'static str, range: String, failure: Option<String>| {
        checks.push(IdentityCheck {
            name,
            range,
            failure,
        });
    };

    // sum C_{p-q}/(2q+1)! = [p == 0]
    run("unit-convolution", format!("p <= {p_max}"), {
        let mut fail = None;
        for p in 0..=p_max {
            let lhs: Rat = (0..=p).map(|q| c.value(p - q) * &inv_fact[2 * q + 1]).sum();
            let rhs = if p == 0 { Rat::one() } else { Rat::zero() };
            if lhs != rhs {
                fail = Some(format!("(unit-convolution, p={p})"));
                break;
            }
        }
        fail
    });

    // sum 2^{2q} C_{p-q}/(2q+1)! = 1/(2p)!
    run("power-two-odd", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p)
                .map(|q| pow2(2 * q as i64) * c.value(p - q) * &inv_fact[2 * q + 1])
                .sum();
            (
                lhs == inv_fact[2 * p].clone(),
                format!("(power-two-odd, p={p})"),
            )
        })
    });

    // sum 2^{2q+1} C_{p-q}/(2q+2)! = 1/(2p+1)!
    run("power-two-even", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p)
                .map(|q| pow2(2 * q as i64 + 1) * c.value(p - q) * &inv_fact[2 * q + 2])
                .sum();
            (
                lhs == inv_fact[2 * p + 1].clone(),
                format!("(power-two-even, p={p})"),
            )
        })
    });

    // sum 2^{2p-2q} C_{p-q}/(2q)! = C_p
    run("descending-scale", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p)
                .map(|q| pow2(2 * (p - q) as i64) * c.value(p - q) * &inv_fact[2 * q])
                .sum();
            (lhs == *c.value(p), format!("(descending-scale, p={p})"))
        })
    });

    // sum 2^{2p-2q} C_{p-q}/(2q+1)! = E_{2p}/(2p)!
    run("euler-numerator", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p)
                .map(|q| pow2(2 * (p - q) as i64) * c.value(p - q) * &inv_fact[2 * q + 1])
                .sum();
            (lhs == euler[p], format!("(euler-numerator, p={p})"))
        })
    });

    // sum (E_{2q}/(2q)!) C_{p-q} = 2^{2p} C_p
    run("euler-convolution", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p).map(|q| &euler[q] * c.value(p - q)).sum();
            (
                lhs == pow2(2 * p as i64) * c.value(p),
                format!("(euler-convolution, p={p})"),
            )
        })
    });

    // sum C_{p-q}/(2q)! = C_p/(2^{1-2p} - 1)
    run("even-kernel-eigen", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p).map(|q| c.value(p - q) * &inv_fact[2 * q]).sum();
            let rhs = c.value(p) / (pow2(1 - 2 * p as i64) - Rat::one());
            (lhs == rhs, format!("(even-kernel-eigen, p={p})"))
        })
    });

    // sum [1/(2q+1)!] C_{p-q}/(2^{2p-2q} - 2) = -[p=0]/2 - 1/(2 (2p)!)
    run("pole-weighted-odd", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p)
                .map(|q| {
                    c.value(p - q) * &inv_fact[2 * q + 1] / (pow2(2 * (p - q) as i64) - rat(2))
                })
                .sum();
            let delta = if p == 0 { ratio(-1, 2) } else { Rat::zero() };
            let rhs = delta - inv_fact[2 * p].clone() / rat(2);
            (lhs == rhs, format!("(pole-weighted-odd, p={p})"))
        })
    });

    // sum [1/(2q)!] C_{p-q}/(2^{2p-2q} - 2) = C_p/(2^{2p} - 2) - 1/(2 (2p-1)!)
    run("pole-weighted-even", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p)
                .map(|q| c.value(p - q) * &inv_fact[2 * q] / (pow2(2 * (p - q) as i64) - rat(2)))
                .sum();
            let rhs = c.value(p) / (pow2(2 * p as i64) - rat(2))
                - inv_factorial(2 * p as i64 - 1) / rat(2);
            (lhs == rhs, format!("(pole-weighted-even, p={p})"))
        })
    });

    // sum C_q C_{p-q} = (2p-1)/(1 - 2^{1-2p}) C_p
    run("self-convolution", format!("p <= {p_max}"), {
        first_fail(0..=p_max, |p| {
            let lhs: Rat = (0..=p).map(|q| c.value(q) * c.value(p - q)).sum();
            let rhs = rat(2 * p as i64 - 1) / (Rat::one() - pow2(1 - 2 * p as i64)) * c.value(p);
            (lhs == rhs, format!("(self-convolution, p={p})"))
        })
    });

    // sum C_{p-q}/(2q+1)! N^{2q+1} = 2/(2p)! [ (N-1)^{2p} + (N-3)^{2p} + ... ]
    // where the chain descends to 1 (N even) or 2 (N odd, p > 0 only).
    run("integer-chain-odd", format!("p <= {p_max}, N in 2..=5"), {
        let mut fail = None;
        'outer: for n in 2i64..=5 {
            for p in 0..=p_max {
                if n % 2 == 1 && p == 0 {
                    continue; // stated only for p > 0 at odd N
                }
                let lhs: Rat = (0..=p)
                    .map(|q| c.value(p - q) * &inv_fact[2 * q + 1] * rat(n).pow(2 * q as i32 + 1))
                    .sum();
                let mut chain = Rat::zero();
                let mut j = n - 1;
                while j >= 1 {
                    chain += rat(j).pow(2 * p as i32);
                    j -= 2;
                }
                let rhs = rat(2) * &inv_fact[2 * p] * chain;
                if lhs != rhs {
                    fail = Some(format!("(integer-chain-odd, p={p}, N={n})"));
                    break 'outer;
                }
            }
        }
        fail
    });

    // sum C_{p-q}/(2q)! N^{2q} = B C_p + 2/(2p-1)! [ (N-1)^{2p-1} + ... ]
    // with B = 1 (N even) or 1/(2^{1-2p} - 1) (N odd).
    run("integer-chain-even", format!("p <= {p_max}, N in 2..=5"), {
        let mut fail = None;
        'outer: for n in 2i64..=5 {
            for p in 0..=p_max {
                let lhs: Rat = (0..=p)
                    .map(|q| c.value(p - q) * &inv_fact[2 * q] * rat(n).pow(2 * q as i32))
                    .sum();
                let head = if n % 2 == 0 {
                    c.value(p).clone()
                } else {
                    c.value(p) / (pow2(1 - 2 * p as i64) - Rat::one())
                };
                let mut chain = Rat::zero();
                let mut j = n - 1;
                while j >= 1 {
                    chain += rat(j).pow(2 * p as i32 - 1);
                    j -= 2;
                }
                let rhs = head + rat(2) * inv_factorial(2 * p as i64 - 1) * chain;
                if lhs != rhs {
                    fail = Some(format!("(integer-chain-even, p={p}, N={n})"));
                    break 'outer;
                }
            }
        }
        fail
    });

    // Level-step identities; the first equality of each also holds at L = -1.
    let max_level_table = l_max + 2;
    let base = c_table(p_max);
    let mut ladder: Vec<CoeffTable> = vec![base.clone()];
    for _ in 0..max_level_table {
        ladder.push(ladder.last().unwrap().convolve(&base));
    }

    // sum 2^{2q+1} C^{(L+2)}_{p-q}/(2q+2)! = sum C^{(L+1)}_{p-q}/(2q+1)! = C^{(L)}_p
    run(
        "level-step-odd",
        format!("p <= {p_max}, -1 <= L <= {l_max}"),
        {
            let mut fail = None;
            'outer: for l in -1i64..=l_max as i64 {
                for p in 0..=p_max {
                    let t2 = &ladder[(l + 2) as usize];
                    let t1 = &ladder[(l + 1) as usize];
                    let lhs1: Rat = (0..=p)
                        .map(|q| pow2(2 * q as i64 + 1) * t2.value(p - q) * &inv_fact[2 * q + 2])
                        .sum();
                    let lhs2: Rat = (0..=p)
                        .map(|q| t1.value(p - q) * &inv_fact[2 * q + 1])
                        .sum();
                    let ok = if l >= 0 {
                        lhs1 == lhs2 && lhs2 == *ladder[l as usize].value(p)
                    } else {
                        lhs1 == lhs2
                    };
                    if !ok {
                        fail = Some(format!("(level-step-odd, p={p}, L={l})"));
                        break 'outer;
                    }
                }
            }
            fail
        },
    );

    // sum 2^{2q} C^{(L+2)}_{p-q}/(2q+1)! = sum C^{(L+1)}_{p-q}/(2q)!
    //   = (L+1-2p)/(L+1) C^{(L)}_p
    run(
        "level-step-even",
        format!("p <= {p_max}, -1 <= L <= {l_max}"),
        {
            let mut fail = None;
            'outer: for l in -1i64..=l_max as i64 {
                for p in 0..=p_max {
                    let t2 = &ladder[(l + 2) as usize];
                    let t1 = &ladder[(l + 1) as usize];
                    let lhs1: Rat = (0..=p)
                        .map(|q| pow2(2 * q as i64) * t2.value(p - q) * &inv_fact[2 * q + 1])
                        .sum();
                    let lhs2: Rat = (0..=p).map(|q| t1.value(p - q) * &inv_fact[2 * q]).sum();
                    let ok = if l >= 0 {
                        let rhs = ratio(l + 1 - 2 * p as i64, l + 1) * ladder[l as usize].value(p);
                        lhs1 == lhs2 && lhs2 == rhs
                    } else {
                        lhs1 == lhs2
                    };
                    if !ok {
                        fail = Some(format!("(level-step-even, p={p}, L={l})"));
                        break 'outer;
                    }
                }
            }
            fail
        },
    );

    IdentityReport { checks }
}

fn first_fail(
    range: std::ops::RangeInclusive<usize>,
    mut check: impl FnMut(usize) -> (bool, String),
) -> Option<String> {
    for p in range {
        let (ok, tuple) = check(p);
        if !ok {
            return Some(tuple);
        }
    }
    None
}
