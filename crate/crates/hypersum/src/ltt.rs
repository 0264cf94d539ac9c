//! Exact truncated lower-triangular Toeplitz (LTT) algebra.
//!
//! A unit LTT matrix is constant along diagonals and is determined by its
//! first column, so we store it as a coefficient series in the lower shift
//! matrix `J`. Truncation commutes with products and inverses, which is what
//! makes the fixed-order arithmetic here exact. The module also provides
//! general lower-triangular matrices (needed once factorial diagonal
//! conjugation destroys the Toeplitz structure), "tower" matrices whose only
//! nonzero column is the last, and the base+tower determinants built from
//! them.
//!
//! Indexing: matrices are 0-based internally. The unit tower `K_q` of order
//! `k` has its single 1 at row `k-1-q` of the last column, so `K_0` sits in
//! the bottom-right corner. Every consumer goes through the named
//! constructors here rather than building index arithmetic of its own.

use std::fmt;
use std::ops::{Neg, Sub};

use num::bigint::BigInt;
use num::{One, Zero};

use crate::poly::PolyY;
use crate::rat::{inv_factorial, Rat};

/// Scalar rings the matrix containers work over.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Rings with an exact-determinant algorithm attached.
///
/// Rational entries use ordinary Gaussian elimination (division is exact in a
/// field); polynomial entries use fraction-free Bareiss elimination, whose
/// intermediate divisions are guaranteed exact.
pub trait DetScalar: Ring {
    fn exact_div(&self, d: &Self) -> Self;
    fn det(m: Vec<Vec<Self>>) -> Self;
}

impl DetScalar for Rat {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn det(m: Vec<Vec<Rat>>) -> Rat {
        det_gaussian(m)
    }
}

impl DetScalar for PolyY {
    fn exact_div(&self, d: &Self) -> Self {
        PolyY::exact_div(self, d)
    }
    fn det(m: Vec<Vec<PolyY>>) -> PolyY {
        det_bareiss(m)
    }
}

/// Exact Gaussian elimination over the rationals.
fn det_gaussian(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let head: Vec<Rat> = m[col][col..n].to_vec();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (c, pv) in (col..n).zip(&head) {
                let t = &f * pv;
                row[c] = &row[c] - t;
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) elimination; every division is exact in the ring.
fn det_bareiss<T: DetScalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Truncated LTT matrix `sum a_q J^q`, stored as its `order` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LttSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> LttSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "LTT series needs order >= 1");
        LttSeries { coeffs }
    }

    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order];
        coeffs[0] = T::one();
        LttSeries { coeffs }
    }

    /// The lower shift matrix `J`.
    pub fn shift(order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order];
        if order > 1 {
            coeffs[1] = T::one();
        }
        LttSeries { coeffs }
    }

    /// `a0*I + a1*J`.
    pub fn linear(order: usize, a0: T, a1: T) -> Self {
        let mut coeffs = vec![T::zero(); order];
        coeffs[0] = a0;
        if order > 1 {
            coeffs[1] = a1;
        }
        LttSeries { coeffs }
    }

    /// `(I - zJ)^(-1)` truncated: coefficients `1, z, z^2, ...`.
    pub fn geometric(z: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut acc = T::one();
        for q in 0..order {
            if q > 0 {
                acc = acc * z.clone();
            }
            coeffs.push(acc.clone());
        }
        LttSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order());
        LttSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Cauchy convolution truncated to the common order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "LTT order mismatch");
        let k = self.order();
        let mut out = Vec::with_capacity(k);
        for q in 0..k {
            let mut acc = T::zero();
            for r in 0..=q {
                acc = acc + self.coeffs[r].clone() * other.coeffs[q - r].clone();
            }
            out.push(acc);
        }
        LttSeries { coeffs: out }
    }

    /// Repeated multiplication; exponents stay small at desk scale.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_lower_tri(&self) -> LowerTri<T> {
        let k = self.order();
        let entries = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if j <= i {
                            self.coeffs[i - j].clone()
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LowerTri { entries }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> LttSeries<U> {
        LttSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl LttSeries<Rat> {
    /// Series inverse: `conv(self, inv) = [1/a0 * a0, 0, 0, ...]`.
    /// Panics on `a0 = 0` (singular truncation).
    pub fn inv(&self) -> Self {
        assert!(!self.coeffs[0].is_zero(), "singular LTT series: a0 = 0");
        let k = self.order();
        let mut out = Vec::with_capacity(k);
        out.push(Rat::one() / &self.coeffs[0]);
        for q in 1..k {
            let mut acc = Rat::zero();
            for r in 1..=q {
                acc += &self.coeffs[r] * &out[q - r];
            }
            out.push(-acc / &self.coeffs[0]);
        }
        LttSeries { coeffs: out }
    }
}

/// The two harmonic-factorial kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Harmonic {
    /// Coefficients `1/(2q+1)!`.
    P,
    /// Coefficients `1/(2q)!`.
    Q,
}

pub fn ltt_from_harmonic(kind: Harmonic, order: usize) -> LttSeries<Rat> {
    assert!(order >= 1);
    let coeffs = (0..order as i64)
        .map(|q| match kind {
            Harmonic::P => inv_factorial(2 * q + 1),
            Harmonic::Q => inv_factorial(2 * q),
        })
        .collect();
    LttSeries::from_coeffs(coeffs)
}

/// General lower-triangular matrix, row-major, zero above the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTri<T> {
    entries: Vec<Vec<T>>,
}

impl<T: Ring> LowerTri<T> {
    pub fn identity(order: usize) -> Self {
        LttSeries::<T>::identity(order).to_lower_tri()
    }

    /// Builds from raw rows; everything above the diagonal must be zero.
    pub fn from_rows(entries: Vec<Vec<T>>) -> Self {
        let k = entries.len();
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), k, "row {i} has wrong length");
            assert!(
                row.iter().skip(i + 1).all(Zero::is_zero),
                "row {i} has nonzero entries above the diagonal"
            );
        }
        LowerTri { entries }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.order(),
            other.order(),
            "lower-triangular order mismatch"
        );
        let k = self.order();
        let entries = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut acc = T::zero();
                        if j <= i {
                            for m in j..=i {
                                acc =
                                    acc + self.entries[i][m].clone() * other.entries[m][j].clone();
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LowerTri { entries }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.order())
            .map(|i| self.entries[i][j].clone())
            .collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.order());
        (0..self.order())
            .map(|i| {
                let mut acc = T::zero();
                for (entry, value) in self.entries[i][..=i].iter().zip(v) {
                    acc = acc + entry.clone() * value.clone();
                }
                acc
            })
            .collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> LowerTri<U> {
        LowerTri {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// Last-column ("tower") matrix, stored as that column.
#[derive(Clone, Debug, PartialEq)]
pub struct Tower<T> {
    column: Vec<T>,
}

impl<T: Ring> Tower<T> {
    pub fn from_column(column: Vec<T>) -> Self {
        Tower { column }
    }

    /// Unit tower `K_q` of the given order: a single 1 at row `order-1-q`.
    pub fn unit(q: usize, order: usize) -> Self {
        assert!(q < order, "tower index out of range");
        let mut column = vec![T::zero(); order];
        column[order - 1 - q] = T::one();
        Tower { column }
    }

    pub fn order(&self) -> usize {
        self.column.len()
    }

    pub fn column(&self) -> &[T] {
        &self.column
    }
}

/// Diagonal matrix `D_m = diag(m!, (m+2)!, (m+4)!, ...)`.
#[derive(Clone, Copy, Debug)]
pub struct DiagFactorial {
    m: u64,
}

impl DiagFactorial {
    pub fn new(m: u64) -> Self {
        DiagFactorial { m }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `D_m S D_m^{-1}` for an LTT series `S`: entry `(i,j)` picks up the
    /// factor `(m+2i)!/(m+2j)!`, which is an exact integer for `i >= j`.
    pub fn conjugate(&self, s: &LttSeries<Rat>) -> LowerTri<Rat> {
        let k = s.order();
        let entries = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if j > i {
                            return Rat::zero();
                        }
                        let mut f = BigInt::one();
                        for v in (self.m + 2 * j as u64 + 1)..=(self.m + 2 * i as u64) {
                            f *= BigInt::from(v);
                        }
                        s.coeffs()[i - j].clone() * Rat::from_integer(f)
                    })
                    .collect()
            })
            .collect();
        LowerTri { entries }
    }
}

/// Free-function form of [`DiagFactorial::conjugate`].
pub fn d_conjugate(m: &DiagFactorial, s: &LttSeries<Rat>) -> LowerTri<Rat> {
    m.conjugate(s)
}

/// Determinant of `base` with its last column replaced by `tower`.
///
/// The base's own last column (only its corner element, since the matrix is
/// lower triangular) is discarded, exactly the `- a0 K_0` device.
pub fn det_base_tower<T: DetScalar>(base: &LowerTri<T>, tower: &Tower<T>) -> T {
    let k = base.order();
    assert_eq!(k, tower.order(), "base/tower order mismatch");
    let m: Vec<Vec<T>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if j + 1 == k {
                        tower.column()[i].clone()
                    } else if j <= i {
                        base.entry(i, j).clone()
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    T::det(m)
}

/// `C_p` as the signed p x p Hessenberg determinant of odd reciprocal
/// factorials. Independent of the convolution route, which makes it a
/// cross-check rather than a restatement.
pub fn c_via_det(p: usize) -> Rat {
    assert!(p >= 1);
    let m: Vec<Vec<Rat>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    if j == i + 1 {
                        Rat::one()
                    } else if j <= i {
                        inv_factorial(2 * (i - j) as i64 + 3)
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    let d = det_gaussian(m);
    if p % 2 == 1 {
        -d
    } else {
        d
    }
}

/// The four column identities relating conjugated powers of the harmonic
/// kernels to products of geometric series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnIdentity {
    I,
    II,
    III,
    IV,
}

/// Returns the (left, right) first-column vectors of the chosen identity at
/// the given truncation depth; callers assert equality.
pub fn column_identity_pair(side: ColumnIdentity, k: usize, depth: usize) -> (Vec<Rat>, Vec<Rat>) {
    assert!(depth > k, "depth must exceed the shift k");
    let p = ltt_from_harmonic(Harmonic::P, depth);
    let q = ltt_from_harmonic(Harmonic::Q, depth);
    let shift_k = LttSeries::<Rat>::shift(depth).pow(k as u32);

    let (conj_m, lhs_series, squares): (u64, LttSeries<Rat>, Vec<i64>) = match side {
        ColumnIdentity::I => (
            1,
            p.pow(2 * k as u32 + 1),
            (0..=k).map(|i| (2 * i as i64 + 1).pow(2)).collect(),
        ),
        ColumnIdentity::II => (
            2,
            p.pow(2 * k as u32 + 2),
            (0..=k).map(|i| (2 * i as i64 + 2).pow(2)).collect(),
        ),
        ColumnIdentity::III => (
            1,
            q.mul(&p.pow(2 * k as u32 + 1)),
            (0..=k).map(|i| (2 * i as i64 + 2).pow(2)).collect(),
        ),
        ColumnIdentity::IV => (
            2,
            q.mul(&p.pow(2 * k as u32 + 2)),
            (0..=k + 1).map(|i| (2 * i as i64 + 1).pow(2)).collect(),
        ),
    };

    // Left: column k of D_m (series) D_m^{-1}, i.e. the image of the k-th
    // unit vector under the conjugated matrix.
    let left = DiagFactorial::new(conj_m).conjugate(&lhs_series).column(k);

    // Right: J^k times the product of geometric inverses.
    let mut right = shift_k;
    for c in squares {
        right = right.mul(&LttSeries::geometric(
            Rat::from_integer(BigInt::from(c)),
            depth,
        ));
    }
    (left, right.coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn harmonic_kernels_match_their_reciprocal_factorials() {
        assert_eq!(
            ltt_from_harmonic(Harmonic::P, 3).coeffs(),
            &[rat(1), ratio(1, 6), ratio(1, 120)]
        );
        assert_eq!(
            ltt_from_harmonic(Harmonic::Q, 3).coeffs(),
            &[rat(1), ratio(1, 2), ratio(1, 24)]
        );
        assert_eq!(ltt_from_harmonic(Harmonic::P, 1).coeffs(), &[rat(1)]);
    }

    #[test]
    fn series_multiplication_convolves() {
        let id = LttSeries::<Rat>::identity(3);
        assert_eq!(id.mul(&id), id);
        let p = ltt_from_harmonic(Harmonic::P, 2);
        let q = ltt_from_harmonic(Harmonic::Q, 2);
        assert_eq!(p.mul(&q).coeffs(), &[rat(1), ratio(2, 3)]);
        let j = LttSeries::<Rat>::shift(3);
        assert_eq!(j.mul(&j).coeffs(), &[rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn series_inverse_solves_the_convolution() {
        let id = LttSeries::<Rat>::identity(4);
        assert_eq!(id.inv(), id);
        let p_inv = ltt_from_harmonic(Harmonic::P, 3).inv();
        assert_eq!(p_inv.coeffs(), &[rat(1), ratio(-1, 6), ratio(7, 360)]);
        let q_inv = ltt_from_harmonic(Harmonic::Q, 2).inv();
        assert_eq!(q_inv.coeffs(), &[rat(1), ratio(-1, 2)]);
    }

    #[test]
    #[should_panic(expected = "singular")]
    fn inverse_of_singular_series_panics() {
        let _ = LttSeries::from_coeffs(vec![rat(0), rat(1)]).inv();
    }

    #[test]
    fn geometric_series_examples() {
        assert_eq!(
            LttSeries::geometric(rat(0), 3).coeffs(),
            &[rat(1), rat(0), rat(0)]
        );
        assert_eq!(
            LttSeries::geometric(rat(2), 4).coeffs(),
            &[rat(1), rat(2), rat(4), rat(8)]
        );
        let z = PolyY::linear(0, rat(1), rat(4)); // 4y + 1
        let g = LttSeries::geometric(z.clone(), 2);
        assert_eq!(g.coeffs()[1], z);
    }

    #[test]
    fn factorial_conjugation_examples() {
        let m1 = DiagFactorial::new(1);
        let id = LttSeries::<Rat>::identity(3);
        assert_eq!(m1.conjugate(&id), LowerTri::identity(3));

        let p2 = ltt_from_harmonic(Harmonic::P, 2);
        let c = m1.conjugate(&p2);
        assert_eq!(*c.entry(1, 0), rat(1));
        assert_eq!(*c.entry(1, 1), rat(1));

        let p3 = ltt_from_harmonic(Harmonic::P, 3);
        assert_eq!(m1.conjugate(&p3).column(0), vec![rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn base_tower_determinant_examples() {
        // Order 1: the base corner is discarded, leaving the tower entry.
        let base = LttSeries::from_coeffs(vec![ratio(5, 7)]).to_lower_tri();
        let t = Tower::from_column(vec![rat(9)]);
        assert_eq!(det_base_tower(&base, &t), rat(9));

        let p = ltt_from_harmonic(Harmonic::P, 2).to_lower_tri();
        let k1 = Tower::unit(1, 2);
        assert_eq!(det_base_tower(&p, &k1), ratio(-1, 6));
    }

    #[test]
    fn determinant_route_to_the_coefficients() {
        assert_eq!(c_via_det(1), ratio(-1, 6));
        assert_eq!(c_via_det(2), ratio(7, 360));
        // Solved by hand from the defining convolution:
        // C_3 = -(C_2/3! + C_1/5! + C_0/7!) = -31/15120.
        assert_eq!(c_via_det(3), ratio(-31, 15120));
    }

    #[test]
    fn column_identity_base_cases() {
        let (l, r) = column_identity_pair(ColumnIdentity::I, 0, 3);
        assert_eq!(l, vec![rat(1), rat(1), rat(1)]);
        assert_eq!(l, r);

        let (l, r) = column_identity_pair(ColumnIdentity::II, 0, 3);
        assert_eq!(l, vec![rat(1), rat(4), rat(16)]);
        assert_eq!(l, r);
    }

    #[test]
    fn column_identities_shift_down_k_rows() {
        for side in [
            ColumnIdentity::I,
            ColumnIdentity::II,
            ColumnIdentity::III,
            ColumnIdentity::IV,
        ] {
            let k = 3;
            let (l, r) = column_identity_pair(side, k, k + 4);
            assert_eq!(l, r, "{side:?}");
            assert!(l[..k].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn polynomial_entry_determinant_matches_scalar_specialization() {
        // A 3x3 base+tower determinant with constant polynomial entries must
        // agree with the plain rational computation.
        let p = ltt_from_harmonic(Harmonic::P, 3);
        let base = p.to_lower_tri();
        let tower = Tower::unit(2, 3);
        let scalar = det_base_tower(&base, &tower);
        let base_poly = base.map(|r| PolyY::constant(0, r.clone()));
        let tower_poly = Tower::from_column(
            tower
                .column()
                .iter()
                .map(|r| PolyY::constant(0, r.clone()))
                .collect(),
        );
        let poly = det_base_tower(&base_poly, &tower_poly);
        assert_eq!(poly, PolyY::constant(0, scalar));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
    }

    fn series(order: usize) -> impl Strategy<Value = LttSeries<Rat>> {
        prop::collection::vec(small_rat(), order).prop_map(LttSeries::from_coeffs)
    }

    fn unit_series(order: usize) -> impl Strategy<Value = LttSeries<Rat>> {
        prop::collection::vec(small_rat(), order - 1).prop_map(|mut v| {
            let mut coeffs = vec![rat(1)];
            coeffs.append(&mut v);
            LttSeries::from_coeffs(coeffs)
        })
    }

    proptest! {
        #[test]
        fn truncation_commutes_with_product(a in series(8), b in series(8), k in 1usize..=8) {
            let full = a.mul(&b).truncate(k);
            let cut = a.truncate(k).mul(&b.truncate(k));
            prop_assert_eq!(full, cut);
        }

        #[test]
        fn truncation_commutes_with_inverse(a in unit_series(8), k in 1usize..=8) {
            let full = a.inv().truncate(k);
            let cut = a.truncate(k).inv();
            prop_assert_eq!(full, cut);
        }

        #[test]
        fn ltt_matrices_commute(a in series(6), b in series(6)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn tower_column_is_linear_in_the_determinant(
            base in unit_series(4),
            t1 in prop::collection::vec(small_rat(), 4),
            t2 in prop::collection::vec(small_rat(), 4),
            x in small_rat(),
        ) {
            let base = base.to_lower_tri();
            let sum: Vec<Rat> = t1.iter().zip(&t2).map(|(a, b)| a + b).collect();
            let scaled: Vec<Rat> = t1.iter().map(|a| a * &x).collect();
            let d1 = det_base_tower(&base, &Tower::from_column(t1.clone()));
            let d2 = det_base_tower(&base, &Tower::from_column(t2));
            let ds = det_base_tower(&base, &Tower::from_column(sum));
            let dx = det_base_tower(&base, &Tower::from_column(scaled));
            prop_assert_eq!(ds, &d1 + &d2);
            prop_assert_eq!(dx, &d1 * &x);
        }

        #[test]
        fn unit_factor_moves_across_the_base(
            a in unit_series(5),
            l in unit_series(5),
            t in prop::collection::vec(small_rat(), 5),
        ) {
            // det{A - a0K0 + L*T} = det{L^{-1}A - a0K0 + T}
            let base = a.to_lower_tri();
            let lt = l.to_lower_tri();
            let lhs = det_base_tower(&base, &Tower::from_column(lt.apply(&t)));
            let rhs_base = l.inv().to_lower_tri().mul(&base);
            let rhs = det_base_tower(&rhs_base, &Tower::from_column(t));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn diagonal_factor_conjugates_the_base(
            a in unit_series(5),
            d in prop::collection::vec((1i64..=9, 1i64..=9).prop_map(|(n, m)| ratio(n, m)), 5),
            t in prop::collection::vec(small_rat(), 5),
        ) {
            // det{A - a0K0 + D*T} = d_k det{D^{-1}AD - a0K0 + T}
            let k = 5;
            let base = a.to_lower_tri();
            let dt: Vec<Rat> = t.iter().zip(&d).map(|(v, di)| v * di).collect();
            let lhs = det_base_tower(&base, &Tower::from_column(dt));
            let conj_entries: Vec<Vec<Rat>> = (0..k)
                .map(|i| (0..k)
                    .map(|j| if j <= i { base.entry(i, j) * &d[j] / &d[i] } else { rat(0) })
                    .collect())
                .collect();
            let conj = LowerTri { entries: conj_entries };
            let rhs = det_base_tower(&conj, &Tower::from_column(t)) * &d[k - 1];
            prop_assert_eq!(lhs, rhs);
        }
    }
}
