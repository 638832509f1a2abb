//! Exact dense matrix kernel.
//!
//! All matrices here are exact: entries are 64-bit integers or Gaussian
//! integers, and every operation either produces the exact result or
//! aborts loudly. The bound argument for the fixed width: every product
//! in scope has entries bounded by n·(q+1) with n ≤ 2048 and q ≤ n, far
//! inside the 64-bit range, so a checked overflow is always a bug in the
//! caller, never a legitimate value.
//!
//! [`Matrix<T>`] is plain row-major storage over any scalar;
//! [`SignMatrix`] and [`TernaryMatrix`] are validated wrappers whose
//! constructors enforce the {±1} and {−1, 0, 1} entry domains.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::error::{Error, Result};

/// Scalar domain for exact matrix arithmetic: ℤ or ℤ[i].
pub trait Scalar: Copy + PartialEq + fmt::Debug {
    const ZERO: Self;
    const ONE: Self;
    fn from_i64(v: i64) -> Self;
    fn checked_add(self, rhs: Self) -> Option<Self>;
    fn checked_mul(self, rhs: Self) -> Option<Self>;
    fn checked_neg(self) -> Option<Self>;
    /// Complex conjugate; the identity on ℤ.
    fn conj(self) -> Self;
    /// |re| + |im|; plain absolute value on ℤ.
    fn l1_norm(self) -> i64;
}

impl Scalar for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn from_i64(v: i64) -> Self {
        v
    }
    fn checked_add(self, rhs: Self) -> Option<Self> {
        i64::checked_add(self, rhs)
    }
    fn checked_mul(self, rhs: Self) -> Option<Self> {
        i64::checked_mul(self, rhs)
    }
    fn checked_neg(self) -> Option<Self> {
        i64::checked_neg(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn l1_norm(self) -> i64 {
        self.abs()
    }
}

/// A Gaussian integer re + im·i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    /// True iff the entry is one of ±1, ±i.
    pub fn is_quaternary(self) -> bool {
        self.re.abs() + self.im.abs() == 1
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt { re, im: 0 }
    }
}

impl Scalar for GaussInt {
    const ZERO: Self = GaussInt { re: 0, im: 0 };
    const ONE: Self = GaussInt { re: 1, im: 0 };

    fn from_i64(v: i64) -> Self {
        GaussInt { re: v, im: 0 }
    }

    fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(GaussInt {
            re: self.re.checked_add(rhs.re)?,
            im: self.im.checked_add(rhs.im)?,
        })
    }

    fn checked_mul(self, rhs: Self) -> Option<Self> {
        let re = self
            .re
            .checked_mul(rhs.re)?
            .checked_sub(self.im.checked_mul(rhs.im)?)?;
        let im = self
            .re
            .checked_mul(rhs.im)?
            .checked_add(self.im.checked_mul(rhs.re)?)?;
        Some(GaussInt { re, im })
    }

    fn checked_neg(self) -> Option<Self> {
        Some(GaussInt {
            re: self.re.checked_neg()?,
            im: self.im.checked_neg()?,
        })
    }

    fn conj(self) -> Self {
        GaussInt {
            re: self.re,
            im: -self.im,
        }
    }

    fn l1_norm(self) -> i64 {
        self.re.abs() + self.im.abs()
    }
}

/// Dense row-major matrix. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    ///
    /// # Panics
    /// Panics if the matrix is not square.
    pub fn order(&self) -> usize {
        assert!(self.is_square(), "order() on a {}x{} matrix", self.rows, self.cols);
        self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::OrderMismatch {
                    left: c,
                    right: row.len(),
                });
            }
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::ONE } else { T::ZERO })
    }

    /// The all-ones matrix J.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::ONE; rows * cols],
        }
    }

    /// circ(a₁, …, aₙ): row i is the first row cyclically shifted right i times.
    pub fn circulant(first_row: &[T]) -> Self {
        let n = first_row.len();
        Matrix::from_fn(n, n, |i, j| first_row[(j + n - i) % n])
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.checked_neg().expect("integer overflow in negation"))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

/// Exact integer matrix.
pub type IntMatrix = Matrix<i64>;
/// Exact Gaussian-integer matrix.
pub type GaussMatrix = Matrix<GaussInt>;

/// Kronecker product A ⊗ B: block (i, j) equals A\[i,j\]·B.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = Vec::with_capacity(rows * cols);
    for ia in 0..a.rows {
        for ib in 0..b.rows {
            for ja in 0..a.cols {
                let s = a[(ia, ja)];
                for jb in 0..b.cols {
                    data.push(
                        s.checked_mul(b[(ib, jb)])
                            .expect("integer overflow in Kronecker product"),
                    );
                }
            }
        }
    }
    Matrix { rows, cols, data }
}

/// Gram product A·B* (conjugate-transpose applied to the second factor;
/// plain A·Bᵀ over ℤ).
///
/// # Panics
/// Panics on column-count mismatch or integer overflow.
pub fn gram<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    assert_eq!(
        a.cols, b.cols,
        "gram: column counts differ ({} vs {})",
        a.cols, b.cols
    );
    // Conjugating B up front turns every output entry into a straight
    // row-by-row dot product, which keeps the O(n^3) loop cache-friendly.
    let bc: Vec<T> = b.data.iter().map(|&x| x.conj()).collect();
    let mut data = Vec::with_capacity(a.rows * b.rows);
    for i in 0..a.rows {
        let ar = &a.data[i * a.cols..(i + 1) * a.cols];
        for j in 0..b.rows {
            let br = &bc[j * b.cols..(j + 1) * b.cols];
            let mut acc = T::ZERO;
            for k in 0..a.cols {
                acc = acc
                    .checked_add(ar[k].checked_mul(br[k]).expect("integer overflow in gram"))
                    .expect("integer overflow in gram");
            }
            data.push(acc);
        }
    }
    Matrix {
        rows: a.rows,
        cols: b.rows,
        data,
    }
}

/// Plain matrix product A·B.
pub fn matmul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    assert_eq!(
        a.cols, b.rows,
        "matmul: inner dimensions differ ({} vs {})",
        a.cols, b.rows
    );
    let bt = b.transpose();
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        let ar = a.row(i);
        for j in 0..b.cols {
            let br = bt.row(j);
            let mut acc = T::ZERO;
            for k in 0..a.cols {
                acc = acc
                    .checked_add(ar[k].checked_mul(br[k]).expect("integer overflow in matmul"))
                    .expect("integer overflow in matmul");
            }
            data.push(acc);
        }
    }
    Matrix {
        rows: a.rows,
        cols: b.cols,
        data,
    }
}

/// Exact linear combination c₁·M₁ + c₂·M₂.
///
/// # Panics
/// Panics on shape mismatch or integer overflow.
pub fn scalar_combine<T: Scalar>(c1: T, m1: &Matrix<T>, c2: T, m2: &Matrix<T>) -> Matrix<T> {
    assert!(
        m1.rows == m2.rows && m1.cols == m2.cols,
        "scalar_combine: shapes differ ({}x{} vs {}x{})",
        m1.rows,
        m1.cols,
        m2.rows,
        m2.cols
    );
    let data = m1
        .data
        .iter()
        .zip(&m2.data)
        .map(|(&x, &y)| {
            c1.checked_mul(x)
                .and_then(|a| c2.checked_mul(y).and_then(|b| a.checked_add(b)))
                .expect("integer overflow in scalar_combine")
        })
        .collect();
    Matrix {
        rows: m1.rows,
        cols: m1.cols,
        data,
    }
}

/// S(M): the sum of all entries (the excess, for square matrices).
pub fn total_sum<T: Scalar>(m: &Matrix<T>) -> T {
    m.data.iter().fold(T::ZERO, |acc, &x| {
        acc.checked_add(x).expect("integer overflow in total_sum")
    })
}

/// S(Rᵢ) for each row i.
pub fn row_sums<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    (0..m.rows)
        .map(|i| {
            m.row(i).iter().fold(T::ZERO, |acc, &x| {
                acc.checked_add(x).expect("integer overflow in row_sums")
            })
        })
        .collect()
}

/// Square matrix with every entry ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    inner: IntMatrix,
}

impl SignMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if let Some((row, col)) = first_violation(&m, |x| x == 1 || x == -1) {
            return Err(Error::EntryDomain {
                expected: "+1 or -1",
                row,
                col,
            });
        }
        Ok(SignMatrix { inner: m })
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.inner[(i, j)]
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.inner
    }
}

/// Square matrix with entries in {−1, 0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryMatrix {
    inner: IntMatrix,
}

impl TernaryMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if let Some((row, col)) = first_violation(&m, |x| (-1..=1).contains(&x)) {
            return Err(Error::EntryDomain {
                expected: "-1, 0 or 1",
                row,
                col,
            });
        }
        Ok(TernaryMatrix { inner: m })
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.inner[(i, j)]
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.inner
    }
}

/// First coordinate (row-major) where `ok` fails, if any.
pub fn first_violation<T: Copy>(
    m: &Matrix<T>,
    ok: impl Fn(T) -> bool,
) -> Option<(usize, usize)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !ok(m[(i, j)]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// First coordinate where the quaternary entry domain {±1, ±i} is violated.
pub fn quaternary_violation(m: &GaussMatrix) -> Option<(usize, usize)> {
    first_violation(m, GaussInt::is_quaternary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(row: &[i64]) -> IntMatrix {
        IntMatrix::circulant(row)
    }

    #[test]
    fn kron_identity_blocks() {
        // kron(I_2, J_2) is block-diagonal with two J_2 blocks.
        let k = kron(&IntMatrix::identity(2), &IntMatrix::ones(2, 2));
        let expected = Matrix::from_rows(vec![
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
        ])
        .unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_with_j1_is_identity_map() {
        let j1 = IntMatrix::ones(1, 1);
        let m = circ(&[0, -1, 1]);
        assert_eq!(kron(&j1, &m), m);
        assert_eq!(kron(&m, &j1), m);
    }

    #[test]
    fn gram_all_ones() {
        let j3 = IntMatrix::ones(3, 3);
        let g = gram(&j3, &j3);
        assert_eq!(g, j3.map(|x| 3 * x));
    }

    #[test]
    fn gram_jacobsthal_q3() {
        // circ(0,-1,1) * its transpose = 3I - J.
        let q = circ(&[0, -1, 1]);
        let g = gram(&q, &q);
        let expected = scalar_combine(3, &IntMatrix::identity(3), -1, &IntMatrix::ones(3, 3));
        assert_eq!(g, expected);
    }

    #[test]
    fn gram_gauss_conjugates_second_factor() {
        let i_mat = Matrix {
            rows: 1,
            cols: 1,
            data: vec![GaussInt::I],
        };
        let g = gram(&i_mat, &i_mat);
        assert_eq!(g[(0, 0)], GaussInt::ONE);
    }

    #[test]
    fn scalar_combine_basics() {
        let i3 = IntMatrix::identity(3);
        let q = circ(&[0, -1, 1]);
        assert_eq!(scalar_combine(1, &i3, 1, &q), circ(&[1, -1, 1]));
        assert_eq!(scalar_combine(1, &q, -1, &q), IntMatrix::zero(3, 3));
        let m = scalar_combine(2, &IntMatrix::identity(2), 3, &IntMatrix::ones(2, 2));
        assert_eq!(m, Matrix::from_rows(vec![vec![5, 3], vec![3, 5]]).unwrap());
    }

    #[test]
    fn sums() {
        assert_eq!(total_sum(&IntMatrix::ones(5, 5)), 25);
        assert_eq!(total_sum(&circ(&[0, -1, 1])), 0);
        assert_eq!(total_sum(&circ(&[1, -1, 1])), 3);
        assert_eq!(row_sums(&circ(&[1, -1, 1])), vec![1, 1, 1]);
    }

    #[test]
    fn sign_matrix_rejects_zero() {
        let m = circ(&[0, -1, 1]);
        assert!(matches!(
            SignMatrix::new(m),
            Err(Error::EntryDomain { row: 0, col: 0, .. })
        ));
    }

    #[test]
    fn ternary_matrix_rejects_two() {
        let m = circ(&[2, -1, 1]);
        assert!(matches!(
            TernaryMatrix::new(m),
            Err(Error::EntryDomain { row: 0, col: 0, .. })
        ));
    }

    #[test]
    fn overflow_aborts() {
        let big = IntMatrix::ones(1, 1).map(|_| i64::MAX);
        let r = std::panic::catch_unwind(|| scalar_combine(2, &big, 0, &big));
        assert!(r.is_err());
    }

    #[test]
    fn gauss_mul() {
        let a = GaussInt::new(1, 2);
        let b = GaussInt::new(3, -1);
        assert_eq!(a.checked_mul(b), Some(GaussInt::new(5, 5)));
        assert_eq!(GaussInt::I.checked_mul(GaussInt::I), Some(GaussInt::new(-1, 0)));
    }
}
