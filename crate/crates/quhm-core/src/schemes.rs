//! The association scheme of a skew core and its tensor powers.
//!
//! Writing Q = A₁ − A₂ for disjoint (0,1)-matrices turns a skew core of
//! order q into a 2-class commutative association scheme (A₁ and A₂ are
//! the adjacency matrices of doubly regular tournaments). Its eigenmatrix
//! lives in ℚ(√−q):
//!
//! ```text
//!     ( 1   (q−1)/2     (q−1)/2   )
//! P = ( 1  (−1+√−q)/2  (−1−√−q)/2 )
//!     ( 1  (−1−√−q)/2  (−1+√−q)/2 )
//! ```
//!
//! The m-fold tensor power has adjacency matrices A_{i₁} ⊗ ⋯ ⊗ A_{iₘ}
//! indexed by tuples in {0,1,2}^m and eigenmatrix P^{⊗m}. The tensor
//! scheme is never materialized: a pair of vertices is classified by
//! per-coordinate lookups in Q, which makes Bose–Mesner membership an
//! O(n²·m) scan.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::constructions::QuhMatrix;
use crate::cores::{CoreKind, CoreMatrix};
use crate::error::{Error, Result};
use crate::exactmat::{matmul, scalar_combine, IntMatrix, Matrix};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact element (a + b·√−q)/d of ℚ(√−q), kept in canonical form:
/// d > 0 and gcd(a, b, d) = 1. The parameter q is carried contextually
/// by the operations, not stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadComplex {
    a: i64,
    b: i64,
    d: i64,
}

impl QuadComplex {
    pub const ZERO: QuadComplex = QuadComplex { a: 0, b: 0, d: 1 };
    pub const ONE: QuadComplex = QuadComplex { a: 1, b: 0, d: 1 };

    pub fn new(a: i64, b: i64, d: i64) -> Self {
        assert_ne!(d, 0, "QuadComplex denominator must be nonzero");
        if a == 0 && b == 0 {
            return QuadComplex::ZERO;
        }
        let sign = if d < 0 { -1 } else { 1 };
        let g = gcd(gcd(a, b), d);
        QuadComplex {
            a: sign * a / g,
            b: sign * b / g,
            d: sign * d / g,
        }
    }

    pub fn from_int(k: i64) -> Self {
        QuadComplex { a: k, b: 0, d: 1 }
    }

    /// Numerator of the rational part.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Numerator of the √−q part.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// (a, b) when the value is a + b·√−q with no denominator.
    pub fn integer_pair(&self) -> Option<(i64, i64)> {
        (self.d == 1).then_some((self.a, self.b))
    }

    pub fn add(self, rhs: Self) -> Self {
        let ck = |x: Option<i64>| x.expect("integer overflow in QuadComplex add");
        QuadComplex::new(
            ck(self
                .a
                .checked_mul(rhs.d)
                .and_then(|l| rhs.a.checked_mul(self.d).and_then(|r| l.checked_add(r)))),
            ck(self
                .b
                .checked_mul(rhs.d)
                .and_then(|l| rhs.b.checked_mul(self.d).and_then(|r| l.checked_add(r)))),
            ck(self.d.checked_mul(rhs.d)),
        )
    }

    pub fn neg(self) -> Self {
        QuadComplex {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }

    pub fn sub(self, rhs: Self) -> Self {
        self.add(rhs.neg())
    }

    /// Product in ℚ(√−q): (√−q)² = −q.
    pub fn mul(self, rhs: Self, q: i64) -> Self {
        let ck = |x: Option<i64>| x.expect("integer overflow in QuadComplex mul");
        let a = ck(self.a.checked_mul(rhs.a).and_then(|aa| {
            self.b
                .checked_mul(rhs.b)
                .and_then(|bb| bb.checked_mul(q))
                .and_then(|qbb| aa.checked_sub(qbb))
        }));
        let b = ck(self
            .a
            .checked_mul(rhs.b)
            .and_then(|l| self.b.checked_mul(rhs.a).and_then(|r| l.checked_add(r))));
        QuadComplex::new(a, b, ck(self.d.checked_mul(rhs.d)))
    }

    pub fn scale_int(self, k: i64) -> Self {
        QuadComplex::new(
            self.a.checked_mul(k).expect("overflow"),
            self.b.checked_mul(k).expect("overflow"),
            self.d,
        )
    }

    /// Multiply by √−q.
    pub fn mul_sqrt_minus_q(self, q: i64) -> Self {
        QuadComplex::new(
            self.b.checked_mul(-q).expect("overflow"),
            self.a,
            self.d,
        )
    }

    pub fn conj(self) -> Self {
        QuadComplex {
            a: self.a,
            b: -self.b,
            d: self.d,
        }
    }

    pub fn inv(self, q: i64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/((a + b√−q)/d) = d(a − b√−q)/(a² + q·b²)
        let norm = self.a * self.a + q * self.b * self.b;
        Ok(QuadComplex::new(self.d * self.a, -self.d * self.b, norm))
    }

    pub fn div(self, rhs: Self, q: i64) -> Result<Self> {
        Ok(self.mul(rhs.inv(q)?, q))
    }
}

/// Matrix product over ℚ(√−q).
pub fn qc_matmul(
    a: &Matrix<QuadComplex>,
    b: &Matrix<QuadComplex>,
    q: i64,
) -> Matrix<QuadComplex> {
    assert_eq!(a.cols(), b.rows(), "qc_matmul: inner dimensions differ");
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(QuadComplex::ZERO, |acc, k| {
            acc.add(a[(i, k)].mul(b[(k, j)], q))
        })
    })
}

/// Kronecker product over ℚ(√−q).
pub fn qc_kron(a: &Matrix<QuadComplex>, b: &Matrix<QuadComplex>, q: i64) -> Matrix<QuadComplex> {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a[(i / b.rows(), j / b.cols())].mul(b[(i % b.rows(), j % b.cols())], q)
    })
}

/// A verified commutative association scheme: constructing one checks
/// axioms (i)–(v) and computes all intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    n: usize,
    adjacency: Vec<IntMatrix>,
    intersection: Vec<Vec<Vec<i64>>>,
}

impl Scheme {
    pub fn new(adjacency: Vec<IntMatrix>) -> Result<Self> {
        if adjacency.is_empty() {
            return Err(Error::SchemeAxiom {
                axiom: "at least one adjacency matrix",
            });
        }
        let n = adjacency[0].order();
        for a in &adjacency {
            if !a.is_square() || a.order() != n {
                return Err(Error::SchemeAxiom {
                    axiom: "matrices square of equal order",
                });
            }
            if crate::exactmat::first_violation(a, |x| x == 0 || x == 1).is_some() {
                return Err(Error::SchemeAxiom {
                    axiom: "(0,1) entries",
                });
            }
            if a.data().iter().all(|&x| x == 0) {
                return Err(Error::SchemeAxiom {
                    axiom: "nonzero adjacency matrices",
                });
            }
        }
        // (i) A_0 = I
        if adjacency[0] != IntMatrix::identity(n) {
            return Err(Error::SchemeAxiom { axiom: "(i) A_0 = I" });
        }
        // (ii) sum A_i = J
        let mut sum = IntMatrix::zero(n, n);
        for a in &adjacency {
            sum = scalar_combine(1, &sum, 1, a);
        }
        if sum != IntMatrix::ones(n, n) {
            return Err(Error::SchemeAxiom {
                axiom: "(ii) sum A_i = J",
            });
        }
        // (iii) transpose closure
        for a in &adjacency {
            let at = a.transpose();
            if !adjacency.contains(&at) {
                return Err(Error::SchemeAxiom {
                    axiom: "(iii) transpose closure",
                });
            }
        }
        // Representative position of each class, for reading coefficients
        // off products.
        let classes = adjacency.len();
        let mut representative = Vec::with_capacity(classes);
        for a in &adjacency {
            let pos = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| a[(i, j)] == 1)
                .expect("nonzero matrix has a one");
            representative.push(pos);
        }
        // (iv) + (v): products decompose with constant nonnegative
        // coefficients and commute.
        let mut intersection = alloc::vec![alloc::vec![alloc::vec![0i64; classes]; classes]; classes];
        for i in 0..classes {
            for j in 0..classes {
                let prod = matmul(&adjacency[i], &adjacency[j]);
                if j < i {
                    let back = matmul(&adjacency[j], &adjacency[i]);
                    if prod != back {
                        return Err(Error::SchemeAxiom {
                            axiom: "(v) A_i A_j = A_j A_i",
                        });
                    }
                }
                let mut recomposed = IntMatrix::zero(n, n);
                for k in 0..classes {
                    let p = prod[representative[k]];
                    if p < 0 {
                        return Err(Error::SchemeAxiom {
                            axiom: "(iv) nonnegative intersection numbers",
                        });
                    }
                    intersection[i][j][k] = p;
                    recomposed = scalar_combine(1, &recomposed, p, &adjacency[k]);
                }
                if recomposed != prod {
                    return Err(Error::SchemeAxiom {
                        axiom: "(iv) A_i A_j in span of adjacency matrices",
                    });
                }
            }
        }
        Ok(Scheme {
            n,
            adjacency,
            intersection,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Class count d (the scheme has d + 1 adjacency matrices).
    pub fn class_count(&self) -> usize {
        self.adjacency.len() - 1
    }

    pub fn adjacency(&self) -> &[IntMatrix] {
        &self.adjacency
    }

    /// p_ij^k, indexed \[i\]\[j\]\[k\].
    pub fn intersection_numbers(&self) -> &Vec<Vec<Vec<i64>>> {
        &self.intersection
    }
}

/// The 2-class scheme 𝔛^{(q)} of a skew core: A₁ holds the +1 positions
/// of Q, A₂ = A₁ᵀ the −1 positions.
pub fn scheme_from_core(core: &CoreMatrix) -> Result<Scheme> {
    if core.kind() != CoreKind::Skew {
        return Err(Error::WrongCoreKind {
            required: "skew-symmetric",
            q: core.q(),
        });
    }
    let q = core.order();
    let qm = core.matrix().as_matrix();
    let a1 = Matrix::from_fn(q, q, |i, j| i64::from(qm[(i, j)] == 1));
    let a2 = a1.transpose();
    Scheme::new(alloc::vec![IntMatrix::identity(q), a1, a2])
}

/// The displayed 3×3 eigenmatrix of 𝔛^{(q)} over ℚ(√−q).
pub fn eigenmatrix_base(q: u64) -> Result<Matrix<QuadComplex>> {
    if q % 4 != 3 {
        return Err(Error::BadResidue {
            q,
            required: "q = 3 (mod 4)",
        });
    }
    let k = QuadComplex::from_int((q as i64 - 1) / 2);
    let plus = QuadComplex::new(-1, 1, 2);
    let minus = QuadComplex::new(-1, -1, 2);
    Matrix::from_rows(alloc::vec![
        alloc::vec![QuadComplex::ONE, k, k],
        alloc::vec![QuadComplex::ONE, plus, minus],
        alloc::vec![QuadComplex::ONE, minus, plus],
    ])
}

/// Cap on the eigenmatrix tensor power: 3^m ≤ 729.
pub const TENSOR_EIGENMATRIX_CAP: u64 = 729;

/// Pₘ = P ⊗ ⋯ ⊗ P (m factors), rows and columns in lexicographic
/// class-tuple order.
pub fn tensor_eigenmatrix(
    p: &Matrix<QuadComplex>,
    m: u32,
    q: u64,
) -> Result<Matrix<QuadComplex>> {
    let target = 3u64.checked_pow(m).filter(|&t| t <= TENSOR_EIGENMATRIX_CAP);
    let Some(_) = target else {
        return Err(Error::OrderCapExceeded {
            order: 3u64.saturating_pow(m),
            cap: TENSOR_EIGENMATRIX_CAP,
        });
    };
    let mut out = Matrix::from_rows(alloc::vec![alloc::vec![QuadComplex::ONE]]).unwrap();
    for _ in 0..m {
        out = qc_kron(&out, p, q as i64);
    }
    Ok(out)
}

/// Index arithmetic for the tensor scheme 𝔛ₘ^{(q)}; the q^m × q^m
/// adjacency matrices are never materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorSchemeIndex {
    q: u64,
    m: u32,
}

impl TensorSchemeIndex {
    pub fn new(q: u64, m: u32) -> Self {
        TensorSchemeIndex { q, m }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn vertex_count(&self) -> u64 {
        self.q.pow(self.m)
    }

    pub fn class_count(&self) -> u64 {
        3u64.pow(self.m)
    }

    /// Class tuple of a vertex pair: coordinate t is 0, 1 or 2 according
    /// to whether the base-q digits agree, Q is +1, or Q is −1 there.
    /// Digits are taken most significant first, matching the Kronecker
    /// factor order.
    pub fn class_of_pair(&self, r: u64, c: u64, core: &CoreMatrix) -> Result<Vec<u8>> {
        let n = self.vertex_count();
        for &v in &[r, c] {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, limit: n });
            }
        }
        debug_assert_eq!(core.q(), self.q);
        let qm = core.matrix().as_matrix();
        let mut label = Vec::with_capacity(self.m as usize);
        let mut rr = r;
        let mut cc = c;
        for t in 0..self.m {
            let weight = self.q.pow(self.m - 1 - t);
            let rd = (rr / weight) as usize;
            let cd = (cc / weight) as usize;
            rr %= weight;
            cc %= weight;
            label.push(if rd == cd {
                0
            } else if qm[(rd, cd)] == 1 {
                1
            } else {
                2
            });
        }
        Ok(label)
    }

    /// Lexicographic rank of a class tuple (base-3, first coordinate
    /// most significant); the row index of that class in Pₘ.
    pub fn class_rank(&self, label: &[u8]) -> usize {
        label.iter().fold(0usize, |acc, &c| acc * 3 + c as usize)
    }

    pub fn class_from_rank(&self, mut rank: usize) -> Vec<u8> {
        let mut label = alloc::vec![0u8; self.m as usize];
        for t in (0..self.m as usize).rev() {
            label[t] = (rank % 3) as u8;
            rank /= 3;
        }
        label
    }
}

fn dense_bose_mesner_coeffs(
    m_mat: &IntMatrix,
    idx: &TensorSchemeIndex,
    core: &CoreMatrix,
) -> Result<Vec<i64>> {
    let n = idx.vertex_count() as usize;
    if m_mat.order() != n {
        return Err(Error::OrderMismatch {
            left: m_mat.order(),
            right: n,
        });
    }
    let q = core.order();
    let qm = core.matrix().as_matrix();
    // Base-q digit table, most significant first, shared by rows and
    // columns.
    let m = idx.m as usize;
    let mut digits = alloc::vec![0u16; n * m];
    for v in 0..n {
        let mut rest = v;
        for t in (0..m).rev() {
            digits[v * m + t] = (rest % q) as u16;
            rest /= q;
        }
    }
    let classes = idx.class_count() as usize;
    let mut coeff: Vec<Option<(i64, (usize, usize))>> = alloc::vec![None; classes];
    for r in 0..n {
        let rd = &digits[r * m..(r + 1) * m];
        for c in 0..n {
            let cd = &digits[c * m..(c + 1) * m];
            let mut code = 0usize;
            for t in 0..m {
                let cls = if rd[t] == cd[t] {
                    0
                } else if qm[(rd[t] as usize, cd[t] as usize)] == 1 {
                    1
                } else {
                    2
                };
                code = code * 3 + cls;
            }
            let v = m_mat[(r, c)];
            match coeff[code] {
                None => coeff[code] = Some((v, (r, c))),
                Some((v0, first)) => {
                    if v0 != v {
                        return Err(Error::NotInBoseMesner {
                            first: (first.0, first.1, v0),
                            second: (r, c, v),
                        });
                    }
                }
            }
        }
    }
    Ok(coeff
        .into_iter()
        .map(|c| c.expect("every tensor class is nonempty").0)
        .collect())
}

/// Decompose M = Σ c_{i₁…iₘ} A_{i₁} ⊗ ⋯ ⊗ A_{iₘ} by scanning entries
/// and binning per class; fails with two same-class coordinates holding
/// different values if M is not in the Bose–Mesner algebra.
pub fn bose_mesner_coeffs(
    m_mat: &IntMatrix,
    idx: &TensorSchemeIndex,
    core: &CoreMatrix,
) -> Result<BTreeMap<Vec<u8>, i64>> {
    let dense = dense_bose_mesner_coeffs(m_mat, idx, core)?;
    Ok(dense
        .into_iter()
        .enumerate()
        .map(|(rank, c)| (idx.class_from_rank(rank), c))
        .collect())
}

/// Exact eigenvalue certificate: the eigenvalue of H on one tensor
/// idempotent is (u + i·v·√q)/√(q+1) with u² + q·v² = (q+1)·n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumCertificate {
    pub class: Vec<u8>,
    pub u: i64,
    pub v: i64,
}

/// Eigenvalues of a QUH through the scheme: both sign patterns must lie
/// in the Bose–Mesner algebra; each row of Pₘ applied to their
/// coefficient vectors gives one certified eigenvalue.
pub fn spectrum_via_scheme(
    h: &QuhMatrix,
    idx: &TensorSchemeIndex,
    core: &CoreMatrix,
) -> Result<Vec<SpectrumCertificate>> {
    let q = core.q() as i64;
    let ca = dense_bose_mesner_coeffs(h.a().as_matrix(), idx, core)?;
    let cb = dense_bose_mesner_coeffs(h.b().as_matrix(), idx, core)?;
    let p = eigenmatrix_base(core.q())?;
    let pm = tensor_eigenmatrix(&p, idx.m(), core.q())?;
    let n = h.order() as i64;
    let mut certs = Vec::with_capacity(ca.len());
    for s in 0..pm.rows() {
        let mut x = QuadComplex::ZERO;
        let mut y = QuadComplex::ZERO;
        for j in 0..pm.cols() {
            x = x.add(pm[(s, j)].scale_int(ca[j]));
            y = y.add(pm[(s, j)].scale_int(cb[j]));
        }
        let w = x.add(y.mul_sqrt_minus_q(q));
        let Some((u, v)) = w.integer_pair() else {
            return Err(Error::NonIntegerEigenvalue { class_index: s });
        };
        if u * u + q * v * v != (q + 1) * n {
            return Err(Error::EigenvalueCertificateFailed { class_index: s });
        }
        certs.push(SpectrumCertificate {
            class: idx.class_from_rank(s),
            u,
            v,
        });
    }
    Ok(certs)
}

fn qc_det_3x3(p: &Matrix<QuadComplex>, q: i64) -> QuadComplex {
    let m = |i: usize, j: usize| p[(i, j)];
    let term = |a: QuadComplex, b: QuadComplex, c: QuadComplex| a.mul(b, q).mul(c, q);
    term(m(0, 0), m(1, 1), m(2, 2))
        .add(term(m(0, 1), m(1, 2), m(2, 0)))
        .add(term(m(0, 2), m(1, 0), m(2, 1)))
        .sub(term(m(0, 2), m(1, 1), m(2, 0)))
        .sub(term(m(0, 0), m(1, 2), m(2, 1)))
        .sub(term(m(0, 1), m(1, 0), m(2, 2)))
}

fn qc_inverse_3x3(p: &Matrix<QuadComplex>, q: i64) -> Result<Matrix<QuadComplex>> {
    let det = qc_det_3x3(p, q);
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let m = |i: usize, j: usize| p[(i, j)];
    let cof = |i: usize, j: usize| {
        let (r1, r2) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c1, c2) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = m(r1, c1).mul(m(r2, c2), q).sub(m(r1, c2).mul(m(r2, c1), q));
        if (i + j) % 2 == 0 {
            minor
        } else {
            minor.neg()
        }
    };
    let mut inv = Matrix::from_fn(3, 3, |i, j| cof(j, i));
    inv = Matrix::from_fn(3, 3, |i, j| inv[(i, j)].div(det, q).unwrap());
    Ok(inv)
}

/// The three primitive idempotents of 𝔛^{(q)}: Eᵢ = Σⱼ (P⁻¹)ⱼᵢ·Aⱼ in
/// exact ℚ(√−q) arithmetic, verified to satisfy Eᵢ·Eⱼ = δᵢⱼ·Eᵢ,
/// Σ Eᵢ = I and E₀ = (1/q)·J.
pub fn idempotents_base(core: &CoreMatrix) -> Result<[Matrix<QuadComplex>; 3]> {
    let scheme = scheme_from_core(core)?;
    let q = core.q() as i64;
    let p = eigenmatrix_base(core.q())?;
    let pinv = qc_inverse_3x3(&p, q)?;
    let n = core.order();
    let adj = scheme.adjacency();
    let make = |i: usize| {
        Matrix::from_fn(n, n, |r, c| {
            // Exactly one adjacency matrix is 1 at (r, c).
            let j = (0..3).find(|&j| adj[j][(r, c)] == 1).unwrap();
            pinv[(j, i)]
        })
    };
    let es = [make(0), make(1), make(2)];

    let id: Matrix<QuadComplex> = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            QuadComplex::ONE
        } else {
            QuadComplex::ZERO
        }
    });
    let mut sum = Matrix::from_fn(n, n, |_, _| QuadComplex::ZERO);
    for e in &es {
        sum = Matrix::from_fn(n, n, |r, c| sum[(r, c)].add(e[(r, c)]));
    }
    if sum != id {
        return Err(Error::SchemeAxiom {
            axiom: "sum of idempotents = I",
        });
    }
    for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate() {
            let prod = qc_matmul(ei, ej, q);
            let expected = if i == j {
                ei.clone()
            } else {
                Matrix::from_fn(n, n, |_, _| QuadComplex::ZERO)
            };
            if prod != expected {
                return Err(Error::SchemeAxiom {
                    axiom: "E_i E_j = delta_ij E_i",
                });
            }
        }
    }
    let e0_entry = QuadComplex::new(1, 0, q);
    if es[0] != Matrix::from_fn(n, n, |_, _| e0_entry) {
        return Err(Error::SchemeAxiom {
            axiom: "E_0 = (1/q) J",
        });
    }
    Ok(es)
}
