//! Standalone exact checkers for every identity the constructions are
//! supposed to satisfy, usable on matrices from any source.
//!
//! All verdicts are computed over the integers by clearing denominators
//! (the unit-Hadamard identity for a symbolic pair becomes
//! A·Aᵀ + q·B·Bᵀ = (q+1)·n·I, row regularity becomes
//! S(Aᵢ)² + q·S(Bᵢ)² = (q+1)·n, and so on), so there are no tolerances
//! anywhere. Checkers return witnesses — a first failing coordinate or a
//! residual — rather than bare booleans.

use alloc::vec::Vec;

use crate::constructions::QuhMatrix;
use crate::cores::{CoreKind, CoreMatrix};
use crate::error::{Error, Result};
use crate::exactmat::{
    gram, kron, quaternary_violation, row_sums, scalar_combine, total_sum, GaussMatrix, IntMatrix,
    Matrix, Scalar, SignMatrix,
};

/// First coordinate where two derived matrices disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness<T> {
    pub row: usize,
    pub col: usize,
    pub lhs: T,
    pub rhs: T,
}

/// Amicability A·B* = B·A*; `None` means the pair is amicable.
pub fn amicability_witness<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<PairWitness<T>> {
    assert_eq!(a.order(), b.order(), "amicability: order mismatch");
    let ab = gram(a, b);
    let ba = gram(b, a);
    let n = a.order();
    for i in 0..n {
        for j in 0..n {
            if ab[(i, j)] != ba[(i, j)] {
                return Some(PairWitness {
                    row: i,
                    col: j,
                    lhs: ab[(i, j)],
                    rhs: ba[(i, j)],
                });
            }
        }
    }
    None
}

/// [`amicability_witness`] on the documented sign-matrix surface.
pub fn verify_amicable(a: &SignMatrix, b: &SignMatrix) -> Option<PairWitness<i64>> {
    amicability_witness(a.as_matrix(), b.as_matrix())
}

/// Failure of A·A* + q·B·B* = (q+1)·n·I: first failing coordinate plus
/// the maximum absolute deviation over all entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIdentityWitness {
    pub row: usize,
    pub col: usize,
    pub residual: i64,
}

/// Check A·A* + q·B·B* = (q+1)·n·I exactly; `None` means it holds.
pub fn pair_identity_witness<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    q: T,
) -> Option<PairIdentityWitness> {
    assert_eq!(a.order(), b.order(), "pair identity: order mismatch");
    let n = a.order();
    let lhs = scalar_combine(T::ONE, &gram(a, a), q, &gram(b, b));
    let diag = q
        .checked_add(T::ONE)
        .and_then(|s| s.checked_mul(T::from_i64(n as i64)))
        .expect("integer overflow in pair identity");
    let mut first = None;
    let mut residual = 0i64;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { diag } else { T::ZERO };
            if lhs[(i, j)] != expected {
                if first.is_none() {
                    first = Some((i, j));
                }
                let dev = lhs[(i, j)]
                    .checked_add(expected.checked_neg().expect("overflow"))
                    .expect("overflow")
                    .l1_norm();
                residual = residual.max(dev);
            }
        }
    }
    first.map(|(row, col)| PairIdentityWitness { row, col, residual })
}

/// [`pair_identity_witness`] on the documented sign-matrix surface.
pub fn verify_pair_identity(
    a: &SignMatrix,
    b: &SignMatrix,
    q_param: u64,
) -> Option<PairIdentityWitness> {
    pair_identity_witness(a.as_matrix(), b.as_matrix(), q_param as i64)
}

/// Why a Gaussian matrix is not a unit Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitHadamardFailure {
    /// Entry outside the quaternary domain {±1, ±i}.
    Entry { row: usize, col: usize },
    /// M·M* deviates from n·I at this coordinate.
    Gram { row: usize, col: usize },
}

/// Exact unit-Hadamard check for a quaternary Gaussian matrix: every
/// entry in {±1, ±i} and M·M* = n·I.
pub fn verify_unit_hadamard(m: &GaussMatrix) -> core::result::Result<(), UnitHadamardFailure> {
    if let Some((row, col)) = quaternary_violation(m) {
        return Err(UnitHadamardFailure::Entry { row, col });
    }
    let n = m.order();
    let g = gram(m, m);
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                crate::exactmat::GaussInt::new(n as i64, 0)
            } else {
                crate::exactmat::GaussInt::ZERO
            };
            if g[(i, j)] != expected {
                return Err(UnitHadamardFailure::Gram { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Unit-Hadamard check for a symbolic QUH: the exact surrogate is the
/// pair of identities H encodes, since
/// n(q+1)·I = A·Aᵀ + q·B·Bᵀ + i·√q·(B·Aᵀ − A·Bᵀ).
pub fn verify_unit_hadamard_quh(h: &QuhMatrix) -> bool {
    verify_amicable(h.a(), h.b()).is_none()
        && verify_pair_identity(h.a(), h.b(), h.q_param()).is_none()
}

/// (±1 ± i√q)/√(q+1) is a root of unity iff q = 1 or q = 3.
pub fn butson_parameter_admissible(q_param: u64) -> bool {
    q_param == 1 || q_param == 3
}

/// Butson verdict for a QUH.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ButsonVerdict {
    pub is_butson: bool,
    /// k with all entries k-th roots of unity: 8 for q = 1, 6 for q = 3.
    pub root_order: Option<u32>,
    /// No entry is real. Constant-true for well-formed pairs (imaginary
    /// parts are ±√q/√(q+1)), but executed to guard malformed imports.
    pub unreal: bool,
}

/// A QUH(n, q) is a Butson matrix iff q ∈ {1, 3}: entries (±1 ± i)/√2
/// are 8th roots of unity, entries (±1 ± i√3)/2 are 6th roots.
pub fn verify_butson(h: &QuhMatrix) -> ButsonVerdict {
    let unreal = {
        let b = h.b().as_matrix();
        let n = h.order();
        (0..n).all(|i| (0..n).all(|j| b[(i, j)] != 0))
    };
    match h.q_param() {
        1 => ButsonVerdict {
            is_butson: true,
            root_order: Some(8),
            unreal,
        },
        3 => ButsonVerdict {
            is_butson: true,
            root_order: Some(6),
            unreal,
        },
        _ => ButsonVerdict {
            is_butson: false,
            root_order: None,
            unreal,
        },
    }
}

/// The excess S(H) = (u + i·v·√q)/√(q+1) of a QUH, in cleared form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcessValue {
    pub q_param: u64,
    /// S of the real-part pattern.
    pub u: i64,
    /// S of the imaginary-part pattern.
    pub v: i64,
    /// (q+1)·|S(H)|² = u² + q·v², exact.
    pub magnitude_squared_times_qplus1: i64,
}

pub fn excess(h: &QuhMatrix) -> ExcessValue {
    let u = total_sum(h.a().as_matrix());
    let v = total_sum(h.b().as_matrix());
    let q = h.q_param() as i64;
    let mag = u
        .checked_mul(u)
        .and_then(|uu| v.checked_mul(v).and_then(|vv| vv.checked_mul(q)).map(|qvv| uu + qvv))
        .expect("integer overflow in excess");
    ExcessValue {
        q_param: h.q_param(),
        u,
        v,
        magnitude_squared_times_qplus1: mag,
    }
}

/// First row i where S(Aᵢ)² + q·S(Bᵢ)² ≠ (q+1)·n, i.e. |S(Rᵢ)| ≠ √n.
pub fn row_regularity_witness(h: &QuhMatrix) -> Option<usize> {
    let q = h.q_param() as i64;
    let n = h.order() as i64;
    let ra = row_sums(h.a().as_matrix());
    let rb = row_sums(h.b().as_matrix());
    (0..h.order()).find(|&i| ra[i] * ra[i] + q * rb[i] * rb[i] != (q + 1) * n)
}

/// Regular means every row sum has modulus √n.
pub fn is_regular(h: &QuhMatrix) -> bool {
    row_regularity_witness(h).is_none()
}

/// Best's bound in cleared form: u² + q·v² ≤ (q+1)·n³, equality iff the
/// matrix is regular. Returns (lhs, rhs).
pub fn best_bound_sides(h: &QuhMatrix) -> (i64, i64) {
    let e = excess(h);
    let n = h.order() as i64;
    let rhs = (h.q_param() as i64 + 1)
        .checked_mul(n.checked_mul(n).and_then(|nn| nn.checked_mul(n)).expect("overflow"))
        .expect("integer overflow in Best bound");
    (e.magnitude_squared_times_qplus1, rhs)
}

/// One depth of the excess-law table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcessLemmaRow {
    pub m: u32,
    pub order: u64,
    pub s_j: i64,
    pub s_a: i64,
    /// Closed form: q^{3t} at depth 2t, q^{3t+2} at depth 2t+1.
    pub expected_s_j: i64,
    /// Closed form: q^{3t} at depth 2t, q^{3t+1} at depth 2t+1.
    pub expected_s_a: i64,
    pub closed_form_ok: bool,
    /// S(·ₘ) = q³·S(·ₘ₋₂); `None` below depth 2.
    pub recurrence_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessLemmaReport {
    pub q: u64,
    pub rows: Vec<ExcessLemmaRow>,
}

impl ExcessLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.closed_form_ok && r.recurrence_ok.unwrap_or(true))
    }
}

fn ipow(base: i64, exp: u32) -> i64 {
    base.checked_pow(exp).expect("integer overflow in ipow")
}

/// Tabulate S(𝒥ₘ) and S(𝒜ₘ) for every m ≤ m_max within the order cap
/// and compare against the closed forms and the q³ recurrences.
pub fn check_excess_lemma(
    core: &CoreMatrix,
    m_max: u32,
    order_cap: u64,
) -> Result<ExcessLemmaReport> {
    if core.kind() != CoreKind::Skew {
        return Err(Error::WrongCoreKind {
            required: "skew-symmetric",
            q: core.q(),
        });
    }
    let q = core.q();
    let qi = q as i64;
    let q_mat = core.matrix().as_matrix();
    let jq = IntMatrix::ones(core.order(), core.order());
    let iq = IntMatrix::identity(core.order());

    let mut rows = Vec::new();
    let mut sums: Vec<(i64, i64)> = Vec::new();
    let mut x = IntMatrix::ones(1, 1);
    let mut y = IntMatrix::ones(1, 1);
    let mut order = 1u64;
    for m in 0..=m_max {
        if m > 0 {
            order *= q;
            if order > order_cap {
                break;
            }
            let nx = kron(&jq, &y);
            let ny = scalar_combine(1, &kron(&iq, &x), 1, &kron(q_mat, &y));
            x = nx;
            y = ny;
        }
        let s_j = total_sum(&x);
        let s_a = total_sum(&y);
        let (expected_s_j, expected_s_a) = if m % 2 == 0 {
            (ipow(qi, 3 * (m / 2)), ipow(qi, 3 * (m / 2)))
        } else {
            (ipow(qi, 3 * (m / 2) + 2), ipow(qi, 3 * (m / 2) + 1))
        };
        let recurrence_ok = (m >= 2).then(|| {
            let (pj, pa) = sums[(m - 2) as usize];
            s_j == qi * qi * qi * pj && s_a == qi * qi * qi * pa
        });
        rows.push(ExcessLemmaRow {
            m,
            order,
            s_j,
            s_a,
            expected_s_j,
            expected_s_a,
            closed_form_ok: s_j == expected_s_j && s_a == expected_s_a,
            recurrence_ok,
        });
        sums.push((s_j, s_a));
    }
    Ok(ExcessLemmaReport { q, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{assemble_quh, construct_ja, BuildOptions};
    use crate::cores::jacobsthal;
    use crate::exactmat::GaussInt;

    fn quh(q: u64, m: u32) -> QuhMatrix {
        let core = jacobsthal(q).unwrap();
        let opts = BuildOptions {
            verify: false,
            ..BuildOptions::default()
        };
        let (j, a) = construct_ja(&core, m, &opts).unwrap();
        assemble_quh(j, a, q).unwrap()
    }

    #[test]
    fn amicability_small_cases() {
        let j3 = SignMatrix::new(IntMatrix::ones(3, 3)).unwrap();
        let a1 = SignMatrix::new(IntMatrix::circulant(&[1, -1, 1])).unwrap();
        assert!(verify_amicable(&j3, &a1).is_none());
        assert!(verify_amicable(&a1, &a1).is_none());

        let i2 = SignMatrix::new(
            Matrix::from_rows(alloc::vec![alloc::vec![1, -1], alloc::vec![-1, 1]]).unwrap(),
        )
        .unwrap();
        let m = SignMatrix::new(
            Matrix::from_rows(alloc::vec![alloc::vec![1, 1], alloc::vec![-1, 1]]).unwrap(),
        )
        .unwrap();
        assert!(verify_amicable(&i2, &m).is_some());
    }

    #[test]
    fn pair_identity_small_cases() {
        let j3 = SignMatrix::new(IntMatrix::ones(3, 3)).unwrap();
        let a1 = SignMatrix::new(IntMatrix::circulant(&[1, -1, 1])).unwrap();
        assert!(verify_pair_identity(&j3, &a1, 3).is_none());

        let one = SignMatrix::new(IntMatrix::ones(1, 1)).unwrap();
        for q in 1..=20 {
            assert!(verify_pair_identity(&one, &one, q).is_none());
        }

        let w = verify_pair_identity(&j3, &j3, 3).unwrap();
        // 12J vs 12I: off-diagonal deviation 12.
        assert_eq!(w.residual, 12);
    }

    #[test]
    fn unit_hadamard_gauss() {
        let one: GaussMatrix = Matrix::ones(1, 1);
        assert!(verify_unit_hadamard(&one).is_ok());
        let i2: GaussMatrix = Matrix::identity(2);
        assert!(verify_unit_hadamard(&i2).is_err());
    }

    #[test]
    fn quh_surrogate_check() {
        assert!(verify_unit_hadamard_quh(&quh(3, 1)));
        assert!(verify_unit_hadamard_quh(&quh(3, 0)));
    }

    #[test]
    fn butson_parameters() {
        assert!(butson_parameter_admissible(1));
        assert!(butson_parameter_admissible(3));
        assert!(!butson_parameter_admissible(7));
    }

    #[test]
    fn butson_verdicts() {
        let v = verify_butson(&quh(3, 2));
        assert_eq!((v.is_butson, v.root_order, v.unreal), (true, Some(6), true));
        let v7 = verify_butson(&quh(7, 1));
        assert_eq!((v7.is_butson, v7.root_order), (false, None));
        let v0 = verify_butson(&quh(3, 0));
        assert_eq!((v0.is_butson, v0.root_order), (true, Some(6)));
    }

    #[test]
    fn excess_and_regularity_q3_m1() {
        let h = quh(3, 1);
        let e = excess(&h);
        assert_eq!((e.u, e.v), (9, 3));
        assert_eq!(e.magnitude_squared_times_qplus1, 108);
        // (q+1) n^3 = 4 * 27 = 108: Best equality.
        assert_eq!(best_bound_sides(&h), (108, 108));
        assert!(is_regular(&h));
    }

    #[test]
    fn order_one_quh_is_regular() {
        let h = quh(3, 0);
        let e = excess(&h);
        assert_eq!(e.magnitude_squared_times_qplus1, 4);
        assert_eq!(best_bound_sides(&h), (4, 4));
        assert!(is_regular(&h));
    }

    #[test]
    fn excess_lemma_q3() {
        let core = jacobsthal(3).unwrap();
        let report = check_excess_lemma(&core, 4, 2048).unwrap();
        assert!(report.all_pass());
        let by_m: Vec<(i64, i64)> = report.rows.iter().map(|r| (r.s_j, r.s_a)).collect();
        assert_eq!(by_m[1], (9, 3)); // q^2, q^1
        assert_eq!(by_m[2], (27, 27)); // q^3
        assert_eq!(by_m[3], (243, 81)); // q^5, q^4
    }

    #[test]
    fn excess_lemma_q7_depth2() {
        let core = jacobsthal(7).unwrap();
        let report = check_excess_lemma(&core, 2, 2048).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.rows[2].s_j, 343);
        assert_eq!(report.rows[2].s_a, 343);
    }

    #[test]
    fn excess_lemma_respects_cap() {
        let core = jacobsthal(3).unwrap();
        let report = check_excess_lemma(&core, 10, 100).unwrap();
        // 3^4 = 81 <= 100 < 3^5
        assert_eq!(report.rows.last().unwrap().m, 4);
    }

    #[test]
    fn gauss_amicability_hermitian() {
        // (C1, D1) for q = 5 are Hermitian-amicable.
        let core = jacobsthal(5).unwrap();
        let (c, d) =
            crate::constructions::construct_cd(&core, 1, &BuildOptions::default()).unwrap();
        assert!(amicability_witness(&c, &d).is_none());
        assert!(pair_identity_witness(&c, &d, GaussInt::new(5, 0)).is_none());
    }
}
