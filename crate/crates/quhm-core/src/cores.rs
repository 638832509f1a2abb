//! Skew symmetric cores and where they come from.
//!
//! A core of order q is a (0, ±1)-matrix Q with zero diagonal, ±1 off the
//! diagonal, J·Q = Q·J = 0 and Q·Qᵀ = q·I − J. Jacobsthal matrices
//! Q\[i,j\] = χ(aᵢ − aⱼ) provide one for every odd prime power q; user
//! matrices are accepted through [`verify_core`]; and [`extract_core`]
//! recovers the core of any skew-type Hadamard matrix by row/column
//! negation to the normal form
//!
//! ```text
//! ( 1    j  )
//! ( -jᵀ  I+Q )
//! ```

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactmat::{gram, scalar_combine, IntMatrix, Matrix, SignMatrix, TernaryMatrix};
use crate::gfield::{build_field, factorize};

/// Transpose symmetry class of a core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreKind {
    /// Qᵀ = −Q; arises for q ≡ 3 (mod 4).
    Skew,
    /// Qᵀ = Q; arises for q ≡ 1 (mod 4).
    Symmetric,
}

/// Where a core came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Jacobsthal,
    Extracted,
    UserSupplied,
}

/// A validated core: constructing one runs every invariant check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreMatrix {
    matrix: TernaryMatrix,
    kind: CoreKind,
    provenance: Provenance,
}

impl CoreMatrix {
    /// Accept an arbitrary ternary matrix as a core, verifying all
    /// invariants. This is the door through which user-supplied cores
    /// enter; the construction is not limited to Paley cores.
    pub fn from_matrix(matrix: TernaryMatrix, provenance: Provenance) -> Result<Self> {
        let report = verify_core(&matrix);
        match report.first_failure() {
            None => Ok(CoreMatrix {
                matrix,
                kind: report.detected_kind.expect("kind is set when all checks pass"),
                provenance,
            }),
            Some((check, row, col)) => Err(Error::CoreInvariant { check, row, col }),
        }
    }

    pub fn q(&self) -> u64 {
        self.matrix.order() as u64
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn matrix(&self) -> &TernaryMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> CoreKind {
        self.kind
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// Outcome of [`verify_core`]: `None` fields passed; `Some` carries the
/// first failing coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReport {
    pub order: usize,
    /// First diagonal index with a nonzero entry.
    pub zero_diagonal: Option<usize>,
    /// First off-diagonal coordinate outside {+1, −1}.
    pub off_diagonal_sign: Option<(usize, usize)>,
    /// Skew or symmetric, when one of the two holds.
    pub detected_kind: Option<CoreKind>,
    /// Witness violating both Qᵀ = −Q and Qᵀ = Q.
    pub symmetry_break: Option<(usize, usize)>,
    /// First row with nonzero sum.
    pub row_sum: Option<usize>,
    /// First column with nonzero sum.
    pub col_sum: Option<usize>,
    /// First coordinate where Q·Qᵀ deviates from q·I − J, with residual.
    pub gram: Option<(usize, usize, i64)>,
}

impl CoreReport {
    pub fn all_pass(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<(&'static str, usize, usize)> {
        if let Some(i) = self.zero_diagonal {
            return Some(("zero diagonal", i, i));
        }
        if let Some((i, j)) = self.off_diagonal_sign {
            return Some(("off-diagonal +-1", i, j));
        }
        if let Some((i, j)) = self.symmetry_break {
            return Some(("skew or symmetric", i, j));
        }
        if let Some(i) = self.row_sum {
            return Some(("zero row sums", i, 0));
        }
        if let Some(j) = self.col_sum {
            return Some(("zero column sums", 0, j));
        }
        if let Some((i, j, _)) = self.gram {
            return Some(("QQ^T = qI - J", i, j));
        }
        None
    }
}

/// Run every core check on a ternary matrix; failures are report
/// content, never errors.
pub fn verify_core(q_mat: &TernaryMatrix) -> CoreReport {
    let m = q_mat.as_matrix();
    let n = m.order();

    let zero_diagonal = (0..n).find(|&i| m[(i, i)] != 0);
    let off_diagonal_sign = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && m[(i, j)].abs() != 1);

    let skew_break = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| m[(j, i)] != -m[(i, j)]);
    let sym_break = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| m[(j, i)] != m[(i, j)]);
    let (detected_kind, symmetry_break) = match (skew_break, sym_break) {
        (None, _) => (Some(CoreKind::Skew), None),
        (_, None) => (Some(CoreKind::Symmetric), None),
        (Some(w), Some(_)) => (None, Some(w)),
    };

    let row_sum = (0..n).find(|&i| m.row(i).iter().sum::<i64>() != 0);
    let col_sum = (0..n).find(|&j| (0..n).map(|i| m[(i, j)]).sum::<i64>() != 0);

    let g = gram(m, m);
    let expected = scalar_combine(
        n as i64,
        &IntMatrix::identity(n),
        -1,
        &IntMatrix::ones(n, n),
    );
    let gram_fail = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| g[(i, j)] != expected[(i, j)])
        .map(|(i, j)| (i, j, g[(i, j)] - expected[(i, j)]));

    CoreReport {
        order: n,
        zero_diagonal,
        off_diagonal_sign,
        detected_kind,
        symmetry_break,
        row_sum,
        col_sum,
        gram: gram_fail,
    }
}

/// The Jacobsthal matrix of an odd prime power q under the canonical
/// element ordering: Q\[i,j\] = χ(aᵢ − aⱼ).
///
/// The result is skew symmetric when q ≡ 3 (mod 4) and symmetric when
/// q ≡ 1 (mod 4).
pub fn jacobsthal(q: u64) -> Result<CoreMatrix> {
    if q % 2 == 0 {
        return Err(Error::EvenFieldOrder { q });
    }
    let field = build_field(q)?;
    let elems = field.enumerate_elements();
    let n = q as usize;
    let mut chi = Vec::with_capacity(n);
    for el in &elems {
        chi.push(field.quadratic_character(el)?);
    }
    let m = Matrix::from_fn(n, n, |i, j| {
        let diff = field.sub(&elems[i], &elems[j]);
        chi[field.index_of(&diff) as usize]
    });
    CoreMatrix::from_matrix(TernaryMatrix::new(m)?, Provenance::Jacobsthal)
}

/// The Paley skew-type Hadamard matrix of order q + 1 for a prime power
/// q ≡ 3 (mod 4), in the normal form with all-ones first row.
pub fn paley_skew_hadamard(q: u64) -> Result<SignMatrix> {
    if q % 4 != 3 {
        return Err(Error::BadResidue {
            q,
            required: "q = 3 (mod 4)",
        });
    }
    let core = jacobsthal(q)?;
    let n = core.order() + 1;
    let qm = core.matrix().as_matrix();
    let m = Matrix::from_fn(n, n, |i, j| match (i, j) {
        (0, _) => 1,
        (_, 0) => -1,
        _ => {
            if i == j {
                1
            } else {
                qm[(i - 1, j - 1)]
            }
        }
    });
    let h = SignMatrix::new(m)?;
    check_skew_type(&h)?;
    check_hadamard(&h)?;
    Ok(h)
}

fn check_skew_type(h: &SignMatrix) -> Result<()> {
    let n = h.order();
    for i in 0..n {
        if h.get(i, i) != 1 {
            return Err(Error::NotSkewType { row: i, col: i });
        }
        for j in 0..i {
            if h.get(i, j) != -h.get(j, i) {
                return Err(Error::NotSkewType { row: i, col: j });
            }
        }
    }
    Ok(())
}

fn check_hadamard(h: &SignMatrix) -> Result<()> {
    let n = h.order();
    let g = gram(h.as_matrix(), h.as_matrix());
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { n as i64 } else { 0 };
            if g[(i, j)] != expected {
                return Err(Error::NotHadamard { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Extract the skew symmetric core of a skew-type Hadamard matrix.
///
/// Simultaneous row-k/column-k negations (which preserve skew type) are
/// applied for each k with H\[0,k\] = −1, reaching the normal form; the
/// lower-right block minus the identity is the core.
pub fn extract_core(h: &SignMatrix) -> Result<CoreMatrix> {
    check_skew_type(h)?;
    check_hadamard(h)?;
    let n = h.order();
    let mut g: Vec<Vec<i64>> = (0..n).map(|i| h.as_matrix().row(i).to_vec()).collect();
    for k in 1..n {
        if g[0][k] == -1 {
            for j in 0..n {
                g[k][j] = -g[k][j];
            }
            for row in g.iter_mut() {
                row[k] = -row[k];
            }
        }
    }
    if let Some(k) = (0..n).find(|&k| g[0][k] != 1) {
        return Err(Error::NormalFormUnreachable { col: k });
    }
    let q = n - 1;
    let core = Matrix::from_fn(q, q, |i, j| {
        let v = g[i + 1][j + 1];
        if i == j {
            v - 1
        } else {
            v
        }
    });
    CoreMatrix::from_matrix(TernaryMatrix::new(core)?, Provenance::Extracted)
}

/// True iff M is block-circulant with `dims[0]` blocks per row whose
/// blocks are recursively multicirculant with `dims[1..]`, down to 1×1
/// blocks. Order-1 matrices are multicirculant by definition.
pub fn is_multicirculant<T: Copy + PartialEq>(m: &Matrix<T>, dims: &[usize]) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let product: usize = dims.iter().product();
    if product != m.order() {
        return Err(Error::DimsProductMismatch {
            product,
            order: m.order(),
        });
    }
    Ok(multicirculant_block(m, 0, 0, m.order(), dims))
}

fn multicirculant_block<T: Copy + PartialEq>(
    m: &Matrix<T>,
    r0: usize,
    c0: usize,
    size: usize,
    dims: &[usize],
) -> bool {
    if size == 1 {
        return true;
    }
    let d = dims[0];
    let b = size / d;
    // Block-circulant layer: block (i, j) must equal block (0, (j-i) mod d).
    for i in 1..d {
        for j in 0..d {
            let t = (j + d - i % d) % d;
            for r in 0..b {
                for c in 0..b {
                    if m[(r0 + i * b + r, c0 + j * b + c)] != m[(r0 + r, c0 + t * b + c)] {
                        return false;
                    }
                }
            }
        }
    }
    (0..d).all(|t| multicirculant_block(m, r0, c0 + t * b, b, &dims[1..]))
}

/// The block factorization the recursion produces naturally: \[p\]
/// repeated e·m times for q = p^e and depth m. `None` if q is not a
/// prime power.
pub fn canonical_factorization(q: u64, m: u32) -> Option<Vec<usize>> {
    let factors = factorize(q);
    if factors.len() != 1 || q < 2 {
        return None;
    }
    let (p, e) = factors[0];
    Some(alloc::vec![p as usize; (e * m) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::kron;

    fn circ(row: &[i64]) -> IntMatrix {
        IntMatrix::circulant(row)
    }

    #[test]
    fn jacobsthal_3_is_circulant() {
        let core = jacobsthal(3).unwrap();
        assert_eq!(core.matrix().as_matrix(), &circ(&[0, -1, 1]));
        assert_eq!(core.kind(), CoreKind::Skew);
    }

    #[test]
    fn jacobsthal_7_first_row() {
        // squares mod 7 are {1, 2, 4}
        let core = jacobsthal(7).unwrap();
        let row: Vec<i64> = core.matrix().as_matrix().row(0).to_vec();
        assert_eq!(row, vec![0, -1, -1, 1, -1, 1, 1]);
    }

    #[test]
    fn jacobsthal_5_is_symmetric() {
        let core = jacobsthal(5).unwrap();
        assert_eq!(core.kind(), CoreKind::Symmetric);
        let m = core.matrix().as_matrix();
        assert_eq!(m, &m.transpose());
    }

    #[test]
    fn jacobsthal_rejects_bad_orders() {
        assert!(matches!(jacobsthal(6), Err(Error::EvenFieldOrder { q: 6 })));
        assert!(matches!(jacobsthal(15), Err(Error::NotPrimePower { .. })));
    }

    #[test]
    fn verify_core_on_jacobsthal_11() {
        let core = jacobsthal(11).unwrap();
        let report = verify_core(core.matrix());
        assert!(report.all_pass());
        assert_eq!(report.detected_kind, Some(CoreKind::Skew));
    }

    #[test]
    fn verify_core_rejects_zero_matrix() {
        let z = TernaryMatrix::new(IntMatrix::zero(3, 3)).unwrap();
        let report = verify_core(&z);
        assert_eq!(report.off_diagonal_sign, Some((0, 1)));
        assert!(!report.all_pass());
    }

    #[test]
    fn transposed_labeling_is_still_a_core() {
        let t = TernaryMatrix::new(circ(&[0, 1, -1])).unwrap();
        let report = verify_core(&t);
        assert!(report.all_pass());
        assert_eq!(report.detected_kind, Some(CoreKind::Skew));
    }

    #[test]
    fn paley_small_orders() {
        let h4 = paley_skew_hadamard(3).unwrap();
        assert_eq!(h4.order(), 4);
        let h8 = paley_skew_hadamard(7).unwrap();
        assert_eq!(h8.order(), 8);
        assert!(matches!(
            paley_skew_hadamard(5),
            Err(Error::BadResidue { q: 5, .. })
        ));
    }

    #[test]
    fn extract_round_trips_paley() {
        for q in [3, 7, 11, 19, 23, 27] {
            let h = paley_skew_hadamard(q).unwrap();
            let core = extract_core(&h).unwrap();
            assert_eq!(core.matrix(), jacobsthal(q).unwrap().matrix(), "q = {q}");
            assert_eq!(core.provenance(), Provenance::Extracted);
        }
    }

    #[test]
    fn extract_survives_resigning() {
        // Negate a row/column pair of the Paley matrix; the same core
        // must come back.
        let h = paley_skew_hadamard(7).unwrap();
        let n = h.order();
        let mut g: Vec<Vec<i64>> = (0..n).map(|i| h.as_matrix().row(i).to_vec()).collect();
        for k in [2usize, 5] {
            for j in 0..n {
                g[k][j] = -g[k][j];
            }
            for row in g.iter_mut() {
                row[k] = -row[k];
            }
        }
        let resigned = SignMatrix::new(Matrix::from_rows(g).unwrap()).unwrap();
        let core = extract_core(&resigned).unwrap();
        assert_eq!(core.matrix(), jacobsthal(7).unwrap().matrix());
    }

    #[test]
    fn extract_degenerate_order_two() {
        let h = SignMatrix::new(
            Matrix::from_rows(alloc::vec![alloc::vec![1, 1], alloc::vec![-1, 1]]).unwrap(),
        )
        .unwrap();
        let core = extract_core(&h).unwrap();
        assert_eq!(core.order(), 1);
        assert_eq!(core.matrix().get(0, 0), 0);
    }

    #[test]
    fn extract_rejects_all_ones() {
        let j4 = SignMatrix::new(IntMatrix::ones(4, 4)).unwrap();
        assert!(matches!(extract_core(&j4), Err(Error::NotSkewType { .. })));
    }

    #[test]
    fn multicirculant_basics() {
        assert!(is_multicirculant(&circ(&[0, -1, 1]), &[3]).unwrap());
        assert!(is_multicirculant(&IntMatrix::ones(6, 6), &[2, 3]).unwrap());
        assert!(is_multicirculant(&IntMatrix::ones(6, 6), &[6]).unwrap());
        let not_circ = Matrix::from_rows(alloc::vec![alloc::vec![1, 1], alloc::vec![-1, 1]]).unwrap();
        assert!(!is_multicirculant(&not_circ, &[2]).unwrap());
        assert!(matches!(
            is_multicirculant(&circ(&[0, -1, 1]), &[2]),
            Err(Error::DimsProductMismatch { .. })
        ));
    }

    #[test]
    fn jacobsthal_27_is_multicirculant() {
        let core = jacobsthal(27).unwrap();
        assert!(is_multicirculant(core.matrix().as_matrix(), &[3, 3, 3]).unwrap());
        assert_eq!(core.kind(), CoreKind::Skew);
    }

    #[test]
    fn jacobsthal_9_is_multicirculant_symmetric() {
        let core = jacobsthal(9).unwrap();
        assert!(is_multicirculant(core.matrix().as_matrix(), &[3, 3]).unwrap());
        assert_eq!(core.kind(), CoreKind::Symmetric);
    }

    #[test]
    fn kron_of_multicirculant_is_multicirculant() {
        let a = circ(&[0, -1, 1]);
        let b = circ(&[1, 2]);
        let k = kron(&a, &b);
        assert!(is_multicirculant(&k, &[3, 2]).unwrap());
    }

    #[test]
    fn canonical_factorizations() {
        assert_eq!(canonical_factorization(3, 2), Some(alloc::vec![3, 3]));
        assert_eq!(canonical_factorization(27, 2), Some(alloc::vec![3; 6]));
        assert_eq!(canonical_factorization(12, 1), None);
        assert_eq!(canonical_factorization(7, 0), Some(Vec::new()));
    }
}
