//! Crate-wide error type.

use alloc::vec::Vec;
use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or validating an object.
///
/// Verification *checkers* (see [`crate::verify`]) do not use this type:
/// a failed check is a result with a witness, not an error. `Error` is
/// reserved for invalid inputs and for constructors whose output is a
/// certificate and therefore must refuse to exist on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested field order is not a prime power; carries the
    /// factorization as evidence.
    NotPrimePower { q: u64, factors: Vec<(u64, u32)> },
    /// The quadratic character is only defined for odd q.
    EvenFieldOrder { q: u64 },
    /// A field element does not belong to the given field.
    ElementOutOfField { index: usize },
    /// An entry lies outside the matrix kind's entry domain.
    EntryDomain {
        expected: &'static str,
        row: usize,
        col: usize,
    },
    /// A matrix that must be square is not.
    NotSquare { rows: usize, cols: usize },
    /// Two matrices that must share an order do not.
    OrderMismatch { left: usize, right: usize },
    /// A core invariant failed; `check` names it and (row, col) is the
    /// first offending coordinate.
    CoreInvariant {
        check: &'static str,
        row: usize,
        col: usize,
    },
    /// A construction needs a skew-symmetric core but was given a
    /// symmetric one, or vice versa.
    WrongCoreKind {
        required: &'static str,
        q: u64,
    },
    /// q does not satisfy the congruence the construction requires.
    BadResidue { q: u64, required: &'static str },
    /// H·Hᵀ ≠ n·I at the given coordinate.
    NotHadamard { row: usize, col: usize },
    /// H − I is not skew symmetric at the given coordinate.
    NotSkewType { row: usize, col: usize },
    /// Row/column negations failed to reach the all-ones first row.
    NormalFormUnreachable { col: usize },
    /// The requested order exceeds the configured cap.
    OrderCapExceeded { order: u64, cap: u64 },
    /// Amicability A·B* = B·A* failed at the given coordinate.
    AmicabilityFailed { row: usize, col: usize },
    /// A Gram identity failed; `residual` is the deviation at the first
    /// offending coordinate.
    GramIdentityFailed {
        row: usize,
        col: usize,
        residual: i64,
    },
    /// Seed pair was validated for one core order but used with another.
    SeedCoreMismatch { seed_q: u64, core_q: u64 },
    /// Block factorization does not multiply to the matrix order.
    DimsProductMismatch { product: usize, order: usize },
    /// Vertex index outside [0, q^m).
    VertexOutOfRange { index: u64, limit: u64 },
    /// An association-scheme axiom failed.
    SchemeAxiom { axiom: &'static str },
    /// A matrix is not in the Bose–Mesner algebra: two positions in the
    /// same class carry different values.
    NotInBoseMesner {
        first: (usize, usize, i64),
        second: (usize, usize, i64),
    },
    /// A spectrum computation produced a non-integer (u, v) pair.
    NonIntegerEigenvalue { class_index: usize },
    /// An eigenvalue certificate u² + q·v² = (q+1)·n failed.
    EigenvalueCertificateFailed { class_index: usize },
    /// Division by zero in ℚ(√−q).
    DivisionByZero,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrimePower { q, factors } => {
                write!(f, "{q} is not a prime power (factorization:")?;
                for (p, e) in factors {
                    write!(f, " {p}^{e}")?;
                }
                write!(f, ")")
            }
            Error::EvenFieldOrder { q } => {
                write!(f, "quadratic character requires odd field order, got {q}")
            }
            Error::ElementOutOfField { index } => {
                write!(f, "element index {index} is outside the field")
            }
            Error::EntryDomain { expected, row, col } => {
                write!(f, "entry at ({row}, {col}) is not {expected}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "order mismatch: {left} vs {right}")
            }
            Error::CoreInvariant { check, row, col } => {
                write!(f, "core check '{check}' failed at ({row}, {col})")
            }
            Error::WrongCoreKind { required, q } => {
                write!(f, "construction requires a {required} core, but the order-{q} core is not one")
            }
            Error::BadResidue { q, required } => {
                write!(f, "q = {q} does not satisfy {required}")
            }
            Error::NotHadamard { row, col } => {
                write!(f, "H*H^T differs from nI at ({row}, {col})")
            }
            Error::NotSkewType { row, col } => {
                write!(f, "H - I is not skew symmetric at ({row}, {col})")
            }
            Error::NormalFormUnreachable { col } => {
                write!(f, "normalization failed to clear column {col} of the first row")
            }
            Error::OrderCapExceeded { order, cap } => {
                write!(f, "order {order} exceeds the configured cap {cap}")
            }
            Error::AmicabilityFailed { row, col } => {
                write!(f, "amicability A*B^T = B*A^T fails at ({row}, {col})")
            }
            Error::GramIdentityFailed { row, col, residual } => {
                write!(f, "Gram identity fails at ({row}, {col}) with residual {residual}")
            }
            Error::SeedCoreMismatch { seed_q, core_q } => {
                write!(f, "seed was validated for q = {seed_q} but the core has order {core_q}")
            }
            Error::DimsProductMismatch { product, order } => {
                write!(f, "block dims multiply to {product}, but the matrix has order {order}")
            }
            Error::VertexOutOfRange { index, limit } => {
                write!(f, "vertex index {index} outside [0, {limit})")
            }
            Error::SchemeAxiom { axiom } => {
                write!(f, "association scheme axiom failed: {axiom}")
            }
            Error::NotInBoseMesner { first, second } => {
                write!(
                    f,
                    "not in the Bose-Mesner algebra: entries ({}, {}) = {} and ({}, {}) = {} share a class but differ",
                    first.0, first.1, first.2, second.0, second.1, second.2
                )
            }
            Error::NonIntegerEigenvalue { class_index } => {
                write!(f, "eigenvalue for class row {class_index} is not an integer pair")
            }
            Error::EigenvalueCertificateFailed { class_index } => {
                write!(f, "eigenvalue certificate u^2 + q*v^2 = (q+1)n failed for class row {class_index}")
            }
            Error::DivisionByZero => write!(f, "division by zero in Q(sqrt(-q))"),
        }
    }
}

impl core::error::Error for Error {}
