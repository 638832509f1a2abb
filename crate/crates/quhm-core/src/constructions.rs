//! The recursive constructions.
//!
//! From a skew symmetric core Q of order q, the pair family
//!
//! ```text
//! 𝒥₀ = 𝒜₀ = J₁,   𝒥ₘ = J_q ⊗ 𝒜ₘ₋₁,   𝒜ₘ = I_q ⊗ 𝒥ₘ₋₁ + Q ⊗ 𝒜ₘ₋₁
//! ```
//!
//! yields amicable (±1)-matrices with 𝒥ₘ𝒥ₘᵀ + q·𝒜ₘ𝒜ₘᵀ = q^m(q+1)·I,
//! hence a QUH(q^m, q). The same recursion seeded with any amicable pair
//! (X, Y) satisfying X·Xᵀ + q·Y·Yᵀ = n(q+1)·I produces QUH(n·q^m, q)'s.
//! For symmetric cores (q ≡ 1 mod 4) the complex variant (𝒞ₘ, 𝒟ₘ) with
//! 𝒟ₘ = I_q ⊗ 𝒞ₘ₋₁ + i·Q ⊗ 𝒟ₘ₋₁ gives quaternary Hadamard matrices of
//! order q^m(q+1).
//!
//! Constructors verify their own postconditions by default (O(n³) Gram
//! checks); [`BuildOptions::verify`] opts out for benchmarking. An
//! assembled [`QuhMatrix`] always verifies: holding one is a certificate.
//!
//! ```
//! use quhm_core::constructions::{assemble_quh, construct_ja, BuildOptions};
//! use quhm_core::cores::jacobsthal;
//! use quhm_core::verify::{excess, is_regular};
//!
//! let core = jacobsthal(3).unwrap();
//! let (j, a) = construct_ja(&core, 1, &BuildOptions::default()).unwrap();
//! let quh = assemble_quh(j, a, 3).unwrap();
//! assert!(is_regular(&quh));
//! assert_eq!((excess(&quh).u, excess(&quh).v), (9, 3));
//! ```

use crate::cores::{CoreKind, CoreMatrix};
use crate::error::{Error, Result};
use crate::exactmat::{
    gram, kron, quaternary_violation, scalar_combine, GaussInt, GaussMatrix, IntMatrix, Matrix,
    Scalar, SignMatrix,
};
use crate::verify::{amicability_witness, pair_identity_witness};

/// Knobs shared by all constructors.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Largest matrix order a construction may produce.
    pub order_cap: u64,
    /// Run the O(n³) postcondition checks (amicability and the Gram
    /// identity) on the result.
    pub verify: bool,
}

pub const DEFAULT_ORDER_CAP: u64 = 2048;

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            order_cap: DEFAULT_ORDER_CAP,
            verify: true,
        }
    }
}

/// A quaternary unit Hadamard matrix QUH(n, q), stored symbolically as
/// the sign-matrix pair (A, B) of H = (A + i·√q·B)/√(q+1).
///
/// The constructor [`assemble_quh`] rejects any pair that is not
/// amicable or fails A·Aᵀ + q·B·Bᵀ = (q+1)·n·I, so a value of this type
/// is a certificate that H·H* = n·I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuhMatrix {
    q_param: u64,
    a: SignMatrix,
    b: SignMatrix,
}

impl QuhMatrix {
    pub fn q_param(&self) -> u64 {
        self.q_param
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    /// Real-part pattern (𝒥ₘ in the recursive family).
    pub fn a(&self) -> &SignMatrix {
        &self.a
    }

    /// Imaginary-part pattern (𝒜ₘ in the recursive family).
    pub fn b(&self) -> &SignMatrix {
        &self.b
    }

    pub fn into_parts(self) -> (SignMatrix, SignMatrix, u64) {
        (self.a, self.b, self.q_param)
    }
}

/// Assemble a QUH from its sign-matrix pair, verifying both invariants.
pub fn assemble_quh(j: SignMatrix, a: SignMatrix, q_param: u64) -> Result<QuhMatrix> {
    if q_param == 0 {
        return Err(Error::BadResidue {
            q: 0,
            required: "q >= 1",
        });
    }
    if j.order() != a.order() {
        return Err(Error::OrderMismatch {
            left: j.order(),
            right: a.order(),
        });
    }
    verify_pair(j.as_matrix(), a.as_matrix(), q_param as i64)?;
    Ok(QuhMatrix { q_param, a: j, b: a })
}

fn verify_pair(a: &IntMatrix, b: &IntMatrix, q: i64) -> Result<()> {
    if let Some(w) = amicability_witness(a, b) {
        return Err(Error::AmicabilityFailed {
            row: w.row,
            col: w.col,
        });
    }
    if let Some(w) = pair_identity_witness(a, b, q) {
        return Err(Error::GramIdentityFailed {
            row: w.row,
            col: w.col,
            residual: w.residual,
        });
    }
    Ok(())
}

/// An amicable seed (X, Y) with X·Xᵀ + q·Y·Yᵀ = n(q+1)·I, validated at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedPair {
    x: SignMatrix,
    y: SignMatrix,
    q_param: u64,
}

impl SeedPair {
    pub fn new(x: SignMatrix, y: SignMatrix, q_param: u64) -> Result<Self> {
        if x.order() != y.order() {
            return Err(Error::OrderMismatch {
                left: x.order(),
                right: y.order(),
            });
        }
        verify_pair(x.as_matrix(), y.as_matrix(), q_param as i64)?;
        Ok(SeedPair { x, y, q_param })
    }

    /// The paper's own base case: (J₁, J₁), valid for every q.
    pub fn trivial(q_param: u64) -> Self {
        let j1 = SignMatrix::new(IntMatrix::ones(1, 1)).unwrap();
        SeedPair {
            x: j1.clone(),
            y: j1,
            q_param,
        }
    }

    pub fn order(&self) -> usize {
        self.x.order()
    }

    pub fn q_param(&self) -> u64 {
        self.q_param
    }

    pub fn x(&self) -> &SignMatrix {
        &self.x
    }

    pub fn y(&self) -> &SignMatrix {
        &self.y
    }
}

fn checked_target_order(n0: u64, q: u64, m: u32, cap: u64) -> Result<u64> {
    let mut order: u128 = n0 as u128;
    for _ in 0..m {
        order = order.saturating_mul(q as u128);
        if order > u64::MAX as u128 {
            return Err(Error::OrderCapExceeded {
                order: u64::MAX,
                cap,
            });
        }
    }
    let order = order as u64;
    if order > cap {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    Ok(order)
}

fn recurse_sign_pair(
    x0: IntMatrix,
    y0: IntMatrix,
    q_mat: &IntMatrix,
    m: u32,
) -> (IntMatrix, IntMatrix) {
    let q = q_mat.order();
    let jq = IntMatrix::ones(q, q);
    let iq = IntMatrix::identity(q);
    let (mut x, mut y) = (x0, y0);
    for _ in 0..m {
        let nx = kron(&jq, &y);
        let ny = scalar_combine(1, &kron(&iq, &x), 1, &kron(q_mat, &y));
        x = nx;
        y = ny;
    }
    (x, y)
}

/// Build (𝒥ₘ, 𝒜ₘ) from a skew core. Depth 0 gives (\[1\], \[1\]).
pub fn construct_ja(
    core: &CoreMatrix,
    m: u32,
    opts: &BuildOptions,
) -> Result<(SignMatrix, SignMatrix)> {
    if core.kind() != CoreKind::Skew {
        return Err(Error::WrongCoreKind {
            required: "skew-symmetric",
            q: core.q(),
        });
    }
    checked_target_order(1, core.q(), m, opts.order_cap)?;
    let j1 = IntMatrix::ones(1, 1);
    let (j, a) = recurse_sign_pair(j1.clone(), j1, core.matrix().as_matrix(), m);
    let j = SignMatrix::new(j)?;
    let a = SignMatrix::new(a)?;
    if opts.verify {
        verify_pair(j.as_matrix(), a.as_matrix(), core.q() as i64)?;
    }
    Ok((j, a))
}

/// Build (𝒳ₘ, 𝒴ₘ) from a validated seed; with the trivial seed this is
/// bit-identical to [`construct_ja`].
pub fn construct_seeded(
    seed: &SeedPair,
    core: &CoreMatrix,
    m: u32,
    opts: &BuildOptions,
) -> Result<(SignMatrix, SignMatrix)> {
    if core.kind() != CoreKind::Skew {
        return Err(Error::WrongCoreKind {
            required: "skew-symmetric",
            q: core.q(),
        });
    }
    if seed.q_param() != core.q() {
        return Err(Error::SeedCoreMismatch {
            seed_q: seed.q_param(),
            core_q: core.q(),
        });
    }
    checked_target_order(seed.order() as u64, core.q(), m, opts.order_cap)?;
    let (x, y) = recurse_sign_pair(
        seed.x().as_matrix().clone(),
        seed.y().as_matrix().clone(),
        core.matrix().as_matrix(),
        m,
    );
    let x = SignMatrix::new(x)?;
    let y = SignMatrix::new(y)?;
    if opts.verify {
        verify_pair(x.as_matrix(), y.as_matrix(), core.q() as i64)?;
    }
    Ok((x, y))
}

fn int_to_gauss(m: &IntMatrix) -> GaussMatrix {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| GaussInt::new(m[(i, j)], 0))
}

fn check_quaternary(m: &GaussMatrix) -> Result<()> {
    if let Some((row, col)) = quaternary_violation(m) {
        return Err(Error::EntryDomain {
            expected: "+-1 or +-i",
            row,
            col,
        });
    }
    Ok(())
}

fn verify_gauss_pair(c: &GaussMatrix, d: &GaussMatrix, q: i64) -> Result<()> {
    if let Some(w) = amicability_witness(c, d) {
        return Err(Error::AmicabilityFailed {
            row: w.row,
            col: w.col,
        });
    }
    if let Some(w) = pair_identity_witness(c, d, GaussInt::new(q, 0)) {
        return Err(Error::GramIdentityFailed {
            row: w.row,
            col: w.col,
            residual: w.residual,
        });
    }
    Ok(())
}

/// Build the complex pair (𝒞ₘ, 𝒟ₘ) from a symmetric core; entries stay
/// in {±1, ±i} and 𝒞ₘ𝒞ₘ* + q·𝒟ₘ𝒟ₘ* = q^m(q+1)·I.
pub fn construct_cd(
    core: &CoreMatrix,
    m: u32,
    opts: &BuildOptions,
) -> Result<(GaussMatrix, GaussMatrix)> {
    if core.kind() != CoreKind::Symmetric {
        return Err(Error::WrongCoreKind {
            required: "symmetric",
            q: core.q(),
        });
    }
    checked_target_order(1, core.q(), m, opts.order_cap)?;
    let q = core.order();
    let jq: GaussMatrix = Matrix::ones(q, q);
    let iq: GaussMatrix = Matrix::identity(q);
    // i·Q: purely imaginary copy of the core.
    let iq_core = Matrix::from_fn(q, q, |i, j| GaussInt::new(0, core.matrix().get(i, j)));
    let one: GaussMatrix = Matrix::ones(1, 1);
    let (mut c, mut d) = (one.clone(), one);
    for _ in 0..m {
        let nc = kron(&jq, &d);
        let nd = scalar_combine(
            GaussInt::ONE,
            &kron(&iq, &c),
            GaussInt::ONE,
            &kron(&iq_core, &d),
        );
        c = nc;
        d = nd;
    }
    check_quaternary(&c)?;
    check_quaternary(&d)?;
    if opts.verify {
        verify_gauss_pair(&c, &d, core.q() as i64)?;
    }
    Ok((c, d))
}

/// The order-q^m(q+1) quaternary Hadamard matrix
///
/// ```text
/// ( 0   j_q ) ⊗ 𝒟ₘ + i·I_{q+1} ⊗ 𝒞ₘ
/// ( j_qᵀ  Q )
/// ```
///
/// for a symmetric core (q ≡ 1 mod 4): entries in {±1, ±i} with
/// M·M* = q^m(q+1)·I, verified unless opted out.
pub fn assemble_quaternary_hadamard(
    core: &CoreMatrix,
    m: u32,
    opts: &BuildOptions,
) -> Result<GaussMatrix> {
    let q = core.q();
    checked_target_order(q + 1, q, m, opts.order_cap)?;
    let (c, d) = construct_cd(core, m, opts)?;
    let border = Matrix::from_fn(core.order() + 1, core.order() + 1, |i, j| match (i, j) {
        (0, 0) => 0,
        (0, _) | (_, 0) => 1,
        _ => core.matrix().get(i - 1, j - 1),
    });
    let i_border: GaussMatrix =
        Matrix::from_fn(core.order() + 1, core.order() + 1, |i, j| {
            if i == j {
                GaussInt::I
            } else {
                GaussInt::ZERO
            }
        });
    let mat = scalar_combine(
        GaussInt::ONE,
        &kron(&int_to_gauss(&border), &d),
        GaussInt::ONE,
        &kron(&i_border, &c),
    );
    check_quaternary(&mat)?;
    if opts.verify {
        verify_unit_hadamard_exact(&mat)?;
    }
    Ok(mat)
}

fn verify_unit_hadamard_exact(m: &GaussMatrix) -> Result<()> {
    let n = m.order();
    let g = gram(m, m);
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                GaussInt::new(n as i64, 0)
            } else {
                GaussInt::ZERO
            };
            if g[(i, j)] != expected {
                return Err(Error::NotHadamard { row: i, col: j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cores::jacobsthal;
    use crate::exactmat::total_sum;

    fn circ(row: &[i64]) -> IntMatrix {
        IntMatrix::circulant(row)
    }

    #[test]
    fn ja_depth_zero() {
        let core = jacobsthal(3).unwrap();
        let (j, a) = construct_ja(&core, 0, &BuildOptions::default()).unwrap();
        assert_eq!(j.order(), 1);
        assert_eq!(j.get(0, 0), 1);
        assert_eq!(a.get(0, 0), 1);
    }

    #[test]
    fn ja_depth_one_q3() {
        let core = jacobsthal(3).unwrap();
        let (j, a) = construct_ja(&core, 1, &BuildOptions::default()).unwrap();
        assert_eq!(j.as_matrix(), &IntMatrix::ones(3, 3));
        assert_eq!(a.as_matrix(), &circ(&[1, -1, 1]));
    }

    #[test]
    fn ja_rejects_symmetric_core() {
        let core = jacobsthal(5).unwrap();
        assert!(matches!(
            construct_ja(&core, 1, &BuildOptions::default()),
            Err(Error::WrongCoreKind { q: 5, .. })
        ));
    }

    #[test]
    fn ja_respects_order_cap() {
        let core = jacobsthal(3).unwrap();
        let opts = BuildOptions {
            order_cap: 8,
            verify: true,
        };
        assert!(construct_ja(&core, 1, &opts).is_ok());
        assert!(matches!(
            construct_ja(&core, 3, &opts),
            Err(Error::OrderCapExceeded { order: 27, cap: 8 })
        ));
    }

    #[test]
    fn assemble_certifies() {
        let core = jacobsthal(3).unwrap();
        let (j, a) = construct_ja(&core, 1, &BuildOptions::default()).unwrap();
        let quh = assemble_quh(j.clone(), a, 3).unwrap();
        assert_eq!(quh.order(), 3);
        // J with itself fails: 3J + 9J != 12I.
        assert!(matches!(
            assemble_quh(j.clone(), j, 3),
            Err(Error::GramIdentityFailed { .. })
        ));
    }

    #[test]
    fn assemble_order_one_any_q() {
        let one = SignMatrix::new(IntMatrix::ones(1, 1)).unwrap();
        for q in [1u64, 2, 3, 7, 100] {
            assert!(assemble_quh(one.clone(), one.clone(), q).is_ok());
        }
    }

    #[test]
    fn seeded_with_trivial_seed_matches_ja() {
        let core = jacobsthal(3).unwrap();
        let seed = SeedPair::trivial(3);
        for m in 0..4 {
            let (x, y) = construct_seeded(&seed, &core, m, &BuildOptions::default()).unwrap();
            let (j, a) = construct_ja(&core, m, &BuildOptions::default()).unwrap();
            assert_eq!(x, j);
            assert_eq!(y, a);
        }
    }

    #[test]
    fn seeded_recursion_is_memoryless() {
        // Seeding with (J1, A1) and recursing once equals depth 2 directly.
        let core = jacobsthal(3).unwrap();
        let (j1, a1) = construct_ja(&core, 1, &BuildOptions::default()).unwrap();
        let seed = SeedPair::new(j1, a1, 3).unwrap();
        let (x, y) = construct_seeded(&seed, &core, 1, &BuildOptions::default()).unwrap();
        let (j2, a2) = construct_ja(&core, 2, &BuildOptions::default()).unwrap();
        assert_eq!(x, j2);
        assert_eq!(y, a2);
    }

    #[test]
    fn seeded_rejects_core_mismatch() {
        let core7 = jacobsthal(7).unwrap();
        let seed = SeedPair::trivial(3);
        assert!(matches!(
            construct_seeded(&seed, &core7, 1, &BuildOptions::default()),
            Err(Error::SeedCoreMismatch {
                seed_q: 3,
                core_q: 7
            })
        ));
    }

    #[test]
    fn cd_depth_one_q5() {
        let core = jacobsthal(5).unwrap();
        let (c, d) = construct_cd(&core, 1, &BuildOptions::default()).unwrap();
        assert_eq!(c, Matrix::ones(5, 5));
        // D1 = I + i*Q
        let expected = Matrix::from_fn(5, 5, |i, j| {
            if i == j {
                GaussInt::ONE
            } else {
                GaussInt::new(0, core.matrix().get(i, j))
            }
        });
        assert_eq!(d, expected);
    }

    #[test]
    fn cd_rejects_skew_core() {
        let core = jacobsthal(7).unwrap();
        assert!(matches!(
            construct_cd(&core, 1, &BuildOptions::default()),
            Err(Error::WrongCoreKind { q: 7, .. })
        ));
    }

    #[test]
    fn quaternary_hadamard_q5_m0() {
        let core = jacobsthal(5).unwrap();
        let m = assemble_quaternary_hadamard(&core, 0, &BuildOptions::default()).unwrap();
        assert_eq!(m.order(), 6);
        // Diagonal carries i (the 0-pattern of the border filled by i*C0).
        assert_eq!(m[(0, 0)], GaussInt::I);
        assert_eq!(m[(0, 1)], GaussInt::ONE);
    }

    #[test]
    fn quaternary_hadamard_q13_m0() {
        let core = jacobsthal(13).unwrap();
        let m = assemble_quaternary_hadamard(&core, 0, &BuildOptions::default()).unwrap();
        assert_eq!(m.order(), 14);
    }

    #[test]
    fn excess_of_small_ja() {
        let core = jacobsthal(3).unwrap();
        let (j, a) = construct_ja(&core, 1, &BuildOptions::default()).unwrap();
        assert_eq!(total_sum(j.as_matrix()), 9);
        assert_eq!(total_sum(a.as_matrix()), 3);
    }
}
