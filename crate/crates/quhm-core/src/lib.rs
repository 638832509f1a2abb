//! Exact-arithmetic construction and verification of quaternary unit
//! Hadamard matrices.
//!
//! A quaternary unit Hadamard matrix QUH(n, q) is a unit Hadamard matrix
//! whose entries all lie in {(±1 ± i√q)/√(q+1)}. Such a matrix is stored
//! here symbolically as a pair (A, B) of amicable (±1)-matrices with
//! A·Aᵀ + q·B·Bᵀ = (q+1)·n·I, so every identity about it can be checked
//! over the integers with zero tolerance.
//!
//! The crate provides:
//!
//! - [`gfield`]: finite fields GF(p^e) with a canonical element ordering
//!   and the quadratic character χ;
//! - [`exactmat`]: overflow-checked dense matrices over ℤ and ℤ\[i\];
//! - [`cores`]: Jacobsthal matrices, skew symmetric cores, Paley skew
//!   Hadamard matrices, and multicirculant structure detection;
//! - [`constructions`]: the recursive (𝒥ₘ, 𝒜ₘ), seeded (𝒳ₘ, 𝒴ₘ), and
//!   complex (𝒞ₘ, 𝒟ₘ) families, QUH assembly, and the order-q^m(q+1)
//!   quaternary Hadamard matrix for q ≡ 1 (mod 4);
//! - [`verify`]: standalone exact checkers (amicability, Gram identities,
//!   Butson membership, excess and regularity) usable on matrices from
//!   any source;
//! - [`schemes`]: the 2-class association scheme of a skew core, its
//!   eigenmatrix over ℚ(√−q), tensor powers, and Bose–Mesner membership.
//!
//! The crate is `no_std`-compatible (it allocates, but performs no IO);
//! file formats and the command-line front end live in the companion
//! `quhm-cli` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod constructions;
pub mod cores;
pub mod error;
pub mod exactmat;
pub mod gfield;
pub mod schemes;
pub mod verify;

pub use error::{Error, Result};
