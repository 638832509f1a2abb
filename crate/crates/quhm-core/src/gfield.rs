//! Finite fields GF(p^e) with a canonical element ordering and the
//! quadratic character χ.
//!
//! The canonical ordering is fixed once and for all: element k has
//! coefficient vector equal to the base-p digits of k, least significant
//! digit first. Under this ordering the additive group acts by
//! coordinate-wise cyclic shifts, which is exactly what makes the
//! Jacobsthal matrix multicirculant (see [`crate::cores`]).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A concrete finite field GF(q), q = p^e.
///
/// For e > 1 the field is represented as GF(p)[x] modulo the
/// lexicographically smallest monic irreducible polynomial of degree e
/// (coefficient vectors compared constant-term first). For e = 1 the
/// modulus is the placeholder x and is never consulted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus, constant term first; length e + 1.
    modulus: Vec<u64>,
}

/// An element of GF(p^e): e residues mod p, coefficient of 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coeffs: Vec<u64>,
}

/// Trial-division factorization, smallest prime first.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Construct GF(q), rejecting q that is not a prime power.
pub fn build_field(q: u64) -> Result<FieldSpec> {
    let factors = factorize(q);
    if factors.len() != 1 || q < 2 {
        return Err(Error::NotPrimePower { q, factors });
    }
    let (p, e) = factors[0];
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, e)
    };
    Ok(FieldSpec { p, e, q, modulus })
}

/// The lexicographically smallest monic irreducible of degree e over
/// GF(p), comparing non-leading coefficients constant-term first.
fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let total = p.pow(e);
    for t in 0..total {
        // Digit 0 of t is the constant term and is the most significant
        // digit of the comparison key.
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut rest = t;
        for i in 0..e {
            let weight = p.pow(e - 1 - i);
            coeffs.push(rest / weight);
            rest %= weight;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of degree {e} exists over GF({p})")
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1 ..= e/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = t;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Remainder of f mod g over GF(p); empty vector means zero remainder.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    debug_assert_eq!(g[dg], 1, "divisor must be monic");
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for i in 0..=dg {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - (lead * g[i]) % p) % p;
            }
        }
        r.pop();
        while r.len() > dg && *r.last().unwrap() % p == 0 {
            r.pop();
        }
    }
    while let Some(&last) = r.last() {
        if last % p == 0 {
            r.pop();
        } else {
            break;
        }
    }
    r
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.e as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.e as usize];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    fn minus_one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.e as usize];
        coeffs[0] = self.p - 1;
        FieldElement { coeffs }
    }

    /// The k-th element in canonical order: coeffs = base-p digits of k.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::ElementOutOfField {
                index: index as usize,
            });
        }
        let mut coeffs = Vec::with_capacity(self.e as usize);
        let mut rest = index;
        for _ in 0..self.e {
            coeffs.push(rest % self.p);
            rest /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    /// Inverse of [`FieldSpec::element`].
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        let mut index = 0;
        for &c in x.coeffs.iter().rev() {
            index = index * self.p + c;
        }
        index
    }

    /// All q elements in canonical order.
    pub fn enumerate_elements(&self) -> Vec<FieldElement> {
        (0..self.q).map(|k| self.element(k).unwrap()).collect()
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.zip(x, y, |a, b| (a + b) % self.p)
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.zip(x, y, |a, b| (a + self.p - b) % self.p)
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: x.coeffs.iter().map(|&a| (self.p - a) % self.p).collect(),
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let e = self.e as usize;
        // Schoolbook product, degree <= 2e - 2.
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % self.p;
            }
        }
        // Reduce by the monic modulus.
        for d in (e..prod.len()).rev() {
            let lead = prod[d];
            if lead != 0 {
                prod[d] = 0;
                for i in 0..e {
                    let sub = (lead * self.modulus[i]) % self.p;
                    prod[d - e + i] = (prod[d - e + i] + self.p - sub) % self.p;
                }
            }
        }
        prod.truncate(e);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, x: &FieldElement, mut k: u64) -> FieldElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// χ(x): 0 at zero, +1 on nonzero squares, −1 otherwise, computed as
    /// x^((q−1)/2).
    pub fn quadratic_character(&self, x: &FieldElement) -> Result<i64> {
        if self.q % 2 == 0 {
            return Err(Error::EvenFieldOrder { q: self.q });
        }
        if x == &self.zero() {
            return Ok(0);
        }
        let t = self.pow(x, (self.q - 1) / 2);
        if t == self.one() {
            Ok(1)
        } else if t == self.minus_one() {
            Ok(-1)
        } else {
            unreachable!("x^((q-1)/2) must be +-1 for nonzero x in a field")
        }
    }

    fn zip(&self, x: &FieldElement, y: &FieldElement, f: impl Fn(u64, u64) -> u64) -> FieldElement {
        debug_assert_eq!(x.coeffs.len(), y.coeffs.len());
        FieldElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_prime_field() {
        let f = build_field(7).unwrap();
        assert_eq!((f.p(), f.e(), f.q()), (7, 1, 7));
    }

    #[test]
    fn build_gf9_modulus_is_x2_plus_1() {
        // x^2 + 1 is irreducible over GF(3); x^2, x^2 + x and x^2 + 2x
        // precede it in the canonical order and are all reducible.
        let f = build_field(9).unwrap();
        assert_eq!((f.p(), f.e()), (3, 2));
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn build_rejects_non_prime_power() {
        match build_field(12) {
            Err(Error::NotPrimePower { q: 12, factors }) => {
                assert_eq!(factors, vec![(2, 2), (3, 1)]);
            }
            other => panic!("expected NotPrimePower, got {other:?}"),
        }
    }

    #[test]
    fn enumeration_is_base_p_digits() {
        let f = build_field(9).unwrap();
        let elems = f.enumerate_elements();
        assert_eq!(elems.len(), 9);
        // 0, 1, 2, x, x+1, x+2, 2x, 2x+1, 2x+2
        assert_eq!(elems[0].coeffs, vec![0, 0]);
        assert_eq!(elems[4].coeffs, vec![1, 1]);
        assert_eq!(elems[6].coeffs, vec![0, 2]);
        for (k, el) in elems.iter().enumerate() {
            assert_eq!(f.index_of(el), k as u64);
        }
    }

    #[test]
    fn arithmetic_gf3_and_gf7() {
        let f3 = build_field(3).unwrap();
        let one = f3.element(1).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(f3.add(&one, &two), f3.zero());

        let f7 = build_field(7).unwrap();
        let three = f7.element(3).unwrap();
        let five = f7.element(5).unwrap();
        assert_eq!(f7.mul(&three, &five), f7.one());
    }

    #[test]
    fn gf9_x_squared_is_minus_one() {
        let f = build_field(9).unwrap();
        let x = f.element(3).unwrap(); // coeffs (0, 1)
        let xx = f.mul(&x, &x);
        assert_eq!(f.index_of(&xx), 2); // -1 = 2 in GF(3) inside GF(9)
    }

    #[test]
    fn character_small_fields() {
        let f3 = build_field(3).unwrap();
        assert_eq!(f3.quadratic_character(&f3.zero()).unwrap(), 0);
        assert_eq!(f3.quadratic_character(&f3.element(2).unwrap()).unwrap(), -1);

        let f7 = build_field(7).unwrap();
        assert_eq!(f7.quadratic_character(&f7.element(2).unwrap()).unwrap(), 1);
    }

    #[test]
    fn character_rejects_even_order() {
        let f4 = build_field(4).unwrap();
        assert!(matches!(
            f4.quadratic_character(&f4.one()),
            Err(Error::EvenFieldOrder { q: 4 })
        ));
    }

    #[test]
    fn character_counts_and_minus_one_rule() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
            let f = build_field(q).unwrap();
            let mut plus = 0;
            let mut minus = 0;
            for el in f.enumerate_elements() {
                match f.quadratic_character(&el).unwrap() {
                    1 => plus += 1,
                    -1 => minus += 1,
                    _ => {}
                }
            }
            assert_eq!(plus, (q - 1) / 2, "q = {q}");
            assert_eq!(minus, (q - 1) / 2, "q = {q}");
            let chi_minus_one = f.quadratic_character(&f.neg(&f.one())).unwrap();
            let expected = if q % 4 == 1 { 1 } else { -1 };
            assert_eq!(chi_minus_one, expected, "q = {q}");
        }
    }
}
