//! Arithmetic in GF(p^k) for primes p > 3.
//!
//! Elements are stored as their integer encoding `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_0 + c_1 a + ... + c_{k-1} a^{k-1}` is the polynomial representative
//! modulo the field's irreducible modulus. For `k = 1` the encoding is the bare
//! residue. Reduction is table-free.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;
/// Largest supported field size.
pub const MAX_ORDER: u64 = 1 << 20;

/// An element of a finite field, stored by its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// The integer encoding of this element.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field GF(p^k) with a fixed monic irreducible modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients `m_0..m_k` of the modulus, `m_k = 1`. Only meaningful for `k > 1`.
    modulus: [u32; MAX_DEGREE + 1],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds GF(p^k). The modulus is the lexicographically smallest monic
    /// irreducible polynomial of degree `k`, comparing coefficient lists from
    /// the constant term upward (equivalently, by integer encoding of the
    /// lower coefficients).
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p as u64) || p <= 3 {
            return Err(Error::InvalidField(format!("p = {p} must be a prime > 3")));
        }
        if k == 0 || k as usize > MAX_DEGREE {
            return Err(Error::InvalidField(format!("extension degree {k} outside 1..={MAX_DEGREE}")));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::InvalidField(format!("{p}^{k} exceeds the supported field size")));
        };
        let mut field = Field { p, k, q: q as u32, modulus: [0; MAX_DEGREE + 1] };
        if k > 1 {
            field.modulus = smallest_irreducible(p, k as usize);
        } else {
            field.modulus[1] = 1;
        }
        Ok(field)
    }

    /// Builds the field of the given order `q = p^k`.
    pub fn with_order(q: u32) -> Result<Field> {
        let q64 = q as u64;
        let p = (2..=q64).find(|d| q64.is_multiple_of(*d)).ok_or_else(|| Error::InvalidField(format!("q = {q}")))?;
        let mut k = 0;
        let mut rest = q64;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidField(format!("q = {q} is not a prime power")));
        }
        Field::new(p as u32, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> Vec<u32> {
        self.modulus[..=self.k as usize].to_vec()
    }

    /// Element with the given integer encoding. Panics when out of range.
    pub fn from_index(&self, index: u32) -> Fe {
        assert!(index < self.q, "element index {index} out of range for {self}");
        Fe(index)
    }

    /// Image of an integer in the prime subfield.
    pub fn elem(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    /// Nonzero elements in encoding order.
    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(Fe)
    }

    /// Polynomial coefficients of `a`, constant term first, length `k`.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut n = a.0;
        for _ in 0..self.k {
            out.push(n % self.p);
            n /= self.p;
        }
        out
    }

    /// Element with the given polynomial coefficients (reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.k as usize {
            return Err(Error::InvalidInput(format!("{} coefficients for a degree-{} field", coeffs.len(), self.k)));
        }
        let mut n = 0u32;
        for &c in coeffs.iter().rev() {
            n = n * self.p + c % self.p;
        }
        Ok(Fe(n))
    }

    fn decode(&self, a: Fe) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let mut n = a.0;
        for c in out.iter_mut().take(self.k as usize) {
            *c = n % self.p;
            n /= self.p;
        }
        out
    }

    fn encode(&self, c: &[u32]) -> Fe {
        let mut n = 0u32;
        for &x in c[..self.k as usize].iter().rev() {
            n = n * self.p + x;
        }
        Fe(n)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let mut z = [0u32; MAX_DEGREE];
        for i in 0..self.k as usize {
            z[i] = (x[i] + y[i]) % self.p;
        }
        self.encode(&z)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.k == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let x = self.decode(a);
        let mut z = [0u32; MAX_DEGREE];
        for i in 0..self.k as usize {
            z[i] = (self.p - x[i]) % self.p;
        }
        self.encode(&z)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let k = self.k as usize;
        let p = self.p as u64;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // reduce by the monic modulus from the top degree down
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u64;
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
        }
        let mut z = [0u32; MAX_DEGREE];
        for i in 0..k {
            z[i] = prod[i] as u32;
        }
        self.encode(&z)
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a.is_zero() || self.pow(a, (self.q as u64 - 1) / 2) == Fe::ONE
    }

    /// Smallest (in encoding order) nonzero non-square. Exists since q is odd.
    pub fn find_nonsquare(&self) -> Fe {
        self.nonzero()
            .find(|&a| !self.is_square(a))
            .expect("odd-order fields always contain non-squares")
    }

    /// A square root of `a` in the field, if one exists (brute force).
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// Signed representative in `(-p/2, p/2]` for prime-subfield elements,
    /// used for display.
    pub fn signed(&self, a: Fe) -> Option<i64> {
        if a.0 >= self.p {
            return None;
        }
        let v = a.0 as i64;
        Some(if v > self.p as i64 / 2 { v - self.p as i64 } else { v })
    }
}

/// Trial-divides monic polynomials of degree k over GF(p) (coefficients low to
/// high) by every monic polynomial of degree 1..=k/2.
fn smallest_irreducible(p: u32, k: usize) -> [u32; MAX_DEGREE + 1] {
    let count = (p as u64).pow(k as u32);
    for code in 0..count {
        let mut poly = vec![0u32; k + 1];
        let mut n = code;
        for c in poly.iter_mut().take(k) {
            *c = (n % p as u64) as u32;
            n /= p as u64;
        }
        poly[k] = 1;
        if poly[0] != 0 && is_irreducible(&poly, p) {
            let mut out = [0u32; MAX_DEGREE + 1];
            out[..=k].copy_from_slice(&poly);
            return out;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut n = code;
            for c in divisor.iter_mut().take(d) {
                *c = (n % p as u64) as u32;
                n /= p as u64;
            }
            divisor[d] = 1;
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(a: &[u32], monic: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let d = monic.len() - 1;
    let p = p as u64;
    for top in (d..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            r[top - d + i] = (r[top - d + i] + (p - c) * monic[i] as u64) % p;
        }
    }
    r.iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_examples() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.add(f.elem(3), f.elem(4)), f.elem(2));
        assert_eq!(f.inv(f.elem(2)).unwrap(), f.elem(3));
        assert_eq!(f.pow(f.elem(3), 5), f.elem(3));
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_small_or_composite_characteristic() {
        assert!(Field::new(2, 1).is_err());
        assert!(Field::new(3, 2).is_err());
        assert!(Field::new(9, 1).is_err());
        assert!(Field::with_order(12).is_err());
        assert_eq!(Field::with_order(25).unwrap().k(), 2);
    }

    /// Non-squares by enumerating the set of squares directly.
    fn nonsquare_oracle(f: &Field) -> Fe {
        let squares: std::collections::HashSet<Fe> = f.elements().map(|x| f.mul(x, x)).collect();
        f.nonzero().find(|a| !squares.contains(a)).unwrap()
    }

    #[test]
    fn nonsquares() {
        for (p, expect) in [(5, 2), (7, 3), (13, 2)] {
            let f = Field::new(p, 1).unwrap();
            assert_eq!(nonsquare_oracle(&f), f.elem(expect));
            assert_eq!(f.find_nonsquare(), f.elem(expect));
        }
        for q in [25, 49, 125] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(f.find_nonsquare(), nonsquare_oracle(&f));
            let squares = f.nonzero().filter(|&a| f.is_square(a)).count();
            assert_eq!(squares as u32, (q - 1) / 2);
        }
    }

    #[test]
    fn extension_modulus_is_smallest_irreducible() {
        let f = Field::new(5, 2).unwrap();
        // x^2 + 2 is the first monic quadratic with no root mod 5.
        assert_eq!(f.modulus(), vec![2, 0, 1]);
        let f = Field::new(7, 2).unwrap();
        assert_eq!(f.modulus(), vec![1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [5, 7, 25] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, q as u64), a);
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.pow(a, q as u64 - 1), Fe::ONE);
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = Field::with_order(125).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
    }
}
