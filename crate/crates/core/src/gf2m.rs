//! Arithmetic in binary extension fields GF(2^m), 1 <= m <= 32.
//!
//! Elements are plain bit-vectors ([`Gf`]) and the [`Field`] is passed as
//! context. Multiplication is a carry-less product followed by reduction by
//! the field modulus; there are no log tables.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 32;

/// Irreducible moduli, indexed by `m - 1`. Each entry is the lowest-weight
/// irreducible polynomial of degree `m` over GF(2); among equal weights the
/// one whose exponents are smallest, compared from the top, wins.
const MODULI: [u64; 32] = [
    0x3,         // x + 1
    0x7,         // x^2 + x + 1
    0xb,         // x^3 + x + 1
    0x13,        // x^4 + x + 1
    0x25,        // x^5 + x^2 + 1
    0x43,        // x^6 + x + 1
    0x83,        // x^7 + x + 1
    0x11b,       // x^8 + x^4 + x^3 + x + 1
    0x203,       // x^9 + x + 1
    0x409,       // x^10 + x^3 + 1
    0x805,       // x^11 + x^2 + 1
    0x1009,      // x^12 + x^3 + 1
    0x201b,      // x^13 + x^4 + x^3 + x + 1
    0x4021,      // x^14 + x^5 + 1
    0x8003,      // x^15 + x + 1
    0x1002b,     // x^16 + x^5 + x^3 + x + 1
    0x20009,     // x^17 + x^3 + 1
    0x40009,     // x^18 + x^3 + 1
    0x80027,     // x^19 + x^5 + x^2 + x + 1
    0x100009,    // x^20 + x^3 + 1
    0x200005,    // x^21 + x^2 + 1
    0x400003,    // x^22 + x + 1
    0x800021,    // x^23 + x^5 + 1
    0x100001b,   // x^24 + x^4 + x^3 + x + 1
    0x2000009,   // x^25 + x^3 + 1
    0x400001b,   // x^26 + x^4 + x^3 + x + 1
    0x8000027,   // x^27 + x^5 + x^2 + x + 1
    0x10000003,  // x^28 + x + 1
    0x20000005,  // x^29 + x^2 + 1
    0x40000003,  // x^30 + x + 1
    0x80000009,  // x^31 + x^3 + 1
    0x10000008d, // x^32 + x^7 + x^3 + x^2 + 1
];

/// An element of GF(2^m): coefficient `k` of the polynomial is bit `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Lowercase hex, no prefix, minimal digits.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Field addition: XOR of the coefficient vectors.
impl std::ops::Add for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Gf {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

/// GF(2^m) with a fixed modulus from the built-in table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    m: u32,
    modulus: u64,
}

impl Field {
    pub fn new(m: u32) -> Result<Field> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::FieldDegree(m));
        }
        Ok(Field { m, modulus: MODULI[(m - 1) as usize] })
    }

    /// GF(2).
    pub fn binary() -> Field {
        Field { m: 1, modulus: MODULI[0] }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// The modulus as a bit-vector of length m+1.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^m.
    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    #[inline]
    pub fn contains(&self, a: Gf) -> bool {
        (a.0 as u64) < self.size()
    }

    /// Parses a hex token into an element of this field.
    pub fn parse_hex(&self, token: &str) -> Result<Gf> {
        if token.is_empty() || !token.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
            return Err(Error::Parse(format!("not a hex field element: {token:?}")));
        }
        let v =
            u64::from_str_radix(token, 16).map_err(|_| Error::Parse(format!("not a hex field element: {token:?}")))?;
        if v >= self.size() {
            return Err(Error::Parse(format!("element {token} outside GF(2^{})", self.m)));
        }
        Ok(Gf(v as u32))
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        a + b
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        let mut prod = clmul(a.0, b.0);
        // reduce the (up to 2m-1 bit) product modulo the m+1 bit modulus
        for bit in (self.m as usize..64).rev() {
            if prod >> bit & 1 == 1 {
                prod ^= (self.modulus as u128) << (bit - self.m as usize);
            }
        }
        Gf(prod as u32)
    }

    pub fn square(&self, a: Gf) -> Gf {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Gf, mut e: u64) -> Gf {
        let mut base = a;
        let mut acc = Gf::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(2^m - 2).
    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.size() - 2))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Frobenius power a^(2^k).
    pub fn frob(&self, a: Gf, k: u32) -> Gf {
        // the map has order m
        (0..k % self.m).fold(a, |x, _| self.square(x))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Gf) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.size() - 1;
        let mut order = group;
        for p in prime_factors(group) {
            while order.is_multiple_of(p) && self.pow(a, order / p) == Gf::ONE {
                order /= p;
            }
        }
        Ok(order)
    }

    /// Smallest element (as an integer) generating the multiplicative group.
    pub fn primitive_element(&self) -> Gf {
        let group = self.size() - 1;
        (1..self.size())
            .map(|v| Gf(v as u32))
            .find(|&a| self.order(a).map(|o| o == group).unwrap_or(false))
            .expect("multiplicative group of a finite field is cyclic")
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.size()).map(|v| Gf(v as u32))
    }
}

/// Carry-less product of two 32-bit polynomials.
#[inline]
fn clmul(a: u32, b: u32) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shifted = a as u128;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= shifted;
        }
        b >>= 1;
        shifted <<= 1;
    }
    acc
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Remainder of polynomial division over GF(2).
    fn poly_rem(mut a: u64, b: u64) -> u64 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            a ^= b << (63 - a.leading_zeros() - db);
        }
        a
    }

    fn irreducible_by_trial_division(p: u64) -> bool {
        let m = 63 - p.leading_zeros();
        (1..=m / 2).all(|d| ((1u64 << d)..(1u64 << (d + 1))).all(|q| poly_rem(p, q) != 0))
    }

    /// Schoolbook multiply-then-reduce, independent of `Field::mul`.
    fn schoolbook(a: u32, b: u32, modulus: u64) -> u32 {
        let mut prod = 0u64;
        for k in 0..32 {
            if b >> k & 1 == 1 {
                prod ^= (a as u64) << k;
            }
        }
        poly_rem(prod, modulus) as u32
    }

    #[test]
    fn moduli_have_full_degree_and_are_irreducible() {
        for m in 1..=MAX_DEGREE {
            let f = Field::new(m).unwrap();
            assert_eq!(63 - f.modulus().leading_zeros(), m);
            if m <= 20 {
                assert!(irreducible_by_trial_division(f.modulus()), "m={m}");
            }
        }
    }

    #[test]
    fn field_make_examples() {
        assert_eq!(Field::new(3).unwrap().modulus(), 0b1011);
        assert_eq!(Field::new(1).unwrap().modulus(), 0b11);
        assert!(matches!(Field::new(0), Err(Error::FieldDegree(0))));
        assert!(Field::new(33).is_err());
    }

    #[test]
    fn add_examples() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.add(Gf(0b010), Gf(0b011)), Gf(0b001));
        for a in f.elements() {
            assert_eq!(f.add(a, a), Gf::ZERO);
            assert_eq!(f.add(a, Gf::ZERO), a);
        }
    }

    #[test]
    fn mul_and_inv_examples() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.mul(Gf(0b010), Gf(0b011)), Gf(0b110));
        assert_eq!(f.inv(Gf::ONE).unwrap(), Gf::ONE);
        // exhaustive search for the inverse of x
        let brute = f.elements().find(|&b| schoolbook(2, b.0, 0b1011) == 1).unwrap();
        assert_eq!(brute, Gf(0b101));
        assert_eq!(f.inv(Gf(0b010)).unwrap(), Gf(0b101));
        assert!(matches!(f.inv(Gf::ZERO), Err(Error::DivisionByZero)));
        for a in f.elements() {
            assert_eq!(f.mul(a, Gf::ONE), a);
            assert_eq!(f.mul(a, Gf::ZERO), Gf::ZERO);
        }
    }

    #[test]
    fn mul_matches_schoolbook() {
        for m in [1, 2, 5, 8, 13, 32] {
            let f = Field::new(m).unwrap();
            let mask = (f.size() - 1) as u32;
            let mut s = 0x9e3779b9u32;
            for _ in 0..500 {
                s = s.wrapping_mul(1664525).wrapping_add(1013904223);
                let a = s & mask;
                s = s.wrapping_mul(1664525).wrapping_add(1013904223);
                let b = s & mask;
                assert_eq!(f.mul(Gf(a), Gf(b)).0, schoolbook(a, b, f.modulus()), "m={m}");
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for m in 1..=4 {
            let f = Field::new(m).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                        assert_eq!((a + b) + c, a + (b + c));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_is_a_bijection() {
        for m in 1..=8 {
            let f = Field::new(m).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in f.elements().skip(1) {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), Gf::ONE);
                assert!(seen.insert(b));
            }
        }
    }

    #[test]
    fn frobenius() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.frob(Gf(0b010), 1), Gf(0b100));
        for m in 1..=8 {
            let f = Field::new(m).unwrap();
            for a in f.elements() {
                assert_eq!(f.frob(a, 0), a);
                assert_eq!(f.frob(a, m), a);
                for b in f.elements().step_by(7) {
                    assert_eq!(f.frob(a + b, 1), f.frob(a, 1) + f.frob(b, 1));
                }
            }
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::new(3).unwrap().primitive_element(), Gf(2));
        assert_eq!(Field::binary().primitive_element(), Gf(1));
        // x has order 51 modulo the AES polynomial
        let f8 = Field::new(8).unwrap();
        assert_eq!(f8.order(Gf(2)).unwrap(), 51);
        assert_eq!(f8.order(f8.primitive_element()).unwrap(), 255);
    }

    #[test]
    fn hex_round_trip() {
        let f = Field::new(8).unwrap();
        assert_eq!(Gf(0xab).to_hex(), "ab");
        assert_eq!(Gf(0).to_hex(), "0");
        assert_eq!(f.parse_hex("ab").unwrap(), Gf(0xab));
        assert!(f.parse_hex("1ff").is_err());
        assert!(f.parse_hex("zz").is_err());
        assert!(f.parse_hex("").is_err());
        assert!(f.parse_hex("AB").is_err());
    }
}
