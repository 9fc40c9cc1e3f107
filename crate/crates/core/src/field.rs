//! Small finite fields GF(q), q = p^e <= 16, backed by full lookup tables.
//!
//! An element is a `u8` in `[0, q)`. The integer `v = c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! stands for the polynomial `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` reduced modulo the
//! defining polynomial of the field. `0` is the zero element and `1` the identity.
//!
//! Defining polynomials (Conway polynomials):
//!
//! | q  | modulus          |
//! |----|------------------|
//! | 4  | x^2 + x + 1      |
//! | 8  | x^3 + x + 1      |
//! | 9  | x^2 + 2x + 2     |
//! | 16 | x^4 + x + 1      |

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Field element, integer encoded.
pub type Elem = u8;

/// Supported field orders.
pub const SUPPORTED_ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Conway polynomial coefficients, lowest degree first, without the leading 1.
fn conway(p: u32, e: u32) -> Option<&'static [u8]> {
    match (p, e) {
        (2, 2) => Some(&[1, 1]),
        (2, 3) => Some(&[1, 1, 0]),
        (3, 2) => Some(&[2, 2]),
        (2, 4) => Some(&[1, 1, 0, 0]),
        _ => None,
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Arithmetic tables for GF(p^e).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u8>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable").field("p", &self.p).field("e", &self.e).field("modulus", &self.modulus).finish()
    }
}

impl FieldTable {
    /// Builds GF(p^e). Fails unless `p^e` is one of [`SUPPORTED_ORDERS`].
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let unsupported = Error::UnsupportedField { p, e };
        if !is_prime(p) || e == 0 || e > 4 {
            return Err(unsupported);
        }
        let q = p.pow(e);
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(unsupported);
        }
        let modulus = if e > 1 {
            let mut m = conway(p, e).ok_or(unsupported)?.to_vec();
            m.push(1);
            Some(m)
        } else {
            None
        };

        let digits = |v: u32| -> Vec<u32> {
            let mut out = vec![0; e as usize];
            let mut v = v;
            for d in out.iter_mut() {
                *d = v % p;
                v /= p;
            }
            out
        };
        let encode = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as Elem;

                // schoolbook product, then reduce top-down by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if let Some(m) = &modulus {
                    for deg in (e as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        let shift = deg - e as usize;
                        for (i, &mi) in m.iter().enumerate() {
                            prod[shift + i] = (prod[shift + i] + p * p - c * mi as u32) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..e as usize]) as Elem;
            }
        }

        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("modulus must be irreducible") as Elem;
            }
        }

        Ok(FieldTable { p, e, q, modulus, add, mul, neg, inv })
    }

    /// Shared table for a field of order `q`, built on first use.
    pub fn of_order(q: u32) -> Result<&'static FieldTable> {
        static TABLES: [OnceLock<FieldTable>; 17] = [const { OnceLock::new() }; 17];
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(Error::UnsupportedOrder(q));
        }
        let cell = &TABLES[q as usize];
        if let Some(t) = cell.get() {
            return Ok(t);
        }
        let table = FieldTable::new(p, e)?;
        Ok(cell.get_or_init(|| table))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, lowest degree first (monic); `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        self.inv[a as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut k: u32) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p)
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `dst += scale * src`, elementwise.
    pub fn axpy(&self, dst: &mut [Elem], scale: Elem, src: &[Elem]) {
        if scale == 0 {
            return;
        }
        let q = self.q as usize;
        let mrow = &self.mul[scale as usize * q..(scale as usize + 1) * q];
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add[*d as usize * q + mrow[s as usize] as usize];
        }
    }

    /// Flat addition table, `add_table()[a * q + b] == add(a, b)`.
    pub(crate) fn add_table(&self) -> &[Elem] {
        &self.add
    }
}

/// Decomposes `q = p^e` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<&'static FieldTable> {
        SUPPORTED_ORDERS.iter().map(|&q| FieldTable::of_order(q).unwrap()).collect()
    }

    #[test]
    fn gf2_characteristic() {
        let f = FieldTable::new(2, 1).unwrap();
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf3_two_squared_is_one() {
        let f = FieldTable::new(3, 1).unwrap();
        assert_eq!(f.mul(2, 2), 1);
    }

    #[test]
    fn gf4_x_squared() {
        let f = FieldTable::new(2, 2).unwrap();
        // x * x = x + 1 under x^2 + x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn extension_moduli_reduce_x_to_the_e() {
        // x^e expressed through the modulus, computed by hand
        let cases = [(2, 3, 2u8, 3u32, 3u8), (3, 2, 3, 2, 4), (2, 4, 2, 4, 3)];
        for (p, e, x, k, expect) in cases {
            let f = FieldTable::new(p, e).unwrap();
            assert_eq!(f.pow(x, k), expect, "GF({}^{})", p, e);
        }
    }

    #[test]
    fn rejects_unsupported() {
        assert!(FieldTable::new(2, 5).is_err());
        assert!(FieldTable::new(17, 1).is_err());
        assert!(FieldTable::new(6, 1).is_err());
        assert!(FieldTable::new(3, 3).is_err());
        assert!(FieldTable::of_order(6).is_err());
        assert!(FieldTable::of_order(32).is_err());
        assert!(FieldTable::of_order(0).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for f in all_fields() {
            let q = f.q();
            let has_generator = (1..q as Elem).any(|g| (1..q - 1).all(|k| f.pow(g, k) != 1));
            assert!(has_generator, "GF({q})");
        }
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
    }
}
