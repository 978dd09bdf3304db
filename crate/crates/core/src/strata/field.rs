//! Small finite fields F_q for q ∈ {2, 3, 4, 5, 7}, with table arithmetic.
//! F_4 is F_2[a]/(a² + a + 1) with elements encoded as bit polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

pub const SUPPORTED_Q: [u8; 5] = [2, 3, 4, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    q: u8,
    p: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    // Carry-less product reduced by a² = a + 1.
    let mut r = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 4 != 0 {
        r ^= 0b111;
    }
    r
}

impl Fq {
    pub fn new(q: u8) -> Result<Self> {
        if !SUPPORTED_Q.contains(&q) {
            return Err(Error::Validation(format!("unsupported field size {q}; expected one of 2, 3, 4, 5, 7")));
        }
        let n = q as usize;
        let (p, add, mul): (u8, Vec<u8>, Vec<u8>) = if q == 4 {
            let add = (0..16).map(|k| (k / 4) as u8 ^ (k % 4) as u8).collect();
            let mul = (0..16).map(|k| gf4_mul((k / 4) as u8, (k % 4) as u8)).collect();
            (2, add, mul)
        } else {
            let add = (0..n * n).map(|k| ((k / n + k % n) % n) as u8).collect();
            let mul = (0..n * n).map(|k| ((k / n) * (k % n) % n) as u8).collect();
            (q, add, mul)
        };
        let neg = (0..n).map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8).collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a * n + b] == 1).unwrap_or(0) as u8).collect();
        Ok(Fq { q, p, add, mul, neg, inv })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    #[inline]
    pub fn fadd(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn fmul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn fneg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn finv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn fsub(&self, a: u8, b: u8) -> u8 {
        self.fadd(a, self.fneg(b))
    }

    /// Image of an integer under ℤ → F_p ⊆ F_q.
    pub fn from_i64_fast(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }
}

impl Ring for Fq {
    type Elem = u8;
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u8 {
        n.mod_floor(&BigInt::from(self.p)).to_u8().unwrap()
    }
    fn from_i64(&self, n: i64) -> u8 {
        self.from_i64_fast(n)
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.fadd(*a, *b)
    }
    fn neg(&self, a: &u8) -> u8 {
        self.fneg(*a)
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.fmul(*a, *b)
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u8) -> bool {
        *a != 0
    }
    fn div_exact(&self, a: &u8, b: &u8) -> Option<u8> {
        if *b == 0 {
            return (*a == 0).then_some(0);
        }
        Some(self.fmul(*a, self.finv(*b)))
    }
    fn render(&self, a: &u8) -> String {
        if self.q == 4 {
            ["0", "1", "a", "a+1"][*a as usize].to_string()
        } else {
            a.to_string()
        }
    }
}

impl Field for Fq {}

/// |GL_N(F_q)| = Π_{i<N} (q^N − q^i), saturating.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let qn = (q as u128).saturating_pow(n as u32);
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(qn - (q as u128).pow(i as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold() {
        for q in SUPPORTED_Q {
            let f = Fq::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.fadd(a, f.fneg(a)), 0);
                if a != 0 {
                    assert_eq!(f.fmul(a, f.finv(a)), 1);
                }
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.fmul(a, f.fadd(b, c)), f.fadd(f.fmul(a, b), f.fmul(a, c)));
                        assert_eq!(f.fmul(a, f.fmul(b, c)), f.fmul(f.fmul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_generator_has_order_three() {
        let f = Fq::new(4).unwrap();
        assert_eq!(f.fmul(2, 2), 3);
        assert_eq!(f.fmul(2, 3), 1);
        assert_eq!(f.from_i64(3), 1);
        assert!(Fq::new(9).is_err());
    }

    #[test]
    fn general_linear_orders() {
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(4, 2), 20160);
        assert_eq!(gl_order(3, 3), 11232);
    }
}
