//! Coefficient structures. A ring is a value (it may carry a modulus or a
//! discriminant); elements are plain data interpreted by their ring.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::ext_gcd;

pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Some quotient q with b*q = a, if one exists.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_unit(a) {
            self.div_exact(&self.one(), a)
        } else {
            None
        }
    }
}

/// Marker for rings where every nonzero element is a unit.
pub trait Field: Ring {}

/// Rings with a Euclidean division, used by the normal-form code.
pub trait EuclideanRing: Ring {
    /// (q, r) with a = q*b + r and size(r) < size(b).
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Euclidean size; zero only for zero.
    fn size(&self, a: &Self::Elem) -> BigInt;
    /// Canonical associate of `a` and the unit u with a*u = canonical.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Quotient used to reduce entries above a pivot.
    fn reduce_quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.div_rem(a, b).0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return if a.is_zero() { Some(BigInt::zero()) } else { None };
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl EuclideanRing for Integers {
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // Nearest-integer quotient keeps remainders small.
        let (q, r) = a.div_mod_floor(b);
        // The floored remainder shares the sign of b, so stepping toward zero
        // is always q + 1.
        if (&r * BigInt::from(2)).abs() > b.abs() {
            (q + 1, r - b)
        } else {
            (q, r)
        }
    }
    fn size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-a, BigInt::from(-1))
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn reduce_quotient(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.div_floor(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {}

/// Z/mZ for m >= 2. A field when m is prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zmod {
    pub modulus: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Zmod { modulus }
    }

    fn norm(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }
}

impl Ring for Zmod {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.norm(*a as i128 + *b as i128)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.norm(-(*a as i128))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.norm(*a as i128 * *b as i128)
    }
    fn is_unit(&self, a: &u64) -> bool {
        a.gcd(&self.modulus) == 1
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        let m = self.modulus;
        let g = b.gcd(&m);
        if a % g != 0 {
            return None;
        }
        let m2 = m / g;
        if m2 == 1 {
            return Some(0);
        }
        let (_, s, _) = ext_gcd(&BigInt::from(b / g), &BigInt::from(m2));
        let inv = s.mod_floor(&BigInt::from(m2)).to_u64().unwrap();
        Some(self.norm((a / g) as i128 * inv as i128 % m2 as i128))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_division() {
        let r = Zmod::new(12);
        assert_eq!(r.div_exact(&8, &4).map(|q| r.mul(&q, &4)), Some(8));
        assert_eq!(r.div_exact(&3, &4), None);
        assert_eq!(r.inv(&5), Some(5));
        assert!(!r.is_unit(&6));
    }

    #[test]
    fn integer_division_with_small_remainder() {
        let z = Integers;
        let (q, r) = z.div_rem(&BigInt::from(7), &BigInt::from(4));
        assert_eq!(q * 4 + &r, BigInt::from(7));
        assert!(r.abs() <= BigInt::from(2));
    }

    #[test]
    fn negative_divisor_keeps_remainder_small() {
        let z = Integers;
        let (q, r) = z.div_rem(&BigInt::from(1), &BigInt::from(-27));
        assert_eq!((q, r), (BigInt::zero(), BigInt::one()));
        let g = crate::order::gcd(&z, &BigInt::from(7), &BigInt::from(-27));
        assert!(g.is_one());
    }

    proptest::proptest! {
        #[test]
        fn euclidean_remainder_is_at_most_half(a in -10_000i64..10_000, b in -500i64..500) {
            proptest::prop_assume!(b != 0);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (q, r) = Integers.div_rem(&a, &b);
            proptest::prop_assert_eq!(&q * &b + &r, a);
            proptest::prop_assert!(r.abs() * 2 <= b.abs());
        }
    }
}
