//! Maximal orders of imaginary quadratic fields and their fraction fields.
//!
//! Elements are `x + y·ω` with ω = √d when d ≡ 2, 3 (mod 4) and
//! ω = (1 + √d)/2 when d ≡ 1 (mod 4).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{EuclideanRing, Field, Ring};

/// The five norm-Euclidean imaginary quadratic rings.
pub const EUCLIDEAN_D: [i64; 5] = [-1, -2, -3, -7, -11];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing {
    d: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadElem {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadElem { x: x.into(), y: y.into() }
    }

    pub fn int(x: impl Into<BigInt>) -> Self {
        QuadElem { x: x.into(), y: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }
}

fn write_pair<T: fmt::Display + Signed + Zero + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    x: &T,
    y: &T,
) -> fmt::Result {
    if y.is_zero() {
        return write!(f, "{x}");
    }
    let coeff = |f: &mut fmt::Formatter<'_>, c: &T| -> fmt::Result {
        if c.abs().is_one() {
            Ok(())
        } else {
            write!(f, "{}", c.abs())
        }
    };
    if x.is_zero() {
        if y.is_negative() {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{x}")?;
        write!(f, "{}", if y.is_negative() { "-" } else { "+" })?;
    }
    coeff(f, y)?;
    write!(f, "ω")
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.x, &self.y)
    }
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadRing {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::Validation(format!("d = {d} must be negative")));
        }
        if !is_squarefree(d) {
            return Err(Error::Validation(format!("d = {d} is not squarefree")));
        }
        Ok(QuadRing { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// True when ω = (1 + √d)/2.
    pub fn half_integral(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    pub fn discriminant(&self) -> i64 {
        if self.half_integral() {
            self.d
        } else {
            4 * self.d
        }
    }

    /// ω² = c0 + c1·ω.
    pub fn omega_square(&self) -> (BigInt, BigInt) {
        if self.half_integral() {
            (BigInt::from((self.d - 1) / 4), BigInt::one())
        } else {
            (BigInt::from(self.d), BigInt::zero())
        }
    }

    pub fn is_euclidean(&self) -> bool {
        EUCLIDEAN_D.contains(&self.d)
    }

    pub fn elem(&self, x: i64, y: i64) -> QuadElem {
        QuadElem::new(x, y)
    }

    pub fn omega(&self) -> QuadElem {
        QuadElem::new(0, 1)
    }

    pub fn norm(&self, e: &QuadElem) -> BigInt {
        let (c0, c1) = self.omega_square();
        &e.x * &e.x + c1 * &e.x * &e.y - c0 * &e.y * &e.y
    }

    pub fn trace(&self, e: &QuadElem) -> BigInt {
        let (_, c1) = self.omega_square();
        BigInt::from(2) * &e.x + c1 * &e.y
    }

    pub fn conj(&self, e: &QuadElem) -> QuadElem {
        let (_, c1) = self.omega_square();
        QuadElem { x: &e.x + c1 * &e.y, y: -&e.y }
    }

    pub fn scale(&self, e: &QuadElem, k: &BigInt) -> QuadElem {
        QuadElem { x: &e.x * k, y: &e.y * k }
    }

    /// The unit group: {±1}, plus ±i for d = −1 and the sixth roots for d = −3.
    pub fn units(&self) -> Vec<QuadElem> {
        let mut out = vec![QuadElem::new(1, 0), QuadElem::new(-1, 0)];
        match self.d {
            -1 => out.extend([QuadElem::new(0, 1), QuadElem::new(0, -1)]),
            -3 => out.extend([
                QuadElem::new(0, 1),
                QuadElem::new(0, -1),
                QuadElem::new(1, -1),
                QuadElem::new(-1, 1),
            ]),
            _ => {}
        }
        out
    }

    /// Canonical associate c = e·u and the unit u used. Units map to 1;
    /// otherwise, among unit multiples whose first nonzero coordinate is
    /// positive, the lexicographically smallest (x, y) wins.
    pub fn canonical_associate(&self, e: &QuadElem) -> (QuadElem, QuadElem) {
        if e.is_zero() {
            return (e.clone(), QuadElem::new(1, 0));
        }
        if self.is_unit(e) {
            return (self.one(), self.div_exact(&self.one(), e).expect("unit"));
        }
        self.units()
            .into_iter()
            .map(|u| (self.mul(e, &u), u))
            .filter(|(c, _)| c.x.is_positive() || (c.x.is_zero() && c.y.is_positive()))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("some associate is sign-normalized")
    }

    pub fn exact_divide(&self, a: &QuadElem, b: &QuadElem) -> Result<QuadElem> {
        if b.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        self.div_exact(a, b)
            .ok_or_else(|| Error::NotDivisible(a.to_string(), b.to_string()))
    }

    /// a·conj(b)/N(b) in exact rational coordinates.
    pub fn quotient_in_field(&self, a: &QuadElem, b: &QuadElem) -> KElem {
        let n = self.norm(b);
        let num = self.mul(a, &self.conj(b));
        KElem {
            x: BigRational::new(num.x, n.clone()),
            y: BigRational::new(num.y, n),
        }
    }

    pub fn field(&self) -> QuadField {
        QuadField { ring: *self }
    }

    /// Enumerate all elements of norm exactly `n`, ordered by (x, y).
    pub fn elements_of_norm(&self, n: &BigInt) -> Vec<QuadElem> {
        let mut out = Vec::new();
        if n.is_negative() {
            return out;
        }
        if n.is_zero() {
            return vec![QuadElem::new(0, 0)];
        }
        let (_, c1) = self.omega_square();
        let absd = BigInt::from(-self.discriminant());
        // 4N = (2x + c1 y)² + |D| y²
        let four_n: BigInt = n * BigInt::from(4);
        let ymax: BigInt = (&four_n / &absd).sqrt();
        let mut y = -ymax.clone();
        while y <= ymax {
            let rest = &four_n - &absd * &y * &y;
            if !rest.is_negative() {
                let s = rest.sqrt();
                if &s * &s == rest {
                    for t in [-s.clone(), s.clone()] {
                        let two_x = &t - &c1 * &y;
                        if two_x.is_even() {
                            let e = QuadElem { x: two_x / 2, y: y.clone() };
                            if !out.contains(&e) {
                                out.push(e);
                            }
                        }
                    }
                }
            }
            y += 1;
        }
        out.sort();
        out
    }

    /// All nonzero elements of norm at most `bound`, ordered by (norm, x, y).
    pub fn elements_up_to_norm(&self, bound: &BigInt) -> Vec<(BigInt, QuadElem)> {
        let (_, c1) = self.omega_square();
        let absd = BigInt::from(-self.discriminant());
        let four_b: BigInt = bound * BigInt::from(4);
        let ymax: BigInt = (&four_b / &absd).sqrt();
        let mut out = Vec::new();
        let mut y = -ymax.clone();
        while y <= ymax {
            let rest = &four_b - &absd * &y * &y;
            if !rest.is_negative() {
                let s = rest.sqrt();
                // |2x + c1 y| <= s
                let lo = (-&s - &c1 * &y).div_ceil(&BigInt::from(2));
                let hi = (&s - &c1 * &y).div_floor(&BigInt::from(2));
                let mut x = lo;
                while x <= hi {
                    let e = QuadElem { x: x.clone(), y: y.clone() };
                    if !e.is_zero() {
                        let n = self.norm(&e);
                        if &n <= bound {
                            out.push((n, e));
                        }
                    }
                    x += 1;
                }
            }
            y += 1;
        }
        out.sort();
        out
    }
}

impl Ring for QuadRing {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem::new(0, 0)
    }
    fn one(&self) -> QuadElem {
        QuadElem::new(1, 0)
    }
    fn from_int(&self, n: &BigInt) -> QuadElem {
        QuadElem::int(n.clone())
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem { x: &a.x + &b.x, y: &a.y + &b.y }
    }
    fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem { x: &a.x - &b.x, y: &a.y - &b.y }
    }
    fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem { x: -&a.x, y: -&a.y }
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let (c0, c1) = self.omega_square();
        let yy = &a.y * &b.y;
        QuadElem {
            x: &a.x * &b.x + &c0 * &yy,
            y: &a.x * &b.y + &a.y * &b.x + &c1 * &yy,
        }
    }
    fn is_zero(&self, a: &QuadElem) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &QuadElem) -> bool {
        self.norm(a).is_one()
    }
    fn div_exact(&self, a: &QuadElem, b: &QuadElem) -> Option<QuadElem> {
        if b.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        let n = self.norm(b);
        let num = self.mul(a, &self.conj(b));
        if num.x.is_multiple_of(&n) && num.y.is_multiple_of(&n) {
            Some(QuadElem { x: num.x / &n, y: num.y / &n })
        } else {
            None
        }
    }
    fn render(&self, a: &QuadElem) -> String {
        a.to_string()
    }
}

fn round_half_up(r: &BigRational) -> BigInt {
    (r + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

impl EuclideanRing for QuadRing {
    fn div_rem(&self, a: &QuadElem, b: &QuadElem) -> (QuadElem, QuadElem) {
        let t = self.quotient_in_field(a, b);
        let (x0, y0) = (round_half_up(&t.x), round_half_up(&t.y));
        let mut best: Option<(BigInt, QuadElem, QuadElem)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                let q = QuadElem { x: &x0 + dx, y: &y0 + dy };
                let r = self.sub(a, &self.mul(&q, b));
                let n = self.norm(&r);
                if best.as_ref().map_or(true, |(bn, _, _)| &n < bn) {
                    best = Some((n, q, r));
                }
            }
        }
        let (_, q, r) = best.unwrap();
        (q, r)
    }
    fn size(&self, a: &QuadElem) -> BigInt {
        self.norm(a)
    }
    fn normalize(&self, a: &QuadElem) -> (QuadElem, QuadElem) {
        self.canonical_associate(a)
    }
}

/// Element of the fraction field, x + y·ω with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    pub x: BigRational,
    pub y: BigRational,
}

impl KElem {
    pub fn from_int(e: &QuadElem) -> Self {
        KElem {
            x: BigRational::from_integer(e.x.clone()),
            y: BigRational::from_integer(e.y.clone()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_integral(&self) -> Option<QuadElem> {
        self.is_integral()
            .then(|| QuadElem { x: self.x.to_integer(), y: self.y.to_integer() })
    }

    /// Least positive integer m with m·self integral.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.x, &self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    pub ring: QuadRing,
}

impl QuadField {
    pub fn norm(&self, e: &KElem) -> BigRational {
        let (c0, c1) = self.ring.omega_square();
        let (c0, c1) = (BigRational::from_integer(c0), BigRational::from_integer(c1));
        &e.x * &e.x + c1 * &e.x * &e.y - c0 * &e.y * &e.y
    }

    pub fn conj(&self, e: &KElem) -> KElem {
        let c1 = BigRational::from_integer(self.ring.omega_square().1);
        KElem { x: &e.x + c1 * &e.y, y: -&e.y }
    }
}

impl Ring for QuadField {
    type Elem = KElem;

    fn zero(&self) -> KElem {
        KElem { x: BigRational::zero(), y: BigRational::zero() }
    }
    fn one(&self) -> KElem {
        KElem { x: BigRational::one(), y: BigRational::zero() }
    }
    fn from_int(&self, n: &BigInt) -> KElem {
        KElem { x: BigRational::from_integer(n.clone()), y: BigRational::zero() }
    }
    fn add(&self, a: &KElem, b: &KElem) -> KElem {
        KElem { x: &a.x + &b.x, y: &a.y + &b.y }
    }
    fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        KElem { x: &a.x - &b.x, y: &a.y - &b.y }
    }
    fn neg(&self, a: &KElem) -> KElem {
        KElem { x: -&a.x, y: -&a.y }
    }
    fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let (c0, c1) = self.ring.omega_square();
        let (c0, c1) = (BigRational::from_integer(c0), BigRational::from_integer(c1));
        let yy = &a.y * &b.y;
        KElem {
            x: &a.x * &b.x + &c0 * &yy,
            y: &a.x * &b.y + &a.y * &b.x + &c1 * &yy,
        }
    }
    fn is_zero(&self, a: &KElem) -> bool {
        a.x.is_zero() && a.y.is_zero()
    }
    fn is_unit(&self, a: &KElem) -> bool {
        !self.is_zero(a)
    }
    fn div_exact(&self, a: &KElem, b: &KElem) -> Option<KElem> {
        if self.is_zero(b) {
            return None;
        }
        let n = self.norm(b);
        let num = self.mul(a, &self.conj(b));
        Some(KElem { x: num.x / &n, y: num.y / n })
    }
    fn render(&self, a: &KElem) -> String {
        a.to_string()
    }
}

impl Field for QuadField {}

#[cfg(test)]
mod tests {
    use super::*;

    fn r5() -> QuadRing {
        QuadRing::new(-5).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let r = r5();
        assert_eq!(r.norm(&r.elem(1, 1)), BigInt::from(6));
        assert_eq!(r.mul(&r.elem(2, 1), &r.elem(2, -1)), r.elem(9, 0));
        assert_eq!(r.exact_divide(&r.elem(9, 0), &r.elem(2, 1)).unwrap(), r.elem(2, -1));
        assert!(matches!(
            r.exact_divide(&r.elem(1, 0), &r.elem(2, 0)),
            Err(Error::NotDivisible(_, _))
        ));
        assert!(matches!(r.exact_divide(&r.elem(1, 0), &r.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn half_integral_convention() {
        let r = QuadRing::new(-23).unwrap();
        assert_eq!(r.discriminant(), -23);
        // ω² = ω − 6
        let w = r.omega();
        assert_eq!(r.mul(&w, &w), r.elem(-6, 1));
        assert_eq!(r.norm(&w), BigInt::from(6));
        assert_eq!(r.trace(&w), BigInt::from(1));
    }

    #[test]
    fn validation() {
        assert!(QuadRing::new(10).is_err());
        assert!(QuadRing::new(-12).is_err());
        assert!(QuadRing::new(-1).is_ok());
    }

    #[test]
    fn display() {
        let r = r5();
        assert_eq!(r.elem(8, -2).to_string(), "8-2ω");
        assert_eq!(r.elem(0, -1).to_string(), "-ω");
        assert_eq!(r.elem(1, 1).to_string(), "1+ω");
        assert_eq!(r.elem(3, 0).to_string(), "3");
    }

    #[test]
    fn units_and_associates() {
        let g = QuadRing::new(-1).unwrap();
        let (c, u) = g.canonical_associate(&g.elem(-1, -1));
        assert_eq!(g.mul(&g.elem(-1, -1), &u), c);
        assert_eq!(c, g.elem(1, -1));
        let e = QuadRing::new(-3).unwrap();
        for u in e.units() {
            assert!(e.is_unit(&u));
        }
        assert_eq!(e.units().len(), 6);
    }

    #[test]
    fn euclidean_division_shrinks() {
        for d in EUCLIDEAN_D {
            let r = QuadRing::new(d).unwrap();
            for (a, b) in [((17, 5), (3, 2)), ((-40, 9), (2, -3)), ((7, 7), (1, 2))] {
                let (a, b) = (r.elem(a.0, a.1), r.elem(b.0, b.1));
                let (q, rem) = r.div_rem(&a, &b);
                assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
                assert!(r.norm(&rem) < r.norm(&b), "d={d}");
            }
        }
    }

    #[test]
    fn norm_enumeration() {
        let r = r5();
        assert_eq!(r.elements_of_norm(&BigInt::from(2)), vec![]);
        assert_eq!(r.elements_of_norm(&BigInt::from(6)).len(), 4);
        let all = r.elements_up_to_norm(&BigInt::from(9));
        assert!(all.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(all[0].1, r.elem(-1, 0));
    }
}
