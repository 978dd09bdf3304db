//! Pairing of a global ring (ℤ or a quadratic order) with its fraction field.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::divisors;
use crate::error::Result;
use crate::number_ring::{KElem, QuadElem, QuadField, QuadRing};
use crate::ring::{EuclideanRing, Field, Integers, Rationals, Ring};

pub trait GlobalField: Field {
    /// Least positive integer m with m·e integral.
    fn denominator(&self, e: &Self::Elem) -> BigInt;
    /// Total order used to make eigenvalue lists deterministic.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    /// Absolute norm.
    fn abs_norm(&self, e: &Self::Elem) -> BigRational;
    /// Integral elements whose norm divides N(c0) and is at most `norm_bound`.
    fn root_candidates(&self, c0: &Self::Elem, norm_bound: &BigInt, trial: u64) -> Result<Vec<Self::Elem>>;
}

impl GlobalField for Rationals {
    fn denominator(&self, e: &BigRational) -> BigInt {
        e.denom().clone()
    }
    fn cmp_elem(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
    fn abs_norm(&self, e: &BigRational) -> BigRational {
        e.abs()
    }
    fn root_candidates(&self, c0: &BigRational, norm_bound: &BigInt, trial: u64) -> Result<Vec<BigRational>> {
        let mut out = Vec::new();
        for d in divisors(&c0.to_integer(), trial)? {
            if &d > norm_bound {
                break;
            }
            out.push(BigRational::from_integer(d.clone()));
            out.push(BigRational::from_integer(-d));
        }
        Ok(out)
    }
}

impl GlobalField for QuadField {
    fn denominator(&self, e: &KElem) -> BigInt {
        e.denominator()
    }
    fn cmp_elem(&self, a: &KElem, b: &KElem) -> Ordering {
        a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
    }
    fn abs_norm(&self, e: &KElem) -> BigRational {
        self.norm(e)
    }
    fn root_candidates(&self, c0: &KElem, norm_bound: &BigInt, trial: u64) -> Result<Vec<KElem>> {
        let c0 = c0.to_integral().expect("integral constant term");
        let mut out = Vec::new();
        for n in divisors(&self.ring.norm(&c0), trial)? {
            if &n > norm_bound {
                break;
            }
            out.extend(self.ring.elements_of_norm(&n).iter().map(KElem::from_int));
        }
        Ok(out)
    }
}

/// ℤ or a quadratic order. PID-mode algorithms require `pid_mode()`.
pub trait Order: EuclideanRing {
    type F: GlobalField;
    fn frac(&self) -> Self::F;
    fn embed(&self, e: &Self::Elem) -> <Self::F as Ring>::Elem;
    fn integral(&self, e: &<Self::F as Ring>::Elem) -> Option<Self::Elem>;
    fn quad(&self) -> Option<QuadRing>;
    fn to_quad(&self, e: &Self::Elem) -> QuadElem;
    fn from_quad(&self, e: &QuadElem) -> Self::Elem;
    fn pid_mode(&self) -> bool;
    fn label(&self) -> String;
}

impl Order for Integers {
    type F = Rationals;
    fn frac(&self) -> Rationals {
        Rationals
    }
    fn embed(&self, e: &BigInt) -> BigRational {
        BigRational::from_integer(e.clone())
    }
    fn integral(&self, e: &BigRational) -> Option<BigInt> {
        e.is_integer().then(|| e.to_integer())
    }
    fn quad(&self) -> Option<QuadRing> {
        None
    }
    fn to_quad(&self, e: &BigInt) -> QuadElem {
        QuadElem::int(e.clone())
    }
    fn from_quad(&self, e: &QuadElem) -> BigInt {
        debug_assert!(e.y.is_zero());
        e.x.clone()
    }
    fn pid_mode(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        "Z".into()
    }
}

impl Order for QuadRing {
    type F = QuadField;
    fn frac(&self) -> QuadField {
        self.field()
    }
    fn embed(&self, e: &QuadElem) -> KElem {
        KElem::from_int(e)
    }
    fn integral(&self, e: &KElem) -> Option<QuadElem> {
        e.to_integral()
    }
    fn quad(&self) -> Option<QuadRing> {
        Some(*self)
    }
    fn to_quad(&self, e: &QuadElem) -> QuadElem {
        e.clone()
    }
    fn from_quad(&self, e: &QuadElem) -> QuadElem {
        e.clone()
    }
    fn pid_mode(&self) -> bool {
        self.is_euclidean()
    }
    fn label(&self) -> String {
        format!("O(sqrt({}))", self.d())
    }
}

/// Least common multiple of the denominators of a vector.
pub fn common_denominator<F: GlobalField>(f: &F, v: &[F::Elem]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::one(), |acc, e| acc.lcm(&f.denominator(e)))
}

/// Scale a field vector to an integral one by its common denominator.
pub fn clear_denominators<O: Order>(o: &O, v: &[<O::F as Ring>::Elem]) -> Vec<O::Elem> {
    let f = o.frac();
    let m = f.from_int(&common_denominator(&f, v));
    v.iter().map(|e| o.integral(&f.mul(e, &m)).expect("cleared")).collect()
}

/// Generic gcd over a Euclidean ring, normalized.
pub fn gcd<R: EuclideanRing>(r: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !r.is_zero(&b) {
        let (_, rem) = r.div_rem(&a, &b);
        a = b;
        b = rem;
    }
    r.normalize(&a).0
}

pub fn is_zero_vec<R: Ring>(r: &R, v: &[R::Elem]) -> bool {
    v.iter().all(|e| r.is_zero(e))
}
