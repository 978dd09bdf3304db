//! Ideal classes via reduced binary quadratic forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::ideal::QuadIdeal;
use super::quad::{KElem, QuadElem, QuadRing};
use crate::error::{Error, Result};

/// Largest |discriminant| accepted by `class_group`.
pub const DEFAULT_DISC_BOUND: i64 = 10_000_000;

/// Positive definite form a·x² + b·xy + c·y².
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Form {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        ab <= self.a
            && self.a <= self.c
            && (!(ab == self.a || self.a == self.c) || !self.b.is_negative())
    }

    /// The proper-equivalent reduced form.
    pub fn reduce(&self) -> Form {
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        loop {
            // Normalize b into (−a, a].
            let two_a = &a * 2;
            if b.abs() > a || b == -a.clone() {
                let k = (&a - &b).div_floor(&two_a);
                let nb = &b + &two_a * &k;
                c = &c + &k * (&b + &a * &k);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b.is_negative() {
                b = -b;
            }
            return Form { a, b, c };
        }
    }
}

/// All reduced forms of a negative discriminant, ordered by (a, b).
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    assert!(disc < 0 && disc.rem_euclid(4) <= 1);
    let dd = -disc;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= dd {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = Form::new(a, b, c);
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

impl QuadRing {
    /// The form N(x·A + y·β)/A attached to the primitive part [A, β] of an ideal.
    pub fn ideal_form(&self, i: &QuadIdeal) -> Form {
        let big_a = &i.a / &i.c;
        let beta = QuadElem { x: &i.b / &i.c, y: BigInt::one() };
        let nb = self.norm(&beta);
        Form { b: self.trace(&beta), c: nb / &big_a, a: big_a }
    }

    /// The ideal [a, (b + √D)/2] of a form.
    pub fn form_ideal(&self, f: &Form) -> QuadIdeal {
        let x = if self.half_integral() { (&f.b - 1) / 2 } else { &f.b / 2 };
        self.ideal(&[QuadElem::int(f.a.clone()), QuadElem { x, y: BigInt::one() }])
            .expect("form ideal is nonzero")
    }

    /// Canonical reduced representative of the class of I.
    pub fn class_representative(&self, i: &QuadIdeal) -> QuadIdeal {
        self.form_ideal(&self.ideal_form(i).reduce())
    }

    pub fn same_class(&self, i: &QuadIdeal, j: &QuadIdeal) -> bool {
        self.class_representative(i) == self.class_representative(j)
    }

    pub fn is_principal_class(&self, i: &QuadIdeal) -> bool {
        self.class_representative(i).is_unit_ideal()
    }

    /// Class number and reduced representatives, the trivial class first.
    pub fn class_group(&self, disc_bound: i64) -> Result<(usize, Vec<QuadIdeal>)> {
        let disc = self.discriminant();
        if -disc > disc_bound {
            return Err(Error::Capacity(format!(
                "|discriminant| {} exceeds the bound {disc_bound}",
                -disc
            )));
        }
        let reps: Vec<QuadIdeal> =
            reduced_forms(disc).iter().map(|f| self.form_ideal(f)).collect();
        Ok((reps.len(), reps))
    }

    pub fn class_number(&self) -> usize {
        reduced_forms(self.discriminant()).len()
    }

    /// A generator of an integral ideal, as a canonical associate, if one exists.
    pub fn generator(&self, i: &QuadIdeal) -> Result<Option<QuadElem>> {
        if !i.is_integral() {
            return Err(Error::Precondition(format!("{i} is not integral")));
        }
        let n = i.norm_int();
        for e in self.elements_of_norm(&n) {
            if self.contains(i, &e) {
                let g = self.canonical_associate(&e).0;
                debug_assert_eq!(self.principal(&g).as_ref(), Ok(i));
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// A generator of a fractional ideal, if principal.
    pub fn generator_k(&self, i: &QuadIdeal) -> Option<KElem> {
        let j = QuadIdeal { den: BigInt::one(), ..i.clone() };
        let g = self.generator(&j).ok()??;
        let den = num_rational::BigRational::from_integer(i.den.clone());
        let k = KElem::from_int(&g);
        Some(KElem { x: k.x / &den, y: k.y / den })
    }
}

/// Number of (a, b) with |b| ≤ a ≤ c reduced, recomputed by brute force over
/// small ranges. Used to cross-check `reduced_forms`.
pub fn class_number_brute(disc: i64) -> usize {
    let dd = -disc;
    let mut n = 0;
    for a in 1..=dd {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            n += 1;
        }
    }
    n
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        for (d, h) in [(-1, 1), (-2, 1), (-3, 1), (-5, 2), (-23, 3), (-14, 4), (-47, 5), (-71, 7)] {
            assert_eq!(QuadRing::new(d).unwrap().class_number(), h, "d={d}");
        }
        assert_eq!(reduced_forms(-20), vec![Form::new(1, 0, 5), Form::new(2, 2, 3)]);
        assert_eq!(
            reduced_forms(-23),
            vec![Form::new(1, 1, 6), Form::new(2, -1, 3), Form::new(2, 1, 3)]
        );
    }

    #[test]
    fn brute_agrees() {
        for disc in (-400..0).filter(|d: &i64| d.rem_euclid(4) <= 1) {
            assert_eq!(reduced_forms(disc).len(), class_number_brute(disc), "{disc}");
        }
    }

    #[test]
    fn principality() {
        let r = QuadRing::new(-5).unwrap();
        let p2 = r.ideal(&[r.elem(2, 0), r.elem(1, 1)]).unwrap();
        assert_eq!(r.generator(&p2).unwrap(), None);
        assert!(!r.is_principal_class(&p2));
        let sq = r.ideal_mul(&p2, &p2);
        assert_eq!(r.generator(&sq).unwrap(), Some(r.elem(2, 0)));
        assert!(r.is_principal_class(&sq));
        let seven = r.principal(&r.elem(7, 0)).unwrap();
        assert_eq!(r.generator(&seven).unwrap(), Some(r.elem(7, 0)));
        let p3 = r.ideal(&[r.elem(3, 0), r.elem(1, 1)]).unwrap();
        assert!(r.same_class(&p2, &p3));
        let inv = r.ideal_inv(&p3);
        assert!(r.same_class(&inv, &p2));
    }

    #[test]
    fn class_representative_is_invariant_under_principal_scaling() {
        let r = QuadRing::new(-23).unwrap();
        let p2 = r.primes_over(&2.into())[0].ideal.clone();
        let rep = r.class_representative(&p2);
        for e in [r.elem(3, 1), r.elem(-2, 5), r.elem(7, 0)] {
            let scaled = r.ideal_mul(&p2, &r.principal(&e).unwrap());
            assert_eq!(r.class_representative(&scaled), rep);
        }
        let sq = r.ideal_mul(&p2, &p2);
        assert!(!r.same_class(&sq, &p2));
        assert!(r.is_principal_class(&r.ideal_mul(&sq, &p2)));
    }
}
