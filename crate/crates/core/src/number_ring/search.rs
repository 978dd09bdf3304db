//! Bounded deterministic element searches.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::ideal::{PrimeIdeal, QuadIdeal};
use super::quad::{QuadElem, QuadRing};
use crate::error::{Error, Result};
use crate::linalg::normal_form::solve_left;
use crate::linalg::Matrix;
use crate::ring::{Integers, Ring};

/// Default norm bound for `find_element_with_split`.
pub const DEFAULT_NORM_BOUND: u64 = 100_000;

impl QuadRing {
    /// The first element e of `fixed`, in (norm, x, y) order and taken as its
    /// canonical associate, with (e) = fixed·Q for a prime Q outside `avoid`
    /// whose rational prime does not divide N(fixed).
    pub fn find_element_with_split(
        &self,
        fixed: &QuadIdeal,
        avoid: &[PrimeIdeal],
        norm_bound: &BigInt,
    ) -> Result<(QuadElem, PrimeIdeal)> {
        if !fixed.is_integral() {
            return Err(Error::Precondition(format!("{fixed} is not integral")));
        }
        let nf = fixed.norm_int();
        let inv = self.ideal_inv(fixed);
        let mut seen: Vec<QuadElem> = Vec::new();
        for (n, e) in self.elements_up_to_norm(norm_bound) {
            if !n.is_multiple_of(&nf) || !self.contains(fixed, &e) {
                continue;
            }
            let e = self.canonical_associate(&e).0;
            if seen.contains(&e) {
                continue;
            }
            seen.push(e.clone());
            let cof = self.ideal_mul(&self.principal(&e)?, &inv);
            let Some(q) = self.as_prime(&cof) else { continue };
            if avoid.contains(&q) || nf.is_multiple_of(&q.p) {
                continue;
            }
            return Ok((e, q));
        }
        Err(Error::SearchExhausted { bound: norm_bound.to_string() })
    }

    /// (α, β) with u·α + v·β = target, found in the ℤ-lattice spanned by
    /// u, uω, v, vω.
    pub fn solve_generation(
        &self,
        u: &QuadElem,
        v: &QuadElem,
        target: &QuadElem,
    ) -> Result<(QuadElem, QuadElem)> {
        if u.is_zero() || v.is_zero() || target.is_zero() {
            return Err(Error::Precondition("u, v and target must be nonzero".into()));
        }
        if let Some(a) = self.div_exact(target, u) {
            return Ok((a, self.zero()));
        }
        if let Some(b) = self.div_exact(target, v) {
            return Ok((self.zero(), b));
        }
        let w = self.omega();
        let gens = [u.clone(), self.mul(u, &w), v.clone(), self.mul(v, &w)];
        let lat = Matrix::from_rows(gens.iter().map(|g| vec![g.x.clone(), g.y.clone()]).collect());
        let z = Integers;
        let Some((mut k, kernel)) = solve_left(&z, &lat, &[target.x.clone(), target.y.clone()])
        else {
            let ideal = self.ideal(&[u.clone(), v.clone()])?;
            return Err(Error::Unsolvable { ideal: ideal.to_string() });
        };
        // Greedy size reduction against the kernel.
        let size = |k: &[BigInt]| k.iter().map(|x| x * x).fold(BigInt::zero(), |a, b| a + b);
        loop {
            let mut improved = false;
            for kv in &kernel {
                for sign in [1i64, -1] {
                    let cand: Vec<BigInt> =
                        k.iter().zip(kv).map(|(a, b)| a + BigInt::from(sign) * b).collect();
                    if size(&cand) < size(&k) {
                        k = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        let alpha = QuadElem { x: k[0].clone(), y: k[1].clone() };
        let beta = QuadElem { x: k[2].clone(), y: k[3].clone() };
        let check = self.add(&self.mul(u, &alpha), &self.mul(v, &beta));
        if &check != target {
            return Err(Error::Consistency("generation solution does not verify".into()));
        }
        Ok((alpha, beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r5() -> QuadRing {
        QuadRing::new(-5).unwrap()
    }

    #[test]
    fn split_search_examples() {
        let r = r5();
        let p2 = r.primes_over(&2.into())[0].clone();
        let p3 = r.primes_over(&3.into())[0].clone();
        let (e, q) = r.find_element_with_split(&p2.ideal, &[], &BigInt::from(1000)).unwrap();
        assert_eq!(e, r.elem(1, 1));
        assert_eq!(q, p3);
        let (e, q) = r.find_element_with_split(&p3.ideal, &[p2.clone()], &BigInt::from(1000)).unwrap();
        assert_eq!(e, r.elem(4, 1));
        assert_eq!(q.norm(), BigInt::from(7));
        let all = r.primes_up_to_norm(50);
        match r.find_element_with_split(&QuadIdeal::unit(), &all, &BigInt::from(50)) {
            Err(Error::SearchExhausted { bound }) => assert_eq!(bound, "50"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generation_examples() {
        let r = r5();
        assert_eq!(
            r.solve_generation(&r.elem(2, 0), &r.elem(1, 1), &r.elem(2, 0)).unwrap(),
            (r.elem(1, 0), r.elem(0, 0))
        );
        assert_eq!(
            r.solve_generation(&r.elem(3, 0), &r.elem(1, 1), &r.elem(6, 0)).unwrap(),
            (r.elem(2, 0), r.elem(0, 0))
        );
        assert!(matches!(
            r.solve_generation(&r.elem(2, 0), &r.elem(1, 1), &r.elem(2, -1)),
            Err(Error::Unsolvable { .. })
        ));
        let (a, b) = r.solve_generation(&r.elem(3, 0), &r.elem(1, 1), &r.elem(4, 1)).unwrap();
        assert_eq!(r.add(&r.mul(&r.elem(3, 0), &a), &r.mul(&r.elem(1, 1), &b)), r.elem(4, 1));
    }
}
