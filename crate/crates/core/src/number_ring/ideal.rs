//! Fractional ideals in two-row normal form, prime ideals, valuations and
//! factorization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quad::{KElem, QuadElem, QuadRing};
use crate::arith::{ext_gcd, factor, valuation};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// The fractional ideal (1/den)·(a·ℤ + (b + c·ω)·ℤ).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub den: BigInt,
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = QuadElem { x: self.b.clone(), y: self.c.clone() };
        write!(f, "[{}, {}]", self.a, gen)?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

/// Two-dimensional integer HNF of a generating set of ℤ-vectors (x, y):
/// returns (a, b, c) with lattice = ℤ(a,0) + ℤ(b,c), or None for rank < 2.
fn hnf2(vecs: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut a = BigInt::zero();
    let mut v = (BigInt::zero(), BigInt::zero());
    for (wx, wy) in vecs {
        if wy.is_zero() {
            a = a.gcd(wx);
            continue;
        }
        if v.1.is_zero() {
            // v only ever has y = 0 before the first nonzero y arrives.
            a = a.gcd(&v.0);
            v = (wx.clone(), wy.clone());
            continue;
        }
        let (g, s, t) = ext_gcd(&v.1, wy);
        let nv = (&s * &v.0 + &t * wx, &s * &v.1 + &t * wy);
        let kx = (wy / &g) * &v.0 - (&v.1 / &g) * wx;
        a = a.gcd(&kx);
        v = nv;
    }
    if v.1.is_negative() {
        v = (-v.0, -v.1);
    }
    if a.is_zero() || v.1.is_zero() {
        return None;
    }
    let b = v.0.mod_floor(&a);
    Some((a, b, v.1))
}

impl QuadIdeal {
    pub fn unit() -> Self {
        QuadIdeal { a: BigInt::one(), b: BigInt::zero(), c: BigInt::one(), den: BigInt::one() }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit_ideal(&self) -> bool {
        *self == Self::unit()
    }

    /// Integral ℤ-basis of den·I.
    pub fn basis(&self) -> [QuadElem; 2] {
        [QuadElem::int(self.a.clone()), QuadElem { x: self.b.clone(), y: self.c.clone() }]
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(&self.a * &self.c, &self.den * &self.den)
    }

    /// Norm of an integral ideal.
    pub fn norm_int(&self) -> BigInt {
        debug_assert!(self.is_integral());
        &self.a * &self.c
    }

    fn reduce(a: BigInt, b: BigInt, c: BigInt, den: BigInt) -> Self {
        let g = c.gcd(&den);
        if g.is_one() {
            return QuadIdeal { a, b, c, den };
        }
        QuadIdeal { a: a / &g, b: b / &g, c: c / &g, den: den / &g }
    }
}

/// Ideal arithmetic bound to one quadratic ring.
impl QuadRing {
    /// The ideal generated over the order by integral elements.
    pub fn ideal(&self, gens: &[QuadElem]) -> Result<QuadIdeal> {
        self.ideal_scaled(gens, BigInt::one())
    }

    fn ideal_scaled(&self, gens: &[QuadElem], den: BigInt) -> Result<QuadIdeal> {
        let w = self.omega();
        let mut vecs = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            let gw = self.mul(g, &w);
            vecs.push((g.x.clone(), g.y.clone()));
            vecs.push((gw.x, gw.y));
        }
        let (a, b, c) =
            hnf2(&vecs).ok_or_else(|| Error::Domain("zero ideal".into()))?;
        Ok(QuadIdeal::reduce(a, b, c, den))
    }

    /// The fractional ideal generated by field elements.
    pub fn ideal_k(&self, gens: &[KElem]) -> Result<QuadIdeal> {
        let den = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
        let ints: Vec<QuadElem> = gens
            .iter()
            .map(|g| {
                let x = &g.x * BigRational::from_integer(den.clone());
                let y = &g.y * BigRational::from_integer(den.clone());
                QuadElem { x: x.to_integer(), y: y.to_integer() }
            })
            .collect();
        self.ideal_scaled(&ints, den)
    }

    pub fn principal(&self, e: &QuadElem) -> Result<QuadIdeal> {
        self.ideal(std::slice::from_ref(e))
    }

    pub fn ideal_mul(&self, i: &QuadIdeal, j: &QuadIdeal) -> QuadIdeal {
        let mut gens = Vec::with_capacity(4);
        for u in i.basis() {
            for v in j.basis() {
                gens.push(self.mul(&u, &v));
            }
        }
        self.ideal_scaled(&gens, &i.den * &j.den).expect("product of nonzero ideals")
    }

    pub fn ideal_add(&self, i: &QuadIdeal, j: &QuadIdeal) -> QuadIdeal {
        let l = i.den.lcm(&j.den);
        let si = &l / &i.den;
        let sj = &l / &j.den;
        let mut gens: Vec<QuadElem> = i.basis().iter().map(|e| self.scale(e, &si)).collect();
        gens.extend(j.basis().iter().map(|e| self.scale(e, &sj)));
        self.ideal_scaled(&gens, l).expect("sum of nonzero ideals")
    }

    pub fn ideal_pow(&self, i: &QuadIdeal, k: u32) -> QuadIdeal {
        let mut acc = QuadIdeal::unit();
        for _ in 0..k {
            acc = self.ideal_mul(&acc, i);
        }
        acc
    }

    pub fn ideal_conj(&self, i: &QuadIdeal) -> QuadIdeal {
        let gens: Vec<QuadElem> = i.basis().iter().map(|e| self.conj(e)).collect();
        self.ideal_scaled(&gens, i.den.clone()).expect("conjugate of nonzero ideal")
    }

    /// I⁻¹ = conj(I)/N(I).
    pub fn ideal_inv(&self, i: &QuadIdeal) -> QuadIdeal {
        let n = i.norm();
        let c = self.ideal_conj(i);
        self.ideal_scale_rational(&c, &(BigRational::one() / n))
    }

    pub fn ideal_div(&self, i: &QuadIdeal, j: &QuadIdeal) -> QuadIdeal {
        self.ideal_mul(i, &self.ideal_inv(j))
    }

    pub fn ideal_scale_rational(&self, i: &QuadIdeal, q: &BigRational) -> QuadIdeal {
        let gens: Vec<QuadElem> =
            i.basis().iter().map(|e| self.scale(e, q.numer())).collect();
        self.ideal_scaled(&gens, &i.den * q.denom()).expect("nonzero scale")
    }

    pub fn ideal_scale(&self, i: &QuadIdeal, e: &KElem) -> Result<QuadIdeal> {
        let p = self.ideal_k(std::slice::from_ref(e))?;
        Ok(self.ideal_mul(i, &p))
    }

    pub fn contains(&self, i: &QuadIdeal, e: &QuadElem) -> bool {
        let e = self.scale(e, &i.den);
        if !e.y.is_multiple_of(&i.c) {
            return false;
        }
        let k = &e.y / &i.c;
        (&e.x - k * &i.b).is_multiple_of(&i.a)
    }

    pub fn contains_k(&self, i: &QuadIdeal, e: &KElem) -> bool {
        let m = e.denominator();
        let num = QuadElem {
            x: (&e.x * BigRational::from_integer(m.clone())).to_integer(),
            y: (&e.y * BigRational::from_integer(m.clone())).to_integer(),
        };
        let scaled = self.ideal_scale_rational(i, &BigRational::from_integer(m));
        self.contains(&scaled, &num)
    }

    /// I ⊆ J.
    pub fn ideal_le(&self, i: &QuadIdeal, j: &QuadIdeal) -> bool {
        self.ideal_add(i, j) == *j
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub ideal: QuadIdeal,
    pub p: BigInt,
    /// Residue degree.
    pub f: u32,
    pub ramified: bool,
}

impl PrimeIdeal {
    /// Ramification index.
    pub fn e(&self) -> u32 {
        if self.ramified {
            2
        } else {
            1
        }
    }

    pub fn norm(&self) -> BigInt {
        num_traits::pow(self.p.clone(), self.f as usize)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

fn legendre_pow(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&((p - 1u32) / 2u32), p)
}

/// A square root of a modulo an odd prime p, if one exists.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == BigInt::from(2) {
        return Some(a);
    }
    if !legendre_pow(&a, p).is_one() {
        return None;
    }
    // Tonelli–Shanks.
    let mut q = p - 1u32;
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while legendre_pow(&z, p) != p - 1u32 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) / 2u32), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let b = c.modpow(&BigInt::from(1u64 << (m - i - 1)), p);
        r = (&r * &b) % p;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        m = i;
    }
    Some(r)
}

impl QuadRing {
    /// Roots of the minimal polynomial of ω modulo p, ascending.
    fn omega_roots_mod(&self, p: &BigInt) -> Vec<BigInt> {
        let (c0, c1) = self.omega_square();
        if *p == BigInt::from(2) {
            return (0..2)
                .map(BigInt::from)
                .filter(|r| (r * r - &c1 * r - &c0).mod_floor(p).is_zero())
                .collect();
        }
        let d = BigInt::from(self.d());
        let Some(s) = sqrt_mod_prime(&d, p) else { return vec![] };
        let inv2 = (p + 1u32) / 2u32;
        let mut roots: Vec<BigInt> = [s.clone(), -s]
            .iter()
            .map(|t| {
                if self.half_integral() {
                    ((BigInt::one() + t) * &inv2).mod_floor(p)
                } else {
                    t.mod_floor(p)
                }
            })
            .collect();
        roots.sort();
        roots.dedup();
        roots
    }

    /// The primes above a rational prime p, ordered by normal form.
    pub fn primes_over(&self, p: &BigInt) -> Vec<PrimeIdeal> {
        let roots = self.omega_roots_mod(p);
        let ramified = BigInt::from(self.discriminant()).is_multiple_of(p);
        let mut out: Vec<PrimeIdeal> = if roots.is_empty() {
            vec![PrimeIdeal {
                ideal: self.principal(&QuadElem::int(p.clone())).unwrap(),
                p: p.clone(),
                f: 2,
                ramified: false,
            }]
        } else {
            roots
                .iter()
                .map(|r| PrimeIdeal {
                    ideal: self
                        .ideal(&[QuadElem::int(p.clone()), QuadElem { x: -r, y: BigInt::one() }])
                        .unwrap(),
                    p: p.clone(),
                    f: 1,
                    ramified,
                })
                .collect()
        };
        out.sort();
        out.dedup();
        out
    }

    /// All primes of norm at most `bound`, ordered by (norm, normal form).
    pub fn primes_up_to_norm(&self, bound: u64) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = crate::arith::primes_up_to(bound)
            .into_iter()
            .flat_map(|p| self.primes_over(&BigInt::from(p)))
            .filter(|q| q.norm() <= BigInt::from(bound))
            .collect();
        out.sort_by(|a, b| a.norm().cmp(&b.norm()).then_with(|| a.cmp(b)));
        out
    }

    /// Exact P-adic valuation of a nonzero fractional ideal.
    pub fn ord_ideal(&self, i: &QuadIdeal, p: &PrimeIdeal) -> i64 {
        let den_ord = i64::from(p.e()) * i64::from(valuation(&i.den, to_u64(&p.p)));
        let mut j = QuadIdeal { den: BigInt::one(), ..i.clone() };
        let inv = self.ideal_inv(&p.ideal);
        let mut k = 0i64;
        while self.ideal_le(&j, &p.ideal) {
            j = self.ideal_mul(&j, &inv);
            k += 1;
        }
        k - den_ord
    }

    pub fn ord(&self, e: &QuadElem, p: &PrimeIdeal) -> Result<i64> {
        if e.is_zero() {
            return Err(Error::Domain("valuation of zero".into()));
        }
        Ok(self.ord_ideal(&self.principal(e)?, p))
    }

    pub fn ord_k(&self, e: &KElem, p: &PrimeIdeal) -> Result<i64> {
        if e.x.is_zero() && e.y.is_zero() {
            return Err(Error::Domain("valuation of zero".into()));
        }
        Ok(self.ord_ideal(&self.ideal_k(std::slice::from_ref(e))?, p))
    }

    /// Prime factorization of a nonzero integral ideal. Norms are factored by
    /// trial division up to `bound`.
    pub fn factor_ideal(&self, i: &QuadIdeal, bound: u64) -> Result<Vec<(PrimeIdeal, u32)>> {
        if !i.is_integral() {
            return Err(Error::Domain(format!("{i} is not integral")));
        }
        let mut out = Vec::new();
        for (p, _) in factor(&i.norm_int(), bound)? {
            for q in self.primes_over(&p) {
                let k = self.ord_ideal(i, &q);
                if k > 0 {
                    out.push((q, k as u32));
                }
            }
        }
        Ok(out)
    }

    pub fn factor_principal(&self, e: &QuadElem, bound: u64) -> Result<Vec<(PrimeIdeal, u32)>> {
        if e.is_zero() {
            return Err(Error::Domain("cannot factor zero".into()));
        }
        self.factor_ideal(&self.principal(e)?, bound)
    }

    pub fn product_of(&self, factors: &[(PrimeIdeal, u32)]) -> QuadIdeal {
        factors
            .iter()
            .fold(QuadIdeal::unit(), |acc, (q, k)| self.ideal_mul(&acc, &self.ideal_pow(&q.ideal, *k)))
    }

    /// Recognize a nonzero integral ideal as a prime.
    pub fn as_prime(&self, i: &QuadIdeal) -> Option<PrimeIdeal> {
        if !i.is_integral() || i.is_unit_ideal() {
            return None;
        }
        let n = i.norm_int();
        let p = if crate::arith::is_prime_u64(to_u64_or_zero(&n)) {
            n.clone()
        } else {
            let r = n.sqrt();
            if &r * &r != n || !crate::arith::is_prime_u64(to_u64_or_zero(&r)) {
                return None;
            }
            r
        };
        self.primes_over(&p).into_iter().find(|q| q.ideal == *i)
    }
}

fn to_u64(n: &BigInt) -> u64 {
    crate::arith::to_u64(n).expect("prime fits in u64")
}

fn to_u64_or_zero(n: &BigInt) -> u64 {
    crate::arith::to_u64(n).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r5() -> QuadRing {
        QuadRing::new(-5).unwrap()
    }

    fn ideal(r: &QuadRing, a: i64, b: i64, c: i64) -> QuadIdeal {
        let i = QuadIdeal { a: a.into(), b: b.into(), c: c.into(), den: 1.into() };
        assert_eq!(r.ideal(&i.basis()).unwrap(), i);
        i
    }

    #[test]
    fn normal_forms() {
        let r = r5();
        let p2 = r.ideal(&[r.elem(2, 0), r.elem(1, 1)]).unwrap();
        assert_eq!(p2, ideal(&r, 2, 1, 1));
        assert_eq!(r.ideal_mul(&p2, &p2), r.principal(&r.elem(2, 0)).unwrap());
        assert_eq!(r.principal(&r.elem(7, 0)).unwrap(), ideal(&r, 7, 0, 7));
        let p3 = r.ideal(&[r.elem(3, 0), r.elem(1, 1)]).unwrap();
        assert_eq!(p3, ideal(&r, 3, 1, 1));
        assert_eq!(r.ideal_conj(&p3), ideal(&r, 3, 2, 1));
    }

    #[test]
    fn primes_of_minus_five() {
        let r = r5();
        let over2 = r.primes_over(&2.into());
        assert_eq!(over2.len(), 1);
        assert!(over2[0].ramified);
        assert_eq!(over2[0].ideal, ideal(&r, 2, 1, 1));
        let over3 = r.primes_over(&3.into());
        assert_eq!(over3.iter().map(|q| q.ideal.clone()).collect::<Vec<_>>(),
                   vec![ideal(&r, 3, 1, 1), ideal(&r, 3, 2, 1)]);
        let over11 = r.primes_over(&11.into());
        assert_eq!(over11.len(), 1);
        assert_eq!(over11[0].f, 2);
    }

    #[test]
    fn inverse_and_fractional() {
        let r = r5();
        let p3 = r.primes_over(&3.into())[0].ideal.clone();
        let inv = r.ideal_inv(&p3);
        assert!(!inv.is_integral());
        assert!(r.ideal_mul(&p3, &inv).is_unit_ideal());
        assert_eq!(inv.norm(), BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn valuations_and_factorization() {
        let r = r5();
        let p2 = r.primes_over(&2.into())[0].clone();
        let p3 = r.primes_over(&3.into())[0].clone();
        assert_eq!(r.ord(&r.elem(1, 1), &p2).unwrap(), 1);
        assert_eq!(r.ord(&r.elem(2, 0), &p2).unwrap(), 2);
        assert_eq!(r.ord(&r.elem(5, 0), &p3).unwrap(), 0);
        assert!(r.ord(&r.zero(), &p2).is_err());
        let f = r.factor_principal(&r.elem(1, 1), 1000).unwrap();
        assert_eq!(f, vec![(p2.clone(), 1), (p3, 1)]);
        assert_eq!(r.factor_principal(&r.elem(2, 0), 1000).unwrap(), vec![(p2, 2)]);
        assert!(r.factor_principal(&r.one(), 1000).unwrap().is_empty());
        let half = KElem { x: BigRational::new(1.into(), 2.into()), y: BigRational::zero() };
        assert_eq!(r.ord_k(&half, &r.primes_over(&2.into())[0]).unwrap(), -2);
    }

    #[test]
    fn tonelli_shanks() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 10007] {
            let pb = BigInt::from(p);
            for a in 0..40u64 {
                let ab = BigInt::from(a);
                let brute = (0..p.min(200)).any(|x| (x * x) % p == a % p) || p > 200;
                match sqrt_mod_prime(&ab, &pb) {
                    Some(s) => assert_eq!((&s * &s - &ab).mod_floor(&pb), BigInt::zero()),
                    None => assert!(!brute || p > 200),
                }
            }
        }
    }
}
