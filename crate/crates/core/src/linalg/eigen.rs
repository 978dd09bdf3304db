//! Eigenvalues in the base field by integral root search.

use num_bigint::BigInt;

use super::charpoly::charpoly;
use super::matrix::{self, Matrix};
use super::poly;
use crate::arith::DEFAULT_TRIAL_BOUND;
use crate::error::Result;
use crate::order::{common_denominator, GlobalField};

#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<E> {
    pub value: E,
    /// Algebraic multiplicity.
    pub mult: usize,
    /// Basis of ker(M − λI) over the field.
    pub kernel: Vec<Vec<E>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenData<E> {
    pub charpoly: Vec<E>,
    /// Eigenvalues in ascending order.
    pub eigen: Vec<Eigen<E>>,
    /// Monic factor of the characteristic polynomial without roots in the field.
    pub residual: Vec<E>,
}

impl<E: Clone> EigenData<E> {
    pub fn split(&self) -> bool {
        self.residual.len() == 1
    }

    pub fn distinct(&self) -> bool {
        self.split() && self.eigen.iter().all(|e| e.mult == 1)
    }

    /// Eigenvalues repeated by multiplicity.
    pub fn with_multiplicity(&self) -> Vec<E> {
        self.eigen.iter().flat_map(|e| std::iter::repeat(e.value.clone()).take(e.mult)).collect()
    }
}

/// Roots in the field of a monic polynomial, ascending, without multiplicity.
pub fn field_roots<F: GlobalField>(f: &F, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let g = poly::squarefree_part(f, p);
    let Some(deg) = poly::degree(f, &g) else { return Ok(vec![]) };
    if deg == 0 {
        return Ok(vec![]);
    }
    // h(y) = m^deg · g(y/m) is monic with integral coefficients.
    let m = common_denominator(f, &g);
    let mm = f.from_int(&m);
    let mut h = Vec::with_capacity(deg + 1);
    let mut pw = f.one();
    for i in (0..=deg).rev() {
        h.push(f.mul(&g[i], &pw));
        pw = f.mul(&pw, &mm);
    }
    h.reverse();
    let mut roots = Vec::new();
    let mut h = h;
    if f.is_zero(&h[0]) {
        roots.push(f.zero());
        h = poly::div_linear(f, &h, &f.zero()).0;
    }
    if poly::degree(f, &h).unwrap_or(0) > 0 {
        // Cauchy: |ρ| ≤ 1 + max|h_i|, so N(ρ) ≤ (1 + max √N(h_i))².
        let maxn = h.iter().map(|c| f.abs_norm(c)).max().unwrap();
        let root_bound: BigInt = maxn.to_integer().sqrt() + 2u32;
        let norm_bound = &root_bound * &root_bound;
        for c in f.root_candidates(&h[0], &norm_bound, DEFAULT_TRIAL_BOUND)? {
            if f.is_zero(&poly::eval(f, &h, &c)) {
                roots.push(c);
            }
        }
    }
    let mut out: Vec<F::Elem> = roots.iter().map(|r| f.div_exact(r, &mm).unwrap()).collect();
    out.sort_by(|a, b| f.cmp_elem(a, b));
    out.dedup();
    Ok(out)
}

/// Eigenvalues, multiplicities and eigenspaces of a square matrix over a field.
pub fn split_eigenvalues<F: GlobalField>(f: &F, m: &Matrix<F::Elem>) -> Result<EigenData<F::Elem>> {
    let cp = charpoly(f, m)?;
    let mut rest = cp.clone();
    let mut eigen = Vec::new();
    for lambda in field_roots(f, &cp)? {
        let mut mult = 0;
        loop {
            let (q, r) = poly::div_linear(f, &rest, &lambda);
            if !f.is_zero(&r) {
                break;
            }
            rest = q;
            mult += 1;
        }
        let kernel = matrix::kernel(f, &matrix::shift(f, m, &lambda));
        eigen.push(Eigen { value: lambda, mult, kernel });
    }
    let out = EigenData { charpoly: cp, eigen, residual: rest };
    debug_assert_eq!(
        poly::mul(f, &poly::from_roots(f, &out.with_multiplicity()), &out.residual),
        out.charpoly
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_ring::{KElem, QuadElem, QuadRing};
    use crate::ring::{Rationals, Ring};
    use num_rational::BigRational;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn rational_roots() {
        let f = Rationals;
        assert_eq!(field_roots(&f, &[q(6), q(-5), q(1)]).unwrap(), vec![q(2), q(3)]);
        assert!(field_roots(&f, &[q(1), q(0), q(1)]).unwrap().is_empty());
        let half = BigRational::new(1.into(), 2.into());
        // (x − 1/2)(x + 3)
        let p = poly::from_roots(&f, &[half.clone(), q(-3)]);
        assert_eq!(field_roots(&f, &p).unwrap(), vec![q(-3), half]);
    }

    #[test]
    fn eigen_data() {
        let f = Rationals;
        let m = Matrix::from_rows(vec![vec![q(0), q(2)], vec![q(3), q(5)]]);
        let e = split_eigenvalues(&f, &m).unwrap();
        assert!(e.split());
        assert_eq!(e.eigen.iter().map(|x| x.value.clone()).collect::<Vec<_>>(), vec![q(-1), q(6)]);
        let rot = Matrix::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        assert!(!split_eigenvalues(&f, &rot).unwrap().split());
        let j = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
        let e = split_eigenvalues(&f, &j).unwrap();
        assert_eq!(e.eigen[0].mult, 2);
        assert_eq!(e.eigen[0].kernel.len(), 1);
    }

    #[test]
    fn quadratic_roots() {
        let r = QuadRing::new(-5).unwrap();
        let k = r.field();
        let k8 = KElem::from_int(&QuadElem::new(8, -2));
        let p = poly::from_roots(&k, &[k.zero(), k8.clone()]);
        assert_eq!(field_roots(&k, &p).unwrap(), vec![k.zero(), k8]);
    }
}
