//! Triangularization over global fields and global rings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::decision::{verify_tri_witness, Certificate, ContentClass, Decision};
use super::{
    descending, eigen_over, integral_eigenvectors, integral_poly, lower_block, map_decision, minor_ideal, stack_block,
    MAX_DEDEKIND_N,
};
use crate::error::{Error, Result};
use crate::linalg::eigen::split_eigenvalues;
use crate::linalg::lattice::{primitive_part, unimodular_complete};
use crate::linalg::matrix::{self, Matrix};
use crate::linalg::normal_form::solve_left;
use crate::number_ring::{QuadElem, QuadRing};
use crate::order::{clear_denominators, GlobalField, Order};
use crate::ring::{Integers, Ring};

/// Triangularize over a field by peeling off one eigenvector at a time.
pub fn tri_over_field<F: GlobalField>(f: &F, m: &Matrix<F::Elem>) -> Result<Decision<F::Elem>> {
    matrix::require_square(m)?;
    let eig = split_eigenvalues(f, m)?;
    if !eig.split() {
        return Ok(Decision::no(Some(Certificate::NonSplitFactor { factor: eig.residual })));
    }
    let t = if matrix::is_upper_triangular(f, m) {
        matrix::identity(f, m.rows())
    } else {
        schur_field(f, m, &descending(f, &eig))
    };
    if !verify_tri_witness(f, m, &t) {
        return Err(Error::Consistency("field triangularization witness fails".into()));
    }
    Ok(Decision::yes(Some(t)))
}

fn schur_field<F: GlobalField>(f: &F, b: &Matrix<F::Elem>, vals: &[F::Elem]) -> Matrix<F::Elem> {
    let n = b.rows();
    if n == 1 {
        return matrix::identity(f, 1);
    }
    let ker = matrix::kernel(f, &matrix::shift(f, b, &vals[0]));
    let c = Matrix::from_cols(&matrix::extend_to_basis(f, &ker[..1], n));
    let conj = matrix::conjugate(f, b, &c).expect("basis is invertible");
    let inner = schur_field(f, &lower_block(&conj), &vals[1..]);
    stack_block(f, &c, &inner)
}

/// Triangularize over ℤ or a quadratic order.
///
/// In PID mode the witness has determinant exactly 1. Non-PID orders are
/// handled for distinct eigenvalues by searching orderings whose eigenvector
/// lattices are free at every step.
pub fn tri_over_ring<O: Order>(o: &O, m: &Matrix<O::Elem>) -> Result<Decision<O::Elem>> {
    let f = o.frac();
    let eig = eigen_over(o, m)?;
    if !eig.split() {
        let factor = integral_poly(o, &eig.residual)?;
        return Ok(Decision::no(Some(Certificate::NonSplitFactor { factor })));
    }
    let vals: Vec<O::Elem> = descending(&f, &eig).iter().map(|v| o.integral(v).expect("integral eigenvalue")).collect();
    if o.pid_mode() {
        let t = if matrix::is_upper_triangular(o, m) { matrix::identity(o, m.rows()) } else { pid_recurse(o, m, &vals)? };
        if !verify_tri_witness(o, m, &t) || matrix::det(o, &t) != o.one() {
            return Err(Error::Consistency("ring triangularization witness fails".into()));
        }
        return Ok(Decision::yes(Some(t)));
    }
    let ring = o.quad().ok_or_else(|| Error::Consistency("non-PID order without quadratic structure".into()))?;
    if !eig.distinct() {
        return Ok(Decision::unsupported(format!("repeated eigenvalues over the non-PID ring {}", o.label())));
    }
    if m.rows() > MAX_DEDEKIND_N {
        return Ok(Decision::unsupported(format!("n = {} exceeds {MAX_DEDEKIND_N} in Dedekind mode", m.rows())));
    }
    let mq = m.map(|e| o.to_quad(e));
    let vq: Vec<QuadElem> = vals.iter().map(|v| o.to_quad(v)).collect();
    let d = dedekind_tri(&ring, &mq, &vq)?;
    Ok(map_decision(d, |e| o.from_quad(e)))
}

fn pid_recurse<O: Order>(o: &O, b: &Matrix<O::Elem>, vals: &[O::Elem]) -> Result<Matrix<O::Elem>> {
    let n = b.rows();
    if n == 1 {
        return Ok(matrix::identity(o, 1));
    }
    let f = o.frac();
    let bk = b.map(|e| o.embed(e));
    let ker = matrix::kernel(&f, &matrix::shift(&f, &bk, &o.embed(&vals[0])));
    let v = primitive_part(o, &clear_denominators(o, &ker[0]));
    let c = unimodular_complete(o, &v)?;
    let conj = matrix::conjugate(o, b, &c).ok_or_else(|| Error::Consistency("completion is not unimodular".into()))?;
    let inner = pid_recurse(o, &lower_block(&conj), &vals[1..])?;
    Ok(stack_block(o, &c, &inner))
}

/// Feasibility of eigenvalue orderings in a Dedekind domain.
///
/// The span of the first i columns of a triangularizing T is the span of
/// eigenvectors for the first i eigenvalues, so T exists for an ordering iff
/// each saturated lattice E_S ∩ Oⁿ along the chain is free, i.e. the ideal of
/// maximal minors of [u_j]_{j∈S} is principal.
pub struct ChainSearch<'a> {
    ring: &'a QuadRing,
    vectors: &'a [Vec<QuadElem>],
    free: HashMap<u32, bool>,
    completes: HashMap<u32, bool>,
}

impl<'a> ChainSearch<'a> {
    pub fn new(ring: &'a QuadRing, vectors: &'a [Vec<QuadElem>]) -> Self {
        ChainSearch { ring, vectors, free: HashMap::new(), completes: HashMap::new() }
    }

    fn full(&self) -> u32 {
        (1u32 << self.vectors.len()) - 1
    }

    fn cols(&self, mask: u32) -> Vec<Vec<QuadElem>> {
        (0..self.vectors.len()).filter(|j| mask >> j & 1 == 1).map(|j| self.vectors[j].clone()).collect()
    }

    pub fn is_free(&mut self, mask: u32) -> Result<bool> {
        if mask == 0 || mask == self.full() {
            return Ok(true);
        }
        if let Some(&b) = self.free.get(&mask) {
            return Ok(b);
        }
        let b = self.ring.is_principal_class(&minor_ideal(self.ring, &self.cols(mask))?);
        self.free.insert(mask, b);
        Ok(b)
    }

    fn can_complete(&mut self, mask: u32) -> Result<bool> {
        if mask == self.full() {
            return Ok(true);
        }
        if let Some(&b) = self.completes.get(&mask) {
            return Ok(b);
        }
        let mut ok = false;
        for j in 0..self.vectors.len() {
            let next = mask | 1 << j;
            if next != mask && self.is_free(next)? && self.can_complete(next)? {
                ok = true;
                break;
            }
        }
        self.completes.insert(mask, ok);
        Ok(ok)
    }

    /// First feasible ordering, preferring lower indices at each step.
    pub fn ordering(&mut self) -> Result<Option<Vec<usize>>> {
        if !self.can_complete(0)? {
            return Ok(None);
        }
        let mut mask = 0u32;
        let mut order = Vec::new();
        while mask != self.full() {
            let j = (0..self.vectors.len())
                .find(|&j| {
                    let next = mask | 1 << j;
                    next != mask && self.is_free(next).unwrap_or(false) && self.can_complete(next).unwrap_or(false)
                })
                .ok_or_else(|| Error::Consistency("chain search lost its path".into()))?;
            order.push(j);
            mask |= 1 << j;
        }
        Ok(Some(order))
    }

    /// Proper nonempty index sets whose eigenvector lattice is not free.
    pub fn blocked(&mut self) -> Result<Vec<(Vec<usize>, crate::number_ring::QuadIdeal)>> {
        let mut out = Vec::new();
        for mask in 1..self.full() {
            if !self.is_free(mask)? {
                let idx: Vec<usize> = (0..self.vectors.len()).filter(|j| mask >> j & 1 == 1).collect();
                out.push((idx, minor_ideal(self.ring, &self.cols(mask))?));
            }
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }
}

/// Dedekind-mode decider for distinct eigenvalues given in search order.
pub fn dedekind_tri(ring: &QuadRing, m: &Matrix<QuadElem>, vals: &[QuadElem]) -> Result<Decision<QuadElem>> {
    let us = integral_eigenvectors(ring, m, vals)?;
    let mut search = ChainSearch::new(ring, &us);
    let Some(order) = search.ordering()? else {
        let classes = vals
            .iter()
            .zip(&us)
            .map(|(lam, u)| {
                let content = ring.ideal(&u.iter().filter(|e| !e.is_zero()).cloned().collect::<Vec<_>>())?;
                let class = ring.class_representative(&content);
                Ok(ContentClass { eigenvalue: lam.clone(), content, class })
            })
            .collect::<Result<Vec<_>>>()?;
        let blocked = search.blocked()?;
        return Ok(Decision::no(Some(Certificate::ContentClassObstruction { classes, blocked })));
    };
    let mut cols: Vec<Vec<QuadElem>> = Vec::new();
    for &j in &order {
        let t = lift_column(ring, &cols, &us[j])?;
        cols.push(t);
    }
    let t = Matrix::from_cols(&cols);
    if !verify_tri_witness(ring, m, &t) {
        return Err(Error::Consistency("Dedekind triangularization witness fails".into()));
    }
    Ok(Decision::yes(Some(t)))
}

/// Independent recheck of a ContentClassObstruction: eigenvectors and their
/// contents are recomputed from M, every blocked index set must have a
/// non-principal minor ideal, and no ordering may exist.
pub fn recheck_content_obstruction(
    ring: &QuadRing,
    m: &Matrix<QuadElem>,
    classes: &[ContentClass<QuadElem>],
    blocked: &[(Vec<usize>, crate::number_ring::QuadIdeal)],
) -> Result<bool> {
    let vals: Vec<QuadElem> = classes.iter().map(|c| c.eigenvalue.clone()).collect();
    let us = integral_eigenvectors(ring, m, &vals)?;
    for (c, u) in classes.iter().zip(&us) {
        let content = crate::linalg::lattice::content_ideal(ring, u)?;
        if content != c.content || ring.class_representative(&content) != c.class {
            return Ok(false);
        }
    }
    if blocked.iter().any(|(_, i)| ring.is_principal_class(i)) {
        return Ok(false);
    }
    let mut search = ChainSearch::new(ring, &us);
    Ok(search.ordering()?.is_none() && search.blocked()? == blocked)
}

/// A vector t in span(prefix, u) ∩ Oⁿ such that the maximal minors of
/// [prefix, t] generate the unit ideal, assuming that ideal class is trivial.
pub(crate) fn lift_column(ring: &QuadRing, prefix: &[Vec<QuadElem>], u: &[QuadElem]) -> Result<Vec<QuadElem>> {
    let mut all = prefix.to_vec();
    all.push(u.to_vec());
    let j = minor_ideal(ring, &all)?;
    let g = ring.generator(&j)?.ok_or_else(|| Error::Consistency(format!("minor ideal {j} is not principal")))?;
    let gbar = ring.conj(&g);
    let w: Vec<QuadElem> = u.iter().map(|e| ring.mul(&gbar, e)).collect();
    let dn = ring.norm(&g);
    // Solve w + Σ b_j·t_j ≡ 0 mod N(g) coordinatewise over ℤ.
    let n = u.len();
    let coords = |v: &[QuadElem]| -> Vec<BigInt> { v.iter().flat_map(|e| [e.x.clone(), e.y.clone()]).collect() };
    let omega = ring.omega();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for t in prefix {
        rows.push(coords(t));
        rows.push(coords(&t.iter().map(|e| ring.mul(&omega, e)).collect::<Vec<_>>()));
    }
    for k in 0..2 * n {
        let mut r = vec![BigInt::zero(); 2 * n];
        r[k] = dn.clone();
        rows.push(r);
    }
    let target: Vec<BigInt> = coords(&w).iter().map(|x| -x).collect();
    let z = Integers;
    let mut t = w.clone();
    if !dn.is_one() {
        let (x, _) = solve_left(&z, &Matrix::from_rows(rows), &target)
            .ok_or_else(|| Error::Consistency("column lift has no solution".into()))?;
        for (i, p) in prefix.iter().enumerate() {
            let b = QuadElem { x: x[2 * i].clone(), y: x[2 * i + 1].clone() };
            for (slot, e) in t.iter_mut().zip(p) {
                *slot = ring.add(slot, &ring.mul(&b, e));
            }
        }
    }
    let dq = QuadElem::int(dn);
    t.iter().map(|e| ring.exact_divide(e, &dq)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;
    use num_rational::BigRational;

    fn z(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    fn q(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        Matrix::from_rows(rows).map(|&x| BigRational::from_integer(x.into()))
    }

    #[test]
    fn field_examples() {
        let f = Rationals;
        let d = tri_over_field(&f, &q(vec![vec![0, -1], vec![1, 0]])).unwrap();
        assert!(d.is_no());
        match d.certificate {
            Some(Certificate::NonSplitFactor { factor }) => {
                assert_eq!(crate::linalg::poly::render(&f, &factor), "x^2 + 1")
            }
            other => panic!("{other:?}"),
        }
        let m = q(vec![vec![0, 2], vec![3, 5]]);
        let t = tri_over_field(&f, &m).unwrap().witness.unwrap();
        let c = matrix::conjugate(&f, &m, &t).unwrap();
        assert_eq!(matrix::diagonal_entries(&c), q(vec![vec![6, -1]]).row(0));
        let m = q(vec![vec![1, 3], vec![0, 4]]);
        assert_eq!(tri_over_field(&f, &m).unwrap().witness.unwrap(), matrix::identity(&f, 2));
    }

    #[test]
    fn integer_examples() {
        let zz = Integers;
        let m = z(vec![vec![0, 2], vec![3, 5]]);
        let d = tri_over_ring(&zz, &m).unwrap();
        let t = d.witness.unwrap();
        assert_eq!(t, z(vec![vec![1, 0], vec![3, 1]]));
        assert_eq!(matrix::conjugate(&zz, &m, &t).unwrap(), z(vec![vec![6, 2], vec![0, -1]]));
        let d = tri_over_ring(&zz, &z(vec![vec![0, -1], vec![1, 0]])).unwrap();
        assert!(matches!(d.certificate, Some(Certificate::NonSplitFactor { .. })));
        let j = z(vec![vec![2, 1, 0], vec![0, 2, 1], vec![0, 0, 2]]);
        let t = tri_over_ring(&zz, &j).unwrap().witness.unwrap();
        assert_eq!(matrix::det(&zz, &t), BigInt::one());
    }

    #[test]
    fn quadratic_counterexample() {
        let r = QuadRing::new(-5).unwrap();
        let m = Matrix::from_rows(vec![vec![r.elem(4, -2), r.elem(2, 2)], vec![r.elem(-2, -2), r.elem(4, 0)]]);
        let d = tri_over_ring(&r, &m).unwrap();
        assert!(d.is_no());
        let Some(Certificate::ContentClassObstruction { classes, .. }) = d.certificate else { panic!() };
        let p2 = r.ideal(&[r.elem(2, 0), r.elem(1, 1)]).unwrap();
        assert_eq!(classes.len(), 2);
        for c in classes {
            assert_eq!(c.content, p2);
            assert!(!r.is_principal_class(&c.class));
        }
        let diag = Matrix::from_rows(vec![vec![r.elem(1, 0), r.elem(0, 0)], vec![r.elem(0, 0), r.elem(2, 0)]]);
        let d = tri_over_ring(&r, &diag).unwrap();
        assert!(verify_tri_witness(&r, &diag, d.witness.as_ref().unwrap()));
    }

    #[test]
    fn dedekind_lift_with_nontrivial_classes() {
        // Eigenvectors (2, 1+ω) and (1, 0): the first is blocked, the second
        // is unimodular and leaves a free quotient.
        let r = QuadRing::new(-5).unwrap();
        let n = Matrix::from_cols(&[vec![r.elem(1, 0), r.elem(0, 0)], vec![r.elem(2, 0), r.elem(1, 1)]]);
        let dn = matrix::det(&r, &n);
        let lam = [r.zero(), dn.clone()];
        let m = matrix::mul(&r, &matrix::mul(&r, &n, &matrix::diagonal(&r, &lam)), &matrix::adjugate(&r, &n));
        let m = m.map(|e| r.exact_divide(e, &dn).unwrap());
        let d = tri_over_ring(&r, &m).unwrap();
        assert!(d.is_yes(), "{d:?}");
        assert!(verify_tri_witness(&r, &m, d.witness.as_ref().unwrap()));
    }
}
