//! Saturation, unimodular completion and content ideals.

use num_bigint::BigInt;

use super::matrix::{self, Matrix};
use super::normal_form::{hnf, snf};
use crate::error::{Error, Result};
use crate::number_ring::{QuadIdeal, QuadRing};
use crate::order::{gcd, Order};
use crate::ring::{Integers, Ring};

fn require_pid<O: Order>(o: &O) -> Result<()> {
    if o.pid_mode() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} is not one of the Euclidean rings handled in PID mode",
            o.label()
        )))
    }
}

/// gcd of the coordinates, normalized.
pub fn content<O: Order>(o: &O, v: &[O::Elem]) -> O::Elem {
    v.iter().fold(o.zero(), |acc, e| gcd(o, &acc, e))
}

/// Divide a nonzero vector by its content.
pub fn primitive_part<O: Order>(o: &O, v: &[O::Elem]) -> Vec<O::Elem> {
    let g = content(o, v);
    v.iter().map(|e| o.div_exact(e, &g).expect("content divides")).collect()
}

/// Square matrix of determinant 1 whose first column is v.
pub fn unimodular_complete<O: Order>(o: &O, v: &[O::Elem]) -> Result<Matrix<O::Elem>> {
    require_pid(o)?;
    let n = v.len();
    if v.iter().all(|e| o.is_zero(e)) {
        return Err(Error::Content { content: "(0)".into() });
    }
    let g = content(o, v);
    if !o.is_unit(&g) {
        return Err(Error::Content { content: format!("({})", o.render(&g)) });
    }
    if n == 1 {
        return if v[0] == o.one() {
            Ok(Matrix::from_rows(vec![vec![o.one()]]))
        } else {
            Err(Error::Precondition("a 1x1 completion needs v = (1)".into()))
        };
    }
    let col = Matrix::from_cols(&[v.to_vec()]);
    let f = hnf(o, &col);
    // f.u · v = g·e₁ with g normalized to 1.
    let mut t = matrix::inverse(o, &f.u).ok_or_else(|| Error::Consistency("non-unimodular HNF transform".into()))?;
    let scale0 = f.h.get(0, 0).clone();
    for i in 0..n {
        let x = o.mul(t.get(i, 0), &scale0);
        t.set(i, 0, x);
    }
    let d = matrix::det(o, &t);
    let dinv = o.inv(&d).ok_or_else(|| Error::Consistency("determinant is not a unit".into()))?;
    for i in 0..n {
        let x = o.mul(t.get(i, 1), &dinv);
        t.set(i, 1, x);
    }
    // Reduce the other columns against v at its first nonzero coordinate.
    let p = v.iter().position(|e| !o.is_zero(e)).unwrap();
    for j in 1..n {
        let q = o.reduce_quotient(t.get(p, j), &v[p]);
        for i in 0..n {
            let x = o.sub(t.get(i, j), &o.mul(&q, &v[i]));
            t.set(i, j, x);
        }
    }
    debug_assert_eq!(t.col(0), v.to_vec());
    debug_assert_eq!(matrix::det(o, &t), o.one());
    Ok(t)
}

/// Basis of (span of `basis`) ∩ Oⁿ in Hermite normal form.
pub fn saturate<O: Order>(o: &O, basis: &[Vec<O::Elem>]) -> Result<Vec<Vec<O::Elem>>> {
    require_pid(o)?;
    let k = basis.len();
    if k == 0 {
        return Ok(vec![]);
    }
    let b = Matrix::from_cols(basis);
    let s = snf(o, &b);
    if s.diagonal().iter().take(k).any(|e| o.is_zero(e)) || s.diagonal().len() < k {
        return Err(Error::Rank);
    }
    let uinv = matrix::inverse(o, &s.u).ok_or_else(|| Error::Consistency("non-unimodular SNF transform".into()))?;
    let cols: Vec<Vec<O::Elem>> = (0..k).map(|j| uinv.col(j)).collect();
    let rows = Matrix::from_rows(cols);
    let h = hnf(o, &rows);
    Ok((0..k).map(|i| h.h.row(i)).collect())
}

/// True when Oⁿ / span(basis) is torsion-free.
pub fn is_saturated<O: Order>(o: &O, basis: &[Vec<O::Elem>]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let s = snf(o, &Matrix::from_cols(basis));
    let d = s.diagonal();
    d.len() >= basis.len() && d.iter().take(basis.len()).all(|e| o.is_unit(e))
}

/// The ideal generated by the coordinates of a quadratic vector.
pub fn content_ideal(ring: &QuadRing, v: &[<QuadRing as Ring>::Elem]) -> Result<QuadIdeal> {
    let gens: Vec<_> = v.iter().filter(|e| !e.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(Error::Domain("content of the zero vector".into()));
    }
    ring.ideal(&gens)
}

/// The content of an integer vector as a nonnegative gcd.
pub fn content_int(v: &[BigInt]) -> Result<BigInt> {
    let g = content(&Integers, v);
    if g == BigInt::from(0) {
        return Err(Error::Domain("content of the zero vector".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn completion_examples() {
        let z = Integers;
        assert_eq!(unimodular_complete(&z, &zv(&[1, 0, 0])).unwrap(), matrix::identity(&z, 3));
        assert_eq!(
            unimodular_complete(&z, &zv(&[2, 3])).unwrap(),
            Matrix::from_rows(vec![zv(&[2, 1]), zv(&[3, 2])])
        );
        match unimodular_complete(&z, &zv(&[2, 4])) {
            Err(Error::Content { content }) => assert_eq!(content, "(2)"),
            other => panic!("{other:?}"),
        }
        let r = QuadRing::new(-5).unwrap();
        assert!(matches!(unimodular_complete(&r, &[r.elem(1, 0)]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn saturation_examples() {
        let z = Integers;
        assert_eq!(
            saturate(&z, &[zv(&[2, 0, 0]), zv(&[0, 3, 0])]).unwrap(),
            vec![zv(&[1, 0, 0]), zv(&[0, 1, 0])]
        );
        assert_eq!(saturate(&z, &[zv(&[1, 1])]).unwrap(), vec![zv(&[1, 1])]);
        assert_eq!(saturate(&z, &[zv(&[2, 0])]).unwrap(), vec![zv(&[1, 0])]);
        assert!(matches!(saturate(&z, &[zv(&[1, 2]), zv(&[2, 4])]), Err(Error::Rank)));
    }

    #[test]
    fn contents() {
        assert_eq!(content_int(&zv(&[4, 6])).unwrap(), BigInt::from(2));
        let r = QuadRing::new(-5).unwrap();
        let i = content_ideal(&r, &[r.elem(2, 0), r.elem(1, 1)]).unwrap();
        assert_eq!(i, r.ideal(&[r.elem(2, 0), r.elem(1, 1)]).unwrap());
        assert_eq!(i.norm_int(), BigInt::from(2));
        assert_eq!(content_ideal(&r, &[r.elem(1, 1), r.elem(2, 0), r.elem(0, 0)]).unwrap(), i);
        assert!(content_ideal(&r, &[r.elem(0, 0)]).is_err());
    }
}
