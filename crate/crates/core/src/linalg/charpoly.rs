//! Characteristic polynomials by the division-free Berkowitz recurrence.

use super::matrix::{self, Matrix};
use super::poly;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Coefficients of det(x·I − M), lowest degree first; the last entry is 1.
pub fn berkowitz<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = a.rows();
    if n == 0 {
        return vec![r.one()];
    }
    // Highest degree first while accumulating.
    let mut v = vec![r.one(), r.neg(a.get(0, 0))];
    for k in 1..n {
        let mut t = Vec::with_capacity(k + 2);
        t.push(r.one());
        t.push(r.neg(a.get(k, k)));
        let mut w: Vec<R::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for _ in 2..=k + 1 {
            let rw = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(a.get(k, j), &w[j])));
            t.push(r.neg(&rw));
            w = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(a.get(i, j), &w[j]))))
                .collect();
        }
        let next: Vec<R::Elem> = (0..k + 2)
            .map(|i| {
                (0..=i.min(k)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&t[i - j], &v[j])))
            })
            .collect();
        v = next;
    }
    v.reverse();
    v
}

/// Characteristic polynomial, checked against Cayley–Hamilton for n ≤ 6.
pub fn charpoly<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Result<Vec<R::Elem>> {
    matrix::require_square(m)?;
    let cp = berkowitz(r, m);
    if m.rows() <= 6 && !matrix::is_zero_matrix(r, &poly::eval_matrix(r, &cp, m)) {
        return Err(Error::Consistency("characteristic polynomial fails Cayley–Hamilton".into()));
    }
    Ok(cp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_ring::QuadRing;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn z(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        let zz = Integers;
        let nil = z(vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(charpoly(&zz, &nil).unwrap(), ints(&[0, 0, 0, 1]));
        assert_eq!(charpoly(&zz, &z(vec![vec![1, 3], vec![0, 4]])).unwrap(), ints(&[4, -5, 1]));
        let m = z(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(charpoly(&zz, &m).unwrap(), ints(&[-18, 24, -9, 1]));
        assert!(charpoly(&zz, &z(vec![vec![1, 2]])).is_err());
    }

    #[test]
    fn quadratic_example() {
        let r = QuadRing::new(-5).unwrap();
        let m = Matrix::from_rows(vec![
            vec![r.elem(4, -2), r.elem(2, 2)],
            vec![r.elem(-2, -2), r.elem(4, 0)],
        ]);
        let cp = charpoly(&r, &m).unwrap();
        assert_eq!(cp, vec![r.elem(0, 0), r.elem(-8, 2), r.elem(1, 0)]);
    }
}
