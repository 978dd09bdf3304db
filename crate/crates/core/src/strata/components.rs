//! Point-level structure of X_M and Y_M: flag membership, stratum
//! classification, diagonal patterns and transport between components.

use serde::Serialize;

use super::equations::{block_rank, equations, membership, Variety};
use super::index::{StratumIndex, Which};
use crate::error::{Error, Result};
use crate::linalg::matrix::{self, Matrix};
use crate::ring::Field;

fn require_invertible<F: Field>(f: &F, t: &Matrix<F::Elem>, what: &str) -> Result<Matrix<F::Elem>> {
    matrix::require_square(t)?;
    matrix::inverse(f, t).ok_or_else(|| Error::Precondition(format!("{what}: T is singular")))
}

fn check_size<E: Clone>(t: &Matrix<E>, m: &Matrix<E>) -> Result<()> {
    matrix::require_square(m)?;
    if t.rows() != m.rows() || t.cols() != m.cols() {
        return Err(Error::Size(format!("T is {}x{}, M is {}x{}", t.rows(), t.cols(), m.rows(), m.cols())));
    }
    Ok(())
}

/// Whether (M − λ_{i+1}I)·t_{i+1} lies in the span of t_1, …, t_i for every
/// i ≥ 0, i.e. T⁻¹MT is upper triangular with diagonal λ.
pub fn x_membership_flag<F: Field>(
    f: &F,
    t: &Matrix<F::Elem>,
    m: &Matrix<F::Elem>,
    lambdas: &[F::Elem],
) -> Result<bool> {
    check_size(t, m)?;
    require_invertible(f, t, "flag membership")?;
    let n = t.rows();
    if lambdas.len() != n {
        return Err(Error::Size(format!("{} eigenvalues for size {n}", lambdas.len())));
    }
    let cols: Vec<Vec<F::Elem>> = (0..n).map(|j| t.col(j)).collect();
    for i in 0..n {
        let image = matrix::mat_vec(f, &matrix::shift(f, m, &lambdas[i]), &cols[i]);
        let mut span = cols[..i].to_vec();
        span.push(image);
        if block_rank(f, &span, n, i + 1) > i {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether T⁻¹MT is upper triangular.
pub fn is_triangularizing<F: Field>(f: &F, t: &Matrix<F::Elem>, m: &Matrix<F::Elem>) -> Result<bool> {
    check_size(t, m)?;
    let ti = require_invertible(f, t, "triangularization")?;
    Ok(matrix::is_upper_triangular(f, &matrix::mul(f, &matrix::mul(f, &ti, m), t)))
}

/// The stratum index of a point of X_M for M = diag(λI_m, J_n(λ)):
/// r_i = min{t : rank(A^{m+i−1, t}) < t}.
pub fn classify_stratum<F: Field>(f: &F, a: &Matrix<F::Elem>, m: usize, n: usize) -> Result<StratumIndex> {
    let xprime = equations(&Variety::XPrime { m, n })?;
    if !a.is_square() || a.rows() != m + n {
        return Err(Error::Classification(format!("expected a {0}x{0} matrix", m + n)));
    }
    if !membership(f, a, &xprime)? {
        return Err(Error::Classification("point is not in X_M".into()));
    }
    let cols: Vec<Vec<F::Elem>> = (0..m + n).map(|j| a.col(j)).collect();
    let r: Vec<usize> = (1..n)
        .map(|i| (1..=m + i).find(|&t| block_rank(f, &cols, m + i - 1, t) < t).unwrap_or(m + i))
        .collect();
    let idx = StratumIndex::new(m, n, r, Which::R).map_err(|e| Error::Classification(e.to_string()))?;
    if !membership(f, a, &equations(&Variety::V { index: idx.clone() })?)? {
        return Err(Error::Classification(format!("point is not in V{idx}")));
    }
    Ok(idx)
}

/// All distinct orderings of a multiset, lexicographically.
pub fn y_components<T: Ord + Clone>(multiset: &[T]) -> Vec<Vec<T>> {
    let mut cur = multiset.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// σ_i = (T⁻¹MT)_{i,i} for a diagonalizing T.
pub fn classify_y_point<F: Field>(f: &F, t: &Matrix<F::Elem>, m: &Matrix<F::Elem>) -> Result<Vec<F::Elem>> {
    check_size(t, m)?;
    let ti = require_invertible(f, t, "diagonal pattern")?;
    let c = matrix::mul(f, &matrix::mul(f, &ti, m), t);
    if !matrix::is_diagonal(f, &c) {
        return Err(Error::Classification("T does not diagonalize M".into()));
    }
    Ok(matrix::diagonal_entries(&c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    X,
    Y,
}

/// Move T to the component whose diagonal has positions t and t+1 (1-based)
/// exchanged, by right multiplication with a 2×2 block at those positions.
pub fn transport_point<F: Field>(
    f: &F,
    t: &Matrix<F::Elem>,
    m: &Matrix<F::Elem>,
    pos: usize,
    target: Target,
) -> Result<Matrix<F::Elem>> {
    check_size(t, m)?;
    let n = t.rows();
    if pos < 1 || pos >= n {
        return Err(Error::Precondition(format!("position {pos} out of range for size {n}")));
    }
    let ti = require_invertible(f, t, "transport")?;
    let c = matrix::mul(f, &matrix::mul(f, &ti, m), t);
    let in_component = match target {
        Target::X => matrix::is_upper_triangular(f, &c),
        Target::Y => matrix::is_diagonal(f, &c),
    };
    if !in_component {
        return Err(Error::Precondition("T is not in a component of the variety".into()));
    }
    let (a, b) = (pos - 1, pos);
    let (la, lb) = (c.get(a, a).clone(), c.get(b, b).clone());
    let gap = f.sub(&lb, &la);
    if f.is_zero(&gap) {
        return Err(Error::Precondition(format!("equal eigenvalues at positions {pos} and {}", pos + 1)));
    }
    let block = match target {
        Target::X => {
            let d = matrix::det(f, t);
            let w = f.inv(&d).expect("invertible determinant");
            let adj_mt = matrix::mul(f, &matrix::mul(f, &matrix::adjugate(f, t), m), t);
            let fw = f.mul(adj_mt.get(a, b), &w);
            let corner = f.div_exact(&f.sub(&f.mul(&fw, &fw), &f.one()), &gap).expect("nonzero gap");
            [[fw.clone(), corner], [gap, fw]]
        }
        Target::Y => [[f.zero(), f.neg(&f.one())], [f.one(), f.zero()]],
    };
    let mut g = matrix::identity(f, n);
    for (i, row) in block.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            g.set(a + i, a + j, e.clone());
        }
    }
    Ok(matrix::mul(f, t, &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Rationals, Ring};

    fn qm(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        let q = Rationals;
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect())
    }

    #[test]
    fn flag_examples() {
        let q = Rationals;
        let m = qm(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let zeros = vec![q.zero(); 3];
        assert!(x_membership_flag(&q, &matrix::identity(&q, 3), &m, &zeros).unwrap());
        let t = qm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(!x_membership_flag(&q, &t, &m, &zeros).unwrap());
        assert!(x_membership_flag(&q, &qm(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]), &m, &zeros).is_err());
    }

    #[test]
    fn classification_examples() {
        let q = Rationals;
        assert_eq!(classify_stratum(&q, &matrix::identity(&q, 3), 1, 2).unwrap().seq, vec![2]);
        let a = qm(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(classify_stratum(&q, &a, 1, 2).unwrap().seq, vec![1]);
        let singular = qm(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert!(matches!(classify_stratum(&q, &singular, 1, 2), Err(Error::Classification(_))));
    }

    #[test]
    fn orderings() {
        assert_eq!(y_components(&[1, 1, 2]).len(), 3);
        assert_eq!(y_components(&[1, 2, 3]).len(), 6);
        assert_eq!(y_components(&[5, 5]), vec![vec![5, 5]]);
    }

    #[test]
    fn transport_swaps_diagonal() {
        let q = Rationals;
        let m = qm(&[&[1, 0], &[0, 2]]);
        let id = matrix::identity(&q, 2);
        let swap = qm(&[&[0, -1], &[1, 0]]);
        for target in [Target::X, Target::Y] {
            let t2 = transport_point(&q, &id, &m, 1, target).unwrap();
            assert_eq!(t2, swap);
            assert_eq!(classify_y_point(&q, &t2, &m).unwrap(), vec![q.from_i64(2), q.from_i64(1)]);
        }
        let scalar = qm(&[&[3, 0], &[0, 3]]);
        assert!(matches!(transport_point(&q, &id, &scalar, 1, Target::Y), Err(Error::Precondition(_))));
    }

    #[test]
    fn transport_preserves_triangular_form() {
        let q = Rationals;
        let m = qm(&[&[1, 1, 0], &[0, 2, 1], &[0, 0, 3]]);
        let t = qm(&[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]);
        for pos in [1, 2] {
            let t2 = transport_point(&q, &t, &m, pos, Target::X).unwrap();
            let c = matrix::conjugate(&q, &m, &t2).unwrap();
            assert!(matrix::is_upper_triangular(&q, &c));
            let c0 = matrix::conjugate(&q, &m, &t).unwrap();
            assert_eq!(c.get(pos - 1, pos - 1), c0.get(pos, pos));
            assert_eq!(c.get(pos, pos), c0.get(pos - 1, pos - 1));
        }
    }
}
