//! Hermite and Smith normal forms with unimodular transforms.

use super::matrix::{self, Matrix};
use crate::ring::EuclideanRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf<E> {
    /// Row echelon form with normalized pivots.
    pub h: Matrix<E>,
    /// Unimodular transform with u·input = h.
    pub u: Matrix<E>,
    /// (row, column) of each pivot.
    pub pivots: Vec<(usize, usize)>,
}

impl<E> Hnf<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf<E> {
    /// Diagonal result with d₁ | d₂ | ….
    pub d: Matrix<E>,
    pub u: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: Clone> Snf<E> {
    pub fn diagonal(&self) -> Vec<E> {
        matrix::diagonal_entries(&self.d)
    }
}

fn row_axpy<R: EuclideanRing>(r: &R, m: &mut Matrix<R::Elem>, dst: usize, src: usize, q: &R::Elem) {
    // row_dst −= q·row_src
    for j in 0..m.cols() {
        let v = r.sub(m.get(dst, j), &r.mul(q, m.get(src, j)));
        m.set(dst, j, v);
    }
}

fn col_axpy<R: EuclideanRing>(r: &R, m: &mut Matrix<R::Elem>, dst: usize, src: usize, q: &R::Elem) {
    for i in 0..m.rows() {
        let v = r.sub(m.get(i, dst), &r.mul(q, m.get(i, src)));
        m.set(i, dst, v);
    }
}

fn row_scale<R: EuclideanRing>(r: &R, m: &mut Matrix<R::Elem>, i: usize, s: &R::Elem) {
    for j in 0..m.cols() {
        let v = r.mul(m.get(i, j), s);
        m.set(i, j, v);
    }
}

/// Row-style Hermite normal form: u·a = h.
pub fn hnf<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>) -> Hnf<R::Elem> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = matrix::identity(r, rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        loop {
            let best = (row..rows)
                .filter(|&i| !r.is_zero(h.get(i, col)))
                .min_by_key(|&i| r.size(h.get(i, col)));
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let mut clean = true;
            for i in row + 1..rows {
                if r.is_zero(h.get(i, col)) {
                    continue;
                }
                let (q, rem) = r.div_rem(h.get(i, col), h.get(row, col));
                row_axpy(r, &mut h, i, row, &q);
                row_axpy(r, &mut u, i, row, &q);
                if !r.is_zero(&rem) {
                    clean = false;
                }
            }
            if clean {
                let (_, unit) = r.normalize(h.get(row, col));
                row_scale(r, &mut h, row, &unit);
                row_scale(r, &mut u, row, &unit);
                for i in 0..row {
                    let q = r.reduce_quotient(h.get(i, col), h.get(row, col));
                    row_axpy(r, &mut h, i, row, &q);
                    row_axpy(r, &mut u, i, row, &q);
                }
                pivots.push((row, col));
                row += 1;
                break;
            }
        }
    }
    Hnf { h, u, pivots }
}

/// Smith normal form: u·a·v = d.
pub fn snf<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>) -> Snf<R::Elem> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = matrix::identity(r, rows);
    let mut v = matrix::identity(r, cols);
    for t in 0..rows.min(cols) {
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !r.is_zero(d.get(i, j)))
            .min_by_key(|&(i, j)| r.size(d.get(i, j)));
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if r.is_zero(d.get(i, t)) {
                    continue;
                }
                let (q, _) = r.div_rem(d.get(i, t), d.get(t, t));
                row_axpy(r, &mut d, i, t, &q);
                row_axpy(r, &mut u, i, t, &q);
                if !r.is_zero(d.get(i, t)) {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if r.is_zero(d.get(t, j)) {
                    continue;
                }
                let (q, _) = r.div_rem(d.get(t, j), d.get(t, t));
                col_axpy(r, &mut d, j, t, &q);
                col_axpy(r, &mut v, j, t, &q);
                if !r.is_zero(d.get(t, j)) {
                    changed = true;
                }
            }
            if changed {
                // Move the smallest leftover in row/column t to the pivot.
                let cand = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| !r.is_zero(d.get(i, j)))
                    .min_by_key(|&(i, j)| r.size(d.get(i, j)))
                    .unwrap();
                d.swap_rows(t, cand.0);
                u.swap_rows(t, cand.0);
                d.swap_cols(t, cand.1);
                v.swap_cols(t, cand.1);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| r.div_exact(d.get(i, j), d.get(t, t)).is_none());
            match bad {
                Some((i, _)) => {
                    let minus_one = r.neg(&r.one());
                    row_axpy(r, &mut d, t, i, &minus_one);
                    row_axpy(r, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        let (_, unit) = r.normalize(d.get(t, t));
        row_scale(r, &mut d, t, &unit);
        row_scale(r, &mut u, t, &unit);
    }
    Snf { d, u, v }
}

/// Solve x·a = t over the ring. Returns a particular solution and a basis of
/// the left kernel {k : k·a = 0}.
pub fn solve_left<R: EuclideanRing>(
    r: &R,
    a: &Matrix<R::Elem>,
    t: &[R::Elem],
) -> Option<(Vec<R::Elem>, Vec<Vec<R::Elem>>)> {
    assert_eq!(a.cols(), t.len());
    let f = hnf(r, a);
    let mut y = vec![r.zero(); a.rows()];
    let mut rest = t.to_vec();
    for &(pr, pc) in &f.pivots {
        let q = r.div_exact(&rest[pc], f.h.get(pr, pc))?;
        for (j, slot) in rest.iter_mut().enumerate() {
            *slot = r.sub(slot, &r.mul(&q, f.h.get(pr, j)));
        }
        y[pr] = q;
    }
    if rest.iter().any(|e| !r.is_zero(e)) {
        return None;
    }
    let x = (0..a.rows())
        .map(|j| (0..a.rows()).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&y[i], f.u.get(i, j)))))
        .collect();
    let kernel = (f.rank()..a.rows()).map(|i| f.u.row(i)).collect();
    Some((x, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{det, mul};
    use crate::number_ring::QuadRing;
    use crate::ring::{Integers, Ring};
    use num_bigint::BigInt;

    fn z(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    #[test]
    fn snf_examples() {
        let zz = Integers;
        let a = z(vec![vec![2, 4], vec![6, 8]]);
        let s = snf(&zz, &a);
        assert_eq!(s.d, z(vec![vec![2, 0], vec![0, 4]]));
        assert_eq!(mul(&zz, &mul(&zz, &s.u, &a), &s.v), s.d);
        let id = z(vec![vec![1, 0], vec![0, 1]]);
        let s = snf(&zz, &id);
        assert_eq!((s.d.clone(), s.u, s.v), (id.clone(), id.clone(), id));
        let zero = z(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(snf(&zz, &zero).d, zero);
    }

    #[test]
    fn hnf_transform() {
        let zz = Integers;
        let a = z(vec![vec![3, 1], vec![4, 2], vec![5, 7]]);
        let f = hnf(&zz, &a);
        assert_eq!(mul(&zz, &f.u, &a), f.h);
        assert!(zz.is_unit(&det(&zz, &f.u)));
        assert_eq!(f.h, z(vec![vec![1, 1], vec![0, 2], vec![0, 0]]));
    }

    #[test]
    fn gaussian_snf() {
        let r = QuadRing::new(-1).unwrap();
        let a = Matrix::from_rows(vec![
            vec![r.elem(2, 0), r.elem(1, 1)],
            vec![r.elem(0, 3), r.elem(4, -1)],
        ]);
        let s = snf(&r, &a);
        assert_eq!(mul(&r, &mul(&r, &s.u, &a), &s.v), s.d);
        let dd = s.diagonal();
        assert!(r.div_exact(&dd[1], &dd[0]).is_some());
    }

    #[test]
    fn left_solve() {
        let zz = Integers;
        let a = z(vec![vec![2, 0], vec![1, 1]]);
        let (x, k) = solve_left(&zz, &a, &[BigInt::from(5), BigInt::from(3)]).unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(3)]);
        assert!(k.is_empty());
        assert!(solve_left(&zz, &z(vec![vec![2, 0], vec![0, 2]]), &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
