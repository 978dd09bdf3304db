use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// Dense row-major matrix. Arithmetic takes the coefficient ring explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<E>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F: Clone>(&self, f: impl Fn(&E) -> Result<F>) -> Result<Matrix<F>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::filled(rows, cols, r.zero())
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = zeros(r, n, n);
    for i in 0..n {
        m.set(i, i, r.one());
    }
    m
}

pub fn diagonal<R: Ring>(r: &R, d: &[R::Elem]) -> Matrix<R::Elem> {
    let mut m = zeros(r, d.len(), d.len());
    for (i, e) in d.iter().enumerate() {
        m.set(i, i, e.clone());
    }
    m
}

pub fn mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shapes");
    let mut out = zeros(r, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if r.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = r.add(out.get(i, j), &r.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn add<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| r.add(x, y)).collect(),
    }
}

pub fn sub<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| r.sub(x, y)).collect(),
    }
}

pub fn scale<R: Ring>(r: &R, a: &Matrix<R::Elem>, s: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| r.mul(x, s))
}

pub fn mat_vec<R: Ring>(r: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            (0..a.cols).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(a.get(i, j), &v[j])))
        })
        .collect()
}

/// M − λI.
pub fn shift<R: Ring>(r: &R, m: &Matrix<R::Elem>, lambda: &R::Elem) -> Matrix<R::Elem> {
    let mut out = m.clone();
    for i in 0..m.rows.min(m.cols) {
        out.set(i, i, r.sub(m.get(i, i), lambda));
    }
    out
}

pub fn is_zero_matrix<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> bool {
    m.data.iter().all(|e| r.is_zero(e))
}

pub fn is_upper_triangular<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> bool {
    (0..m.rows).all(|i| (0..i.min(m.cols)).all(|j| r.is_zero(m.get(i, j))))
}

pub fn is_diagonal<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> bool {
    (0..m.rows).all(|i| (0..m.cols).all(|j| i == j || r.is_zero(m.get(i, j))))
}

pub fn diagonal_entries<E: Clone>(m: &Matrix<E>) -> Vec<E> {
    (0..m.rows.min(m.cols)).map(|i| m.get(i, i).clone()).collect()
}

pub fn require_square<E: Clone>(m: &Matrix<E>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Size(format!("expected a square matrix, got {}x{}", m.rows, m.cols)))
    }
}

/// Determinant (division-free).
pub fn det<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert!(m.is_square());
    let cp = super::charpoly::berkowitz(r, m);
    if m.rows % 2 == 0 {
        cp[0].clone()
    } else {
        r.neg(&cp[0])
    }
}

/// Adjugate via Cayley–Hamilton, division-free.
pub fn adjugate<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert!(m.is_square());
    let n = m.rows;
    if n == 1 {
        return identity(r, 1);
    }
    let cp = super::charpoly::berkowitz(r, m);
    // adj(M) = (−1)^{n−1} (M^{n−1} + c_{n−1} M^{n−2} + … + c_1 I)
    let acc = horner_adj(r, m, &cp);
    if (n - 1) % 2 == 1 {
        acc.map(|e| r.neg(e))
    } else {
        acc
    }
}

fn horner_adj<R: Ring>(r: &R, m: &Matrix<R::Elem>, cp: &[R::Elem]) -> Matrix<R::Elem> {
    let n = m.rows;
    let id = identity(r, n);
    let mut acc = id.clone();
    for k in (1..n).rev() {
        acc = add(r, &mul(r, &acc, m), &scale(r, &id, &cp[k]));
    }
    acc
}

/// Inverse over the ring: adj(M)/det(M), provided det(M) is a unit.
pub fn inverse<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let d = det(r, m);
    let dinv = r.inv(&d)?;
    Some(scale(r, &adjugate(r, m), &dinv))
}

/// Inverse when det(M) divides every cofactor (always true over a field).
pub fn inverse_exact<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let d = det(r, m);
    if r.is_zero(&d) {
        return None;
    }
    adjugate(r, m).try_map(|e| r.div_exact(e, &d).ok_or(Error::Rank)).ok()
}

/// Conjugate T⁻¹·M·T, requiring T invertible over the ring.
pub fn conjugate<R: Ring>(
    r: &R,
    m: &Matrix<R::Elem>,
    t: &Matrix<R::Elem>,
) -> Option<Matrix<R::Elem>> {
    let ti = inverse(r, t)?;
    Some(mul(r, &mul(r, &ti, m), t))
}

/// Row-reduced echelon form over a field; returns (rref, pivot columns).
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !f.is_zero(a.get(i, col))) else { continue };
        a.swap_rows(row, p);
        let inv = f.inv(a.get(row, col)).expect("nonzero pivot");
        for j in 0..a.cols {
            let v = f.mul(a.get(row, j), &inv);
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i != row && !f.is_zero(a.get(i, col)) {
                let factor = a.get(i, col).clone();
                for j in 0..a.cols {
                    let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(row, j)));
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).1.len()
}

/// Basis of the right kernel {v : M·v = 0} over a field.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (a, pivots) = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(i, fc));
            }
            v
        })
        .collect()
}

/// Solve A·x = b over a field, if solvable.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut aug = zeros(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let (red, pivots) = rref(f, &aug);
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = red.get(i, a.cols).clone();
    }
    Some(x)
}

/// Extend independent columns to a basis of F^n with standard vectors.
pub fn extend_to_basis<F: Field>(f: &F, cols: &[Vec<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    let mut out = cols.to_vec();
    for k in 0..n {
        if out.len() == n {
            break;
        }
        let mut e = vec![f.zero(); n];
        e[k] = f.one();
        let mut trial = out.clone();
        trial.push(e);
        if rank(f, &Matrix::from_cols(&trial)) == trial.len() {
            out = trial;
        }
    }
    out
}
