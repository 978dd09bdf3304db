//! Dense univariate polynomials, lowest degree first.

use super::matrix::{self, Matrix};
use crate::ring::{Field, Ring};

pub fn trim<R: Ring>(r: &R, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
    while p.last().is_some_and(|c| r.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree, or None for the zero polynomial.
pub fn degree<R: Ring>(r: &R, p: &[R::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !r.is_zero(c))
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let out = (0..n).map(|i| r.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(r, out)
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let out = (0..n).map(|i| r.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(r, out)
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trim(r, out)
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], s: &R::Elem) -> Vec<R::Elem> {
    trim(r, a.iter().map(|c| r.mul(c, s)).collect())
}

pub fn eval<R: Ring>(r: &R, p: &[R::Elem], x: &R::Elem) -> R::Elem {
    p.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

pub fn eval_matrix<R: Ring>(r: &R, p: &[R::Elem], m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = m.rows();
    let id = matrix::identity(r, n);
    p.iter().rev().fold(matrix::zeros(r, n, n), |acc, c| {
        matrix::add(r, &matrix::mul(r, &acc, m), &matrix::scale(r, &id, c))
    })
}

pub fn derivative<R: Ring>(r: &R, p: &[R::Elem]) -> Vec<R::Elem> {
    trim(
        r,
        p.iter().enumerate().skip(1).map(|(i, c)| r.mul(c, &r.from_i64(i as i64))).collect(),
    )
}

/// (x − λ).
pub fn linear<R: Ring>(r: &R, lambda: &R::Elem) -> Vec<R::Elem> {
    vec![r.neg(lambda), r.one()]
}

/// Product of (x − λ_i).
pub fn from_roots<R: Ring>(r: &R, roots: &[R::Elem]) -> Vec<R::Elem> {
    roots.iter().fold(vec![r.one()], |acc, l| mul(r, &acc, &linear(r, l)))
}

/// Synthetic division by (x − λ); returns (quotient, remainder).
pub fn div_linear<R: Ring>(r: &R, p: &[R::Elem], lambda: &R::Elem) -> (Vec<R::Elem>, R::Elem) {
    if p.is_empty() {
        return (vec![], r.zero());
    }
    let n = p.len() - 1;
    let mut q = vec![r.zero(); n];
    let mut carry = r.zero();
    for i in (0..=n).rev() {
        let v = r.add(&p[i], &r.mul(&carry, lambda));
        if i == 0 {
            return (trim(r, q), v);
        }
        q[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Long division over a field; returns (quotient, remainder).
pub fn div_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = trim(f, a.to_vec());
    let mut q = vec![f.zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(f, &rem) {
        if dr < db {
            break;
        }
        let c = f.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] = f.sub(&rem[i + shift], &f.mul(&c, bc));
        }
        rem = trim(f, rem);
    }
    (trim(f, q), rem)
}

pub fn monic<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    match degree(f, p) {
        None => vec![],
        Some(d) => scale(f, p, &f.inv(&p[d]).unwrap()),
    }
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (mut a, mut b) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    while degree(f, &b).is_some() {
        let (_, r) = div_rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// p / gcd(p, p′), monic. Valid in characteristic zero.
pub fn squarefree_part<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let g = gcd(f, p, &derivative(f, p));
    monic(f, &div_rem(f, p, &g).0)
}

/// Resultant via the Sylvester determinant.
pub fn resultant<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
    let (Some(m), Some(n)) = (degree(r, a), degree(r, b)) else { return r.zero() };
    let size = m + n;
    if size == 0 {
        return r.one();
    }
    let mut s = matrix::zeros(r, size, size);
    for i in 0..n {
        for (j, c) in a[..=m].iter().rev().enumerate() {
            s.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in b[..=n].iter().rev().enumerate() {
            s.set(n + i, i + j, c.clone());
        }
    }
    matrix::det(r, &s)
}

pub fn render<R: Ring>(r: &R, p: &[R::Elem]) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if r.is_zero(c) {
            continue;
        }
        let cs = r.render(c);
        let coeff = if i > 0 && c == &r.one() {
            String::new()
        } else if cs.contains(['+', 'ω']) || (cs[1..].contains('-')) {
            format!("({cs})")
        } else {
            cs
        };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let sep = if i > 0 && !coeff.is_empty() { "*" } else { "" };
        terms.push(format!("{coeff}{sep}{mono}"));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
