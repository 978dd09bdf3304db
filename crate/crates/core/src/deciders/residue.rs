//! Finite local rings O/P^k and exhaustive searches over them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::decision::{verify_diag_witness, verify_tri_witness, Decision};
use super::stack_block;
use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::linalg::matrix::{self, Matrix};
use crate::linalg::normal_form::solve_left;
use crate::number_ring::{PrimeIdeal, QuadElem, QuadIdeal, QuadRing};
use crate::ring::{Integers, Ring, Zmod};

/// Default cap on |R|^{n²} for exhaustive residue-ring searches.
pub const DEFAULT_RESIDUE_BUDGET: u64 = 1 << 24;

/// A finite local ring with canonical representatives.
pub trait FiniteLocal: Ring {
    fn elements(&self) -> Vec<Self::Elem>;
    /// Elements of the maximal ideal.
    fn non_units(&self) -> Vec<Self::Elem>;
    fn order(&self) -> u64;
}

impl FiniteLocal for Zmod {
    fn elements(&self) -> Vec<u64> {
        (0..self.modulus).collect()
    }
    fn non_units(&self) -> Vec<u64> {
        (0..self.modulus).filter(|a| !self.is_unit(a)).collect()
    }
    fn order(&self) -> u64 {
        self.modulus
    }
}

/// O/P^k for a prime P of an imaginary quadratic order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResidue {
    pub ring: QuadRing,
    pub prime: PrimeIdeal,
    pub k: u32,
    modulus: QuadIdeal,
}

impl QuadResidue {
    pub fn new(ring: QuadRing, prime: PrimeIdeal, k: u32) -> Self {
        assert!(k >= 1);
        let modulus = ring.ideal_pow(&prime.ideal, k);
        QuadResidue { ring, prime, k, modulus }
    }

    pub fn modulus(&self) -> &QuadIdeal {
        &self.modulus
    }

    /// Canonical representative x + yω with 0 ≤ y < c and 0 ≤ x < a.
    pub fn reduce(&self, e: &QuadElem) -> QuadElem {
        let QuadIdeal { a, b, c, .. } = &self.modulus;
        let q = e.y.div_floor(c);
        let x = (&e.x - &q * b).mod_floor(a);
        let y = &e.y - &q * c;
        QuadElem { x, y }
    }

    fn coords(&self) -> (u64, u64) {
        (self.modulus.a.to_u64().expect("small modulus"), self.modulus.c.to_u64().expect("small modulus"))
    }
}

impl Ring for QuadResidue {
    type Elem = QuadElem;
    fn zero(&self) -> QuadElem {
        QuadElem::int(0)
    }
    fn one(&self) -> QuadElem {
        self.reduce(&QuadElem::int(1))
    }
    fn from_int(&self, n: &BigInt) -> QuadElem {
        self.reduce(&QuadElem::int(n.clone()))
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        self.reduce(&self.ring.add(a, b))
    }
    fn neg(&self, a: &QuadElem) -> QuadElem {
        self.reduce(&self.ring.neg(a))
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        self.reduce(&self.ring.mul(a, b))
    }
    fn is_unit(&self, a: &QuadElem) -> bool {
        !self.ring.contains(&self.prime.ideal, a)
    }
    fn is_zero(&self, a: &QuadElem) -> bool {
        self.reduce(a).is_zero()
    }
    /// x with b·x ≡ a mod P^k, found on the ℤ-lattice spanned by b, bω and P^k.
    fn div_exact(&self, a: &QuadElem, b: &QuadElem) -> Option<QuadElem> {
        let w = self.ring.omega();
        let bw = self.ring.mul(b, &w);
        let [g1, g2] = self.modulus.basis();
        let rows = vec![
            vec![b.x.clone(), b.y.clone()],
            vec![bw.x.clone(), bw.y.clone()],
            vec![g1.x.clone(), g1.y.clone()],
            vec![g2.x.clone(), g2.y.clone()],
        ];
        let (x, _) = solve_left(&Integers, &Matrix::from_rows(rows), &[a.x.clone(), a.y.clone()])?;
        Some(self.reduce(&QuadElem { x: x[0].clone(), y: x[1].clone() }))
    }
    fn render(&self, a: &QuadElem) -> String {
        a.to_string()
    }
}

impl FiniteLocal for QuadResidue {
    fn elements(&self) -> Vec<QuadElem> {
        let (a, c) = self.coords();
        (0..c).flat_map(|y| (0..a).map(move |x| QuadElem::new(x, y))).collect()
    }
    fn non_units(&self) -> Vec<QuadElem> {
        self.elements().into_iter().filter(|e| !self.is_unit(e)).collect()
    }
    fn order(&self) -> u64 {
        let (a, c) = self.coords();
        a * c
    }
}

fn check_budget<R: FiniteLocal>(r: &R, n: usize, budget: u64) -> Result<()> {
    let q = r.order() as f64;
    let states = q.powi((n * n) as i32);
    if states > budget as f64 {
        return Err(Error::Capacity(format!("|R|^(n^2) = {}^{} exceeds the budget {budget}", r.order(), n * n)));
    }
    Ok(())
}

/// Unimodular vectors up to unit scaling: the first unit coordinate is 1.
pub fn projective_reps<R: FiniteLocal>(r: &R, n: usize) -> Vec<Vec<R::Elem>> {
    let all = r.elements();
    let small = r.non_units();
    let mut out = Vec::new();
    for j in 0..n {
        let mut acc: Vec<Vec<R::Elem>> = vec![vec![]];
        for i in 0..n {
            let choices: Vec<R::Elem> = if i < j {
                small.clone()
            } else if i == j {
                vec![r.one()]
            } else {
                all.clone()
            };
            acc = acc
                .into_iter()
                .flat_map(|v| {
                    choices.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        out.extend(acc);
    }
    out
}

/// Unimodular eigenvectors (up to units) and their eigenvalues.
pub fn eigenvectors<R: FiniteLocal>(r: &R, m: &Matrix<R::Elem>) -> Vec<(Vec<R::Elem>, R::Elem)> {
    let n = m.rows();
    projective_reps(r, n)
        .into_iter()
        .filter_map(|v| {
            let mv = matrix::mat_vec(r, m, &v);
            let j = v.iter().position(|e| r.is_unit(e)).expect("unimodular");
            let d = mv[j].clone();
            let ok = mv.iter().zip(&v).all(|(a, b)| r.sub(a, &r.mul(&d, b)) == r.zero());
            ok.then_some((v, d))
        })
        .collect()
}

/// Exhaustive search for T ∈ GL_n(R) with T⁻¹MT upper triangular.
pub fn tri_residue_brute<R: FiniteLocal>(r: &R, m: &Matrix<R::Elem>, budget: u64) -> Result<Decision<R::Elem>> {
    check_budget(r, m.rows(), budget)?;
    let t = tri_search(r, m)?;
    match t {
        Some(t) if verify_tri_witness(r, m, &t) => Ok(Decision::yes(Some(t))),
        Some(_) => Err(Error::Consistency("residue triangularization witness fails".into())),
        None => Ok(Decision::no(None)),
    }
}

fn tri_search<R: FiniteLocal>(r: &R, b: &Matrix<R::Elem>) -> Result<Option<Matrix<R::Elem>>> {
    let n = b.rows();
    if n == 1 {
        return Ok(Some(matrix::identity(r, 1)));
    }
    for (v, _) in eigenvectors(r, b) {
        let j = v.iter().position(|e| r.is_unit(e)).unwrap();
        let mut cols = vec![v.clone()];
        for i in (0..n).filter(|&i| i != j) {
            let mut e = vec![r.zero(); n];
            e[i] = r.one();
            cols.push(e);
        }
        let c = Matrix::from_cols(&cols);
        let conj = matrix::conjugate(r, b, &c).ok_or_else(|| Error::Consistency("completion is singular".into()))?;
        if let Some(inner) = tri_search(r, &super::lower_block(&conj))? {
            return Ok(Some(stack_block(r, &c, &inner)));
        }
    }
    Ok(None)
}

/// Whether some k×k minor of the columns is a unit, i.e. the columns extend
/// to a basis.
fn extendable<R: FiniteLocal>(r: &R, cols: &[Vec<R::Elem>]) -> bool {
    let n = cols[0].len();
    let k = cols.len();
    let all: Vec<usize> = (0..k).collect();
    let m = Matrix::from_cols(cols);
    crate::arith::combinations(n, k)
        .into_iter()
        .any(|rows| r.is_unit(&matrix::det(r, &m.submatrix(&rows, &all))))
}

/// Exhaustive search for T ∈ GL_n(R) with T⁻¹MT diagonal.
pub fn diag_residue_brute<R: FiniteLocal>(r: &R, m: &Matrix<R::Elem>, budget: u64) -> Result<Decision<R::Elem>> {
    check_budget(r, m.rows(), budget)?;
    let eig: Vec<Vec<R::Elem>> = eigenvectors(r, m).into_iter().map(|(v, _)| v).collect();
    let mut chosen: Vec<Vec<R::Elem>> = Vec::new();
    if diag_search(r, &eig, 0, m.rows(), &mut chosen) {
        let t = Matrix::from_cols(&chosen);
        if !verify_diag_witness(r, m, &t) {
            return Err(Error::Consistency("residue diagonalization witness fails".into()));
        }
        return Ok(Decision::yes(Some(t)));
    }
    Ok(Decision::no(None))
}

fn diag_search<R: FiniteLocal>(
    r: &R,
    eig: &[Vec<R::Elem>],
    start: usize,
    n: usize,
    chosen: &mut Vec<Vec<R::Elem>>,
) -> bool {
    if chosen.len() == n {
        return true;
    }
    for i in start..eig.len() {
        chosen.push(eig[i].clone());
        if extendable(r, chosen) && diag_search(r, eig, i + 1, n, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Roots in a finite field counted with multiplicity, by repeated extraction.
pub fn roots_with_multiplicity<R: FiniteLocal>(r: &R, p: &[R::Elem]) -> Vec<R::Elem> {
    let mut p = p.to_vec();
    let mut out = Vec::new();
    for t in r.elements() {
        loop {
            if p.len() <= 1 {
                break;
            }
            let (q, rem) = crate::linalg::poly::div_linear(r, &p, &t);
            if !r.is_zero(&rem) {
                break;
            }
            out.push(t.clone());
            p = q;
        }
    }
    out
}

/// Rank over a residue field by Gaussian elimination with unit pivots.
pub fn field_rank<R: FiniteLocal>(r: &R, m: &Matrix<R::Elem>) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols() {
        let Some(p) = (rank..a.rows()).find(|&i| r.is_unit(a.get(i, col))) else { continue };
        a.swap_rows(rank, p);
        let inv = r.inv(a.get(rank, col)).expect("unit pivot");
        for i in 0..a.rows() {
            if i == rank {
                continue;
            }
            let f = r.mul(a.get(i, col), &inv);
            if r.is_zero(&f) {
                continue;
            }
            for j in 0..a.cols() {
                let v = r.sub(a.get(i, j), &r.mul(&f, a.get(rank, j)));
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    rank
}

/// Closed form for [[x,a],[0,y]] over ℤ/p^k with x ≠ y and a ≠ 0: for every
/// l ≥ 1, p^l | x−y implies p^{min(l,k)} | a.
pub fn triangular_family_closed_form(x: &BigInt, y: &BigInt, a: &BigInt, p: u64, k: u32) -> bool {
    let diff = x - y;
    let need = crate::arith::valuation(&diff, p).min(k);
    a.is_multiple_of(&BigInt::from(pow_u64(p, need)))
}

/// Diagonalizability of an integer matrix over ℤ/p^k.
///
/// The 2×2 family [[x,a],[0,y]] with x ≠ y, a ≠ 0 uses the closed form, with
/// witness [[1,u],[0,1]] where (x−y)u ≡ −a. Other inputs are searched
/// exhaustively within `budget`.
pub fn diag_residue_ring(m: &Matrix<BigInt>, p: u64, k: u32, budget: u64) -> Result<Decision<u64>> {
    matrix::require_square(m)?;
    if !crate::arith::is_prime_u64(p) || k == 0 {
        return Err(Error::Validation(format!("p^k with p = {p}, k = {k} is not a prime power")));
    }
    let zm = Zmod::new(pow_u64(p, k));
    let mr = m.map(|e| zm.from_int(e));
    if m.rows() == 2 && m.get(1, 0).is_zero() && !m.get(0, 1).is_zero() && m.get(0, 0) != m.get(1, 1) {
        let (x, a, y) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
        if !triangular_family_closed_form(x, y, a, p, k) {
            return Ok(Decision::no(None).with_note("closed form"));
        }
        let u = zm
            .div_exact(&zm.from_int(&-a), &zm.from_int(&(x - y)))
            .ok_or_else(|| Error::Consistency("closed form and congruence disagree".into()))?;
        let t = Matrix::from_rows(vec![vec![1, u], vec![0, 1]]);
        if !verify_diag_witness(&zm, &mr, &t) {
            return Err(Error::Consistency("closed-form witness fails".into()));
        }
        return Ok(Decision::yes(Some(t)).with_note("closed form"));
    }
    diag_residue_brute(&zm, &mr, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    #[test]
    fn closed_form_examples() {
        let m = z(vec![vec![1, 2], vec![0, 5]]);
        assert!(diag_residue_ring(&m, 2, 1, DEFAULT_RESIDUE_BUDGET).unwrap().is_yes());
        assert!(diag_residue_ring(&m, 2, 2, DEFAULT_RESIDUE_BUDGET).unwrap().is_no());
        let zm = Zmod::new(4);
        let mr = m.map(|e| zm.from_int(e));
        assert!(diag_residue_brute(&zm, &mr, DEFAULT_RESIDUE_BUDGET).unwrap().is_no());
        assert!(diag_residue_ring(&z(vec![vec![1, 0], vec![0, 5]]), 3, 2, DEFAULT_RESIDUE_BUDGET).unwrap().is_yes());
    }

    #[test]
    fn full_brute_force_mod_4() {
        // Independent check over all 256 matrices mod 4, 96 of them invertible.
        let zm = Zmod::new(4);
        let m = Matrix::from_rows(vec![vec![1u64, 2], vec![0, 1]]);
        let mut inv = 0;
        let mut found = false;
        for code in 0..256u64 {
            let t = Matrix::from_rows(vec![vec![code & 3, code >> 2 & 3], vec![code >> 4 & 3, code >> 6 & 3]]);
            if zm.is_unit(&matrix::det(&zm, &t)) {
                inv += 1;
                found |= verify_diag_witness(&zm, &m, &t);
            }
        }
        assert_eq!(inv, 96);
        assert!(!found);
    }

    #[test]
    fn quadratic_residue_ring() {
        let r = QuadRing::new(-5).unwrap();
        let p2 = r.primes_over(&2.into())[0].clone();
        let res = QuadResidue::new(r, p2, 2);
        assert_eq!(res.order(), 4);
        assert_eq!(res.elements().len(), 4);
        assert_eq!(res.non_units().len(), 2);
        let p3 = r.primes_over(&3.into())[0].clone();
        let f3 = QuadResidue::new(r, p3, 1);
        let two = f3.from_int(&2.into());
        assert_eq!(f3.mul(&two, &f3.inv(&two).unwrap()), f3.one());
    }

    #[test]
    fn rotation_mod_small_primes() {
        let f5 = Zmod::new(5);
        let rot = Matrix::from_rows(vec![vec![0u64, 4], vec![1, 0]]);
        assert!(tri_residue_brute(&f5, &rot, DEFAULT_RESIDUE_BUDGET).unwrap().is_yes());
        let f7 = Zmod::new(7);
        let rot7 = Matrix::from_rows(vec![vec![0u64, 6], vec![1, 0]]);
        assert!(tri_residue_brute(&f7, &rot7, DEFAULT_RESIDUE_BUDGET).unwrap().is_no());
        assert_eq!(roots_with_multiplicity(&Zmod::new(2), &[1, 0, 1]), vec![1, 1]);
    }
}
