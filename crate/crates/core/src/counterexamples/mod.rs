//! Deterministic matrices over non-principal imaginary quadratic orders that
//! are triangularizable (resp. diagonalizable) at every completion but not
//! over the order itself.

pub mod certify;
pub mod oracle;

use num_bigint::BigInt;

use crate::deciders::local::LocalOrder;
use crate::error::{Error, Result};
use crate::linalg::matrix::{self, Matrix};
use crate::number_ring::search::DEFAULT_NORM_BOUND;
use crate::number_ring::{KElem, PrimeIdeal, QuadElem, QuadIdeal, QuadRing};
use crate::order::Order;
use crate::ring::Ring;

pub use certify::{certify, certify_diag_recipe, CertReport, Leg};

/// Norm bound when looking for a non-principal prime.
pub const P0_SEARCH_BOUND: u64 = 10_000;

/// Largest |discriminant| accepted by the generators.
pub const MAX_DISCRIMINANT: i64 = 100_000;

/// Sign of the corner entry of N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriCexRecipe {
    pub ring: QuadRing,
    pub n: usize,
    pub a: QuadElem,
    pub b: QuadElem,
    /// The non-principal ideal (a) + (b).
    pub ab_ideal: QuadIdeal,
    pub corner: CornerSign,
    pub big_n: Matrix<QuadElem>,
    pub det_n: QuadElem,
    pub lambdas: Vec<QuadElem>,
    pub m: Matrix<QuadElem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagCexRecipe {
    pub ring: QuadRing,
    pub n: usize,
    /// Order of [p₀] in the class group.
    pub class_order: u32,
    pub p0: PrimeIdeal,
    pub p_a: PrimeIdeal,
    pub p_s: PrimeIdeal,
    pub p_r: PrimeIdeal,
    pub p_t: PrimeIdeal,
    pub a: QuadElem,
    pub a0: QuadElem,
    pub s: QuadElem,
    pub r: QuadElem,
    pub t: QuadElem,
    pub alpha: QuadElem,
    pub beta: QuadElem,
    pub t0: Matrix<QuadElem>,
    pub lambdas: Vec<QuadElem>,
    pub m: Matrix<QuadElem>,
    /// Uniformizer π at p_a.
    pub pi: QuadElem,
    /// T₀ with the first column divided by π and the second by π^{m−1}.
    pub t0_local: Matrix<KElem>,
}

fn require_nonprincipal(ring: &QuadRing) -> Result<Vec<QuadIdeal>> {
    let (h, reps) = ring.class_group(MAX_DISCRIMINANT)?;
    if h == 1 {
        return Err(Error::Precondition(format!("{} has class number 1", ring.label())));
    }
    Ok(reps)
}

/// M = X·diag(λ)·X⁻¹, computed as X·diag(λ)·adj(X)/det X with exact division.
fn conjugate_diagonal(ring: &QuadRing, x: &Matrix<QuadElem>, lambdas: &[QuadElem]) -> Result<Matrix<QuadElem>> {
    let det = matrix::det(ring, x);
    let scaled = matrix::mul(ring, &matrix::mul(ring, x, &matrix::diagonal(ring, lambdas)), &matrix::adjugate(ring, x));
    scaled.try_map(|e| {
        ring.exact_divide(e, &det)
            .map_err(|_| Error::Consistency(format!("entry {e} of the conjugate is not divisible by {det}")))
    })
}

/// Multiples 0, c, 2c, … of c.
fn multiples(ring: &QuadRing, c: &QuadElem, n: usize) -> Vec<QuadElem> {
    (0..n).map(|i| ring.scale(c, &BigInt::from(i))).collect()
}

/// Triangularization counterexample of size n.
///
/// (a, b) come from the smallest non-principal reduced class representative
/// [a, b]; N has diagonal a, subdiagonal b and corner ±b; λᵢ = (i−1)·det N.
pub fn build_tri_counterexample(d: i64, n: usize) -> Result<TriCexRecipe> {
    if !(2..=6).contains(&n) {
        return Err(Error::Precondition(format!("n = {n} is outside 2..=6")));
    }
    let ring = QuadRing::new(d)?;
    let reps = require_nonprincipal(&ring)?;
    let ab_ideal = reps[1].clone();
    let [a, b] = ab_ideal.basis();
    let mut big_n = matrix::zeros(&ring, n, n);
    for i in 0..n {
        big_n.set(i, i, a.clone());
        if i + 1 < n {
            big_n.set(i + 1, i, b.clone());
        }
    }
    let minus_b = ring.neg(&b);
    let vanishing = ring.pow(&a, n as u32) == ring.pow(&minus_b, n as u32);
    let corner = if vanishing { CornerSign::Minus } else { CornerSign::Plus };
    big_n.set(0, n - 1, if vanishing { minus_b } else { b.clone() });
    let det_n = matrix::det(&ring, &big_n);
    if det_n.is_zero() {
        return Err(Error::Consistency("det N vanishes".into()));
    }
    let lambdas = multiples(&ring, &det_n, n);
    let m = conjugate_diagonal(&ring, &big_n, &lambdas)?;
    let recipe = TriCexRecipe { ring, n, a, b, ab_ideal, corner, big_n, det_n, lambdas, m };
    check_tri_recipe(&recipe)?;
    Ok(recipe)
}

/// Integrality, charpoly and the nontrivial class of every eigenvector content.
pub fn check_tri_recipe(r: &TriCexRecipe) -> Result<()> {
    let ring = &r.ring;
    let back = matrix::mul(ring, &r.m, &r.big_n);
    let expect = matrix::mul(ring, &r.big_n, &matrix::diagonal(ring, &r.lambdas));
    if back != expect {
        return Err(Error::Consistency("M·N ≠ N·diag(λ)".into()));
    }
    if ring.is_principal_class(&r.ab_ideal) {
        return Err(Error::Consistency("(a) + (b) is principal".into()));
    }
    let vecs = crate::deciders::integral_eigenvectors(ring, &r.m, &r.lambdas)?;
    for (lam, v) in r.lambdas.iter().zip(&vecs) {
        let content = crate::linalg::lattice::content_ideal(ring, v)?;
        if ring.is_principal_class(&content) {
            return Err(Error::Consistency(format!("eigenvalue {lam} has a principal content class")));
        }
    }
    Ok(())
}

fn single_prime(ring: &QuadRing, e: &QuadElem) -> Result<Vec<(PrimeIdeal, u32)>> {
    ring.factor_principal(e, crate::arith::DEFAULT_TRIAL_BOUND)
}

fn expect_factorization(ring: &QuadRing, name: &str, e: &QuadElem, want: &[(&PrimeIdeal, u32)]) -> Result<()> {
    let mut got = single_prime(ring, e)?;
    let mut want: Vec<(PrimeIdeal, u32)> = want.iter().filter(|(_, k)| *k > 0).map(|(p, k)| ((*p).clone(), *k)).collect();
    got.sort();
    want.sort();
    if got != want {
        return Err(Error::Consistency(format!("({name}) = ({e}) does not factor as required")));
    }
    Ok(())
}

/// Diagonalization counterexample of size n.
///
/// p₀ is the smallest non-principal prime and m its class order. The element
/// searches pick, in order, a with (a) = p₀p_a, a₀ generating p_a^m, s with
/// (s) = p_a p_s, r and t with (r) = p_a^{m−1}p_r, (t) = p_a^{m−1}p_t, each
/// cofactor prime avoiding the earlier ones. Then arα + stβ = a₀,
/// T₀ = [[a, −tβ], [s, rα]] ⊕ I and M = T₀·diag(0, a₀, 2a₀, …)·T₀⁻¹.
pub fn build_diag_counterexample(d: i64, n: usize) -> Result<DiagCexRecipe> {
    if !(2..=4).contains(&n) {
        return Err(Error::Precondition(format!("n = {n} is outside 2..=4")));
    }
    let ring = QuadRing::new(d)?;
    require_nonprincipal(&ring)?;
    let bound = BigInt::from(DEFAULT_NORM_BOUND);
    let p0 = ring
        .primes_up_to_norm(P0_SEARCH_BOUND)
        .into_iter()
        .find(|p| !ring.is_principal_class(&p.ideal))
        .ok_or_else(|| Error::SearchExhausted { bound: P0_SEARCH_BOUND.to_string() })?;
    let class_order = (2..=ring.class_number() as u32)
        .find(|&k| ring.is_principal_class(&ring.ideal_pow(&p0.ideal, k)))
        .ok_or_else(|| Error::Consistency("class order exceeds the class number".into()))?;
    let m_ = class_order;

    let (a, p_a) = ring.find_element_with_split(&p0.ideal, &[p0.clone()], &bound)?;
    let a0 = ring
        .generator(&ring.ideal_pow(&p_a.ideal, m_))?
        .ok_or_else(|| Error::Consistency("p_a^m is not principal".into()))?;
    let (s, p_s) = ring.find_element_with_split(&p_a.ideal, &[p0.clone(), p_a.clone()], &bound)?;
    let pam1 = ring.ideal_pow(&p_a.ideal, m_ - 1);
    let (r, p_r) = ring.find_element_with_split(&pam1, &[p0.clone(), p_a.clone(), p_s.clone()], &bound)?;
    let (t, p_t) =
        ring.find_element_with_split(&pam1, &[p0.clone(), p_a.clone(), p_s.clone(), p_r.clone()], &bound)?;

    let ar = ring.mul(&a, &r);
    let st = ring.mul(&s, &t);
    let (alpha, beta) = ring.solve_generation(&ar, &st, &a0)?;

    let mut t0 = matrix::identity(&ring, n);
    t0.set(0, 0, a.clone());
    t0.set(0, 1, ring.neg(&ring.mul(&t, &beta)));
    t0.set(1, 0, s.clone());
    t0.set(1, 1, ring.mul(&r, &alpha));
    let lambdas = multiples(&ring, &a0, n);
    let m = conjugate_diagonal(&ring, &t0, &lambdas)?;

    let pi = ring.uniformizer(&p_a);
    let k = ring.field();
    let kp = ring.embed(&pi);
    let mut t0_local = t0.map(|e| ring.embed(e));
    for i in 0..2 {
        let c0 = k.div_exact(t0_local.get(i, 0), &kp).expect("π ≠ 0");
        let c1 = k.div_exact(t0_local.get(i, 1), &k.pow(&kp, m_ - 1)).expect("π ≠ 0");
        t0_local.set(i, 0, c0);
        t0_local.set(i, 1, c1);
    }
    let recipe = DiagCexRecipe {
        ring,
        n,
        class_order,
        p0,
        p_a,
        p_s,
        p_r,
        p_t,
        a,
        a0,
        s,
        r,
        t,
        alpha,
        beta,
        t0,
        lambdas,
        m,
        pi,
        t0_local,
    };
    check_diag_recipe(&recipe)?;
    Ok(recipe)
}

/// Re-verify every factorization, the generation identity, det T₀ and the
/// local witness at p_a.
pub fn check_diag_recipe(c: &DiagCexRecipe) -> Result<()> {
    let ring = &c.ring;
    let m_ = c.class_order;
    let primes = [&c.p0, &c.p_a, &c.p_s, &c.p_r, &c.p_t];
    for i in 0..primes.len() {
        for j in 0..i {
            if primes[i] == primes[j] {
                return Err(Error::Consistency(format!("primes {} and {} coincide", primes[j], primes[i])));
            }
        }
    }
    if ring.is_principal_class(&c.p0.ideal) || ring.is_principal_class(&c.p_a.ideal) {
        return Err(Error::Consistency("p₀ and p_a must be non-principal".into()));
    }
    expect_factorization(ring, "a", &c.a, &[(&c.p0, 1), (&c.p_a, 1)])?;
    expect_factorization(ring, "a0", &c.a0, &[(&c.p_a, m_)])?;
    expect_factorization(ring, "s", &c.s, &[(&c.p_a, 1), (&c.p_s, 1)])?;
    expect_factorization(ring, "r", &c.r, &[(&c.p_a, m_ - 1), (&c.p_r, 1)])?;
    expect_factorization(ring, "t", &c.t, &[(&c.p_a, m_ - 1), (&c.p_t, 1)])?;
    let lhs = ring.add(
        &ring.mul(&ring.mul(&c.a, &c.r), &c.alpha),
        &ring.mul(&ring.mul(&c.s, &c.t), &c.beta),
    );
    if lhs != c.a0 {
        return Err(Error::Consistency("arα + stβ ≠ a₀".into()));
    }
    if matrix::det(ring, &c.t0) != c.a0 {
        return Err(Error::Consistency("det T₀ ≠ a₀".into()));
    }
    let back = matrix::mul(ring, &c.m, &c.t0);
    if back != matrix::mul(ring, &c.t0, &matrix::diagonal(ring, &c.lambdas)) {
        return Err(Error::Consistency("M·T₀ ≠ T₀·diag(λ)".into()));
    }
    check_local_witness(c)
}

/// T₀′ has p_a-integral entries, a p_a-unit determinant and diagonalizes M.
pub fn check_local_witness(c: &DiagCexRecipe) -> Result<()> {
    let ring = &c.ring;
    let k = ring.field();
    if ring.ord_at(&c.pi, &c.p_a) != Some(1) {
        return Err(Error::Consistency("π is not a uniformizer at p_a".into()));
    }
    for e in c.t0_local.entries() {
        if let Some(o) = ring.ord_field(e, &c.p_a) {
            if o < 0 {
                return Err(Error::Consistency(format!("T₀′ entry {e} is not integral at {}", c.p_a)));
            }
        }
    }
    let det = matrix::det(&k, &c.t0_local);
    if ring.ord_field(&det, &c.p_a) != Some(0) {
        return Err(Error::Consistency("det T₀′ is not a unit at p_a".into()));
    }
    let mk = c.m.map(|e| ring.embed(e));
    let conj = matrix::conjugate(&k, &mk, &c.t0_local).ok_or(Error::Rank)?;
    if !matrix::is_diagonal(&k, &conj) {
        return Err(Error::Consistency("T₀′ does not diagonalize M".into()));
    }
    let expect = KElem::from_int(&c.a0);
    let pim = k.pow(&ring.embed(&c.pi), c.class_order);
    if det != k.div_exact(&expect, &pim).expect("π ≠ 0") {
        return Err(Error::Consistency("det T₀′ ≠ a₀/π^m".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tri_recipe_minus_five() {
        let r = build_tri_counterexample(-5, 2).unwrap();
        let ring = r.ring;
        assert_eq!(r.a, ring.elem(2, 0));
        assert_eq!(r.b, ring.elem(1, 1));
        assert_eq!(r.det_n, ring.elem(8, -2));
        assert_eq!(r.lambdas, vec![ring.elem(0, 0), ring.elem(8, -2)]);
        let want = Matrix::from_rows(vec![
            vec![ring.elem(4, -2), ring.elem(2, 2)],
            vec![ring.elem(-2, -2), ring.elem(4, 0)],
        ]);
        assert_eq!(r.m, want);
        assert_eq!(r.corner, CornerSign::Plus);
    }

    #[test]
    fn tri_requires_class_number_above_one() {
        assert!(matches!(build_tri_counterexample(-1, 2), Err(Error::Precondition(_))));
        assert!(matches!(build_diag_counterexample(-1, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn diag_recipe_minus_five() {
        let c = build_diag_counterexample(-5, 2).unwrap();
        let ring = c.ring;
        assert_eq!(c.p0.ideal, ring.ideal(&[ring.elem(2, 0), ring.elem(1, 1)]).unwrap());
        assert_eq!(c.a, ring.elem(1, 1));
        assert_eq!(c.p_a.ideal, ring.ideal(&[ring.elem(3, 0), ring.elem(1, 1)]).unwrap());
        assert_eq!(c.class_order, 2);
        assert_eq!(c.a0, ring.elem(2, -1));
        assert_eq!(c.s, ring.elem(4, 1));
        assert_eq!(c.r, ring.elem(1, -2));
    }

    #[test]
    fn larger_instances_build() {
        for n in 2..=4 {
            build_tri_counterexample(-5, n).unwrap();
            build_diag_counterexample(-5, n).unwrap();
        }
        build_tri_counterexample(-23, 3).unwrap();
        build_diag_counterexample(-23, 2).unwrap();
    }
}
