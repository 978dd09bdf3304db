//! Diagonalization over global fields and global rings.

use super::decision::{verify_diag_witness, Certificate, Decision};
use super::{eigen_over, embed_matrix, integral_eigenvectors, integral_poly, map_decision, MAX_DEDEKIND_N};
use crate::arith::{factor, DEFAULT_TRIAL_BOUND};
use crate::error::{Error, Result};
use crate::linalg::eigen::{split_eigenvalues, EigenData};
use crate::linalg::lattice::saturate;
use crate::linalg::matrix::{self, Matrix};
use crate::number_ring::{PrimeIdeal, QuadElem, QuadIdeal, QuadRing};
use crate::order::{clear_denominators, GlobalField, Order};
use crate::ring::Ring;

pub(crate) fn defect<E: Clone>(eig: &EigenData<E>) -> Option<Certificate<E>> {
    eig.eigen.iter().find(|e| e.kernel.len() < e.mult).map(|e| Certificate::DefectiveEigenvalue {
        eigenvalue: e.value.clone(),
        algebraic: e.mult,
        geometric: e.kernel.len(),
    })
}

pub fn diag_over_field<F: GlobalField>(f: &F, m: &Matrix<F::Elem>) -> Result<Decision<F::Elem>> {
    matrix::require_square(m)?;
    let eig = split_eigenvalues(f, m)?;
    if !eig.split() {
        return Ok(Decision::no(Some(Certificate::NonSplitFactor { factor: eig.residual })));
    }
    if let Some(c) = defect(&eig) {
        return Ok(Decision::no(Some(c)));
    }
    let cols: Vec<Vec<F::Elem>> = eig.eigen.iter().flat_map(|e| e.kernel.clone()).collect();
    let t = Matrix::from_cols(&cols);
    if !verify_diag_witness(f, m, &t) {
        return Err(Error::Consistency("field diagonalization witness fails".into()));
    }
    Ok(Decision::yes(Some(t)))
}

/// Prime factors of a nonzero element, rendered.
pub(crate) fn prime_labels<O: Order>(o: &O, e: &O::Elem) -> Result<Vec<String>> {
    let q = o.to_quad(e);
    match o.quad() {
        Some(ring) => Ok(ring.factor_principal(&q, DEFAULT_TRIAL_BOUND)?.iter().map(|(p, _)| p.to_string()).collect()),
        None => Ok(factor(&q.x, DEFAULT_TRIAL_BOUND)?.iter().map(|(p, _)| p.to_string()).collect()),
    }
}

/// Diagonalize over ℤ or a quadratic order.
///
/// PID mode assembles saturated eigenlattice bases into ϑ and answers yes iff
/// det ϑ is a unit. Non-PID orders with distinct eigenvalues use the ideal
/// B = (Π Iᵢ)·(det U)⁻¹ built from content ideals Iᵢ of integral
/// eigenvectors uᵢ: columns cᵢuᵢ are integral iff Jᵢ = cᵢIᵢ is integral, and
/// det is a unit iff Π Jᵢ = B, so a witness exists iff B is integral and
/// splits into integral Jᵢ with [Jᵢ] = [Iᵢ]. Since det U ∈ Π Iᵢ, B is the
/// inverse of an integral ideal.
pub fn diag_over_ring<O: Order>(o: &O, m: &Matrix<O::Elem>) -> Result<Decision<O::Elem>> {
    let eig = eigen_over(o, m)?;
    if !eig.split() {
        let factor = integral_poly(o, &eig.residual)?;
        return Ok(Decision::no(Some(Certificate::NonSplitFactor { factor })));
    }
    if let Some(c) = defect(&eig) {
        let d = Decision::no(Some(c));
        return Ok(map_decision(d, |e| o.integral(e).expect("integral eigenvalue")));
    }
    if o.pid_mode() {
        let mut cols = Vec::new();
        for e in &eig.eigen {
            let basis: Vec<Vec<O::Elem>> = e.kernel.iter().map(|v| clear_denominators(o, v)).collect();
            cols.extend(saturate(o, &basis)?);
        }
        let theta = Matrix::from_cols(&cols);
        let det = matrix::det(o, &theta);
        if !o.is_unit(&det) {
            let primes = prime_labels(o, &det)?;
            return Ok(Decision::no(Some(Certificate::DetThetaObstruction { det, primes })));
        }
        if !verify_diag_witness(o, m, &theta) {
            return Err(Error::Consistency("saturated eigenbasis does not diagonalize".into()));
        }
        return Ok(Decision::yes(Some(theta)));
    }
    let ring = o.quad().ok_or_else(|| Error::Consistency("non-PID order without quadratic structure".into()))?;
    if !eig.distinct() {
        return Ok(Decision::unsupported(format!("repeated eigenvalues over the non-PID ring {}", o.label())));
    }
    if m.rows() > MAX_DEDEKIND_N {
        return Ok(Decision::unsupported(format!("n = {} exceeds {MAX_DEDEKIND_N} in Dedekind mode", m.rows())));
    }
    let mq = m.map(|e| o.to_quad(e));
    let vals: Vec<QuadElem> = eig.eigen.iter().map(|e| o.to_quad(&o.integral(&e.value).unwrap())).collect();
    let d = dedekind_diag(&ring, &mq, &vals)?;
    Ok(map_decision(d, |e| o.from_quad(e)))
}

/// Content ideals, eigenvector matrix and the ideal B for distinct eigenvalues.
pub struct EigenLattice {
    pub vectors: Vec<Vec<QuadElem>>,
    pub contents: Vec<QuadIdeal>,
    pub det: QuadElem,
    pub b: QuadIdeal,
}

pub fn eigen_lattice(ring: &QuadRing, m: &Matrix<QuadElem>, vals: &[QuadElem]) -> Result<EigenLattice> {
    let vectors = integral_eigenvectors(ring, m, vals)?;
    let contents = vectors
        .iter()
        .map(|u| crate::linalg::lattice::content_ideal(ring, u))
        .collect::<Result<Vec<_>>>()?;
    let det = matrix::det(ring, &Matrix::from_cols(&vectors));
    let prod = contents.iter().fold(QuadIdeal::unit(), |acc, i| ring.ideal_mul(&acc, i));
    let b = ring.ideal_div(&prod, &ring.principal(&det)?);
    Ok(EigenLattice { vectors, contents, det, b })
}

/// Integral ideals Jᵢ with Π Jᵢ = B and [Jᵢ] = [Iᵢ], if any.
pub fn class_distribution(ring: &QuadRing, b: &QuadIdeal, contents: &[QuadIdeal]) -> Result<Option<Vec<QuadIdeal>>> {
    if !b.is_integral() {
        return Ok(None);
    }
    let factors = ring.factor_ideal(b, DEFAULT_TRIAL_BOUND)?;
    let n = contents.len();
    let mut js = vec![QuadIdeal::unit(); n];
    Ok(distribute(ring, &factors, contents, &mut js))
}

fn distribute(
    ring: &QuadRing,
    factors: &[(PrimeIdeal, u32)],
    contents: &[QuadIdeal],
    js: &mut Vec<QuadIdeal>,
) -> Option<Vec<QuadIdeal>> {
    let Some(((p, e), rest)) = factors.split_first() else {
        return js.iter().zip(contents).all(|(j, i)| ring.same_class(j, i)).then(|| js.clone());
    };
    for parts in compositions(*e, js.len()) {
        let saved = js.clone();
        for (j, &k) in js.iter_mut().zip(&parts) {
            if k > 0 {
                *j = ring.ideal_mul(j, &ring.ideal_pow(&p.ideal, k));
            }
        }
        if let Some(found) = distribute(ring, rest, contents, js) {
            return Some(found);
        }
        *js = saved;
    }
    None
}

/// Ordered ways to write e as a sum of k nonnegative parts.
fn compositions(e: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![e]];
    }
    let mut out = Vec::new();
    for first in 0..=e {
        for mut rest in compositions(e - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn dedekind_diag(ring: &QuadRing, m: &Matrix<QuadElem>, vals: &[QuadElem]) -> Result<Decision<QuadElem>> {
    let lat = eigen_lattice(ring, m, vals)?;
    let Some(js) = class_distribution(ring, &lat.b, &lat.contents)? else {
        let targets = lat.contents.iter().map(|i| ring.class_representative(i)).collect();
        return Ok(Decision::no(Some(Certificate::ClassDistributionInfeasible { b: lat.b, targets })));
    };
    let k = ring.field();
    let mut cols = Vec::new();
    for ((u, i), j) in lat.vectors.iter().zip(&lat.contents).zip(&js) {
        let scale = ring
            .generator_k(&ring.ideal_div(j, i))
            .ok_or_else(|| Error::Consistency("scaling ideal is not principal".into()))?;
        let col = u
            .iter()
            .map(|e| {
                k.mul(&scale, &ring.embed(e))
                    .to_integral()
                    .ok_or_else(|| Error::Consistency("scaled eigenvector is not integral".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        cols.push(col);
    }
    let t = Matrix::from_cols(&cols);
    if !verify_diag_witness(ring, m, &t) {
        return Err(Error::Consistency("Dedekind diagonalization witness fails".into()));
    }
    Ok(Decision::yes(Some(t)))
}

/// Independent recheck of a ClassDistributionInfeasible certificate: B and
/// the class targets are recomputed from M and the distribution search rerun.
pub fn recheck_class_distribution(
    ring: &QuadRing,
    m: &Matrix<QuadElem>,
    b: &QuadIdeal,
    targets: &[QuadIdeal],
) -> Result<bool> {
    let eig = split_eigenvalues(&ring.field(), &embed_matrix(ring, m))?;
    if !eig.distinct() || targets.len() != eig.eigen.len() {
        return Ok(false);
    }
    let vals: Vec<QuadElem> = eig.eigen.iter().map(|e| e.value.to_integral().unwrap()).collect();
    let lat = eigen_lattice(ring, m, &vals)?;
    let classes_match = lat.contents.iter().zip(targets).all(|(i, t)| ring.same_class(i, t));
    Ok(&lat.b == b
        && classes_match
        && class_distribution(ring, &lat.b, &lat.contents)?.is_none())
}
