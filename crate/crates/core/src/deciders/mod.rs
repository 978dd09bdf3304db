//! Decision procedures for triangularization and diagonalization over global
//! fields, global rings, completions and residue rings.

pub mod decision;
pub mod diag;
pub mod local;
pub mod report;
pub mod residue;
pub mod tri;

pub use decision::{Certificate, ContentClass, Decision, Kind, Verdict};

use crate::arith::combinations;
use crate::error::{Error, Result};
use crate::linalg::eigen::{split_eigenvalues, EigenData};
use crate::linalg::matrix::{self, Matrix};
use crate::number_ring::{QuadElem, QuadIdeal, QuadRing};
use crate::order::{GlobalField, Order};
use crate::ring::Ring;

/// Largest matrix size handled by the Dedekind-mode searches.
pub const MAX_DEDEKIND_N: usize = 6;

pub(crate) fn embed_matrix<O: Order>(o: &O, m: &Matrix<O::Elem>) -> Matrix<<O::F as Ring>::Elem> {
    m.map(|e| o.embed(e))
}

pub(crate) fn eigen_over<O: Order>(o: &O, m: &Matrix<O::Elem>) -> Result<EigenData<<O::F as Ring>::Elem>> {
    matrix::require_square(m)?;
    split_eigenvalues(&o.frac(), &embed_matrix(o, m))
}

/// Coefficients of a monic integral polynomial over the order.
pub(crate) fn integral_poly<O: Order>(o: &O, p: &[<O::F as Ring>::Elem]) -> Result<Vec<O::Elem>> {
    p.iter()
        .map(|c| o.integral(c).ok_or_else(|| Error::Consistency("non-integral factor of an integral charpoly".into())))
        .collect()
}

/// Eigenvalues with multiplicity, largest first.
pub(crate) fn descending<F: GlobalField>(f: &F, e: &EigenData<F::Elem>) -> Vec<F::Elem> {
    let mut v = e.with_multiplicity();
    v.sort_by(|a, b| f.cmp_elem(b, a));
    v
}

/// T = C·diag(1, T′).
pub(crate) fn stack_block<R: Ring>(r: &R, c: &Matrix<R::Elem>, inner: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = c.rows();
    let mut big = matrix::identity(r, n);
    for i in 0..inner.rows() {
        for j in 0..inner.cols() {
            big.set(i + 1, j + 1, inner.get(i, j).clone());
        }
    }
    matrix::mul(r, c, &big)
}

pub(crate) fn lower_block<E: Clone>(m: &Matrix<E>) -> Matrix<E> {
    let idx: Vec<usize> = (1..m.rows()).collect();
    m.submatrix(&idx, &idx)
}

/// Ideal generated by the maximal minors of the n×k matrix with the given
/// columns.
pub fn minor_ideal(ring: &QuadRing, cols: &[Vec<QuadElem>]) -> Result<QuadIdeal> {
    let n = cols.first().map_or(0, |c| c.len());
    let k = cols.len();
    let all: Vec<usize> = (0..k).collect();
    let m = Matrix::from_cols(cols);
    let gens: Vec<QuadElem> = combinations(n, k)
        .into_iter()
        .map(|rows| matrix::det(ring, &m.submatrix(&rows, &all)))
        .filter(|d| !d.is_zero())
        .collect();
    if gens.is_empty() {
        return Err(Error::Rank);
    }
    ring.ideal(&gens)
}

/// Integral eigenvectors, one per eigenvalue, for a matrix with distinct
/// eigenvalues in the given order.
pub fn integral_eigenvectors(
    ring: &QuadRing,
    m: &Matrix<QuadElem>,
    values: &[QuadElem],
) -> Result<Vec<Vec<QuadElem>>> {
    let k = ring.field();
    let mk = embed_matrix(ring, m);
    values
        .iter()
        .map(|lam| {
            let ker = matrix::kernel(&k, &matrix::shift(&k, &mk, &ring.embed(lam)));
            match ker.as_slice() {
                [v] => normalize_eigenvector(ring, &crate::order::clear_denominators(ring, v)),
                _ => Err(Error::Consistency(format!("eigenspace of {lam} is not a line"))),
            }
        })
        .collect()
}

/// Rescale an integral vector so its content is the reduced representative
/// of its class, then make the first nonzero coordinate a canonical associate.
pub fn normalize_eigenvector(ring: &QuadRing, u: &[QuadElem]) -> Result<Vec<QuadElem>> {
    let content = crate::linalg::lattice::content_ideal(ring, u)?;
    let rep = ring.class_representative(&content);
    let c = ring
        .generator_k(&ring.ideal_div(&rep, &content))
        .ok_or_else(|| Error::Consistency("class representative is not equivalent".into()))?;
    let k = ring.field();
    let scaled = u
        .iter()
        .map(|e| {
            k.mul(&c, &ring.embed(e))
                .to_integral()
                .ok_or_else(|| Error::Consistency("rescaled eigenvector is not integral".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let lead = scaled.iter().find(|e| !e.is_zero()).expect("nonzero vector");
    let unit = ring.canonical_associate(lead).1;
    Ok(scaled.iter().map(|e| ring.mul(e, &unit)).collect())
}

pub(crate) fn map_decision<E: Clone, G: Clone>(d: Decision<E>, f: impl Fn(&E) -> G) -> Decision<G> {
    let certificate = d.certificate.map(|c| match c {
        Certificate::NonSplitFactor { factor } => Certificate::NonSplitFactor { factor: factor.iter().map(&f).collect() },
        Certificate::DefectiveEigenvalue { eigenvalue, algebraic, geometric } => {
            Certificate::DefectiveEigenvalue { eigenvalue: f(&eigenvalue), algebraic, geometric }
        }
        Certificate::ContentClassObstruction { classes, blocked } => Certificate::ContentClassObstruction {
            classes: classes
                .into_iter()
                .map(|c| ContentClass { eigenvalue: f(&c.eigenvalue), content: c.content, class: c.class })
                .collect(),
            blocked,
        },
        Certificate::DetThetaObstruction { det, primes } => Certificate::DetThetaObstruction { det: f(&det), primes },
        Certificate::LocalValuationObstruction { prime, ord_det, ord_content } => {
            Certificate::LocalValuationObstruction { prime, ord_det, ord_content }
        }
        Certificate::LocalNonSplit { prime, factor, roots } => {
            Certificate::LocalNonSplit { prime, factor: factor.iter().map(&f).collect(), roots }
        }
        Certificate::ClassDistributionInfeasible { b, targets } => Certificate::ClassDistributionInfeasible { b, targets },
    });
    Decision { verdict: d.verdict, witness: d.witness.map(|w| w.map(&f)), certificate, note: d.note }
}
