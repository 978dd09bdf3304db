//! Brute-force oracles over bounded eigenvector scalings, independent of the
//! ideal-theoretic deciders.
//!
//! A scaling c·uᵢ is integral iff c ∈ Iᵢ⁻¹ = conj(Iᵢ)/N(Iᵢ), so c = y/N(Iᵢ)
//! with y ∈ conj(Iᵢ) and N(c) = N(y)/N(Iᵢ)².

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::deciders::integral_eigenvectors;
use crate::error::{Error, Result};
use crate::linalg::eigen::split_eigenvalues;
use crate::linalg::lattice::content_ideal;
use crate::linalg::matrix::{self, Matrix};
use crate::number_ring::{QuadElem, QuadIdeal, QuadRing};
use crate::order::Order;

/// Default bound on N(y)/N(Iᵢ).
pub const ORACLE_NORM_BOUND: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Yes,
    /// No scaling within the bound works.
    No,
    Inconclusive,
}

struct Lattice {
    vectors: Vec<Vec<QuadElem>>,
    contents: Vec<QuadIdeal>,
}

fn lattice(ring: &QuadRing, m: &Matrix<QuadElem>) -> Result<Lattice> {
    let eig = split_eigenvalues(&ring.field(), &m.map(|e| ring.embed(e)))?;
    if !eig.distinct() {
        return Err(Error::Unsupported("oracle needs distinct eigenvalues in k".into()));
    }
    let vals: Vec<QuadElem> = eig.eigen.iter().map(|e| e.value.to_integral().expect("integral eigenvalue")).collect();
    let vectors = integral_eigenvectors(ring, m, &vals)?;
    let contents = vectors.iter().map(|u| content_ideal(ring, u)).collect::<Result<Vec<_>>>()?;
    Ok(Lattice { vectors, contents })
}

fn norms_in(ring: &QuadRing, ideal: &QuadIdeal, bound: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = ring
        .elements_up_to_norm(bound)
        .into_iter()
        .filter(|(n, y)| !n.is_zero() && ring.contains(ideal, y))
        .map(|(n, _)| n)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Whether some integral rescaling of the eigenbasis has unit determinant.
pub fn diag_oracle(ring: &QuadRing, m: &Matrix<QuadElem>, bound: u64) -> Result<OracleVerdict> {
    let lat = lattice(ring, m)?;
    let det = matrix::det(ring, &Matrix::from_cols(&lat.vectors));
    let target = BigRational::new(BigInt::one(), ring.norm(&det));
    let mut options: Vec<Vec<BigRational>> = Vec::new();
    for i in &lat.contents {
        let ni = i.norm_int();
        let conj = ring.ideal_conj(i);
        let norms = norms_in(ring, &conj, &(&ni * BigInt::from(bound)));
        options.push(norms.into_iter().map(|n| BigRational::new(n, &ni * &ni)).collect());
    }
    Ok(if product_hits(&options, 0, BigRational::one(), &target) { OracleVerdict::Yes } else { OracleVerdict::No })
}

fn product_hits(options: &[Vec<BigRational>], i: usize, acc: BigRational, target: &BigRational) -> bool {
    if i == options.len() {
        return &acc == target;
    }
    options[i].iter().any(|c| product_hits(options, i + 1, &acc * c, target))
}

/// Whether some eigenvector has a scaling with unit content, which the first
/// column of any triangularizing matrix needs. Exact for n = 2.
pub fn tri_oracle(ring: &QuadRing, m: &Matrix<QuadElem>) -> Result<OracleVerdict> {
    let lat = lattice(ring, m)?;
    let any_unit_content = lat.contents.iter().any(|i| {
        let ni = i.norm_int();
        let conj = ring.ideal_conj(i);
        ring.elements_of_norm(&ni).iter().any(|y| ring.contains(&conj, y))
    });
    Ok(match (any_unit_content, lat.vectors.len()) {
        (false, _) => OracleVerdict::No,
        (true, 2) => OracleVerdict::Yes,
        _ => OracleVerdict::Inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::{build_diag_counterexample, build_tri_counterexample};
    use crate::deciders::diag::diag_over_ring;
    use crate::deciders::tri::tri_over_ring;

    #[test]
    fn oracles_agree_with_deciders() {
        let t = build_tri_counterexample(-5, 2).unwrap();
        assert_eq!(tri_oracle(&t.ring, &t.m).unwrap(), OracleVerdict::No);
        assert!(tri_over_ring(&t.ring, &t.m).unwrap().is_no());
        let d = build_diag_counterexample(-5, 2).unwrap();
        assert_eq!(diag_oracle(&d.ring, &d.m, ORACLE_NORM_BOUND).unwrap(), OracleVerdict::No);
        let ring = QuadRing::new(-5).unwrap();
        let m = matrix::diagonal(&ring, &[ring.elem(1, 0), ring.elem(2, 0)]);
        assert_eq!(diag_oracle(&ring, &m, 100).unwrap(), OracleVerdict::Yes);
        assert_eq!(tri_oracle(&ring, &m).unwrap(), OracleVerdict::Yes);
        assert!(diag_over_ring(&ring, &m).unwrap().is_yes());
    }
}
