//! Three-leg certification that a matrix defeats the local-global principle.

use super::{check_local_witness, DiagCexRecipe};
use crate::deciders::decision::{verify_diag_witness, verify_tri_witness};
use crate::deciders::diag::{diag_over_field, diag_over_ring, recheck_class_distribution};
use crate::deciders::local::{diag_local, tri_residue_field, LocalOrder};
use crate::deciders::tri::{recheck_content_obstruction, tri_over_field, tri_over_ring};
use crate::deciders::{Certificate, Kind, Verdict};
use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::number_ring::{KElem, QuadElem, QuadRing};
use crate::order::Order;

#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertReport {
    pub kind: Kind,
    pub ring: String,
    pub bound: u64,
    pub legs: Vec<Leg>,
    pub field_witness: Matrix<KElem>,
    pub primes_checked: Vec<String>,
    pub certificate: Certificate<QuadElem>,
}

fn fail(leg: &str, reason: impl Into<String>) -> Error {
    Error::CertificationFailed { leg: leg.into(), reason: reason.into() }
}

/// Certify that M is tri/diag over k, over every O_P with N(P) ≤ `bound`
/// (via residue fields for tri and the valuation criterion for diag), and not
/// over O.
pub fn certify(ring: &QuadRing, m: &Matrix<QuadElem>, kind: Kind, bound: u64) -> Result<CertReport> {
    let k = ring.field();
    let mk = m.map(|e| ring.embed(e));

    let field = match kind {
        Kind::Tri => tri_over_field(&k, &mk)?,
        Kind::Diag => diag_over_field(&k, &mk)?,
    };
    let field_witness = match (&field.verdict, &field.witness) {
        (Verdict::Yes, Some(w)) => w.clone(),
        _ => return Err(fail("global-field", format!("not {kind} over k"))),
    };
    let ok = match kind {
        Kind::Tri => verify_tri_witness(&k, &mk, &field_witness),
        Kind::Diag => verify_diag_witness(&k, &mk, &field_witness),
    };
    if !ok {
        return Err(fail("global-field", "witness does not verify"));
    }

    let mut primes_checked = Vec::new();
    for p in ring.places(bound) {
        let d = match kind {
            Kind::Tri => tri_residue_field(ring, m, &p)?,
            Kind::Diag => diag_local(ring, m, &p)?,
        };
        if !d.is_yes() {
            return Err(fail("local", format!("verdict {} at {p}", d.verdict)));
        }
        primes_checked.push(p.to_string());
    }

    let global = match kind {
        Kind::Tri => tri_over_ring(ring, m)?,
        Kind::Diag => diag_over_ring(ring, m)?,
    };
    if !global.is_no() {
        return Err(fail("global-ring", format!("verdict {} over {}", global.verdict, ring.label())));
    }
    let certificate = global.certificate.ok_or_else(|| fail("global-ring", "no certificate"))?;
    let rechecked = match (&kind, &certificate) {
        (Kind::Tri, Certificate::ContentClassObstruction { classes, blocked }) => {
            recheck_content_obstruction(ring, m, classes, blocked)?
        }
        (Kind::Diag, Certificate::ClassDistributionInfeasible { b, targets }) => {
            recheck_class_distribution(ring, m, b, targets)?
        }
        (_, c) => return Err(fail("global-ring", format!("unexpected certificate {}", c.tag()))),
    };
    if !rechecked {
        return Err(fail("global-ring", "certificate does not re-verify"));
    }

    let legs = vec![
        Leg { name: "global-field", passed: true, detail: format!("{kind} over k with verified witness") },
        Leg {
            name: "local",
            passed: true,
            detail: format!("{} primes of norm <= {bound}", primes_checked.len()),
        },
        Leg { name: "global-ring", passed: true, detail: format!("{} re-verified", certificate.tag()) },
    ];
    Ok(CertReport { kind, ring: ring.label(), bound, legs, field_witness, primes_checked, certificate })
}

/// [`certify`] for a generated diagonalization recipe, plus the scaled local
/// witness at p_a.
pub fn certify_diag_recipe(recipe: &DiagCexRecipe, bound: u64) -> Result<CertReport> {
    let mut report = certify(&recipe.ring, &recipe.m, Kind::Diag, bound)?;
    check_local_witness(recipe).map_err(|e| fail("local", format!("witness at {}: {e}", recipe.p_a)))?;
    report.legs[1].detail.push_str(&format!("; unit-determinant witness at {}", recipe.p_a));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::{build_diag_counterexample, build_tri_counterexample};
    use crate::linalg::matrix;

    #[test]
    fn counterexamples_certify() {
        let t = build_tri_counterexample(-5, 2).unwrap();
        let r = certify(&t.ring, &t.m, Kind::Tri, 100).unwrap();
        assert!(r.legs.iter().all(|l| l.passed));
        let d = build_diag_counterexample(-5, 2).unwrap();
        let r = certify_diag_recipe(&d, 100).unwrap();
        assert_eq!(r.certificate.tag(), "ClassDistributionInfeasible");
    }

    #[test]
    fn diagonal_matrix_fails_global_ring_leg() {
        let ring = QuadRing::new(-5).unwrap();
        let m = matrix::diagonal(&ring, &[ring.elem(1, 0), ring.elem(2, 0)]);
        match certify(&ring, &m, Kind::Tri, 100) {
            Err(Error::CertificationFailed { leg, .. }) => assert_eq!(leg, "global-ring"),
            other => panic!("{other:?}"),
        }
    }
}
