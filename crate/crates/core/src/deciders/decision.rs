//! Verdicts, witnesses and obstruction certificates.

use std::fmt;

use crate::linalg::matrix::{self, Matrix};
use crate::number_ring::QuadIdeal;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unsupported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unsupported => "unsupported",
        })
    }
}

/// Triangularization or diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Tri,
    Diag,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Tri => "tri",
            Kind::Diag => "diag",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "tri" => Ok(Kind::Tri),
            "diag" => Ok(Kind::Diag),
            _ => Err(crate::error::Error::Validation(format!("unknown kind `{s}`, expected tri or diag"))),
        }
    }
}

/// Eigenvalue together with the content ideal of an integral eigenvector and
/// the reduced representative of its class.
#[derive(Debug, Clone, PartialEq)]
pub struct ContentClass<E> {
    pub eigenvalue: E,
    pub content: QuadIdeal,
    pub class: QuadIdeal,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<E> {
    /// Monic factor of the characteristic polynomial with no root in the field.
    NonSplitFactor { factor: Vec<E> },
    /// Eigenvalue whose eigenspace is smaller than its multiplicity.
    DefectiveEigenvalue { eigenvalue: E, algebraic: usize, geometric: usize },
    /// Every eigenvalue ordering fails the unit-content requirement.
    /// `blocked` lists eigenvalue index sets whose eigenvector lattice is not
    /// free, with the ideal of maximal minors.
    ContentClassObstruction { classes: Vec<ContentClass<E>>, blocked: Vec<(Vec<usize>, QuadIdeal)> },
    /// det ϑ of the saturated eigenbasis is not a unit.
    DetThetaObstruction { det: E, primes: Vec<String> },
    /// ord_P(det) of an integral eigenbasis exceeds the total saturation
    /// index; for [[x,a],[0,y]] these are ord(x−y) and ord(a).
    LocalValuationObstruction { prime: String, ord_det: i64, ord_content: i64 },
    /// Squarefree characteristic factor that does not split over the completion.
    LocalNonSplit { prime: String, factor: Vec<E>, roots: usize },
    /// No distribution of B = ΠIᵢ·(det U)⁻¹ into integral Jᵢ with [Jᵢ] = [Iᵢ].
    ClassDistributionInfeasible { b: QuadIdeal, targets: Vec<QuadIdeal> },
}

impl<E> Certificate<E> {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::NonSplitFactor { .. } => "NonSplitFactor",
            Certificate::DefectiveEigenvalue { .. } => "DefectiveEigenvalue",
            Certificate::ContentClassObstruction { .. } => "ContentClassObstruction",
            Certificate::DetThetaObstruction { .. } => "DetThetaObstruction",
            Certificate::LocalValuationObstruction { .. } => "LocalValuationObstruction",
            Certificate::LocalNonSplit { .. } => "LocalNonSplit",
            Certificate::ClassDistributionInfeasible { .. } => "ClassDistributionInfeasible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision<E> {
    pub verdict: Verdict,
    pub witness: Option<Matrix<E>>,
    pub certificate: Option<Certificate<E>>,
    pub note: Option<String>,
}

impl<E> Decision<E> {
    pub fn yes(witness: Option<Matrix<E>>) -> Self {
        Decision { verdict: Verdict::Yes, witness, certificate: None, note: None }
    }

    pub fn no(certificate: Option<Certificate<E>>) -> Self {
        Decision { verdict: Verdict::No, witness: None, certificate, note: None }
    }

    pub fn unsupported(reason: impl Into<String>) -> Self {
        Decision { verdict: Verdict::Unsupported, witness: None, certificate: None, note: Some(reason.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }
}

/// adj(T)·M·T, which equals det(T)·T⁻¹MT.
fn scaled_conjugate<R: Ring>(r: &R, m: &Matrix<R::Elem>, t: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    matrix::mul(r, &matrix::mul(r, &matrix::adjugate(r, t), m), t)
}

/// T invertible over `r` and T⁻¹MT upper triangular.
pub fn verify_tri_witness<R: Ring>(r: &R, m: &Matrix<R::Elem>, t: &Matrix<R::Elem>) -> bool {
    t.is_square()
        && t.rows() == m.rows()
        && r.is_unit(&matrix::det(r, t))
        && matrix::is_upper_triangular(r, &scaled_conjugate(r, m, t))
}

/// T invertible over `r` and T⁻¹MT diagonal.
pub fn verify_diag_witness<R: Ring>(r: &R, m: &Matrix<R::Elem>, t: &Matrix<R::Elem>) -> bool {
    t.is_square()
        && t.rows() == m.rows()
        && r.is_unit(&matrix::det(r, t))
        && matrix::is_diagonal(r, &scaled_conjugate(r, m, t))
}
