//! Self-describing witness entries and their independent re-verification.

use serde_json::{json, Value};

use super::codec::{matrix_from_json, matrix_json, prime_from_json, JsonCodec};
use crate::deciders::local::LocalOrder;
use crate::deciders::residue::QuadResidue;
use crate::deciders::{decision, Kind};
use crate::error::{Error, Result};
use crate::linalg::matrix::{self, Matrix};
use crate::number_ring::{PrimeIdeal, QuadRing};
use crate::ring::{Integers, Rationals, Zmod};

/// A claim that `witness` triangularizes or diagonalizes `matrix` over the
/// ring described by `over`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessEntry {
    pub problem: Kind,
    pub over: Value,
    pub matrix: Value,
    pub witness: Value,
    pub source: String,
}

impl WitnessEntry {
    pub fn new<R: JsonCodec>(r: &R, problem: Kind, m: &Matrix<R::Elem>, t: &Matrix<R::Elem>, source: String) -> Self {
        WitnessEntry { problem, over: r.descriptor(), matrix: matrix_json(r, m), witness: matrix_json(r, t), source }
    }

    /// Entry for a field witness that must also be integral with unit
    /// determinant at a prime.
    pub fn local_unit(
        ring: &QuadRing,
        prime: &PrimeIdeal,
        problem: Kind,
        m: &Matrix<crate::number_ring::KElem>,
        t: &Matrix<crate::number_ring::KElem>,
        source: String,
    ) -> Self {
        let k = ring.field();
        WitnessEntry {
            problem,
            over: json!({"ring": "Kp", "d": ring.d(), "prime": super::codec::prime_json(prime)}),
            matrix: matrix_json(&k, m),
            witness: matrix_json(&k, t),
            source,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "problem": self.problem.to_string(),
            "over": self.over,
            "matrix": self.matrix,
            "witness": self.witness,
            "source": self.source,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let problem: Kind = v.get("problem").and_then(Value::as_str).unwrap_or("").parse()?;
        let field = |k: &str| v.get(k).cloned().ok_or_else(|| Error::Parse { location: k.into(), message: "missing".into() });
        Ok(WitnessEntry {
            problem,
            over: field("over")?,
            matrix: field("matrix")?,
            witness: field("witness")?,
            source: v.get("source").and_then(Value::as_str).unwrap_or("").to_string(),
        })
    }

    /// Re-check the claim from the serialized data alone.
    pub fn verify(&self) -> Result<bool> {
        let over = &self.over;
        let ring = over.get("ring").and_then(Value::as_str).unwrap_or("");
        let quad = || -> Result<QuadRing> {
            let d = over.get("d").and_then(Value::as_i64).ok_or_else(|| Error::Validation("missing d".into()))?;
            QuadRing::new(d)
        };
        match ring {
            "Z" => self.check(&Integers),
            "Q" => self.check(&Rationals),
            "Zmod" => {
                let n = over.get("modulus").and_then(Value::as_u64).filter(|&n| n > 1);
                self.check(&Zmod::new(n.ok_or_else(|| Error::Validation("bad modulus".into()))?))
            }
            "Qsqrt" => self.check(&quad()?),
            "K" => self.check(&quad()?.field()),
            "OmodP" => {
                let r = quad()?;
                let p = prime_from_json(&r, &over["prime"], "over.prime")?;
                let k = over.get("k").and_then(Value::as_u64).filter(|&k| k >= 1).ok_or_else(|| Error::Validation("bad k".into()))?;
                self.check(&QuadResidue::new(r, p, k as u32))
            }
            "Kp" => {
                let r = quad()?;
                let p = prime_from_json(&r, &over["prime"], "over.prime")?;
                let k = r.field();
                let t = matrix_from_json(&k, &self.witness, "witness")?;
                let integral = t.entries().iter().all(|e| r.ord_field(e, &p).map_or(true, |o| o >= 0));
                let unit_det = r.ord_field(&matrix::det(&k, &t), &p) == Some(0);
                Ok(integral && unit_det && self.check(&k)?)
            }
            other => Err(Error::Validation(format!("unknown ring `{other}` in witness entry"))),
        }
    }

    fn check<R: JsonCodec>(&self, r: &R) -> Result<bool> {
        let m = matrix_from_json(r, &self.matrix, "matrix")?;
        let t = matrix_from_json(r, &self.witness, "witness")?;
        if !m.is_square() {
            return Ok(false);
        }
        Ok(match self.problem {
            Kind::Tri => decision::verify_tri_witness(r, &m, &t),
            Kind::Diag => decision::verify_diag_witness(r, &m, &t),
        })
    }
}

/// Outcome of re-verifying every witness of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub failed: Vec<String>,
}

/// Re-verify the `witnesses` array of a report document.
pub fn verify_report(doc: &Value) -> Result<VerifyOutcome> {
    let list = doc
        .get("witnesses")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse { location: "witnesses".into(), message: "missing witnesses array".into() })?;
    let mut failed = Vec::new();
    for (i, v) in list.iter().enumerate() {
        let e = WitnessEntry::from_json(v)?;
        let ok = e.verify().unwrap_or(false);
        if !ok {
            failed.push(format!("witnesses[{i}] ({})", e.source));
        }
    }
    Ok(VerifyOutcome { checked: list.len(), failed })
}
