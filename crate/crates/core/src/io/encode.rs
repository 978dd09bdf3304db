//! JSON documents for decisions, reports, recipes and certifications.

use serde_json::{json, Map, Value};

use super::codec::{ideal_json, matrix_from_rendered, matrix_json, prime_json, quad_json, JsonCodec};
use super::witness::WitnessEntry;
use crate::counterexamples::{CertReport, CornerSign, DiagCexRecipe, TriCexRecipe};
use crate::deciders::local::LocalOrder;
use crate::deciders::report::{ConditionResult, Report};
use crate::deciders::{Certificate, Decision, Kind};
use crate::error::Result;
use crate::linalg::matrix::Matrix;
use crate::number_ring::QuadRing;
use crate::order::Order;

type Enc<'a, E> = &'a dyn Fn(&E) -> Value;

fn elems<E>(v: &[E], enc: Enc<E>) -> Value {
    Value::Array(v.iter().map(enc).collect())
}

fn mat<E: Clone>(m: &Matrix<E>, enc: Enc<E>) -> Value {
    Value::Array((0..m.rows()).map(|i| elems(&m.row(i), enc)).collect())
}

pub fn certificate_json<E>(c: &Certificate<E>, enc: Enc<E>) -> Value {
    let mut body = match c {
        Certificate::NonSplitFactor { factor } => json!({"factor": elems(factor, enc)}),
        Certificate::DefectiveEigenvalue { eigenvalue, algebraic, geometric } => {
            json!({"eigenvalue": enc(eigenvalue), "algebraic": algebraic, "geometric": geometric})
        }
        Certificate::ContentClassObstruction { classes, blocked } => json!({
            "classes": classes.iter().map(|c| json!({
                "eigenvalue": enc(&c.eigenvalue),
                "content": ideal_json(&c.content),
                "class": ideal_json(&c.class),
            })).collect::<Vec<_>>(),
            "blocked": blocked.iter().map(|(idx, i)| json!({"indices": idx, "minors": ideal_json(i)})).collect::<Vec<_>>(),
        }),
        Certificate::DetThetaObstruction { det, primes } => json!({"det": enc(det), "primes": primes}),
        Certificate::LocalValuationObstruction { prime, ord_det, ord_content } => {
            json!({"prime": prime, "ord_det": ord_det, "ord_content": ord_content})
        }
        Certificate::LocalNonSplit { prime, factor, roots } => {
            json!({"prime": prime, "factor": elems(factor, enc), "roots": roots})
        }
        Certificate::ClassDistributionInfeasible { b, targets } => json!({
            "b": ideal_json(b),
            "targets": targets.iter().map(ideal_json).collect::<Vec<_>>(),
        }),
    };
    body["type"] = json!(c.tag());
    body
}

/// verdict, and witness, certificate and note when present.
pub fn decision_json<E: Clone>(d: &Decision<E>, enc: Enc<E>) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("verdict".into(), json!(d.verdict.to_string()));
    if let Some(w) = &d.witness {
        o.insert("witness".into(), mat(w, enc));
    }
    if let Some(c) = &d.certificate {
        o.insert("certificate".into(), certificate_json(c, enc));
    }
    if let Some(n) = &d.note {
        o.insert("note".into(), json!(n));
    }
    o
}

pub fn typed_decision_json<R: JsonCodec>(r: &R, d: &Decision<R::Elem>) -> Value {
    Value::Object(decision_json(d, &|e| r.elem_json(e)))
}

/// Rendered entries converted back to structured values; unreadable ones stay strings.
fn rendered_enc<R: JsonCodec>(r: &R) -> impl Fn(&String) -> Value + '_ {
    move |s| r.from_rendered(s).map(|e| r.elem_json(&e)).unwrap_or_else(|_| json!(s))
}

fn witness_from<R: JsonCodec>(
    r: &R,
    kind: Kind,
    m: &Matrix<R::Elem>,
    d: &Decision<String>,
    source: String,
) -> Result<Option<WitnessEntry>> {
    match &d.witness {
        Some(w) => Ok(Some(WitnessEntry::new(r, kind, m, &matrix_from_rendered(r, w)?, source))),
        None => Ok(None),
    }
}

/// Condition blocks of a report with structured entries, and the embedded
/// witnesses.
pub fn report_json<O>(o: &O, m: &Matrix<O::Elem>, report: &Report) -> Result<(Value, Vec<WitnessEntry>)>
where
    O: LocalOrder + JsonCodec,
    O::F: JsonCodec,
    O::Residue: JsonCodec,
{
    let k = o.frac();
    let mk = m.map(|e| o.embed(e));
    let places = o.places(report.bound);
    let mut witnesses = Vec::new();
    let mut blocks = Vec::new();
    for c in &report.conditions {
        let mut block = Map::new();
        block.insert("condition".into(), json!(c.condition));
        block.insert("label".into(), json!(c.label));
        block.insert("verdict".into(), json!(c.verdict.to_string()));
        if let Some(d) = &c.global {
            let fields = match c.condition {
                5 => {
                    witnesses.extend(witness_from(&k, report.kind, &mk, d, "condition 5".into())?);
                    decision_json(d, &rendered_enc(&k))
                }
                _ => {
                    witnesses.extend(witness_from(o, report.kind, m, d, format!("condition {}", c.condition))?);
                    decision_json(d, &rendered_enc(o))
                }
            };
            for (key, v) in fields {
                if key != "verdict" {
                    block.insert(key, v);
                }
            }
        }
        if c.global.is_none() {
            block.insert("local".into(), local_json(o, m, report.kind, c, &places, &mut witnesses)?);
        }
        block.insert("primes_checked".into(), json!(c.primes_checked));
        blocks.push(Value::Object(block));
    }
    let doc = json!({
        "kind": report.kind.to_string(),
        "ring": report.ring,
        "prime_bound": report.bound,
        "conditions": blocks,
        "violations": report.violations,
        "notes": report.notes,
        "consistent": report.is_consistent(),
    });
    Ok((doc, witnesses))
}

fn local_json<O>(
    o: &O,
    m: &Matrix<O::Elem>,
    kind: Kind,
    c: &ConditionResult,
    places: &[O::Place],
    witnesses: &mut Vec<WitnessEntry>,
) -> Result<Value>
where
    O: LocalOrder + JsonCodec,
    O::Residue: JsonCodec,
{
    let mut out = Vec::new();
    for r in &c.local {
        let mut entry = Map::new();
        entry.insert("prime".into(), json!(r.prime));
        if let Some(level) = r.level {
            entry.insert("level".into(), json!(level));
        }
        let place = places.iter().find(|p| p.to_string() == r.prime);
        let fields = match (r.level, place) {
            (Some(level), Some(p)) => {
                let res = o.residue(p, level);
                let mr = m.map(|e| o.reduce(&res, e));
                let source = format!("condition {} at {}^{level}", c.condition, r.prime);
                witnesses.extend(witness_from(&res, kind, &mr, &r.decision, source)?);
                let fields = decision_json(&r.decision, &rendered_enc(&res));
                fields
            }
            _ => decision_json(&r.decision, &|s: &String| o.from_rendered(s).map(|e| o.elem_json(&e)).unwrap_or(json!(s))),
        };
        entry.extend(fields);
        out.push(Value::Object(entry));
    }
    Ok(Value::Array(out))
}

fn quad_mat(r: &QuadRing, m: &Matrix<crate::number_ring::QuadElem>) -> Value {
    matrix_json(r, m)
}

pub fn tri_recipe_json(c: &TriCexRecipe) -> Value {
    json!({
        "kind": "tri",
        "ring": c.ring.descriptor(),
        "n": c.n,
        "a": quad_json(&c.a),
        "b": quad_json(&c.b),
        "ab_ideal": ideal_json(&c.ab_ideal),
        "corner": match c.corner { CornerSign::Plus => "+b", CornerSign::Minus => "-b" },
        "N": quad_mat(&c.ring, &c.big_n),
        "det_N": quad_json(&c.det_n),
        "lambdas": c.lambdas.iter().map(quad_json).collect::<Vec<_>>(),
        "M": quad_mat(&c.ring, &c.m),
    })
}

pub fn diag_recipe_json(c: &DiagCexRecipe) -> Value {
    let k = c.ring.field();
    json!({
        "kind": "diag",
        "ring": c.ring.descriptor(),
        "n": c.n,
        "class_order": c.class_order,
        "p0": prime_json(&c.p0),
        "p_a": prime_json(&c.p_a),
        "p_s": prime_json(&c.p_s),
        "p_r": prime_json(&c.p_r),
        "p_t": prime_json(&c.p_t),
        "a": quad_json(&c.a),
        "a0": quad_json(&c.a0),
        "s": quad_json(&c.s),
        "r": quad_json(&c.r),
        "t": quad_json(&c.t),
        "alpha": quad_json(&c.alpha),
        "beta": quad_json(&c.beta),
        "T0": quad_mat(&c.ring, &c.t0),
        "lambdas": c.lambdas.iter().map(quad_json).collect::<Vec<_>>(),
        "M": quad_mat(&c.ring, &c.m),
        "pi": quad_json(&c.pi),
        "T0_local": matrix_json(&k, &c.t0_local),
    })
}

pub fn cert_report_json(ring: &QuadRing, c: &CertReport) -> Value {
    let k = ring.field();
    json!({
        "kind": c.kind.to_string(),
        "ring": c.ring,
        "prime_bound": c.bound,
        "legs": c.legs.iter().map(|l| json!({"name": l.name, "passed": l.passed, "detail": l.detail})).collect::<Vec<_>>(),
        "field_witness": matrix_json(&k, &c.field_witness),
        "primes_checked": c.primes_checked,
        "certificate": certificate_json(&c.certificate, &|e| ring.elem_json(e)),
    })
}

/// Witnesses carried by a certification: the field witness.
pub fn cert_witnesses(ring: &QuadRing, m: &Matrix<crate::number_ring::QuadElem>, c: &CertReport) -> Vec<WitnessEntry> {
    let k = ring.field();
    let mk = m.map(|e| ring.embed(e));
    vec![WitnessEntry::new(&k, c.kind, &mk, &c.field_witness, "certification field witness".into())]
}
