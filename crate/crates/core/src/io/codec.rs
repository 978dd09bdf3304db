//! JSON encodings of ring elements, matrices and ideals, and the matrix
//! input format.
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise. Rationals are integers or strings "p/q". Quadratic elements
//! x + yω are pairs [x, y].

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::deciders::residue::QuadResidue;
use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::number_ring::{KElem, PrimeIdeal, QuadElem, QuadField, QuadIdeal, QuadRing};
use crate::ring::{Integers, Rationals, Ring, Zmod};

fn field_err(at: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: at.to_string(), message: message.into() }
}

pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn int_from_json(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(field_err(at, format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| field_err(at, format!("`{s}` is not an integer"))),
        other => Err(field_err(at, format!("expected an integer, found {other}"))),
    }
}

pub fn rat_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_json(q.numer())
    } else {
        json!(q.to_string())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn rat_from_json(v: &Value, at: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| field_err(at, format!("`{s}` is not a rational"))),
        other => int_from_json(other, at).map(BigRational::from_integer),
    }
}

fn pair_from_json<'a>(v: &'a Value, at: &str) -> Result<(&'a Value, &'a Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((x, y)),
        _ => Err(field_err(at, "expected a pair [x, y]")),
    }
}

/// Parse the display form of x + yω ("3", "2-ω", "-1/2+3/2ω").
pub fn parse_pair(s: &str) -> Option<(BigRational, BigRational)> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('ω') else {
        return Some((parse_rational(s)?, BigRational::zero()));
    };
    // The split is the last sign that is not at the start of the string.
    let split = body.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
    let (x, ycoef) = match split {
        Some(i) => (parse_rational(&body[..i])?, &body[i..]),
        None => (BigRational::zero(), body),
    };
    let (neg, mag) = match ycoef.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, ycoef.strip_prefix('+').unwrap_or(ycoef)),
    };
    let y = if mag.is_empty() { BigRational::one() } else { parse_rational(mag)? };
    Some((x, if neg { -y } else { y }))
}

/// Encoding of a ring and its elements.
pub trait JsonCodec: Ring {
    fn descriptor(&self) -> Value;
    fn elem_json(&self, e: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<Self::Elem>;
    /// Inverse of [`Ring::render`].
    fn from_rendered(&self, s: &str) -> Result<Self::Elem>;
}

fn bad_render(s: &str) -> Error {
    field_err("rendered element", format!("cannot read `{s}`"))
}

fn integral_pair(s: &str) -> Result<(BigInt, BigInt)> {
    let (x, y) = parse_pair(s).ok_or_else(|| bad_render(s))?;
    if !x.is_integer() || !y.is_integer() {
        return Err(bad_render(s));
    }
    Ok((x.to_integer(), y.to_integer()))
}

impl JsonCodec for Integers {
    fn descriptor(&self) -> Value {
        json!({"ring": "Z"})
    }
    fn elem_json(&self, e: &BigInt) -> Value {
        int_json(e)
    }
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<BigInt> {
        int_from_json(v, at)
    }
    fn from_rendered(&self, s: &str) -> Result<BigInt> {
        s.trim().parse().map_err(|_| bad_render(s))
    }
}

impl JsonCodec for Rationals {
    fn descriptor(&self) -> Value {
        json!({"ring": "Q"})
    }
    fn elem_json(&self, e: &BigRational) -> Value {
        rat_json(e)
    }
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<BigRational> {
        rat_from_json(v, at)
    }
    fn from_rendered(&self, s: &str) -> Result<BigRational> {
        parse_rational(s).ok_or_else(|| bad_render(s))
    }
}

impl JsonCodec for Zmod {
    fn descriptor(&self) -> Value {
        json!({"ring": "Zmod", "modulus": self.modulus})
    }
    fn elem_json(&self, e: &u64) -> Value {
        json!(e)
    }
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<u64> {
        Ok(self.from_int(&int_from_json(v, at)?))
    }
    fn from_rendered(&self, s: &str) -> Result<u64> {
        s.trim().parse().map_err(|_| bad_render(s))
    }
}

pub fn quad_json(e: &QuadElem) -> Value {
    json!([int_json(&e.x), int_json(&e.y)])
}

pub fn quad_from_json(v: &Value, at: &str) -> Result<QuadElem> {
    let (x, y) = pair_from_json(v, at)?;
    Ok(QuadElem { x: int_from_json(x, &format!("{at}[0]"))?, y: int_from_json(y, &format!("{at}[1]"))? })
}

pub fn kelem_json(e: &KElem) -> Value {
    json!([rat_json(&e.x), rat_json(&e.y)])
}

impl JsonCodec for QuadRing {
    fn descriptor(&self) -> Value {
        json!({"ring": "Qsqrt", "d": self.d()})
    }
    fn elem_json(&self, e: &QuadElem) -> Value {
        quad_json(e)
    }
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<QuadElem> {
        quad_from_json(v, at)
    }
    fn from_rendered(&self, s: &str) -> Result<QuadElem> {
        let (x, y) = integral_pair(s)?;
        Ok(QuadElem { x, y })
    }
}

impl JsonCodec for QuadField {
    fn descriptor(&self) -> Value {
        json!({"ring": "K", "d": self.ring.d()})
    }
    fn elem_json(&self, e: &KElem) -> Value {
        kelem_json(e)
    }
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<KElem> {
        let (x, y) = pair_from_json(v, at)?;
        Ok(KElem { x: rat_from_json(x, &format!("{at}[0]"))?, y: rat_from_json(y, &format!("{at}[1]"))? })
    }
    fn from_rendered(&self, s: &str) -> Result<KElem> {
        let (x, y) = parse_pair(s).ok_or_else(|| bad_render(s))?;
        Ok(KElem { x, y })
    }
}

impl JsonCodec for QuadResidue {
    fn descriptor(&self) -> Value {
        json!({"ring": "OmodP", "d": self.ring.d(), "prime": prime_json(&self.prime), "k": self.k})
    }
    fn elem_json(&self, e: &QuadElem) -> Value {
        quad_json(e)
    }
    fn elem_from_json(&self, v: &Value, at: &str) -> Result<QuadElem> {
        Ok(self.reduce(&quad_from_json(v, at)?))
    }
    fn from_rendered(&self, s: &str) -> Result<QuadElem> {
        let (x, y) = integral_pair(s)?;
        Ok(QuadElem { x, y })
    }
}

pub fn ideal_json(i: &QuadIdeal) -> Value {
    json!({"a": int_json(&i.a), "b": int_json(&i.b), "c": int_json(&i.c), "den": int_json(&i.den)})
}

pub fn ideal_from_json(v: &Value, at: &str) -> Result<QuadIdeal> {
    let get = |k: &str| int_from_json(v.get(k).unwrap_or(&Value::Null), &format!("{at}.{k}"));
    Ok(QuadIdeal { a: get("a")?, b: get("b")?, c: get("c")?, den: get("den")? })
}

pub fn prime_json(p: &PrimeIdeal) -> Value {
    json!({"ideal": ideal_json(&p.ideal), "p": int_json(&p.p), "f": p.f, "ramified": p.ramified, "label": p.to_string()})
}

/// The prime of `ring` with the given ideal, found among primes of its norm.
pub fn prime_from_json(ring: &QuadRing, v: &Value, at: &str) -> Result<PrimeIdeal> {
    let ideal = ideal_from_json(v.get("ideal").unwrap_or(&Value::Null), &format!("{at}.ideal"))?;
    let norm = ideal.norm_int().to_u64().ok_or_else(|| field_err(at, "prime norm out of range"))?;
    ring.primes_up_to_norm(norm)
        .into_iter()
        .find(|p| p.ideal == ideal)
        .ok_or_else(|| field_err(at, format!("{ideal} is not a prime of {}", crate::order::Order::label(ring))))
}

pub fn matrix_json<R: JsonCodec>(r: &R, m: &Matrix<R::Elem>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|e| r.elem_json(e)).collect())).collect())
}

pub fn matrix_from_json<R: JsonCodec>(r: &R, v: &Value, at: &str) -> Result<Matrix<R::Elem>> {
    let rows = v.as_array().ok_or_else(|| field_err(at, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| field_err(&format!("{at}[{i}]"), "expected an array"))?;
        if let Some(first) = out.first().map(|r: &Vec<R::Elem>| r.len()) {
            if row.len() != first {
                return Err(field_err(&format!("{at}[{i}]"), format!("row has {} entries, expected {first}", row.len())));
            }
        }
        let parsed: Result<Vec<R::Elem>> =
            row.iter().enumerate().map(|(j, e)| r.elem_from_json(e, &format!("{at}[{i}][{j}]"))).collect();
        out.push(parsed?);
    }
    if out.is_empty() || out[0].is_empty() {
        return Err(field_err(at, "matrix is empty"));
    }
    Ok(Matrix::from_rows(out))
}

/// Matrix from rendered entries.
pub fn matrix_from_rendered<R: JsonCodec>(r: &R, m: &Matrix<String>) -> Result<Matrix<R::Elem>> {
    let rows: Result<Vec<Vec<R::Elem>>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|s| r.from_rendered(s)).collect()).collect();
    Ok(Matrix::from_rows(rows?))
}

/// An input matrix with its coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub enum InputMatrix {
    Integer(Matrix<BigInt>),
    Quadratic(QuadRing, Matrix<QuadElem>),
}

impl InputMatrix {
    pub fn size(&self) -> (usize, usize) {
        match self {
            InputMatrix::Integer(m) => (m.rows(), m.cols()),
            InputMatrix::Quadratic(_, m) => (m.rows(), m.cols()),
        }
    }

    /// The input format, suitable for echoing.
    pub fn to_json(&self) -> Value {
        let (rows, cols) = self.size();
        match self {
            InputMatrix::Integer(m) => {
                json!({"ring": "Z", "rows": rows, "cols": cols, "entries": matrix_json(&Integers, m)})
            }
            InputMatrix::Quadratic(r, m) => {
                json!({"ring": "Qsqrt", "d": r.d(), "rows": rows, "cols": cols, "entries": matrix_json(r, m)})
            }
        }
    }
}

fn check_dim(v: &Value, key: &str, actual: usize) -> Result<()> {
    match v.get(key) {
        None => Ok(()),
        Some(x) => match x.as_u64() {
            Some(n) if n as usize == actual => Ok(()),
            Some(n) => Err(Error::Validation(format!("`{key}` is {n} but entries have {actual}"))),
            None => Err(field_err(key, "expected a non-negative integer")),
        },
    }
}

/// Parse the matrix input format, e.g.
/// `{"ring":"Z","entries":[[1,3],[0,4]]}` or
/// `{"ring":"Qsqrt","d":-5,"entries":[[[4,-2],[2,2]],[[-2,-2],[4,0]]]}`.
pub fn parse_matrix_json(text: &str) -> Result<InputMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if !v.is_object() {
        return Err(field_err("document", "expected an object"));
    }
    let ring = v.get("ring").and_then(Value::as_str).ok_or_else(|| field_err("ring", "missing ring descriptor"))?;
    let entries = v.get("entries").ok_or_else(|| field_err("entries", "missing entries"))?;
    let m = match ring {
        "Z" => InputMatrix::Integer(matrix_from_json(&Integers, entries, "entries")?),
        "Qsqrt" => {
            let d = v.get("d").and_then(Value::as_i64).ok_or_else(|| field_err("d", "missing integer d"))?;
            let r = QuadRing::new(d).map_err(|e| Error::Validation(format!("d = {d}: {e}")))?;
            InputMatrix::Quadratic(r, matrix_from_json(&r, entries, "entries")?)
        }
        other => return Err(field_err("ring", format!("unknown ring `{other}`, expected Z or Qsqrt"))),
    };
    let (rows, cols) = m.size();
    check_dim(&v, "rows", rows)?;
    check_dim(&v, "cols", cols)?;
    Ok(m)
}

pub fn parse_matrix_file(path: &Path) -> Result<InputMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })?;
    parse_matrix_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_matrix_input() {
        let m = parse_matrix_json(r#"{"ring":"Z","rows":2,"cols":2,"entries":[[1,3],[0,4]]}"#).unwrap();
        assert_eq!(m, InputMatrix::Integer(Matrix::from_rows(vec![vec![1, 3], vec![0, 4]]).map(|&x| BigInt::from(x))));
    }

    #[test]
    fn quadratic_matrix_input() {
        let m = parse_matrix_json(r#"{"ring":"Qsqrt","d":-5,"entries":[[[4,-2],[2,2]],[[-2,-2],[4,0]]]}"#).unwrap();
        let InputMatrix::Quadratic(r, a) = m else { panic!() };
        assert_eq!(r.d(), -5);
        assert_eq!(a.get(0, 0), &QuadElem::new(4, -2));
        assert_eq!(a.get(1, 1), &QuadElem::new(4, 0));
    }

    #[test]
    fn input_errors() {
        assert!(matches!(
            parse_matrix_json(r#"{"ring":"Qsqrt","d":10,"entries":[[[1,0]]]}"#),
            Err(Error::Validation(_))
        ));
        let Err(Error::Parse { location, .. }) = parse_matrix_json("{\"ring\":\"Z\",\n\"entries\": [[1,]]}") else {
            panic!()
        };
        assert!(location.starts_with("line 2"), "{location}");
        let Err(Error::Parse { location, .. }) = parse_matrix_json(r#"{"ring":"Z","entries":[[1,"x"]]}"#) else {
            panic!()
        };
        assert_eq!(location, "entries[0][1]");
        assert!(parse_matrix_json(r#"{"ring":"Z","rows":3,"entries":[[1]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"ring":"Z","entries":[[1,2],[3]]}"#).is_err());
    }

    #[test]
    fn rendered_pairs_round_trip() {
        let k = QuadRing::new(-5).unwrap().field();
        for (x, y) in [(0, 0), (3, 0), (0, 1), (0, -1), (2, -1), (-2, 3), (0, -2), (-1, 1)] {
            let e = KElem { x: BigRational::new(x.into(), 2.into()), y: BigRational::from_integer(y.into()) };
            assert_eq!(k.from_rendered(&k.render(&e)).unwrap(), e);
            let q = QuadElem::new(x, y);
            assert_eq!(parse_pair(&q.to_string()).unwrap(), (BigRational::from_integer(x.into()), BigRational::from_integer(y.into())));
        }
    }

    #[test]
    fn big_integers_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_json(&big), json!("123456789012345678901234567890"));
        assert_eq!(int_from_json(&int_json(&big), "x").unwrap(), big);
    }
}
