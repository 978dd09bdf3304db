//! Finite-field audits of the component structure of X_M and Y_M, and the
//! stratum table.

use std::collections::BTreeMap;

use serde::Serialize;

use super::components::{classify_stratum, classify_y_point, is_triangularizing, transport_point, x_membership_flag, y_components, Target};
use super::dim::{count_polynomial, dim_stratum, eval};
use super::equations::{equations, Variety};
use super::field::{gl_order, Fq};
use super::index::{enum_strata, JordanShape, Which};
use super::points::{enum_equations, enum_gl, PointSet};
use crate::error::{Error, Result};
use crate::linalg::matrix::{self, Matrix};
use crate::ring::Ring;

pub fn shape_matrix(f: &Fq, shape: &JordanShape) -> Matrix<u8> {
    Matrix::from_rows(shape.matrix().iter().map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect())
}

fn require_distinct(f: &Fq, shape: &JordanShape) -> Result<()> {
    if !shape.distinct_mod(f.characteristic() as i64) {
        return Err(Error::Validation(format!("eigenvalues of {shape} collide in F_{}", f.q())));
    }
    Ok(())
}

/// Map field values back to the integer eigenvalues of the shape.
fn lift_sigma(f: &Fq, shape: &JordanShape, values: &[u8]) -> Vec<i64> {
    values
        .iter()
        .map(|v| shape.parts.iter().map(|(l, _)| *l).find(|l| f.from_i64(*l) == *v).expect("eigenvalue of the shape"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataAudit {
    pub shape: String,
    pub q: u8,
    pub union_ok: bool,
    pub presentation_ok: bool,
    pub classification_ok: bool,
    pub counts: BTreeMap<String, u64>,
}

/// Compare the flag description of X_M, the X′_M equations and the union of
/// the strata V_r for M = diag(λI_m, J_n(λ)) over F_q, and classify every
/// point.
pub fn stratification_audit(m: usize, n: usize, lambda: i64, q: u8, budget: u64) -> Result<StrataAudit> {
    let f = Fq::new(q)?;
    let shape = JordanShape::standard(m, n, lambda)?;
    let size = m + n;
    let mm = shape_matrix(&f, &shape);
    let lam = vec![f.from_i64(lambda); size];
    let flag = enum_gl(&f, size, budget, |t| x_membership_flag(&f, t, &mm, &lam).unwrap_or(false))?;
    let xprime = enum_equations(&f, &equations(&Variety::XPrime { m, n })?, budget)?;
    let mut counts = BTreeMap::new();
    counts.insert("X".to_string(), flag.len() as u64);
    counts.insert("X'".to_string(), xprime.len() as u64);
    let mut union = PointSet { size, q, codes: Vec::new() };
    let mut strata = BTreeMap::new();
    for r in enum_strata(m, n, Which::R)? {
        let set = enum_equations(&f, &equations(&Variety::V { index: r.clone() })?, budget)?;
        counts.insert(format!("V{r}"), set.len() as u64);
        union = union.union(&set);
        strata.insert(r, set);
    }
    let mut classification_ok = true;
    for t in flag.matrices() {
        match classify_stratum(&f, &t, m, n) {
            Ok(r) if strata[&r].contains_matrix(&t) => {}
            _ => classification_ok = false,
        }
    }
    Ok(StrataAudit {
        shape: format!("m={m},n={n},lambda={lambda}"),
        q,
        union_ok: union == flag,
        presentation_ok: xprime == flag,
        classification_ok,
        counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCount {
    pub sigma: Vec<i64>,
    /// Points whose conjugate has diagonal σ.
    pub classified: u64,
    /// Points of the component's own equations.
    pub from_equations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentAudit {
    pub variety: String,
    pub shape: String,
    pub q: u8,
    pub total: u64,
    pub components: Vec<ComponentCount>,
    /// Common size predicted for every component.
    pub predicted_component: u64,
    pub partition_ok: bool,
    pub equal_sizes: bool,
    pub product_ok: bool,
}

fn components(
    f: &Fq,
    shape: &JordanShape,
    points: &PointSet,
    diagonal: bool,
    budget: u64,
) -> Result<Vec<ComponentCount>> {
    let mm = shape_matrix(f, shape);
    let mut classified: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for t in points.matrices() {
        let c = matrix::conjugate(f, &mm, &t).expect("invertible point");
        *classified.entry(lift_sigma(f, shape, &matrix::diagonal_entries(&c))).or_default() += 1;
    }
    let mut out = Vec::new();
    for sigma in y_components(&shape.eigenvalues()) {
        let e = equations(&Variety::Sigma { matrix: shape.matrix(), sigma: sigma.clone(), diagonal })?;
        let from_equations = enum_equations(f, &e, budget)?.len() as u64;
        out.push(ComponentCount { classified: classified.get(&sigma).copied().unwrap_or(0), sigma, from_equations });
    }
    Ok(out)
}

fn summarize(variety: &str, shape: &JordanShape, q: u8, total: u64, comps: Vec<ComponentCount>, predicted: u64) -> ComponentAudit {
    let sum: u64 = comps.iter().map(|c| c.classified).sum();
    let partition_ok = sum == total && comps.iter().all(|c| c.classified == c.from_equations);
    let equal_sizes = comps.windows(2).all(|w| w[0].classified == w[1].classified);
    let product_ok = comps.iter().all(|c| c.classified == predicted);
    ComponentAudit {
        variety: variety.into(),
        shape: shape.to_string(),
        q,
        total,
        components: comps,
        predicted_component: predicted,
        partition_ok,
        equal_sizes,
        product_ok,
    }
}

/// Y_M(F_q) for a diagonal M, split by diagonal pattern. Each class should
/// have Π|GL_{n_i}(F_q)| points.
pub fn y_audit(values: &[i64], q: u8, budget: u64) -> Result<ComponentAudit> {
    let f = Fq::new(q)?;
    let shape = JordanShape::diagonal(values)?;
    require_distinct(&f, &shape)?;
    let mm = shape_matrix(&f, &shape);
    let points = enum_gl(&f, shape.size(), budget, |t| classify_y_point(&f, t, &mm).is_ok())?;
    let predicted: u128 = shape.parts.iter().map(|(_, s)| gl_order(s.len(), q as u64)).product();
    let comps = components(&f, &shape, &points, true, budget)?;
    Ok(summarize("Y", &shape, q, points.len() as u64, comps, predicted as u64))
}

/// |X_J(F_q)| for a single-eigenvalue Jordan form J.
fn single_eigenvalue_count(f: &Fq, lambda: i64, sizes: &[usize], budget: u64) -> Result<u64> {
    let shape = JordanShape::new(vec![(lambda, sizes.to_vec())])?;
    let mm = shape_matrix(f, &shape);
    Ok(enum_gl(f, shape.size(), budget, |t| is_triangularizing(f, t, &mm).unwrap_or(false))?.len() as u64)
}

/// X_M(F_q) split by diagonal pattern, against the product prediction
/// q^{n(n+1)/2 − Σ n_i(n_i+1)/2}·Π|X_{J(λ_i)}(F_q)| per component.
pub fn x_audit(shape: &JordanShape, q: u8, budget: u64) -> Result<ComponentAudit> {
    let f = Fq::new(q)?;
    require_distinct(&f, shape)?;
    let mm = shape_matrix(&f, shape);
    let points = enum_gl(&f, shape.size(), budget, |t| is_triangularizing(&f, t, &mm).unwrap_or(false))?;
    let n = shape.size() as u32;
    let mut exponent = n * (n + 1) / 2;
    let mut predicted = 1u64;
    for (lambda, sizes) in &shape.parts {
        let ni: u32 = sizes.iter().sum::<usize>() as u32;
        exponent -= ni * (ni + 1) / 2;
        predicted *= single_eigenvalue_count(&f, *lambda, sizes, budget)?;
    }
    predicted *= (q as u64).pow(exponent);
    let comps = components(&f, shape, &points, false, budget)?;
    Ok(summarize("X", shape, q, points.len() as u64, comps, predicted))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportAudit {
    pub shape: String,
    pub q: u8,
    pub target: Target,
    pub position: usize,
    pub source: Vec<i64>,
    pub destination: Vec<i64>,
    pub source_count: u64,
    pub destination_count: u64,
    pub lands_ok: bool,
    pub injective: bool,
    pub bijective: bool,
}

/// Transport every point of the σ component across positions pos, pos+1.
pub fn transport_audit(
    shape: &JordanShape,
    q: u8,
    sigma: &[i64],
    pos: usize,
    target: Target,
    budget: u64,
) -> Result<TransportAudit> {
    let f = Fq::new(q)?;
    require_distinct(&f, shape)?;
    if pos < 1 || pos >= sigma.len() {
        return Err(Error::Precondition(format!("position {pos} out of range")));
    }
    let diagonal = target == Target::Y;
    let mut dest = sigma.to_vec();
    dest.swap(pos - 1, pos);
    let src_set = enum_equations(&f, &equations(&Variety::Sigma { matrix: shape.matrix(), sigma: sigma.to_vec(), diagonal })?, budget)?;
    let dst_set = enum_equations(&f, &equations(&Variety::Sigma { matrix: shape.matrix(), sigma: dest.clone(), diagonal })?, budget)?;
    let mm = shape_matrix(&f, shape);
    let mut images = Vec::with_capacity(src_set.len());
    for t in src_set.matrices() {
        images.push(transport_point(&f, &t, &mm, pos, target)?);
    }
    let lands_ok = images.iter().all(|t| dst_set.contains_matrix(t));
    let mut codes: Vec<u128> = images.iter().map(|t| super::points::encode_matrix(q, t)).collect();
    codes.sort_unstable();
    codes.dedup();
    let injective = codes.len() == images.len();
    Ok(TransportAudit {
        shape: shape.to_string(),
        q,
        target,
        position: pos,
        source: sigma.to_vec(),
        destination: dest,
        source_count: src_set.len() as u64,
        destination_count: dst_set.len() as u64,
        lands_ok,
        injective,
        bijective: lands_ok && injective && codes.len() == dst_set.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub r: String,
    pub equations: usize,
    pub dim: usize,
    /// (q, count) from the exact count polynomial.
    pub counts: Vec<(u8, u64)>,
}

pub fn stratum_table(m: usize, n: usize, qs: &[u8]) -> Result<Vec<TableRow>> {
    for &q in qs {
        Fq::new(q)?;
    }
    enum_strata(m, n, Which::R)?
        .into_iter()
        .map(|r| {
            let e = equations(&Variety::V { index: r.clone() })?;
            let poly = count_polynomial(&e)?;
            Ok(TableRow {
                r: r.to_string(),
                equations: e.polynomial_count(),
                dim: dim_stratum(&r)?,
                counts: qs.iter().map(|&q| (q, eval(&poly, q as i128) as u64)).collect(),
            })
        })
        .collect()
}

pub fn table_csv(rows: &[TableRow], qs: &[u8]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["r".to_string(), "equations".into(), "dim".into()];
    header.extend(qs.iter().map(|q| format!("count_q{q}")));
    let io = |e: csv::Error| Error::Domain(format!("csv: {e}"));
    w.write_record(&header).map_err(io)?;
    for row in rows {
        let mut rec = vec![row.r.clone(), row.equations.to_string(), row.dim.to_string()];
        rec.extend(row.counts.iter().map(|(_, c)| c.to_string()));
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Domain(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8 csv"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::points::DEFAULT_ENUM_BUDGET;

    #[test]
    fn smallest_stratification() {
        let a = stratification_audit(1, 2, 0, 2, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(a.union_ok && a.presentation_ok && a.classification_ok);
        assert_eq!(a.counts["V(1)"], 24);
        assert_eq!(a.counts["V(2)"], 24);
        assert_eq!(a.counts["X"], 40);
    }

    #[test]
    fn strata_overlap_in_eight_points() {
        let f = Fq::new(2).unwrap();
        let sets: Vec<PointSet> = enum_strata(1, 2, Which::R)
            .unwrap()
            .into_iter()
            .map(|r| enum_equations(&f, &equations(&Variety::V { index: r }).unwrap(), DEFAULT_ENUM_BUDGET).unwrap())
            .collect();
        assert_eq!(sets[0].intersection_len(&sets[1]), 8);
    }

    #[test]
    fn diagonalization_classes() {
        let a = y_audit(&[1, 1, 2], 3, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(a.total, 288);
        assert_eq!(a.components.len(), 3);
        assert!(a.components.iter().all(|c| c.classified == 96));
        assert!(a.partition_ok && a.equal_sizes && a.product_ok);
    }

    #[test]
    fn triangularization_product() {
        let a = x_audit(&JordanShape::diagonal(&[1, 2]).unwrap(), 5, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(a.total, 160);
        assert!(a.components.iter().all(|c| c.classified == 80));
        assert!(a.partition_ok && a.product_ok);
        let j = x_audit(&JordanShape::new(vec![(0, vec![2])]).unwrap(), 3, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(j.total, 12);
    }

    #[test]
    fn transport_is_bijective() {
        let shape = JordanShape::diagonal(&[1, 2]).unwrap();
        for target in [Target::X, Target::Y] {
            let t = transport_audit(&shape, 5, &[1, 2], 1, target, DEFAULT_ENUM_BUDGET).unwrap();
            assert!(t.bijective, "{t:?}");
        }
        let t = transport_audit(&shape, 5, &[1, 2], 1, Target::X, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!((t.source_count, t.destination_count), (80, 80));
        assert!(transport_audit(&JordanShape::diagonal(&[1, 3]).unwrap(), 2, &[1, 3], 1, Target::X, DEFAULT_ENUM_BUDGET).is_err());
    }

    #[test]
    fn table_for_smallest_shape() {
        let rows = stratum_table(1, 2, &[2, 3]).unwrap();
        assert_eq!(rows[0].counts[0], (2, 24));
        let csv = table_csv(&rows, &[2, 3]).unwrap();
        assert!(csv.starts_with("r,equations,dim,count_q2,count_q3\n(1),3,7,24,"));
    }
}
