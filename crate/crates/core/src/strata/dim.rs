//! Dimensions of the strata V_r: the chart recursion, exact point-count
//! polynomials, and a check of one against the other.
//!
//! The count polynomial runs over the columns of T keeping the rank profile
//! ρ_h = rank of the first h rows of the placed columns. For a new column v
//! supported on the first h₀ rows, v stays inside the projected span for
//! exactly the prefixes h ≤ h*, and the number of such v is
//! q^{ρ_{h*} + h₀ − h*} − q^{ρ_{h*+1} + h₀ − h* − 1}. This needs the forced
//! zeros of every column to be a suffix of rows, growing shorter from left to
//! right, which holds for V_r, W_s, W′_s and SL_{s,r}.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::equations::{equations, Constraint, EquationSet, Variety};
use super::field::Fq;
use super::index::{enum_strata, StratumIndex, Which};
use super::points::enum_equations;
use crate::error::{Error, Result};

/// Integer polynomial in q, coefficients from the constant term up.
pub type CountPoly = Vec<i128>;

pub fn degree(p: &CountPoly) -> Option<usize> {
    p.iter().rposition(|c| *c != 0)
}

pub fn eval(p: &CountPoly, q: i128) -> i128 {
    p.iter().rev().fold(0, |acc, c| acc * q + c)
}

fn add_scaled(acc: &mut CountPoly, p: &CountPoly, hi: usize, lo: usize) {
    // acc += (q^hi − q^lo)·p
    let need = p.len() + hi.max(lo);
    if acc.len() < need {
        acc.resize(need, 0);
    }
    for (k, c) in p.iter().enumerate() {
        acc[k + hi] += c;
        acc[k + lo] -= c;
    }
}

fn div_q_minus_one(p: &CountPoly) -> Result<CountPoly> {
    // Synthetic division by (q − 1).
    let Some(d) = degree(p) else { return Ok(vec![0]) };
    let mut out = vec![0i128; d];
    let mut carry = 0i128;
    for k in (1..=d).rev() {
        carry += p[k];
        out[k - 1] = carry;
    }
    if carry + p[0] != 0 {
        return Err(Error::Consistency("count polynomial not divisible by q - 1".into()));
    }
    Ok(out)
}

/// Exact |points(F_q)| as a polynomial in q for an equation set made of
/// suffix entry zeros, vanishing minor families and a determinant condition.
pub fn count_polynomial(e: &EquationSet) -> Result<CountPoly> {
    let n = e.size;
    let mut unit_det = false;
    for c in &e.constraints {
        match c {
            Constraint::EntryZero { .. } | Constraint::MinorsVanish { .. } | Constraint::DetInvertible => {}
            Constraint::DetOne => unit_det = true,
            other => return Err(Error::Unsupported(format!("count polynomial for constraint `{other}`"))),
        }
    }
    let mut support = Vec::with_capacity(n);
    for j in 1..=n {
        let zero = e.zero_rows(j);
        let h0 = n - zero.len();
        if zero.iter().enumerate().any(|(k, &r)| r != h0 + 1 + k) || support.last().is_some_and(|&prev| prev > h0) {
            return Err(Error::Unsupported(format!("forced zeros in column {j} are not a shrinking row suffix")));
        }
        support.push(h0);
    }

    let mut states: BTreeMap<Vec<usize>, CountPoly> = BTreeMap::new();
    states.insert(vec![0; n + 1], vec![1]);
    for (j, &h0) in support.iter().enumerate() {
        let mut next: BTreeMap<Vec<usize>, CountPoly> = BTreeMap::new();
        for (rho, p) in &states {
            for h in 0..h0 {
                let hi = rho[h] + h0 - h;
                let lo = rho[h + 1] + h0 - h - 1;
                if hi == lo {
                    continue;
                }
                let mut r2 = rho.clone();
                for x in r2.iter_mut().skip(h + 1) {
                    *x += 1;
                }
                add_scaled(next.entry(r2).or_default(), p, hi, lo);
            }
        }
        for c in &e.constraints {
            if let Constraint::MinorsVanish { rows, cols } = c {
                if *cols == j + 1 {
                    next.retain(|rho, _| rho[*rows] < *cols);
                }
            }
        }
        states = next;
    }
    let mut total: CountPoly = vec![0];
    for p in states.values() {
        if total.len() < p.len() {
            total.resize(p.len(), 0);
        }
        for (k, c) in p.iter().enumerate() {
            total[k] += c;
        }
    }
    if unit_det {
        total = div_q_minus_one(&total)?;
    }
    let keep = degree(&total).map_or(1, |d| d + 1);
    total.truncate(keep);
    Ok(total)
}

/// Lagrange interpolation through (x, y) nodes with distinct x.
pub fn interpolate(nodes: &[(i64, BigInt)]) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); nodes.len()];
    for (i, (xi, yi)) in nodes.iter().enumerate() {
        // basis = Π_{j≠i} (q − x_j)/(x_i − x_j)
        let mut basis = vec![BigRational::one()];
        for (j, (xj, _)) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRational::from_integer(BigInt::from(xi - xj));
            let mut nb = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                nb[k + 1] += b / &denom;
                nb[k] -= b * BigRational::from_integer(BigInt::from(*xj)) / &denom;
            }
            basis = nb;
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * BigRational::from_integer(yi.clone());
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

fn dim_v(m: usize, n: usize, r: &[usize]) -> usize {
    let last = r[n - 2];
    if last == m + n - 1 {
        if n == 2 {
            (m + 1) * (m + 1) + 1 + (m + 1)
        } else {
            dim_v(m, n - 1, &r[..n - 2]) + m + n
        }
    } else {
        let mut s = r.to_vec();
        s.push(last);
        dim_w(m, n, &s) + 1
    }
}

/// dim W_s (determinant one). On the chart where the cofactor of T_{m+n−1,α}
/// is invertible, column α over the first m+n−2 rows is a combination of the
/// other columns among the first s_{n−1}.
fn dim_w(m: usize, n: usize, s: &[usize]) -> usize {
    if n == 2 {
        (m + 2) * (m + 2) + s[0] - s[1] - m - 2
    } else {
        let mut s2 = s[..n - 2].to_vec();
        s2.push(s[n - 1] - 1);
        dim_w(m, n - 1, &s2) + 1 + m + n - 2 + s[n - 2] - s[n - 3]
    }
}

/// Dimension of V_r.
pub fn dim_stratum(index: &StratumIndex) -> Result<usize> {
    index.validate(Which::R)?;
    Ok(dim_v(index.m, index.n, &index.seq))
}

/// Dimension of W_s, or of W′_s when `unit_det` is false.
pub fn dim_w_stratum(index: &StratumIndex, unit_det: bool) -> Result<usize> {
    index.validate(Which::S)?;
    Ok(dim_w(index.m, index.n, &index.seq) + usize::from(!unit_det))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeCount {
    pub q: u8,
    /// From exhaustive enumeration, when within budget.
    pub enumerated: Option<u64>,
    pub polynomial: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub index: String,
    pub equation_count: usize,
    pub recursion: usize,
    pub degree: usize,
    pub polynomial: Vec<i128>,
    pub nodes: Vec<NodeCount>,
    pub counts_agree: bool,
    pub dims_agree: bool,
}

pub const DIM_NODES: [u8; 4] = [2, 3, 4, 5];

/// Compare the recursion with the degree of the count polynomial, checking
/// the polynomial against exhaustive counts at each node within budget.
pub fn dimension_check(index: &StratumIndex, budget: u64) -> Result<DimensionCheck> {
    let recursion = dim_stratum(index)?;
    let e = equations(&Variety::V { index: index.clone() })?;
    let poly = count_polynomial(&e)?;
    let deg = degree(&poly).ok_or_else(|| Error::Consistency(format!("V{index} has no points")))?;
    let mut nodes = Vec::new();
    for q in DIM_NODES {
        let value = eval(&poly, q as i128);
        // Every point is a leaf of the search, so skip nodes that cannot fit.
        let enumerated = if value > budget as i128 {
            None
        } else {
            match enum_equations(&Fq::new(q)?, &e, budget) {
                Ok(set) => Some(set.len() as u64),
                Err(Error::Capacity(_)) => None,
                Err(err) => return Err(err),
            }
        };
        nodes.push(NodeCount { q, enumerated, polynomial: value.to_u64().unwrap_or(u64::MAX) });
    }
    let counts_agree = nodes.iter().all(|n| n.enumerated.is_none_or(|c| c == n.polynomial));
    Ok(DimensionCheck {
        index: index.to_string(),
        equation_count: e.polynomial_count(),
        recursion,
        degree: deg,
        polynomial: poly,
        nodes,
        counts_agree,
        dims_agree: recursion == deg,
    })
}

pub fn dimension_checks(m: usize, n: usize, budget: u64) -> Result<Vec<DimensionCheck>> {
    enum_strata(m, n, Which::R)?.iter().map(|r| dimension_check(r, budget)).collect()
}

/// Leading coefficient sign check: the count polynomial of a nonempty
/// variety has positive leading coefficient.
pub fn leading_positive(p: &CountPoly) -> bool {
    degree(p).is_some_and(|d| p[d].is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::field::gl_order;
    use crate::strata::points::DEFAULT_ENUM_BUDGET;

    fn idx(m: usize, n: usize, r: Vec<usize>) -> StratumIndex {
        StratumIndex::new(m, n, r, Which::R).unwrap()
    }

    #[test]
    fn general_linear_polynomial() {
        let e = EquationSet { size: 3, label: "GL3".into(), constraints: vec![Constraint::DetInvertible] };
        let p = count_polynomial(&e).unwrap();
        for q in [2u64, 3, 5, 7] {
            assert_eq!(eval(&p, q as i128) as u128, gl_order(3, q));
        }
        let sl = equations(&Variety::SL { s: 3, r: 2 }).unwrap();
        let p = count_polynomial(&sl).unwrap();
        assert_eq!(degree(&p), Some(7));
    }

    #[test]
    fn small_stratum_polynomials() {
        // |V(1)| = (q−1)(q³−q)(q³−q²), |V(2)| = |GL₂|(q−1)q².
        let p1 = count_polynomial(&equations(&Variety::V { index: idx(1, 2, vec![1]) }).unwrap()).unwrap();
        let p2 = count_polynomial(&equations(&Variety::V { index: idx(1, 2, vec![2]) }).unwrap()).unwrap();
        for q in 2..9i128 {
            assert_eq!(eval(&p1, q), (q - 1) * (q * q * q - q) * (q * q * q - q * q));
            assert_eq!(eval(&p2, q), (q * q - 1) * (q * q - q) * (q - 1) * q * q);
        }
        assert_eq!(eval(&p1, 2), 24);
        assert_eq!(eval(&p2, 2), 24);
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(dim_stratum(&idx(1, 2, vec![2])).unwrap(), 7);
        assert_eq!(dim_stratum(&idx(1, 2, vec![1])).unwrap(), 7);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let nodes: Vec<(i64, BigInt)> = (0..4).map(|x| (x, BigInt::from(x * x * x - 2 * x + 5))).collect();
        let c = interpolate(&nodes);
        let want: Vec<BigRational> = [5, -2, 0, 1].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn recursion_matches_counts_on_small_shapes() {
        for (m, n) in [(1, 2), (2, 2), (1, 3)] {
            for c in dimension_checks(m, n, DEFAULT_ENUM_BUDGET).unwrap() {
                assert!(c.counts_agree, "{c:?}");
                assert!(c.dims_agree, "{c:?}");
            }
        }
    }

    #[test]
    fn w_recursion_matches_counts() {
        for (m, n) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4)] {
            for s in enum_strata(m, n, Which::S).unwrap() {
                for unit_det in [true, false] {
                    let e = equations(&Variety::W { index: s.clone(), unit_det }).unwrap();
                    let deg = degree(&count_polynomial(&e).unwrap()).unwrap();
                    assert_eq!(dim_w_stratum(&s, unit_det).unwrap(), deg, "W{s} unit_det={unit_det}");
                }
            }
        }
    }

    #[test]
    fn recursion_matches_polynomials_on_larger_shapes() {
        for (m, n) in [(3, 2), (2, 3), (1, 4), (2, 4), (3, 3)] {
            for r in enum_strata(m, n, Which::R).unwrap() {
                let p = count_polynomial(&equations(&Variety::V { index: r.clone() }).unwrap()).unwrap();
                assert!(leading_positive(&p));
                assert_eq!(dim_stratum(&r).unwrap(), degree(&p).unwrap(), "V{r}");
            }
        }
    }
}
