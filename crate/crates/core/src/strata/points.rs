//! Exhaustive point enumeration inside GL_N(F_q), column by column. Only
//! linearly independent prefixes are extended; constraint sets additionally
//! prune on entry-zero positions and on constraints that only read placed
//! columns. First-column choices are processed in parallel and merged into a
//! sorted set.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::equations::{Constraint, EquationSet};
use super::field::{gl_order, Fq};
use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;

pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// A set of matrices over F_q, stored as sorted base-q codes of their
/// column-major entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub size: usize,
    pub q: u8,
    pub codes: Vec<u128>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, code: u128) -> bool {
        self.codes.binary_search(&code).is_ok()
    }

    pub fn contains_matrix(&self, t: &Matrix<u8>) -> bool {
        self.contains(encode_matrix(self.q, t))
    }

    pub fn decode(&self, code: u128) -> Matrix<u8> {
        decode(self.q, self.size, code)
    }

    pub fn matrices(&self) -> impl Iterator<Item = Matrix<u8>> + '_ {
        self.codes.iter().map(|&c| self.decode(c))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut codes = self.codes.clone();
        codes.extend_from_slice(&other.codes);
        codes.sort_unstable();
        codes.dedup();
        PointSet { size: self.size, q: self.q, codes }
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.codes.iter().filter(|&&c| other.contains(c)).count()
    }
}

pub fn encode_columns(q: u8, cols: &[Vec<u8>]) -> u128 {
    let mut code = 0u128;
    for col in cols.iter().rev() {
        for &x in col.iter().rev() {
            code = code * q as u128 + x as u128;
        }
    }
    code
}

pub fn encode_matrix(q: u8, t: &Matrix<u8>) -> u128 {
    let cols: Vec<Vec<u8>> = (0..t.cols()).map(|j| t.col(j)).collect();
    encode_columns(q, &cols)
}

pub fn decode(q: u8, n: usize, mut code: u128) -> Matrix<u8> {
    let mut cols = vec![vec![0u8; n]; n];
    for col in cols.iter_mut() {
        for x in col.iter_mut() {
            *x = (code % q as u128) as u8;
            code /= q as u128;
        }
    }
    Matrix::from_cols(&cols)
}

fn check_encodable(n: usize, q: u8) -> Result<()> {
    let bits = (n * n) as f64 * (q as f64).log2();
    if n == 0 || bits >= 127.0 {
        return Err(Error::Validation(format!("cannot encode {n}x{n} matrices over F_{q}")));
    }
    Ok(())
}

/// Echelon basis with pivots normalized to 1, reduced in insertion order.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<u8>)>,
}

impl Echelon {
    /// Insert v when independent of the basis.
    fn insert(&mut self, f: &Fq, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        for (p, b) in &self.rows {
            let c = w[*p];
            if c != 0 {
                for (x, y) in w.iter_mut().zip(b) {
                    *x = f.fsub(*x, f.fmul(c, *y));
                }
            }
        }
        let Some(p) = w.iter().position(|&x| x != 0) else { return false };
        let inv = f.finv(w[p]);
        for x in w.iter_mut() {
            *x = f.fmul(*x, inv);
        }
        self.rows.push((p, w));
        true
    }
}

struct Search<'a, L: Fn(&[Vec<u8>]) -> bool + Sync, P: Fn(usize, &[Vec<u8>]) -> bool + Sync> {
    f: &'a Fq,
    n: usize,
    /// Rows (0-based) that may be nonzero in each column.
    free_rows: Vec<Vec<usize>>,
    prefix_ok: P,
    leaf_ok: L,
    budget: u64,
    nodes: AtomicU64,
}

impl<L: Fn(&[Vec<u8>]) -> bool + Sync, P: Fn(usize, &[Vec<u8>]) -> bool + Sync> Search<'_, L, P> {
    fn vectors(&self, j: usize) -> Vec<Vec<u8>> {
        let rows = &self.free_rows[j];
        let q = self.f.q() as usize;
        let total = q.pow(rows.len() as u32);
        (1..total)
            .map(|mut k| {
                let mut v = vec![0u8; self.n];
                for &r in rows {
                    v[r] = (k % q) as u8;
                    k /= q;
                }
                v
            })
            .collect()
    }

    fn run(&self) -> Result<Vec<u128>> {
        let firsts = self.vectors(0);
        let parts: Vec<Result<Vec<u128>>> = firsts
            .par_iter()
            .map(|v| {
                let mut out = Vec::new();
                let mut basis = Echelon::default();
                basis.insert(self.f, v);
                let mut cols = vec![v.clone()];
                self.dfs(&mut cols, &basis, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut codes = Vec::new();
        for p in parts {
            codes.extend(p?);
        }
        codes.sort_unstable();
        Ok(codes)
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::Capacity(format!("enumeration exceeded the budget of {} nodes", self.budget)));
        }
        Ok(())
    }

    fn dfs(&self, cols: &mut Vec<Vec<u8>>, basis: &Echelon, out: &mut Vec<u128>) -> Result<()> {
        self.tick()?;
        if !(self.prefix_ok)(cols.len(), cols) {
            return Ok(());
        }
        if cols.len() == self.n {
            if (self.leaf_ok)(cols) {
                out.push(encode_columns(self.f.q(), cols));
            }
            return Ok(());
        }
        for v in self.vectors(cols.len()) {
            let mut b = basis.clone();
            if !b.insert(self.f, &v) {
                continue;
            }
            cols.push(v);
            self.dfs(cols, &b, out)?;
            cols.pop();
        }
        Ok(())
    }
}

/// All T ∈ GL_N(F_q) satisfying `pred`; refuses when |GL_N(F_q)| exceeds
/// the budget.
pub fn enum_gl<P>(f: &Fq, n: usize, budget: u64, pred: P) -> Result<PointSet>
where
    P: Fn(&Matrix<u8>) -> bool + Sync,
{
    check_encodable(n, f.q())?;
    let order = gl_order(n, f.q() as u64);
    if order > budget as u128 {
        return Err(Error::Capacity(format!("|GL_{n}(F_{})| = {order} exceeds the budget of {budget}", f.q())));
    }
    let search = Search {
        f,
        n,
        free_rows: vec![(0..n).collect(); n],
        prefix_ok: |_: usize, _: &[Vec<u8>]| true,
        leaf_ok: |cols: &[Vec<u8>]| pred(&Matrix::from_cols(cols)),
        budget: u64::MAX,
        nodes: AtomicU64::new(0),
    };
    Ok(PointSet { size: n, q: f.q(), codes: search.run()? })
}

/// The points of an equation set inside GL_N(F_q). The budget bounds the
/// number of search nodes.
pub fn enum_equations(f: &Fq, e: &EquationSet, budget: u64) -> Result<PointSet> {
    let n = e.size;
    check_encodable(n, f.q())?;
    let free_rows = (1..=n)
        .map(|j| {
            let zero = e.zero_rows(j);
            (0..n).filter(|r| !zero.contains(&(r + 1))).collect()
        })
        .collect();
    let staged: Vec<Vec<&Constraint>> = (1..=n)
        .map(|j| {
            e.constraints
                .iter()
                .filter(|c| !matches!(c, Constraint::EntryZero { .. }) && c.last_column() == Some(j))
                .collect()
        })
        .collect();
    let at_leaf: Vec<&Constraint> = e
        .constraints
        .iter()
        .filter(|c| c.last_column().is_none() && !matches!(c, Constraint::DetInvertible))
        .collect();
    let search = Search {
        f,
        n,
        free_rows,
        prefix_ok: |j: usize, cols: &[Vec<u8>]| staged[j - 1].iter().all(|c| c.holds_on_columns(f, cols) == Some(true)),
        leaf_ok: |cols: &[Vec<u8>]| at_leaf.iter().all(|c| c.holds_on_columns(f, cols) == Some(true)),
        budget,
        nodes: AtomicU64::new(0),
    };
    Ok(PointSet { size: n, q: f.q(), codes: search.run()? })
}
