//! Defining equations of the strata and of the triangularization and
//! diagonalization varieties, as structured constraint lists.
//!
//! Indices are 1-based throughout. 𝔐(i, j) is the family of j×j minors on
//! j of the first i rows and the first j columns; it is empty when j > i.

use std::fmt;

use serde::Serialize;

use super::index::{StratumIndex, Which};
use crate::error::{Error, Result};
use crate::linalg::matrix::{self, Matrix};
use crate::ring::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Constraint {
    /// T_{i,j} = 0.
    EntryZero { i: usize, j: usize },
    /// f = 0 for every f ∈ 𝔐(rows, cols).
    MinorsVanish { rows: usize, cols: usize },
    /// f·T_{i,j} = 0 for every f ∈ 𝔐(rows, cols).
    MinorsTimesEntry { rows: usize, cols: usize, i: usize, j: usize },
    /// w·det(T) = 1.
    DetInvertible,
    DetOne,
    /// (T*MT)_{i,i} = det(T)·σ_i, and (T*MT)_{i,j} = 0 below the diagonal
    /// (or off it, when `diagonal`). T* is the adjugate.
    ConjugatePattern { matrix: Vec<Vec<i64>>, sigma: Vec<i64>, diagonal: bool },
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Constraint {
    /// Number of polynomial equations the constraint stands for.
    pub fn polynomial_count(&self) -> usize {
        match self {
            Constraint::EntryZero { .. } | Constraint::DetInvertible | Constraint::DetOne => 1,
            Constraint::MinorsVanish { rows, cols } | Constraint::MinorsTimesEntry { rows, cols, .. } => {
                binomial(*rows, *cols)
            }
            Constraint::ConjugatePattern { sigma, diagonal, .. } => {
                let n = sigma.len();
                if *diagonal {
                    n * n
                } else {
                    n * (n + 1) / 2
                }
            }
        }
    }

    /// Highest column the constraint reads, or None when it needs all of T.
    pub fn last_column(&self) -> Option<usize> {
        match self {
            Constraint::EntryZero { j, .. } => Some(*j),
            Constraint::MinorsVanish { cols, .. } => Some(*cols),
            Constraint::MinorsTimesEntry { cols, j, .. } => Some((*cols).max(*j)),
            _ => None,
        }
    }

    /// Evaluate on the leading columns of T (each of full height). Returns
    /// None when more columns are needed.
    pub fn holds_on_columns<F: Field>(&self, f: &F, cols: &[Vec<F::Elem>]) -> Option<bool> {
        let placed = cols.len();
        match self {
            Constraint::EntryZero { i, j } => (*j <= placed).then(|| f.is_zero(&cols[j - 1][i - 1])),
            Constraint::MinorsVanish { rows, cols: c } => (*c <= placed).then(|| block_rank(f, cols, *rows, *c) < *c),
            Constraint::MinorsTimesEntry { rows, cols: c, i, j } => ((*c).max(*j) <= placed)
                .then(|| f.is_zero(&cols[j - 1][i - 1]) || block_rank(f, cols, *rows, *c) < *c),
            _ => {
                let n = cols.first().map_or(0, |c| c.len());
                (placed == n).then(|| self.holds(f, &Matrix::from_cols(cols)))
            }
        }
    }

    pub fn holds<F: Field>(&self, f: &F, t: &Matrix<F::Elem>) -> bool {
        match self {
            Constraint::DetInvertible => !f.is_zero(&matrix::det(f, t)),
            Constraint::DetOne => matrix::det(f, t) == f.one(),
            Constraint::ConjugatePattern { matrix: m, sigma, diagonal } => {
                let mm = Matrix::from_rows(m.iter().map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect());
                let d = matrix::det(f, t);
                let c = matrix::mul(f, &matrix::mul(f, &matrix::adjugate(f, t), &mm), t);
                let n = t.rows();
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let v = c.get(i, j);
                        if i == j {
                            *v == f.mul(&d, &f.from_i64(sigma[i]))
                        } else if i > j || *diagonal {
                            f.is_zero(v)
                        } else {
                            true
                        }
                    })
                })
            }
            _ => {
                let cols: Vec<Vec<F::Elem>> = (0..t.cols()).map(|j| t.col(j)).collect();
                self.holds_on_columns(f, &cols).expect("all columns placed")
            }
        }
    }
}

/// Rank of the top-left rows×cols block, read from column vectors.
pub fn block_rank<F: Field>(f: &F, cols: &[Vec<F::Elem>], rows: usize, ncols: usize) -> usize {
    if rows == 0 || ncols == 0 {
        return 0;
    }
    let data: Vec<Vec<F::Elem>> = cols[..ncols].iter().map(|c| c[..rows].to_vec()).collect();
    matrix::rank(f, &Matrix::from_cols(&data))
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::EntryZero { i, j } => write!(f, "T[{i},{j}] = 0"),
            Constraint::MinorsVanish { rows, cols } => write!(f, "M({rows},{cols}) = 0"),
            Constraint::MinorsTimesEntry { rows, cols, i, j } => write!(f, "M({rows},{cols})*T[{i},{j}] = 0"),
            Constraint::DetInvertible => write!(f, "det invertible"),
            Constraint::DetOne => write!(f, "det = 1"),
            Constraint::ConjugatePattern { sigma, diagonal, .. } => {
                let s: Vec<String> = sigma.iter().map(|x| x.to_string()).collect();
                let kind = if *diagonal { "diagonal" } else { "upper triangular" };
                write!(f, "adj(T)*M*T {kind} with diagonal det*({})", s.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationSet {
    pub size: usize,
    pub label: String,
    pub constraints: Vec<Constraint>,
}

impl EquationSet {
    pub fn polynomial_count(&self) -> usize {
        self.constraints.iter().map(|c| c.polynomial_count()).sum()
    }

    pub fn contains(&self, c: &Constraint) -> bool {
        self.constraints.contains(c)
    }

    /// Entry-zero positions in column j (1-based rows).
    pub fn zero_rows(&self, j: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = self
            .constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::EntryZero { i, j: jj } if *jj == j => Some(*i),
                _ => None,
            })
            .collect();
        rows.sort();
        rows.dedup();
        rows
    }
}

/// The varieties with explicit equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variety {
    /// The stratum V_r of X_M for M = diag(λI_m, J_n(λ)).
    V { index: StratumIndex },
    /// The presentation X′_M of X_M by entry and minor conditions.
    XPrime { m: usize, n: usize },
    /// W_s (determinant one) or W′_s (determinant invertible).
    W { index: StratumIndex, unit_det: bool },
    /// SL_s with w_{s,i} = 0 for i < r.
    SL { s: usize, r: usize },
    /// The component of X_M (or Y_M when `diagonal`) with diagonal σ.
    Sigma { matrix: Vec<Vec<i64>>, sigma: Vec<i64>, diagonal: bool },
}

impl Variety {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Variety::V { .. } => "Vr",
            Variety::XPrime { .. } => "XprimeM",
            Variety::W { unit_det: true, .. } => "Ws",
            Variety::W { unit_det: false, .. } => "WprimeS",
            Variety::SL { .. } => "SLsr",
            Variety::Sigma { diagonal: false, .. } => "X_sigma",
            Variety::Sigma { diagonal: true, .. } => "Y_sigma",
        }
    }
}

pub fn equations(v: &Variety) -> Result<EquationSet> {
    let mut cs = Vec::new();
    let (size, label) = match v {
        Variety::V { index } => {
            index.validate(Which::R)?;
            let (m, n) = (index.m, index.n);
            for i in 1..n {
                for j in 1..=index.at(i) {
                    cs.push(Constraint::EntryZero { i: m + 1 + i, j });
                }
            }
            for i in 1..n {
                push_minors(&mut cs, m + i - 1, index.at(i));
            }
            cs.push(Constraint::DetInvertible);
            (m + n, format!("V{index}"))
        }
        Variety::XPrime { m, n } => {
            let (m, n) = (*m, *n);
            if m < 1 || n < 2 {
                return Err(Error::Validation(format!("need m >= 1 and n >= 2, got ({m},{n})")));
            }
            for i in m + 2..=m + n {
                cs.push(Constraint::EntryZero { i, j: 1 });
            }
            for i in m + 2..=m + n {
                for j in 2..i {
                    cs.push(Constraint::MinorsTimesEntry { rows: i - 2, cols: j - 1, i, j });
                }
            }
            cs.push(Constraint::DetInvertible);
            (m + n, "X'".to_string())
        }
        Variety::W { index, unit_det } => {
            index.validate(Which::S)?;
            let (m, n) = (index.m, index.n);
            for i in 1..=n.saturating_sub(2) {
                for j in 1..=index.at(i) {
                    cs.push(Constraint::EntryZero { i: m + 1 + i, j });
                }
            }
            for j in 1..=index.at(n) {
                cs.push(Constraint::EntryZero { i: m + n, j });
            }
            for i in 1..n {
                push_minors(&mut cs, m + i - 1, index.at(i));
            }
            cs.push(if *unit_det { Constraint::DetOne } else { Constraint::DetInvertible });
            (m + n, format!("{}{index}", if *unit_det { "W" } else { "W'" }))
        }
        Variety::SL { s, r } => {
            if *r < 1 || r > s {
                return Err(Error::Validation(format!("need 1 <= r <= s, got (s,r)=({s},{r})")));
            }
            for i in 1..*r {
                cs.push(Constraint::EntryZero { i: *s, j: i });
            }
            cs.push(Constraint::DetOne);
            (*s, format!("SL({s},{r})"))
        }
        Variety::Sigma { matrix, sigma, diagonal } => {
            let n = matrix.len();
            if n == 0 || matrix.iter().any(|row| row.len() != n) || sigma.len() != n {
                return Err(Error::Size(format!("matrix and sigma must be square of one size, got {n}")));
            }
            cs.push(Constraint::DetInvertible);
            cs.push(Constraint::ConjugatePattern { matrix: matrix.clone(), sigma: sigma.clone(), diagonal: *diagonal });
            let s: Vec<String> = sigma.iter().map(|x| x.to_string()).collect();
            (n, format!("{}({})", if *diagonal { "Y" } else { "X" }, s.join(",")))
        }
    };
    Ok(EquationSet { size, label, constraints: cs })
}

fn push_minors(cs: &mut Vec<Constraint>, rows: usize, cols: usize) {
    if cols <= rows {
        cs.push(Constraint::MinorsVanish { rows, cols });
    }
}

/// Whether T satisfies every constraint of E.
pub fn membership<F: Field>(f: &F, t: &Matrix<F::Elem>, e: &EquationSet) -> Result<bool> {
    if !t.is_square() || t.rows() != e.size {
        return Err(Error::Size(format!("expected {0}x{0}, got {1}x{2}", e.size, t.rows(), t.cols())));
    }
    Ok(e.constraints.iter().all(|c| c.holds(f, t)))
}
