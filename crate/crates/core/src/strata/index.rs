//! Stratum indices and Jordan shapes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Which {
    /// Sequences r of length n−1 with r_1 < … < r_{n−1} and r_l ≤ m+l.
    R,
    /// r extended by s_n with s_{n−1} ≤ s_n ≤ m+n−2.
    S,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumIndex {
    pub m: usize,
    pub n: usize,
    pub seq: Vec<usize>,
}

impl StratumIndex {
    pub fn new(m: usize, n: usize, seq: Vec<usize>, which: Which) -> Result<Self> {
        let idx = StratumIndex { m, n, seq };
        idx.validate(which)?;
        Ok(idx)
    }

    pub fn validate(&self, which: Which) -> Result<()> {
        let (m, n, s) = (self.m, self.n, &self.seq);
        let bad = |why: &str| Err(Error::Validation(format!("invalid stratum index {self} for (m,n)=({m},{n}): {why}")));
        if m < 1 || n < 2 {
            return bad("need m >= 1 and n >= 2");
        }
        let want = match which {
            Which::R => n - 1,
            Which::S => n,
        };
        if s.len() != want {
            return bad("wrong length");
        }
        for l in 0..n - 1 {
            if s[l] < 1 || s[l] > m + l + 1 {
                return bad("entry out of range");
            }
            if l > 0 && s[l] <= s[l - 1] {
                return bad("not strictly increasing");
            }
        }
        if which == Which::S && (s[n - 1] < s[n - 2] || s[n - 1] > m + n - 2) {
            return bad("last entry out of range");
        }
        Ok(())
    }

    /// 1-based entry r_l.
    pub fn at(&self, l: usize) -> usize {
        self.seq[l - 1]
    }
}

impl fmt::Display for StratumIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All indices of the given family, in lexicographic order.
pub fn enum_strata(m: usize, n: usize, which: Which) -> Result<Vec<StratumIndex>> {
    if m < 1 || n < 2 {
        return Err(Error::Validation(format!("need m >= 1 and n >= 2, got ({m},{n})")));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend_r(m, n, &mut cur, &mut |r| match which {
        Which::R => out.push(StratumIndex { m, n, seq: r.to_vec() }),
        Which::S => {
            for last in r[n - 2]..=m + n - 2 {
                let mut s = r.to_vec();
                s.push(last);
                out.push(StratumIndex { m, n, seq: s });
            }
        }
    });
    Ok(out)
}

fn extend_r(m: usize, n: usize, cur: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    let l = cur.len();
    if l == n - 1 {
        emit(cur);
        return;
    }
    let lo = cur.last().map_or(1, |x| x + 1);
    for v in lo..=m + l + 1 {
        cur.push(v);
        extend_r(m, n, cur, emit);
        cur.pop();
    }
}

/// A Jordan form with distinct eigenvalues, each carrying its block sizes in
/// order of appearance on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanShape {
    pub parts: Vec<(i64, Vec<usize>)>,
}

impl JordanShape {
    pub fn new(parts: Vec<(i64, Vec<usize>)>) -> Result<Self> {
        for (i, (lam, sizes)) in parts.iter().enumerate() {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Error::Validation(format!("eigenvalue {lam} needs positive block sizes")));
            }
            if parts[..i].iter().any(|(mu, _)| mu == lam) {
                return Err(Error::Validation(format!("eigenvalue {lam} repeated")));
            }
        }
        if parts.is_empty() {
            return Err(Error::Validation("empty Jordan shape".into()));
        }
        Ok(JordanShape { parts })
    }

    /// diag(λI_m, J_n(λ)).
    pub fn standard(m: usize, n: usize, lambda: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Validation("need n >= 1".into()));
        }
        let mut sizes = vec![1; m];
        sizes.push(n);
        Self::new(vec![(lambda, sizes)])
    }

    /// diag(values) grouped by value in order of first appearance.
    pub fn diagonal(values: &[i64]) -> Result<Self> {
        let mut parts: Vec<(i64, Vec<usize>)> = Vec::new();
        for &v in values {
            match parts.iter_mut().find(|(l, _)| *l == v) {
                Some((_, s)) => s.push(1),
                None => parts.push((v, vec![1])),
            }
        }
        Self::new(parts)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().flat_map(|(_, s)| s).sum()
    }

    /// (m, n, λ) when the shape is diag(λI_m, J_n(λ)) with n ≥ 2.
    pub fn as_standard(&self) -> Option<(usize, usize, i64)> {
        let [(lam, sizes)] = self.parts.as_slice() else { return None };
        let (last, ones) = sizes.split_last()?;
        (*last >= 2 && ones.iter().all(|&s| s == 1)).then_some((ones.len(), *last, *lam))
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        let mut a = vec![vec![0; n]; n];
        let mut at = 0;
        for (lam, sizes) in &self.parts {
            for &k in sizes {
                for i in 0..k {
                    a[at + i][at + i] = *lam;
                    if i + 1 < k {
                        a[at + i][at + i + 1] = 1;
                    }
                }
                at += k;
            }
        }
        a
    }

    /// Eigenvalues with multiplicity, sorted.
    pub fn eigenvalues(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.parts.iter().flat_map(|(l, s)| std::iter::repeat(*l).take(s.iter().sum())).collect();
        v.sort();
        v
    }

    /// Whether the eigenvalues stay distinct modulo p.
    pub fn distinct_mod(&self, p: i64) -> bool {
        let mut r: Vec<i64> = self.parts.iter().map(|(l, _)| l.rem_euclid(p)).collect();
        r.sort();
        r.dedup();
        r.len() == self.parts.len()
    }
}

impl fmt::Display for JordanShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(l, s)| format!("{l}:{}", s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("+")))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses the display form, e.g. "0:1+2" or "1:1,2:1".
impl std::str::FromStr for JordanShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("cannot read Jordan shape `{s}`, expected e.g. 0:1+2,3:1"));
        let parts = s
            .split(',')
            .map(|part| {
                let (lam, sizes) = part.split_once(':').ok_or_else(bad)?;
                let lam: i64 = lam.trim().parse().map_err(|_| bad())?;
                let sizes: std::result::Result<Vec<usize>, _> = sizes.split('+').map(|k| k.trim().parse()).collect();
                Ok((lam, sizes.map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>>>()?;
        JordanShape::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_display_round_trips() {
        for text in ["0:1+2", "1:1,2:1", "-1:2,4:1+1"] {
            let shape: JordanShape = text.parse().unwrap();
            assert_eq!(shape.to_string(), text);
        }
        assert!("0".parse::<JordanShape>().is_err());
        assert!("0:0".parse::<JordanShape>().is_err());
    }

    fn seqs(v: &[StratumIndex]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.seq.clone()).collect()
    }

    #[test]
    fn small_index_sets() {
        assert_eq!(seqs(&enum_strata(1, 2, Which::R).unwrap()), vec![vec![1], vec![2]]);
        assert_eq!(enum_strata(2, 3, Which::R).unwrap().len(), 6);
        assert_eq!(seqs(&enum_strata(1, 2, Which::S).unwrap()), vec![vec![1, 1]]);
        assert_eq!(seqs(&enum_strata(1, 3, Which::R).unwrap()), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert!(enum_strata(0, 2, Which::R).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        for (m, n) in [(1, 2), (2, 3), (3, 3), (1, 4)] {
            for which in [Which::R, Which::S] {
                let all = enum_strata(m, n, which).unwrap();
                assert!(all.windows(2).all(|w| w[0].seq < w[1].seq));
                assert!(all.iter().all(|s| s.validate(which).is_ok()));
            }
        }
        assert!(StratumIndex::new(1, 2, vec![3], Which::R).is_err());
    }

    #[test]
    fn shapes() {
        let s = JordanShape::standard(1, 2, 0).unwrap();
        assert_eq!(s.matrix(), vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(s.as_standard(), Some((1, 2, 0)));
        let d = JordanShape::diagonal(&[1, 1, 2]).unwrap();
        assert_eq!(d.eigenvalues(), vec![1, 1, 2]);
        assert!(!d.distinct_mod(1));
        assert!(JordanShape::new(vec![(1, vec![1]), (1, vec![2])]).is_err());
    }
}
