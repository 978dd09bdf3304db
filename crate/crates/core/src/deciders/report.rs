//! Evaluation of the six global, local and residue conditions with
//! cross-checks between them.
//!
//! Conditions, for the chosen kind:
//! 1. over the ring O;
//! 2. over every completion O_P;
//! 3. over every O/P^i;
//! 4. over every residue field O/P;
//! 5. over the fraction field k;
//! 6. over every completed field k_P.

use super::decision::{Decision, Kind, Verdict};
use super::diag::{diag_over_field, diag_over_ring};
use super::local::{diag_completion_field, diag_local, diag_residue_field, tri_local, tri_residue_field, LocalOrder};
use super::residue::{diag_residue_brute, tri_residue_brute};
use super::tri::{tri_over_field, tri_over_ring};
use super::{embed_matrix, map_decision, Certificate};
use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::ring::Ring;

/// Highest exponent i tried for condition 3.
pub const MAX_RESIDUE_LEVEL: u32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeResult {
    pub prime: String,
    /// Exponent i for condition 3.
    pub level: Option<u32>,
    pub decision: Decision<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResult {
    pub condition: u8,
    pub label: &'static str,
    pub verdict: Verdict,
    /// Decision for the global conditions 1 and 5.
    pub global: Option<Decision<String>>,
    pub local: Vec<PrimeResult>,
    pub primes_checked: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: Kind,
    pub ring: String,
    pub bound: u64,
    pub conditions: Vec<ConditionResult>,
    /// Violated implications; empty for a consistent report.
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn condition(&self, c: u8) -> &ConditionResult {
        &self.conditions[usize::from(c) - 1]
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// Unsupported if any condition is, otherwise decided.
    pub fn fully_decided(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict != Verdict::Unsupported)
    }
}

const LABELS: [&str; 6] = ["ring", "completions", "residue rings", "residue fields", "field", "completed fields"];

fn render_decision<R: Ring>(r: &R, d: Decision<R::Elem>) -> Decision<String> {
    map_decision(d, |e| r.render(e))
}

fn aggregate(results: &[PrimeResult]) -> Verdict {
    if results.iter().any(|r| r.decision.is_no()) {
        Verdict::No
    } else if results.iter().any(|r| r.decision.verdict == Verdict::Unsupported) {
        Verdict::Unsupported
    } else {
        Verdict::Yes
    }
}

fn global_block(c: u8, d: Decision<String>) -> ConditionResult {
    ConditionResult {
        condition: c,
        label: LABELS[usize::from(c) - 1],
        verdict: d.verdict,
        global: Some(d),
        local: vec![],
        primes_checked: vec![],
    }
}

fn local_block(c: u8, local: Vec<PrimeResult>, primes: &[String]) -> ConditionResult {
    ConditionResult {
        condition: c,
        label: LABELS[usize::from(c) - 1],
        verdict: aggregate(&local),
        global: None,
        local,
        primes_checked: primes.to_vec(),
    }
}

/// Capacity errors become an unsupported entry; other errors propagate.
fn soften(d: Result<Decision<String>>) -> Result<Decision<String>> {
    match d {
        Err(Error::Capacity(msg)) => Ok(Decision::unsupported(format!("skipped: {msg}"))),
        Err(Error::Unsupported(msg)) => Ok(Decision::unsupported(msg)),
        other => other,
    }
}

/// Evaluate conditions 1–6 for M over O at all places of norm ≤ `bound`.
///
/// Condition 3 is tried for O/P^i with i ≤ [`MAX_RESIDUE_LEVEL`] while
/// |O/P^i|^{n²} stays within `budget`; larger cases are listed as skipped.
pub fn local_global_report<O: LocalOrder>(
    o: &O,
    m: &Matrix<O::Elem>,
    kind: Kind,
    bound: u64,
    budget: u64,
) -> Result<Report> {
    let k = o.frac();
    let mk = embed_matrix(o, m);
    let places = o.places(bound);
    let names: Vec<String> = places.iter().map(|p| p.to_string()).collect();

    let (ring_d, field_d) = match kind {
        Kind::Tri => (tri_over_ring(o, m), tri_over_field(&k, &mk)?),
        Kind::Diag => (diag_over_ring(o, m), diag_over_field(&k, &mk)?),
    };
    let ring_d = soften(ring_d.map(|d| render_decision(o, d)))?;
    let field_d = render_decision(&k, field_d);

    let mut c2 = Vec::new();
    let mut c3 = Vec::new();
    let mut c4 = Vec::new();
    let mut c6 = Vec::new();
    for (p, name) in places.iter().zip(&names) {
        let entry = |decision, level| PrimeResult { prime: name.clone(), level, decision };
        let (d2, d4, d6) = match kind {
            Kind::Tri => {
                let d2 = tri_local(o, m, p)?;
                (d2.clone(), tri_residue_field(o, m, p)?, d2)
            }
            Kind::Diag => (diag_local(o, m, p)?, diag_residue_field(o, m, p)?, diag_completion_field(o, m, p)?),
        };
        c2.push(entry(render_decision(o, d2), None));
        c4.push(entry(render_decision(o, d4), None));
        c6.push(entry(render_decision(o, d6), None));
        for i in 1..=MAX_RESIDUE_LEVEL {
            let r = o.residue(p, i);
            let mr = m.map(|e| o.reduce(&r, e));
            let d = match kind {
                Kind::Tri => tri_residue_brute(&r, &mr, budget),
                Kind::Diag => diag_residue_brute(&r, &mr, budget),
            };
            c3.push(entry(soften(d.map(|d| render_decision(&r, d)))?, Some(i)));
        }
    }

    let conditions = vec![
        global_block(1, ring_d),
        local_block(2, c2, &names),
        local_block(3, c3, &names),
        local_block(4, c4, &names),
        global_block(5, field_d),
        local_block(6, c6, &names),
    ];
    let mut report =
        Report { kind, ring: o.label(), bound, conditions, violations: vec![], notes: vec![] };
    check_implications(&mut report, o.pid_mode());
    Ok(report)
}

fn at<'a>(c: &'a ConditionResult, prime: &str, level: Option<u32>) -> Option<&'a Decision<String>> {
    c.local.iter().find(|r| r.prime == prime && r.level == level).map(|r| &r.decision)
}

fn check_implications(report: &mut Report, pid: bool) {
    let mut v = Vec::new();
    let yes = |c: &ConditionResult| c.verdict == Verdict::Yes;
    let c = |i: u8| report.condition(i);

    if yes(c(1)) {
        for j in 2..=6u8 {
            if c(j).verdict == Verdict::No {
                v.push(format!("(1) holds but ({j}) fails"));
            }
        }
    }
    if yes(c(5)) {
        for r in &c(6).local {
            if r.decision.is_no() {
                v.push(format!("(5) holds but (6) fails at {}", r.prime));
            }
        }
    }
    for name in &c(2).primes_checked {
        let d2 = at(c(2), name, None).expect("evaluated");
        let d4 = at(c(4), name, None).expect("evaluated");
        let d6 = at(c(6), name, None).expect("evaluated");
        let levels: Vec<&Decision<String>> =
            (1..=MAX_RESIDUE_LEVEL).filter_map(|i| at(c(3), name, Some(i))).collect();
        let decided: Vec<(usize, bool)> = levels
            .iter()
            .enumerate()
            .filter(|(_, d)| d.verdict != Verdict::Unsupported)
            .map(|(i, d)| (i + 1, d.is_yes()))
            .collect();
        if d2.is_yes() && d6.is_no() {
            v.push(format!("(2) holds but (6) fails at {name}"));
        }
        if d2.is_yes() {
            for &(i, ok) in &decided {
                if !ok {
                    v.push(format!("(2) holds but (3) fails mod {name}^{i}"));
                }
            }
        }
        for w in decided.windows(2) {
            if w[1].1 && !w[0].1 {
                v.push(format!("(3) holds mod {name}^{} but not mod {name}^{}", w[1].0, w[0].0));
            }
        }
        if let Some(&(1, ok)) = decided.first() {
            if ok != d4.is_yes() {
                v.push(format!("exhaustive search mod {name} disagrees with (4)"));
            }
        }
        if report.kind == Kind::Tri {
            if d2.verdict != d6.verdict {
                v.push(format!("(2) and (6) differ at {name}"));
            }
            if d2.is_yes() && d4.is_no() {
                v.push(format!("(2) holds but (4) fails at {name}"));
            }
            if yes(c(5)) && d2.is_no() {
                v.push(format!("(5) holds but (2) fails at {name}"));
            }
        }
    }
    if pid {
        match report.kind {
            Kind::Tri => {
                if c(1).verdict != c(5).verdict && c(1).verdict != Verdict::Unsupported {
                    v.push("(1) and (5) differ over a principal ideal domain".into());
                }
            }
            Kind::Diag => {
                // Over a PID, (2) fails exactly at the primes dividing det ϑ.
                let bad: Option<Vec<String>> = match c(1).global.as_ref().and_then(|d| d.certificate.as_ref()) {
                    Some(Certificate::DetThetaObstruction { primes, .. }) => Some(primes.clone()),
                    _ if yes(c(1)) => Some(vec![]),
                    _ => None,
                };
                if let Some(bad) = bad {
                    for r in &c(2).local {
                        let expected_no = bad.contains(&r.prime);
                        if r.decision.verdict != Verdict::Unsupported && r.decision.is_no() != expected_no {
                            v.push(format!("(2) at {} disagrees with det ϑ", r.prime));
                        }
                    }
                }
            }
        }
    }
    let mut notes = Vec::new();
    if c(4).verdict == Verdict::Yes && c(5).verdict == Verdict::No && report.kind == Kind::Tri {
        notes.push("characteristic polynomial splits at every tested residue field but not over k".into());
    }
    let skipped = c(3).local.iter().filter(|r| r.decision.verdict == Verdict::Unsupported).count();
    if skipped > 0 {
        notes.push(format!("{skipped} residue-ring checks skipped by the search budget"));
    }
    report.violations = v;
    report.notes = notes;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deciders::residue::DEFAULT_RESIDUE_BUDGET;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn z(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    #[test]
    fn integer_triangularization_all_yes() {
        let r = local_global_report(&Integers, &z(vec![vec![0, 2], vec![3, 5]]), Kind::Tri, 50, DEFAULT_RESIDUE_BUDGET)
            .unwrap();
        assert!(r.is_consistent(), "{:?}", r.violations);
        for c in &r.conditions {
            assert_ne!(c.verdict, Verdict::No, "condition {}", c.condition);
        }
        assert_eq!(r.condition(1).verdict, Verdict::Yes);
    }

    #[test]
    fn integer_diagonalization_fails_at_three() {
        let r = local_global_report(&Integers, &z(vec![vec![1, 1], vec![0, 4]]), Kind::Diag, 50, DEFAULT_RESIDUE_BUDGET)
            .unwrap();
        assert!(r.is_consistent(), "{:?}", r.violations);
        assert_eq!(r.condition(1).verdict, Verdict::No);
        assert_eq!(r.condition(5).verdict, Verdict::Yes);
        assert_eq!(r.condition(6).verdict, Verdict::Yes);
        assert_eq!(r.condition(2).verdict, Verdict::No);
        let failing: Vec<&str> =
            r.condition(2).local.iter().filter(|p| p.decision.is_no()).map(|p| p.prime.as_str()).collect();
        assert_eq!(failing, vec!["3"]);
        // Mod 3 the matrix is a nontrivial Jordan block.
        assert!(at(r.condition(4), "3", None).unwrap().is_no());
        assert!(at(r.condition(3), "3", Some(1)).unwrap().is_no());
        assert!(at(r.condition(4), "5", None).unwrap().is_yes());
    }
}
