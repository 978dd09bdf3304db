//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its measured runtime against a pinned limit.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use intsim::arith::{primes_up_to, valuation};
use intsim::counterexamples::oracle::{diag_oracle, OracleVerdict, ORACLE_NORM_BOUND};
use intsim::counterexamples::{
    build_diag_counterexample, build_tri_counterexample, certify, certify_diag_recipe, check_diag_recipe,
    check_tri_recipe,
};
use intsim::deciders::diag::{diag_over_field, diag_over_ring};
use intsim::deciders::local::{diag_local, LocalOrder};
use intsim::deciders::residue::{diag_residue_brute, triangular_family_closed_form, DEFAULT_RESIDUE_BUDGET};
use intsim::deciders::tri::{tri_over_field, tri_over_ring};
use intsim::deciders::{Certificate, Kind, Verdict};
use intsim::linalg::matrix::{self, Matrix};
use intsim::order::Order;
use intsim::ring::{Integers, Rationals, Ring, Zmod};
use intsim::strata::{
    dimension_checks, stratification_audit, transport_audit, x_audit, y_audit, JordanShape, Target,
    DEFAULT_ENUM_BUDGET,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
    Matrix::from_rows(rows).map(|&x| BigInt::from(x))
}

/// U·T·U⁻¹ for a random upper triangular T and a unimodular U built from
/// elementary operations.
fn conjugated_triangular(rng: &mut ChaCha8Rng, n: usize) -> Matrix<BigInt> {
    let zz = Integers;
    let t = z((0..n).map(|i| (0..n).map(|j| if j >= i { rng.gen_range(-4..=4) } else { 0 }).collect()).collect());
    let mut u = matrix::identity(&zz, n);
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let mut e = matrix::identity(&zz, n);
            e.set(i, j, BigInt::from(rng.gen_range(-2..=2)));
            u = matrix::mul(&zz, &u, &e);
        }
    }
    let inv = matrix::inverse_exact(&zz, &u).expect("unimodular");
    matrix::mul(&zz, &matrix::mul(&zz, &u, &t), &inv)
}

fn pid_local_global() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let (q, zz) = (Rationals, Integers);
    let (mut yes, mut total) = (0, 0);
    for n in [3usize, 4] {
        for i in 0..110 {
            let m = if i % 2 == 0 {
                z((0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect())
            } else {
                conjugated_triangular(&mut rng, n)
            };
            let ring = tri_over_ring(&zz, &m).map_err(|e| format!("ring decider: {e}"))?;
            let mq = m.map(|e| zz.embed(e));
            let field = tri_over_field(&q, &mq).map_err(|e| format!("field decider: {e}"))?;
            ensure(ring.verdict == field.verdict, || format!("verdicts differ on {m:?}"))?;
            if ring.is_yes() {
                let t = ring.witness.as_ref().ok_or("yes without witness")?;
                ensure(matrix::det(&zz, t).is_one(), || format!("det T != 1 for {m:?}"))?;
                let c = matrix::conjugate(&q, &mq, &t.map(|e| zz.embed(e))).ok_or("singular witness")?;
                ensure(matrix::is_upper_triangular(&q, &c), || format!("T^-1 M T not triangular for {m:?}"))?;
                yes += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} matrices, {yes} triangularizable, verdicts agree"))
}

fn example_closed_forms() -> Check {
    let zz = Integers;
    let primes = primes_up_to(13);
    let mut moduli = Vec::new();
    for p in primes_up_to(64) {
        let mut pk = p;
        let mut k = 1;
        while pk <= 64 {
            moduli.push((p, k, pk));
            pk *= p;
            k += 1;
        }
    }
    // The verdict is invariant under M ↦ M − yI and under unit rescaling of
    // x−y and a, so residue searches are shared across equal gcd classes.
    let mut brute_cache: HashMap<(u64, BigInt, BigInt), bool> = HashMap::new();
    let mut checks = 0u64;
    for x in -10i64..=10 {
        for y in -10i64..=10 {
            for a in -10i64..=10 {
                if x == y || a == 0 {
                    continue;
                }
                let m = z(vec![vec![x, a], vec![0, y]]);
                let (bx, by, ba) = (BigInt::from(x), BigInt::from(y), BigInt::from(a));
                let diff = &bx - &by;

                let ring = diag_over_ring(&zz, &m).map_err(|e| e.to_string())?;
                ensure(ring.is_yes() == ba.is_multiple_of(&diff), || format!("over Z at ({x},{y},{a})"))?;

                for &p in &primes {
                    let local = diag_local(&zz, &m, &p).map_err(|e| e.to_string())?;
                    let expect = valuation(&diff, p) <= valuation(&ba, p);
                    ensure(local.is_yes() == expect, || format!("over Z_{p} at ({x},{y},{a})"))?;
                }

                for &(p, k, pk) in &moduli {
                    let r = Zmod::new(pk);
                    let n = BigInt::from(pk);
                    let key = (pk, diff.gcd(&n), ba.gcd(&n));
                    let brute = match brute_cache.get(&key) {
                        Some(&b) => b,
                        None => {
                            let d = diag_residue_brute(&r, &m.map(|e| r.from_int(e)), DEFAULT_RESIDUE_BUDGET)
                                .map_err(|e| format!("brute force mod {pk}: {e}"))?;
                            ensure(d.verdict != Verdict::Unsupported, || format!("unsupported mod {pk}"))?;
                            brute_cache.insert(key, d.is_yes());
                            d.is_yes()
                        }
                    };
                    let closed = triangular_family_closed_form(&bx, &by, &ba, p, k);
                    ensure(brute == closed, || format!("over Z/{pk} at ({x},{y},{a}): brute {brute}, rule {closed}"))?;
                }

                let field = diag_over_field(&Rationals, &m.map(|e| zz.embed(e))).map_err(|e| e.to_string())?;
                ensure(field.is_yes(), || format!("over Q at ({x},{y},{a})"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} triples, {} moduli, {} residue searches, zero mismatches", moduli.len(), brute_cache.len()))
}

fn tri_counterexample() -> Check {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        let c = build_tri_counterexample(-5, n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(build_tri_counterexample(-5, n).ok().as_ref() == Some(&c), || format!("n={n}: not deterministic"))?;
        check_tri_recipe(&c).map_err(|e| format!("n={n}: {e}"))?;
        let report = certify(&c.ring, &c.m, Kind::Tri, 100).map_err(|e| format!("n={n}: {e}"))?;
        ensure(report.legs.len() == 3 && report.legs.iter().all(|l| l.passed), || format!("n={n}: legs"))?;
        ensure(report.primes_checked.len() > 20, || format!("n={n}: too few primes"))?;
        let Certificate::ContentClassObstruction { classes, .. } = &report.certificate else {
            return Err(format!("n={n}: certificate {}", report.certificate.tag()));
        };
        for cc in classes {
            ensure(!c.ring.is_principal_class(&cc.content), || format!("n={n}: trivial content class"))?;
        }
        out.push(format!("n={n}: {} primes, {} nontrivial classes", report.primes_checked.len(), classes.len()));
    }
    Ok(out.join("; "))
}

fn diag_counterexample() -> Check {
    let c = build_diag_counterexample(-5, 2).map_err(|e| e.to_string())?;
    ensure(build_diag_counterexample(-5, 2).ok().as_ref() == Some(&c), || "not deterministic".into())?;
    check_diag_recipe(&c).map_err(|e| format!("recipe: {e}"))?;
    ensure(matrix::det(&c.ring, &c.t0) == c.a0, || "det T0 != a0".into())?;
    let places = c.ring.places(100);
    for p in &places {
        let d = diag_local(&c.ring, &c.m, p).map_err(|e| e.to_string())?;
        ensure(d.is_yes(), || format!("diag_local fails at {p}"))?;
    }
    let global = diag_over_ring(&c.ring, &c.m).map_err(|e| e.to_string())?;
    ensure(global.is_no(), || "diagonalizable over the ring".into())?;
    let report = certify_diag_recipe(&c, 100).map_err(|e| format!("certification: {e}"))?;
    ensure(matches!(report.certificate, Certificate::ClassDistributionInfeasible { .. }), || "certificate type".into())?;
    let oracle = diag_oracle(&c.ring, &c.m, ORACLE_NORM_BOUND).map_err(|e| e.to_string())?;
    ensure(oracle == OracleVerdict::No, || format!("oracle says {oracle:?}"))?;
    Ok(format!("{} primes local yes, ClassDistributionInfeasible re-verified, oracle concurs", places.len()))
}

fn stratification() -> Check {
    let mut out = Vec::new();
    for (m, n, lambda, q) in [(1, 2, 0, 2), (1, 2, 0, 3), (2, 2, 0, 2), (1, 3, 0, 2)] {
        let a = stratification_audit(m, n, lambda, q, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
        ensure(a.union_ok && a.presentation_ok && a.classification_ok, || format!("{a:?}"))?;
        if (m, n, q) == (1, 2, 2) {
            let c = |k: &str| a.counts.get(k).copied();
            ensure(c("V(1)") == Some(24) && c("V(2)") == Some(24) && c("X") == Some(40), || format!("{:?}", a.counts))?;
        }
        out.push(format!("({m},{n},{lambda},{q}) |X|={}", a.counts["X"]));
    }
    Ok(out.join(", "))
}

fn y_components() -> Check {
    let a = y_audit(&[1, 1, 2], 3, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
    ensure(a.total == 288, || format!("|Y| = {}", a.total))?;
    ensure(a.components.len() == 3, || format!("{} classes", a.components.len()))?;
    ensure(a.components.iter().all(|c| c.classified == 96 && c.from_equations == 96), || format!("{:?}", a.components))?;
    ensure(a.partition_ok && a.equal_sizes && a.product_ok, || format!("{a:?}"))?;
    Ok("|Y(F_3)| = 288 = 3 x 96".into())
}

fn x_product_transport() -> Check {
    let shape = JordanShape::diagonal(&[1, 2]).map_err(|e| e.to_string())?;
    let a = x_audit(&shape, 5, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
    ensure(a.total == 160 && a.predicted_component == 80 && a.product_ok && a.partition_ok, || format!("{a:?}"))?;
    let jordan = JordanShape::new(vec![(0, vec![2])]).map_err(|e| e.to_string())?;
    let j = x_audit(&jordan, 3, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
    ensure(j.total == 12, || format!("|X_J2(0)(F_3)| = {}", j.total))?;
    for sigma in [[1, 2], [2, 1]] {
        let t = transport_audit(&shape, 5, &sigma, 1, Target::X, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
        ensure(t.bijective && t.source_count == 80, || format!("{t:?}"))?;
    }
    Ok("|X(F_5)| = 160, |X_J2(0)(F_3)| = 12, transport bijective both ways".into())
}

fn dimension_recursion() -> Check {
    let mut total = 0;
    for (m, n) in [(1, 2), (2, 2), (1, 3)] {
        for c in dimension_checks(m, n, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())? {
            ensure(c.dims_agree && c.counts_agree, || format!("(m,n)=({m},{n}) r={}: {c:?}", c.index))?;
            ensure(c.recursion == c.degree, || format!("r={}: dim {} vs degree {}", c.index, c.recursion, c.degree))?;
            total += 1;
        }
    }
    Ok(format!("{total} strata, recursion equals interpolation degree"))
}

fn main() {
    let criteria: [(u8, &str, fn() -> Check, u64); 8] = [
        (1, "PID local-global triangularization", pid_local_global, 10),
        (2, "2x2 triangular family closed forms", example_closed_forms, 60),
        (3, "triangularization counterexample", tri_counterexample, 30),
        (4, "diagonalization counterexample", diag_counterexample, 60),
        (5, "stratification audit", stratification, 60),
        (6, "Y_M component structure", y_components, 30),
        (7, "X_M product and transport", x_product_transport, 10),
        (8, "dimension recursion", dimension_recursion, 120),
    ];
    let mut failures = Vec::new();
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; too slow")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {id} [{status}] {name}: {detail} ({:.2}s, limit {limit}s)", elapsed.as_secs_f64());
        if status == "FAIL" {
            failures.push(id);
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
