use intsim::arith::valuation;
use intsim::deciders::decision::{verify_diag_witness, verify_tri_witness};
use intsim::deciders::diag::diag_over_ring;
use intsim::deciders::local::diag_local;
use intsim::deciders::residue::{diag_residue_brute, triangular_family_closed_form, DEFAULT_RESIDUE_BUDGET};
use intsim::deciders::tri::{tri_over_field, tri_over_ring};
use intsim::io::{parse_matrix_json, InputMatrix};
use intsim::linalg::matrix::{self, Matrix};
use intsim::number_ring::{QuadElem, QuadRing};
use intsim::order::Order;
use intsim::ring::{Integers, Rationals, Ring, Zmod};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

fn z(rows: &[Vec<i64>]) -> Matrix<BigInt> {
    Matrix::from_rows(rows.to_vec()).map(|&x| BigInt::from(x))
}

fn square(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, n), n)
}

fn unimodular(ops: &[(usize, usize, i64)], n: usize) -> Matrix<BigInt> {
    let zz = Integers;
    let mut u = matrix::identity(&zz, n);
    for &(i, j, c) in ops {
        if i % n != j % n {
            let mut e = matrix::identity(&zz, n);
            e.set(i % n, j % n, BigInt::from(c));
            u = matrix::mul(&zz, &u, &e);
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn integer_and_rational_triangularization_agree(rows in (2usize..=3).prop_flat_map(|n| square(n, -6, 6))) {
        let m = z(&rows);
        let ring = tri_over_ring(&Integers, &m).unwrap();
        let field = tri_over_field(&Rationals, &m.map(|e| Integers.embed(e))).unwrap();
        prop_assert_eq!(ring.verdict, field.verdict);
        if let Some(t) = ring.witness {
            prop_assert!(matrix::det(&Integers, &t).is_one());
            prop_assert!(verify_tri_witness(&Integers, &m, &t));
        }
    }

    #[test]
    fn verdicts_are_conjugation_invariant(
        rows in square(3, -3, 3),
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..4),
    ) {
        let zz = Integers;
        let m = z(&rows);
        let u = unimodular(&ops, 3);
        let conj = matrix::mul(&zz, &matrix::mul(&zz, &u, &m), &matrix::inverse_exact(&zz, &u).unwrap());
        prop_assert_eq!(tri_over_ring(&zz, &m).unwrap().verdict, tri_over_ring(&zz, &conj).unwrap().verdict);
        prop_assert_eq!(diag_over_ring(&zz, &m).unwrap().verdict, diag_over_ring(&zz, &conj).unwrap().verdict);
    }

    #[test]
    fn diagonalization_witnesses_are_unimodular(rows in square(2, -8, 8)) {
        let m = z(&rows);
        let d = diag_over_ring(&Integers, &m).unwrap();
        if let Some(t) = d.witness {
            prop_assert!(Integers.is_unit(&matrix::det(&Integers, &t)));
            prop_assert!(verify_diag_witness(&Integers, &m, &t));
        }
    }

    #[test]
    fn local_rule_for_the_triangular_family(x in -30i64..30, y in -30i64..30, a in -30i64..30, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(x != y && a != 0);
        let m = z(&[vec![x, a], vec![0, y]]);
        let d = diag_local(&Integers, &m, &p).unwrap();
        prop_assert_eq!(d.is_yes(), valuation(&BigInt::from(x - y), p) <= valuation(&BigInt::from(a), p));
        let global = diag_over_ring(&Integers, &m).unwrap();
        prop_assert_eq!(global.is_yes(), a.is_multiple_of(&(x - y)));
    }

    #[test]
    fn residue_closed_form_matches_search(x in -20i64..20, y in -20i64..20, a in -20i64..20, (p, k) in prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])) {
        prop_assume!(x != y && a != 0);
        let r = Zmod::new(p.pow(k));
        let m = z(&[vec![x, a], vec![0, y]]);
        let brute = diag_residue_brute(&r, &m.map(|e| r.from_int(e)), DEFAULT_RESIDUE_BUDGET).unwrap();
        let closed = triangular_family_closed_form(&BigInt::from(x), &BigInt::from(y), &BigInt::from(a), p, k);
        prop_assert_eq!(brute.is_yes(), closed);
    }

    #[test]
    fn matrix_input_round_trips(
        d in prop::sample::select(vec![-5i64, -3, -1, -2, -6, -23]),
        entries in prop::collection::vec((-1_000_000i64..1_000_000, -50i64..50), 4),
    ) {
        let ring = QuadRing::new(d).unwrap();
        let rows = vec![
            vec![QuadElem::new(entries[0].0, entries[0].1), QuadElem::new(entries[1].0, entries[1].1)],
            vec![QuadElem::new(entries[2].0, entries[2].1), QuadElem::new(entries[3].0, entries[3].1)],
        ];
        let input = InputMatrix::Quadratic(ring, Matrix::from_rows(rows));
        let parsed = parse_matrix_json(&input.to_json().to_string()).unwrap();
        prop_assert_eq!(parsed, input);
    }

    #[test]
    fn big_integer_inputs_round_trip(digits in "[1-9][0-9]{0,40}", neg in any::<bool>()) {
        let n: BigInt = format!("{}{digits}", if neg { "-" } else { "" }).parse().unwrap();
        let input = InputMatrix::Integer(Matrix::from_rows(vec![vec![n.clone(), BigInt::one()], vec![BigInt::from(0), n]]));
        prop_assert_eq!(parse_matrix_json(&input.to_json().to_string()).unwrap(), input);
    }
}
