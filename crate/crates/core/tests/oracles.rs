//! Worked values checked against the enumeration oracle in `common`.

mod common;

use common::{assert_close, enumerate_pmf, mean};
use occupancy::occupancy::{exact_distribution, ExactMethod};
use occupancy::prob::sample_simplex;
use occupancy::rng;
use occupancy::{
    distribution_brute_force, distribution_dp, distribution_inclusion_exclusion,
    expectation_closed_form, uniform, validate,
};

#[test]
fn oracle_reproduces_hand_values() {
    // 4 equiprobable sequences: X = 1, 2, 2, 1.
    assert_close(&enumerate_pmf(&[0.5, 0.5], 2), &[0.0, 0.5, 0.5], 1e-15);
    // 0.49 + 0.09 and 2 * 0.21.
    assert_close(&enumerate_pmf(&[0.7, 0.3], 2), &[0.0, 0.58, 0.42], 1e-15);
    // 27 equiprobable sequences: 3 constant, 6 permutations, 18 with two distinct boxes.
    let third = 1.0 / 3.0;
    assert_close(
        &enumerate_pmf(&[third; 3], 3),
        &[0.0, 3.0 / 27.0, 18.0 / 27.0, 6.0 / 27.0],
        1e-15,
    );
    assert!((mean(&enumerate_pmf(&[0.7, 0.3], 3)) - 1.63).abs() < 1e-14);
    assert_close(&enumerate_pmf(&[0.2, 0.8], 0), &[1.0, 0.0, 0.0], 0.0);
}

#[test]
fn frozen_expectations() {
    let p = validate(&[0.7f64, 0.3]).unwrap();
    assert!((expectation_closed_form(&p, 3) - 1.630).abs() < 1e-12);
    assert!((expectation_closed_form(&validate(&[0.5f64, 0.5]).unwrap(), 2) - 1.5).abs() < 1e-15);
    let u = uniform::<f64>(3).unwrap();
    // 3 - 3 * 16/81
    assert!((expectation_closed_form(&u, 4) - 2.407_407_407_407_407).abs() < 1e-12);
}

#[test]
fn every_backend_matches_oracle_on_examples() {
    let third = 1.0 / 3.0;
    let cases: [(&[f64], usize); 7] = [
        (&[0.5, 0.5], 2),
        (&[0.7, 0.3], 2),
        (&[0.7, 0.3], 3),
        (&[third, third, third], 3),
        (&[1.0, 0.0], 3),
        (&[0.1, 0.0, 0.6, 0.3], 4),
        (&[0.25, 0.75], 0),
    ];
    for (raw, balls) in cases {
        let p = validate(raw).unwrap();
        let expected = enumerate_pmf(p.entries(), balls);
        for method in ExactMethod::ALL {
            let d = exact_distribution(&p, balls, method).unwrap();
            assert_close(d.pmf(), &expected, 1e-12);
        }
    }
}

#[test]
fn backends_match_oracle_on_random_vectors() {
    let mut r = rng::seeded(77);
    for n in 1..=5 {
        for balls in 0..=6 {
            for _ in 0..20 {
                let p = sample_simplex::<f64, _>(n, &mut r).unwrap();
                let expected = enumerate_pmf(p.entries(), balls);
                assert_close(distribution_dp(&p, balls).unwrap().pmf(), &expected, 1e-12);
                assert_close(
                    distribution_inclusion_exclusion(&p, balls).unwrap().pmf(),
                    &expected,
                    1e-12,
                );
                assert_close(distribution_brute_force(&p, balls).unwrap().pmf(), &expected, 1e-12);
                assert!((mean(&expected) - expectation_closed_form(&p, balls)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn permutation_invariance() {
    let mut r = rng::seeded(4);
    for _ in 0..100 {
        let p = sample_simplex::<f64, _>(6, &mut r).unwrap();
        let mut reversed = p.entries().to_vec();
        reversed.reverse();
        let q = validate(&reversed).unwrap();
        for balls in [1, 5, 17] {
            let a = distribution_dp(&p, balls).unwrap();
            let b = distribution_dp(&q, balls).unwrap();
            assert_close(a.pmf(), b.pmf(), 1e-12);
        }
    }
}

#[test]
fn support_of_pmf() {
    let mut r = rng::seeded(5);
    for n in 1..7 {
        for balls in 0..9 {
            let p = sample_simplex::<f64, _>(n, &mut r).unwrap();
            let d = distribution_dp(&p, balls).unwrap();
            assert_eq!(d.pmf()[0], if balls == 0 { 1.0 } else { 0.0 });
            for k in n.min(balls) + 1..=n {
                assert!(d.pmf()[k].abs() < 1e-15);
            }
        }
    }
}

#[test]
fn dp_agrees_with_ie_beyond_brute_force_budget() {
    let mut r = rng::seeded(6);
    for (n, balls) in [(12, 30), (20, 15), (25, 40)] {
        let p = sample_simplex::<f64, _>(n, &mut r).unwrap();
        let a = distribution_dp(&p, balls).unwrap();
        let b = distribution_inclusion_exclusion(&p, balls).unwrap();
        // Inclusion-exclusion loses digits to cancellation as n grows.
        assert_close(a.pmf(), b.pmf(), 1e-6);
        assert!((a.mean() - expectation_closed_form(&p, balls)).abs() < 1e-9);
    }
}
