mod common;

use std::collections::BTreeSet;

use common::prime;
use lcagroups::laurent::LaurentElt;
use lcagroups::monolith::{
    diagonal_minimals, hall_span_dimension, laurent_shift_rank, mat_mul, normal_closure, qp_semidirect_monolith,
    rational_no_go, Agl1, RatMatrix, WreathWindow, DEFAULT_BUDGET,
};
use lcagroups::padic::PAdic;
use lcagroups::primes::prime_factors;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rank of rational row vectors by plain elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, r);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Normal closure by brute force: the subgroup generated by the full
/// conjugacy class.
fn closure_by_class(w: &WreathWindow, g: usize) -> BTreeSet<usize> {
    let class: BTreeSet<usize> = (0..w.order()).map(|h| w.conj(h, g)).collect();
    let mut seen: BTreeSet<usize> = [0].into();
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &c in &class {
            let y = w.mul(x, c);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[test]
fn normal_closure_matches_conjugacy_class_closure() {
    for (qq, k) in [(3, 2), (4, 2), (5, 2), (3, 3)] {
        let w = WreathWindow::new(Agl1::new(qq).unwrap(), k, DEFAULT_BUDGET).unwrap();
        for g in (1..w.order()).step_by(w.order() / 17 + 1) {
            let fast: BTreeSet<usize> = normal_closure(&w, g).elements.into_iter().collect();
            assert_eq!(fast, closure_by_class(&w, g), "q={qq} k={k} g={}", w.describe(g));
        }
    }
}

#[test]
fn repeated_primes_leave_the_span_small() {
    let v: Vec<BigRational> = vec![q(1, 1); 4];
    assert_eq!(hall_span_dimension(&[3, 3, 3, 3], &v).unwrap(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn qp_closure_floor(p in prime(), n in -500i64..500, d in 1i64..60, k in 0i64..6) {
        prop_assume!(n != 0);
        let a = PAdic::from_rational(p, &q(n, d), 40).unwrap();
        let r = qp_semidirect_monolith(k, &a).unwrap();
        prop_assert!(r.target_contained);
        prop_assert_eq!(r.achieved, Some(a.valuation().unwrap() - k));
        prop_assert_eq!(r.generators_used as i64, 2 * k + 1);
    }

    #[test]
    fn hall_span_is_full_for_distinct_primes(k in 2usize..=5, entries in prop::collection::vec(-9i64..=9, 5)) {
        let primes = &[2u64, 3, 5, 7, 11][..k];
        let v: Vec<BigRational> = entries[..k].iter().map(|&x| q(x, 1)).collect();
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let dim = hall_span_dimension(primes, &v).unwrap();
        prop_assert_eq!(dim, k);
        // oracle: rank of D^a S^b v over all a, b < k
        let mut rows = Vec::new();
        for b in 0..k {
            let shifted: Vec<BigRational> = (0..k).map(|i| v[(i + k - b) % k].clone()).collect();
            for a in 0..k as u32 {
                rows.push(shifted.iter().zip(primes).map(|(x, &p)| x * q(p.pow(a) as i64, 1)).collect());
            }
        }
        prop_assert_eq!(rational_rank(rows), dim);
    }

    #[test]
    fn laurent_shifts_span_the_window(p in prop::sample::select(vec![2u64, 3, 5]), coeffs in prop::collection::vec(0i64..5, 9)) {
        let terms: Vec<(i64, i64)> = coeffs.iter().enumerate().map(|(i, &c)| (i as i64 - 4, c)).collect();
        let g = LaurentElt::from_terms(p, &terms, 40).unwrap();
        prop_assume!(!g.is_zero());
        prop_assert_eq!(laurent_shift_rank(&g, 8).unwrap(), 9);
    }

    #[test]
    fn no_go_certificate_is_sound(entries in prop::collection::vec((-20i64..20, 1i64..=50), 4), n in 1usize..=2) {
        let m: RatMatrix = (0..n).map(|i| (0..n).map(|j| { let (a, b) = entries[i * 2 + j]; q(a, b) }).collect()).collect();
        let Ok(cert) = rational_no_go(std::slice::from_ref(&m)) else {
            return Ok(());
        };
        let id: RatMatrix = (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
        prop_assert_eq!(mat_mul(&m, &cert.inverses[0]), id);
        let mut expected: BTreeSet<u64> = BTreeSet::new();
        for x in m.iter().chain(&cert.inverses[0]).flatten() {
            expected.extend(prime_factors(x.denom().to_u64().unwrap()));
        }
        prop_assert_eq!(cert.prime_set.iter().copied().collect::<BTreeSet<_>>(), expected.clone());
        prop_assert!(!expected.contains(&cert.excluded_prime));
        prop_assert!((2..cert.excluded_prime).all(|r| !lcagroups::primes::is_prime(r) || expected.contains(&r)));
    }

    #[test]
    fn distinct_diagonals_are_all_verified(raw in prop::collection::btree_set(-300i64..300, 1..6)) {
        let lambdas: Vec<PAdic> = raw.iter().map(|&x| PAdic::from_int(2, x, 16).unwrap()).collect();
        let r = diagonal_minimals(2, &lambdas, 2, 16).unwrap();
        prop_assert!(r.target_contained, "{:?}", r.witness);
        prop_assert_eq!(r.achieved, Some(lambdas.len() as i64));
    }
}
