mod common;

use common::zp_oracle::{check_against_oracle, det_mod_p, scramble, to_u64_rows, OracleTally, Residues};
use lcagroups::monolith::trial_rng;
use lcagroups::zpmodule::{complete_to_summand, has_root, in_span, is_pure, triangular_basis, Zp, ZpMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn exhaustive_oracle_mod_4_and_8() {
    let mut rng = trial_rng(11, 0);
    let mut tally = OracleTally::default();
    for (p, m) in [(2u64, 2u32), (2, 3)] {
        for n in 1..=2 {
            let res = Residues::new(p, m, n);
            for r in 1..=n {
                for gens in res.hermite_generators(r) {
                    check_against_oracle(&res, &gens, &mut tally).unwrap();
                    let mixed = scramble(&mut rng, p, res.q, &gens);
                    check_against_oracle(&res, &mixed, &mut tally).unwrap();
                }
            }
        }
    }
    assert!(tally.pure > 0 && tally.impure > 0 && tally.beyond_precision > 0, "{tally:?}");
}

fn matrix(p: u64, m: u32) -> impl Strategy<Value = ZpMatrix> {
    (1usize..=4).prop_flat_map(move |n| {
        (1usize..=n).prop_flat_map(move |r| {
            prop::collection::vec(prop::collection::vec(0i64..1_000_000, n), r)
                .prop_map(move |rows| ZpMatrix::from_i64(p, m, n, &rows).unwrap())
        })
    })
}

fn p_and_matrix() -> impl Strategy<Value = ZpMatrix> {
    common::prime().prop_flat_map(|p| matrix(p, 32))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn triangular_basis_preserves_the_span(sub in p_and_matrix()) {
        if let Ok(basis) = triangular_basis(&sub) {
            prop_assert!(basis.is_triangular());
            let tri = ZpMatrix::new(sub.ring.clone(), sub.cols, basis.vectors.clone()).unwrap();
            for row in &sub.rows {
                prop_assert!(in_span(&tri, row).unwrap());
            }
            for row in &basis.vectors {
                prop_assert!(in_span(&sub, row).unwrap());
            }
        } else {
            prop_assert_ne!(is_pure(&sub), Ok(true));
        }
    }

    #[test]
    fn completions_have_unit_determinant(sub in p_and_matrix()) {
        if is_pure(&sub) == Ok(true) {
            let basis = complete_to_summand(&sub).unwrap();
            let p = sub.ring.p;
            prop_assert_eq!(basis.vectors.len(), sub.cols);
            prop_assert_ne!(det_mod_p(p, &to_u64_rows(&basis.vectors, p)), 0);
        }
    }

    #[test]
    fn roots_of_multiples_are_recovered(sub in p_and_matrix(), coeffs in prop::collection::vec(-50i64..50, 4), n in 1u64..40) {
        let zp = &sub.ring;
        let w: Vec<BigInt> = (0..sub.cols)
            .map(|j| zp.reduce(&sub.rows.iter().zip(&coeffs).map(|(r, c)| &r[j] * c).sum::<BigInt>()))
            .collect();
        let v: Vec<BigInt> = w.iter().map(|x| zp.reduce(&(x * n))).collect();
        let root = has_root(&v, n, &sub).unwrap().expect("a multiple has a root");
        let mut e = 0;
        while n % sub.ring.p.pow(e + 1) == 0 {
            e += 1;
        }
        let low = Zp::new(zp.p, zp.m - e).unwrap();
        prop_assert_eq!(low.reduce_vec(&root), low.reduce_vec(&w));
    }

    #[test]
    fn non_multiples_have_no_root(sub in p_and_matrix(), j in 0usize..4) {
        // a unit coordinate cannot be divisible by p
        let p = sub.ring.p;
        let mut v = vec![BigInt::from(0); sub.cols];
        v[j % sub.cols] = BigInt::from(1);
        prop_assert_eq!(has_root(&v, p, &sub).unwrap(), None);
    }
}
