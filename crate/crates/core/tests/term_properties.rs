mod common;

use common::{any_term, valid_term};
use lcagroups::classify::{canonical_form, characteristically_simple, dual_canonical, iso_canonical};
use lcagroups::corpus::random_simple_term;
use lcagroups::duality::dual;
use lcagroups::error::Error;
use lcagroups::monolith::trial_rng;
use lcagroups::predicates::{densely_divisible, is_compact, is_discrete, nondense_primes, predicate_vector, PStatus};
use lcagroups::terms::{normalize, parse_bytes, parse_expr, validate, GroupExpr};
use proptest::prelude::*;

fn children(e: &GroupExpr) -> Vec<&GroupExpr> {
    match e {
        GroupExpr::DirectSum(items) => items.iter().collect(),
        GroupExpr::Power(b, _) | GroupExpr::RestrictedPower(b, _) => vec![b.as_ref()],
        _ => vec![],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn render_then_parse_round_trips(e in valid_term()) {
        let back = parse_expr(&e.to_string()).unwrap();
        prop_assert_eq!(normalize(&back), normalize(&e));
        let nf = normalize(&e);
        prop_assert_eq!(parse_expr(&nf.to_string()).unwrap(), nf);
    }

    #[test]
    fn json_round_trips(e in any_term()) {
        prop_assert_eq!(GroupExpr::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_validity(e in any_term()) {
        let n = normalize(&e);
        prop_assert_eq!(normalize(&n), n.clone());
        if validate(&e).valid {
            prop_assert!(validate(&n).valid, "{}", n);
        }
    }

    #[test]
    fn validation_is_compositional(e in any_term()) {
        let report = validate(&e);
        let kids_ok = children(&e).iter().all(|c| validate(c).valid);
        let local_ok = !report.violations.iter().any(|v| v.path == "$");
        prop_assert_eq!(report.valid, kids_ok && local_ok);
    }

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
        match parse_bytes(&bytes) {
            Ok(_) => {}
            Err(Error::Syntax { offset, .. } | Error::NotPrime { offset, .. } | Error::CyclicOrder { offset, .. }) => {
                prop_assert!(offset <= bytes.len());
            }
            Err(_) => {}
        }
    }

    #[test]
    fn parser_never_panics_on_mutated_terms(e in valid_term(), at in any::<prop::sample::Index>(), b in any::<u8>()) {
        let mut bytes = e.to_string().into_bytes();
        let i = at.index(bytes.len());
        bytes[i] = b;
        let _ = parse_bytes(&bytes);
        bytes.truncate(i);
        let _ = parse_bytes(&bytes);
    }

    #[test]
    fn duality_is_an_involution(e in valid_term()) {
        let d = dual(&e).unwrap();
        prop_assert!(validate(&d).valid, "{}", d);
        prop_assert_eq!(normalize(&dual(&d).unwrap()), normalize(&e));
    }

    #[test]
    fn duality_exchanges_properties(e in valid_term()) {
        let d = dual(&e).unwrap();
        prop_assert_eq!(is_compact(&e), is_discrete(&d));
        prop_assert_eq!(is_discrete(&e), is_compact(&d));
        let pe = predicate_vector(&e).unwrap();
        prop_assert_eq!(pe.torsion_free, densely_divisible(&d).unwrap());
        prop_assert_eq!(pe.densely_divisible, predicate_vector(&d).unwrap().torsion_free);
    }

    #[test]
    fn prime_exponent_is_a_nondense_prime(e in valid_term()) {
        let pv = predicate_vector(&e).unwrap();
        if let Some(p) = pv.exponent_p {
            prop_assert!(nondense_primes(&e).unwrap().contains(p));
        }
    }

    #[test]
    fn full_prime_status_on_simple_groups_has_a_witness(e in valid_term()) {
        // The implication only holds once the earlier conditions pass;
        // a product of two local fields at different primes is a counterexample otherwise.
        let pv = predicate_vector(&e).unwrap();
        if matches!(characteristically_simple(&e), Ok(v) if v.simple) && pv.p_status == PStatus::All {
            prop_assert!(pv.pp_all.any() || pv.connected);
        }
    }

    #[test]
    fn simplicity_is_invariant_under_duality(e in valid_term()) {
        let d = dual(&e).unwrap();
        match (characteristically_simple(&e), characteristically_simple(&d)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.simple, b.simple, "{} vs {}", e, d),
            (Err(Error::TrivialGroup), Err(Error::TrivialGroup)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn classification_is_exhaustive_and_stable(e in valid_term()) {
        match characteristically_simple(&e) {
            Ok(v) => {
                prop_assert_eq!(v.simple, v.canonical.is_some());
                prop_assert_eq!(v.simple, v.failed_condition.is_none());
                if let Some(c) = &v.canonical {
                    prop_assert!(c.is_well_formed());
                }
                prop_assert_eq!(characteristically_simple(&normalize(&e)).unwrap(), v);
            }
            Err(err) => {
                prop_assert!(matches!(err, Error::TrivialGroup));
                prop_assert!(normalize(&e).is_trivial());
            }
        }
    }

    #[test]
    fn classification_commutes_with_duality(e in valid_term()) {
        if let Ok(c) = canonical_form(&e) {
            let d = canonical_form(&dual(&e).unwrap()).unwrap();
            prop_assert!(iso_canonical(&d, &dual_canonical(&c)), "{} -> {} vs {}", e, d, dual_canonical(&c));
        }
    }

    #[test]
    fn scrambled_simple_terms_commute_with_duality(seed in any::<u64>()) {
        let (c, e) = random_simple_term(&mut trial_rng(seed, 0));
        prop_assert_eq!(canonical_form(&e).unwrap(), c.clone());
        let d = canonical_form(&dual(&e).unwrap()).unwrap();
        prop_assert!(iso_canonical(&d, &dual_canonical(&c)));
        prop_assert!(iso_canonical(&dual_canonical(&dual_canonical(&c)), &c));
        prop_assert!(iso_canonical(&canonical_form(&c.to_expr()).unwrap(), &c));
    }
}
