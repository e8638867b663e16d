#![allow(dead_code)]

use lcagroups::terms::{validate, Cardinal, GroupExpr};
use proptest::prelude::*;

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

pub fn cardinal() -> impl Strategy<Value = Cardinal> {
    prop_oneof![4 => (0u64..4).prop_map(Cardinal::Finite), 1 => Just(Cardinal::Aleph0)]
}

pub fn atom() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        Just(GroupExpr::R),
        Just(GroupExpr::Z),
        Just(GroupExpr::T),
        Just(GroupExpr::Q),
        Just(GroupExpr::QHat),
        (2u64..=12).prop_map(GroupExpr::Cyc),
        prime().prop_map(GroupExpr::Prufer),
        prime().prop_map(GroupExpr::Zp),
        prime().prop_map(GroupExpr::Qp),
    ]
}

/// Terms of the full grammar, valid or not.
pub fn any_term() -> impl Strategy<Value = GroupExpr> {
    atom().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(GroupExpr::DirectSum),
            (inner.clone(), cardinal()).prop_map(|(b, k)| GroupExpr::Power(Box::new(b), k)),
            (inner, cardinal()).prop_map(|(b, k)| GroupExpr::RestrictedPower(Box::new(b), k)),
            (prime(), cardinal()).prop_map(|(p, k)| GroupExpr::LocalProd(p, k)),
        ]
    })
}

/// Make a term valid by replacing offending infinite indices, bottom-up.
pub fn repair(e: GroupExpr) -> GroupExpr {
    let e = match e {
        GroupExpr::DirectSum(items) => GroupExpr::DirectSum(items.into_iter().map(repair).collect()),
        GroupExpr::Power(b, k) => GroupExpr::Power(Box::new(repair(*b)), k),
        GroupExpr::RestrictedPower(b, k) => GroupExpr::RestrictedPower(Box::new(repair(*b)), k),
        other => other,
    };
    if validate(&e).valid {
        return e;
    }
    match e {
        GroupExpr::Power(b, _) => GroupExpr::Power(b, Cardinal::Finite(2)),
        GroupExpr::RestrictedPower(b, _) => GroupExpr::RestrictedPower(b, Cardinal::Finite(2)),
        other => other,
    }
}

pub fn valid_term() -> impl Strategy<Value = GroupExpr> {
    any_term().prop_map(repair)
}

pub mod zp_oracle;
