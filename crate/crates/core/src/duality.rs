//! Pontryagin duals by term rewriting.
//!
//! Atoms are dualized through a fixed table; constructors follow the usual
//! exchange rules: the dual of a direct sum is the direct sum of the duals,
//! full powers and restricted powers swap, and the local direct power of
//! `(Q_p, Z_p)` is self-dual because `Q_p` is self-dual with `Z_p^perp = Z_p`.

use crate::error::Result;
use crate::terms::{ensure_valid, normalize, GroupExpr};

/// Shape of a node, for the rule table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    R,
    Z,
    T,
    Q,
    QHat,
    Cyc,
    Prufer,
    Zp,
    Qp,
    DirectSum,
    Power,
    RestrictedPower,
    LocalProd,
}

/// One rewrite rule: nodes of shape `pattern` dualize to nodes of shape
/// `result` (parameters carried over unchanged).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualRule {
    pub pattern: Shape,
    pub result: Shape,
}

const fn rule(pattern: Shape, result: Shape) -> DualRule {
    DualRule { pattern, result }
}

/// The complete rule table.
pub const RULES: [DualRule; 13] = [
    rule(Shape::R, Shape::R),
    rule(Shape::Z, Shape::T),
    rule(Shape::T, Shape::Z),
    rule(Shape::Q, Shape::QHat),
    rule(Shape::QHat, Shape::Q),
    rule(Shape::Cyc, Shape::Cyc),
    rule(Shape::Zp, Shape::Prufer),
    rule(Shape::Prufer, Shape::Zp),
    rule(Shape::Qp, Shape::Qp),
    rule(Shape::DirectSum, Shape::DirectSum),
    rule(Shape::Power, Shape::RestrictedPower),
    rule(Shape::RestrictedPower, Shape::Power),
    rule(Shape::LocalProd, Shape::LocalProd),
];

pub fn shape_of(expr: &GroupExpr) -> Shape {
    match expr {
        GroupExpr::R => Shape::R,
        GroupExpr::Z => Shape::Z,
        GroupExpr::T => Shape::T,
        GroupExpr::Q => Shape::Q,
        GroupExpr::QHat => Shape::QHat,
        GroupExpr::Cyc(_) => Shape::Cyc,
        GroupExpr::Prufer(_) => Shape::Prufer,
        GroupExpr::Zp(_) => Shape::Zp,
        GroupExpr::Qp(_) => Shape::Qp,
        GroupExpr::DirectSum(_) => Shape::DirectSum,
        GroupExpr::Power(..) => Shape::Power,
        GroupExpr::RestrictedPower(..) => Shape::RestrictedPower,
        GroupExpr::LocalProd(..) => Shape::LocalProd,
    }
}

pub fn rule_for(shape: Shape) -> DualRule {
    *RULES.iter().find(|r| r.pattern == shape).expect("every shape has a rule")
}

fn rewrite(expr: &GroupExpr) -> GroupExpr {
    use GroupExpr::*;
    let target = rule_for(shape_of(expr)).result;
    match (expr, target) {
        (Cyc(n), _) => Cyc(*n),
        (Zp(p) | Prufer(p) | Qp(p), Shape::Prufer) => Prufer(*p),
        (Zp(p) | Prufer(p) | Qp(p), Shape::Zp) => Zp(*p),
        (Qp(p), _) => Qp(*p),
        (DirectSum(items), _) => DirectSum(items.iter().map(rewrite).collect()),
        (Power(b, k) | RestrictedPower(b, k), Shape::RestrictedPower) => GroupExpr::restricted_power(rewrite(b), *k),
        (Power(b, k) | RestrictedPower(b, k), _) => GroupExpr::power(rewrite(b), *k),
        (LocalProd(p, k), _) => LocalProd(*p, *k),
        (_, Shape::R) => R,
        (_, Shape::Z) => Z,
        (_, Shape::T) => T,
        (_, Shape::Q) => Q,
        (_, Shape::QHat) => QHat,
        (other, _) => unreachable!("no dual rule for {other}"),
    }
}

/// The dual of a valid term, in normal form.
pub fn dual(expr: &GroupExpr) -> Result<GroupExpr> {
    ensure_valid(expr)?;
    Ok(normalize(&rewrite(&normalize(expr))))
}

/// Whether dualizing twice gives back the normal form of `expr`.
pub fn check_involution(expr: &GroupExpr) -> Result<bool> {
    let twice = dual(&dual(expr)?)?;
    Ok(twice == normalize(expr))
}
