//! Decision procedure for topological characteristic simplicity and the
//! canonical five-family form.
//!
//! A nontrivial term is characteristically simple exactly when its predicate
//! vector satisfies five conditions:
//!
//! 1. prime exponent, or torsion-free;
//! 2. if torsion-free, `pA` is dense for every prime `p`;
//! 3. connected or totally disconnected;
//! 4. `P(A)` trivial or everything;
//! 5. if totally disconnected with `P(A) = A`, then `P_p(A) = A` for some `p`.
//!
//! The simple groups then fall into the families
//! `C_p^k + C_p^(k')`, `R^n`, `Q^(k)`, `Qhat^k` and `Q_p(k)`.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::predicates::{nondense_primes, predicate_vector, PStatus};
use crate::primes::is_prime;
use crate::terms::{ensure_valid, normalize, Cardinal, GroupExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CanonicalForm {
    /// `C_p^kappa + C_p^(kappa')` with `kappa' in {0, w}`; when `kappa' = w`
    /// any finite product part is absorbed into the sum, so `kappa in {0, w}`.
    ElemAbelian { p: u64, kappa: Cardinal, kappa_prime: Cardinal },
    Reals { n: u64 },
    RationalsSum { kappa: Cardinal },
    RationalsDualPower { kappa: Cardinal },
    QpLocal { p: u64, kappa: Cardinal },
}

impl CanonicalForm {
    /// Elementary abelian form from raw product and sum multiplicities, using
    /// `G^(k+n) x G^(k') = G^k x G^(k'+n)` to fix the parameter ranges.
    pub fn elem_abelian(p: u64, product: Cardinal, sum: Cardinal) -> CanonicalForm {
        let (kappa, kappa_prime) = match sum {
            Cardinal::Aleph0 => match product {
                Cardinal::Aleph0 => (Cardinal::Aleph0, Cardinal::Aleph0),
                Cardinal::Finite(_) => (Cardinal::ZERO, Cardinal::Aleph0),
            },
            Cardinal::Finite(_) => (product + sum, Cardinal::ZERO),
        };
        CanonicalForm::ElemAbelian { p, kappa, kappa_prime }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CanonicalForm::ElemAbelian { .. } => "ElemAbelian",
            CanonicalForm::Reals { .. } => "Reals",
            CanonicalForm::RationalsSum { .. } => "RationalsSum",
            CanonicalForm::RationalsDualPower { .. } => "RationalsDualPower",
            CanonicalForm::QpLocal { .. } => "QpLocal",
        }
    }

    /// Parameters within their ranges.
    pub fn is_well_formed(&self) -> bool {
        let positive = |k: &Cardinal| !k.is_zero();
        match self {
            CanonicalForm::ElemAbelian { p, kappa, kappa_prime } => {
                is_prime(*p)
                    && match kappa_prime {
                        Cardinal::Aleph0 => matches!(kappa, Cardinal::Aleph0 | Cardinal::Finite(0)),
                        Cardinal::Finite(0) => positive(kappa),
                        Cardinal::Finite(_) => false,
                    }
            }
            CanonicalForm::Reals { n } => *n >= 1,
            CanonicalForm::RationalsSum { kappa } | CanonicalForm::RationalsDualPower { kappa } => positive(kappa),
            CanonicalForm::QpLocal { p, kappa } => is_prime(*p) && positive(kappa),
        }
    }

    /// Whether the group is the monolith of some compactly generated group:
    /// false exactly for `Q^n` and `Qhat^n` with finite `n`.
    pub fn cg_realizable(&self) -> bool {
        !matches!(
            self,
            CanonicalForm::RationalsSum { kappa: Cardinal::Finite(_) }
                | CanonicalForm::RationalsDualPower { kappa: Cardinal::Finite(_) }
        )
    }

    /// A representative term, in normal form.
    pub fn to_expr(&self) -> GroupExpr {
        let e = match *self {
            CanonicalForm::ElemAbelian { p, kappa, kappa_prime } => GroupExpr::sum(vec![
                GroupExpr::power(GroupExpr::Cyc(p), kappa),
                GroupExpr::restricted_power(GroupExpr::Cyc(p), kappa_prime),
            ]),
            CanonicalForm::Reals { n } => GroupExpr::power(GroupExpr::R, Cardinal::Finite(n)),
            CanonicalForm::RationalsSum { kappa } => GroupExpr::restricted_power(GroupExpr::Q, kappa),
            CanonicalForm::RationalsDualPower { kappa } => GroupExpr::power(GroupExpr::QHat, kappa),
            CanonicalForm::QpLocal { p, kappa } => GroupExpr::LocalProd(p, kappa),
        };
        normalize(&e)
    }

    /// Family tag and parameters as a flat JSON object.
    pub fn to_json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("family".into(), json!(self.family()));
        match *self {
            CanonicalForm::ElemAbelian { p, kappa, kappa_prime } => {
                m.insert("p".into(), json!(p));
                m.insert("kappa".into(), kappa.to_json());
                m.insert("kappa_prime".into(), kappa_prime.to_json());
            }
            CanonicalForm::Reals { n } => {
                m.insert("n".into(), json!(n));
            }
            CanonicalForm::RationalsSum { kappa } | CanonicalForm::RationalsDualPower { kappa } => {
                m.insert("kappa".into(), kappa.to_json());
            }
            CanonicalForm::QpLocal { p, kappa } => {
                m.insert("p".into(), json!(p));
                m.insert("kappa".into(), kappa.to_json());
            }
        }
        m.insert("cg_realizable".into(), json!(self.cg_realizable()));
        m
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalForm::ElemAbelian { p, kappa, kappa_prime } => {
                write!(f, "ElemAbelian(p={p}, kappa={kappa}, kappa'={kappa_prime})")
            }
            CanonicalForm::Reals { n } => write!(f, "Reals(n={n})"),
            CanonicalForm::RationalsSum { kappa } => write!(f, "RationalsSum(kappa={kappa})"),
            CanonicalForm::RationalsDualPower { kappa } => write!(f, "RationalsDualPower(kappa={kappa})"),
            CanonicalForm::QpLocal { p, kappa } => write!(f, "QpLocal(p={p}, kappa={kappa})"),
        }
    }
}

/// Evidence for a failed condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// A prime `p` with `pA` not dense.
    Prime(u64),
    PStatus(PStatus),
    Detail(&'static str),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Prime(p) => json!(p),
            Witness::PStatus(s) => json!(format!("P={s:?}")),
            Witness::Detail(d) => json!(d),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Prime(p) => write!(f, "p={p}"),
            Witness::PStatus(s) => write!(f, "P={s:?}"),
            Witness::Detail(d) => f.write_str(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub canonical: Option<CanonicalForm>,
    /// Number of the first failed condition, 1 to 5.
    pub failed_condition: Option<u8>,
    pub witness: Option<Witness>,
}

impl SimplicityVerdict {
    fn fail(condition: u8, witness: Witness) -> SimplicityVerdict {
        SimplicityVerdict { simple: false, canonical: None, failed_condition: Some(condition), witness: Some(witness) }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("simple".into(), json!(self.simple));
        if let Some(c) = &self.canonical {
            m.extend(c.to_json());
        }
        if let Some(cond) = self.failed_condition {
            m.insert("failed_condition".into(), json!(cond));
        }
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.to_json());
        }
        Value::Object(m)
    }
}

impl fmt::Display for SimplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.canonical, self.failed_condition, &self.witness) {
            (Some(c), _, _) => write!(f, "{c}"),
            (None, Some(cond), Some(w)) => write!(f, "fail({cond}: {w})"),
            (None, Some(cond), None) => write!(f, "fail({cond})"),
            _ => f.write_str("fail"),
        }
    }
}

/// Decide characteristic simplicity of a valid nontrivial term.
pub fn characteristically_simple(expr: &GroupExpr) -> Result<SimplicityVerdict> {
    let v = predicate_vector(expr)?;
    if v.trivial {
        return Err(Error::TrivialGroup);
    }
    if v.exponent_p.is_none() && !v.torsion_free {
        return Ok(SimplicityVerdict::fail(1, Witness::Detail("torsion without prime exponent")));
    }
    if v.torsion_free {
        if let Some(p) = nondense_primes(expr)?.smallest() {
            return Ok(SimplicityVerdict::fail(2, Witness::Prime(p)));
        }
    }
    if !v.connected && !v.totally_disconnected {
        return Ok(SimplicityVerdict::fail(3, Witness::Detail("neither connected nor totally disconnected")));
    }
    if v.p_status == PStatus::Mixed {
        return Ok(SimplicityVerdict::fail(4, Witness::PStatus(PStatus::Mixed)));
    }
    if v.totally_disconnected && v.p_status == PStatus::All && !v.pp_all.any() {
        return Ok(SimplicityVerdict::fail(5, Witness::Detail("no prime p with P_p(A) = A")));
    }
    let canonical = extract(expr, &v)?;
    Ok(SimplicityVerdict { simple: true, canonical: Some(canonical), failed_condition: None, witness: None })
}

/// Canonical form of a characteristically simple term.
pub fn canonical_form(expr: &GroupExpr) -> Result<CanonicalForm> {
    let verdict = characteristically_simple(expr)?;
    match verdict.canonical {
        Some(c) => Ok(c),
        None => Err(Error::NotSimple(verdict.failed_condition.unwrap_or(0))),
    }
}

fn extract(expr: &GroupExpr, v: &crate::predicates::PredicateVector) -> Result<CanonicalForm> {
    let e = normalize(expr);
    if let Some(p) = v.exponent_p {
        let (product, sum) = elementary_split(&e);
        return Ok(CanonicalForm::elem_abelian(p, product, sum));
    }
    let count = |pred: &dyn Fn(&GroupExpr) -> Cardinal| multiplicity(&e, pred);
    let one_if = |want: GroupExpr| move |a: &GroupExpr| if *a == want { Cardinal::ONE } else { Cardinal::ZERO };
    Ok(match (v.connected, v.p_status) {
        (true, PStatus::Trivial) => match count(&one_if(GroupExpr::R)) {
            Cardinal::Finite(n) => CanonicalForm::Reals { n },
            Cardinal::Aleph0 => return Err(Error::InvalidTerm("infinite power of R".into())),
        },
        (true, _) => CanonicalForm::RationalsDualPower { kappa: count(&one_if(GroupExpr::QHat)) },
        (false, PStatus::Trivial) => CanonicalForm::RationalsSum { kappa: count(&one_if(GroupExpr::Q)) },
        (false, _) => {
            let p = v.pp_all.first_true().expect("condition 5 holds");
            let kappa = count(&|a: &GroupExpr| match a {
                GroupExpr::Qp(q) if *q == p => Cardinal::ONE,
                GroupExpr::LocalProd(q, k) if *q == p => *k,
                _ => Cardinal::ZERO,
            });
            CanonicalForm::QpLocal { p, kappa }
        }
    })
}

/// Number of copies of the atoms selected by `weight`; local direct powers
/// count with their rank.
fn multiplicity(e: &GroupExpr, weight: &dyn Fn(&GroupExpr) -> Cardinal) -> Cardinal {
    match e {
        GroupExpr::DirectSum(items) => items.iter().fold(Cardinal::ZERO, |acc, x| acc + multiplicity(x, weight)),
        GroupExpr::Power(b, k) | GroupExpr::RestrictedPower(b, k) => *k * multiplicity(b, weight),
        atom => weight(atom),
    }
}

/// (product multiplicity, sum multiplicity) of an elementary abelian term.
fn elementary_split(e: &GroupExpr) -> (Cardinal, Cardinal) {
    match e {
        GroupExpr::Cyc(_) => (Cardinal::ONE, Cardinal::ZERO),
        GroupExpr::DirectSum(items) => items.iter().map(elementary_split).fold((Cardinal::ZERO, Cardinal::ZERO), |a, b| (a.0 + b.0, a.1 + b.1)),
        GroupExpr::Power(b, k) => {
            let (a, s) = elementary_split(b);
            (*k * a, *k * s)
        }
        GroupExpr::RestrictedPower(b, k) => {
            let (a, s) = elementary_split(b);
            match k {
                Cardinal::Finite(_) => (*k * a, *k * s),
                Cardinal::Aleph0 => (Cardinal::ZERO, *k * (a + s)),
            }
        }
        _ => (Cardinal::ZERO, Cardinal::ZERO),
    }
}

/// Isomorphism of canonical forms: same family, same parameters.
pub fn iso_canonical(a: &CanonicalForm, b: &CanonicalForm) -> bool {
    a == b
}

/// Canonical form of the dual group.
pub fn dual_canonical(c: &CanonicalForm) -> CanonicalForm {
    match *c {
        // The dual of C^k + C^(k') is C^(k) + C^k'.
        CanonicalForm::ElemAbelian { p, kappa, kappa_prime } => CanonicalForm::elem_abelian(p, kappa_prime, kappa),
        CanonicalForm::Reals { n } => CanonicalForm::Reals { n },
        CanonicalForm::RationalsSum { kappa } => CanonicalForm::RationalsDualPower { kappa },
        CanonicalForm::RationalsDualPower { kappa } => CanonicalForm::RationalsSum { kappa },
        CanonicalForm::QpLocal { p, kappa } => CanonicalForm::QpLocal { p, kappa },
    }
}

/// Classify after validation, as one call.
pub fn classify(expr: &GroupExpr) -> Result<SimplicityVerdict> {
    ensure_valid(expr)?;
    characteristically_simple(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual;
    use crate::terms::parse_expr;
    use Cardinal::{Aleph0, Finite};

    fn verdict(s: &str) -> SimplicityVerdict {
        characteristically_simple(&parse_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn simplicity_examples() {
        let v = verdict("lp(Qp(3), w)");
        assert!(v.simple);
        assert_eq!(v.canonical, Some(CanonicalForm::QpLocal { p: 3, kappa: Aleph0 }));

        let v = verdict("Zp(5)");
        assert_eq!((v.simple, v.failed_condition, v.witness), (false, Some(2), Some(Witness::Prime(5))));

        let v = verdict("R + Qp(2)");
        assert_eq!(v.failed_condition, Some(3));
        assert!(v.canonical.is_none());
    }

    #[test]
    fn trivial_group_has_no_verdict() {
        assert_eq!(characteristically_simple(&GroupExpr::trivial()), Err(Error::TrivialGroup));
        assert_eq!(characteristically_simple(&parse_expr("prod(R, 0)").unwrap()), Err(Error::TrivialGroup));
    }

    #[test]
    fn canonical_examples() {
        let cf = |s: &str| canonical_form(&parse_expr(s).unwrap()).unwrap();
        assert_eq!(cf("R + R + R"), CanonicalForm::Reals { n: 3 });
        assert_eq!(
            cf("prod(C(2), w) + sum(C(2), w)"),
            CanonicalForm::ElemAbelian { p: 2, kappa: Aleph0, kappa_prime: Aleph0 }
        );
        assert_eq!(cf("lp(Qp(2), w) + Qp(2)"), CanonicalForm::QpLocal { p: 2, kappa: Aleph0 });
        assert_eq!(cf("Qp(2) + prod(Qp(2), 2)"), CanonicalForm::QpLocal { p: 2, kappa: Finite(3) });
        assert_eq!(cf("C(3) + sum(C(3), w)"), CanonicalForm::ElemAbelian { p: 3, kappa: Finite(0), kappa_prime: Aleph0 });
        assert_eq!(cf("C(3) + sum(C(3), 2)"), CanonicalForm::ElemAbelian { p: 3, kappa: Finite(3), kappa_prime: Finite(0) });
        assert_eq!(cf("prod(sum(C(5), w), 2)"), CanonicalForm::ElemAbelian { p: 5, kappa: Finite(0), kappa_prime: Aleph0 });
        assert!(canonical_form(&parse_expr("Z").unwrap()).is_err());
    }

    #[test]
    fn iso_examples() {
        assert!(iso_canonical(&CanonicalForm::Reals { n: 2 }, &CanonicalForm::Reals { n: 2 }));
        assert!(!iso_canonical(&CanonicalForm::Reals { n: 2 }, &CanonicalForm::Reals { n: 3 }));
        assert!(!iso_canonical(
            &CanonicalForm::QpLocal { p: 2, kappa: Aleph0 },
            &CanonicalForm::QpLocal { p: 3, kappa: Aleph0 }
        ));
    }

    #[test]
    fn dual_canonical_examples() {
        assert_eq!(
            dual_canonical(&CanonicalForm::RationalsSum { kappa: Aleph0 }),
            CanonicalForm::RationalsDualPower { kappa: Aleph0 }
        );
        assert_eq!(
            dual_canonical(&CanonicalForm::QpLocal { p: 5, kappa: Finite(2) }),
            CanonicalForm::QpLocal { p: 5, kappa: Finite(2) }
        );
        // C_3^w dualizes to C_3^(w) and back; checked against the term rewrite.
        let prod = CanonicalForm::ElemAbelian { p: 3, kappa: Aleph0, kappa_prime: Finite(0) };
        let sum = CanonicalForm::ElemAbelian { p: 3, kappa: Finite(0), kappa_prime: Aleph0 };
        assert_eq!(dual_canonical(&prod), sum);
        assert_eq!(dual_canonical(&sum), prod);
        assert_eq!(canonical_form(&dual(&prod.to_expr()).unwrap()).unwrap(), sum);
        let finite = CanonicalForm::ElemAbelian { p: 7, kappa: Finite(4), kappa_prime: Finite(0) };
        assert_eq!(dual_canonical(&finite), finite);
    }

    #[test]
    fn representatives_round_trip() {
        let forms = [
            CanonicalForm::ElemAbelian { p: 2, kappa: Finite(3), kappa_prime: Finite(0) },
            CanonicalForm::ElemAbelian { p: 2, kappa: Aleph0, kappa_prime: Aleph0 },
            CanonicalForm::ElemAbelian { p: 5, kappa: Finite(0), kappa_prime: Aleph0 },
            CanonicalForm::Reals { n: 4 },
            CanonicalForm::RationalsSum { kappa: Finite(1) },
            CanonicalForm::RationalsDualPower { kappa: Aleph0 },
            CanonicalForm::QpLocal { p: 7, kappa: Finite(2) },
        ];
        for c in forms {
            assert!(c.is_well_formed(), "{c}");
            assert_eq!(canonical_form(&c.to_expr()).unwrap(), c);
        }
        assert!(!CanonicalForm::ElemAbelian { p: 2, kappa: Finite(2), kappa_prime: Aleph0 }.is_well_formed());
    }

    #[test]
    fn cg_realizability_table() {
        assert!(!CanonicalForm::RationalsSum { kappa: Finite(2) }.cg_realizable());
        assert!(!CanonicalForm::RationalsDualPower { kappa: Finite(1) }.cg_realizable());
        assert!(CanonicalForm::RationalsSum { kappa: Aleph0 }.cg_realizable());
        assert!(CanonicalForm::Reals { n: 1 }.cg_realizable());
    }

    #[test]
    fn verdict_json() {
        let v = verdict("lp(Qp(2), w)");
        assert_eq!(v.to_json(), json!({"simple": true, "family": "QpLocal", "p": 2, "kappa": "w", "cg_realizable": true}));
        let v = verdict("Q + Q");
        assert_eq!(v.to_json(), json!({"simple": true, "family": "RationalsSum", "kappa": 2, "cg_realizable": false}));
        let v = verdict("Zp(5)");
        assert_eq!(v.to_json(), json!({"simple": false, "failed_condition": 2, "witness": 5}));
    }
}
