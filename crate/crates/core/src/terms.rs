//! Group-expression terms: grammar, parser, printer, syntactic normal form and
//! validity rules.
//!
//! The concrete syntax is
//!
//! ```text
//! E ::= R | Z | T | Q | Qhat | C(n) | Prufer(p) | Zp(p) | Qp(p)
//!     | prod(E, k) | sum(E, k) | lp(Qp(p), k) | E + E | 0
//! k ::= <non-negative integer> | w
//! ```
//!
//! `prod` is the full product with the product topology, `sum` the restricted
//! power (direct sum), `lp` the local direct power of `Q_p` over `Z_p`, and
//! `w` stands for aleph-zero. `0` is the trivial group.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::predicates;
use crate::primes::is_prime;

/// An index cardinal: a finite number or aleph-zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(u64),
    Aleph0,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);
    pub const ONE: Cardinal = Cardinal::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_zero(self) -> bool {
        self == Cardinal::ZERO
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Aleph0 => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Cardinal::Finite(n) => json!(n),
            Cardinal::Aleph0 => json!("w"),
        }
    }

    pub fn from_json(v: &Value) -> Result<Cardinal> {
        match v {
            Value::String(s) if s == "w" => Ok(Cardinal::Aleph0),
            Value::Number(n) => n
                .as_u64()
                .map(Cardinal::Finite)
                .ok_or_else(|| Error::Malformed(format!("bad cardinal {n}"))),
            other => Err(Error::Malformed(format!("bad cardinal {other}"))),
        }
    }
}

// Finite parts saturate rather than wrap; multiplicities in practice are tiny.
impl Add for Cardinal {
    type Output = Cardinal;
    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a.saturating_add(b)),
            _ => Cardinal::Aleph0,
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;
    fn mul(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a.saturating_mul(b)),
            (Cardinal::Finite(0), _) | (_, Cardinal::Finite(0)) => Cardinal::ZERO,
            _ => Cardinal::Aleph0,
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => f.write_str("w"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Cardinal::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// A constructor term denoting an abelian locally compact group.
///
/// The variant order doubles as the fixed total order used to sort direct
/// summands in the normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupExpr {
    R,
    Z,
    /// The circle group.
    T,
    /// The rationals, discrete.
    Q,
    /// The solenoid, dual of the discrete rationals.
    QHat,
    /// Finite cyclic group of order `n >= 2`.
    Cyc(u64),
    Prufer(u64),
    Zp(u64),
    Qp(u64),
    /// Full product with the product topology.
    Power(Box<GroupExpr>, Cardinal),
    /// Direct sum of copies (discrete on coordinates).
    RestrictedPower(Box<GroupExpr>, Cardinal),
    /// Local direct power of the pair `(Q_p, Z_p)`.
    LocalProd(u64, Cardinal),
    /// Finite direct sum; the empty sum is the trivial group.
    DirectSum(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn trivial() -> GroupExpr {
        GroupExpr::DirectSum(Vec::new())
    }

    pub fn power(base: GroupExpr, k: Cardinal) -> GroupExpr {
        GroupExpr::Power(Box::new(base), k)
    }

    pub fn restricted_power(base: GroupExpr, k: Cardinal) -> GroupExpr {
        GroupExpr::RestrictedPower(Box::new(base), k)
    }

    pub fn sum(items: Vec<GroupExpr>) -> GroupExpr {
        GroupExpr::DirectSum(items)
    }

    pub fn is_atom(&self) -> bool {
        !matches!(
            self,
            GroupExpr::Power(..)
                | GroupExpr::RestrictedPower(..)
                | GroupExpr::LocalProd(..)
                | GroupExpr::DirectSum(_)
        )
    }

    /// Structural triviality: the term denotes `{0}`.
    pub fn is_trivial(&self) -> bool {
        match self {
            GroupExpr::DirectSum(items) => items.iter().all(GroupExpr::is_trivial),
            GroupExpr::Power(b, k) | GroupExpr::RestrictedPower(b, k) => k.is_zero() || b.is_trivial(),
            GroupExpr::LocalProd(_, k) => k.is_zero(),
            _ => false,
        }
    }

    /// Short name of the node shape, as used in the JSON encoding.
    pub fn node_name(&self) -> &'static str {
        match self {
            GroupExpr::R => "R",
            GroupExpr::Z => "Z",
            GroupExpr::T => "T",
            GroupExpr::Q => "Q",
            GroupExpr::QHat => "Qhat",
            GroupExpr::Cyc(_) => "C",
            GroupExpr::Prufer(_) => "Prufer",
            GroupExpr::Zp(_) => "Zp",
            GroupExpr::Qp(_) => "Qp",
            GroupExpr::Power(..) => "prod",
            GroupExpr::RestrictedPower(..) => "sum",
            GroupExpr::LocalProd(..) => "lp",
            GroupExpr::DirectSum(_) => "oplus",
        }
    }

    pub fn to_json(&self) -> Value {
        let args = match self {
            GroupExpr::R | GroupExpr::Z | GroupExpr::T | GroupExpr::Q | GroupExpr::QHat => vec![],
            GroupExpr::Cyc(n) | GroupExpr::Prufer(n) | GroupExpr::Zp(n) | GroupExpr::Qp(n) => {
                vec![json!(n)]
            }
            GroupExpr::Power(b, k) | GroupExpr::RestrictedPower(b, k) => vec![b.to_json(), k.to_json()],
            GroupExpr::LocalProd(p, k) => vec![GroupExpr::Qp(*p).to_json(), k.to_json()],
            GroupExpr::DirectSum(items) => items.iter().map(GroupExpr::to_json).collect(),
        };
        json!({ "node": self.node_name(), "args": args })
    }

    pub fn from_json(v: &Value) -> Result<GroupExpr> {
        let bad = |what: &str| Error::Malformed(format!("{what} in {v}"));
        let node = v.get("node").and_then(Value::as_str).ok_or_else(|| bad("missing node"))?;
        let args = v.get("args").and_then(Value::as_array).ok_or_else(|| bad("missing args"))?;
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(bad("wrong arity"))
            }
        };
        let int = |i: usize| args[i].as_u64().ok_or_else(|| bad("expected integer"));
        Ok(match node {
            "R" | "Z" | "T" | "Q" | "Qhat" => {
                arity(0)?;
                match node {
                    "R" => GroupExpr::R,
                    "Z" => GroupExpr::Z,
                    "T" => GroupExpr::T,
                    "Q" => GroupExpr::Q,
                    _ => GroupExpr::QHat,
                }
            }
            "C" | "Prufer" | "Zp" | "Qp" => {
                arity(1)?;
                let n = int(0)?;
                match node {
                    "C" => GroupExpr::Cyc(n),
                    "Prufer" => GroupExpr::Prufer(n),
                    "Zp" => GroupExpr::Zp(n),
                    _ => GroupExpr::Qp(n),
                }
            }
            "prod" | "sum" => {
                arity(2)?;
                let base = GroupExpr::from_json(&args[0])?;
                let k = Cardinal::from_json(&args[1])?;
                if node == "prod" {
                    GroupExpr::power(base, k)
                } else {
                    GroupExpr::restricted_power(base, k)
                }
            }
            "lp" => {
                arity(2)?;
                match GroupExpr::from_json(&args[0])? {
                    GroupExpr::Qp(p) => GroupExpr::LocalProd(p, Cardinal::from_json(&args[1])?),
                    _ => return Err(bad("lp expects the pair over Qp")),
                }
            }
            "oplus" => GroupExpr::DirectSum(args.iter().map(GroupExpr::from_json).collect::<Result<_>>()?),
            _ => return Err(bad("unknown node")),
        })
    }
}

impl Serialize for GroupExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        GroupExpr::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::R => f.write_str("R"),
            GroupExpr::Z => f.write_str("Z"),
            GroupExpr::T => f.write_str("T"),
            GroupExpr::Q => f.write_str("Q"),
            GroupExpr::QHat => f.write_str("Qhat"),
            GroupExpr::Cyc(n) => write!(f, "C({n})"),
            GroupExpr::Prufer(p) => write!(f, "Prufer({p})"),
            GroupExpr::Zp(p) => write!(f, "Zp({p})"),
            GroupExpr::Qp(p) => write!(f, "Qp({p})"),
            GroupExpr::Power(b, k) => write!(f, "prod({b}, {k})"),
            GroupExpr::RestrictedPower(b, k) => write!(f, "sum({b}, {k})"),
            GroupExpr::LocalProd(p, k) => write!(f, "lp(Qp({p}), {k})"),
            GroupExpr::DirectSum(items) if items.is_empty() => f.write_str("0"),
            GroupExpr::DirectSum(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{item}")?;
                }
                Ok(())
            }
        }
    }
}

/// Render a term in the concrete syntax accepted by [`parse_expr`].
pub fn render(expr: &GroupExpr) -> String {
    expr.to_string()
}

/// Syntactic normal form: finite local powers expanded, finite restricted
/// powers written as full powers, powers of exponent 0 or 1 removed, direct
/// sums flattened, stripped of trivial summands and sorted.
///
/// This is a normal form for the syntax only, not for isomorphism.
pub fn normalize(expr: &GroupExpr) -> GroupExpr {
    use GroupExpr::*;
    match expr {
        Power(b, k) | RestrictedPower(b, k) => {
            let base = normalize(b);
            if k.is_zero() || base.is_trivial() {
                return GroupExpr::trivial();
            }
            match k {
                Cardinal::Finite(1) => base,
                Cardinal::Finite(_) => GroupExpr::power(base, *k),
                Cardinal::Aleph0 if matches!(expr, Power(..)) => GroupExpr::power(base, *k),
                Cardinal::Aleph0 => GroupExpr::restricted_power(base, *k),
            }
        }
        LocalProd(p, k) => match k {
            Cardinal::Finite(0) => GroupExpr::trivial(),
            Cardinal::Finite(1) => Qp(*p),
            Cardinal::Finite(_) => GroupExpr::power(Qp(*p), *k),
            Cardinal::Aleph0 => LocalProd(*p, *k),
        },
        DirectSum(items) => {
            let mut flat = Vec::new();
            for item in items {
                match normalize(item) {
                    DirectSum(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.sort();
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                DirectSum(flat)
            }
        }
        atom => atom.clone(),
    }
}

/// One violated side condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    pub rule: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Check every side condition of the term: atom arguments, and the local
/// compactness rules for infinite powers.
pub fn validate(expr: &GroupExpr) -> ValidationReport {
    let mut violations = Vec::new();
    validate_at(expr, "$", &mut violations);
    ValidationReport { valid: violations.is_empty(), violations }
}

fn validate_at(expr: &GroupExpr, path: &str, out: &mut Vec<Violation>) {
    let mut push = |rule: &'static str, message: String| {
        out.push(Violation { path: path.to_string(), rule, message });
    };
    match expr {
        GroupExpr::Cyc(n) if *n < 2 => push("cyclic-order", format!("C({n}) needs order at least 2")),
        GroupExpr::Prufer(p) | GroupExpr::Zp(p) | GroupExpr::Qp(p) | GroupExpr::LocalProd(p, _) if !is_prime(*p) => {
            push("prime-argument", format!("{p} is not prime"))
        }
        _ => {}
    }
    match expr {
        GroupExpr::Power(b, k) => {
            if *k == Cardinal::Aleph0 && !predicates::is_compact(b) {
                push("infinite-power-noncompact", "infinite full power of non-compact base".into());
            }
            validate_at(b, &format!("{path}.base"), out);
        }
        GroupExpr::RestrictedPower(b, k) => {
            if *k == Cardinal::Aleph0 && !predicates::is_discrete(b) {
                push("infinite-restricted-power-nondiscrete", "infinite restricted power of non-discrete base".into());
            }
            validate_at(b, &format!("{path}.base"), out);
        }
        GroupExpr::DirectSum(items) => {
            for (i, item) in items.iter().enumerate() {
                validate_at(item, &format!("{path}.{i}"), out);
            }
        }
        _ => {}
    }
}

/// Validate and return an error listing the violations when the term is
/// invalid.
pub fn ensure_valid(expr: &GroupExpr) -> Result<()> {
    let report = validate(expr);
    if report.valid {
        Ok(())
    } else {
        let msg = report
            .violations
            .iter()
            .map(|v| format!("{} at {}: {}", v.rule, v.path, v.message))
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::InvalidTerm(msg))
    }
}

const MAX_DEPTH: usize = 200;

/// Parse the concrete syntax. `+` is left-associative and flattened into a
/// single [`GroupExpr::DirectSum`]; no other normalization is applied.
pub fn parse_expr(text: &str) -> Result<GroupExpr> {
    parse_bytes(text.as_bytes())
}

/// Parse arbitrary bytes; non-ASCII input yields a positioned syntax error.
pub fn parse_bytes(input: &[u8]) -> Result<GroupExpr> {
    let mut parser = Parser { input, pos: 0, depth: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < input.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        let mut items = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            items.push(self.term()?);
        }
        self.depth -= 1;
        Ok(if items.len() == 1 { items.pop().unwrap() } else { GroupExpr::DirectSum(items) })
    }

    fn ident(&mut self) -> Result<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a group expression"));
        }
        // ASCII alphanumerics are valid UTF-8.
        Ok((start, std::str::from_utf8(&self.input[start..self.pos]).unwrap()))
    }

    fn number(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        text.parse::<u64>()
            .map(|n| (start, n))
            .map_err(|_| Error::Syntax { offset: start, message: "number out of range".into() })
    }

    fn prime(&mut self) -> Result<u64> {
        let (at, p) = self.number()?;
        if is_prime(p) {
            Ok(p)
        } else {
            Err(Error::NotPrime { offset: at, value: p })
        }
    }

    fn cardinal(&mut self) -> Result<Cardinal> {
        if self.peek() == Some(b'w') {
            self.pos += 1;
            return Ok(Cardinal::Aleph0);
        }
        self.number().map(|(_, n)| Cardinal::Finite(n))
    }

    fn term(&mut self) -> Result<GroupExpr> {
        let (start, name) = self.ident()?;
        let simple = match name {
            "R" => Some(GroupExpr::R),
            "Z" => Some(GroupExpr::Z),
            "T" => Some(GroupExpr::T),
            "Q" => Some(GroupExpr::Q),
            "Qhat" => Some(GroupExpr::QHat),
            "0" => Some(GroupExpr::trivial()),
            _ => None,
        };
        if let Some(atom) = simple {
            return Ok(atom);
        }
        let name = name.to_string();
        match name.as_str() {
            "C" => {
                self.expect(b'(')?;
                let (at, n) = self.number()?;
                self.expect(b')')?;
                if n < 2 {
                    return Err(Error::CyclicOrder { offset: at, value: n });
                }
                Ok(GroupExpr::Cyc(n))
            }
            "Prufer" | "Zp" | "Qp" => {
                self.expect(b'(')?;
                let p = self.prime()?;
                self.expect(b')')?;
                Ok(match name.as_str() {
                    "Prufer" => GroupExpr::Prufer(p),
                    "Zp" => GroupExpr::Zp(p),
                    _ => GroupExpr::Qp(p),
                })
            }
            "prod" | "sum" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                let k = self.cardinal()?;
                self.expect(b')')?;
                Ok(if name == "prod" {
                    GroupExpr::power(base, k)
                } else {
                    GroupExpr::restricted_power(base, k)
                })
            }
            "lp" => {
                self.expect(b'(')?;
                let (at, inner) = self.ident()?;
                if inner != "Qp" {
                    return Err(Error::Syntax { offset: at, message: "lp is only defined over Qp(p)".into() });
                }
                self.expect(b'(')?;
                let p = self.prime()?;
                self.expect(b')')?;
                self.expect(b',')?;
                let k = self.cardinal()?;
                self.expect(b')')?;
                Ok(GroupExpr::LocalProd(p, k))
            }
            _ => Err(Error::Syntax { offset: start, message: format!("unknown constructor '{name}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::predicate_vector;
    use GroupExpr::*;

    fn p(s: &str) -> GroupExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn parses_the_laurent_field_term() {
        assert_eq!(
            p("prod(C(3), w) + sum(C(3), w)"),
            DirectSum(vec![
                GroupExpr::power(Cyc(3), Cardinal::Aleph0),
                GroupExpr::restricted_power(Cyc(3), Cardinal::Aleph0),
            ])
        );
        assert_eq!(p("R"), R);
    }

    #[test]
    fn finite_local_product_normalizes_to_power() {
        let lp = p("lp(Qp(2), 4)");
        assert_eq!(lp, LocalProd(2, Cardinal::Finite(4)));
        let pw = GroupExpr::power(Qp(2), Cardinal::Finite(4));
        assert_eq!(normalize(&lp), pw);
        // Independent check: the two spellings carry the same predicates.
        assert_eq!(predicate_vector(&lp).unwrap(), predicate_vector(&pw).unwrap());
    }

    #[test]
    fn plus_is_flattened_left_to_right() {
        assert_eq!(p("R + Z + T"), DirectSum(vec![R, Z, T]));
        assert_eq!(p("prod(R + Q, 2) + T"), DirectSum(vec![GroupExpr::power(DirectSum(vec![R, Q]), Cardinal::Finite(2)), T]));
    }

    #[test]
    fn parse_errors_are_positioned() {
        assert_eq!(parse_expr("Zp(4)"), Err(Error::NotPrime { offset: 3, value: 4 }));
        assert_eq!(parse_expr("C(1)"), Err(Error::CyclicOrder { offset: 2, value: 1 }));
        assert!(matches!(parse_expr("R +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expr("Foo"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_expr("lp(Zp(2), w)"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expr("R R"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("C(99999999999999999999999)"), Err(Error::Syntax { offset: 2, .. })));
        let deep = "prod(".repeat(1000);
        assert!(matches!(parse_expr(&deep), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&DirectSum(vec![R, R])), "R + R");
        assert_eq!(render(&LocalProd(5, Cardinal::Aleph0)), "lp(Qp(5), w)");
        assert_eq!(render(&GroupExpr::power(Cyc(3), Cardinal::Finite(2))), "prod(C(3), 2)");
        assert_eq!(render(&GroupExpr::trivial()), "0");
    }

    #[test]
    fn validation_examples() {
        let r = validate(&GroupExpr::power(Q, Cardinal::Aleph0));
        assert!(!r.valid);
        assert_eq!(r.violations[0].message, "infinite full power of non-compact base");
        assert_eq!(r.violations[0].path, "$");

        let r = validate(&GroupExpr::restricted_power(Zp(2), Cardinal::Aleph0));
        assert!(!r.valid);
        assert_eq!(r.violations[0].message, "infinite restricted power of non-discrete base");

        assert!(validate(&GroupExpr::power(QHat, Cardinal::Aleph0)).valid);
        assert!(validate(&GroupExpr::restricted_power(Zp(2), Cardinal::Finite(3))).valid);
    }

    #[test]
    fn validation_reports_nested_paths() {
        let e = DirectSum(vec![R, GroupExpr::power(DirectSum(vec![T, Cyc(1)]), Cardinal::Finite(2)), Qp(4)]);
        let r = validate(&e);
        let paths: Vec<_> = r.violations.iter().map(|v| (v.path.as_str(), v.rule)).collect();
        assert_eq!(paths, vec![("$.1.base.1", "cyclic-order"), ("$.2", "prime-argument")]);
    }

    #[test]
    fn normal_form_rules() {
        assert_eq!(normalize(&p("prod(R, 0)")), GroupExpr::trivial());
        assert_eq!(normalize(&p("sum(Q, 1)")), Q);
        assert_eq!(normalize(&p("sum(Q, 3)")), GroupExpr::power(Q, Cardinal::Finite(3)));
        assert_eq!(normalize(&p("Z + prod(T, 0) + R")), DirectSum(vec![R, Z]));
        assert_eq!(normalize(&p("lp(Qp(3), 1)")), Qp(3));
        assert_eq!(normalize(&p("lp(Qp(3), 0) + 0")), GroupExpr::trivial());
        assert_eq!(render(&normalize(&p("0"))), "0");
    }

    #[test]
    fn json_shape() {
        let e = p("lp(Qp(2), w) + C(4)");
        let v = e.to_json();
        assert_eq!(
            v,
            json!({"node": "oplus", "args": [
                {"node": "lp", "args": [{"node": "Qp", "args": [2]}, "w"]},
                {"node": "C", "args": [4]}
            ]})
        );
        assert_eq!(GroupExpr::from_json(&v).unwrap(), e);
        assert!(GroupExpr::from_json(&json!({"node": "C", "args": []})).is_err());
    }

    #[test]
    fn cardinal_arithmetic() {
        assert_eq!(Cardinal::Aleph0 + Cardinal::Finite(3), Cardinal::Aleph0);
        assert_eq!(Cardinal::Finite(2) + Cardinal::Finite(3), Cardinal::Finite(5));
        assert_eq!(Cardinal::Aleph0 * Cardinal::ZERO, Cardinal::ZERO);
        assert_eq!(Cardinal::Aleph0 * Cardinal::Finite(2), Cardinal::Aleph0);
    }
}
