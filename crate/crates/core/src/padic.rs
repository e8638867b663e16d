//! Fixed-precision arithmetic in `Q_p`, and the adele ring with its
//! character into the circle.
//!
//! A nonzero p-adic number is `p^v * u` with `u` a unit known modulo `p^M`
//! (relative precision `M`). A zero carries the absolute precision to which
//! it is known, or none for an exact zero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::primes::{is_prime, prime_factors};

pub const DEFAULT_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PAdicValue {
    /// Zero, known modulo `p^abs_prec` (exact when `None`).
    Zero { abs_prec: Option<i64> },
    Nonzero { valuation: i64, unit: BigUint, prec: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdic {
    pub p: u64,
    pub value: PAdicValue,
}

fn pow_p(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

fn pow_p_int(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// Largest `k` with `p^k | n` together with `n / p^k`; `n` nonzero.
fn split_p(p: u64, n: &BigInt) -> (i64, BigInt) {
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&bp);
        if !r.is_zero() {
            return (k, n);
        }
        n = q;
        k += 1;
    }
}

/// Inverse of a unit modulo `p^e`.
fn inv_mod(u: &BigUint, p: u64, e: u32) -> BigUint {
    let m = pow_p(p, e);
    if m.is_one() {
        return BigUint::zero();
    }
    u.modinv(&m).expect("unit is invertible")
}

fn to_unsigned_mod(n: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    n.mod_floor(&m).to_biguint().expect("non-negative")
}

impl PAdic {
    pub fn zero(p: u64) -> PAdic {
        PAdic { p, value: PAdicValue::Zero { abs_prec: None } }
    }

    /// `p^valuation * unit` with the unit reduced modulo `p^prec`.
    pub fn new(p: u64, valuation: i64, unit: BigUint, prec: u32) -> Result<PAdic> {
        check_prime(p)?;
        if prec == 0 {
            return Err(Error::Precision("relative precision must be positive".into()));
        }
        let unit = unit % pow_p(p, prec);
        if (&unit % p).is_zero() {
            return Err(Error::Malformed(format!("unit {unit} is divisible by {p}")));
        }
        Ok(PAdic { p, value: PAdicValue::Nonzero { valuation, unit, prec } })
    }

    /// Embed a rational with relative precision `prec`.
    pub fn from_rational(p: u64, r: &BigRational, prec: u32) -> Result<PAdic> {
        check_prime(p)?;
        if r.is_zero() {
            return Ok(PAdic::zero(p));
        }
        let (a, num) = split_p(p, r.numer());
        let (b, den) = split_p(p, r.denom());
        let m = pow_p(p, prec);
        let num = to_unsigned_mod(&num, &m);
        let den = to_unsigned_mod(&den, &m);
        let unit = (num * inv_mod(&den, p, prec)) % &m;
        PAdic::new(p, a - b, unit, prec)
    }

    pub fn from_int(p: u64, n: i64, prec: u32) -> Result<PAdic> {
        PAdic::from_rational(p, &BigRational::from_integer(BigInt::from(n)), prec)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.value, PAdicValue::Zero { .. })
    }

    /// Valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.value {
            PAdicValue::Zero { .. } => None,
            PAdicValue::Nonzero { valuation, .. } => Some(*valuation),
        }
    }

    /// Number of known unit digits; `None` for zero.
    pub fn relative_precision(&self) -> Option<u32> {
        match &self.value {
            PAdicValue::Zero { .. } => None,
            PAdicValue::Nonzero { prec, .. } => Some(*prec),
        }
    }

    /// Exponent `N` such that the value is known modulo `p^N`.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.value {
            PAdicValue::Zero { abs_prec } => *abs_prec,
            PAdicValue::Nonzero { valuation, prec, .. } => Some(valuation + *prec as i64),
        }
    }

    fn same_prime(&self, other: &PAdic) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// The stored representative `u * p^v` as an exact rational.
    pub fn to_rational(&self) -> BigRational {
        match &self.value {
            PAdicValue::Zero { .. } => BigRational::zero(),
            PAdicValue::Nonzero { valuation, unit, .. } => {
                let u = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, unit.clone()));
                u * p_power_rational(self.p, *valuation)
            }
        }
    }

    /// Build a value from an integer representative `n * p^shift` known
    /// modulo `p^abs`.
    fn from_scaled(p: u64, n: BigInt, shift: i64, abs: Option<i64>) -> PAdic {
        if n.is_zero() {
            return PAdic { p, value: PAdicValue::Zero { abs_prec: abs } };
        }
        let (k, rest) = split_p(p, &n);
        let valuation = shift + k;
        match abs {
            Some(a) if a <= valuation => PAdic { p, value: PAdicValue::Zero { abs_prec: Some(a) } },
            Some(a) => {
                let prec = (a - valuation) as u32;
                let m = pow_p(p, prec);
                PAdic { p, value: PAdicValue::Nonzero { valuation, unit: to_unsigned_mod(&rest, &m), prec } }
            }
            None => {
                // Exact integer data only arises from exact zeros, which never
                // reach here; keep the default precision.
                let m = pow_p(p, DEFAULT_PRECISION);
                PAdic {
                    p,
                    value: PAdicValue::Nonzero { valuation, unit: to_unsigned_mod(&rest, &m), prec: DEFAULT_PRECISION },
                }
            }
        }
    }

    pub fn add(&self, other: &PAdic) -> Result<PAdic> {
        self.same_prime(other)?;
        let abs = match (self.abs_precision(), other.abs_precision()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let (va, vb) = match (&self.value, &other.value) {
            (PAdicValue::Zero { .. }, _) => return Ok(other.with_abs(abs)),
            (_, PAdicValue::Zero { .. }) => return Ok(self.with_abs(abs)),
            (PAdicValue::Nonzero { valuation: a, .. }, PAdicValue::Nonzero { valuation: b, .. }) => (*a, *b),
        };
        let m = va.min(vb);
        let lift = |x: &PAdic, v: i64| -> BigInt {
            match &x.value {
                PAdicValue::Nonzero { unit, .. } => {
                    BigInt::from_biguint(Sign::Plus, unit.clone()) * pow_p_int(x.p, (v - m) as u32)
                }
                PAdicValue::Zero { .. } => BigInt::zero(),
            }
        };
        let n = lift(self, va) + lift(other, vb);
        Ok(PAdic::from_scaled(self.p, n, m, abs))
    }

    fn with_abs(&self, abs: Option<i64>) -> PAdic {
        match &self.value {
            PAdicValue::Zero { .. } => PAdic { p: self.p, value: PAdicValue::Zero { abs_prec: abs } },
            PAdicValue::Nonzero { valuation, unit, .. } => {
                let n = BigInt::from_biguint(Sign::Plus, unit.clone());
                PAdic::from_scaled(self.p, n, *valuation, abs)
            }
        }
    }

    pub fn neg(&self) -> PAdic {
        match &self.value {
            PAdicValue::Zero { .. } => self.clone(),
            PAdicValue::Nonzero { valuation, unit, prec } => {
                let m = pow_p(self.p, *prec);
                PAdic { p: self.p, value: PAdicValue::Nonzero { valuation: *valuation, unit: &m - unit, prec: *prec } }
            }
        }
    }

    pub fn sub(&self, other: &PAdic) -> Result<PAdic> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdic) -> Result<PAdic> {
        self.same_prime(other)?;
        let p = self.p;
        Ok(match (&self.value, &other.value) {
            (PAdicValue::Zero { abs_prec: a }, PAdicValue::Zero { abs_prec: b }) => {
                let abs = match (a, b) {
                    (Some(x), Some(y)) => Some(x + y),
                    _ => None,
                };
                PAdic { p, value: PAdicValue::Zero { abs_prec: abs } }
            }
            (PAdicValue::Zero { abs_prec }, PAdicValue::Nonzero { valuation, .. })
            | (PAdicValue::Nonzero { valuation, .. }, PAdicValue::Zero { abs_prec }) => {
                PAdic { p, value: PAdicValue::Zero { abs_prec: abs_prec.map(|a| a + valuation) } }
            }
            (
                PAdicValue::Nonzero { valuation: va, unit: ua, prec: pa },
                PAdicValue::Nonzero { valuation: vb, unit: ub, prec: pb },
            ) => {
                let prec = (*pa).min(*pb);
                let unit = (ua * ub) % pow_p(p, prec);
                PAdic { p, value: PAdicValue::Nonzero { valuation: va + vb, unit, prec } }
            }
        })
    }

    pub fn inv(&self) -> Result<PAdic> {
        match &self.value {
            PAdicValue::Zero { .. } => Err(Error::DivisionByZero),
            PAdicValue::Nonzero { valuation, unit, prec } => Ok(PAdic {
                p: self.p,
                value: PAdicValue::Nonzero { valuation: -valuation, unit: inv_mod(unit, self.p, *prec), prec: *prec },
            }),
        }
    }

    pub fn div(&self, other: &PAdic) -> Result<PAdic> {
        self.same_prime(other)?;
        self.mul(&other.inv()?)
    }

    /// The p-adic fractional part: the unique `r` in `Z[1/p]` with
    /// `0 <= r < 1` and `a - r` in `Z_p`.
    pub fn frac_part(&self) -> Result<BigRational> {
        match &self.value {
            PAdicValue::Zero { abs_prec } => match abs_prec {
                Some(a) if *a < 0 => Err(Error::Precision(format!("zero known only modulo {}^{a}", self.p))),
                _ => Ok(BigRational::zero()),
            },
            PAdicValue::Nonzero { valuation, unit, prec } => {
                if *valuation >= 0 {
                    return Ok(BigRational::zero());
                }
                let depth = (-valuation) as u32;
                if depth > *prec {
                    return Err(Error::Precision(format!(
                        "need {depth} digits below the point, have {prec}"
                    )));
                }
                let m = pow_p(self.p, depth);
                let r = BigInt::from_biguint(Sign::Plus, unit % &m);
                Ok(BigRational::new(r, BigInt::from_biguint(Sign::Plus, m)))
            }
        }
    }

    /// Whether two values agree at the smaller of their precisions.
    pub fn congruent(&self, other: &PAdic) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Malformed(format!("{p} is not prime")));
    }
    Ok(())
}

fn p_power_rational(p: u64, e: i64) -> BigRational {
    let m = pow_p_int(p, e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// `qp_frac_part` as a free function.
pub fn qp_frac_part(a: &PAdic) -> Result<BigRational> {
    a.frac_part()
}

/// Fractional part at `p` of an exact rational.
pub fn rational_frac_part(p: u64, x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let (k, den_rest) = split_p(p, x.denom());
    if k == 0 {
        return BigRational::zero();
    }
    let m = pow_p(p, k as u32);
    let n = to_unsigned_mod(x.numer(), &m);
    let d = to_unsigned_mod(&den_rest, &m);
    let r = (n * inv_mod(&d, p, k as u32)) % &m;
    BigRational::new(BigInt::from_biguint(Sign::Plus, r), BigInt::from_biguint(Sign::Plus, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qp_arith(op: ArithOp, a: &PAdic, b: &PAdic) -> Result<PAdic> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        match &self.value {
            PAdicValue::Zero { abs_prec: None } => write!(f, "0 ({p}-adic)"),
            PAdicValue::Zero { abs_prec: Some(a) } => write!(f, "0 (mod {p}^{a})"),
            PAdicValue::Nonzero { valuation, unit, prec } => write!(f, "{p}^{valuation} * {unit} (mod {p}^{prec})"),
        }
    }
}

/// Parse `p^v * u (mod p^M)`, `u (mod p^M)` or `0 (mod p^N)`.
pub fn parse_padic(text: &str) -> Result<PAdic> {
    let bad = || Error::Malformed(format!("bad p-adic literal {text:?}"));
    let s = text.trim();
    // exact zero, as printed
    if let Some(p) = s.strip_prefix("0 (").and_then(|r| r.strip_suffix("-adic)")) {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        check_prime(p)?;
        return Ok(PAdic { p, value: PAdicValue::Zero { abs_prec: None } });
    }
    let (body, modulus) = s.split_once("(mod").ok_or_else(bad)?;
    let modulus = modulus.trim().strip_suffix(')').ok_or_else(bad)?;
    let (mp, me) = modulus.split_once('^').ok_or_else(bad)?;
    let p: u64 = mp.trim().parse().map_err(|_| bad())?;
    let m: i64 = me.trim().parse().map_err(|_| bad())?;
    check_prime(p)?;
    let body = body.trim();
    if body == "0" {
        return Ok(PAdic { p, value: PAdicValue::Zero { abs_prec: Some(m) } });
    }
    let (v, u) = match body.split_once('*') {
        Some((pv, u)) => {
            let (bp, bv) = pv.split_once('^').ok_or_else(bad)?;
            if bp.trim().parse::<u64>().map_err(|_| bad())? != p {
                return Err(bad());
            }
            (bv.trim().parse::<i64>().map_err(|_| bad())?, u.trim())
        }
        None => (0, body),
    };
    let u: BigUint = u.parse().map_err(|_| bad())?;
    let prec = u32::try_from(m).map_err(|_| bad())?;
    PAdic::new(p, v, u, prec)
}

/// Parse an exact rational `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("bad rational {text:?}"));
    let s = text.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An adele: an archimedean coordinate, finitely many listed p-adic
/// coordinates, and a rational `principal` used at every unlisted prime.
/// `principal` must be integral at every unlisted prime.
#[derive(Debug, Clone, PartialEq)]
pub struct Adele {
    pub real_part: BigRational,
    pub finite_parts: BTreeMap<u64, PAdic>,
    pub principal: BigRational,
}

impl Adele {
    pub fn new(real_part: BigRational, finite_parts: BTreeMap<u64, PAdic>, principal: BigRational) -> Result<Adele> {
        for (k, v) in &finite_parts {
            if *k != v.p {
                return Err(Error::PrimeMismatch(*k, v.p));
            }
        }
        for q in prime_factors_big(principal.denom())? {
            if !finite_parts.contains_key(&q) {
                return Err(Error::Malformed(format!("principal part is not integral at unlisted prime {q}")));
            }
        }
        Ok(Adele { real_part, finite_parts, principal })
    }

    pub fn zero() -> Adele {
        Adele { real_part: BigRational::zero(), finite_parts: BTreeMap::new(), principal: BigRational::zero() }
    }

    /// The rational `q` placed at every coordinate.
    pub fn diagonal(q: &BigRational, prec: u32) -> Result<Adele> {
        let mut parts = BTreeMap::new();
        for p in prime_factors_big(q.denom())? {
            parts.insert(p, PAdic::from_rational(p, q, prec)?);
        }
        Adele::new(q.clone(), parts, q.clone())
    }

    /// JSON form `{"inf": "q", "2": "<p-adic or rational>", ..., "rest": "q"}`.
    pub fn from_json(v: &Value, prec: u32) -> Result<Adele> {
        let obj = v.as_object().ok_or_else(|| Error::Malformed("adele must be an object".into()))?;
        let text = |x: &Value| x.as_str().map(str::to_owned).ok_or_else(|| Error::Malformed(format!("expected string, got {x}")));
        let mut real = BigRational::zero();
        let mut principal = BigRational::zero();
        let mut parts = BTreeMap::new();
        for (k, x) in obj {
            let s = text(x)?;
            match k.as_str() {
                "inf" => real = parse_rational(&s)?,
                "rest" => principal = parse_rational(&s)?,
                key => {
                    let p: u64 = key.parse().map_err(|_| Error::Malformed(format!("bad place {key:?}")))?;
                    let a = if s.contains("mod") { parse_padic(&s)? } else { PAdic::from_rational(p, &parse_rational(&s)?, prec)? };
                    parts.insert(p, a);
                }
            }
        }
        Adele::new(real, parts, principal)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("inf".into(), Value::String(self.real_part.to_string()));
        for (p, a) in &self.finite_parts {
            m.insert(p.to_string(), Value::String(a.to_string()));
        }
        if !self.principal.is_zero() {
            m.insert("rest".into(), Value::String(self.principal.to_string()));
        }
        Value::Object(m)
    }
}

fn prime_factors_big(n: &BigInt) -> Result<Vec<u64>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::Malformed(format!("denominator {n} too large to factor")))?;
    Ok(prime_factors(n))
}

/// The phase of the character, as an exact rational in `[0, 1)`.
pub fn adele_phase(a: &Adele, r: &BigRational) -> Result<BigRational> {
    let mut phase = -(r * &a.real_part);
    let mut places: Vec<u64> = prime_factors_big(r.denom())?;
    places.extend(a.finite_parts.keys().copied());
    places.sort_unstable();
    places.dedup();
    for p in places {
        let term = match a.finite_parts.get(&p) {
            Some(x) => {
                let prec = match &x.value {
                    PAdicValue::Nonzero { prec, .. } => *prec,
                    PAdicValue::Zero { .. } => DEFAULT_PRECISION,
                };
                let rp = PAdic::from_rational(p, r, prec)?;
                rp.mul(x)?.frac_part()?
            }
            None => rational_frac_part(p, &(r * &a.principal)),
        };
        phase += term;
    }
    Ok(&phase - phase.floor())
}

/// `xi_a(r) = exp(-2 pi i r a_inf) * prod_p exp(2 pi i {r a_p}_p)`.
pub fn adele_character(a: &Adele, r: &BigRational) -> Result<Complex64> {
    let phase = adele_phase(a, r)?;
    let x = phase.to_f64().unwrap_or(0.0);
    Ok(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x))
}
