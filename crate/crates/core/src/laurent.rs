//! Truncated arithmetic in `F_p((t))`.
//!
//! An element stores coefficients for exponents `low..` and is known modulo
//! `t^precision_high`. The default window is `[-N, N]` with `N = 32`.

use std::fmt;

use crate::error::{Error, Result};
use crate::primes::is_prime;

pub const DEFAULT_WINDOW: i64 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentElt {
    pub p: u64,
    pub low: i64,
    pub coeffs: Vec<u64>,
    /// Coefficients at exponents `>= precision_high` are unknown.
    pub precision_high: i64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl LaurentElt {
    /// Build from `(exponent, coefficient)` pairs; coefficients are reduced
    /// mod `p` and terms at or above `precision_high` dropped.
    pub fn from_terms(p: u64, terms: &[(i64, i64)], precision_high: i64) -> Result<LaurentElt> {
        if !is_prime(p) {
            return Err(Error::Malformed(format!("{p} is not prime")));
        }
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Ok(LaurentElt::zero(p, precision_high));
        };
        let high = terms.iter().map(|t| t.0).max().unwrap_or(low);
        let mut coeffs = vec![0u64; (high - low + 1) as usize];
        for &(e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = (*slot + c.rem_euclid(p as i64) as u64) % p;
        }
        Ok(LaurentElt { p, low, coeffs, precision_high }.normalized())
    }

    pub fn zero(p: u64, precision_high: i64) -> LaurentElt {
        LaurentElt { p, low: precision_high, coeffs: Vec::new(), precision_high }
    }

    pub fn one(p: u64) -> LaurentElt {
        LaurentElt { p, low: 0, coeffs: vec![1], precision_high: DEFAULT_WINDOW + 1 }
    }

    /// The monomial `c t^e` at the default window.
    pub fn monomial(p: u64, e: i64, c: u64) -> LaurentElt {
        LaurentElt { p, low: e, coeffs: vec![c % p], precision_high: DEFAULT_WINDOW + 1 }.normalized()
    }

    fn normalized(mut self) -> LaurentElt {
        let keep = (self.precision_high - self.low).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = self.precision_high;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; for a known-zero element this is its precision.
    pub fn valuation(&self) -> i64 {
        self.low
    }

    pub fn coeff(&self, e: i64) -> u64 {
        if e < self.low {
            return 0;
        }
        self.coeffs.get((e - self.low) as usize).copied().unwrap_or(0)
    }

    fn check(&self, other: &LaurentElt) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentElt) -> Result<LaurentElt> {
        self.check(other)?;
        let prec = self.precision_high.min(other.precision_high);
        let low = self.low.min(other.low).min(prec);
        let coeffs = (low..prec).map(|e| (self.coeff(e) + other.coeff(e)) % self.p).collect();
        Ok(LaurentElt { p: self.p, low, coeffs, precision_high: prec }.normalized())
    }

    pub fn neg(&self) -> LaurentElt {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        LaurentElt { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &LaurentElt) -> Result<LaurentElt> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentElt) -> Result<LaurentElt> {
        self.check(other)?;
        let p = self.p;
        let prec = (self.precision_high + other.low).min(other.precision_high + self.low);
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentElt::zero(p, prec));
        }
        let low = self.low + other.low;
        let len = ((prec - low).max(0) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = (coeffs[i + j] + mul_mod(a, b, p)) % p;
                }
            }
        }
        Ok(LaurentElt { p, low, coeffs, precision_high: prec }.normalized())
    }

    /// Two-sided inverse, known to relative precision equal to the input's.
    pub fn inv(&self) -> Result<LaurentElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let v = self.low;
        let rel = (self.precision_high - v) as usize;
        let c0inv = inv_mod(self.coeffs[0], p);
        // Solve u * w = 1 term by term for the unit part u.
        let mut w = vec![0u64; rel];
        for n in 0..rel {
            let mut s = if n == 0 { 1 } else { 0 };
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = (s + p - mul_mod(self.coeffs[k], w[n - k], p)) % p;
            }
            w[n] = mul_mod(s, c0inv, p);
        }
        Ok(LaurentElt { p, low: -v, coeffs: w, precision_high: -v + rel as i64 }.normalized())
    }

    /// Whether the two agree below the smaller precision.
    pub fn congruent(&self, other: &LaurentElt) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Forget everything from exponent `high` on.
    pub fn truncate(&self, high: i64) -> LaurentElt {
        LaurentElt { precision_high: self.precision_high.min(high), ..self.clone() }.normalized()
    }
}

/// `t^k * a`: the action of `s^k` in `F_p((t)) x| <s>`.
pub fn shift_action(k: i64, a: &LaurentElt) -> LaurentElt {
    LaurentElt { low: a.low + k, precision_high: a.precision_high + k, ..a.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Inv,
}

pub fn fps_arith(op: SeriesOp, a: &LaurentElt, b: Option<&LaurentElt>) -> Result<LaurentElt> {
    let need = || b.ok_or_else(|| Error::Malformed("binary operation needs two operands".into()));
    match op {
        SeriesOp::Add => a.add(need()?),
        SeriesOp::Mul => a.mul(need()?),
        SeriesOp::Inv => a.inv(),
    }
}

impl fmt::Display for LaurentElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.low + i as i64;
            parts.push(match (c, e) {
                (_, 0) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("t^{e}"),
                (_, 1) => format!("{c}*t"),
                _ => format!("{c}*t^{e}"),
            });
        }
        parts.push(format!("O(t^{})", self.precision_high));
        write!(f, "{} (p={})", parts.join(" + "), self.p)
    }
}

/// Parse `t^-1 + 1 + 2*t^3 (p=3)`, optionally with an `O(t^k)` term giving
/// the precision (default: the window `N = 32`).
pub fn parse_laurent(text: &str) -> Result<LaurentElt> {
    let bad = || Error::Malformed(format!("bad Laurent literal {text:?}"));
    let s = text.trim();
    let open = s.rfind("(p=").ok_or_else(bad)?;
    let p: u64 = s[open + 3..].trim().strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let body = s[..open].trim();
    let mut terms = Vec::new();
    let mut prec = DEFAULT_WINDOW + 1;
    let exponent = |m: &str| -> Result<i64> {
        match m.trim() {
            "t" => Ok(1),
            other => other.strip_prefix("t^").ok_or_else(bad)?.trim().parse().map_err(|_| bad()),
        }
    };
    for raw in body.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(inner) = raw.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            prec = exponent(inner)?;
            continue;
        }
        let (c, e) = match raw.split_once('*') {
            Some((c, m)) => (c.trim().parse::<i64>().map_err(|_| bad())?, exponent(m)?),
            None if raw.contains('t') => (1, exponent(raw)?),
            None => (raw.parse::<i64>().map_err(|_| bad())?, 0),
        };
        terms.push((e, c));
    }
    if terms.iter().any(|t| t.0 >= prec) {
        return Err(bad());
    }
    LaurentElt::from_terms(p, &terms, prec)
}
