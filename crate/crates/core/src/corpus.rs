//! The bundled golden corpus and a seeded generator of random valid terms.

use rand::Rng;
use serde::Serialize;

use crate::classify::{characteristically_simple, CanonicalForm};
use crate::duality::dual;
use crate::error::{Error, Result};
use crate::terms::{parse_expr, validate, Cardinal, GroupExpr};

/// The golden corpus shipped with the crate.
pub const GOLDEN: &str = include_str!("../corpus/golden.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusEntry {
    Classify { term: String, expected: String },
    Dual { term: String, expected: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub line: usize,
    pub term: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub total: usize,
    pub classify: usize,
    pub dual: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Parse corpus text into numbered entries; blank lines and `#` comments
/// are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<(usize, CorpusEntry)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Malformed(format!("corpus line {}: {line:?}", i + 1));
        let (kind, rest) = line.split_once(' ').ok_or_else(bad)?;
        let (term, expected) = rest.split_once("=>").ok_or_else(bad)?;
        let (term, expected) = (term.trim().to_string(), expected.trim().to_string());
        let entry = match kind {
            "classify" => CorpusEntry::Classify { term, expected },
            "dual" => CorpusEntry::Dual { term, expected },
            _ => return Err(bad()),
        };
        out.push((i + 1, entry));
    }
    Ok(out)
}

fn classify_text(term: &str) -> String {
    match parse_expr(term).and_then(|e| characteristically_simple(&e)) {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn dual_text(term: &str) -> String {
    match parse_expr(term).and_then(|e| dual(&e)) {
        Ok(d) => d.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Replay corpus text, recording every mismatch.
pub fn replay(text: &str) -> Result<CorpusReport> {
    let entries = parse_corpus(text)?;
    let mut report = CorpusReport { total: entries.len(), classify: 0, dual: 0, mismatches: Vec::new() };
    for (line, entry) in entries {
        let (term, expected, actual) = match entry {
            CorpusEntry::Classify { term, expected } => {
                report.classify += 1;
                let actual = classify_text(&term);
                (term, expected, actual)
            }
            CorpusEntry::Dual { term, expected } => {
                report.dual += 1;
                let actual = dual_text(&term);
                (term, expected, actual)
            }
        };
        if actual != expected {
            report.mismatches.push(Mismatch { line, term, expected, actual });
        }
    }
    Ok(report)
}

pub fn replay_golden() -> Result<CorpusReport> {
    replay(GOLDEN)
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn random_prime(rng: &mut impl Rng) -> u64 {
    PRIMES[rng.random_range(0..PRIMES.len())]
}

fn random_cardinal(rng: &mut impl Rng) -> Cardinal {
    match rng.random_range(0..6) {
        0 => Cardinal::Aleph0,
        n => Cardinal::Finite(n as u64 - 1),
    }
}

fn random_atom(rng: &mut impl Rng) -> GroupExpr {
    match rng.random_range(0..9) {
        0 => GroupExpr::R,
        1 => GroupExpr::Z,
        2 => GroupExpr::T,
        3 => GroupExpr::Q,
        4 => GroupExpr::QHat,
        5 => GroupExpr::Cyc(rng.random_range(2..=12)),
        6 => GroupExpr::Prufer(random_prime(rng)),
        7 => GroupExpr::Zp(random_prime(rng)),
        _ => GroupExpr::Qp(random_prime(rng)),
    }
}

/// A random valid term of nesting depth at most `depth`. Infinite powers
/// are only placed over bases where they are allowed.
pub fn random_term(rng: &mut impl Rng, depth: u32) -> GroupExpr {
    if depth == 0 || rng.random_bool(0.35) {
        return random_atom(rng);
    }
    let e = match rng.random_range(0..4) {
        0 => GroupExpr::DirectSum((0..rng.random_range(2..=3)).map(|_| random_term(rng, depth - 1)).collect()),
        1 => GroupExpr::Power(Box::new(random_term(rng, depth - 1)), random_cardinal(rng)),
        2 => GroupExpr::RestrictedPower(Box::new(random_term(rng, depth - 1)), random_cardinal(rng)),
        _ => GroupExpr::LocalProd(random_prime(rng), random_cardinal(rng)),
    };
    repair(e)
}

// Replace an offending infinite index by a finite one, bottom-up.
fn repair(e: GroupExpr) -> GroupExpr {
    if validate(&e).valid {
        return e;
    }
    match e {
        GroupExpr::Power(b, _) => GroupExpr::Power(b, Cardinal::Finite(2)),
        GroupExpr::RestrictedPower(b, _) => GroupExpr::RestrictedPower(b, Cardinal::Finite(2)),
        other => other,
    }
}

/// `count` random valid terms.
pub fn generated_corpus(rng: &mut impl Rng, count: usize, depth: u32) -> Vec<GroupExpr> {
    (0..count).map(|_| random_term(rng, depth)).collect()
}

fn random_kappa(rng: &mut impl Rng) -> Cardinal {
    match rng.random_range(0..4) {
        0 => Cardinal::Aleph0,
        n => Cardinal::Finite(n as u64),
    }
}

/// A random canonical form with parameters in the small ranges.
pub fn random_canonical(rng: &mut impl Rng) -> CanonicalForm {
    let p = random_prime(rng);
    match rng.random_range(0..5) {
        0 => {
            let prime_part = random_kappa(rng);
            let sum_part = if rng.random_bool(0.5) { Cardinal::Aleph0 } else { Cardinal::ZERO };
            CanonicalForm::elem_abelian(p, prime_part, sum_part)
        }
        1 => CanonicalForm::Reals { n: rng.random_range(1..=4) },
        2 => CanonicalForm::RationalsSum { kappa: random_kappa(rng) },
        3 => CanonicalForm::RationalsDualPower { kappa: random_kappa(rng) },
        _ => CanonicalForm::QpLocal { p, kappa: random_kappa(rng) },
    }
}

/// A random term that is isomorphic to a characteristically simple group
/// but written in a scrambled shape: finite pieces are split off and
/// regrouped.
pub fn random_simple_term(rng: &mut impl Rng) -> (CanonicalForm, GroupExpr) {
    let c = random_canonical(rng);
    let base = c.to_expr();
    let split = |atom: GroupExpr, k: Cardinal, rng: &mut dyn rand::RngCore| -> GroupExpr {
        match k {
            Cardinal::Finite(n) if n >= 2 => {
                let a = rng.random_range(1..n);
                GroupExpr::sum(vec![GroupExpr::power(atom.clone(), Cardinal::Finite(a)), GroupExpr::power(atom, Cardinal::Finite(n - a))])
            }
            _ => base.clone(),
        }
    };
    let term = match c {
        CanonicalForm::Reals { n } => split(GroupExpr::R, Cardinal::Finite(n), rng),
        CanonicalForm::RationalsSum { kappa: k @ Cardinal::Finite(_) } => split(GroupExpr::Q, k, rng),
        CanonicalForm::RationalsDualPower { kappa: k @ Cardinal::Finite(_) } => split(GroupExpr::QHat, k, rng),
        CanonicalForm::QpLocal { p, kappa: Cardinal::Aleph0 } if rng.random_bool(0.5) => {
            GroupExpr::sum(vec![base.clone(), GroupExpr::Qp(p)])
        }
        CanonicalForm::QpLocal { p, kappa: k @ Cardinal::Finite(_) } => split(GroupExpr::Qp(p), k, rng),
        CanonicalForm::ElemAbelian { p, kappa_prime: Cardinal::Aleph0, .. } if rng.random_bool(0.5) => {
            GroupExpr::sum(vec![base.clone(), GroupExpr::Cyc(p)])
        }
        CanonicalForm::ElemAbelian { p, kappa: k @ Cardinal::Finite(_), .. } => split(GroupExpr::Cyc(p), k, rng),
        _ => base.clone(),
    };
    (c, term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monolith::trial_rng;
    use crate::terms::ensure_valid;
    use crate::classify::canonical_form;

    #[test]
    fn golden_corpus_replays() {
        let r = replay_golden().unwrap();
        assert!(r.passed(), "{:#?}", r.mismatches);
        assert!(r.classify >= 40 && r.dual >= 15);
    }

    #[test]
    fn mismatches_are_reported() {
        let r = replay("classify Z => Reals(n=1)\ndual Z => Z\n").unwrap();
        assert_eq!(r.mismatches.len(), 2);
        assert_eq!(r.mismatches[0].actual, "fail(2: p=2)");
        assert!(parse_corpus("frobnicate Z => Z").is_err());
    }

    #[test]
    fn generated_terms_are_valid() {
        let mut rng = trial_rng(3, 0);
        for e in generated_corpus(&mut rng, 300, 3) {
            assert!(ensure_valid(&e).is_ok(), "{e}");
        }
    }

    #[test]
    fn scrambled_simple_terms_classify_back() {
        let mut rng = trial_rng(4, 0);
        for _ in 0..200 {
            let (c, e) = random_simple_term(&mut rng);
            assert_eq!(canonical_form(&e).unwrap(), c, "{e}");
        }
    }
}
