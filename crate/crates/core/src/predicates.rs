//! Structural predicates of group terms.
//!
//! Every predicate is evaluated by structural recursion over the normal form
//! of a valid term: a fixed table for the atoms and one combination rule per
//! constructor. Dense subsets of the factors give dense subsets of the
//! product (product topology) and of the direct sum (discrete topology), so
//! the density-type predicates pass through powers coordinatewise.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::primes::{is_prime, prime_factors};
use crate::terms::{ensure_valid, normalize, Cardinal, GroupExpr};

/// Status of the subgroup of compact elements `P(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PStatus {
    Trivial,
    All,
    /// A proper nontrivial closed subgroup.
    Mixed,
}

/// A boolean for every prime: `default` everywhere except at `exceptions`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeFlags {
    pub default: bool,
    pub exceptions: BTreeSet<u64>,
}

impl PrimeFlags {
    pub fn constant(value: bool) -> PrimeFlags {
        PrimeFlags { default: value, exceptions: BTreeSet::new() }
    }

    /// True at `p` only.
    pub fn only(p: u64) -> PrimeFlags {
        PrimeFlags { default: false, exceptions: BTreeSet::from([p]) }
    }

    pub fn get(&self, p: u64) -> bool {
        self.default ^ self.exceptions.contains(&p)
    }

    pub fn and(&self, other: &PrimeFlags) -> PrimeFlags {
        let default = self.default && other.default;
        let exceptions = self
            .exceptions
            .union(&other.exceptions)
            .copied()
            .filter(|&p| (self.get(p) && other.get(p)) != default)
            .collect();
        PrimeFlags { default, exceptions }
    }

    /// Whether the flag holds at some prime.
    pub fn any(&self) -> bool {
        self.default || !self.exceptions.is_empty()
    }

    /// Smallest prime at which the flag holds.
    pub fn first_true(&self) -> Option<u64> {
        if self.default {
            (2u64..).find(|&p| is_prime(p) && !self.exceptions.contains(&p))
        } else {
            self.exceptions.iter().next().copied()
        }
    }
}

/// A finite or cofinite set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PrimeSet {
    Finite(Vec<u64>),
    /// Every prime except the listed ones.
    CoFinite(Vec<u64>),
}

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet::Finite(Vec::new())
    }

    pub fn all() -> PrimeSet {
        PrimeSet::CoFinite(Vec::new())
    }

    fn sorted(mut v: Vec<u64>) -> Vec<u64> {
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Finite(v) => v.binary_search(&p).is_ok(),
            PrimeSet::CoFinite(v) => is_prime(p) && v.binary_search(&p).is_err(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(v) if v.is_empty())
    }

    pub fn smallest(&self) -> Option<u64> {
        match self {
            PrimeSet::Finite(v) => v.first().copied(),
            PrimeSet::CoFinite(v) => Some(crate::primes::smallest_prime_not_in(v)),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(Self::sorted(a.iter().chain(b).copied().collect())),
            (Finite(f), CoFinite(c)) | (CoFinite(c), Finite(f)) => {
                CoFinite(c.iter().copied().filter(|p| !f.contains(p)).collect())
            }
            (CoFinite(a), CoFinite(b)) => CoFinite(a.iter().copied().filter(|p| b.contains(p)).collect()),
        }
    }
}

/// The predicates the classifier needs, evaluated for one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateVector {
    pub trivial: bool,
    pub compact: bool,
    pub discrete: bool,
    pub connected: bool,
    pub totally_disconnected: bool,
    pub torsion_free: bool,
    /// The prime `p` when the group has exponent `p`.
    pub exponent_p: Option<u64>,
    pub p_status: PStatus,
    /// Whether `P_p(A) = A`, per prime.
    pub pp_all: PrimeFlags,
    pub densely_divisible: bool,
}

impl PredicateVector {
    fn trivial() -> PredicateVector {
        PredicateVector {
            trivial: true,
            compact: true,
            discrete: true,
            connected: true,
            totally_disconnected: true,
            torsion_free: true,
            exponent_p: None,
            p_status: PStatus::All,
            pp_all: PrimeFlags::constant(true),
            densely_divisible: true,
        }
    }

    fn direct_sum(&self, other: &PredicateVector) -> PredicateVector {
        if self.trivial {
            return other.clone();
        }
        if other.trivial {
            return self.clone();
        }
        PredicateVector {
            trivial: false,
            compact: self.compact && other.compact,
            discrete: self.discrete && other.discrete,
            connected: self.connected && other.connected,
            totally_disconnected: self.totally_disconnected && other.totally_disconnected,
            torsion_free: self.torsion_free && other.torsion_free,
            exponent_p: if self.exponent_p == other.exponent_p { self.exponent_p } else { None },
            p_status: if self.p_status == other.p_status { self.p_status } else { PStatus::Mixed },
            pp_all: self.pp_all.and(&other.pp_all),
            densely_divisible: self.densely_divisible && other.densely_divisible,
        }
    }
}

struct Atom {
    compact: bool,
    discrete: bool,
    connected: bool,
    torsion_free: bool,
    p_all: bool,
    densely_divisible: bool,
}

fn atom_vector(a: Atom, exponent_p: Option<u64>, pp_all: PrimeFlags) -> PredicateVector {
    PredicateVector {
        trivial: false,
        compact: a.compact,
        discrete: a.discrete,
        connected: a.connected,
        totally_disconnected: !a.connected,
        torsion_free: a.torsion_free,
        exponent_p,
        p_status: if a.p_all { PStatus::All } else { PStatus::Trivial },
        pp_all,
        densely_divisible: a.densely_divisible,
    }
}

fn vector_of(expr: &GroupExpr) -> PredicateVector {
    use GroupExpr::*;
    let none = || PrimeFlags::constant(false);
    let atom = |compact, discrete, connected, torsion_free, p_all, densely_divisible| Atom {
        compact,
        discrete,
        connected,
        torsion_free,
        p_all,
        densely_divisible,
    };
    match expr {
        R => atom_vector(atom(false, false, true, true, false, true), None, none()),
        Z => atom_vector(atom(false, true, false, true, false, false), None, none()),
        T => atom_vector(atom(true, false, true, false, true, true), None, none()),
        Q => atom_vector(atom(false, true, false, true, false, true), None, none()),
        QHat => atom_vector(atom(true, false, true, true, true, true), None, none()),
        Cyc(n) => {
            let factors = prime_factors(*n);
            let pp = if factors.len() == 1 { PrimeFlags::only(factors[0]) } else { none() };
            let exponent = if is_prime(*n) { Some(*n) } else { None };
            atom_vector(atom(true, true, false, false, true, false), exponent, pp)
        }
        Prufer(p) => atom_vector(atom(false, true, false, false, true, true), None, PrimeFlags::only(*p)),
        Zp(p) => atom_vector(atom(true, false, false, true, true, false), None, PrimeFlags::only(*p)),
        Qp(p) => atom_vector(atom(false, false, false, true, true, true), None, PrimeFlags::only(*p)),
        LocalProd(p, k) => {
            if k.is_zero() {
                PredicateVector::trivial()
            } else {
                atom_vector(atom(false, false, false, true, true, true), None, PrimeFlags::only(*p))
            }
        }
        Power(b, k) => {
            let mut v = vector_of(b);
            if k.is_zero() || v.trivial {
                return PredicateVector::trivial();
            }
            if *k == Cardinal::Aleph0 {
                v.discrete = false;
            }
            v
        }
        RestrictedPower(b, k) => {
            let mut v = vector_of(b);
            if k.is_zero() || v.trivial {
                return PredicateVector::trivial();
            }
            if *k == Cardinal::Aleph0 {
                v.compact = false;
                v.connected = false;
            }
            v
        }
        DirectSum(items) => items
            .iter()
            .map(vector_of)
            .fold(PredicateVector::trivial(), |acc, v| acc.direct_sum(&v)),
    }
}

/// Full predicate vector of a valid term.
pub fn predicate_vector(expr: &GroupExpr) -> Result<PredicateVector> {
    ensure_valid(expr)?;
    Ok(vector_of(&normalize(expr)))
}

fn nondense_of(expr: &GroupExpr) -> PrimeSet {
    use GroupExpr::*;
    match expr {
        Zp(p) => PrimeSet::Finite(vec![*p]),
        Z => PrimeSet::all(),
        Cyc(n) => PrimeSet::Finite(prime_factors(*n)),
        Q | Qp(_) | R | QHat | T | Prufer(_) | LocalProd(..) => PrimeSet::empty(),
        Power(b, _) | RestrictedPower(b, _) => nondense_of(b),
        DirectSum(items) => items.iter().fold(PrimeSet::empty(), |acc, e| acc.union(&nondense_of(e))),
    }
}

/// The primes `p` for which `pA` is not dense in `A`.
pub fn nondense_primes(expr: &GroupExpr) -> Result<PrimeSet> {
    ensure_valid(expr)?;
    Ok(nondense_of(&normalize(expr)))
}

/// Whether the largest divisible subgroup is dense.
pub fn densely_divisible(expr: &GroupExpr) -> Result<bool> {
    predicate_vector(expr).map(|v| v.densely_divisible)
}

/// Compactness of an arbitrary (not necessarily valid) term, used by the
/// validity rules.
pub fn is_compact(expr: &GroupExpr) -> bool {
    use GroupExpr::*;
    match expr {
        T | QHat | Cyc(_) | Zp(_) => true,
        R | Z | Q | Prufer(_) | Qp(_) => false,
        LocalProd(_, k) => k.is_zero(),
        Power(b, k) => k.is_zero() || is_compact(b),
        RestrictedPower(b, k) => match k {
            Cardinal::Finite(0) => true,
            Cardinal::Finite(_) => is_compact(b),
            Cardinal::Aleph0 => b.is_trivial(),
        },
        DirectSum(items) => items.iter().all(is_compact),
    }
}

/// Discreteness of an arbitrary term.
pub fn is_discrete(expr: &GroupExpr) -> bool {
    use GroupExpr::*;
    match expr {
        Z | Q | Cyc(_) | Prufer(_) => true,
        R | T | QHat | Zp(_) | Qp(_) => false,
        LocalProd(_, k) => k.is_zero(),
        Power(b, k) => match k {
            Cardinal::Finite(_) => k.is_zero() || is_discrete(b),
            Cardinal::Aleph0 => b.is_trivial(),
        },
        RestrictedPower(b, k) => k.is_zero() || is_discrete(b),
        DirectSum(items) => items.iter().all(is_discrete),
    }
}
