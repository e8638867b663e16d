//! Desk-scale checks of monolith constructions and of the rational no-go
//! obstruction, in finite or truncated models.
//!
//! Every scenario returns a [`ClosureReport`] stating the window it was run
//! on; nothing is claimed beyond that window. `Z` is modelled by the cyclic
//! group `C_k` in the wreath and Hall scenarios.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::{shift_action, LaurentElt};
use crate::padic::PAdic;
use crate::primes::{is_prime, prime_factors, smallest_prime_not_in};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub scenario: String,
    pub target_contained: bool,
    pub generators_used: usize,
    /// Truncation parameters the claim is relative to.
    pub window: BTreeMap<String, i64>,
    /// Scenario-specific measured quantity (closure order, rank, floor).
    pub achieved: Option<i64>,
    pub witness: Option<String>,
    pub seed: Option<u64>,
    pub trials: usize,
}

impl ClosureReport {
    fn new(scenario: &str, window: &[(&str, i64)]) -> ClosureReport {
        ClosureReport {
            scenario: scenario.to_string(),
            target_contained: true,
            generators_used: 0,
            window: window.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            achieved: None,
            witness: None,
            seed: None,
            trials: 0,
        }
    }

    fn fail(&mut self, witness: String) {
        if self.target_contained {
            self.target_contained = false;
            self.witness = Some(witness);
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Random source for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The field with `q = p` or `q = p^2` elements, as lookup tables.
/// Element `c0 + c1 x` is stored as `c0 + c1 p`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    pub p: usize,
    pub q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    /// `exp[i] = w^i` for a fixed primitive element `w`.
    exp: Vec<usize>,
    log: Vec<usize>,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<FiniteField> {
        let (p, deg) = match prime_factors(q as u64).as_slice() {
            [p] => {
                let p = *p as usize;
                if q == p {
                    (p, 1)
                } else if q == p * p {
                    (p, 2)
                } else {
                    return Err(Error::Precondition(format!("q = {q} is not p or p^2")));
                }
            }
            _ => return Err(Error::Precondition(format!("q = {q} is not a prime power"))),
        };
        // x^2 = -a x - b for an irreducible x^2 + a x + b
        let (a, b) = if deg == 2 {
            (0..p)
                .flat_map(|a| (0..p).map(move |b| (a, b)))
                .find(|&(a, b)| (0..p).all(|r| (r * r + a * r + b) % p != 0))
                .expect("irreducible quadratic exists")
        } else {
            (0, 0)
        };
        let split = |e: usize| (e % p, e / p);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for e in 0..q {
            for f in 0..q {
                let ((c0, c1), (d0, d1)) = (split(e), split(f));
                add[e * q + f] = (c0 + d0) % p + ((c1 + d1) % p) * p;
                let t = c1 * d1 % p;
                let r0 = (c0 * d0 + t * (p - b % p)) % p;
                let r1 = (c0 * d1 + c1 * d0 + t * (p - a % p)) % p;
                mul[e * q + f] = if deg == 1 { c0 * d0 % p } else { r0 + r1 * p };
            }
        }
        let order = |g: usize| {
            let mut x = g;
            let mut n = 1;
            while x != 1 {
                x = mul[x * q + g];
                n += 1;
            }
            n
        };
        let w = (2..q).chain([1]).find(|&g| order(g) == q - 1).expect("primitive element exists");
        let mut exp = vec![1; q - 1];
        for i in 1..q - 1 {
            exp[i] = mul[exp[i - 1] * q + w];
        }
        let mut log = vec![usize::MAX; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e] = i;
        }
        Ok(FiniteField { p, q, add, mul, exp, log })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    /// An additive basis: `1`, and `x` when `q = p^2`.
    pub fn additive_basis(&self) -> Vec<usize> {
        if self.q == self.p {
            vec![1]
        } else {
            vec![1, self.p]
        }
    }
}

/// `AGL_1(q) = F_q x| F_q^*` with `(a, b)(a', b') = (a + b a', b b')`.
/// Element `(a, w^i)` is encoded as `a (q - 1) + i`.
#[derive(Debug, Clone)]
pub struct Agl1 {
    pub field: FiniteField,
    neg: Vec<usize>,
}

impl Agl1 {
    /// Requires `2 < q <= 121`, so the translation subgroup is a
    /// noncentral monolith.
    pub fn new(q: usize) -> Result<Agl1> {
        if q <= 2 || q > 121 {
            return Err(Error::Precondition(format!("AGL1(q) needs 2 < q <= 121, got {q}")));
        }
        let field = FiniteField::new(q)?;
        let neg = (0..q).map(|a| field.neg(a)).collect();
        Ok(Agl1 { field, neg })
    }

    pub fn order(&self) -> usize {
        self.field.q * (self.field.q - 1)
    }

    fn units(&self) -> usize {
        self.field.q - 1
    }

    pub fn encode(&self, a: usize, b: usize) -> usize {
        a * self.units() + self.field.log[b]
    }

    pub fn decode(&self, e: usize) -> (usize, usize) {
        (e / self.units(), self.field.exp[e % self.units()])
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let u = self.units();
        let (a, i) = (x / u, x % u);
        let (a2, j) = (y / u, y % u);
        let a3 = self.field.add(a, self.field.mul(self.field.exp[i], a2));
        a3 * u + (i + j) % u
    }

    pub fn inv(&self, x: usize) -> usize {
        let u = self.units();
        let (a, i) = (x / u, x % u);
        let j = (u - i) % u;
        // (a, b)^-1 = (-b^-1 a, b^-1)
        self.neg[self.field.mul(self.field.exp[j], a)] * u + j
    }

    /// Translations by an additive basis, and the multiplication by a
    /// primitive element.
    pub fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.field.additive_basis().into_iter().map(|a| self.encode(a, 1)).collect();
        g.push(self.encode(0, self.field.exp[1 % self.units()]));
        g
    }

    /// Generators of the translation subgroup `{(a, 1)}`.
    pub fn monolith_generators(&self) -> Vec<usize> {
        self.field.additive_basis().into_iter().map(|a| self.encode(a, 1)).collect()
    }

    pub fn is_translation(&self, x: usize) -> bool {
        x % self.units() == 0
    }
}

/// The cyclic-window wreath product `F^(C_k) x| C_k` with `C_k` shifting
/// coordinates. `(f, s)` is encoded as `s + k * sum f_i n^i`.
#[derive(Debug, Clone)]
pub struct WreathWindow {
    pub base: Agl1,
    pub k: usize,
    n: usize,
    order: usize,
}

impl WreathWindow {
    pub fn new(base: Agl1, k: usize, budget: usize) -> Result<WreathWindow> {
        if k < 2 {
            return Err(Error::Precondition("window size k must be at least 2".into()));
        }
        let n = base.order();
        let order = (n as u128).checked_pow(k as u32).map(|o| o * k as u128);
        match order {
            Some(o) if o <= budget as u128 => Ok(WreathWindow { base, k, n, order: o as usize }),
            _ => Err(Error::Budget { budget, order: order.map_or(usize::MAX, |o| o.min(usize::MAX as u128) as usize) }),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn decode(&self, e: usize) -> (Vec<usize>, usize) {
        let s = e % self.k;
        let mut rest = e / self.k;
        let mut f = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            f.push(rest % self.n);
            rest /= self.n;
        }
        (f, s)
    }

    fn encode(&self, f: &[usize], s: usize) -> usize {
        f.iter().rev().fold(0, |acc, &x| acc * self.n + x) * self.k + s
    }

    /// `(f, s)(g, t) = (f * (s.g), s + t)` with `(s.g)_i = g_(i - s)`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (f, s) = self.decode(x);
        let (g, t) = self.decode(y);
        let h: Vec<usize> = (0..self.k).map(|i| self.base.mul(f[i], g[(i + self.k - s) % self.k])).collect();
        self.encode(&h, (s + t) % self.k)
    }

    pub fn inv(&self, x: usize) -> usize {
        let (f, s) = self.decode(x);
        // (f, s)^-1 = ((-s).f^-1, -s)
        let s2 = (self.k - s) % self.k;
        let h: Vec<usize> = (0..self.k).map(|i| self.base.inv(f[(i + s) % self.k])).collect();
        self.encode(&h, s2)
    }

    /// `h x h^-1`.
    pub fn conj(&self, h: usize, x: usize) -> usize {
        self.mul(self.mul(h, x), self.inv(h))
    }

    /// Base generators at coordinate 0 and the shift.
    pub fn generators(&self) -> Vec<usize> {
        let id = vec![0; self.k];
        let mut g: Vec<usize> = self
            .base
            .generators()
            .into_iter()
            .map(|a| {
                let mut f = id.clone();
                f[0] = a;
                self.encode(&f, 0)
            })
            .collect();
        g.push(self.encode(&id, 1));
        g
    }

    /// Generators of `M^(C_k)`: a monolith generator in one coordinate.
    pub fn target_generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for m in self.base.monolith_generators() {
                let mut f = vec![0; self.k];
                f[i] = m;
                out.push(self.encode(&f, 0));
            }
        }
        out
    }

    /// Whether `x` lies in `M^(C_k)`.
    pub fn in_target(&self, x: usize) -> bool {
        let (f, s) = self.decode(x);
        s == 0 && f.iter().all(|&a| self.base.is_translation(a))
    }

    pub fn describe(&self, x: usize) -> String {
        let (f, s) = self.decode(x);
        let coords: Vec<String> = f
            .iter()
            .map(|&e| {
                let (a, b) = self.base.decode(e);
                format!("({a},{b})")
            })
            .collect();
        format!("[{}; shift {s}]", coords.join(", "))
    }
}

/// A subgroup given by its element list and membership table.
#[derive(Debug, Clone)]
pub struct Closure {
    pub member: Vec<bool>,
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Closure {
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }
}

/// Normal closure of `g`: grow the subgroup generated by a set of
/// conjugates until it is stable under conjugation by the group generators.
pub fn normal_closure(w: &WreathWindow, g: usize) -> Closure {
    let mut c = Closure { member: vec![false; w.order()], elements: vec![0], generators: Vec::new() };
    c.member[0] = true;
    let group_gens = w.generators();
    let mut pending = vec![g];
    while let Some(x) = pending.pop() {
        if c.member[x] {
            continue;
        }
        c.generators.push(x);
        let mut queue = c.elements.clone();
        while let Some(y) = queue.pop() {
            for &s in &c.generators {
                let z = w.mul(y, s);
                if !c.member[z] {
                    c.member[z] = true;
                    c.elements.push(z);
                    queue.push(z);
                }
            }
        }
        for &n in &c.generators {
            for &h in &group_gens {
                let z = w.conj(h, n);
                if !c.member[z] {
                    pending.push(z);
                }
            }
        }
    }
    c
}

/// For seeded random nontrivial elements of `AGL1(q)^(C_k) x| C_k`, check
/// that the normal closure contains `M^(C_k)`.
pub fn wreath_monolith_window(q: usize, k: usize, trials: usize, seed: u64, budget: usize) -> Result<ClosureReport> {
    let w = WreathWindow::new(Agl1::new(q)?, k, budget)?;
    let mut report = ClosureReport::new("wreath", &[("q", q as i64), ("k", k as i64), ("order", w.order() as i64)]);
    report.seed = Some(seed);
    report.trials = trials;
    let target = w.target_generators();
    let mut smallest = i64::MAX;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let g = rng.random_range(1..w.order());
        let c = normal_closure(&w, g);
        report.generators_used = report.generators_used.max(c.generators.len());
        smallest = smallest.min(c.elements.len() as i64);
        if let Some(&miss) = target.iter().find(|&&m| !c.contains(m)) {
            report.fail(format!("trial {t}: closure of {} misses {}", w.describe(g), w.describe(miss)));
        }
    }
    report.achieved = (trials > 0).then_some(smallest);
    Ok(report)
}

/// Rank over `F_p` of the rows, by elimination.
pub fn rank_mod_p(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else { continue };
        m.swap(rank, r);
        let inv = (1..p).find(|&x| m[rank][c] * x % p == 1).expect("field");
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] + (p - f) * m[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of `{t^k g : -N <= k <= N}` projected to the exponents
/// `[-N/2, N/2]`.
pub fn laurent_shift_rank(g: &LaurentElt, n: i64) -> Result<usize> {
    if g.is_zero() {
        return Err(Error::Precondition("g must be nonzero".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("window N must be at least 2".into()));
    }
    let (lo, hi) = (-n / 2, n / 2);
    let rows: Vec<Vec<u64>> = (-n..=n)
        .map(|k| {
            let s = shift_action(k, g);
            (lo..=hi).map(|e| s.coeff(e)).collect()
        })
        .collect();
    Ok(rank_mod_p(g.p, &rows))
}

/// For random nonzero `g` supported in `[-N/2, N/2]`, check that the shifts
/// of `g` span the window.
pub fn laurent_ideal_density(p: u64, n: i64, trials: usize, seed: u64) -> Result<ClosureReport> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if n < 2 {
        return Err(Error::Precondition("window N must be at least 2".into()));
    }
    let (lo, hi) = (-n / 2, n / 2);
    let dim = (hi - lo + 1) as i64;
    let mut report = ClosureReport::new("laurent", &[("p", p as i64), ("N", n), ("low", lo), ("high", hi), ("dimension", dim)]);
    report.seed = Some(seed);
    report.trials = trials;
    let mut worst = dim;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let g = loop {
            let terms: Vec<(i64, i64)> = (lo..=hi).map(|e| (e, rng.random_range(0..p) as i64)).collect();
            let g = LaurentElt::from_terms(p, &terms, 2 * n + 1)?;
            if !g.is_zero() {
                break g;
            }
        };
        let rank = laurent_shift_rank(&g, n)? as i64;
        report.generators_used = (2 * n + 1) as usize;
        worst = worst.min(rank);
        if rank != dim {
            report.fail(format!("trial {t}: g = {g} has shift rank {rank}"));
        }
    }
    report.achieved = Some(worst);
    Ok(report)
}

/// The closed `Z_p`-module generated by `{p^k a : |k| <= K}` is
/// `p^(v(a) - K) Z_p`; the achieved floor is the least valuation among the
/// generators, each of which must be a unit multiple of a power of `p`.
pub fn qp_semidirect_monolith(k: i64, a: &PAdic) -> Result<ClosureReport> {
    let p = a.p;
    let v = a.valuation().ok_or_else(|| Error::Precondition("a must be nonzero".into()))?;
    let mut report = ClosureReport::new("qp-semidirect", &[("p", p as i64), ("K", k), ("v(a)", v)]);
    let mut floor = i64::MAX;
    for j in -k..=k {
        let shift = PAdic::new(p, j, 1u32.into(), a.relative_precision().unwrap_or(1))?;
        let x = shift.mul(a)?;
        let vx = x.valuation().ok_or_else(|| Error::Precision("generator vanished".into()))?;
        if vx != v + j {
            report.fail(format!("p^{j} a has valuation {vx}"));
        }
        floor = floor.min(vx);
        report.generators_used += 1;
    }
    report.achieved = Some(floor);
    if floor != v - k {
        report.fail(format!("floor {floor} differs from v(a) - K = {}", v - k));
    }
    Ok(report)
}

/// Exact reduced row echelon basis over `Q`.
#[derive(Debug, Clone, Default)]
pub struct RationalSpan {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RationalSpan {
    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (c, r) in &self.rows {
            if !v[*c].is_zero() {
                let f = v[*c].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let v = self.reduce(v);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else { return false };
        let lead = v[c].clone();
        let v: Vec<BigRational> = v.iter().map(|x| x / &lead).collect();
        for (_, r) in self.rows.iter_mut() {
            if !r[c].is_zero() {
                let f = r[c].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((c, v));
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the `Q`-span of the orbit of `v` under the cyclic shift and
/// the diagonal scaling by `primes`.
pub fn hall_span_dimension(primes: &[u64], v: &[BigRational]) -> Result<usize> {
    let k = primes.len();
    if v.len() != k {
        return Err(Error::Dimension(format!("vector of length {} for window {k}", v.len())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("v must be nonzero".into()));
    }
    let shift = |x: &[BigRational]| -> Vec<BigRational> { (0..k).map(|i| x[(i + k - 1) % k].clone()).collect() };
    let scale = |x: &[BigRational]| -> Vec<BigRational> {
        x.iter().zip(primes).map(|(a, &p)| a * BigRational::from_integer(BigInt::from(p))).collect()
    };
    let mut span = RationalSpan::default();
    let mut queue = vec![v.to_vec()];
    // An invariant subspace of a finite-dimensional space is invariant
    // under the inverses too, so the generators suffice.
    while let Some(x) = queue.pop() {
        if span.insert(&x) {
            queue.push(shift(&x));
            queue.push(scale(&x));
        }
    }
    Ok(span.dim())
}

/// Hall window check for one vector.
pub fn hall_window_minimality(primes: &[u64], v: &[BigRational]) -> Result<ClosureReport> {
    let k = primes.len();
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct = sorted.len() == k;
    let mut report = ClosureReport::new("hall", &[("k", k as i64), ("distinct_primes", distinct as i64)]);
    let dim = hall_span_dimension(primes, v)?;
    report.generators_used = 2;
    report.achieved = Some(dim as i64);
    if dim != k {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        report.fail(format!("orbit of ({}) spans dimension {dim}", shown.join(", ")));
    }
    Ok(report)
}

/// Random Hall trials: integer vectors with entries in `[-bound, bound]`.
pub fn hall_trials(primes: &[u64], trials: usize, bound: i64, seed: u64) -> Result<ClosureReport> {
    let k = primes.len();
    let mut report = ClosureReport::new("hall", &[("k", k as i64), ("bound", bound)]);
    report.seed = Some(seed);
    report.trials = trials;
    let mut worst = k as i64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let v = loop {
            let v: Vec<BigRational> =
                (0..k).map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-bound..=bound)))).collect();
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        };
        let r = hall_window_minimality(primes, &v)?;
        report.window.extend(r.window.clone());
        report.generators_used = 2;
        worst = worst.min(r.achieved.unwrap_or(0));
        if let Some(w) = r.witness {
            report.fail(format!("trial {t}: {w}"));
        }
    }
    report.achieved = Some(worst);
    Ok(report)
}

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn identity_matrix(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum()).collect())
        .collect()
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn mat_inverse(a: &RatMatrix) -> Result<RatMatrix> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(identity_matrix(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for c in 0..n {
        let r = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::Singular)?;
        m.swap(c, r);
        let lead = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &lead;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn denominator_primes(m: &RatMatrix) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for x in m.iter().flatten() {
        let d = x.denom().abs().to_u64().ok_or_else(|| Error::Malformed(format!("denominator of {x} too large")))?;
        out.extend(prime_factors(d));
    }
    Ok(out)
}

/// Certificate that the `Z[M_i^+-1]`-module generated by the standard basis
/// has coefficients in `Z[1/p : p in prime_set]`, hence misses `1/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoGoCertificate {
    pub prime_set: Vec<u64>,
    pub excluded_prime: u64,
    pub matrices: Vec<RatMatrix>,
    pub inverses: Vec<RatMatrix>,
    pub statement: String,
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect())).collect())
}

impl NoGoCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "prime_set": self.prime_set,
            "excluded_prime": self.excluded_prime,
            "matrices": self.matrices.iter().map(matrix_json).collect::<Vec<_>>(),
            "inverses": self.inverses.iter().map(matrix_json).collect::<Vec<_>>(),
            "statement": self.statement,
        })
    }

    /// All generators and their inverses.
    pub fn alphabet(&self) -> Vec<&RatMatrix> {
        self.matrices.iter().chain(&self.inverses).collect()
    }
}

pub fn rational_no_go(matrices: &[RatMatrix]) -> Result<NoGoCertificate> {
    let n = matrices.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::Precondition("need at least one nonempty matrix".into()));
    }
    let mut inverses = Vec::new();
    let mut primes = Vec::new();
    for m in matrices {
        if m.len() != n {
            return Err(Error::Dimension("matrices of different sizes".into()));
        }
        let inv = mat_inverse(m)?;
        primes.extend(denominator_primes(m)?);
        primes.extend(denominator_primes(&inv)?);
        inverses.push(inv);
    }
    primes.sort_unstable();
    primes.dedup();
    let q = smallest_prime_not_in(&primes);
    let shown: Vec<String> = primes.iter().map(u64::to_string).collect();
    let statement = format!(
        "every word in the generators and inverses maps Z[1/{{{}}}]^{n} into itself, so the generated module is proper and 1/{q} is not reached",
        shown.join(",")
    );
    Ok(NoGoCertificate { prime_set: primes, excluded_prime: q, matrices: matrices.to_vec(), inverses, statement })
}

// An integer matrix over a common denominator.
struct Scaled {
    num: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl Scaled {
    fn from_rational(m: &RatMatrix) -> Scaled {
        let den = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = m.iter().map(|r| r.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect();
        Scaled { num, den }
    }

    fn identity(n: usize) -> Scaled {
        let num = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        Scaled { num, den: BigInt::one() }
    }

    fn mul(&self, other: &Scaled) -> Scaled {
        let n = self.num.len();
        let mut num: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &self.num[i][k] * &other.num[k][j]).sum()).collect())
            .collect();
        let mut den = &self.den * &other.den;
        let g = num.iter().flatten().fold(den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            num.iter_mut().flatten().for_each(|x| *x /= &g);
            den /= &g;
        }
        Scaled { num, den }
    }

    fn denominator_divisible_by(&self, q: &BigInt) -> bool {
        self.num.iter().flatten().any(|x| (&self.den / self.den.gcd(x)).is_multiple_of(q))
    }
}

/// Spot check: random words of length `1..=max_len` have no denominator
/// divisible by the excluded prime. Returns the first offending word.
pub fn check_words(cert: &NoGoCertificate, words: usize, max_len: usize, rng: &mut impl Rng) -> Option<String> {
    let alphabet: Vec<Scaled> = cert.alphabet().into_iter().map(Scaled::from_rational).collect();
    let n = cert.matrices[0].len();
    let q = BigInt::from(cert.excluded_prime);
    for _ in 0..words {
        let len = rng.random_range(1..=max_len);
        let mut w = Scaled::identity(n);
        let mut letters = Vec::new();
        for _ in 0..len {
            let i = rng.random_range(0..alphabet.len());
            letters.push(i);
            w = w.mul(&alphabet[i]);
        }
        if w.denominator_divisible_by(&q) {
            return Some(format!("word {letters:?}"));
        }
    }
    None
}

/// Checks of the diagonal subgroups `L_l = {(a, l a)}` of `Q_p x Q_p`
/// under `s = multiplication by p` and `Z_p`-scaling.
pub fn diagonal_minimals(p: u64, lambdas: &[PAdic], k: i64, precision: u32) -> Result<ClosureReport> {
    for l in lambdas {
        if l.p != p {
            return Err(Error::PrimeMismatch(p, l.p));
        }
    }
    for (i, a) in lambdas.iter().enumerate() {
        for b in &lambdas[..i] {
            if a.congruent(b)? {
                return Err(Error::Duplicate(format!("{a} and {b} agree at precision")));
            }
        }
    }
    let mut report = ClosureReport::new(
        "diagonals",
        &[("p", p as i64), ("K", k), ("M", precision as i64), ("count", lambdas.len() as i64)],
    );
    let member = |l: &PAdic, x: &PAdic, y: &PAdic| -> Result<bool> { Ok(y.sub(&l.mul(x)?)?.is_zero()) };
    let scalars = [PAdic::from_int(p, 1, precision)?, PAdic::from_int(p, -1, precision)?, PAdic::from_int(p, (p + 1) as i64, precision)?];
    let base = [
        PAdic::from_int(p, 1, precision)?,
        PAdic::new(p, -1, 1u32.into(), precision)?,
        PAdic::from_int(p, (2 * p + 1) as i64, precision)?,
    ];
    let mut verified = 0;
    for (i, l) in lambdas.iter().enumerate() {
        let mut ok = true;
        for a in &base {
            let la = l.mul(a)?;
            // s-invariance and Z_p-scaling
            let mut floor = i64::MAX;
            for j in -k..=k {
                let pj = PAdic::new(p, j, 1u32.into(), precision)?;
                for c in &scalars {
                    let f = pj.mul(c)?;
                    let x = f.mul(a)?;
                    let y = f.mul(&la)?;
                    if !member(l, &x, &y)? {
                        ok = false;
                        report.fail(format!("lambda #{i}: p^{j} * {c} * (a, la) left L for a = {a}"));
                    }
                    if let Some(v) = x.valuation() {
                        floor = floor.min(v);
                    }
                }
                report.generators_used += 1;
            }
            let expect = a.valuation().unwrap_or(0) - k;
            if floor != expect {
                ok = false;
                report.fail(format!("lambda #{i}: floor {floor} differs from {expect}"));
            }
        }
        // distinctness: (1, l) lies in L_l but in no other L_m
        let one = PAdic::from_int(p, 1, precision)?;
        for (j, m) in lambdas.iter().enumerate() {
            if i != j && member(m, &one, l)? {
                ok = false;
                report.fail(format!("(1, lambda #{i}) lies in L for lambda #{j}"));
            }
        }
        if ok {
            verified += 1;
        }
    }
    report.achieved = Some(verified);
    Ok(report)
}
