//! Linear algebra over `Z_p` at precision `p^M`: triangular bases, purity,
//! direct-summand completion and roots of elements.
//!
//! Vectors are rows of integers reduced into `[0, p^M)`. Anything that would
//! depend on digits at or beyond `p^M` is reported as a precision error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::primes::is_prime;

pub const DEFAULT_PRECISION: u32 = 32;

pub type Vector = Vec<BigInt>;

/// The ring `Z/p^M`, viewed as `Z_p` at precision `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zp {
    pub p: u64,
    pub m: u32,
    modulus: BigInt,
}

impl Zp {
    pub fn new(p: u64, m: u32) -> Result<Zp> {
        if !is_prime(p) {
            return Err(Error::Malformed(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Precision("precision must be positive".into()));
        }
        Ok(Zp { p, m, modulus: BigInt::from(p).pow(m) })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.modulus)
    }

    pub fn reduce_vec(&self, v: &[BigInt]) -> Vector {
        v.iter().map(|x| self.reduce(x)).collect()
    }

    /// Valuation of a residue; `M` for zero.
    pub fn val(&self, x: &BigInt) -> u32 {
        let x = self.reduce(x);
        if x.is_zero() {
            return self.m;
        }
        let bp = BigInt::from(self.p);
        let mut k = 0;
        let mut y = x;
        while (&y % &bp).is_zero() {
            y /= &bp;
            k += 1;
        }
        k
    }

    pub fn is_unit(&self, x: &BigInt) -> bool {
        self.val(x) == 0
    }

    pub fn inv(&self, x: &BigInt) -> Result<BigInt> {
        let e = self.reduce(x).extended_gcd(&self.modulus);
        if !e.gcd.is_one() {
            return Err(Error::Precision(format!("{x} is not a unit mod {}^{}", self.p, self.m)));
        }
        Ok(self.reduce(&e.x))
    }

    fn pow_p(&self, k: u32) -> BigInt {
        BigInt::from(self.p).pow(k)
    }

    /// Splits `x = p^k u` with `u` a unit (as an integer representative).
    fn split(&self, x: &BigInt) -> (u32, BigInt) {
        let k = self.val(x);
        (k, self.reduce(x) / self.pow_p(k))
    }

    pub fn vec_val(&self, v: &[BigInt]) -> u32 {
        v.iter().map(|x| self.val(x)).min().unwrap_or(self.m)
    }

    pub fn is_zero_vec(&self, v: &[BigInt]) -> bool {
        self.vec_val(v) >= self.m
    }

    /// `a - c * b`, reduced.
    fn axpy(&self, a: &[BigInt], c: &BigInt, b: &[BigInt]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.reduce(&(x - c * y))).collect()
    }

    fn scale(&self, c: &BigInt, v: &[BigInt]) -> Vector {
        v.iter().map(|x| self.reduce(&(c * x))).collect()
    }
}

/// A list of integral row vectors at a fixed precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpMatrix {
    pub ring: Zp,
    pub cols: usize,
    pub rows: Vec<Vector>,
}

impl ZpMatrix {
    pub fn new(ring: Zp, cols: usize, rows: Vec<Vector>) -> Result<ZpMatrix> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in ambient rank {cols}", r.len())));
        }
        let rows = rows.iter().map(|r| ring.reduce_vec(r)).collect();
        Ok(ZpMatrix { ring, cols, rows })
    }

    pub fn from_i64(p: u64, m: u32, cols: usize, rows: &[Vec<i64>]) -> Result<ZpMatrix> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        ZpMatrix::new(Zp::new(p, m)?, cols, rows)
    }

    /// Rows from a JSON array of arrays of integer strings (numbers accepted).
    pub fn from_json(p: u64, m: u32, cols: Option<usize>, v: &Value) -> Result<ZpMatrix> {
        let bad = |what: &str| Error::Malformed(format!("matrix: {what}"));
        let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
        let mut out = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            let mut r = Vec::new();
            for x in row {
                let n: BigInt = match x {
                    Value::String(s) => s.trim().parse().map_err(|_| bad(&format!("bad integer {s:?}")))?,
                    Value::Number(n) => n.to_string().parse().map_err(|_| bad(&format!("bad integer {n}")))?,
                    other => return Err(bad(&format!("bad entry {other}"))),
                };
                r.push(n);
            }
            out.push(r);
        }
        let cols = cols.or_else(|| out.first().map(Vec::len)).unwrap_or(0);
        ZpMatrix::new(Zp::new(p, m)?, cols, out)
    }

    pub fn to_json(&self) -> Value {
        vectors_json(&self.rows)
    }
}

pub fn vectors_json(rows: &[Vector]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect())).collect())
}

/// A basis of a submodule with a coordinate reordering. When
/// `triangular_certificate` is set, `vectors[i][permutation[j]]` is zero for
/// `j < i` and one for `j == i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpBasis {
    pub vectors: Vec<Vector>,
    /// `permutation[j]` is the ambient coordinate placed at position `j`.
    pub permutation: Vec<usize>,
    pub triangular_certificate: bool,
}

impl ZpBasis {
    /// The vectors with coordinates reordered by the permutation.
    pub fn permuted(&self) -> Vec<Vector> {
        self.vectors.iter().map(|v| self.permutation.iter().map(|&j| v[j].clone()).collect()).collect()
    }

    /// Re-check the triangular shape.
    pub fn is_triangular(&self) -> bool {
        self.permuted().iter().enumerate().all(|(i, v)| v[..i].iter().all(Zero::is_zero) && v[i].is_one())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vectors": vectors_json(&self.vectors),
            "permutation": self.permutation,
            "triangular": self.triangular_certificate,
        })
    }
}

/// Triangular basis by the inductive procedure: clear the coordinates of the
/// earlier pivots, find the lowest-index unit coefficient among the remaining
/// coordinates, scale it to one and move it into pivot position.
pub fn triangular_basis(sub: &ZpMatrix) -> Result<ZpBasis> {
    let zp = &sub.ring;
    let n = sub.cols;
    if sub.rows.len() > n {
        return Err(Error::Dependent);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut basis: Vec<Vector> = Vec::new();
    for (step, a) in sub.rows.iter().enumerate() {
        let mut a = a.clone();
        for (i, b) in basis.iter().enumerate() {
            let c = a[perm[i]].clone();
            if !c.is_zero() {
                a = zp.axpy(&a, &c, b);
            }
        }
        let pivot = (step..n).find(|&k| zp.is_unit(&a[perm[k]]));
        let Some(k) = pivot else {
            return Err(if zp.is_zero_vec(&a) { Error::Dependent } else { Error::NoUnitPivot(step) });
        };
        let s = zp.inv(&a[perm[k]])?;
        a = zp.scale(&s, &a);
        perm.swap(step, k);
        basis.push(a);
    }
    let out = ZpBasis { vectors: basis, permutation: perm, triangular_certificate: true };
    debug_assert!(out.is_triangular());
    Ok(out)
}

/// Diagonal reduction `D = U B V` with `U`, `V` invertible, by
/// minimal-valuation pivoting.
#[derive(Debug, Clone)]
struct Smith {
    /// Pivot values; `rank` of them are nonzero mod `p^M`.
    diag: Vec<BigInt>,
    rank: usize,
    u: Vec<Vector>,
    v: Vec<Vector>,
}

fn identity(n: usize) -> Vec<Vector> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn smith(zp: &Zp, rows: &[Vector], cols: usize) -> Smith {
    let r = rows.len();
    let mut a: Vec<Vector> = rows.to_vec();
    let mut u = identity(r);
    let mut v = identity(cols);
    let mut rank = 0;
    for t in 0..r.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                let k = zp.val(x);
                if k < zp.m && best.is_none_or(|b| k < b.0) {
                    best = Some((k, i, j));
                }
            }
        }
        let Some((k, i, j)) = best else { break };
        a.swap(t, i);
        u.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        for row in v.iter_mut() {
            row.swap(t, j);
        }
        let (_, unit) = zp.split(&a[t][t]);
        let uinv = zp.inv(&unit).expect("unit");
        let pk = zp.pow_p(k);
        for i in t + 1..r {
            if a[i][t].is_zero() {
                continue;
            }
            let f = zp.reduce(&(&a[i][t] / &pk * &uinv));
            a[i] = zp.axpy(&a[i], &f, &a[t]);
            u[i] = zp.axpy(&u[i], &f, &u[t]);
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = zp.reduce(&(&a[t][j] / &pk * &uinv));
            for row in a.iter_mut() {
                row[j] = zp.reduce(&(&row[j] - &f * &row[t]));
            }
            for row in v.iter_mut() {
                row[j] = zp.reduce(&(&row[j] - &f * &row[t]));
            }
        }
        rank += 1;
    }
    let diag = (0..r.min(cols)).map(|t| a[t][t].clone()).collect();
    Smith { diag, rank, u, v }
}

/// Elementary valuations of the submodule spanned by the rows; `M` marks a
/// diagonal entry that vanishes at precision.
pub fn elementary_valuations(sub: &ZpMatrix) -> Vec<u32> {
    let s = smith(&sub.ring, &sub.rows, sub.cols);
    let mut vals: Vec<u32> = s.diag.iter().map(|d| sub.ring.val(d)).collect();
    vals.extend(std::iter::repeat_n(sub.ring.m, sub.rows.len().saturating_sub(sub.cols)));
    vals
}

/// Purity: `H` is pure iff all its elementary valuations are zero, i.e. a
/// basis has full rank mod `p`.
pub fn is_pure(sub: &ZpMatrix) -> Result<bool> {
    let vals = elementary_valuations(sub);
    if let Some(i) = vals.iter().position(|&v| v >= sub.ring.m) {
        return Err(Error::Precision(format!("pivot {i} vanishes modulo {}^{}", sub.ring.p, sub.ring.m)));
    }
    Ok(vals.iter().all(|&v| v == 0))
}

/// Complete a pure submodule to a basis of the ambient module: the
/// triangular basis of `sub` followed by the ambient unit vectors at the
/// non-pivot positions.
pub fn complete_to_summand(sub: &ZpMatrix) -> Result<ZpBasis> {
    if !is_pure(sub)? {
        return Err(Error::Impure);
    }
    let mut basis = triangular_basis(sub)?;
    let r = basis.vectors.len();
    for j in r..sub.cols {
        let mut e = vec![BigInt::zero(); sub.cols];
        e[basis.permutation[j]] = BigInt::one();
        basis.vectors.push(e);
    }
    Ok(basis)
}

/// Coefficients `x` with `x * B = v` at precision `p^prec`, if any.
pub fn solve_in_span(zp: &Zp, rows: &[Vector], cols: usize, v: &[BigInt]) -> Result<Option<Vector>> {
    if v.len() != cols {
        return Err(Error::Dimension(format!("vector of length {} in ambient rank {cols}", v.len())));
    }
    let s = smith(zp, rows, cols);
    // w = v V
    let w: Vector = (0..cols)
        .map(|j| zp.reduce(&(0..cols).map(|i| &v[i] * &s.v[i][j]).sum::<BigInt>()))
        .collect();
    let mut y = vec![BigInt::zero(); rows.len()];
    for (t, wt) in w.iter().enumerate() {
        if t < s.rank {
            let (k, unit) = zp.split(&s.diag[t]);
            if zp.val(wt) < k {
                return Ok(None);
            }
            y[t] = zp.reduce(&(wt / zp.pow_p(k) * zp.inv(&unit)?));
        } else if !wt.is_zero() {
            return Ok(None);
        }
    }
    // x = y U
    let x = (0..rows.len())
        .map(|j| zp.reduce(&(0..rows.len()).map(|i| &y[i] * &s.u[i][j]).sum::<BigInt>()))
        .collect();
    Ok(Some(x))
}

pub fn in_span(sub: &ZpMatrix, v: &[BigInt]) -> Result<bool> {
    Ok(solve_in_span(&sub.ring, &sub.rows, sub.cols, &sub.ring.reduce_vec(v))?.is_some())
}

/// A root `w` of `v` in the span of `sub`: `n * w = v`. The root is known
/// modulo `p^(M - e)` where `p^e` is the p-part of `n`.
pub fn has_root(v: &[BigInt], n: u64, sub: &ZpMatrix) -> Result<Option<Vector>> {
    let zp = &sub.ring;
    if n == 0 {
        return Err(Error::Precondition("root order must be positive".into()));
    }
    let (mut e, mut rest) = (0u32, n);
    while rest % zp.p == 0 {
        rest /= zp.p;
        e += 1;
    }
    if e >= zp.m {
        return Err(Error::Precision(format!("{n} has p-part beyond {}^{}", zp.p, zp.m)));
    }
    let v = zp.reduce_vec(v);
    if zp.vec_val(&v) < e {
        return Ok(None);
    }
    let low = Zp::new(zp.p, zp.m - e)?;
    let pe = zp.pow_p(e);
    let rest_inv = low.inv(&BigInt::from(rest))?;
    let w: Vector = v.iter().map(|x| low.reduce(&(x / &pe * &rest_inv))).collect();
    let rows: Vec<Vector> = sub.rows.iter().map(|r| low.reduce_vec(r)).collect();
    if solve_in_span(&low, &rows, sub.cols, &w)?.is_none() {
        return Ok(None);
    }
    Ok(Some(w))
}

/// Determinant of a square matrix modulo `p^M` (cofactor expansion; small
/// sizes only).
pub fn determinant(zp: &Zp, m: &[Vector]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return zp.reduce(&m[0][0]);
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vector> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * determinant(zp, &minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    zp.reduce(&acc)
}
