//! Brute-force facts about submodules of `(Z/p^m)^n` for small `p^m` and
//! `n`, by enumerating residues.

use lcagroups::zpmodule::{complete_to_summand, is_pure, triangular_basis, ZpMatrix};
use lcagroups::error::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

type Vec3 = [u64; 3];

pub struct Residues {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub n: usize,
}

impl Residues {
    pub fn new(p: u64, m: u32, n: usize) -> Residues {
        Residues { p, m, q: p.pow(m), n }
    }

    fn encode(&self, v: &Vec3) -> usize {
        v[..self.n].iter().fold(0usize, |acc, &x| acc * self.q as usize + x as usize)
    }

    fn decode(&self, mut code: usize) -> Vec3 {
        let mut v = [0; 3];
        for i in (0..self.n).rev() {
            v[i] = (code % self.q as usize) as u64;
            code /= self.q as usize;
        }
        v
    }

    fn pad(&self, g: &[u64]) -> Vec3 {
        let mut v = [0; 3];
        v[..g.len()].copy_from_slice(g);
        v
    }

    /// Every combination `sum c_i g_i` with its coefficient vector.
    fn combinations(&self, gens: &[Vec<u64>], mut f: impl FnMut(&[u64], &Vec3)) {
        let gens: Vec<Vec3> = gens.iter().map(|g| self.pad(g)).collect();
        let r = gens.len();
        let total = (self.q as usize).pow(r as u32);
        let mut coeffs = vec![0u64; r];
        for code in 0..total {
            let mut c = code;
            let mut v = [0u64; 3];
            for (xi, g) in coeffs.iter_mut().zip(&gens) {
                *xi = (c % self.q as usize) as u64;
                c /= self.q as usize;
                for j in 0..3 {
                    v[j] += *xi * g[j];
                }
            }
            for x in v.iter_mut() {
                *x %= self.q;
            }
            f(&coeffs, &v);
        }
    }

    /// Sorted codes of the elements of the span of `gens`.
    pub fn span(&self, gens: &[Vec<u64>]) -> Vec<usize> {
        let mut codes = Vec::new();
        self.combinations(gens, |_, v| codes.push(self.encode(v)));
        codes.sort_unstable();
        codes.dedup();
        codes
    }

    /// `H` meets `p^k U` exactly in `p^k H` for every `k < m`. Since
    /// `p^k H` always lies in the intersection, comparing sizes suffices.
    pub fn pure(&self, gens: &[Vec<u64>]) -> bool {
        let h: Vec<Vec3> = self.span(gens).into_iter().map(|c| self.decode(c)).collect();
        (1..self.m).all(|k| {
            let pk = self.p.pow(k);
            let meet = h.iter().filter(|v| v.iter().all(|x| x % pk == 0)).count();
            let mut scaled: Vec<usize> = h.iter().map(|v| self.encode(&v.map(|x| x * pk % self.q))).collect();
            scaled.sort_unstable();
            scaled.dedup();
            meet == scaled.len()
        })
    }

    /// Some relation `sum x_i g_i = 0` with a unit coefficient: at this
    /// precision the generators do not look free.
    pub fn deficient(&self, gens: &[Vec<u64>]) -> bool {
        let mut found = false;
        self.combinations(gens, |x, v| {
            found |= v.iter().all(|&a| a == 0) && x.iter().any(|xi| xi % self.p != 0);
        });
        found
    }

    /// Every Hermite-form generator list of rank `r`: pivots `p^e` with
    /// `e < m`, zeros left of each pivot, entries above later pivots
    /// reduced modulo those pivots.
    pub fn hermite_generators(&self, r: usize) -> Vec<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        for pivots in combinations(self.n, r) {
            for exps in (0..(self.m as usize).pow(r as u32)).map(|c| digits(c, self.m as usize, r)) {
                // (row, col, range) for each free slot
                let mut slots = Vec::new();
                for (i, &ci) in pivots.iter().enumerate() {
                    for col in ci + 1..self.n {
                        let range = match pivots.iter().position(|&c| c == col) {
                            Some(j) => self.p.pow(exps[j] as u32),
                            None => self.q,
                        };
                        slots.push((i, col, range));
                    }
                }
                let mut values = vec![0u64; slots.len()];
                loop {
                    let mut rows = vec![vec![0u64; self.n]; r];
                    for (i, &ci) in pivots.iter().enumerate() {
                        rows[i][ci] = self.p.pow(exps[i] as u32);
                    }
                    for (&(i, col, _), &v) in slots.iter().zip(&values) {
                        rows[i][col] = v;
                    }
                    out.push(rows);
                    // odometer
                    let mut k = 0;
                    while k < slots.len() {
                        values[k] += 1;
                        if values[k] < slots[k].2 {
                            break;
                        }
                        values[k] = 0;
                        k += 1;
                    }
                    if k == slots.len() {
                        break;
                    }
                }
            }
        }
        out
    }
}

fn digits(mut c: usize, base: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for x in d.iter_mut() {
        *x = c % base;
        c /= base;
    }
    d
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combinations(n, r - 1) {
            if rest.first().is_none_or(|&x| x > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

/// Determinant modulo a small prime by the permutation expansion.
pub fn det_mod_p(p: u64, m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    let mut total = 0u64;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm: &[usize]| {
        let mut sign_neg = false;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    sign_neg = !sign_neg;
                }
            }
        }
        let prod = (0..n).fold(1u64, |acc, i| acc * m[i][perm[i]] % p);
        total = (total + if sign_neg { p - prod } else { prod }) % p;
    });
    total % p
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

pub fn to_u64_rows(rows: &[Vec<BigInt>], modulus: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.mod_floor_u64(modulus)).collect())
        .collect()
}

trait ModFloor {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        let m = BigInt::from(m);
        (((self % &m) + &m) % &m).to_u64().unwrap()
    }
}

/// Apply a random unimodular change of generators: swaps, unit scalings
/// and elementary additions modulo `q`.
pub fn scramble(rng: &mut impl Rng, p: u64, q: u64, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut g = gens.to_vec();
    let r = g.len();
    for _ in 0..3 {
        if r >= 2 {
            let (i, j) = (rng.random_range(0..r), rng.random_range(0..r));
            if i != j {
                let c = rng.random_range(0..q);
                let src = g[j].clone();
                for (a, b) in g[i].iter_mut().zip(&src) {
                    *a = (*a + c * b) % q;
                }
                g.swap(i, j);
            }
        }
        let i = rng.random_range(0..r);
        let unit = loop {
            let u = rng.random_range(1..q);
            if u % p != 0 {
                break u;
            }
        };
        for a in g[i].iter_mut() {
            *a = *a * unit % q;
        }
    }
    g
}

/// Outcome of checking one generator list against the residue oracle.
#[derive(Debug, Default, Clone, Copy)]
pub struct OracleTally {
    pub cases: usize,
    pub pure: usize,
    pub impure: usize,
    pub beyond_precision: usize,
}

/// Compare the library's purity test, triangular basis and completion with
/// the brute-force facts. Returns a description of the first disagreement.
pub fn check_against_oracle(res: &Residues, gens: &[Vec<u64>], tally: &mut OracleTally) -> Result<(), String> {
    tally.cases += 1;
    let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
    let sub = ZpMatrix::from_i64(res.p, res.m, res.n, &rows).map_err(|e| e.to_string())?;
    let span = res.span(gens);
    let ctx = |what: &str| format!("{what} for p={} gens={gens:?}", res.p);

    if res.deficient(gens) {
        tally.beyond_precision += 1;
        if !matches!(is_pure(&sub), Err(Error::Precision(_))) {
            return Err(ctx("expected a precision error from is_pure"));
        }
        if triangular_basis(&sub).is_ok() {
            return Err(ctx("triangular basis of a deficient list"));
        }
        return Ok(());
    }
    let pure = res.pure(gens);
    if is_pure(&sub) != Ok(pure) {
        return Err(ctx(&format!("is_pure disagrees with oracle {pure}")));
    }
    let tri = triangular_basis(&sub);
    if pure != tri.is_ok() {
        return Err(ctx("triangular basis exists exactly for pure lists"));
    }
    let complete = complete_to_summand(&sub);
    if !pure {
        tally.impure += 1;
        if !matches!(complete, Err(Error::Impure)) {
            return Err(ctx("completion of an impure module"));
        }
        return Ok(());
    }
    tally.pure += 1;
    let tri = tri.unwrap();
    let tri_rows = to_u64_rows(&tri.vectors, res.q);
    if res.span(&tri_rows) != span {
        return Err(ctx("triangular basis changes the span"));
    }
    for (i, v) in tri_rows.iter().enumerate() {
        for j in 0..=i {
            let want = u64::from(i == j);
            if v[tri.permutation[j]] != want {
                return Err(ctx("triangular shape violated"));
            }
        }
    }
    let full = to_u64_rows(&complete.map_err(|e| ctx(&e.to_string()))?.vectors, res.q);
    if res.span(&full[..gens.len()]) != span {
        return Err(ctx("completion does not start with a basis of H"));
    }
    let modp: Vec<Vec<u64>> = full.iter().map(|r| r.iter().map(|x| x % res.p).collect()).collect();
    if full.len() != res.n || det_mod_p(res.p, &modp) == 0 {
        return Err(ctx("completion is not an ambient basis"));
    }
    Ok(())
}
