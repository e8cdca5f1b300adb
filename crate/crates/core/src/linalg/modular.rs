//! Multi-modular elimination with exact certification.
//!
//! Ranks modulo a prime never exceed the rational rank. An echelon form is
//! lifted from residues by rational reconstruction and accepted only after
//! every input row reduces to zero against it over the rationals. A bare rank
//! is accepted once the primes used outweigh the Hadamard bound on the
//! maximal minors, or as soon as it reaches the trivial upper bound.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Rational, SparseEchelon, SparseRow};

/// Below this many matrix cells the plain rational elimination is used.
const SMALL: usize = 4096;
const BATCH: usize = 4;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The largest primes below `2^62`, descending.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n = (1u64 << 62) - 1;
        while out.len() < 256 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

type IntRow = Vec<(usize, BigInt)>;

/// Each row scaled by the lcm of its denominators.
fn scaled(rows: &[SparseRow]) -> Vec<IntRow> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
            row.iter()
                .map(|(c, x)| (*c, x.numer() * (&l / x.denom())))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form modulo `p`: pivot columns and their dense rows.
struct ModEchelon {
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

fn echelon_mod(rows: &[IntRow], ncols: usize, p: u64) -> ModEchelon {
    let big_p = BigInt::from(p);
    let mut slot: Vec<Option<usize>> = vec![None; ncols];
    let mut dense: Vec<Vec<u64>> = Vec::new();
    for row in rows {
        if dense.len() == ncols {
            break;
        }
        let mut buf = vec![0u64; ncols];
        for (c, x) in row {
            let r = x.mod_floor(&big_p).to_u64().expect("residue fits");
            buf[*c] = (buf[*c] + r) % p;
        }
        for c in 0..ncols {
            if buf[c] == 0 {
                continue;
            }
            if let Some(k) = slot[c] {
                let f = buf[c];
                let prow = &dense[k];
                for t in c..ncols {
                    if prow[t] != 0 {
                        buf[t] = (buf[t] + p - mul_mod(f, prow[t], p)) % p;
                    }
                }
            }
        }
        let Some(lead) = (0..ncols).find(|&c| buf[c] != 0) else {
            continue;
        };
        let inv = inv_mod(buf[lead], p);
        for x in buf[lead..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for other in dense.iter_mut() {
            let f = other[lead];
            if f != 0 {
                for t in lead..ncols {
                    if buf[t] != 0 {
                        other[t] = (other[t] + p - mul_mod(f, buf[t], p)) % p;
                    }
                }
            }
        }
        slot[lead] = Some(dense.len());
        dense.push(buf);
    }
    let mut pivots: Vec<usize> = (0..ncols).filter(|&c| slot[c].is_some()).collect();
    pivots.sort_unstable();
    let rows = pivots.iter().map(|&c| std::mem::take(&mut dense[slot[c].unwrap()])).collect();
    ModEchelon { pivots, rows }
}

/// Smallest-height rational congruent to `a` modulo `m`, if one is small enough to be unique.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Pivot sets from unlucky primes are dominated by the rational pivot set.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

struct Lift {
    pivots: Vec<usize>,
    free: Vec<usize>,
    residues: Vec<BigInt>,
    modulus: BigInt,
}

impl Lift {
    fn new(e: &ModEchelon, ncols: usize, p: u64) -> Self {
        let free: Vec<usize> = (0..ncols).filter(|c| e.pivots.binary_search(c).is_err()).collect();
        let residues = e
            .rows
            .iter()
            .flat_map(|row| free.iter().map(move |&f| BigInt::from(row[f])))
            .collect();
        Self {
            pivots: e.pivots.clone(),
            free,
            residues,
            modulus: BigInt::from(p),
        }
    }

    fn absorb(&mut self, e: &ModEchelon, p: u64) {
        let big_p = BigInt::from(p);
        let inv = inv_mod((&self.modulus % &big_p).to_u64().expect("fits"), p);
        let mut idx = 0;
        for row in &e.rows {
            for &f in &self.free {
                let a = &self.residues[idx];
                let a_p = (a % &big_p).to_u64().expect("fits");
                let delta = mul_mod((row[f] + p - a_p) % p, inv, p);
                self.residues[idx] = a + &self.modulus * delta;
                idx += 1;
            }
        }
        self.modulus *= big_p;
    }

    fn candidate(&self, ncols: usize) -> Option<SparseEchelon> {
        let mut e = SparseEchelon::new(ncols);
        let width = self.free.len();
        for (k, &c) in self.pivots.iter().enumerate() {
            let mut row: SparseRow = vec![(c, Rational::one())];
            for (t, &f) in self.free.iter().enumerate() {
                let x = reconstruct(&self.residues[k * width + t], &self.modulus)?;
                if !x.is_zero() {
                    if f < c {
                        return None;
                    }
                    row.push((f, x));
                }
            }
            row.sort_by_key(|(col, _)| *col);
            e.install(c, row);
        }
        Some(e)
    }
}

fn incremental(ncols: usize, rows: Vec<SparseRow>) -> SparseEchelon {
    let mut e = SparseEchelon::new(ncols);
    for row in rows {
        if e.rank() == ncols {
            break;
        }
        e.insert(row);
    }
    e
}

fn full_rank(ncols: usize) -> SparseEchelon {
    let mut e = SparseEchelon::new(ncols);
    for c in 0..ncols {
        e.install(c, vec![(c, Rational::one())]);
    }
    e
}

/// Exact reduced echelon basis of the span of `rows`.
pub(super) fn echelon(ncols: usize, rows: Vec<SparseRow>) -> SparseEchelon {
    let rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    if rows.len() * ncols <= SMALL {
        return incremental(ncols, rows);
    }
    let ints = scaled(&rows);
    let mut lift: Option<Lift> = None;
    for batch in primes().chunks(BATCH) {
        let results: Vec<(u64, ModEchelon)> =
            batch.par_iter().map(|&p| (p, echelon_mod(&ints, ncols, p))).collect();
        for (p, e) in results {
            if e.pivots.len() == ncols {
                return full_rank(ncols);
            }
            match &mut lift {
                Some(l) if l.pivots == e.pivots => l.absorb(&e, p),
                Some(l) if !better(&e.pivots, &l.pivots) => {}
                _ => lift = Some(Lift::new(&e, ncols, p)),
            }
        }
        let l = lift.as_ref().expect("at least one prime");
        if let Some(cand) = l.candidate(ncols) {
            if rows.iter().all(|r| cand.contains(r.iter().cloned())) {
                return cand;
            }
        }
    }
    incremental(ncols, rows)
}

/// Upper bound on `log2` of any `k x k` minor.
fn hadamard_bits(rows: &[IntRow], ncols: usize, k: usize) -> f64 {
    let log_norm = |len: usize, bits: u64| 0.5 * (len.max(1) as f64).log2() + bits as f64;
    let mut by_row: Vec<f64> = rows
        .iter()
        .map(|r| log_norm(r.len(), r.iter().map(|(_, x)| x.bits()).max().unwrap_or(0)))
        .collect();
    let mut col_len = vec![0usize; ncols];
    let mut col_bits = vec![0u64; ncols];
    for r in rows {
        for (c, x) in r {
            col_len[*c] += 1;
            col_bits[*c] = col_bits[*c].max(x.bits());
        }
    }
    let mut by_col: Vec<f64> = (0..ncols).map(|c| log_norm(col_len[c], col_bits[c])).collect();
    let top = |v: &mut Vec<f64>| {
        v.sort_by(|a, b| b.total_cmp(a));
        v.iter().take(k).map(|x| x.max(0.0)).sum::<f64>()
    };
    top(&mut by_row).min(top(&mut by_col))
}

/// Exact rank of the span of `rows`.
pub(super) fn rank(ncols: usize, rows: Vec<SparseRow>) -> usize {
    let rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    if rows.len() * ncols <= SMALL {
        return incremental(ncols, rows).rank();
    }
    let ints = scaled(&rows);
    let cap = rows.len().min(ncols);
    let needed = hadamard_bits(&ints, ncols, cap) + 1.0;
    let mut best = 0;
    let mut covered = 0.0;
    for batch in primes().chunks(BATCH) {
        let ranks: Vec<usize> = batch
            .par_iter()
            .map(|&p| echelon_mod(&ints, ncols, p).pivots.len())
            .collect();
        best = best.max(ranks.into_iter().max().unwrap_or(0));
        covered += batch.iter().map(|&p| (p as f64).log2()).sum::<f64>();
        if best == cap || covered > needed {
            return best;
        }
    }
    echelon(ncols, rows).rank()
}
