//! Exact rank over `Q(w)` by reduction modulo word-sized primes.
//!
//! Rows are first scaled into `Z[w]`. For a prime `p = 1 (mod 3)` and a root
//! `r` of `t^2 - t + 1` mod `p`, the map `a + b w -> a + b r` is a ring
//! morphism `Z[w] -> F_p`, so every minor reduces to the matching minor mod
//! `p`. Hence:
//!
//! * `rank_p <= rank` for every prime;
//! * if every `(k+1)`-minor vanishes mod primes whose product exceeds the
//!   largest possible `|minor|^2` (the norm of a minor in `Z[w]`, bounded by
//!   Hadamard), those minors are zero.
//!
//! The maximum of `rank_p` over such a set of primes is the exact rank.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactfield::FieldElement;

/// Element `a + b w` of `Z[w]`.
#[derive(Clone, Debug)]
pub(crate) struct Zw {
    pub a: BigInt,
    pub b: BigInt,
}

impl Zw {
    pub fn zero() -> Self {
        Zw { a: BigInt::zero(), b: BigInt::zero() }
    }

    pub fn one() -> Self {
        Zw { a: BigInt::one(), b: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The row scaled by the least common multiple of its denominators.
    pub fn clear_row(row: &[FieldElement]) -> Vec<Zw> {
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.re_part().denom()).lcm(x.w_part().denom()));
        let scale = |r: &num_rational::BigRational| r.numer() * (&l / r.denom());
        row.iter().map(|x| Zw { a: scale(x.re_part()), b: scale(x.w_part()) }).collect()
    }

    pub fn mul(&self, o: &Zw) -> Zw {
        let bd = &self.b * &o.b;
        Zw { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a + bd }
    }

    pub fn sub(&self, o: &Zw) -> Zw {
        Zw { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    /// `a^2 + ab + b^2 = |a + b w|^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    /// `self / d`, known in advance to lie in `Z[w]`.
    pub fn div_exact(&self, d: &Zw) -> Zw {
        if d.b.is_zero() && d.a.is_one() {
            return self.clone();
        }
        let conj = Zw { a: &d.a + &d.b, b: -&d.b };
        let norm = d.norm();
        let n = self.mul(&conj);
        debug_assert!((&n.a % &norm).is_zero() && (&n.b % &norm).is_zero());
        Zw { a: n.a / &norm, b: n.b / norm }
    }
}

/// Fraction-free (Bareiss) elimination over `Z[w]`.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<Zw>>, cols: usize) -> usize {
    let rows = m.len();
    let mut prev = Zw::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(found) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let p = &pivot_row[col];
        for row in rest.iter_mut() {
            let a = std::mem::replace(&mut row[col], Zw::zero());
            for j in col + 1..cols {
                let mut v = p.mul(&row[j]);
                if !a.is_zero() {
                    v = v.sub(&a.mul(&pivot_row[j]));
                }
                row[j] = v.div_exact(&prev);
            }
        }
        prev = top[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A prime `p = 1 (mod 3)` and a primitive sixth root of unity mod `p`.
#[derive(Clone, Copy, Debug)]
struct PrimeRoot {
    p: u64,
    root: u64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn sixth_root(p: u64) -> u64 {
    (2..)
        .map(|g| pow_mod(g, (p - 1) / 6, p))
        .find(|&r| (mul_mod(r, r, p) + 1 + p - r).is_multiple_of(p))
        .expect("p = 1 mod 6 has a primitive sixth root")
}

const PRIME_BITS: u64 = 61;

/// Primes just below `2^62`, each contributing at least `PRIME_BITS` bits.
fn primes(count: usize) -> Vec<PrimeRoot> {
    static CACHE: OnceLock<std::sync::Mutex<Vec<PrimeRoot>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut list = cache.lock().expect("prime cache");
    // candidates 6k + 1, descending from just below 2^62
    let mut candidate = list.last().map_or((1u64 << 62) / 6 * 6 + 7, |pr| pr.p);
    while list.len() < count {
        candidate -= 6;
        if primal_check::miller_rabin(candidate) {
            list.push(PrimeRoot { p: candidate, root: sixth_root(candidate) });
        }
    }
    list[..count].to_vec()
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).iter_u64_digits().next().unwrap_or(0);
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn rank_mod(m: &[Vec<Zw>], cols: usize, pr: PrimeRoot) -> usize {
    let p = pr.p;
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|z| (reduce(&z.a, p) + mul_mod(reduce(&z.b, p), pr.root, p)) % p).collect())
        .collect();
    let rows = a.len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(found) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, found);
        let inv = pow_mod(a[rank][col], p - 2, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv, p);
            for j in col..cols {
                row[j] = (row[j] + p - mul_mod(f, pivot[j], p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Upper bound, in bits, on `|minor|^2` over all square minors.
fn hadamard_bits(m: &[Vec<Zw>], cols: usize) -> u64 {
    let mut row_bits: Vec<u64> = m.iter().map(|row| row.iter().map(Zw::norm).sum::<BigInt>().bits()).collect();
    row_bits.sort_unstable_by(|a, b| b.cmp(a));
    row_bits.iter().take(cols.min(m.len())).sum()
}

pub(crate) fn multimodular_rank(m: &[Vec<Zw>], cols: usize) -> usize {
    let full = cols.min(m.len());
    if full == 0 {
        return 0;
    }
    let needed = (hadamard_bits(m, cols) / PRIME_BITS + 1) as usize;
    let mut best = 0;
    for pr in primes(needed) {
        best = best.max(rank_mod(m, cols, pr));
        if best == full {
            break;
        }
    }
    best
}
