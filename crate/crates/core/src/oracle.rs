//! Randomized and brute-force cross-checks for the symbolic engines.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, Ideal};
use crate::netmodel::MMatrix;
use crate::polyalg::{MonomialOrder, OrderKind, Rational};
use crate::polyalg::{mulmod, powmod, rat_mod};
use crate::ratmat::RationalMatrix;

pub const DEFAULT_SEED: u64 = 20_240_611;
pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_POOL_MAX: u64 = 10_000;
/// `2^61 - 1`.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;
const RETRIES: usize = 50;

/// Where sample values come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pool {
    /// `a/b` with `a, b` uniform in `[1, max]`.
    Rational { max: u64 },
    /// Uniform residues modulo a prime.
    Prime { modulus: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    pub trials: usize,
    pub pool: Pool,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            pool: Pool::Rational {
                max: DEFAULT_POOL_MAX,
            },
            seed: DEFAULT_SEED,
        }
    }
}

impl ProbeConfig {
    pub fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::MalformedInput("probe trials must be at least 1".into()));
        }
        match self.pool {
            Pool::Rational { max: 0 } => {
                Err(Error::MalformedInput("probe pool must contain 1".into()))
            }
            Pool::Prime { modulus } if modulus <= 1_000_000 || !is_prime(modulus) => Err(
                Error::MalformedInput(format!("probe modulus {modulus} must be a prime above 10^6")),
            ),
            _ => Ok(()),
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub rank: usize,
    pub trial_ranks: Vec<usize>,
    /// Samples discarded because a denominator vanished.
    pub resamples: usize,
}

enum Sample {
    Q(Vec<Rational>),
    P(Vec<u64>),
}

fn sample(rng: &mut ChaCha8Rng, pool: Pool, n: usize) -> Sample {
    match pool {
        Pool::Rational { max } => Sample::Q(
            (0..n)
                .map(|_| {
                    let a = rng.gen_range(1..=max);
                    let b = rng.gen_range(1..=max);
                    Rational::new(BigInt::from(a), BigInt::from(b))
                })
                .collect(),
        ),
        Pool::Prime { modulus } => Sample::P((0..n).map(|_| rng.gen_range(0..modulus)).collect()),
    }
}

/// Maximum numeric rank of `a` over `cfg.trials` random points.
pub fn random_rank_probe(a: &RationalMatrix, cfg: &ProbeConfig) -> Result<ProbeResult> {
    cfg.check()?;
    let n = a.entries().first().map_or(0, |e| e.ring().arity());
    run_trials(cfg, n, |s| match s {
        Sample::Q(pt) => a.eval(pt).map(rank_rational),
        Sample::P(pt) => {
            let Pool::Prime { modulus } = cfg.pool else { unreachable!() };
            a.eval_mod(pt, modulus).map(|m| rank_mod(m, modulus))
        }
    })
}

/// Numeric rank of `[[P, Q], [-R, S]]`. Points where `det P` vanishes
/// are resampled so that the block identity can be checked at them.
pub fn random_rank_probe_m(m: &MMatrix, cfg: &ProbeConfig) -> Result<ProbeResult> {
    cfg.check()?;
    let names = m.free_names();
    let n = m.n;
    run_trials(cfg, names.len(), |s| match s {
        Sample::Q(pt) => {
            let vals: HashMap<String, Rational> = names.iter().cloned().zip(pt.iter().cloned()).collect();
            let num = m.eval_numeric(&vals).ok()?;
            let p: Vec<Vec<Rational>> = num[..n].iter().map(|r| r[..n].to_vec()).collect();
            (rank_rational(p) == n).then(|| rank_rational(num))
        }
        Sample::P(pt) => {
            let Pool::Prime { modulus } = cfg.pool else { unreachable!() };
            let vals: HashMap<String, Rational> = names
                .iter()
                .zip(pt)
                .map(|(k, v)| (k.clone(), Rational::from_integer(BigInt::from(*v))))
                .collect();
            let red: Vec<Vec<u64>> = m
                .eval_numeric(&vals)
                .ok()?
                .iter()
                .map(|r| r.iter().map(|x| rat_mod(x, modulus)).collect::<Option<_>>())
                .collect::<Option<_>>()?;
            let p: Vec<Vec<u64>> = red[..n].iter().map(|r| r[..n].to_vec()).collect();
            (rank_mod(p, modulus) == n).then(|| rank_mod(red, modulus))
        }
    })
}

fn run_trials(cfg: &ProbeConfig, n: usize, mut f: impl FnMut(&Sample) -> Option<usize>) -> Result<ProbeResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = ProbeResult {
        rank: 0,
        trial_ranks: Vec::with_capacity(cfg.trials),
        resamples: 0,
    };
    for _ in 0..cfg.trials {
        let mut tries = 0;
        let r = loop {
            let s = sample(&mut rng, cfg.pool, n);
            if let Some(r) = f(&s) {
                break r;
            }
            tries += 1;
            out.resamples += 1;
            if tries > RETRIES {
                return Err(Error::DegenerateStructure(format!(
                    "{RETRIES} consecutive samples hit a vanishing denominator"
                )));
            }
        };
        out.trial_ranks.push(r);
        out.rank = out.rank.max(r);
    }
    Ok(out)
}

/// Rank over Q by fraction-free elimination on the cleared integer rows.
pub fn rank_rational(rows: Vec<Vec<Rational>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..nr {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[rank][c].clone(), m[i][c].clone());
            for j in c..nc {
                let v = &m[i][j] * &a - &m[rank][j] * &b;
                m[i][j] = v;
            }
            let g = m[i].iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..nc {
        let Some(piv) = (rank..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = powmod(m[rank][c], p - 2, p);
        for i in rank + 1..nr {
            if m[i][c] == 0 {
                continue;
            }
            let f = mulmod(m[i][c], inv, p);
            for j in c..nc {
                let s = mulmod(f, m[rank][j], p);
                m[i][j] = (m[i][j] + p - s) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub const BRUTE_FORCE_MAX_VARS: usize = 12;

/// Dimension by enumerating every variable subset against the leading
/// monomials of a fresh grevlex basis taken under the reversed variable
/// priority.
pub fn brute_force_dimension(ideal: &Ideal, max_vars: usize) -> Result<i64> {
    let n = ideal.ring().arity();
    if n > max_vars {
        return Err(Error::Precondition(format!(
            "brute-force dimension limited to {max_vars} variables, ring has {n}"
        )));
    }
    if ideal.is_zero() {
        return Ok(n as i64);
    }
    let order = MonomialOrder::new(OrderKind::GrevLex, (0..n).rev().collect())?;
    let gb = groebner_basis(ideal, &order)?;
    if gb.is_one() {
        return Ok(-1);
    }
    let masks: Vec<u32> = gb
        .elements()
        .iter()
        .map(|g| {
            g.leading_exps()
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .fold(0u32, |m, (v, _)| m | (1 << v))
        })
        .collect();
    let best = (0u32..1 << n)
        .filter(|s| masks.iter().all(|m| m & !s != 0))
        .map(|s| s.count_ones())
        .max()
        .unwrap_or(0);
    Ok(best as i64)
}
