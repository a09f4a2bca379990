//! Elementary number theory: factorization, Möbius, totient, divisors and
//! exact binomial coefficients.
//!
//! Factorizations and divisor lists are memoized in a bounded, process-wide
//! LRU cache shared by all threads. Batch sweeps hit the same `k` over and
//! over, so the cache keeps the hot set resident.

use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use lru::LruCache;
use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

pub use num_integer::{gcd, lcm};

/// Default capacity of the factorization cache.
pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 16;

/// Prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime powers `p^e` exactly dividing the value, in increasing prime order.
    pub fn prime_power_parts(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize + 1).product()
    }

    fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

struct CacheEntry {
    factorization: Arc<Factorization>,
    divisors: OnceLock<Arc<Vec<u64>>>,
}

fn cache() -> &'static Mutex<LruCache<u64, Arc<CacheEntry>>> {
    static CACHE: OnceLock<Mutex<LruCache<u64, Arc<CacheEntry>>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(LruCache::new(
            NonZeroUsize::new(DEFAULT_CACHE_CAPACITY).unwrap(),
        ))
    })
}

/// Resizes the memo cache. A capacity of 0 is treated as 1.
pub fn set_cache_capacity(capacity: usize) {
    let cap = NonZeroUsize::new(capacity.max(1)).unwrap();
    cache().lock().unwrap().resize(cap);
}

fn entry(n: u64) -> Result<Arc<CacheEntry>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if let Some(e) = cache().lock().unwrap().get(&n) {
        return Ok(Arc::clone(e));
    }
    let e = Arc::new(CacheEntry {
        factorization: Arc::new(factorize_uncached(n)),
        divisors: OnceLock::new(),
    });
    cache().lock().unwrap().put(n, Arc::clone(&e));
    Ok(e)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factorize_uncached(n: u64) -> Factorization {
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    let mut cofactor_checked = false;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
            cofactor_checked = false;
        }
        // past the small primes, a prime cofactor ends the search
        if p > 64 && !cofactor_checked {
            if is_prime(rest) {
                break;
            }
            cofactor_checked = true;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization { value: n, factors }
}

pub fn factorize(n: u64) -> Result<Arc<Factorization>> {
    Ok(Arc::clone(&entry(n)?.factorization))
}

pub fn moebius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if !f.is_square_free() {
        return Ok(0);
    }
    Ok(if f.factors().len() % 2 == 0 { 1 } else { -1 })
}

pub fn totient(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f
        .factors()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// Ascending divisors of `n`.
pub fn divisors(n: u64) -> Result<Arc<Vec<u64>>> {
    let e = entry(n)?;
    Ok(Arc::clone(
        e.divisors.get_or_init(|| Arc::new(e.factorization.divisors())),
    ))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
///
/// Running product `C(n, i+1) = C(n, i) * (n - i) / (i + 1)`; each division is exact.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::from(0u32);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(-1)^e` for a nonnegative exponent.
pub(crate) fn sign_pow(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}
