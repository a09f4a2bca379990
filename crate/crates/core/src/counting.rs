//! Counting `k`-subsets of `Z/nZ` by the sum of their elements.
//!
//! [`t_count`] is the closed-form path; [`brute_force`] enumerates subsets and
//! serves as ground truth for it. The remaining functions are identities that
//! relate `T(n, k, s)` to necklaces, Lyndon words, complements and conics.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::divmatrix::{build_m, entry_closed_form};
use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, gcd, moebius, sign_pow, totient};

/// Default cap on the number of subsets (or pairs) an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A request for `T(n, k, s)`. `s` is stored reduced into `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountQuery {
    n: u64,
    k: u64,
    s: u64,
}

impl CountQuery {
    /// Validates `n >= 1` and `0 <= k <= n`; any integer `s` is accepted.
    pub fn new(n: u64, k: i64, s: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuery("n must be at least 1".into()));
        }
        if k < 0 || k as u64 > n {
            return Err(Error::InvalidQuery(format!("need 0 <= k <= n, got n={n} k={k}")));
        }
        Ok(CountQuery {
            n,
            k: k as u64,
            s: s.rem_euclid(n as i64) as u64,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Residue of `s` in `0..n`.
    pub fn s(&self) -> u64 {
        self.s
    }
}

fn exact_div(total: BigInt, n: u64, what: &str) -> Result<BigUint> {
    let (q, r) = total.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: sum not divisible by {n}")));
    }
    match q.sign() {
        Sign::Minus => Err(Error::Internal(format!("{what}: negative count {q}"))),
        _ => Ok(q.magnitude().clone()),
    }
}

/// `T(n, k, s)`: the number of `k`-subsets of `Z/nZ` whose elements sum to `s` mod `n`.
///
/// `T(n, 0, s)` is 1 for `s = 0 (mod n)` (the empty set) and 0 otherwise.
pub fn t_count(q: &CountQuery) -> Result<BigUint> {
    let (n, k) = (q.n, q.k);
    if k == 0 {
        return Ok(BigUint::from((q.s == 0) as u32));
    }
    let t = gcd(k, q.s);
    let mut total = BigInt::zero();
    for &d in divisors(gcd(n, k))?.iter() {
        let w = sign_pow(k - k / d) * entry_closed_form(k, t, d)?;
        if w != 0 {
            total += BigInt::from(w) * BigInt::from(binomial(n / d, (k / d) as i64));
        }
    }
    exact_div(total, n, "t_count")
}

/// Convenience wrapper: `T(n, k, s)` with `0 <= k <= n` checked.
pub fn t(n: u64, k: i64, s: i64) -> Result<BigUint> {
    t_count(&CountQuery::new(n, k, s)?)
}

/// `T(n, k, s)` extended by zero to `k > n`. Used for sequence sweeps.
pub fn t_or_zero(n: u64, k: u64, s: i64) -> Result<BigUint> {
    if k > n {
        Ok(BigUint::zero())
    } else {
        t(n, k as i64, s)
    }
}

/// Barnes's count of zero-sum `k`-subsets.
pub fn t_zero(n: u64, k: u64) -> Result<BigUint> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidQuery(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let mut total = BigInt::zero();
    for &s in divisors(gcd(n, k))?.iter() {
        let w = sign_pow(k - k / s) * totient(s)? as i64;
        total += BigInt::from(w) * BigInt::from(binomial(n / s, (k / s) as i64));
    }
    exact_div(total, n, "t_zero")
}

/// Histogram of subset sums: entry `r` counts the `k`-subsets of `{0, .., n-1}` with sum `r` mod `n`.
pub fn sum_distribution(n: u64, k: u64, budget: u64) -> Result<Vec<u64>> {
    if n == 0 || k > n {
        return Err(Error::InvalidQuery(format!("need 0 <= k <= n, got n={n} k={k}")));
    }
    let total = binomial(n, k as i64);
    if total > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: total.to_string(),
            budget,
        });
    }
    let mut hist = vec![0u64; n as usize];
    fn walk(next: u64, left: u64, sum: u64, n: u64, hist: &mut [u64]) {
        if left == 0 {
            hist[sum as usize] += 1;
            return;
        }
        for x in next..=n - left {
            let s = (sum + x) % n;
            walk(x + 1, left - 1, s, n, hist);
        }
    }
    walk(0, k, 0, n, &mut hist);
    Ok(hist)
}

/// Enumerates every `k`-subset and counts those with sum `s` mod `n`.
pub fn brute_force(q: &CountQuery, budget: u64) -> Result<u64> {
    Ok(sum_distribution(q.n, q.k, budget)?[q.s as usize])
}

/// A divisor `t` of `k` with `T(n, k, s) = T(n, k, t)`: reduce `s` modulo
/// `gcd(n, k)` into `1..=gcd(n, k)`, then take the gcd with `k`.
pub fn canonical_s(n: u64, k: u64, s: i64) -> Result<u64> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidQuery(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let m = gcd(n, k);
    let r = s.rem_euclid(m as i64) as u64;
    Ok(gcd(k, if r == 0 { m } else { r }))
}

/// Maps a query to the equinumerous query on complements.
pub fn complement_transfer(n: u64, k: u64, s: i64) -> Result<CountQuery> {
    if k == 0 || k >= n {
        return Err(Error::InvalidQuery(format!("need 1 <= k < n, got n={n} k={k}")));
    }
    let shift = if n % 2 == 0 { (n / 2) as i64 } else { 0 };
    CountQuery::new(n, (n - k) as i64, s + shift)
}

/// Right-hand side of Hadjicostas's identity,
/// `sum over d | gcd(n, s) of (-1)^(k - k/d) T(n/d, k/d, 1)`, for `s | k`.
pub fn hadjicostas_rhs(n: u64, k: u64, s: u64) -> Result<BigUint> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidQuery(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    if s == 0 || k % s != 0 {
        return Err(Error::NotADivisor { d: s, k });
    }
    let mut total = BigInt::zero();
    for &d in divisors(gcd(n, s))?.iter() {
        let term = BigInt::from(t(n / d, (k / d) as i64, 1)?);
        if sign_pow(k - k / d) > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    match total.to_biguint() {
        Some(v) => Ok(v),
        None => Err(Error::Internal(format!("negative Hadjicostas sum {total}"))),
    }
}

/// Binary necklaces of length `n` with `k` black beads (Burnside count).
pub fn necklaces(n: u64, k: u64) -> Result<BigUint> {
    if n == 0 || k > n {
        return Err(Error::InvalidQuery(format!("need 0 <= k <= n, got n={n} k={k}")));
    }
    let mut total = BigInt::zero();
    for &d in divisors(gcd(n, k))?.iter() {
        total += BigInt::from(totient(d)?) * BigInt::from(binomial(n / d, (k / d) as i64));
    }
    exact_div(total, n, "necklaces")
}

/// Aperiodic binary necklaces (Lyndon words) of length `n` with `k` black beads.
pub fn lyndon(n: u64, k: u64) -> Result<BigUint> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidQuery(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let mut total = BigInt::zero();
    for &d in divisors(gcd(n, k))?.iter() {
        let mu = moebius(d)?;
        if mu != 0 {
            total += BigInt::from(mu) * BigInt::from(binomial(n / d, (k / d) as i64));
        }
    }
    exact_div(total, n, "lyndon")
}

fn check_proper(n: u64, k: u64) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidQuery(format!("need n > k > 0, got n={n} k={k}")));
    }
    Ok(())
}

/// `N(n, k)` equals `T(n, k, 0)` for odd `k` and `T(n, k, k/2)` for even `k`.
pub fn necklace_identity_check(n: u64, k: u64) -> Result<bool> {
    check_proper(n, k)?;
    let s = if k % 2 == 1 { 0 } else { k / 2 };
    Ok(necklaces(n, k)? == t(n, k as i64, s as i64)?)
}

/// `L(n, k)` equals `T(n, k, 2)` when `k = 2 (mod 4)` and `T(n, k, 1)` otherwise.
pub fn lyndon_identity_check(n: u64, k: u64) -> Result<bool> {
    check_proper(n, k)?;
    let s = if k % 4 == 2 { 2 } else { 1 };
    Ok(lyndon(n, k)? == t(n, k as i64, s)?)
}

/// Row identity forced by `T(k, k, d)`: for odd `k` the row sums of `M(k)` are
/// `k delta(d, k)`; for even `k` the sums weighted by `(-1)^(k/d')` are `k delta(d, k/2)`.
pub fn full_set_row_identity(k: u64) -> Result<bool> {
    let m = build_m(k)?;
    for &d in m.divisors() {
        let mut sum = BigInt::zero();
        for &e in m.divisors() {
            let v = m.get(d, e)?;
            if k % 2 == 1 || (k / e) % 2 == 0 {
                sum += v;
            } else {
                sum -= v;
            }
        }
        let target = if k % 2 == 1 { k } else { k / 2 };
        let want = if d == target { BigInt::from(k) } else { BigInt::zero() };
        if sum != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Zero-sum 3-subsets of `Z/nZ` as sorted triples.
pub fn zero_sum_triples(n: u64, budget: u64) -> Result<Vec<[u64; 3]>> {
    if n < 3 {
        return Ok(Vec::new());
    }
    let total = binomial(n, 3);
    if total > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: total.to_string(),
            budget,
        });
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = (2 * n - a - b) % n;
            if c > b {
                out.push([a, b, c]);
            }
        }
    }
    Ok(out)
}

/// Unordered pairs of disjoint zero-sum triples in `Z/nZ`, i.e. six distinct
/// points split over two lines.
pub fn line_pair_conics(n: u64, budget: u64) -> Result<u64> {
    let triples = zero_sum_triples(n, budget)?;
    let pairs = (triples.len() as u64).saturating_mul(triples.len().saturating_sub(1) as u64) / 2;
    if pairs > budget {
        return Err(Error::BudgetExceeded {
            needed: pairs.to_string(),
            budget,
        });
    }
    let mut count = 0u64;
    for (i, a) in triples.iter().enumerate() {
        for b in &triples[i + 1..] {
            if a.iter().all(|x| !b.contains(x)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Zero-sum 6-subsets of `Z/nZ` that are not a union of two zero-sum triples.
pub fn irreducible_conics(n: u64, budget: u64) -> Result<BigUint> {
    if n < 9 {
        return Err(Error::InvalidQuery(format!("irreducible conics need n >= 9, got {n}")));
    }
    let all = t(n, 6, 0)?;
    let lines = BigUint::from(line_pair_conics(n, budget)?);
    if lines > all {
        return Err(Error::Internal(format!(
            "more line pairs ({lines}) than zero-sum 6-subsets ({all}) for n={n}"
        )));
    }
    Ok(all - lines)
}

/// `sum over k = 1..=n of T(n, k, s)`: nonempty subsets of `Z/nZ` with sum `s`.
pub fn subsets_with_sum(n: u64, s: i64) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for k in 1..=n {
        total += t(n, k as i64, s)?;
    }
    Ok(total)
}

/// Small helper for tests and the CLI: a count that must fit in `u64`.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}
