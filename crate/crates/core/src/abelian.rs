//! Subset and multiset counts in finite abelian groups.
//!
//! A group is given by invariant factors `m_1, .., m_c` with `m_{i+1} | m_i`,
//! and the dual group is identified with the group itself through these
//! coordinates. Counts are obtained by exact Fourier inversion of the
//! characters of the exterior and symmetric powers of the regular
//! representation, which depend only on element order. Inversion runs over
//! the divisor lattice of the exponent with Möbius weights; no complex
//! arithmetic is involved.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, factorize, gcd, lcm, moebius, sign_pow};

/// A finite abelian group in invariant-factor form. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

/// Element coordinates, `0 <= a_i < m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl AbelianGroup {
    /// Accepts only a valid divisibility chain of factors `>= 2`.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if let Some(&m) = invariant_factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!("invariant factor {m} is < 2")));
        }
        if let Some(w) = invariant_factors.windows(2).find(|w| w[0] % w[1] != 0) {
            return Err(Error::InvalidGroup(format!(
                "{} does not divide {}",
                w[1], w[0]
            )));
        }
        Ok(AbelianGroup { invariant_factors })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(AbelianGroup {
            invariant_factors: if n == 1 { vec![] } else { vec![n] },
        })
    }

    /// Invariant factors of the product of cyclic groups of the given orders.
    pub fn from_cyclic_factors(orders: &[u64]) -> Result<Self> {
        Ok(Self::from_cyclic_element(orders, &vec![0; orders.len()])?.0)
    }

    /// The invariant-factor form of `Z/c_1 x .. x Z/c_r` together with the image
    /// of the element with coordinates `coords` under the CRT isomorphism.
    pub fn from_cyclic_element(orders: &[u64], coords: &[i64]) -> Result<(Self, GroupElement)> {
        if orders.len() != coords.len() {
            return Err(Error::InvalidGroup(format!(
                "expected {} coordinates, got {}",
                orders.len(),
                coords.len()
            )));
        }
        let mut by_prime: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
        for (&m, &c) in orders.iter().zip(coords) {
            if m == 0 {
                return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
            }
            for &(p, e) in factorize(m)?.factors() {
                let q = p.pow(e);
                by_prime
                    .entry(p)
                    .or_default()
                    .push((q, c.rem_euclid(q as i64) as u64));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        let mut image = vec![0u64; len];
        for parts in by_prime.values_mut() {
            parts.sort_by_key(|&(q, _)| std::cmp::Reverse(q));
            for (i, &(q, r)) in parts.iter().enumerate() {
                image[i] = crt(image[i], factors[i], r, q);
                factors[i] *= q;
            }
        }
        Ok((Self::new(factors)?, GroupElement(image)))
    }

    /// Parses `"4,2"`; any list of cyclic orders is canonicalized. The flag
    /// reports whether the input differed from the canonical form.
    pub fn parse(spec: &str) -> Result<(Self, bool)> {
        let orders: Vec<u64> = parse_list(spec)?;
        let g = Self::from_cyclic_factors(&orders)?;
        let changed = g.is_relabeling_of(&orders);
        Ok((g, changed))
    }

    /// Parses a group and an element given in the coordinates of that input,
    /// returning the canonical group, the image of the element, and whether
    /// the presentation changed.
    pub fn parse_with_element(group: &str, element: &str) -> Result<(Self, GroupElement, bool)> {
        let orders: Vec<u64> = parse_list(group)?;
        let mut coords: Vec<i64> = parse_list(element)?;
        if orders.is_empty() && coords == [0] {
            coords.clear();
        }
        let (g, a) = Self::from_cyclic_element(&orders, &coords)?;
        let changed = g.is_relabeling_of(&orders);
        Ok((g, a, changed))
    }

    fn is_relabeling_of(&self, orders: &[u64]) -> bool {
        !self
            .invariant_factors
            .iter()
            .copied()
            .eq(orders.iter().copied().filter(|&m| m != 1))
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Largest element order, `m_1` (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.first().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.invariant_factors.len()])
    }

    /// Reduces coordinates into range; the coordinate count must match.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.invariant_factors.len() {
            return Err(Error::InvalidGroup(format!(
                "expected {} coordinates, got {}",
                self.invariant_factors.len(),
                coords.len()
            )));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&a, &m)| a.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    pub fn parse_element(&self, spec: &str) -> Result<GroupElement> {
        let coords: Vec<i64> = parse_list(spec)?;
        if self.invariant_factors.is_empty() && coords.iter().all(|&c| c == 0) {
            return Ok(self.identity());
        }
        self.element(&coords)
    }

    /// Row-major position of an element in [`Self::elements`].
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (i, &m) in self.invariant_factors.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..m).map(move |x| {
                        let mut c = e.0.clone();
                        c[i] = x;
                        GroupElement(c)
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.invariant_factors)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn scalar(&self, c: u64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &m)| ((x as u128 * c as u128) % m as u128) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.invariant_factors)
            .fold(1, |acc, (&x, &m)| lcm(acc, m / gcd(m, x)))
    }

    fn check_order_divisor(&self, d: u64) -> Result<()> {
        let n = self.exponent();
        if d == 0 || n % d != 0 {
            return Err(Error::NotADivisor { d, k: n });
        }
        Ok(())
    }

    /// `|A_d|`, the number of elements killed by `d`.
    pub fn subgroup_size(&self, d: u64) -> u64 {
        self.invariant_factors.iter().map(|&m| gcd(d, m)).product()
    }

    /// Membership in `dA`: coordinatewise `gcd(d, m_i) | a_i`.
    pub fn in_d_image(&self, a: &GroupElement, d: u64) -> bool {
        a.0.iter()
            .zip(&self.invariant_factors)
            .all(|(&x, &m)| x % gcd(d, m) == 0)
    }

    /// Largest `d | n` with `a` in `dA`.
    pub fn d_star(&self, a: &GroupElement) -> u64 {
        divisors(self.exponent())
            .expect("exponent is positive")
            .iter()
            .rev()
            .copied()
            .find(|&d| self.in_d_image(a, d))
            .unwrap_or(1)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "Z/1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|m| format!("Z/{m}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Comma-separated integers; the empty string is the empty list.
fn parse_list<T: std::str::FromStr>(spec: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(vec![]);
    }
    spec.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|e| Error::InvalidGroup(format!("{x:?}: {e}")))
        })
        .collect()
}

/// The residue mod `m q` that is `x` mod `m` and `r` mod `q`, for coprime `m, q`.
fn crt(x: u64, m: u64, r: u64, q: u64) -> u64 {
    let (m, q) = (m as i128, q as i128);
    let e = (m % q).extended_gcd(&q);
    let inv = e.x.rem_euclid(q);
    let step = ((r as i128 - x as i128).rem_euclid(q) * inv) % q;
    (x as i128 + m * step) as u64
}

/// All groups of order `n` (one per invariant-factor chain).
pub fn groups_of_order(n: u64) -> Result<Vec<AbelianGroup>> {
    fn chains(rest: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for &m in divisors(rest).unwrap().iter().rev() {
            if m < 2 || max % m != 0 {
                continue;
            }
            // the remaining factors all divide m, so rest/m must be built from divisors of m
            acc.push(m);
            chains(rest / m, m, acc, out);
            acc.pop();
        }
    }
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut out = Vec::new();
    chains(n, n, &mut Vec::new(), &mut out);
    out.into_iter().map(AbelianGroup::new).collect()
}

/// `C(top, j)` for an arbitrary integer `top`.
fn generalized_binomial(top: &BigInt, j: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= top - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Character of the `k`-th exterior power of the regular representation at
/// an element of order `d`: `(-1)^((d-1) k/d) C(|A|/d, k/d)` if `d | k`, else 0.
pub fn chi_k(group: &AbelianGroup, k: u64, d: u64) -> Result<BigInt> {
    group.check_order_divisor(d)?;
    if k % d != 0 {
        return Ok(BigInt::zero());
    }
    let j = k / d;
    let sign = sign_pow((d - 1) * j);
    Ok(BigInt::from(sign) * BigInt::from(binomial(group.order() / d, j as i64)))
}

/// Character of the `k`-th symmetric power: `C(|A|/d + k/d - 1, k/d)` if `d | k`, else 0.
pub fn chi_k_plus(group: &AbelianGroup, k: u64, d: u64) -> Result<BigInt> {
    group.check_order_divisor(d)?;
    if k % d != 0 {
        return Ok(BigInt::zero());
    }
    let j = k / d;
    Ok(BigInt::from(binomial(group.order() / d + j - 1, j as i64)))
}

/// The same character written as `(-1)^(k/d) C(-|A|/d, k/d)`.
pub fn chi_k_plus_negative_form(group: &AbelianGroup, k: u64, d: u64) -> Result<BigInt> {
    group.check_order_divisor(d)?;
    if k % d != 0 {
        return Ok(BigInt::zero());
    }
    let j = k / d;
    let top = -BigInt::from(group.order() / d);
    Ok(BigInt::from(sign_pow(j)) * generalized_binomial(&top, j))
}

/// `|A| * F(a)` where `F` is the Fourier transform of a function depending
/// only on element order, given by its value `chi(d)` at order `d`.
fn scaled_inverse<F>(group: &AbelianGroup, a: &GroupElement, mut chi: F) -> Result<BigInt>
where
    F: FnMut(u64) -> Result<BigInt>,
{
    let n = group.exponent();
    let mut total = BigInt::zero();
    for &d in divisors(n)?.iter() {
        let c = chi(d)?;
        if c.is_zero() {
            continue;
        }
        // indicator of "order exactly d" = sum_{e | d} mu(d/e) [A_e]; [A_e] transforms to |A_e|/|A| [eA]
        let mut weight = 0i64;
        for &e in divisors(d)?.iter() {
            if group.in_d_image(a, e) {
                weight += moebius(d / e)? * group.subgroup_size(e) as i64;
            }
        }
        total += c * BigInt::from(weight);
    }
    Ok(total)
}

fn exact_count(total: BigInt, order: u64) -> Result<BigUint> {
    let (q, r) = total.div_rem(&BigInt::from(order));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "Fourier inversion left remainder {r} mod {order}"
        )));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative count {q}")))
}

/// Number of `k`-element subsets of the group summing to `a`.
pub fn t_abelian(group: &AbelianGroup, k: u64, a: &GroupElement) -> Result<BigUint> {
    if k > group.order() {
        return Err(Error::InvalidQuery(format!(
            "k = {k} exceeds group order {}",
            group.order()
        )));
    }
    let total = scaled_inverse(group, a, |d| chi_k(group, k, d))?;
    exact_count(total, group.order())
}

/// Number of `k`-element multisets of the group summing to `a`.
pub fn t_plus_abelian(group: &AbelianGroup, k: u64, a: &GroupElement) -> Result<BigUint> {
    let total = scaled_inverse(group, a, |d| chi_k_plus(group, k, d))?;
    exact_count(total, group.order())
}

fn over_budget(needed: BigUint, budget: u64) -> Result<()> {
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    Ok(())
}

/// For each element (by [`AbelianGroup::index_of`]), the number of `k`-subsets summing to it.
pub fn subset_sum_histogram(group: &AbelianGroup, k: u64, budget: u64) -> Result<Vec<u64>> {
    let elems = group.elements();
    over_budget(binomial(elems.len() as u64, k as i64), budget)?;
    let mut hist = vec![0u64; elems.len()];
    if k as usize > elems.len() {
        return Ok(hist);
    }
    fn walk(
        g: &AbelianGroup,
        elems: &[GroupElement],
        next: usize,
        left: usize,
        sum: &GroupElement,
        hist: &mut [u64],
    ) {
        if left == 0 {
            hist[g.index_of(sum)] += 1;
            return;
        }
        for i in next..=elems.len() - left {
            walk(g, elems, i + 1, left - 1, &g.add(sum, &elems[i]), hist);
        }
    }
    walk(group, &elems, 0, k as usize, &group.identity(), &mut hist);
    Ok(hist)
}

/// For each element, the number of `k`-multisets summing to it.
pub fn multiset_sum_histogram(group: &AbelianGroup, k: u64, budget: u64) -> Result<Vec<u64>> {
    let elems = group.elements();
    over_budget(binomial(elems.len() as u64 + k - 1, k as i64), budget)?;
    let mut hist = vec![0u64; elems.len()];
    fn walk(
        g: &AbelianGroup,
        elems: &[GroupElement],
        next: usize,
        left: usize,
        sum: &GroupElement,
        hist: &mut [u64],
    ) {
        if left == 0 {
            hist[g.index_of(sum)] += 1;
            return;
        }
        for i in next..elems.len() {
            walk(g, elems, i, left - 1, &g.add(sum, &elems[i]), hist);
        }
    }
    walk(group, &elems, 0, k as usize, &group.identity(), &mut hist);
    Ok(hist)
}

pub fn brute_force_abelian(
    group: &AbelianGroup,
    k: u64,
    a: &GroupElement,
    budget: u64,
) -> Result<u64> {
    Ok(subset_sum_histogram(group, k, budget)?[group.index_of(a)])
}

pub fn brute_force_multiset(
    group: &AbelianGroup,
    k: u64,
    a: &GroupElement,
    budget: u64,
) -> Result<u64> {
    Ok(multiset_sum_histogram(group, k, budget)?[group.index_of(a)])
}

/// Multisets whose multiplicity profile is `lambda` and whose sum is `a`,
/// by enumerating injective assignments of parts to elements.
pub fn profile_count(
    group: &AbelianGroup,
    lambda: &[u64],
    a: &GroupElement,
    budget: u64,
) -> Result<u64> {
    if lambda.contains(&0) {
        return Err(Error::InvalidQuery("profile parts must be positive".into()));
    }
    let elems = group.elements();
    let size = elems.len() as u64;
    if lambda.len() as u64 > size {
        return Ok(0);
    }
    let assignments = (0..lambda.len() as u64).fold(BigUint::one(), |acc, i| acc * (size - i));
    over_budget(assignments, budget)?;

    fn walk(
        g: &AbelianGroup,
        elems: &[GroupElement],
        lambda: &[u64],
        used: &mut [bool],
        sum: &GroupElement,
        target: &GroupElement,
    ) -> u64 {
        let Some((&part, rest)) = lambda.split_first() else {
            return (sum == target) as u64;
        };
        let mut count = 0;
        for i in 0..elems.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let s = g.add(sum, &g.scalar(part, &elems[i]));
            count += walk(g, elems, rest, used, &s, target);
            used[i] = false;
        }
        count
    }
    let ordered = walk(
        group,
        &elems,
        lambda,
        &mut vec![false; elems.len()],
        &group.identity(),
        a,
    );
    // assignments that permute equal parts give the same multiset
    let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
    for &p in lambda {
        *mult.entry(p).or_default() += 1;
    }
    let symmetry: u64 = mult.values().map(|&c| (1..=c).product::<u64>()).product();
    Ok(ordered / symmetry)
}

/// Fourier transform of a function on the group that depends only on element
/// order, returned as a function of `d*`.
///
/// `values_by_order` must be keyed by exactly the divisors of the exponent.
/// The transform uses the normalization `F(a*) = (1/|A|) sum_a conj(a*(a)) f(a)`.
pub fn fourier_class_function(
    group: &AbelianGroup,
    values_by_order: &BTreeMap<u64, BigRational>,
) -> Result<BTreeMap<u64, BigRational>> {
    let divs = divisors(group.exponent())?;
    if values_by_order.len() != divs.len() || !divs.iter().all(|d| values_by_order.contains_key(d))
    {
        return Err(Error::InvalidQuery(format!(
            "class function must be keyed by the divisors {:?}",
            divs
        )));
    }
    let order = BigRational::from_integer(BigInt::from(group.order()));
    let mut out = BTreeMap::new();
    for &big_d in divs.iter() {
        let mut acc = BigRational::zero();
        for &d in divs.iter() {
            let v = &values_by_order[&d];
            if v.is_zero() {
                continue;
            }
            let mut weight = 0i64;
            for &e in divisors(d)?.iter() {
                if big_d % e == 0 {
                    weight += moebius(d / e)? * group.subgroup_size(e) as i64;
                }
            }
            acc += v * BigRational::from_integer(BigInt::from(weight));
        }
        out.insert(big_d, acc / &order);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{t, DEFAULT_BUDGET};

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f.to_vec()).unwrap()
    }

    fn el(group: &AbelianGroup, c: &[i64]) -> GroupElement {
        group.element(c).unwrap()
    }

    fn u(v: BigUint) -> u64 {
        num_traits::ToPrimitive::to_u64(&v).unwrap()
    }

    #[test]
    fn group_construction() {
        assert!(AbelianGroup::new(vec![2, 4]).is_err());
        assert!(AbelianGroup::new(vec![4, 1]).is_err());
        let (grp, changed) = AbelianGroup::parse("2,4").unwrap();
        assert_eq!(grp.invariant_factors(), &[4, 2]);
        assert!(changed);
        let (grp, changed) = AbelianGroup::parse("6,10").unwrap();
        assert_eq!(grp.invariant_factors(), &[30, 2]);
        assert!(changed);
        let (grp, changed) = AbelianGroup::parse("4,2").unwrap();
        assert!(!changed);
        assert_eq!(grp.order(), 8);
        assert_eq!(grp.exponent(), 4);
        let (triv, changed) = AbelianGroup::parse("1").unwrap();
        assert!(!changed);
        assert_eq!(triv, AbelianGroup::parse("").unwrap().0);
        let (_, a, changed) = AbelianGroup::parse_with_element("1", "0").unwrap();
        assert_eq!(a, triv.identity());
        assert!(!changed);
        let (g24, a, changed) = AbelianGroup::parse_with_element("2,4", "1,1").unwrap();
        assert!(changed);
        assert_eq!(g24.element_order(&a), 4);
        assert_eq!(triv.order(), 1);
        assert_eq!(triv.exponent(), 1);
        assert_eq!(triv.elements().len(), 1);
        assert_eq!(grp.elements().len(), 8);
    }

    /// Sum histogram of `k`-subsets of `Z/c_1 x .. x Z/c_r`, keyed by coordinates.
    fn product_histogram(orders: &[u64], k: usize) -> BTreeMap<Vec<i64>, u64> {
        let mut elems: Vec<Vec<i64>> = vec![vec![]];
        for &m in orders {
            elems = elems
                .into_iter()
                .flat_map(|e| (0..m as i64).map(move |x| [e.clone(), vec![x]].concat()))
                .collect();
        }
        let mut hist = BTreeMap::new();
        for e in &elems {
            hist.insert(e.clone(), 0);
        }
        let n = elems.len();
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let sum: Vec<i64> = (0..orders.len())
                .map(|j| pick.iter().map(|&i| elems[i][j]).sum::<i64>() % orders[j] as i64)
                .collect();
            *hist.get_mut(&sum).unwrap() += 1;
            let Some(pos) = (0..k).rev().find(|&i| pick[i] < n - k + i) else { break };
            pick[pos] += 1;
            for i in pos + 1..k {
                pick[i] = pick[i - 1] + 1;
            }
        }
        hist
    }

    #[test]
    fn element_canonicalization() {
        for orders in [vec![2u64, 4], vec![6, 10], vec![3, 3, 2], vec![4, 6], vec![12]] {
            let (grp, zero) = AbelianGroup::from_cyclic_element(&orders, &vec![0; orders.len()]).unwrap();
            assert_eq!(zero, grp.identity());
            let size: u64 = orders.iter().product();
            assert_eq!(grp.order(), size);
            for k in 1..=3usize {
                for (coords, count) in product_histogram(&orders, k) {
                    let (_, a) = AbelianGroup::from_cyclic_element(&orders, &coords).unwrap();
                    assert_eq!(u(t_abelian(&grp, k as u64, &a).unwrap()), count, "{orders:?} {coords:?}");
                }
            }
        }
        let (grp, a) = AbelianGroup::from_cyclic_element(&[2, 4], &[1, 0]).unwrap();
        assert_eq!(grp.invariant_factors(), &[4, 2]);
        assert_eq!(a.coords(), &[0, 1]);
        assert!(AbelianGroup::from_cyclic_element(&[2, 4], &[1]).is_err());
    }

    #[test]
    fn groups_by_order() {
        let counts: Vec<usize> = (1..=16).map(|n| groups_of_order(n).unwrap().len()).collect();
        // number of abelian groups of order n
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        for n in 1..=16 {
            for grp in groups_of_order(n).unwrap() {
                assert_eq!(grp.order(), n);
            }
        }
    }

    #[test]
    fn element_orders_and_indexing() {
        let grp = g(&[4, 2]);
        for (i, a) in grp.elements().iter().enumerate() {
            assert_eq!(grp.index_of(a), i);
            let ord = grp.element_order(a);
            assert!(grp.scalar(ord, a) == grp.identity());
            assert!((1..ord).all(|j| grp.scalar(j, a) != grp.identity()));
        }
    }

    #[test]
    fn chi_examples() {
        let v4 = g(&[2, 2]);
        assert_eq!(chi_k(&v4, 3, 1).unwrap(), BigInt::from(4));
        assert_eq!(chi_k(&v4, 2, 2).unwrap(), BigInt::from(-2));
        assert_eq!(chi_k(&v4, 3, 2).unwrap(), BigInt::zero());
        assert!(chi_k(&v4, 2, 4).is_err());
        let z2 = g(&[2]);
        assert_eq!(chi_k_plus(&z2, 2, 2).unwrap(), BigInt::from(1));
        assert_eq!(chi_k_plus(&v4, 3, 1).unwrap(), BigInt::from(20));
        assert_eq!(chi_k_plus(&z2, 3, 2).unwrap(), BigInt::zero());
    }

    #[test]
    fn chi_plus_forms_agree() {
        for n in 1..=16 {
            for grp in groups_of_order(n).unwrap() {
                for &d in divisors(grp.exponent()).unwrap().iter() {
                    for k in 0..=12 {
                        assert_eq!(
                            chi_k_plus(&grp, k, d).unwrap(),
                            chi_k_plus_negative_form(&grp, k, d).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_and_image_examples() {
        let v4 = g(&[2, 2]);
        assert_eq!(v4.subgroup_size(1), 1);
        assert_eq!(v4.subgroup_size(2), 4);
        assert_eq!(g(&[4, 2]).subgroup_size(2), 4);
        let z4 = g(&[4]);
        for d in [1, 2, 4] {
            assert!(z4.in_d_image(&z4.identity(), d));
        }
        assert!(z4.in_d_image(&el(&z4, &[2]), 2));
        assert!(!z4.in_d_image(&el(&z4, &[2]), 4));
        assert!(!v4.in_d_image(&el(&v4, &[1, 0]), 2));
        assert_eq!(z4.d_star(&z4.identity()), 4);
        assert_eq!(z4.d_star(&el(&z4, &[2])), 2);
        assert_eq!(z4.d_star(&el(&z4, &[1])), 1);
    }

    #[test]
    fn in_d_image_matches_multiples() {
        for n in 1..=16 {
            for grp in groups_of_order(n).unwrap() {
                let elems = grp.elements();
                for &d in divisors(grp.exponent()).unwrap().iter() {
                    let image: std::collections::HashSet<_> =
                        elems.iter().map(|x| grp.scalar(d, x)).collect();
                    for a in &elems {
                        assert_eq!(grp.in_d_image(a, d), image.contains(a));
                    }
                    assert_eq!(
                        grp.subgroup_size(d) as usize,
                        elems.iter().filter(|x| grp.scalar(d, x) == grp.identity()).count()
                    );
                }
            }
        }
    }

    #[test]
    fn t_abelian_examples() {
        let v4 = g(&[2, 2]);
        assert_eq!(u(t_abelian(&v4, 2, &v4.identity()).unwrap()), 0);
        assert_eq!(u(t_abelian(&v4, 2, &el(&v4, &[1, 1])).unwrap()), 2);
        assert_eq!(brute_force_abelian(&v4, 2, &el(&v4, &[1, 1]), DEFAULT_BUDGET).unwrap(), 2);
        for grp in [g(&[]), g(&[3]), g(&[4, 2])] {
            for a in grp.elements() {
                let want = (a == grp.identity()) as u64;
                assert_eq!(u(t_abelian(&grp, 0, &a).unwrap()), want);
            }
        }
        for n in 1..=12 {
            let z = AbelianGroup::cyclic(n).unwrap();
            for k in 0..=n {
                for s in 0..n {
                    let a = z.parse_element(&s.to_string()).unwrap();
                    assert_eq!(t_abelian(&z, k, &a).unwrap(), t(n, k as i64, s as i64).unwrap());
                }
            }
        }
        assert!(t_abelian(&v4, 5, &v4.identity()).is_err());
    }

    #[test]
    fn full_subset_sums_to_total() {
        for n in 1..=12 {
            for grp in groups_of_order(n).unwrap() {
                let total = grp.elements().iter().fold(grp.identity(), |acc, x| grp.add(&acc, x));
                for a in grp.elements() {
                    assert_eq!(u(t_abelian(&grp, n, &a).unwrap()), (a == total) as u64);
                }
            }
        }
    }

    #[test]
    fn t_plus_examples() {
        let z2 = g(&[2]);
        assert_eq!(u(t_plus_abelian(&z2, 2, &z2.identity()).unwrap()), 2);
        for n in 1..=8 {
            for grp in groups_of_order(n).unwrap() {
                for a in grp.elements() {
                    assert_eq!(u(t_plus_abelian(&grp, 1, &a).unwrap()), 1);
                }
            }
        }
        for n in 1..=8 {
            let z = AbelianGroup::cyclic(n).unwrap();
            for k in 0..=5 {
                let hist = multiset_sum_histogram(&z, k, DEFAULT_BUDGET).unwrap();
                for a in z.elements() {
                    assert_eq!(u(t_plus_abelian(&z, k, &a).unwrap()), hist[z.index_of(&a)]);
                }
            }
        }
    }

    #[test]
    fn brute_force_full_set() {
        let grp = g(&[2, 2]);
        let total = grp.elements().iter().fold(grp.identity(), |acc, x| grp.add(&acc, x));
        for a in grp.elements() {
            assert_eq!(
                brute_force_abelian(&grp, 4, &a, DEFAULT_BUDGET).unwrap(),
                (a == total) as u64
            );
        }
        assert!(matches!(
            subset_sum_histogram(&g(&[16]), 8, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn profile_examples() {
        for grp in [g(&[5]), g(&[2, 2]), g(&[4, 2])] {
            for k in 0..=4u64 {
                for a in grp.elements() {
                    let ones = vec![1u64; k as usize];
                    assert_eq!(
                        profile_count(&grp, &ones, &a, DEFAULT_BUDGET).unwrap(),
                        u(t_abelian(&grp, k, &a).unwrap())
                    );
                }
            }
            for k in 1..=4u64 {
                for a in grp.elements() {
                    let roots = grp.elements().iter().filter(|b| grp.scalar(k, b) == a).count();
                    assert_eq!(profile_count(&grp, &[k], &a, DEFAULT_BUDGET).unwrap(), roots as u64);
                }
            }
        }
        // Z/3, profile (2,1): 2b + c = 0 forces c = b, which a profile forbids
        let z3 = g(&[3]);
        assert_eq!(profile_count(&z3, &[2, 1], &z3.identity(), DEFAULT_BUDGET).unwrap(), 0);
        assert_eq!(profile_count(&z3, &[2, 1], &el(&z3, &[1]), DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn profile_counts_sum_to_multisets() {
        // every k-multiset has exactly one profile
        let grp = g(&[3, 3]);
        let partitions: [&[u64]; 5] = [&[4], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]];
        for a in grp.elements() {
            let total: u64 = partitions
                .iter()
                .map(|p| profile_count(&grp, p, &a, DEFAULT_BUDGET).unwrap())
                .sum();
            assert_eq!(total, u(t_plus_abelian(&grp, 4, &a).unwrap()));
        }
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fourier_examples() {
        let grp = g(&[12, 2]);
        let ones: BTreeMap<u64, BigRational> = divisors(12).unwrap().iter().map(|&d| (d, r(1, 1))).collect();
        let ft = fourier_class_function(&grp, &ones).unwrap();
        for (&d, v) in &ft {
            assert_eq!(*v, r((d == 12) as i64, 1), "d*={d}");
        }
        for p in [2i64, 3, 5, 7] {
            let zp = g(&[p as u64]);
            let e1: BTreeMap<u64, BigRational> = [(1, r(0, 1)), (p as u64, r(1, 1))].into();
            let ft = fourier_class_function(&zp, &e1).unwrap();
            assert_eq!(ft[&1], r(-1, p));
            assert_eq!(ft[&(p as u64)], r(p - 1, p));
        }
        assert!(fourier_class_function(&grp, &[(1, r(1, 1))].into()).is_err());
    }

    #[test]
    fn fourier_of_chi_matches_t_abelian() {
        for n in 1..=16 {
            for grp in groups_of_order(n).unwrap() {
                for k in 0..=n {
                    let chi: BTreeMap<u64, BigRational> = divisors(grp.exponent())
                        .unwrap()
                        .iter()
                        .map(|&d| (d, BigRational::from_integer(chi_k(&grp, k, d).unwrap())))
                        .collect();
                    let ft = fourier_class_function(&grp, &chi).unwrap();
                    for a in grp.elements() {
                        let want = BigRational::from_integer(t_abelian(&grp, k, &a).unwrap().into());
                        assert_eq!(ft[&grp.d_star(&a)], want);
                    }
                }
            }
        }
    }

    /// The p-group transform of the order-p^a indicator, from the closed expansion
    /// `(1/|A|) [ -|A_{p^(a-1)}| e*_{a-1} + (|A_{p^a}| - |A_{p^(a-1)}|) sum_{b >= a} e*_b ]`.
    #[test]
    fn p_group_expansion() {
        for grp in [g(&[8]), g(&[4, 2]), g(&[9, 3]), g(&[8, 4, 2]), g(&[27])] {
            let n = grp.exponent();
            let f = factorize(n).unwrap();
            let (p, m) = f.factors()[0];
            for a in 1..=m {
                let target = p.pow(a);
                let e_a: BTreeMap<u64, BigRational> = divisors(n)
                    .unwrap()
                    .iter()
                    .map(|&d| (d, r((d == target) as i64, 1)))
                    .collect();
                let ft = fourier_class_function(&grp, &e_a).unwrap();
                let size = grp.order() as i64;
                let big = grp.subgroup_size(p.pow(a)) as i64;
                let small = grp.subgroup_size(p.pow(a - 1)) as i64;
                for b in 0..=m {
                    let want = if b == a - 1 {
                        r(-small, size)
                    } else if b >= a {
                        r(big - small, size)
                    } else {
                        r(0, 1)
                    };
                    assert_eq!(ft[&p.pow(b)], want, "{grp} a={a} b={b}");
                }
            }
        }
    }

    /// Direct character sum over the group with complex exponentials.
    fn complex_count(grp: &AbelianGroup, k: u64, a: &GroupElement) -> f64 {
        let elems = grp.elements();
        let mut re = 0.0;
        let mut im = 0.0;
        for x in &elems {
            let chi = num_traits::ToPrimitive::to_f64(&chi_k(grp, k, grp.element_order(x)).unwrap()).unwrap();
            let phase: f64 = a
                .coords()
                .iter()
                .zip(x.coords())
                .zip(grp.invariant_factors())
                .map(|((&ai, &xi), &m)| ((ai * xi) % m) as f64 / m as f64)
                .sum();
            let ang = -std::f64::consts::TAU * phase;
            re += chi * ang.cos();
            im += chi * ang.sin();
        }
        assert!(im.abs() < 1e-6);
        re / elems.len() as f64
    }

    #[test]
    fn complex_fourier_cross_check() {
        for n in 1..=12 {
            for grp in groups_of_order(n).unwrap() {
                for k in 0..=n {
                    for a in grp.elements() {
                        let exact = u(t_abelian(&grp, k, &a).unwrap()) as f64;
                        assert!((complex_count(&grp, k, &a) - exact).abs() < 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn depends_only_on_class_mod_gcd() {
        for n in 1..=16 {
            for grp in groups_of_order(n).unwrap() {
                let elems = grp.elements();
                for k in 0..=n {
                    let g_nk = gcd(grp.exponent(), k);
                    let vals: Vec<BigUint> = elems.iter().map(|a| t_abelian(&grp, k, a).unwrap()).collect();
                    for (i, a) in elems.iter().enumerate() {
                        for (j, b) in elems.iter().enumerate() {
                            let diff = grp.add(a, &grp.scalar(grp.exponent() - 1, b));
                            if grp.in_d_image(&diff, g_nk) {
                                assert_eq!(vals[i], vals[j]);
                            }
                        }
                    }
                    for &d in divisors(grp.exponent()).unwrap().iter() {
                        if k % d != 0 {
                            assert!(chi_k(&grp, k, d).unwrap().is_zero());
                        }
                    }
                    let sum: BigUint = vals.iter().sum();
                    assert_eq!(sum, binomial(n, k as i64));
                }
            }
        }
    }
}
