//! Truncated power series with exact rational coefficients, and the
//! generating functions `G_{k,d} = sum_n T(n, k, d) x^n` expressed as
//! `M(k)` applied to the basis series `P_{k,d}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::divmatrix::build_m;
use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, sign_pow, totient};

/// `sum_{i < order} c_i x^i + O(x^order)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coefficients: vec![BigRational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    pub fn monomial(c: BigRational, exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent < order {
            s.coefficients[exponent] = c;
        }
        s
    }

    pub fn from_coefficients(coefficients: Vec<BigRational>) -> Self {
        TruncatedSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigRational> {
        self.coefficients.get(n).ok_or_else(|| {
            Error::InvalidQuery(format!(
                "coefficient index {n} out of range for order {}",
                self.order()
            ))
        })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidQuery(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coefficients: out })
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Result<Self> {
        let n = self.order();
        let c0 = match self.coefficients.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => {
                return Err(Error::InvalidQuery(
                    "series with zero constant term has no reciprocal".into(),
                ))
            }
        };
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n];
        out[0] = inv0.clone();
        for m in 1..n {
            let mut acc = BigRational::zero();
            for i in 1..=m {
                let a = &self.coefficients[i];
                if !a.is_zero() {
                    acc += a * &out[m - i];
                }
            }
            out[m] = -acc * &inv0;
        }
        Ok(TruncatedSeries { coefficients: out })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// Nonzero coefficients keyed by exponent, as decimal strings (`"p/q"` when not integral).
    pub fn sparse(&self) -> BTreeMap<usize, String> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect()
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .sparse()
            .into_iter()
            .map(|(e, c)| (e.to_string(), c))
            .collect();
        map.serialize(s)
    }
}

/// `P_{k,d} = (-1)^(k - k/d) / k * x^k / (1 - x^d)^(k/d)` through `x^(order-1)`.
///
/// `(1 - x^d)^(-j)` with `j = k/d` contributes `C(m + j - 1, j - 1)` at `x^(d m)`.
pub fn p_series(k: u64, d: u64, order: usize) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::ZeroArgument);
    }
    if d == 0 || k % d != 0 {
        return Err(Error::NotADivisor { d, k });
    }
    if order as u64 <= k {
        return Err(Error::InvalidQuery(format!(
            "truncation order {order} must exceed k = {k}"
        )));
    }
    let j = k / d;
    let lead = BigRational::new(BigInt::from(sign_pow(k - j)), BigInt::from(k));
    let mut out = TruncatedSeries::zero(order);
    let mut m = 0u64;
    while k + d * m < order as u64 {
        let c = binomial(m + j - 1, (j - 1) as i64);
        out.coefficients[(k + d * m) as usize] = &lead * BigRational::from_integer(c.into());
        m += 1;
    }
    Ok(out)
}

/// The vector `G_k = M(k) P_k`, one series per divisor of `k` in ascending order.
pub fn g_vector(k: u64, order: usize) -> Result<Vec<(u64, TruncatedSeries)>> {
    let m = build_m(k)?;
    let basis: Vec<TruncatedSeries> = m
        .divisors()
        .iter()
        .map(|&d| p_series(k, d, order))
        .collect::<Result<_>>()?;
    m.divisors()
        .iter()
        .zip(m.rows())
        .map(|(&t, row)| {
            let mut acc = TruncatedSeries::zero(order);
            for (c, p) in row.iter().zip(&basis) {
                if !c.is_zero() {
                    acc = acc.add(&p.scale(&BigRational::from_integer(c.clone())))?;
                }
            }
            Ok((t, acc))
        })
        .collect()
}

/// Barnes-form generating function of zero-sum subsets,
/// `sum_{s | k} (-1)^(k - k/s) phi(s) / k * x^k / (1 - x^s)^(k/s)`,
/// computed by generic series inversion rather than the stride expansion used in [`p_series`].
pub fn zero_sum_series(k: u64, order: usize) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut acc = TruncatedSeries::zero(order);
    for &s in divisors(k)?.iter() {
        let mut base = TruncatedSeries::one(order);
        if (s as usize) < order {
            base = base.sub(&TruncatedSeries::monomial(rat(1), s as usize, order))?;
        }
        let denom = base.pow((k / s) as u32)?.reciprocal()?;
        let c = BigRational::new(
            BigInt::from(sign_pow(k - k / s) * totient(s)? as i64),
            BigInt::from(k),
        );
        let xk = TruncatedSeries::monomial(c, k as usize, order);
        acc = acc.add(&xk.mul(&denom)?)?;
    }
    Ok(acc)
}

/// True if every coefficient is a nonnegative integer.
pub fn is_counting_series(s: &TruncatedSeries) -> bool {
    s.coefficients().iter().all(|c| c.is_integer() && !c.is_negative())
}
