//! Divisor-indexed integer matrices: the blocks `M(p^m)`, their Kronecker
//! products `M(k)`, the reversal permutation `W(k)`, Ramanujan sums, and
//! exact determinant / characteristic polynomial routines.
//!
//! Rows and columns are always stored in ascending divisor order, so a
//! Kronecker product of coprime factors is the same array whichever factor
//! comes first.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, factorize, gcd, is_prime, moebius, totient};

/// Square integer matrix indexed by the ascending divisors of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorMatrix {
    k: u64,
    divisors: Vec<u64>,
    entries: Vec<Vec<BigInt>>,
}

impl DivisorMatrix {
    /// Builds the matrix whose `(t, d)` entry is `f(t, d)`.
    pub fn from_fn<F>(k: u64, mut f: F) -> Result<Self>
    where
        F: FnMut(u64, u64) -> BigInt,
    {
        let divisors = divisors(k)?.to_vec();
        let entries = divisors
            .iter()
            .map(|&t| divisors.iter().map(|&d| f(t, d)).collect())
            .collect();
        Ok(DivisorMatrix {
            k,
            divisors,
            entries,
        })
    }

    pub fn from_rows(k: u64, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let divisors = divisors(k)?.to_vec();
        let n = divisors.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidQuery(format!(
                "a matrix over the divisors of {k} must be {n}x{n}"
            )));
        }
        Ok(DivisorMatrix {
            k,
            divisors,
            entries: rows,
        })
    }

    pub fn identity(k: u64) -> Result<Self> {
        Self::from_fn(k, |t, d| BigInt::from((t == d) as i32))
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn size(&self) -> usize {
        self.divisors.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.divisors.binary_search(&d).ok()
    }

    /// Entry at row divisor `t`, column divisor `d`.
    pub fn get(&self, t: u64, d: u64) -> Result<&BigInt> {
        let i = self
            .index_of(t)
            .ok_or(Error::NotADivisor { d: t, k: self.k })?;
        let j = self
            .index_of(d)
            .ok_or(Error::NotADivisor { d, k: self.k })?;
        Ok(&self.entries[i][j])
    }

    pub fn mul(&self, other: &DivisorMatrix) -> Result<DivisorMatrix> {
        if self.k != other.k {
            return Err(Error::InvalidQuery(format!(
                "cannot multiply matrices over D_{} and D_{}",
                self.k, other.k
            )));
        }
        let n = self.size();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (l, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell += a * &other.entries[l][j];
                }
            }
        }
        Ok(DivisorMatrix {
            k: self.k,
            divisors: self.divisors.clone(),
            entries: out,
        })
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.entries)
    }

    /// Characteristic polynomial `det(X I - M)`, coefficients in ascending degree.
    pub fn char_poly(&self) -> Vec<BigInt> {
        char_poly(&self.entries)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    k: u64,
    divisors: Vec<u64>,
    rows: Vec<Vec<String>>,
}

impl Serialize for DivisorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            k: self.k,
            divisors: self.divisors.clone(),
            rows: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(de)?;
        let rows = raw
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.parse::<BigInt>().map_err(D::Error::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let m = DivisorMatrix::from_rows(raw.k, rows).map_err(D::Error::custom)?;
        if m.divisors != raw.divisors {
            return Err(D::Error::custom("divisor labels do not match k"));
        }
        Ok(m)
    }
}

impl std::fmt::Display for DivisorMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .chain(self.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>().iter())
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        write!(f, "{:>width$} |", "")?;
        for d in &self.divisors {
            write!(f, " {:>width$}", d)?;
        }
        writeln!(f)?;
        for (d, row) in self.divisors.iter().zip(&cells) {
            write!(f, "{:>width$} |", d)?;
            for c in row {
                write!(f, " {:>width$}", c)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The block `M(p^m)`: first column 1, superdiagonal `-p^(j-1)`, and
/// `(p-1) p^(j-2)` on and below the diagonal from the second column on.
pub fn prime_power_block(p: u64, m: u32) -> Result<DivisorMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidQuery("prime power exponent must be >= 1".into()));
    }
    let e = BigInt::from(p - 1);
    let size = m as usize + 1;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for (i, row) in rows.iter_mut().enumerate() {
        row[0] = BigInt::one();
        for (j, cell) in row.iter_mut().enumerate().skip(1) {
            if j == i + 1 {
                *cell = -BigInt::from(p).pow(i as u32);
            } else if j <= i {
                *cell = &e * BigInt::from(p).pow(j as u32 - 1);
            }
        }
    }
    DivisorMatrix::from_rows(p.pow(m), rows)
}

/// Kronecker product of matrices over coprime divisor sets, stored in the
/// ascending divisor order of `k1 * k2`.
pub fn kronecker(a: &DivisorMatrix, b: &DivisorMatrix) -> Result<DivisorMatrix> {
    let (k1, k2) = (a.k, b.k);
    if gcd(k1, k2) != 1 {
        return Err(Error::NotCoprime(k1, k2));
    }
    DivisorMatrix::from_fn(k1 * k2, |t, d| {
        let (t1, t2) = (gcd(t, k1), gcd(t, k2));
        let (d1, d2) = (gcd(d, k1), gcd(d, k2));
        // both lookups are valid: t1, d1 | k1 and t2, d2 | k2
        a.get(t1, d1).unwrap() * b.get(t2, d2).unwrap()
    })
}

/// `M(k)` as the Kronecker product of its prime-power blocks.
pub fn build_m(k: u64) -> Result<DivisorMatrix> {
    let f = factorize(k)?;
    let mut acc = DivisorMatrix::identity(1)?;
    for &(p, e) in f.factors() {
        acc = kronecker(&acc, &prime_power_block(p, e)?)?;
    }
    Ok(acc)
}

fn check_divides(d: u64, k: u64) -> Result<()> {
    if d == 0 || k % d != 0 {
        Err(Error::NotADivisor { d, k })
    } else {
        Ok(())
    }
}

/// Prime-power entry `M(q)_{u,v}`.
fn prime_power_entry(u: u64, v: u64) -> i64 {
    if v > u {
        moebius(v / u).unwrap() * u as i64
    } else {
        totient(v).unwrap() as i64
    }
}

/// `M(k)_{t,d}` as a product of prime-power entries, without building the matrix.
pub fn entry_closed_form(k: u64, t: u64, d: u64) -> Result<i64> {
    check_divides(t, k)?;
    check_divides(d, k)?;
    Ok(factorize(k)?
        .prime_power_parts()
        .into_iter()
        .map(|q| prime_power_entry(gcd(q, t), gcd(q, d)))
        .product())
}

/// The local factor `a(d, d', f)` for a prime power `f`.
pub fn a_factor(d: u64, d_prime: u64, f: u64) -> Result<i64> {
    if f == 0 || !factorize(f)?.is_prime_power() {
        return Err(Error::NotPrimePower(f));
    }
    let g = gcd(f, d);
    let g_prime = gcd(f, d_prime);
    if g % g_prime == 0 {
        Ok(totient(g_prime)? as i64)
    } else {
        Ok(moebius(g_prime / g)? * g as i64)
    }
}

/// `M(k)_{d,d'}` as the product of `a(d, d', f)` over the prime powers `f` exactly dividing `k`.
pub fn entry_product_formula(k: u64, d: u64, d_prime: u64) -> Result<i64> {
    check_divides(d, k)?;
    check_divides(d_prime, k)?;
    factorize(k)?
        .prime_power_parts()
        .into_iter()
        .map(|f| a_factor(d, d_prime, f))
        .product()
}

/// Square-free shortcut `mu(d' / gcd(d, d')) * phi(gcd(d, d'))`.
pub fn squarefree_entry(k: u64, d: u64, d_prime: u64) -> Result<i64> {
    if !factorize(k)?.is_square_free() {
        return Err(Error::NotSquareFree(k));
    }
    check_divides(d, k)?;
    check_divides(d_prime, k)?;
    let g = gcd(d, d_prime);
    Ok(moebius(d_prime / g)? * totient(g)? as i64)
}

/// Ramanujan sum `c_d(s) = mu(d/g) phi(d) / phi(d/g)` with `g = gcd(s, d)`.
pub fn ramanujan_sum(d: u64, s: i64) -> Result<i64> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    let g = gcd(s.unsigned_abs(), d);
    let q = d / g;
    let mu = moebius(q)?;
    if mu == 0 {
        return Ok(0);
    }
    Ok(mu * (totient(d)? / totient(q)?) as i64)
}

/// Tolerance for the floating-point Ramanujan sum before rounding.
pub const ROOTS_TOLERANCE: f64 = 1e-6;

/// `c_d(s)` summed numerically over the primitive `d`-th roots of unity.
/// Only meant as an independent check of [`ramanujan_sum`].
pub fn ramanujan_sum_roots(d: u64, s: i64) -> Result<i64> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    let s_mod = s.rem_euclid(d as i64) as u64;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for j in 1..=d {
        if gcd(j, d) != 1 {
            continue;
        }
        let r = ((j as u128 * s_mod as u128) % d as u128) as f64;
        let angle = std::f64::consts::TAU * r / d as f64;
        re += angle.cos();
        im += angle.sin();
    }
    let rounded = re.round();
    let residual = (re - rounded).abs().max(im.abs());
    if residual > ROOTS_TOLERANCE {
        return Err(Error::NotNearInteger { d, s, residual });
    }
    Ok(rounded as i64)
}

/// Permutation matrix `W(k)` with `W_{d,d'} = 1` iff `d' = k/d`.
pub fn reversal_matrix(k: u64) -> Result<DivisorMatrix> {
    DivisorMatrix::from_fn(k, |d, e| BigInt::from((e * d == k) as i32))
}

/// Outcome of one structural check on `M(k)`.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MPropertyReport {
    pub k: u64,
    pub checks: Vec<PropertyCheck>,
}

impl MPropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `k^(n/2)`, for `n` odd only defined when `k` is a perfect square.
fn half_power(k: u64, n: usize) -> Option<BigInt> {
    if n % 2 == 0 {
        return Some(BigInt::from(k).pow(n as u32 / 2));
    }
    let r = num_integer::Roots::sqrt(&k);
    (r * r == k).then(|| BigInt::from(r).pow(n as u32))
}

/// Checks the seven structural properties of `M(k)`:
/// 1. entries equal the product of local factors `a(d, d', f)`;
/// 2. `(W M)^2 = k I`;
/// 3. `det M = k^(tau(k)/2)`;
/// 4. row sums are `k` on the last row and zero elsewhere;
/// 5. first row is `mu(d)`;
/// 6. last row is `phi(d)`;
/// 7. first column is all ones.
pub fn verify_m_properties(k: u64) -> Result<MPropertyReport> {
    let m = build_m(k)?;
    let divs = m.divisors().to_vec();
    let n = divs.len();
    let mut checks = Vec::with_capacity(7);
    let mut push = |id, name, failure: Option<String>| {
        checks.push(PropertyCheck {
            id,
            name,
            passed: failure.is_none(),
            detail: failure,
        })
    };

    let mut bad = None;
    'outer: for &t in &divs {
        for &d in &divs {
            let want = entry_product_formula(k, t, d)?;
            if *m.get(t, d)? != BigInt::from(want) {
                bad = Some(format!("entry ({t},{d}): {} != {want}", m.get(t, d)?));
                break 'outer;
            }
        }
    }
    push(1, "entry product formula", bad);

    let wm = reversal_matrix(k)?.mul(&m)?;
    let sq = wm.mul(&wm)?;
    let kid = DivisorMatrix::from_fn(k, |t, d| {
        if t == d {
            BigInt::from(k)
        } else {
            BigInt::zero()
        }
    })?;
    push(
        2,
        "(W M)^2 = k I",
        (sq != kid).then(|| "(W M)^2 differs from k I".to_string()),
    );

    let det = m.determinant();
    let expected = half_power(k, n);
    push(
        3,
        "det M = k^(tau/2)",
        match expected {
            Some(e) if e == det => None,
            Some(e) => Some(format!("det {det} != {e}")),
            None => Some(format!("k^(tau/2) not integral, det {det}")),
        },
    );

    let sums = m.row_sums();
    let bad = divs.iter().zip(&sums).find_map(|(&d, s)| {
        let want = if d == k { BigInt::from(k) } else { BigInt::zero() };
        (*s != want).then(|| format!("row {d} sums to {s}, expected {want}"))
    });
    push(4, "row sums = k delta_{d,k}", bad);

    let bad = divs.iter().find_map(|&d| {
        let want = BigInt::from(moebius(d).unwrap());
        let got = m.get(1, d).unwrap();
        (*got != want).then(|| format!("M_(1,{d}) = {got}, expected {want}"))
    });
    push(5, "first row = mu(d)", bad);

    let bad = divs.iter().find_map(|&d| {
        let want = BigInt::from(totient(d).unwrap());
        let got = m.get(k, d).unwrap();
        (*got != want).then(|| format!("M_({k},{d}) = {got}, expected {want}"))
    });
    push(6, "last row = phi(d)", bad);

    let bad = divs.iter().find_map(|&d| {
        let got = m.get(d, 1).unwrap();
        (!got.is_one()).then(|| format!("M_({d},1) = {got}, expected 1"))
    });
    push(7, "first column = 1", bad);

    Ok(MPropertyReport { k, checks })
}

/// Symmetric square of `M(p)` in the basis `f1 f1, f1 fp, fp fp`, indexed by `1, p, p^2`.
pub fn sym_square_mp(p: u64) -> Result<DivisorMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as i64;
    let rows = [
        [1, 1, 1],
        [-2, p - 2, 2 * (p - 1)],
        [1, 1 - p, (p - 1) * (p - 1)],
    ];
    DivisorMatrix::from_rows(
        (p * p) as u64,
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

/// Fraction-free (Bareiss) determinant with row pivoting.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        if a[c][c].is_zero() {
            match (c + 1..n).find(|&r| !a[r][c].is_zero()) {
                Some(r) => {
                    a.swap(c, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[c][c].clone();
    }
    sign * &a[n - 1][n - 1]
}

type Poly = Vec<BigInt>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Exact division by a monic polynomial.
fn poly_div_monic(a: &Poly, b: &Poly) -> Poly {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let db = b.len() - 1;
    if a.len() <= db {
        debug_assert!(a.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    poly_trim(q)
}

/// `det(X I - A)` by Bareiss elimination over `Z[X]`, ascending coefficients.
///
/// Every pivot is a leading principal minor of `X I - A`, hence monic, so no
/// row exchanges are needed and each division is exact.
pub fn char_poly(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut a: Vec<Vec<Poly>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| {
                    if i == j {
                        vec![-x, BigInt::one()]
                    } else {
                        vec![-x]
                    }
                })
                .collect()
        })
        .collect();
    let mut prev: Poly = vec![BigInt::one()];
    for c in 0..n - 1 {
        for i in c + 1..n {
            for j in c + 1..n {
                let v = poly_sub(&poly_mul(&a[c][c], &a[i][j]), &poly_mul(&a[i][c], &a[c][j]));
                a[i][j] = poly_div_monic(&v, &prev);
            }
        }
        prev = a[c][c].clone();
    }
    a[n - 1][n - 1].clone()
}

/// Multiplies polynomials given as ascending coefficient lists.
pub fn poly_product(factors: &[Vec<BigInt>]) -> Vec<BigInt> {
    factors
        .iter()
        .fold(vec![BigInt::one()], |acc, f| poly_mul(&acc, f))
}

/// Renders an ascending coefficient list as `X^2 - 2X + 4`.
pub fn format_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let show_mag = deg == 0 || !mag.is_one();
        if show_mag {
            out.push_str(&mag.to_string());
        }
        match deg {
            0 => {}
            1 => out.push('X'),
            _ => out.push_str(&format!("X^{deg}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Helper for tests and callers comparing against small literal matrices.
pub fn to_i64_rows(m: &DivisorMatrix) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    m.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &DivisorMatrix) -> Vec<Vec<i64>> {
        to_i64_rows(m)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn prime_power_block_examples() {
        assert_eq!(rows(&prime_power_block(2, 1).unwrap()), vec![vec![1, -1], vec![1, 1]]);
        assert_eq!(
            rows(&prime_power_block(2, 2).unwrap()),
            vec![vec![1, -1, 0], vec![1, 1, -2], vec![1, 1, 2]]
        );
        assert_eq!(rows(&prime_power_block(3, 1).unwrap()), vec![vec![1, -1], vec![1, 2]]);
        assert_eq!(prime_power_block(4, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn prime_power_block_matches_local_entry_rule() {
        for &p in &[2u64, 3, 5, 7, 11] {
            for m in 1..=5u32 {
                let blk = prime_power_block(p, m).unwrap();
                for &u in blk.divisors() {
                    for &v in blk.divisors() {
                        assert_eq!(*blk.get(u, v).unwrap(), BigInt::from(prime_power_entry(u, v)));
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        let m2 = build_m(2).unwrap();
        let m3 = build_m(3).unwrap();
        let k23 = kronecker(&m2, &m3).unwrap();
        assert_eq!(k23.divisors(), &[1, 2, 3, 6]);
        assert_eq!(
            rows(&k23),
            vec![
                vec![1, -1, -1, 1],
                vec![1, 1, -1, -1],
                vec![1, -1, 2, -2],
                vec![1, 1, 2, 2]
            ]
        );
        assert_eq!(k23, kronecker(&m3, &m2).unwrap());
        let one = build_m(1).unwrap();
        assert_eq!(kronecker(&one, &m3).unwrap(), m3);
        assert_eq!(kronecker(&m2, &build_m(4).unwrap()), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn build_m_examples() {
        assert_eq!(rows(&build_m(1).unwrap()), vec![vec![1]]);
        assert_eq!(
            rows(&build_m(4).unwrap()),
            vec![vec![1, -1, 0], vec![1, 1, -2], vec![1, 1, 2]]
        );
        assert_eq!(build_m(6).unwrap(), kronecker(&build_m(2).unwrap(), &build_m(3).unwrap()).unwrap());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(entry_closed_form(4, 2, 4).unwrap(), -2);
        for k in [1u64, 12, 30, 64, 90] {
            for &d in divisors(k).unwrap().iter() {
                assert_eq!(entry_closed_form(k, 1, d).unwrap(), moebius(d).unwrap());
                assert_eq!(entry_closed_form(k, k, d).unwrap(), totient(d).unwrap() as i64);
            }
        }
        assert!(matches!(entry_closed_form(12, 5, 1), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn a_factor_examples() {
        assert_eq!(a_factor(1, 2, 2).unwrap(), -1);
        assert_eq!(a_factor(2, 2, 2).unwrap(), 1);
        assert_eq!(a_factor(4, 8, 8).unwrap(), -4);
        assert_eq!(a_factor(1, 1, 6), Err(Error::NotPrimePower(6)));
        assert_eq!(a_factor(1, 1, 1), Err(Error::NotPrimePower(1)));
    }

    #[test]
    fn product_formula_examples() {
        assert_eq!(entry_product_formula(6, 2, 6).unwrap(), -1);
        for k in [1u64, 8, 12, 45] {
            for &d in divisors(k).unwrap().iter() {
                assert_eq!(entry_product_formula(k, d, 1).unwrap(), 1);
            }
        }
        assert_eq!(
            entry_product_formula(12, 6, 4).unwrap(),
            a_factor(6, 4, 4).unwrap() * a_factor(6, 4, 3).unwrap()
        );
        // a(6,4,4): gcd(4,4)=4 does not divide gcd(4,6)=2, so mu(2)*2 = -2; a(6,4,3) = phi(1) = 1
        assert_eq!(entry_product_formula(12, 6, 4).unwrap(), -2);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_entry(6, 2, 6).unwrap(), -1);
        for &d in divisors(30).unwrap().iter() {
            assert_eq!(squarefree_entry(30, d, d).unwrap(), totient(d).unwrap() as i64);
            assert_eq!(squarefree_entry(30, 30, d).unwrap(), totient(d).unwrap() as i64);
        }
        assert_eq!(squarefree_entry(12, 1, 1), Err(Error::NotSquareFree(12)));
    }

    #[test]
    fn ramanujan_examples() {
        for s in -5..20 {
            assert_eq!(ramanujan_sum(1, s).unwrap(), 1);
        }
        assert_eq!(ramanujan_sum(4, 2).unwrap(), -2);
        assert_eq!(ramanujan_sum(6, 2).unwrap(), -1);
        assert_eq!(ramanujan_sum_roots(1, 0).unwrap(), 1);
        assert_eq!(ramanujan_sum_roots(2, 1).unwrap(), -1);
        assert_eq!(ramanujan_sum_roots(4, 2).unwrap(), -2);
        assert_eq!(ramanujan_sum(6, 2).unwrap(), entry_closed_form(6, 2, 6).unwrap());
    }

    #[test]
    fn ramanujan_multiplicative() {
        for d in 1..=100u64 {
            for e in 1..=100u64 {
                if gcd(d, e) != 1 {
                    continue;
                }
                for s in 0..=100i64 {
                    assert_eq!(
                        ramanujan_sum(d * e, s).unwrap(),
                        ramanujan_sum(d, s).unwrap() * ramanujan_sum(e, s).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn ramanujan_roots_large_d() {
        for d in [9973u64, 10_000] {
            for s in [0i64, 1, 2, 5, 100, 9973] {
                assert_eq!(ramanujan_sum_roots(d, s).unwrap(), ramanujan_sum(d, s).unwrap());
            }
        }
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(rows(&reversal_matrix(1).unwrap()), vec![vec![1]]);
        assert_eq!(rows(&reversal_matrix(7).unwrap()), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            rows(&reversal_matrix(4).unwrap()),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn property_examples() {
        assert_eq!(build_m(2).unwrap().determinant(), BigInt::from(2));
        assert_eq!(build_m(6).unwrap().row_sums(), big(&[0, 0, 0, 6]));
        let w = reversal_matrix(4).unwrap();
        let wm = w.mul(&build_m(4).unwrap()).unwrap();
        assert_eq!(
            rows(&wm.mul(&wm).unwrap()),
            vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]]
        );
        for k in 1..=60 {
            let r = verify_m_properties(k).unwrap();
            assert!(r.all_passed(), "{r:?}");
            assert_eq!(r.checks.len(), 7);
        }
    }

    #[test]
    fn verify_reports_broken_matrix() {
        // a non-square k with odd tau is exercised by k = 36
        let r = verify_m_properties(36).unwrap();
        assert!(r.all_passed());
        assert_eq!(half_power(36, 9), Some(BigInt::from(6).pow(9)));
        assert_eq!(half_power(12, 3), None);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&[]), BigInt::one());
        assert_eq!(determinant(&[big(&[0, 1]), big(&[1, 0])]), BigInt::from(-1));
        assert_eq!(
            determinant(&[big(&[2, 0, 1]), big(&[1, 3, 2]), big(&[1, 1, 2])]),
            BigInt::from(6)
        );
        // zero pivot after the first elimination step forces a row swap
        assert_eq!(
            determinant(&[big(&[1, 1, 0]), big(&[1, 1, 1]), big(&[0, 1, 1])]),
            BigInt::from(-1)
        );
        assert_eq!(determinant(&[big(&[1, 2]), big(&[2, 4])]), BigInt::zero());
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(build_m(1).unwrap().char_poly(), big(&[-1, 1]));
        // (X - 2)(X^2 - 2X + 4)
        let want = poly_product(&[big(&[-2, 1]), big(&[4, -2, 1])]);
        assert_eq!(build_m(4).unwrap().char_poly(), want);
        // (X - 2)(X^2 + 0 X + 4)
        let want = poly_product(&[big(&[-2, 1]), big(&[4, 0, 1])]);
        assert_eq!(sym_square_mp(2).unwrap().char_poly(), want);
        assert_eq!(format_poly(&big(&[4, -2, 1])), "X^2 - 2X + 4");
    }

    #[test]
    fn char_poly_matches_determinant() {
        // constant term is (-1)^n det(A)
        for k in [6u64, 12, 30, 36, 60] {
            let m = build_m(k).unwrap();
            let cp = m.char_poly();
            let n = m.size();
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(cp[0], sign * m.determinant());
            assert_eq!(cp.len(), n + 1);
            assert!(cp[n].is_one());
        }
    }

    #[test]
    fn sym_square_examples() {
        assert_eq!(
            rows(&sym_square_mp(2).unwrap()),
            vec![vec![1, 1, 1], vec![-2, 0, 2], vec![1, -1, 1]]
        );
        assert_eq!(
            rows(&sym_square_mp(3).unwrap()),
            vec![vec![1, 1, 1], vec![-2, 1, 4], vec![1, -2, 4]]
        );
        for p in [2u64, 3, 5, 7] {
            assert_ne!(
                sym_square_mp(p).unwrap().char_poly(),
                build_m(p * p).unwrap().char_poly()
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let m = build_m(12).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"k\":12,\"divisors\":[1,2,3,4,6,12],\"rows\":[[\"1\""));
        let back: DivisorMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
