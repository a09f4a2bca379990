//! Recovering `M(k)` from data.
//!
//! The first `k` coefficients of each `G_{k,s}` are computable from counts of
//! strictly smaller subsets (complements), so assuming `G_{k,s}` is an integer
//! combination of the `P_{k,d}`, the matrix entries solve an overdetermined
//! linear system. This module assembles that system and solves it exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::counting::{complement_transfer, t_count, CountQuery};
use crate::divmatrix::DivisorMatrix;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd};
use crate::series::p_series;

/// Default largest `k` the CLI will reconstruct.
pub const DEFAULT_CEILING: u64 = 24;

/// `T(n, k, s)` for `n = k, .., 2k-1`, each obtained from the complementary
/// count `T(n, n-k, s + eps_n)` with `n - k < k` (`eps_n = n/2` for even `n`, else 0).
pub fn empirical_g_prefix(k: u64, s: i64) -> Result<Vec<BigUint>> {
    if k == 0 {
        return Err(Error::ZeroArgument);
    }
    (k..2 * k)
        .map(|n| {
            let q = if n == k {
                // the complement of the full set is empty
                let eps = if n % 2 == 0 { (n / 2) as i64 } else { 0 };
                CountQuery::new(n, 0, s + eps)?
            } else {
                complement_transfer(n, k, s)?
            };
            debug_assert!(q.k() < k);
            t_count(&q)
        })
        .collect()
}

/// One linear equation: coefficients over the unknowns and the right-hand side.
#[derive(Debug, Clone)]
pub struct Equation {
    pub coefficients: Vec<BigRational>,
    pub rhs: BigRational,
}

/// The linear system for the unknowns `M_{t,d}`, `t, d | k`.
#[derive(Debug, Clone)]
pub struct EmpiricalSystem {
    pub k: u64,
    /// Unknown labels `(t, d)`, row-major over ascending divisors.
    pub unknowns: Vec<(u64, u64)>,
    pub equations: Vec<Equation>,
}

impl EmpiricalSystem {
    /// One equation per residue `s` in `0..k` and per coefficient `x^n`, `k <= n < 2k`.
    pub fn assemble(k: u64) -> Result<Self> {
        let divs = divisors(k)?.to_vec();
        let tau = divs.len();
        let unknowns: Vec<(u64, u64)> = divs
            .iter()
            .flat_map(|&t| divs.iter().map(move |&d| (t, d)))
            .collect();
        let order = 2 * k as usize;
        let basis: Vec<_> = divs
            .iter()
            .map(|&d| p_series(k, d, order))
            .collect::<Result<_>>()?;
        let mut equations = Vec::with_capacity((k * k) as usize);
        for s in 0..k {
            let t = gcd(k, s);
            let row_of_t = divs.binary_search(&t).expect("gcd divides k");
            let prefix = empirical_g_prefix(k, s as i64)?;
            for (j, value) in prefix.into_iter().enumerate() {
                let n = k as usize + j;
                let mut coefficients = vec![BigRational::zero(); tau * tau];
                for (col, p) in basis.iter().enumerate() {
                    coefficients[row_of_t * tau + col] = p.coefficient(n)?.clone();
                }
                equations.push(Equation {
                    coefficients,
                    rhs: BigRational::from_integer(BigInt::from(value)),
                });
            }
        }
        Ok(EmpiricalSystem {
            k,
            unknowns,
            equations,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Discovery {
    pub k: u64,
    pub matrix: DivisorMatrix,
    /// Full column rank: the solution is unique.
    pub unique: bool,
    pub consistent: bool,
    pub rank: usize,
    pub unknowns: usize,
    pub equations: usize,
    /// Unknown labels `(t, d)` that received a pivot, in elimination order.
    pub pivots: Vec<(u64, u64)>,
}

struct Reduced {
    rank: usize,
    consistent: bool,
    pivot_cols: Vec<usize>,
    solution: Vec<BigRational>,
}

/// Gauss–Jordan elimination over the rationals. The pivot in each column is
/// the candidate with the largest numerator magnitude.
fn eliminate(system: &EmpiricalSystem) -> Reduced {
    let cols = system.unknowns.len();
    let mut rows: Vec<Vec<BigRational>> = system
        .equations
        .iter()
        .map(|e| {
            let mut r = e.coefficients.clone();
            r.push(e.rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let pivot = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .max_by(|&a, &b| rows[a][c].numer().abs().cmp(&rows[b][c].numer().abs()));
        let Some(p) = pivot else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let consistent = rows[r..].iter().all(|row| row[cols].is_zero());
    let mut solution = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        solution[c] = rows[i][cols].clone();
    }
    Reduced {
        rank: pivot_cols.len(),
        consistent,
        pivot_cols,
        solution,
    }
}

/// Solves the empirical system for `k` and returns the recovered matrix.
pub fn solve_matrix(k: u64) -> Result<Discovery> {
    let system = EmpiricalSystem::assemble(k)?;
    let reduced = eliminate(&system);
    let unknowns = system.unknowns.len();
    if !reduced.consistent {
        return Err(Error::Inconsistent);
    }
    if reduced.rank < unknowns {
        return Err(Error::RankDeficient {
            rank: reduced.rank,
            unknowns,
        });
    }
    if reduced.solution.iter().any(|x| !x.is_integer()) {
        return Err(Error::NonIntegral);
    }
    let tau = divisors(k)?.len();
    let rows: Vec<Vec<BigInt>> = reduced
        .solution
        .chunks(tau)
        .map(|c| c.iter().map(|x| x.to_integer()).collect())
        .collect();
    Ok(Discovery {
        k,
        matrix: DivisorMatrix::from_rows(k, rows)?,
        unique: true,
        consistent: true,
        rank: reduced.rank,
        unknowns,
        equations: system.equations.len(),
        pivots: reduced
            .pivot_cols
            .iter()
            .map(|&c| system.unknowns[c])
            .collect(),
    })
}

pub fn check_ceiling(k: u64, ceiling: u64) -> Result<()> {
    if k > ceiling {
        return Err(Error::CeilingExceeded {
            what: "k",
            value: k,
            ceiling,
        });
    }
    Ok(())
}
