//! Invariant sweeps shared by the `verify` command and the acceptance tests.
//!
//! Every check is recorded as a [`Case`] holding an expected and an observed
//! value rendered as text; a case passes when the two agree. Sweeps over
//! independent parameters run on the rayon pool and keep their input order.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{self, AbelianGroup};
use crate::counting::{
    self, brute_force, canonical_s, full_set_row_identity, hadjicostas_rhs, line_pair_conics,
    lyndon, lyndon_identity_check, necklace_identity_check, necklaces, sum_distribution, t,
    CountQuery,
};
use crate::discovery::solve_matrix;
use crate::divmatrix::{
    build_m, char_poly, entry_closed_form, kronecker, prime_power_block, ramanujan_sum,
    ramanujan_sum_roots, sym_square_mp, verify_m_properties, DivisorMatrix,
};
use crate::error::Result;
use crate::numtheory::{divisors, gcd};
use crate::series::{g_vector, is_counting_series, zero_sum_series};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: String,
    pub expected: String,
    pub got: String,
}

impl Case {
    pub fn new(id: impl Into<String>, expected: impl ToString, got: impl ToString) -> Self {
        Case {
            id: id.into(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }

    pub fn check(id: impl Into<String>, ok: bool) -> Self {
        Case::new(id, true, ok)
    }

    fn from_result<T: ToString>(id: impl Into<String>, expected: impl ToString, got: Result<T>) -> Self {
        let got = match got {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        Case::new(id, expected, got)
    }

    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

/// Summary of one suite run, as printed by `verify --json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Case>,
}

impl Report {
    pub fn from_cases(suite: impl Into<String>, cases: Vec<Case>) -> Self {
        Report {
            suite: suite.into(),
            cases: cases.len(),
            failures: cases.into_iter().filter(|c| !c.passed()).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn error_case(id: impl Into<String>, e: crate::Error) -> Case {
    Case::new(id, "ok", format!("error: {e}"))
}

fn flatten(chunks: Vec<Vec<Case>>) -> Vec<Case> {
    chunks.into_iter().flatten().collect()
}

/// Closed form against full enumeration, one case per `(n, k)` covering every residue.
pub fn oracle_equivalence(nmax: u64, budget: u64) -> Vec<Case> {
    let pairs: Vec<(u64, u64)> = (1..=nmax).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    pairs
        .into_par_iter()
        .map(|(n, k)| {
            let id = format!("oracle n={n} k={k}");
            let hist = match sum_distribution(n, k, budget) {
                Ok(h) => h,
                Err(e) => return error_case(id, e),
            };
            let closed: Result<Vec<String>> = (0..n as i64)
                .map(|s| t(n, k as i64, s).map(|v| v.to_string()))
                .collect();
            let want: Vec<String> = hist.iter().map(u64::to_string).collect();
            Case::from_result(id, want.join(","), closed.map(|v| v.join(",")))
        })
        .collect()
}

/// The seven structural properties of `M(k)` for every `k <= kmax`.
pub fn m_properties(kmax: u64) -> Vec<Case> {
    flatten(
        (1..=kmax)
            .into_par_iter()
            .map(|k| match verify_m_properties(k) {
                Ok(report) => report
                    .checks
                    .into_iter()
                    .map(|c| {
                        let id = format!("M({k}) property {}: {}", c.id, c.name);
                        match c.detail {
                            None => Case::check(id, true),
                            Some(d) => Case::new(id, "pass", d),
                        }
                    })
                    .collect(),
                Err(e) => vec![error_case(format!("M({k}) properties"), e)],
            })
            .collect(),
    )
}

/// `build_m(k1 k2)` against the Kronecker product in both orders for coprime `k1, k2 > 1`.
pub fn kronecker_commutativity(max_product: u64) -> Vec<Case> {
    let pairs: Vec<(u64, u64)> = (2..=max_product)
        .flat_map(|a| (a + 1..=max_product / a).map(move |b| (a, b)))
        .filter(|&(a, b)| gcd(a, b) == 1)
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let id = format!("M({a}) x M({b})");
            let run = || -> Result<bool> {
                let (ma, mb) = (build_m(a)?, build_m(b)?);
                let m = build_m(a * b)?;
                Ok(kronecker(&ma, &mb)? == m && kronecker(&mb, &ma)? == m)
            };
            Case::from_result(id, true, run())
        })
        .collect()
}

/// Entries of `M(k)` against the Ramanujan sum in closed form and as a numeric root sum.
pub fn ramanujan_identification(kmax: u64) -> Vec<Case> {
    (1..=kmax)
        .into_par_iter()
        .map(|k| {
            let id = format!("M({k}) entries are c_d(t)");
            let run = || -> Result<String> {
                let divs = divisors(k)?;
                for &tt in divs.iter() {
                    for &d in divs.iter() {
                        let entry = entry_closed_form(k, tt, d)?;
                        let closed = ramanujan_sum(d, tt as i64)?;
                        let roots = ramanujan_sum_roots(d, tt as i64)?;
                        if entry != closed || closed != roots {
                            return Ok(format!("t={tt} d={d}: {entry} {closed} {roots}"));
                        }
                    }
                }
                Ok("agree".into())
            };
            Case::from_result(id, "agree", run())
        })
        .collect()
}

/// Series coefficients against counts for `k <= n < 4k`, plus integrality.
pub fn generating_functions(kmax: u64) -> Vec<Case> {
    flatten(
        (1..=kmax)
            .into_par_iter()
            .map(|k| {
                let order = 4 * k as usize;
                let g = match g_vector(k, order) {
                    Ok(g) => g,
                    Err(e) => return vec![error_case(format!("G_{k}"), e)],
                };
                let mut cases = Vec::new();
                for (d, series) in &g {
                    let coeffs: Vec<String> = (k as usize..order)
                        .map(|n| series.coefficients()[n].to_string())
                        .collect();
                    let counts: Result<Vec<String>> = (k..order as u64)
                        .map(|n| t(n, k as i64, *d as i64).map(|v| v.to_string()))
                        .collect();
                    cases.push(Case::from_result(
                        format!("G_({k},{d}) coefficients"),
                        coeffs.join(","),
                        counts.map(|c| c.join(",")),
                    ));
                    cases.push(Case::check(
                        format!("G_({k},{d}) nonnegative integral"),
                        is_counting_series(series),
                    ));
                }
                let last = &g.last().expect("k has a divisor").1;
                cases.push(Case::from_result(
                    format!("G_({k},{k}) zero-sum form"),
                    true,
                    zero_sum_series(k, order).map(|z| z == *last),
                ));
                cases
            })
            .collect(),
    )
}

/// Hadjicostas's identity for all `n <= nmax`, `k <= n`, `s | k`.
pub fn hadjicostas(nmax: u64) -> Vec<Case> {
    let triples: Vec<(u64, u64)> = (1..=nmax).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    flatten(
        triples
            .into_par_iter()
            .map(|(n, k)| {
                divisors(k)
                    .unwrap()
                    .iter()
                    .map(|&s| {
                        let id = format!("Hadjicostas n={n} k={k} s={s}");
                        match t(n, k as i64, s as i64) {
                            Ok(lhs) => Case::from_result(id, lhs, hadjicostas_rhs(n, k, s)),
                            Err(e) => error_case(id, e),
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Necklace and Lyndon identities for `0 < k < n <= nmax`, plus spot values.
pub fn necklace_lyndon(nmax: u64) -> Vec<Case> {
    let pairs: Vec<(u64, u64)> = (2..=nmax).flat_map(|n| (1..n).map(move |k| (n, k))).collect();
    let mut cases: Vec<Case> = flatten(
        pairs
            .into_par_iter()
            .map(|(n, k)| {
                vec![
                    Case::from_result(format!("necklaces n={n} k={k}"), true, necklace_identity_check(n, k)),
                    Case::from_result(format!("Lyndon n={n} k={k}"), true, lyndon_identity_check(n, k)),
                ]
            })
            .collect(),
    );
    cases.push(Case::from_result("N(6,3)", 4, necklaces(6, 3)));
    cases.push(Case::from_result("L(6,3)", 3, lyndon(6, 3)));
    cases.push(Case::from_result("L(4,2)", 1, lyndon(4, 2)));
    cases
}

/// Row identities of `M(k)` forced by the full set, and the reduction `s -> canonical_s`.
pub fn count_identities(kmax: u64, nmax: u64) -> Vec<Case> {
    let mut cases: Vec<Case> = (1..=kmax)
        .into_par_iter()
        .map(|k| Case::from_result(format!("full-set row identity k={k}"), true, full_set_row_identity(k)))
        .collect();
    let pairs: Vec<(u64, u64)> = (1..=nmax).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    cases.par_extend(pairs.into_par_iter().map(|(n, k)| {
        let id = format!("canonical residue n={n} k={k}");
        let run = || -> Result<bool> {
            for s in 0..n as i64 {
                let c = canonical_s(n, k, s)?;
                if t(n, k as i64, s)? != t(n, k as i64, c as i64)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Case::from_result(id, true, run())
    }));
    cases
}

/// Empirical reconstruction of `M(k)` for `k <= kmax`.
pub fn discovery(kmax: u64) -> Vec<Case> {
    (1..=kmax)
        .into_par_iter()
        .map(|k| {
            let id = format!("rediscover M({k})");
            let run = || -> Result<String> {
                let found = solve_matrix(k)?;
                let ok = found.unique && found.matrix == build_m(k)?;
                Ok(if ok { "unique, equal".into() } else { format!("unique={}", found.unique) })
            };
            Case::from_result(id, "unique, equal", run())
        })
        .collect()
}

fn poly(coeffs: &[i64]) -> Vec<BigInt> {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

fn format_coeffs(c: &[BigInt]) -> String {
    crate::divmatrix::format_poly(c)
}

/// Characteristic polynomials of `M(p^2)` and of the symmetric square of `M(p)`.
pub fn sym_square_distinction(primes: &[u64]) -> Vec<Case> {
    let mut cases = Vec::new();
    for &p in primes {
        let pi = p as i64;
        // (X - p)(X^2 + bX + p^2) = X^3 + (b - p)X^2 + (p^2 - bp)X - p^3
        let cubic = |b: i64| poly(&[-pi * pi * pi, pi * pi - b * pi, b - pi, 1]);
        let want_m = cubic(pi - pi * pi);
        let want_s = cubic(2 * pi - pi * pi);
        let got_m = prime_power_block(p, 2).map(|m| char_poly(m.rows()));
        let got_s = sym_square_mp(p).map(|m| char_poly(m.rows()));
        cases.push(Case::from_result(
            format!("charpoly M({p}^2)"),
            format_coeffs(&want_m),
            got_m.as_ref().map(|c| format_coeffs(c)).map_err(Clone::clone),
        ));
        cases.push(Case::from_result(
            format!("charpoly S^2 M({p})"),
            format_coeffs(&want_s),
            got_s.as_ref().map(|c| format_coeffs(c)).map_err(Clone::clone),
        ));
        cases.push(Case::check(
            format!("M({p}^2) and S^2 M({p}) differ"),
            matches!((&got_m, &got_s), (Ok(a), Ok(b)) if a != b),
        ));
    }
    cases
}

/// Irreducible conic counts for `nmin <= n <= nmax`, and no line pairs at `n = 6`.
pub fn conics(nmin: u64, nmax: u64, budget: u64) -> Vec<Case> {
    let mut cases: Vec<Case> = (nmin..=nmax)
        .into_par_iter()
        .map(|n| {
            let id = format!("conics n={n}");
            let run = || -> Result<bool> {
                let all = t(n, 6, 0)?;
                let lines = BigUint::from(line_pair_conics(n, budget)?);
                let irr = counting::irreducible_conics(n, budget)?;
                Ok(all >= lines && irr + lines == all)
            };
            Case::from_result(id, true, run())
        })
        .collect();
    cases.push(Case::from_result("line pairs n=6", 0, line_pair_conics(6, budget)));
    cases
}

/// Closed forms against enumeration for every group of order `<= max_order`, all `k`, all `a`.
pub fn abelian_sets(max_order: u64, budget: u64) -> Vec<Case> {
    let groups: Vec<AbelianGroup> = (1..=max_order)
        .flat_map(|n| abelian::groups_of_order(n).unwrap())
        .collect();
    flatten(
        groups
            .into_par_iter()
            .map(|g| {
                (0..=g.order())
                    .map(|k| {
                        let id = format!("subsets of {g} k={k}");
                        let run = || -> Result<String> {
                            let hist = abelian::subset_sum_histogram(&g, k, budget)?;
                            let vals: Result<Vec<String>> = g
                                .elements()
                                .iter()
                                .map(|a| abelian::t_abelian(&g, k, a).map(|v| v.to_string()))
                                .collect();
                            let want: Vec<String> = hist.iter().map(u64::to_string).collect();
                            let got = vals?;
                            Ok(if got == want { "agree".into() } else { got.join(",") })
                        };
                        Case::from_result(id, "agree", run())
                    })
                    .collect::<Vec<_>>()
            })
            .collect(),
    )
}

pub fn abelian_multisets(max_order: u64, kmax: u64, budget: u64) -> Vec<Case> {
    let groups: Vec<AbelianGroup> = (1..=max_order)
        .flat_map(|n| abelian::groups_of_order(n).unwrap())
        .collect();
    flatten(
        groups
            .into_par_iter()
            .map(|g| {
                (0..=kmax)
                    .map(|k| {
                        let id = format!("multisets of {g} k={k}");
                        let run = || -> Result<String> {
                            let hist = abelian::multiset_sum_histogram(&g, k, budget)?;
                            let vals: Result<Vec<String>> = g
                                .elements()
                                .iter()
                                .map(|a| abelian::t_plus_abelian(&g, k, a).map(|v| v.to_string()))
                                .collect();
                            let want: Vec<String> = hist.iter().map(u64::to_string).collect();
                            let got = vals?;
                            Ok(if got == want { "agree".into() } else { got.join(",") })
                        };
                        Case::from_result(id, "agree", run())
                    })
                    .collect::<Vec<_>>()
            })
            .collect(),
    )
}

/// The group computation on `Z/n` against the cyclic closed form.
pub fn cyclic_reduction(nmax: u64) -> Vec<Case> {
    (1..=nmax)
        .into_par_iter()
        .map(|n| {
            let id = format!("cyclic reduction n={n}");
            let run = || -> Result<bool> {
                let g = AbelianGroup::cyclic(n)?;
                for k in 0..=n {
                    for s in 0..n {
                        let a = g.parse_element(&s.to_string())?;
                        if abelian::t_abelian(&g, k, &a)? != t(n, k as i64, s as i64)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            };
            Case::from_result(id, true, run())
        })
        .collect()
}

/// Counts depend on `a` only through `d*(a)`, and the class-function transform reproduces them.
pub fn class_function(max_order: u64) -> Vec<Case> {
    let groups: Vec<AbelianGroup> = (1..=max_order)
        .flat_map(|n| abelian::groups_of_order(n).unwrap())
        .collect();
    flatten(
        groups
            .into_par_iter()
            .map(|g| {
                (0..=g.order())
                    .map(|k| {
                        let id = format!("class function {g} k={k}");
                        let run = || -> Result<bool> {
                            let chi: BTreeMap<u64, BigRational> = divisors(g.exponent())?
                                .iter()
                                .map(|&d| Ok((d, BigRational::from_integer(abelian::chi_k(&g, k, d)?))))
                                .collect::<Result<_>>()?;
                            let ft = abelian::fourier_class_function(&g, &chi)?;
                            let mut by_class: BTreeMap<u64, BigUint> = BTreeMap::new();
                            for a in g.elements() {
                                let v = abelian::t_abelian(&g, k, &a)?;
                                let ds = g.d_star(&a);
                                if BigRational::from_integer(v.clone().into()) != ft[&ds] {
                                    return Ok(false);
                                }
                                if let Some(prev) = by_class.insert(ds, v.clone()) {
                                    if prev != v {
                                        return Ok(false);
                                    }
                                }
                            }
                            Ok(true)
                        };
                        Case::from_result(id, true, run())
                    })
                    .collect::<Vec<_>>()
            })
            .collect(),
    )
}

/// Search depths for the `verify` suites.
#[derive(Debug, Clone, Serialize)]
pub struct Depths {
    pub m_kmax: u64,
    pub kronecker_max: u64,
    pub ramanujan_kmax: u64,
    pub discovery_kmax: u64,
    pub series_kmax: u64,
    pub oracle_nmax: u64,
    pub identity_nmax: u64,
    pub conics_nmax: u64,
    pub group_order: u64,
    pub multiset_order: u64,
    pub multiset_kmax: u64,
    pub cyclic_nmax: u64,
}

impl Depths {
    pub fn full() -> Self {
        Depths {
            m_kmax: 500,
            kronecker_max: 2000,
            ramanujan_kmax: 200,
            discovery_kmax: 24,
            series_kmax: 12,
            oracle_nmax: 22,
            identity_nmax: 60,
            conics_nmax: 60,
            group_order: 16,
            multiset_order: 12,
            multiset_kmax: 6,
            cyclic_nmax: 20,
        }
    }

    pub fn quick() -> Self {
        Depths {
            m_kmax: 60,
            kronecker_max: 200,
            ramanujan_kmax: 40,
            discovery_kmax: 8,
            series_kmax: 6,
            oracle_nmax: 14,
            identity_nmax: 24,
            conics_nmax: 24,
            group_order: 8,
            multiset_order: 8,
            multiset_kmax: 4,
            cyclic_nmax: 10,
        }
    }

    /// `kmax` bounds the matrix sweeps, `nmax` the enumeration sweeps.
    pub fn with_limits(mut self, kmax: Option<u64>, nmax: Option<u64>) -> Self {
        if let Some(k) = kmax {
            self.m_kmax = k;
            self.kronecker_max = self.kronecker_max.min(4 * k).max(k);
            self.ramanujan_kmax = self.ramanujan_kmax.min(k);
            self.discovery_kmax = self.discovery_kmax.min(k);
            self.series_kmax = self.series_kmax.min(k);
        }
        if let Some(n) = nmax {
            self.oracle_nmax = n;
            self.identity_nmax = self.identity_nmax.max(n);
            self.conics_nmax = self.conics_nmax.min(n.max(9));
            self.cyclic_nmax = self.cyclic_nmax.min(n);
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Matrices,
    Counts,
    Series,
    Abelian,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Matrices => "matrices",
            Suite::Counts => "counts",
            Suite::Series => "series",
            Suite::Abelian => "abelian",
            Suite::All => "all",
        }
    }
}

pub fn run_suite(suite: Suite, depths: &Depths, budget: u64) -> Report {
    Report::from_cases(suite.name(), suite_cases(suite, depths, budget))
}

fn suite_cases(suite: Suite, depths: &Depths, budget: u64) -> Vec<Case> {
    match suite {
        Suite::Matrices => {
            let mut c = m_properties(depths.m_kmax);
            c.extend(kronecker_commutativity(depths.kronecker_max));
            c.extend(ramanujan_identification(depths.ramanujan_kmax));
            c.extend(sym_square_distinction(&[2, 3, 5, 7]));
            c.extend(discovery(depths.discovery_kmax));
            c
        }
        Suite::Counts => {
            let mut c = oracle_equivalence(depths.oracle_nmax, budget);
            c.extend(hadjicostas(depths.identity_nmax));
            c.extend(necklace_lyndon(depths.identity_nmax));
            c.extend(count_identities(depths.m_kmax.min(200), depths.oracle_nmax));
            if depths.conics_nmax >= 9 {
                c.extend(conics(9, depths.conics_nmax, budget));
            }
            c
        }
        Suite::Series => generating_functions(depths.series_kmax),
        Suite::Abelian => {
            let mut c = abelian_sets(depths.group_order, budget);
            c.extend(abelian_multisets(depths.multiset_order, depths.multiset_kmax, budget));
            c.extend(cyclic_reduction(depths.cyclic_nmax));
            c.extend(class_function(depths.group_order));
            c
        }
        Suite::All => [Suite::Matrices, Suite::Counts, Suite::Series, Suite::Abelian]
            .into_iter()
            .flat_map(|s| suite_cases(s, depths, budget))
            .collect(),
    }
}

/// A closed-form check against enumeration for a single query, used by the CLI.
pub fn spot_check(n: u64, k: u64, s: i64, budget: u64) -> Result<Case> {
    let q = CountQuery::new(n, k as i64, s)?;
    let got = counting::t_count(&q)?;
    Ok(Case::new(format!("T({n},{k},{s})"), brute_force(&q, budget)?, got))
}

/// `true` when `m` equals `build_m(m.k())`.
pub fn matches_m(m: &DivisorMatrix) -> Result<bool> {
    Ok(*m == build_m(m.k())?)
}

/// Entries where `m` differs from `build_m`, as `(t, d, got, expected)`.
pub fn diff_against_m(m: &DivisorMatrix) -> Result<Vec<(u64, u64, BigInt, BigInt)>> {
    let reference = build_m(m.k())?;
    let mut out = Vec::new();
    for &tt in m.divisors() {
        for &d in m.divisors() {
            let (a, b) = (m.get(tt, d)?, reference.get(tt, d)?);
            if a != b {
                out.push((tt, d, a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::DEFAULT_BUDGET;
    use num_traits::Zero;

    fn all_pass(cases: &[Case]) {
        let bad: Vec<_> = cases.iter().filter(|c| !c.passed()).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(!cases.is_empty());
    }

    #[test]
    fn quick_sweeps_pass() {
        let d = Depths::quick();
        all_pass(&oracle_equivalence(10, DEFAULT_BUDGET));
        all_pass(&m_properties(30));
        all_pass(&kronecker_commutativity(100));
        all_pass(&ramanujan_identification(30));
        all_pass(&generating_functions(5));
        all_pass(&hadjicostas(15));
        all_pass(&necklace_lyndon(15));
        all_pass(&count_identities(30, 10));
        all_pass(&discovery(6));
        all_pass(&sym_square_distinction(&[2, 3]));
        all_pass(&conics(9, 14, DEFAULT_BUDGET));
        all_pass(&abelian_sets(6, DEFAULT_BUDGET));
        all_pass(&abelian_multisets(6, 3, DEFAULT_BUDGET));
        all_pass(&cyclic_reduction(8));
        all_pass(&class_function(8));
        assert!(d.m_kmax < Depths::full().m_kmax);
    }

    #[test]
    fn failures_are_reported() {
        let r = Report::from_cases("x", vec![Case::new("a", 1, 1), Case::new("b", 1, 2)]);
        assert_eq!(r.cases, 2);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].id, "b");
        assert!(!r.passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["failures"][0]["expected"], "1");
        assert_eq!(json["failures"][0]["got"], "2");
    }

    #[test]
    fn diff_of_m_is_empty() {
        let m = build_m(12).unwrap();
        assert!(diff_against_m(&m).unwrap().is_empty());
        assert!(matches_m(&m).unwrap());
        let mut rows = m.rows().to_vec();
        rows[0][1] += 1;
        let bad = DivisorMatrix::from_rows(12, rows).unwrap();
        let diff = diff_against_m(&bad).unwrap();
        assert_eq!(diff.len(), 1);
        assert_eq!((diff[0].0, diff[0].1), (1, 2));
        assert_eq!((diff[0].2.clone(), diff[0].3.clone()), (BigInt::zero(), BigInt::from(-1)));
    }
}
