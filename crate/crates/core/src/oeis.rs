//! OEIS b-files and the cross-check of counting sequences against them.
//!
//! A b-file is plain text with one `index value` pair per line. Lines starting
//! with `#` and blank lines are ignored when reading.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{sum_distribution, t_or_zero};
use crate::error::{Error, Result};

/// One term of a sequence.
pub type Term = (i64, BigUint);

/// Shifts tried when the offset of a fixture is not exactly the declared one.
pub const SHIFT_WINDOW: i64 = 3;

/// Sequences listed for the pairs `(k, s)`: `T(n, k, s)` as `n` grows.
pub const KNOWN_PAIRS: &[(u64, u64, &str)] = &[
    (3, 0, "A007997"),
    (3, 1, "A001840"),
    (4, 0, "A032801"),
    (4, 1, "A006918"),
    (4, 2, "A008610"),
    (5, 0, "A008646"),
    (5, 1, "A011795"),
    (6, 0, "A381289"),
    (6, 1, "A381290"),
    (6, 2, "A011796"),
    (6, 3, "A032191"),
    (7, 0, "A032192"),
    (7, 1, "A011797"),
    (8, 0, "A381291"),
    (8, 1, "A031164"),
    (8, 2, "A381350"),
    (8, 4, "A032193"),
    (9, 0, "A032194"),
    (9, 1, "A263318"),
    (9, 3, "A381351"),
];

pub fn lookup_id(id: &str) -> Option<(u64, u64)> {
    let id = id.trim().to_ascii_uppercase();
    KNOWN_PAIRS
        .iter()
        .find(|(_, _, a)| *a == id)
        .map(|&(k, s, _)| (k, s))
}

pub fn lookup_pair(k: u64, s: u64) -> Option<&'static str> {
    KNOWN_PAIRS
        .iter()
        .find(|&&(pk, ps, _)| pk == k && ps == s)
        .map(|&(_, _, a)| a)
}

pub fn emit_bfile(terms: &[Term]) -> String {
    let mut out = String::new();
    for (i, v) in terms {
        writeln!(out, "{i} {v}").expect("writing to a String");
    }
    out
}

pub fn parse_bfile(text: &str) -> Result<Vec<Term>> {
    let mut terms: Vec<Term> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| Error::MalformedBFile {
            line: lineno + 1,
            reason,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [index, value] = fields[..] else {
            return Err(malformed(format!("expected 2 fields, found {}", fields.len())));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| malformed(format!("bad index {index:?}")))?;
        let value: BigUint = value
            .parse()
            .map_err(|_| malformed(format!("bad value {value:?}")))?;
        if let Some((prev, _)) = terms.last() {
            if index <= *prev {
                return Err(malformed(format!("index {index} does not follow {prev}")));
            }
        }
        terms.push((index, value));
    }
    Ok(terms)
}

pub fn read_bfile(path: &Path) -> Result<Vec<Term>> {
    parse_bfile(&std::fs::read_to_string(path)?)
}

/// `https://oeis.org/A007997/b007997.txt` for `A007997`.
pub fn bfile_url(id: &str) -> Result<String> {
    let id = id.trim().to_ascii_uppercase();
    let digits = id.strip_prefix('A').unwrap_or("");
    if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidQuery(format!("not an OEIS id: {id:?}")));
    }
    Ok(format!("https://oeis.org/{id}/b{digits}.txt"))
}

pub fn fetch_bfile(id: &str) -> Result<Vec<Term>> {
    let url = bfile_url(id)?;
    let agent = ureq::AgentBuilder::new()
        .timeout(Duration::from_secs(30))
        .build();
    let body = agent
        .get(&url)
        .call()
        .map_err(|e| Error::Network(e.to_string()))?
        .into_string()
        .map_err(|e| Error::Network(format!("{url}: {e}")))?;
    parse_bfile(&body)
}

/// Terms of `T(n, k, s)` for `n = n_start..=n_end`, printed with index `offset` at `n_start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceSpec {
    pub k: u64,
    pub s: i64,
    pub n_start: u64,
    pub n_end: u64,
    pub offset: i64,
}

impl SequenceSpec {
    pub fn new(k: u64, s: i64, n_start: u64, n_end: u64, offset: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidQuery("k must be positive".into()));
        }
        if n_start < k || n_end < n_start {
            return Err(Error::InvalidQuery(format!(
                "need k <= n_start <= n_end, got k={k} n={n_start}..{n_end}"
            )));
        }
        Ok(SequenceSpec {
            k,
            s,
            n_start,
            n_end,
            offset,
        })
    }

    pub fn len(&self) -> usize {
        (self.n_end - self.n_start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, n: u64) -> i64 {
        self.offset + (n - self.n_start) as i64
    }

    /// Computes the terms in parallel, in index order.
    pub fn terms(&self) -> Result<Vec<Term>> {
        (self.n_start..=self.n_end)
            .into_par_iter()
            .map(|n| Ok((self.index_of(n), t_or_zero(n, self.k, self.s)?)))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceJson {
    pub k: u64,
    pub s: i64,
    pub offset: i64,
    pub terms: Vec<String>,
}

impl SequenceJson {
    pub fn new(spec: &SequenceSpec, terms: &[Term]) -> Self {
        SequenceJson {
            k: spec.k,
            s: spec.s,
            offset: spec.offset,
            terms: terms.iter().map(|(_, v)| v.to_string()).collect(),
        }
    }
}

/// A local fixture whose terms are counted by enumerating subsets.
#[derive(Debug, Clone, Serialize)]
pub struct OeisFixture {
    pub id: String,
    pub k: u64,
    pub s: u64,
    pub terms: Vec<Term>,
}

impl OeisFixture {
    /// `count` terms starting at `n = k`, indexed by `n`.
    pub fn generate(k: u64, s: u64, count: u64, budget: u64) -> Result<Self> {
        let id = lookup_pair(k, s).unwrap_or("local").to_string();
        let terms = (k..k + count)
            .into_par_iter()
            .map(|n| {
                let hist = sum_distribution(n, k, budget)?;
                Ok((n as i64, BigUint::from(hist[(s % n) as usize])))
            })
            .collect::<Result<_>>()?;
        Ok(OeisFixture { id, k, s, terms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckOutcome {
    Agreement {
        shift: i64,
        compared: usize,
        first_index: i64,
        last_index: i64,
    },
    Mismatch {
        shift: i64,
        compared: usize,
        agreeing: usize,
        index: i64,
        n: u64,
        expected: String,
        got: String,
    },
}

impl CheckOutcome {
    pub fn agrees(&self) -> bool {
        matches!(self, CheckOutcome::Agreement { .. })
    }
}

/// Compares fixture terms with `T(n, k, s)` where fixture index `offset`
/// corresponds to `n = k`, trying shifts `0, -1, 1, .., +-SHIFT_WINDOW`.
///
/// Terms mapping to `n < 1` are outside the overlap. The first shift with
/// full agreement wins. Otherwise, if some shift agrees on more than half of
/// the overlap, its first mismatch is reported; if none does, the offset is
/// considered wrong.
pub fn check_terms(terms: &[Term], k: u64, s: i64, offset: i64) -> Result<CheckOutcome> {
    if terms.is_empty() {
        return Err(Error::InvalidQuery("fixture has no terms".into()));
    }
    let mut shifts = vec![0i64];
    for d in 1..=SHIFT_WINDOW {
        shifts.extend([-d, d]);
    }
    let mut best: Option<(usize, CheckOutcome)> = None;
    for shift in shifts {
        let overlap: Vec<(i64, u64, &BigUint)> = terms
            .iter()
            .filter_map(|(i, v)| {
                let n = i - offset + k as i64 + shift;
                (n >= 1).then_some((*i, n as u64, v))
            })
            .collect();
        if overlap.is_empty() {
            continue;
        }
        let computed: Vec<BigUint> = overlap
            .par_iter()
            .map(|&(_, n, _)| t_or_zero(n, k, s))
            .collect::<Result<_>>()?;
        let agreeing = overlap
            .iter()
            .zip(&computed)
            .filter(|((_, _, v), c)| *v == *c)
            .count();
        let first_bad = overlap.iter().zip(&computed).find(|((_, _, v), c)| *v != *c);
        let outcome = match first_bad {
            None => {
                return Ok(CheckOutcome::Agreement {
                    shift,
                    compared: overlap.len(),
                    first_index: overlap[0].0,
                    last_index: overlap[overlap.len() - 1].0,
                })
            }
            Some(((index, n, v), c)) => CheckOutcome::Mismatch {
                shift,
                compared: overlap.len(),
                agreeing,
                index: *index,
                n: *n,
                expected: v.to_string(),
                got: c.to_string(),
            },
        };
        if 2 * agreeing > overlap.len() && best.as_ref().is_none_or(|(a, _)| agreeing > *a) {
            best = Some((agreeing, outcome));
        }
    }
    best.map(|(_, o)| o).ok_or_else(|| {
        Error::OffsetMismatch(format!(
            "no offset within +-{SHIFT_WINDOW} of {offset} aligns the fixture with T(n,{k},{s})"
        ))
    })
}
