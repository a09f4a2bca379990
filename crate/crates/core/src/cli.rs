//! Command-line interface.
//!
//! Global options may also come from the environment (`MODPART_JSON`,
//! `MODPART_THREADS`, `MODPART_BUDGET`, ...); flags take precedence.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::abelian::{self, AbelianGroup};
use crate::counting::{self, line_pair_conics, t_count, CountQuery, DEFAULT_BUDGET};
use crate::discovery::{check_ceiling, solve_matrix, DEFAULT_CEILING};
use crate::divmatrix::{build_m, format_poly, verify_m_properties};
use crate::error::{Error, Result};
use crate::oeis::{self, CheckOutcome, SequenceJson, SequenceSpec};
use crate::verify::{self, Depths, Suite};

/// Exit status for a run whose checks did not all pass.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for invalid input or a runtime error.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modpart", version, about = "Counts subsets of Z/nZ and finite abelian groups with a prescribed sum")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Print machine-readable JSON.
    #[arg(long, global = true, env = "MODPART_JSON")]
    pub json: bool,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, env = "MODPART_THREADS")]
    pub threads: Option<usize>,
    /// Largest number of objects any enumeration may visit.
    #[arg(long, global = true, env = "MODPART_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of k-subsets of Z/nZ summing to s.
    Tnks {
        n: u64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        /// Also count by enumeration and compare.
        #[arg(long)]
        check: bool,
    },
    /// The divisor matrix M(k).
    Matrix {
        k: u64,
        /// Report the structural properties.
        #[arg(long)]
        properties: bool,
        /// Print the characteristic polynomial.
        #[arg(long)]
        charpoly: bool,
    },
    /// A sequence T(n, k, s) for n in a range, as a b-file or JSON.
    Seq {
        k: u64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        /// First n (default k).
        #[arg(long)]
        from: Option<u64>,
        /// Last n (default from + 29).
        #[arg(long)]
        to: Option<u64>,
        /// Index printed for the first n (default: the first n itself).
        #[arg(long, allow_negative_numbers = true)]
        offset: Option<i64>,
        #[arg(long, value_enum, default_value_t = SeqFormat::Bfile)]
        format: SeqFormat,
    },
    /// Run invariant sweeps; exits nonzero on any failure.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Reduced depths.
        #[arg(long, env = "MODPART_QUICK")]
        quick: bool,
        /// Bound for the matrix sweeps.
        #[arg(long, env = "MODPART_KMAX")]
        kmax: Option<u64>,
        /// Bound for the enumeration sweeps.
        #[arg(long, env = "MODPART_NMAX")]
        nmax: Option<u64>,
    },
    /// Recover M(k) from subset counts by solving the linear system exactly.
    Discover {
        k: u64,
        #[arg(long, env = "MODPART_CEILING", default_value_t = DEFAULT_CEILING)]
        ceiling: u64,
    },
    /// Subsets or multisets of a finite abelian group with sum a.
    Abelian {
        /// Comma-separated cyclic orders, e.g. 4,2.
        group: String,
        k: u64,
        /// Comma-separated coordinates, e.g. 1,0.
        element: String,
        #[arg(value_enum, default_value_t = Mode::Set)]
        mode: Mode,
        /// Also count by enumeration and compare.
        #[arg(long)]
        check: bool,
    },
    /// Zero-sum 6-subsets of Z/nZ split by whether they are two zero-sum triples.
    Conics { n: u64 },
    /// Compare a b-file against T(n, k, s).
    OeisCheck(OeisCheckArgs),
}

#[derive(Debug, Args)]
pub struct OeisCheckArgs {
    /// Sequence id, used to look up (k, s) and for --fetch.
    pub id: Option<String>,
    /// Local b-file.
    #[arg(long, conflicts_with = "fetch")]
    pub fixture: Option<PathBuf>,
    /// Download the b-file of ID over HTTPS.
    #[arg(long, requires = "id")]
    pub fetch: bool,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
    /// Fixture index corresponding to n = k (default k).
    #[arg(long, allow_negative_numbers = true)]
    pub offset: Option<i64>,
    /// Compare at most this many leading terms.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqFormat {
    Bfile,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Set,
    Multiset,
}

/// Output sinks of one run.
pub struct Io<'a> {
    pub out: &'a mut (dyn Write + Send),
    pub err: &'a mut (dyn Write + Send),
}

fn json_line(io: &mut Io, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(io.out, "{text}")?;
    Ok(())
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: Cli, io: &mut Io) -> i32 {
    let pool = match cli.global.threads {
        Some(0) => {
            let _ = writeln!(io.err, "error: --threads must be positive");
            return EXIT_ERROR;
        }
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    match pool.install(|| dispatch(&cli, io)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Tnks { n, k, s, check } => cmd_tnks(g, io, *n, *k, *s, *check),
        Command::Matrix {
            k,
            properties,
            charpoly,
        } => cmd_matrix(g, io, *k, *properties, *charpoly),
        Command::Seq {
            k,
            s,
            from,
            to,
            offset,
            format,
        } => {
            let n_start = from.unwrap_or(*k);
            let n_end = to.unwrap_or(n_start + 29);
            let spec = SequenceSpec::new(*k, *s, n_start, n_end, offset.unwrap_or(n_start as i64))?;
            cmd_seq(io, &spec, *format)
        }
        Command::Verify {
            suite,
            quick,
            kmax,
            nmax,
        } => {
            let base = if *quick { Depths::quick() } else { Depths::full() };
            cmd_verify(g, io, *suite, &base.with_limits(*kmax, *nmax))
        }
        Command::Discover { k, ceiling } => cmd_discover(g, io, *k, *ceiling),
        Command::Abelian {
            group,
            k,
            element,
            mode,
            check,
        } => cmd_abelian(g, io, group, *k, element, *mode, *check),
        Command::Conics { n } => cmd_conics(g, io, *n),
        Command::OeisCheck(args) => cmd_oeis_check(g, io, args),
    }
}

pub fn cmd_tnks(g: &GlobalOpts, io: &mut Io, n: u64, k: i64, s: i64, check: bool) -> Result<i32> {
    let q = CountQuery::new(n, k, s)?;
    let value = t_count(&q)?;
    let oracle = if check {
        Some(counting::brute_force(&q, g.budget)?)
    } else {
        None
    };
    let agrees = oracle.is_none_or(|o| BigUint::from(o) == value);
    if g.json {
        json_line(io, &json!({"n": n, "k": k, "s": s, "value": value.to_string(), "brute_force": oracle}))?;
    } else {
        writeln!(io.out, "{value}")?;
        if let Some(o) = oracle {
            writeln!(io.err, "brute force: {o}")?;
        }
    }
    Ok(if agrees { 0 } else { EXIT_CHECK_FAILED })
}

pub fn cmd_matrix(g: &GlobalOpts, io: &mut Io, k: u64, properties: bool, charpoly: bool) -> Result<i32> {
    let m = build_m(k)?;
    let report = if properties { Some(verify_m_properties(k)?) } else { None };
    let poly = charpoly.then(|| format_poly(&m.char_poly()));
    if g.json {
        json_line(
            io,
            &json!({"matrix": m, "determinant": m.determinant().to_string(), "properties": report, "charpoly": poly}),
        )?;
    } else {
        write!(io.out, "{m}")?;
        if let Some(p) = &poly {
            writeln!(io.out, "charpoly: {p}")?;
        }
        if let Some(r) = &report {
            for c in &r.checks {
                let status = if c.passed { "ok" } else { "FAILED" };
                write!(io.out, "property {} ({}): {status}", c.id, c.name)?;
                match &c.detail {
                    Some(d) => writeln!(io.out, ": {d}")?,
                    None => writeln!(io.out)?,
                }
            }
        }
    }
    Ok(match report {
        Some(r) if !r.all_passed() => EXIT_CHECK_FAILED,
        _ => 0,
    })
}

pub fn cmd_seq(io: &mut Io, spec: &SequenceSpec, format: SeqFormat) -> Result<i32> {
    let terms = spec.terms()?;
    match format {
        SeqFormat::Bfile => write!(io.out, "{}", oeis::emit_bfile(&terms))?,
        SeqFormat::Json => json_line(io, &SequenceJson::new(spec, &terms))?,
    }
    Ok(0)
}

pub fn cmd_verify(g: &GlobalOpts, io: &mut Io, suite: Suite, depths: &Depths) -> Result<i32> {
    let report = verify::run_suite(suite, depths, g.budget);
    if g.json {
        json_line(io, &report)?;
    } else {
        for f in &report.failures {
            writeln!(io.out, "FAIL {}: expected {}, got {}", f.id, f.expected, f.got)?;
        }
        let status = if report.passed() { "pass" } else { "FAIL" };
        writeln!(
            io.out,
            "{}: {status} ({} cases, {} failures)",
            report.suite,
            report.cases,
            report.failures.len()
        )?;
    }
    Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
}

pub fn cmd_discover(g: &GlobalOpts, io: &mut Io, k: u64, ceiling: u64) -> Result<i32> {
    check_ceiling(k, ceiling)?;
    let found = solve_matrix(k)?;
    let diff = verify::diff_against_m(&found.matrix)?;
    if g.json {
        let diff: Vec<_> = diff
            .iter()
            .map(|(t, d, got, want)| json!({"t": t, "d": d, "got": got.to_string(), "expected": want.to_string()}))
            .collect();
        json_line(io, &json!({"discovery": found, "diff": diff}))?;
    } else {
        write!(io.out, "{}", found.matrix)?;
        writeln!(
            io.out,
            "{}: rank {} of {} unknowns, {} equations",
            if found.unique { "unique" } else { "not unique" },
            found.rank,
            found.unknowns,
            found.equations
        )?;
        if diff.is_empty() {
            writeln!(io.out, "equal to M({k})")?;
        } else {
            for (t, d, got, want) in &diff {
                writeln!(io.out, "differs at ({t},{d}): {got} vs {want}")?;
            }
        }
    }
    Ok(if diff.is_empty() { 0 } else { EXIT_CHECK_FAILED })
}

pub fn cmd_abelian(
    g: &GlobalOpts,
    io: &mut Io,
    group: &str,
    k: u64,
    element: &str,
    mode: Mode,
    check: bool,
) -> Result<i32> {
    let (grp, a, changed) = AbelianGroup::parse_with_element(group, element)?;
    if changed {
        let factors: Vec<String> = grp.invariant_factors().iter().map(u64::to_string).collect();
        writeln!(
            io.err,
            "note: {group} canonicalized to invariant factors {}; element {element} maps to {a}",
            if factors.is_empty() { "1".to_string() } else { factors.join(",") }
        )?;
    }
    let value = match mode {
        Mode::Set => abelian::t_abelian(&grp, k, &a)?,
        Mode::Multiset => abelian::t_plus_abelian(&grp, k, &a)?,
    };
    let oracle = if check {
        Some(match mode {
            Mode::Set => abelian::brute_force_abelian(&grp, k, &a, g.budget)?,
            Mode::Multiset => abelian::brute_force_multiset(&grp, k, &a, g.budget)?,
        })
    } else {
        None
    };
    if g.json {
        json_line(
            io,
            &json!({
                "invariant_factors": grp.invariant_factors(),
                "k": k,
                "element": a.coords(),
                "d_star": grp.d_star(&a),
                "mode": if mode == Mode::Set { "set" } else { "multiset" },
                "value": value.to_string(),
                "brute_force": oracle,
            }),
        )?;
    } else {
        writeln!(io.out, "{value}")?;
        if let Some(o) = oracle {
            writeln!(io.err, "brute force: {o}")?;
        }
    }
    Ok(if oracle.is_none_or(|o| BigUint::from(o) == value) {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

pub fn cmd_conics(g: &GlobalOpts, io: &mut Io, n: u64) -> Result<i32> {
    if n < 6 {
        return Err(Error::InvalidQuery(format!("need n >= 6, got {n}")));
    }
    let all = counting::t(n, 6, 0)?;
    let lines = line_pair_conics(n, g.budget)?;
    let irreducible = if n >= 9 {
        Some(counting::irreducible_conics(n, g.budget)?)
    } else {
        None
    };
    if g.json {
        json_line(
            io,
            &json!({
                "n": n,
                "zero_sum_6_subsets": all.to_string(),
                "line_pairs": lines,
                "irreducible": irreducible.as_ref().map(|v| v.to_string()),
            }),
        )?;
    } else {
        writeln!(io.out, "zero-sum 6-subsets: {all}")?;
        writeln!(io.out, "line pairs: {lines}")?;
        match &irreducible {
            Some(v) => writeln!(io.out, "irreducible: {v}")?,
            None => writeln!(io.out, "irreducible: n/a (n < 9)")?,
        }
    }
    Ok(0)
}

pub fn cmd_oeis_check(g: &GlobalOpts, io: &mut Io, args: &OeisCheckArgs) -> Result<i32> {
    let known = args.id.as_deref().and_then(oeis::lookup_id);
    let (k, s) = match (args.k, args.s, known) {
        (Some(k), Some(s), _) => (k, s),
        (None, None, Some((k, s))) => (k, s as i64),
        (k, s, Some((kk, ss))) => (k.unwrap_or(kk), s.unwrap_or(ss as i64)),
        _ => {
            return Err(Error::InvalidQuery(
                "give --k and --s, or an id from the known pair table".into(),
            ))
        }
    };
    if k == 0 {
        return Err(Error::InvalidQuery("k must be positive".into()));
    }
    let mut terms = match (&args.fixture, args.fetch, &args.id) {
        (Some(path), _, _) => oeis::read_bfile(path)?,
        (None, true, Some(id)) => oeis::fetch_bfile(id)?,
        _ => return Err(Error::InvalidQuery("give --fixture PATH or --fetch".into())),
    };
    if let Some(m) = args.max_terms {
        terms.truncate(m);
    }
    let offset = args.offset.unwrap_or(k as i64);
    let outcome = oeis::check_terms(&terms, k, s, offset)?;
    if g.json {
        json_line(io, &json!({"id": args.id, "k": k, "s": s, "offset": offset, "outcome": outcome}))?;
    } else {
        match &outcome {
            CheckOutcome::Agreement {
                shift,
                compared,
                first_index,
                last_index,
            } => writeln!(
                io.out,
                "agreement: {compared} terms, indices {first_index}..{last_index}, resolved offset {} (shift {shift})",
                offset - shift
            )?,
            CheckOutcome::Mismatch {
                shift,
                index,
                n,
                expected,
                got,
                agreeing,
                compared,
            } => writeln!(
                io.out,
                "mismatch at index {index} (n = {n}, shift {shift}): fixture {expected}, computed {got}; {agreeing} of {compared} terms agree"
            )?,
        }
    }
    Ok(if outcome.agrees() { 0 } else { EXIT_CHECK_FAILED })
}
