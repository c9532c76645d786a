use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use seshadri::bounds::{ample_check, bound_thm_a, bound_thm_b, cor13_bound, exact_rank1, AmpleVerdict, BoundResult};
use seshadri::certificates::{check_hypotheses, load_certificates, CertificateStore, Theorem};
use seshadri::enumerate::{enumerate_general, enumerate_homogeneous_with, EnumCap, EnumOptions};
use seshadri::report;
use seshadri::{Error, Mode, Rational, SurfaceData, WeightVector};

const MAX_RANGE: u64 = 1_000_000;
const CERT_PATH_VAR: &str = "SESHADRI_CERT_PATH";

#[derive(Parser)]
#[command(name = "seshadri", version, about = "Certified lower bounds for multi-point Seshadri constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bound on epsilon(n); the explicit P2 formula unless --mu or --certs is given
    Bound(BoundArgs),
    /// Obstruction classes at a given delta or mu
    Candidates(CandidateArgs),
    /// Sufficient ampleness test for tL - m(E_1 + ... + E_n) on P2
    Ample(AmpleArgs),
    /// Check hypotheses or validate certificate files
    Certs(CertsArgs),
}

#[derive(Args)]
struct SurfaceArgs {
    /// The projective plane with L a line (default)
    #[arg(long, conflicts_with = "surface")]
    p2: bool,
    /// TOML surface description
    #[arg(long, value_name = "PATH")]
    surface: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    n: Option<u64>,
    /// Inclusive range a..b
    #[arg(long, value_name = "A..B")]
    n_range: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    A,
    B,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long)]
    mu: Option<Rational>,
    #[arg(long, value_enum, default_value = "b")]
    theorem: TheoremArg,
    /// Certificate file; repeatable
    #[arg(long = "certs", value_name = "PATH")]
    certs: Vec<PathBuf>,
    /// Leave out the built-in P2 facts
    #[arg(long)]
    no_builtin: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CandidateArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long, required_unless_present = "weights")]
    n: Option<u64>,
    #[arg(long, conflicts_with = "delta", required_unless_present = "delta")]
    mu: Option<Rational>,
    #[arg(long)]
    delta: Option<Rational>,
    /// Comma-separated weights; switches to general enumeration
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<Rational>>,
    /// Bound on the squared norm of multiplicity vectors (general mode)
    #[arg(long)]
    cap: Option<u64>,
    /// Disable the parity shortcut
    #[arg(long)]
    no_parity: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct AmpleArgs {
    #[command(flatten)]
    range: RangeArgs,
    /// Value or inclusive range a..b
    #[arg(long)]
    t: String,
    /// Value or inclusive range a..b
    #[arg(long)]
    m: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CertsArgs {
    #[command(subcommand)]
    action: CertsAction,
}

#[derive(Subcommand)]
enum CertsAction {
    /// Hypothesis report for a theorem at (n, mu)
    Check {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        mu: Rational,
        #[arg(long, value_enum, default_value = "b")]
        theorem: TheoremArg,
        #[arg(long = "certs", value_name = "PATH")]
        certs: Vec<PathBuf>,
        #[arg(long)]
        no_builtin: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Parse certificate files and report malformed lines
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

/// Failure with its exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit { code: 1, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Exit { code: 3, message: message.into() }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        match &e {
            Error::HypothesesFailed(rep) => {
                Exit { code: 2, message: format!("{e}\n{}", report::hypothesis_table(rep)) }
            }
            Error::Unresolved { .. } => Exit { code: 2, message: e.to_string() },
            _ => Exit { code: 1, message: e.to_string() },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(a),
        Command::Candidates(a) => cmd_candidates(a),
        Command::Ample(a) => cmd_ample(a),
        Command::Certs(a) => cmd_certs(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn surface(a: &SurfaceArgs) -> Result<SurfaceData, Exit> {
    match (&a.surface, a.p2) {
        (Some(p), false) => Ok(SurfaceData::from_path(p)?),
        _ => Ok(SurfaceData::p2()),
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), Exit> {
    let bad = || Exit::usage(format!("invalid range {s:?}; expected an integer or a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b {
        return Err(Exit::usage(format!("empty range {s:?}")));
    }
    if b - a >= MAX_RANGE {
        return Err(Exit::usage(format!("range {s:?} has more than {MAX_RANGE} entries")));
    }
    Ok((a, b))
}

fn ns(r: &RangeArgs) -> Result<Vec<u64>, Exit> {
    match (r.n, &r.n_range) {
        (Some(n), _) => Ok(vec![n]),
        (None, Some(s)) => {
            let (a, b) = parse_range(s)?;
            Ok((a..=b).collect())
        }
        (None, None) => Err(Exit::usage("give --n or --n-range")),
    }
}

/// Relative paths are looked up in the directories of the search path
/// variable first, then in the working directory.
fn resolve_cert_path(p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    if let Ok(dirs) = std::env::var(CERT_PATH_VAR) {
        for dir in dirs.split(':').filter(|d| !d.is_empty()) {
            let candidate = Path::new(dir).join(p);
            if candidate.is_file() {
                return candidate;
            }
        }
    }
    p.to_path_buf()
}

fn store_for(s: &SurfaceData, n: u64, paths: &[PathBuf], no_builtin: bool) -> Result<CertificateStore, Exit> {
    let mut store = if s.mode == Mode::P2 && !no_builtin {
        CertificateStore::builtin_p2(n)
    } else {
        CertificateStore::new()
    };
    for p in paths {
        store.extend(load_certificates(&resolve_cert_path(p))?);
    }
    Ok(store)
}

fn theorem(t: TheoremArg) -> Theorem {
    match t {
        TheoremArg::A => Theorem::A,
        TheoremArg::B => Theorem::B,
    }
}

fn json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn check_invariant(s: &SurfaceData, r: &BoundResult) -> Result<(), Exit> {
    let limit = Rational::frac(s.l2, r.n as i64);
    if r.epsilon_lower_sq > limit || (!r.exact && r.epsilon_lower_sq == limit) {
        return Err(Exit::internal(format!(
            "bound {} for n = {} is not below L^2/n = {limit}",
            r.epsilon_lower_sq, r.n
        )));
    }
    Ok(())
}

fn cmd_bound(a: BoundArgs) -> Result<String, Exit> {
    let s = surface(&a.surface)?;
    let ns = ns(&a.range)?;
    let explicit = a.mu.is_none() && a.certs.is_empty();
    if explicit {
        if s.mode != Mode::P2 {
            return Err(Exit::usage("the explicit bound is for P2 only; use --mu with certificates"));
        }
        if let Some(&n) = ns.iter().find(|&&n| n < 16) {
            return Err(Exit::usage(format!("n = {n}: requires n ≥ 16; use --mu with certificates")));
        }
    }
    let results: Vec<Result<BoundResult, Exit>> = ns
        .par_iter()
        .map(|&n| {
            let r = if explicit {
                cor13_bound(n)?
            } else {
                let store = store_for(&s, n, &a.certs, a.no_builtin)?;
                match &a.mu {
                    Some(mu) => match a.theorem {
                        TheoremArg::A => bound_thm_a(&s, n, mu, &store)?,
                        TheoremArg::B => bound_thm_b(&s, n, mu, &store)?,
                    },
                    None => exact_rank1(&s, n, &store)?,
                }
            };
            check_invariant(&s, &r)?;
            Ok(r)
        })
        .collect();

    // the first failure in input order decides the exit code
    let mut ok = Vec::with_capacity(results.len());
    for r in results {
        ok.push(r?);
    }
    render_bounds(&ok, a.format, a.range.n.is_some())
}

fn render_bounds(rs: &[BoundResult], format: Format, single: bool) -> Result<String, Exit> {
    Ok(match format {
        Format::Json => {
            let vals = rs.iter().map(report::bound_json).collect::<Result<Vec<_>, _>>()?;
            if single {
                json(&vals[0])
            } else {
                json(&serde_json::Value::Array(vals))
            }
        }
        Format::Csv => {
            let mut out = format!("{}\n", report::CSV_HEADER);
            for r in rs {
                out.push_str(&report::bound_csv_row(r));
                out.push('\n');
            }
            out
        }
        Format::Table => rs.iter().map(report::bound_table).collect::<Result<Vec<_>, _>>()?.concat(),
    })
}

fn cmd_candidates(a: CandidateArgs) -> Result<String, Exit> {
    let s = surface(&a.surface)?;
    let general = a.weights.is_some() || s.mode == Mode::Interval;
    if general {
        let Some(cap) = a.cap else {
            return Err(Exit::usage("general enumeration needs an explicit --cap on sum h_i^2"));
        };
        let w = match &a.weights {
            Some(ws) => WeightVector::new(ws.clone())?,
            None => WeightVector::homogeneous(a.n.ok_or_else(|| Exit::usage("give --n or --weights"))? as usize)?,
        };
        if let Some(n) = a.n {
            if n as usize != w.n() {
                return Err(Exit::usage(format!("--n {n} disagrees with {} weights", w.n())));
            }
        }
        let delta = match (&a.delta, &a.mu) {
            (Some(d), _) => d.clone(),
            (None, Some(mu)) => seshadri::EnumParams::from_mu(w.n() as u64, mu.clone())?.delta().clone(),
            (None, None) => return Err(Exit::usage("give --delta or --mu")),
        };
        let cs = enumerate_general(&s, &w, &delta, EnumCap { max_norm_sq: cap })?;
        return Ok(match a.format {
            Format::Json => json(&report::general_candidates_json(&cs)),
            Format::Table => report::general_candidates_table(&cs),
            Format::Csv => return Err(Exit::usage("csv output is for bounds and ampleness only")),
        });
    }
    let n = a.n.ok_or_else(|| Exit::usage("give --n"))?;
    let params = match (&a.mu, &a.delta) {
        (Some(mu), _) => seshadri::EnumParams::from_mu(n, mu.clone())?,
        (None, Some(d)) => seshadri::EnumParams::from_delta(n, d.clone())?,
        (None, None) => return Err(Exit::usage("give --mu or --delta")),
    };
    let opts = EnumOptions { parity_fast_path: !a.no_parity };
    let cs = enumerate_homogeneous_with(&s, n, &params, opts)?;
    Ok(match a.format {
        Format::Json => json(&report::candidates_json(&cs)),
        Format::Table => report::candidates_table(&cs),
        Format::Csv => return Err(Exit::usage("csv output is for bounds and ampleness only")),
    })
}

fn cmd_ample(a: AmpleArgs) -> Result<String, Exit> {
    let ns = ns(&a.range)?;
    let (t0, t1) = parse_range(&a.t)?;
    let (m0, m1) = parse_range(&a.m)?;
    let count = ns.len() as u64 * (t1 - t0 + 1) * (m1 - m0 + 1);
    if count > MAX_RANGE {
        return Err(Exit::usage(format!("grid has {count} entries, more than {MAX_RANGE}")));
    }
    let queries: Vec<(u64, u64, u64)> = ns
        .iter()
        .flat_map(|&n| (t0..=t1).flat_map(move |t| (m0..=m1).map(move |m| (n, t, m))))
        .collect();
    let verdicts: Vec<AmpleVerdict> = queries
        .par_iter()
        .map(|&(n, t, m)| ample_check(n, t, m))
        .collect::<Result<_, _>>()?;
    Ok(match a.format {
        Format::Json => {
            let vals: Vec<_> = verdicts.iter().map(report::ample_json).collect();
            if vals.len() == 1 {
                json(&vals[0])
            } else {
                json(&serde_json::Value::Array(vals))
            }
        }
        Format::Csv => {
            let mut out = format!("{}\n", report::AMPLE_CSV_HEADER);
            for v in &verdicts {
                out.push_str(&report::ample_csv_row(v));
                out.push('\n');
            }
            out
        }
        Format::Table => verdicts.iter().map(|v| report::ample_table(v) + "\n").collect(),
    })
}

fn cmd_certs(a: CertsArgs) -> Result<String, Exit> {
    match a.action {
        CertsAction::Check { surface: sa, n, mu, theorem: th, certs, no_builtin, format } => {
            let s = surface(&sa)?;
            let store = store_for(&s, n, &certs, no_builtin)?;
            let rep = check_hypotheses(theorem(th), &s, n, &mu, &store)?;
            let out = match format {
                Format::Json => json(&report::hypothesis_json(&rep)),
                Format::Table => report::hypothesis_table(&rep),
                Format::Csv => return Err(Exit::usage("csv output is for bounds and ampleness only")),
            };
            if rep.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Exit { code: 2, message: format!("{} hypothesis row(s) unmet", rep.failures().count()) })
            }
        }
        CertsAction::Validate { paths } => {
            let mut out = String::new();
            for p in paths {
                let path = resolve_cert_path(&p);
                let certs = load_certificates(&path)?;
                out.push_str(&format!("{}: {} certificate(s) ok\n", path.display(), certs.len()));
            }
            Ok(out)
        }
    }
}
