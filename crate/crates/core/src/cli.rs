//! The `ibf` command line.
//!
//! Exit codes: 0 on success, 1 when a verification is incomplete, 2 on
//! argument or precondition errors, 3 when an exact search runs out of
//! budget.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bounds, general_upper, lower_bound, min_edge_upper};
use crate::construct::{
    build_general, compose_on_sets, cycle_family, find_pivot, min_edge_family, CircularPerm,
};
use crate::edge::Edge;
use crate::error::{Error, Result};
use crate::exact::{candidate_count, exact_beta_with, Budget, Guardrails, Status};
use crate::family::Family;
use crate::format::{read_family, read_hypergraph, render_report, write_family, ReportFormat};
use crate::verify::{
    verify_full_with, verify_hypergraph, Mode, VerifyOptions, DEFAULT_EXHAUSTIVE_CAP,
    DEFAULT_SAMPLES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPLETE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ibf",
    version,
    about = "Induced-bisecting families: construct, verify, bound, search"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = FormatArg::Text)]
    pub format: FormatArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    General,
    Cycle,
    Compose,
    MinEdge,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family and optionally write it to a file.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::General)]
        method: Method,
        /// Minimum edge size (min-edge method).
        #[arg(long)]
        k: Option<usize>,
        /// Hypergraph file of (d+1)-sets (compose method).
        #[arg(long)]
        sets: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a family file against the cube or a hypergraph.
    Verify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// Sample this many random points instead of enumerating.
        #[arg(long)]
        sampled: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        exhaustive_cap: usize,
        /// Also write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the closed-form bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Compute the minimum family size by exhaustive search.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_secs: Option<f64>,
        #[arg(long, default_value_t = crate::exact::DEFAULT_MAX_CANDIDATES)]
        max_candidates: usize,
        #[arg(long, default_value_t = crate::exact::DEFAULT_MAX_UNIVERSE)]
        max_universe: usize,
        /// Write the witness family here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a pivot index of an odd subset on an odd circular permutation.
    Pivot {
        #[arg(long)]
        n: usize,
        /// Comma-separated 1-based vertices in circular order.
        #[arg(long)]
        perm: String,
        /// Subset such as "{1,3,5}".
        #[arg(long)]
        subset: String,
    },
    /// Tabulate bounds and constructed sizes over a grid.
    Table {
        /// Inclusive range such as 4..12.
        #[arg(long)]
        n_range: String,
        #[arg(long)]
        d_range: String,
        /// Node budget for the cheap exact column (0 disables it).
        #[arg(long, default_value_t = 200_000)]
        exact_nodes: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(Error::Io(e))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Applies `IBF_THREADS` (0 or unset = rayon's default).
fn configure_threads() {
    let threads = std::env::var("IBF_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    if let Some(t) = threads.filter(|&t| t > 0) {
        // Fails only if the pool was already built; keep that pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn open_family(path: &Path) -> CliResult<Family> {
    let file = File::open(path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
    Ok(read_family(BufReader::new(file))?)
}

fn save_family(f: &Family, path: &Path) -> CliResult<()> {
    let file = File::create(path)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
    write_family(f, BufWriter::new(file))?;
    Ok(())
}

#[derive(Serialize)]
struct ConstructReport {
    n: usize,
    d: usize,
    method: Method,
    size: usize,
    raw_size: usize,
    bound: u64,
    min_edge_bound: Option<u64>,
    patched: usize,
    self_checked: bool,
    elapsed_secs: f64,
    out: Option<String>,
}

#[derive(Serialize)]
struct PivotReport {
    n: usize,
    subset: String,
    ordered: String,
    index: usize,
    pivot: usize,
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let format: ReportFormat = cli.format.into();
    match &cli.command {
        Command::Construct {
            n,
            d,
            method,
            k,
            sets,
            out: path,
        } => {
            let (n, d) = (*n, *d);
            if d < 2 || d + 1 > n {
                return Err(CliError::Usage(format!(
                    "construct needs 2 <= d <= n-1, got n={n} d={d}"
                )));
            }
            let start = Instant::now();
            let (family, raw_size, patched, self_checked) = match method {
                Method::General => {
                    let c = build_general(n, d)?;
                    (
                        c.family,
                        c.raw_size,
                        c.patched.len(),
                        c.verification.is_some(),
                    )
                }
                Method::Cycle => {
                    if n != d + 1 {
                        return Err(CliError::Usage(format!(
                            "cycle method needs n = d+1, got n={n} d={d}"
                        )));
                    }
                    let f = cycle_family(d)?;
                    let size = f.len();
                    (f, size, 0, false)
                }
                Method::MinEdge => {
                    let k = k.ok_or_else(|| CliError::Usage("min-edge method needs --k".into()))?;
                    let f = min_edge_family(n, d, k)?;
                    let size = f.len();
                    (f, size, 0, false)
                }
                Method::Compose => {
                    let path = sets
                        .as_ref()
                        .ok_or_else(|| CliError::Usage("compose method needs --sets".into()))?;
                    let file = File::open(path).map_err(|e| {
                        CliError::Usage(format!("cannot open {}: {e}", path.display()))
                    })?;
                    let g = read_hypergraph(BufReader::new(file), n)?;
                    let blocks: Vec<Vec<usize>> =
                        g.edges().iter().map(|e| e.vertices().collect()).collect();
                    let f = compose_on_sets(&blocks, n, d)?;
                    let size = f.len();
                    (f, size, 0, false)
                }
            };
            let elapsed = start.elapsed();
            if let Some(p) = path {
                save_family(&family, p)?;
            }
            let report = ConstructReport {
                n,
                d,
                method: *method,
                size: family.len(),
                raw_size,
                bound: general_upper(n, d),
                min_edge_bound: (*method == Method::MinEdge).then(|| min_edge_upper(n, d)),
                patched,
                self_checked,
                elapsed_secs: elapsed.as_secs_f64(),
                out: path.as_ref().map(|p| p.display().to_string()),
            };
            writeln!(out, "{}", render_report(&report, format))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            family,
            hypergraph,
            sampled,
            seed,
            exhaustive_cap,
            report: report_path,
        } => {
            let f = open_family(family)?;
            let report = match hypergraph {
                Some(path) => {
                    let file = File::open(path).map_err(|e| {
                        CliError::Usage(format!("cannot open {}: {e}", path.display()))
                    })?;
                    let g = read_hypergraph(BufReader::new(file), f.n())?;
                    verify_hypergraph(&f, &g)?
                }
                None => {
                    let mode = match sampled {
                        Some(count) => Mode::sampled(*count, *seed),
                        None if f.n() > *exhaustive_cap => Mode::sampled(DEFAULT_SAMPLES, *seed),
                        None => Mode::Exhaustive,
                    };
                    let opts = VerifyOptions {
                        exhaustive_cap: *exhaustive_cap,
                        ..Default::default()
                    };
                    verify_full_with(&f, mode, &opts)?
                }
            };
            let text = render_report(&report, format);
            writeln!(out, "{text}")?;
            if let Some(p) = report_path {
                std::fs::write(p, format!("{text}\n"))?;
            }
            Ok(if report.complete {
                EXIT_OK
            } else {
                EXIT_INCOMPLETE
            })
        }
        Command::Bounds { n, d } => {
            let report = bounds(*n, *d)?;
            writeln!(out, "{}", render_report(&report, format))?;
            Ok(EXIT_OK)
        }
        Command::Exact {
            n,
            d,
            max_k,
            budget_nodes,
            budget_secs,
            max_candidates,
            max_universe,
            out: path,
        } => {
            if *d < 2 || d > n {
                return Err(CliError::Usage(format!(
                    "exact needs 2 <= d <= n, got n={n} d={d}"
                )));
            }
            let max_time = match budget_secs {
                Some(s) if !s.is_finite() || *s < 0.0 => {
                    return Err(CliError::Usage(format!("bad --budget-secs {s}")))
                }
                Some(s) => Some(Duration::from_secs_f64(*s)),
                None => None,
            };
            let budget = Budget {
                max_nodes: *budget_nodes,
                max_time,
                max_k: *max_k,
            };
            let guard = Guardrails {
                max_candidates: *max_candidates,
                max_universe: *max_universe,
            };
            let result = exact_beta_with(*n, *d, &budget, &guard)?;
            if let (Some(p), Some(w)) = (path, &result.witness) {
                save_family(w, p)?;
            }
            writeln!(out, "{}", render_report(&result, format))?;
            Ok(if result.status == Status::Optimal {
                EXIT_OK
            } else {
                EXIT_BUDGET
            })
        }
        Command::Pivot { n, perm, subset } => {
            let sigma = CircularPerm::parse(perm)?;
            if sigma.len() != *n {
                return Err(CliError::Usage(format!(
                    "permutation has {} entries, expected n={n}",
                    sigma.len()
                )));
            }
            let a = Edge::parse(subset, *n)?;
            let index = find_pivot(&sigma, &a)?;
            let ordered = sigma.ordered_subset(&a);
            let report = PivotReport {
                n: *n,
                subset: a.to_brace_string(),
                ordered: ordered
                    .iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                index,
                pivot: ordered[index] + 1,
            };
            writeln!(out, "{}", render_report(&report, format))?;
            Ok(EXIT_OK)
        }
        Command::Table {
            n_range,
            d_range,
            exact_nodes,
        } => {
            let (n_lo, n_hi) = parse_range(n_range)?;
            let (d_lo, d_hi) = parse_range(d_range)?;
            let rows = table_rows(n_lo, n_hi, d_lo, d_hi, *exact_nodes)?;
            match format {
                ReportFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::Value::from(
                        rows.iter()
                            .map(|r| serde_json::to_value(r).expect("rows serialize"))
                            .collect::<Vec<_>>()
                    )
                )?,
                ReportFormat::Text => {
                    writeln!(
                        out,
                        "{:>4} {:>4} {:>8} {:>11} {:>8} {:>6}",
                        "n", "d", "lower", "constructed", "upper", "exact"
                    )?;
                    for r in &rows {
                        let exact = r.exact.map_or("-".to_string(), |v| v.to_string());
                        writeln!(
                            out,
                            "{:>4} {:>4} {:>8} {:>11} {:>8} {:>6}",
                            r.n, r.d, r.lower, r.constructed, r.upper, exact
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `A..B` or `A..=B` (both inclusive) or a single value.
fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("bad range `{s}`, expected A..B"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub d: usize,
    pub lower: u64,
    pub constructed: usize,
    pub upper: u64,
    pub exact: Option<usize>,
}

/// Rows for every `(n, d)` in range with `2 <= d <= n-1`. The exact column
/// is filled only for instances small enough to settle within the budget.
pub fn table_rows(
    n_lo: usize,
    n_hi: usize,
    d_lo: usize,
    d_hi: usize,
    exact_nodes: u64,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for n in n_lo.max(3)..=n_hi {
        for d in d_lo.max(2)..=d_hi.min(n - 1) {
            let constructed = build_general(n, d)?.family.len();
            let exact = if exact_nodes > 0 && n <= 10 && candidate_count(n, d) <= 2000 {
                let budget = Budget {
                    max_nodes: Some(exact_nodes),
                    ..Default::default()
                };
                exact_beta_with(n, d, &budget, &Guardrails::default())
                    .ok()
                    .filter(|r| r.status == Status::Optimal)
                    .map(|r| r.value)
            } else {
                None
            };
            rows.push(TableRow {
                n,
                d,
                lower: lower_bound(n, d)?.lower_best,
                constructed,
                upper: general_upper(n, d),
                exact,
            });
        }
    }
    Ok(rows)
}
