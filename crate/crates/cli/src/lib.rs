//! Command-line front end: sequences, triangles, identity checks, statistics and
//! OEIS cross-checks.
//!
//! Exit status: 0 on success, 1 when a check or comparison fails, 2 on usage
//! errors (unknown names, out-of-range arguments, capped routes), 3 when an
//! input cannot be read or fetched.

pub mod sequences;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use symlattice::identities::{
    self, average_mid_height, central, to_decimal, Failure, IdentityError, IdentityReport, Mode,
    ModeOutcome, ModeSelection, Registry, Status,
};
use symlattice::paths;
use symlattice::riordan::{named_array_with_order, NamedArray, DEFAULT_ORDER};

use sequences::{big_number, compare, SequenceError, SequenceName, SequenceRecord};

pub const MAX_ROWS: usize = 64;
/// Largest `n` accepted by `stats`; the path DP is quadratic in `n`.
pub const MAX_STATS_N: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "symlattice",
    version,
    about = "Riordan arrays and symmetric lattice paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sequence.
    Seq {
        /// d, m, s, pell, ms, catalan or central_binomial
        name: SequenceName,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = SeqFormat::Plain)]
        format: SeqFormat,
    },
    /// Print the leading rows of a named Riordan array.
    Matrix {
        /// P, P_inv, D, D_inv, D_star, E, E_star or E_inv
        name: NamedArray,
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Plain)]
        format: TableFormat,
    },
    /// Verify an identity (or `all`) by the selected routes.
    Check {
        id: String,
        #[arg(long)]
        max_n: Option<usize>,
        /// Comma-separated subset of closed_form, riordan, oracle
        #[arg(long, value_delimiter = ',')]
        modes: Option<Vec<Mode>>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Path statistics over symmetric Dyck paths of length 2n.
    Stats {
        #[arg(value_enum)]
        kind: StatKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Compare a generated sequence with an OEIS b-file.
    OeisCompare {
        name: SequenceName,
        /// Defaults to the entry the sequence is listed under
        #[arg(long)]
        oeis_id: Option<String>,
        #[arg(long, value_enum, default_value_t = Source::Fixture)]
        source: Source,
        /// Read the b-file from this path instead of the vendored copy
        #[arg(long)]
        fixture: Option<std::path::PathBuf>,
        /// Permit `--source fetch` (also needs SYMLATTICE_ALLOW_NETWORK=1)
        #[arg(long)]
        allow_network: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqFormat {
    Plain,
    Json,
    Csv,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatKind {
    MidHeight,
    AxisPoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Fixture,
    Fetch,
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::MissingFixture(_)
            | SequenceError::MalformedBFile { .. }
            | SequenceError::NetworkDisabled
            | SequenceError::Fetch { .. }
            | SequenceError::Io { .. } => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::UnknownId(_)
            | IdentityError::UnknownMode(_)
            | IdentityError::CapExceeded { .. } => CliError::Usage(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Seq {
            name,
            count,
            format,
        } => cmd_seq(name, count, format).map(Outcome::ok),
        Command::Matrix { name, rows, format } => cmd_matrix(name, rows, format).map(Outcome::ok),
        Command::Check {
            id,
            max_n,
            modes,
            format,
        } => cmd_check(&id, max_n, modes, format),
        Command::Stats { kind, n, format } => cmd_stats(kind, n, format).map(Outcome::ok),
        Command::OeisCompare {
            name,
            oeis_id,
            source,
            fixture,
            allow_network,
            format,
        } => cmd_oeis_compare(
            name,
            oeis_id.as_deref(),
            source,
            fixture.as_deref(),
            allow_network,
            format,
        ),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn join(values: &[BigInt], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn cmd_seq(name: SequenceName, count: usize, format: SeqFormat) -> Result<String> {
    let record = SequenceRecord::generate(name, count)?;
    Ok(match format {
        SeqFormat::Plain => format!("{}\n", join(&record.terms, " ")),
        SeqFormat::Json => json(&record),
        SeqFormat::Csv => {
            let mut out = String::from("n,value\n");
            for (i, t) in record.terms.iter().enumerate() {
                writeln!(out, "{i},{t}").unwrap();
            }
            out
        }
        SeqFormat::Bfile => record.to_bfile(),
    })
}

pub fn cmd_matrix(name: NamedArray, rows: usize, format: TableFormat) -> Result<String> {
    if rows == 0 || rows > MAX_ROWS {
        return Err(CliError::Usage(format!(
            "rows must be between 1 and {MAX_ROWS}, got {rows}"
        )));
    }
    let array = named_array_with_order(name, rows.max(DEFAULT_ORDER))
        .map_err(|e| CliError::Input(e.to_string()))?;
    let table = array
        .rows(rows)
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(match format {
        TableFormat::Plain | TableFormat::Csv => {
            let sep = if format == TableFormat::Plain {
                " "
            } else {
                ","
            };
            table
                .iter()
                .map(|r| format!("{}\n", join(r, sep)))
                .collect()
        }
        TableFormat::Json => {
            let numbers: Vec<Vec<serde_json::Number>> = table
                .iter()
                .map(|r| r.iter().map(big_number).collect())
                .collect();
            json(&numbers)
        }
    })
}

/// JSON shape of one check; field order is fixed.
#[derive(Debug, Serialize)]
pub struct CheckJson<'a> {
    pub id: &'a str,
    pub max_n: usize,
    pub modes: &'a [ModeOutcome],
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<&'a Failure>,
}

impl<'a> From<&'a IdentityReport> for CheckJson<'a> {
    fn from(r: &'a IdentityReport) -> Self {
        Self {
            id: &r.id,
            max_n: r.max_n,
            modes: &r.modes,
            status: r.status,
            first_failure: r.first_failure.as_ref(),
        }
    }
}

fn summary_line(r: &IdentityReport) -> String {
    let modes: Vec<String> = r
        .modes
        .iter()
        .map(|m| match m.max_n {
            Some(n) => format!("{} {} (n <= {n})", m.mode, m.status),
            None => format!("{} {}", m.mode, m.status),
        })
        .collect();
    let mut line = format!("{} {}: {}", r.id, r.status, modes.join(", "));
    if let Some(f) = &r.first_failure {
        write!(
            line,
            "; first failure at n = {} by {}: expected {}, got {}",
            f.n, f.mode, f.expected, f.got
        )
        .unwrap();
    }
    line
}

pub fn cmd_check(
    id: &str,
    max_n: Option<usize>,
    modes: Option<Vec<Mode>>,
    format: ReportFormat,
) -> Result<Outcome> {
    let registry = Registry::standard();
    let selection = match modes {
        Some(list) if !list.is_empty() => ModeSelection::Only(list),
        _ => ModeSelection::Available,
    };
    let max_n = max_n.unwrap_or(identities::DEFAULT_SERIES_MAX_N);
    let single = id != "all";
    let reports: Vec<IdentityReport> = if single {
        vec![registry.check(id, max_n, &selection)?]
    } else {
        registry
            .check_all(max_n, &selection)
            .into_iter()
            .collect::<std::result::Result<_, _>>()?
    };
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let stdout = match format {
        ReportFormat::Json => {
            let rows: Vec<CheckJson> = reports.iter().map(CheckJson::from).collect();
            if single {
                json(&rows[0])
            } else {
                json(&rows)
            }
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in &reports {
                writeln!(out, "{}", summary_line(r)).unwrap();
                if single {
                    for v in &r.verdicts {
                        let modes: Vec<&str> = v.modes.iter().map(|m| m.name()).collect();
                        let mark = if v.pass { "" } else { "  FAIL" };
                        writeln!(
                            out,
                            "  n = {}: {} [{}]{mark}",
                            v.n,
                            v.value,
                            modes.join(", ")
                        )
                        .unwrap();
                    }
                }
            }
            if !single {
                writeln!(out, "{}/{} passed", reports.len() - failed, reports.len()).unwrap();
            }
            out
        }
    };
    Ok(Outcome {
        stdout,
        code: if failed == 0 { 0 } else { 1 },
    })
}

#[derive(Debug, Serialize)]
struct StatsJson {
    kind: &'static str,
    n: usize,
    total: serde_json::Number,
    paths: serde_json::Number,
    average: String,
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    asymptotic: Option<identities::AsymptoticRecord>,
}

pub fn cmd_stats(kind: StatKind, n: usize, format: ReportFormat) -> Result<String> {
    if n > MAX_STATS_N {
        return Err(CliError::Usage(format!(
            "n must be at most {MAX_STATS_N}, got {n}"
        )));
    }
    let count = central(n);
    let (label, total, asymptotic) = match kind {
        StatKind::MidHeight => (
            "mid-height",
            paths::mid_height_total(n),
            Some(average_mid_height(n).asymptotic),
        ),
        StatKind::AxisPoints => ("axis-points", paths::axis_points_total(n), None),
    };
    let average = BigRational::new(total.clone(), count.clone());
    let report = StatsJson {
        kind: label,
        n,
        total: big_number(&total),
        paths: big_number(&count),
        average: average.to_string(),
        decimal: to_decimal(&average, 6),
        asymptotic,
    };
    Ok(match format {
        ReportFormat::Json => json(&report),
        ReportFormat::Text => {
            let mut out = format!(
                "kind {}\nn {}\ntotal {}\npaths {}\naverage {}\ndecimal {}\n",
                report.kind, n, total, count, report.average, report.decimal
            );
            if let Some(a) = &report.asymptotic {
                writeln!(
                    out,
                    "sqrt(pi m) - 1 {} (m = {}, |difference| <= {})",
                    a.reference, a.m, a.difference
                )
                .unwrap();
            }
            out
        }
    })
}

pub fn cmd_oeis_compare(
    name: SequenceName,
    oeis_id: Option<&str>,
    source: Source,
    fixture: Option<&std::path::Path>,
    allow_network: bool,
    format: ReportFormat,
) -> Result<Outcome> {
    let oeis_id = match oeis_id {
        Some(id) => id.to_string(),
        None => name
            .oeis()
            .ok_or(SequenceError::NoOeisId(name.name()))?
            .0
            .to_string(),
    };
    let text = match (source, fixture) {
        (Source::Fixture, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| SequenceError::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?
        }
        (Source::Fixture, None) => sequences::fixture(&oeis_id)?.to_string(),
        (Source::Fetch, _) => sequences::fetch(&oeis_id, allow_network)?,
    };
    let bfile = sequences::BFile::parse(&text)?;
    let offset = name.oeis().map_or(0, |(_, o)| o);
    // generate far enough to cover the b-file
    let count = (bfile.last() - offset + 1).clamp(1, sequences::MAX_COUNT as i64) as usize;
    let record = SequenceRecord::generate(name, count)?;
    let comparison = compare(&record, &oeis_id, &bfile);
    let stdout = match format {
        ReportFormat::Json => json(&comparison),
        ReportFormat::Text => format!("{comparison}\n"),
    };
    Ok(Outcome {
        stdout,
        code: if comparison.agrees() { 0 } else { 1 },
    })
}
