//! `hpt` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (or I/O trouble), 2 usage
//! error, 3 cell cap exceeded.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hpt_core::analysis::{self, SuiteSelection, SumsReport};
use hpt_core::export::{self, DotStyle, RowRecord, TableFormat, TableSource};
use hpt_core::sequences;
use hpt_core::triangle;
use hpt_core::{CellCap, Error, Mosaic};
use num_bigint::BigInt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hpt", version, about = "Hyperbolic Pascal triangles for the {4,q} mosaics")]
struct Cli {
    /// Cell cap for a single build; overrides HPT_MAX_CELLS.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_cells: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct MosaicArg {
    /// Mosaic parameter q of {4,q}, at least 4.
    #[arg(long, value_parser = clap::value_parser!(u32).range(4..))]
    q: u32,
}

impl MosaicArg {
    fn mosaic(self) -> Mosaic {
        Mosaic::new(self.q).expect("range-checked by the parser")
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum TableFlag {
    Plain,
    Csv,
    Json,
}

impl From<TableFlag> for TableFormat {
    fn from(flag: TableFlag) -> Self {
        match flag {
            TableFlag::Plain => TableFormat::Plain,
            TableFlag::Csv => TableFormat::Csv,
            TableFlag::Json => TableFormat::Json,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ExportFlag {
    Dot,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one row.
    Row {
        #[command(flatten)]
        q: MosaicArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: TableFlag,
    },
    /// Print one element.
    Elem {
        #[command(flatten)]
        q: MosaicArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
    },
    /// Tabulate row sizes, sums, alternating sums and type subsums.
    Sums {
        #[command(flatten)]
        q: MosaicArg,
        #[arg(long = "to")]
        to: usize,
        /// Weights for even and odd positions.
        #[arg(long, num_args = 2, value_names = ["V", "W"], allow_negative_numbers = true)]
        weights: Option<Vec<BigInt>>,
        #[arg(long, value_enum, default_value = "plain")]
        format: TableFlag,
    },
    /// Check every identity against brute-force construction.
    Verify {
        #[command(flatten)]
        q: MosaicArg,
        #[arg(long = "to")]
        to: usize,
        /// all, rows, sums, subsums or lemma.
        #[arg(long, default_value = "all")]
        suite: SuiteSelection,
    },
    /// Write rows 0..=N as DOT, CSV or JSON.
    Export {
        #[command(flatten)]
        q: MosaicArg,
        #[arg(long = "to")]
        to: usize,
        #[arg(long, value_enum)]
        format: ExportFlag,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a coupled affine system to a ternary recurrence.
    Lemma {
        #[arg(long, allow_negative_numbers = true)]
        u1: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        v1: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        w1: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        u2: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        v2: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        w2: BigInt,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::CapExceeded { .. } => Failure::Cap(err.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Io(err.to_string())
    }
}

/// Runs the CLI with the process environment's `HPT_MAX_CELLS`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_cap = std::env::var(hpt_core::MAX_CELLS_ENV).ok();
    run_with_env(args, env_cap.as_deref(), out, err)
}

pub fn run_with_env<I, T>(args: I, env_cap: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = CellCap::resolve(cli.max_cells, env_cap)
        .map_err(Failure::from)
        .and_then(|cap| dispatch(cli.command, cap, out, err));
    match result {
        Ok(code) => code,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Cap(m) => (EXIT_CAP, m),
                Failure::Io(m) => (EXIT_FAILED, m),
            };
            let _ = writeln!(err, "hpt: {message}");
            code
        }
    }
}

fn dispatch(command: Command, cap: CellCap, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Row { q, n, format } => {
            let row = triangle::row(q.mosaic(), n, cap)?;
            let records = [RowRecord::from(&row)];
            let source = TableSource::Rows { q: q.q, rows: &records };
            out.write_all(export::to_table(&source, format.into())?.as_bytes())?;
        }
        Command::Elem { q, n, k } => {
            writeln!(out, "{}", triangle::element(q.mosaic(), n, k, cap)?)?;
        }
        Command::Sums { q, to, weights, format } => {
            let report = analysis::verify_range(q.mosaic(), to, &SuiteSelection::all(), cap);
            truncation_error(&report)?;
            let weights = weights.map(|w| (w[0].clone(), w[1].clone()));
            let source = TableSource::Report { report: &report, weights };
            out.write_all(export::to_table(&source, format.into())?.as_bytes())?;
        }
        Command::Verify { q, to, suite } => {
            let report = analysis::verify_range(q.mosaic(), to, &suite, cap);
            write_summary(&report, &suite, out)?;
            for failure in &report.failures {
                writeln!(
                    err,
                    "FAIL q={} n={} {}: expected {}, got {}",
                    report.q, failure.n, failure.identity, failure.expected, failure.actual
                )?;
            }
            truncation_error(&report)?;
            return Ok(if report.failures.is_empty() { EXIT_OK } else { EXIT_FAILED });
        }
        Command::Export { q, to, format, out: path } => {
            let rows = triangle::collect_rows(q.mosaic(), to, cap)?;
            let text = match format {
                ExportFlag::Dot => export::to_dot(&rows, &DotStyle::default())?,
                ExportFlag::Csv | ExportFlag::Json => {
                    let records: Vec<RowRecord> = rows.iter().map(RowRecord::from).collect();
                    let table = if matches!(format, ExportFlag::Csv) {
                        TableFormat::Csv
                    } else {
                        TableFormat::Json
                    };
                    export::to_table(&TableSource::Rows { q: q.q, rows: &records }, table)?
                }
            };
            match path {
                Some(path) => write_atomically(&path, text.as_bytes())?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Lemma { u1, v1, w1, u2, v2, w2 } => {
            writeln!(out, "{}", sequences::lemma_reduce(u1, v1, w1, u2, v2, w2)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn truncation_error(report: &SumsReport) -> Result<(), Failure> {
    match &report.truncated {
        Some(t) => Err(Failure::Cap(
            Error::CapExceeded {
                row: t.row,
                row_cells: t.row_cells,
                total_cells: t.total_cells,
                cap: t.cap,
            }
            .to_string(),
        )),
        None => Ok(()),
    }
}

fn write_summary(report: &SumsReport, suites: &SuiteSelection, out: &mut dyn Write) -> io::Result<()> {
    for &suite in suites.suites() {
        let tally = report.tally(suite);
        write!(
            out,
            "{suite}: passed {} skipped {} failed {}",
            tally.passed, tally.skipped, tally.failed
        )?;
        if tally.observed > 0 {
            let held = report.observations.iter().filter(|o| o.held).count();
            write!(out, " observed {} (held {held})", tally.observed)?;
        }
        writeln!(out)?;
    }
    let rows = report.entries.len();
    match &report.truncated {
        None => writeln!(out, "q={} rows 0..={}: {}", report.q, rows.saturating_sub(1), verdict(report)),
        Some(t) => writeln!(out, "q={} truncated at row {} (cap {})", report.q, t.row, t.cap),
    }
}

fn verdict(report: &SumsReport) -> &'static str {
    if report.failures.is_empty() {
        "all checks passed"
    } else {
        "FAILED"
    }
}

/// Temp file in the destination directory, then rename over the target.
fn write_atomically(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
