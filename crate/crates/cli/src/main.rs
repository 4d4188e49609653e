use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heckecell::filtration::Filtration;
use heckecell::murphy::{CellModule, MurphyBasis};
use heckecell::suite::{self, CheckRecord, Params, CHECKS};
use heckecell::tableaux::{row_standard_tableaux, standard_tableaux};
use heckecell::{Error, Partition};

/// Exact verification of the restriction filtration of Hecke algebra cell
/// modules.
#[derive(Parser)]
#[command(name = "heckecell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check; exit status 1 if any verdict fails.
    Verify {
        check: String,
        #[command(flatten)]
        common: Common,
        /// Worker threads for independent shapes.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Attach wall-clock milliseconds to every record.
        #[arg(long)]
        timing: bool,
    },
    /// Write deterministic data dumps.
    Dump {
        kind: DumpKind,
        #[command(flatten)]
        common: Common,
        /// Row-standard instead of standard tableaux.
        #[arg(long)]
        row_standard: bool,
    },
    /// List the registered checks.
    ListChecks {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    /// A single n or an inclusive range A..B.
    #[arg(long, default_value = "2..5")]
    n: String,
    /// Partition such as 3,2,1; repeatable. Overrides --n.
    #[arg(long = "lambda")]
    lambdas: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DumpKind {
    MurphyBasis,
    CellActionMatrices,
    FiltrationReport,
    Tableaux,
}

enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCheck(_) | Error::BadRange(_) | Error::Parse(_) | Error::BadDegree(..) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("--n expects N or A..B, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(Failure::Usage(format!("--n range {s:?} is empty or starts at 0")));
    }
    Ok(lo..=hi)
}

impl Common {
    fn params(&self, timing: bool) -> Result<Params, Failure> {
        let n = parse_range(&self.n)?;
        let lambdas = if self.lambdas.is_empty() {
            None
        } else {
            Some(
                self.lambdas
                    .iter()
                    .map(|s| s.parse::<Partition>().map_err(|e| Failure::Usage(format!("--lambda {s:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        };
        Ok(Params { n, lambdas, seed: self.seed, timing })
    }

    /// Shapes named by `--lambda`, else all partitions in the `--n` range.
    fn shapes(&self, max_n: usize) -> Result<Vec<Partition>, Failure> {
        let params = self.params(false)?;
        let shapes: Vec<Partition> = match params.lambdas {
            Some(ls) => ls,
            None => params.n.flat_map(Partition::all).collect(),
        };
        if let Some(l) = shapes.iter().find(|l| l.size() == 0 || l.size() > max_n) {
            return Err(Failure::Usage(format!("shape {l} is outside 1 <= n <= {max_n}")));
        }
        Ok(shapes)
    }

    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn write_json(out: &mut dyn Write, value: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn table_row(record: &CheckRecord) -> String {
    let lambda = record.lambda.as_ref().map_or("-".to_string(), |l| l.to_string());
    let note = match &record.verdict {
        heckecell::filtration::Verdict::Fail(w) => w.detail.clone(),
        heckecell::filtration::Verdict::Skipped(r) => r.clone(),
        heckecell::filtration::Verdict::Pass => match &record.details {
            Value::Object(map) => map
                .iter()
                .filter(|(_, v)| v.is_number() || v.is_boolean() || v.is_string())
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" "),
            _ => String::new(),
        },
    };
    let time = record.millis.map_or(String::new(), |ms| format!(" {ms}ms"));
    format!("{:<24} {:>2} {:<12} {:<7} {note}{time}", record.check, record.n, lambda, record.verdict.status())
}

fn verify(check: &str, common: &Common, jobs: usize, timing: bool) -> Result<(), Failure> {
    let params = common.params(timing)?;
    suite::check_info(check)?;
    let mut out = common.writer()?;
    if common.format == Format::Table {
        writeln!(out, "{:<24} {:>2} {:<12} {:<7} details", "check", "n", "lambda", "status")?;
    }
    let format = common.format;
    let records = suite::run_check_streaming(check, &params, jobs, |r| {
        match format {
            Format::Json => write_json(&mut *out, r)?,
            Format::Table => writeln!(out, "{}", table_row(r))?,
        }
        out.flush()
    })?;
    if format == Format::Table {
        let failed = records.iter().filter(|r| r.verdict.is_fail()).count();
        let skipped = records.iter().filter(|r| r.verdict.status() == "skipped").count();
        writeln!(out, "{} records, {failed} failed, {skipped} skipped", records.len())?;
    }
    out.flush()?;
    if records.iter().any(|r| r.verdict.is_fail()) {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn dump(kind: DumpKind, common: &Common, row_standard: bool) -> Result<(), Failure> {
    let mut out = common.writer()?;
    let table = common.format == Format::Table;
    match kind {
        DumpKind::Tableaux => {
            for l in common.shapes(12)? {
                let tabs = if row_standard { row_standard_tableaux(&l) } else { standard_tableaux(&l) };
                for t in tabs {
                    if table {
                        writeln!(out, "{l:<12} {t}")?;
                    } else {
                        write_json(&mut *out, &json!({ "lambda": l, "tableau": t }))?;
                    }
                }
            }
        }
        DumpKind::MurphyBasis => {
            let params = common.params(false)?;
            for n in params.n {
                let basis = MurphyBasis::for_degree(n)?;
                for idx in basis.indices() {
                    let element = basis.element(&idx);
                    if table {
                        writeln!(out, "{:<12} {} {} : {element}", idx.shape, idx.s, idx.t)?;
                    } else {
                        write_json(&mut *out, &json!({ "shape": idx.shape, "s": idx.s, "t": idx.t, "element": element }))?;
                    }
                }
            }
        }
        DumpKind::CellActionMatrices => {
            for l in common.shapes(7)? {
                let cell = CellModule::new(&l)?;
                for i in 1..l.size() {
                    let matrix = cell.action_matrix(i)?;
                    if table {
                        writeln!(out, "{l} T_{i} on {}", cell.tableaux().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "))?;
                        for row in matrix {
                            writeln!(out, "  {}", row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" | "))?;
                        }
                    } else {
                        write_json(&mut *out, &json!({ "lambda": l, "i": i, "basis": cell.tableaux(), "matrix": matrix }))?;
                    }
                }
            }
        }
        DumpKind::FiltrationReport => {
            for l in common.shapes(8)? {
                let report = Filtration::new(&l)?.report(common.seed, true)?;
                if table {
                    writeln!(out, "{l}: order_preserving={} dimensions={}", report.order_preserving.status(), report.dimensions.status())?;
                    for layer in &report.layers {
                        writeln!(
                            out,
                            "  j={} alpha={} mu={} dim={} submodule={} iso={}",
                            layer.j,
                            layer.alpha,
                            layer.mu,
                            layer.dim,
                            layer.submodule.status(),
                            layer.iso.status()
                        )?;
                    }
                } else {
                    write_json(&mut *out, &report)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn list_checks(format: Format) -> Result<(), Failure> {
    let mut out = BufWriter::new(io::stdout().lock());
    for name in CHECKS {
        let info = suite::check_info(name)?;
        match format {
            Format::Json => write_json(&mut out, &json!({ "name": name, "max_n": info.max_n, "summary": info.summary }))?,
            Format::Table => writeln!(out, "{name:<24} n <= {:<3} {}", info.max_n, info.summary)?,
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { check, common, jobs, timing } => verify(check, common, *jobs, *timing),
        Command::Dump { kind, common, row_standard } => dump(*kind, common, *row_standard),
        Command::ListChecks { format } => list_checks(*format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
