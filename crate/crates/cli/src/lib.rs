//! The `cfrieze` command line.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! exit code: 0 on success, 1 on a domain error, 2 on a usage error.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cfrieze::analysis::{classify, is_integer_frieze, is_positive};
use cfrieze::continuant::verify_suite;
use cfrieze::continuant::ContinuantError;
use cfrieze::frieze::check_local_relations;
use cfrieze::section::reconstruct;
use cfrieze::transform::{flip_sign_seed, gamma, gamma_inverse, scale_seed};
use cfrieze::{
    AnalysisError, Exec, Frieze, FriezeDescriptor, FriezeError, FriezeParams, PolygonalSequence, Rat,
    SectionError, SectionJson, TransformError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

const S_CONVENTION: &str = "s = f(i, i+n) for even i, t = f(i, i+n) for odd i";

#[derive(Parser, Debug)]
#[command(name = "cfrieze", version, about = "Exact c-frieze construction, rendering and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a frieze descriptor from free values or a full seed.
    Build(BuildArgs),
    /// Print a window of a frieze.
    Render(RenderArgs),
    /// Report s, t, periodicity, classification, integrality and positivity.
    Analyze(InArgs),
    /// Rebuild a frieze from a section file.
    Reconstruct(ReconstructArgs),
    /// Apply flip, scale:d, gamma or gamma-inv[:j0] to a frieze.
    Transform(TransformArgs),
    /// Check the continuant identities and/or a frieze's local relations.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: Rat,
    #[arg(long)]
    n: usize,
    /// n + 1 comma-separated values; the last two seed entries are solved for.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "seed", required_unless_present = "seed")]
    free: Option<Vec<Rat>>,
    /// n + 3 comma-separated values, validated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    seed: Option<Vec<Rat>>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    base: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// First anchor; defaults to the seed's base index.
    #[arg(long, allow_hyphen_values = true)]
    from: Option<i64>,
    /// Number of anchors; defaults to 2(n + 3).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    cols: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct InArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: Rat,
    #[arg(long)]
    n: usize,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = parse_op)]
    op: Op,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("what").required(true).multiple(true).args(["identities", "input"]))]
struct VerifyArgs {
    /// Run the continuant identity suite.
    #[arg(long)]
    identities: bool,
    #[arg(long, default_value_t = 8)]
    max_k: usize,
    /// Check mesh, transvection and backward-row relations of this frieze.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<i64>,
    #[arg(long)]
    cols: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Op {
    Flip,
    Scale(Rat),
    Gamma,
    GammaInv(Option<i64>),
}

fn parse_op(text: &str) -> Result<Op, String> {
    match text.split_once(':') {
        None if text == "flip" => Ok(Op::Flip),
        None if text == "gamma" => Ok(Op::Gamma),
        None if text == "gamma-inv" => Ok(Op::GammaInv(None)),
        Some(("scale", d)) => d.parse().map(Op::Scale).map_err(|e| format!("{e}")),
        Some(("gamma-inv", j)) => j
            .parse()
            .map(|j| Op::GammaInv(Some(j)))
            .map_err(|_| format!("bad index {j:?}")),
        _ => Err("expected flip, scale:d, gamma or gamma-inv[:j0]".into()),
    }
}

/// A failure reported with exit code 1.
#[derive(Debug, Error)]
enum DomainError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    MalformedInput { path: String, message: String },
    #[error(transparent)]
    Frieze(#[from] FriezeError),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Identity(ContinuantError),
    #[error("{0}")]
    Relation(String),
}

impl DomainError {
    /// The library's name for the error.
    fn name(&self) -> &'static str {
        match self {
            DomainError::Io { .. } => "Io",
            DomainError::MalformedInput { .. } => "MalformedInput",
            DomainError::Frieze(e) => frieze_error_name(e),
            DomainError::Section(e) => section_error_name(e),
            DomainError::Analysis(e) => match e {
                AnalysisError::PreconditionBreach(_) => "PreconditionBreach",
                AnalysisError::NotMonotonic => "NotMonotonic",
                AnalysisError::ZeroPivot { .. } => "ZeroPivot",
                AnalysisError::Internal(_) => "Internal",
                AnalysisError::Section(e) => section_error_name(e),
            },
            DomainError::Transform(e) => match e {
                TransformError::ZeroScale => "ZeroScale",
                TransformError::NotRepetitive => "NotRepetitive",
                TransformError::IrrationalRoot(_) => "IrrationalRoot",
                TransformError::NotInduced { .. } => "NotInduced",
                TransformError::OrderTooSmall(_) => "OrderTooSmall",
                TransformError::Internal(_) => "Internal",
            },
            DomainError::Identity(e) => match e {
                ContinuantError::ZeroParameter => "ZeroParameter",
                ContinuantError::ZeroDenominatorInCF { .. } => "ZeroDenominatorInCF",
                ContinuantError::BoundExceeded { .. } => "BoundExceeded",
                ContinuantError::InvalidIdentity { .. } => "InvalidIdentity",
                ContinuantError::Counterexample { .. } => "Counterexample",
            },
            DomainError::Relation(_) => "RelationFailure",
        }
    }
}

fn section_error_name(e: &SectionError) -> &'static str {
    match e {
        SectionError::InvalidSection(_) => "InvalidSection",
        SectionError::WrongLength { .. } => "WrongLength",
        SectionError::ZeroPivot => "ZeroPivot",
        SectionError::ZeroOnSection { .. } => "ZeroOnSection",
        SectionError::InconsistentSection { .. } => "InconsistentSection",
        SectionError::Frieze(e) => frieze_error_name(e),
    }
}

fn frieze_error_name(e: &FriezeError) -> &'static str {
    match e {
        FriezeError::InvalidParams(_) => "InvalidParams",
        FriezeError::DegenerateSeed => "DegenerateSeed",
        FriezeError::InvalidSeed(_) => "InvalidSeed",
        FriezeError::WrongLength { .. } => "WrongLength",
        FriezeError::OutOfBand { .. } => "OutOfBand",
    }
}

type Outcome = Result<(), DomainError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, DomainError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| DomainError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| DomainError::MalformedInput {
        path: shown,
        message: e.to_string(),
    })
}

fn load_frieze(path: &Path) -> Result<Frieze, DomainError> {
    let descriptor: FriezeDescriptor = read_json(path)?;
    Ok(Frieze::new(descriptor.to_seed()?))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Writes `text` to `out` if given, else to stdout.
fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| DomainError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            stdout.write_all(text.as_bytes()).expect("stdout");
            Ok(())
        }
    }
}

fn build(args: &BuildArgs, stdout: &mut dyn Write) -> Outcome {
    let params = FriezeParams::new(args.c.clone(), args.n)?;
    let seed = match (&args.free, &args.seed) {
        (Some(free), None) => PolygonalSequence::from_free(params, args.base, free)?,
        (None, Some(seed)) => PolygonalSequence::new(params, args.base, seed.clone())?,
        _ => unreachable!("clap enforces exactly one of --free and --seed"),
    };
    emit(&to_json(&FriezeDescriptor::from_seed(&seed)), args.out.as_deref(), stdout)
}

#[derive(Serialize)]
struct RenderedRow {
    k: i64,
    values: Vec<Rat>,
}

#[derive(Serialize)]
struct Rendered {
    c: Rat,
    n: usize,
    from: i64,
    cols: u32,
    rows: Vec<RenderedRow>,
}

/// Staggered layout: the cell `(i, j)` sits in slot `i + j`, so neighbouring
/// rows interleave. Each slot is as wide as its widest cell.
fn render_text(rows: &[RenderedRow], from: i64) -> String {
    let cell = |row: &RenderedRow, slot: i64| -> Option<String> {
        let twice = slot - row.k + 1;
        if twice.rem_euclid(2) != 0 {
            return None;
        }
        let idx = twice / 2 - from;
        usize::try_from(idx).ok().and_then(|idx| row.values.get(idx)).map(|v| v.to_string())
    };
    let cols = rows[0].values.len() as i64;
    let last_k = rows.last().map(|r| r.k).unwrap_or(0);
    let lo = 2 * from - 2;
    let hi = 2 * (from + cols - 1) + last_k - 1;
    let widths: Vec<usize> = (lo..=hi)
        .map(|slot| rows.iter().filter_map(|r| cell(r, slot)).map(|s| s.len()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (slot, width) in (lo..=hi).zip(&widths) {
            let text = cell(row, slot).unwrap_or_default();
            line.push_str(&format!("{text:>width$} "));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render(args: &RenderArgs, stdout: &mut dyn Write) -> Outcome {
    let f = load_frieze(&args.input)?;
    let n = f.n();
    let from = args.from.unwrap_or(f.base_index());
    let cols = args.cols.unwrap_or(2 * (n as u32 + 3));
    let hi = from + cols as i64;
    let rows: Vec<RenderedRow> = (-1..=f.params().last_row())
        .map(|k| RenderedRow {
            k,
            values: f.row(k, from, hi).expect("row in band"),
        })
        .collect();
    let text = match args.format {
        Format::Text => render_text(&rows, from),
        Format::Tsv => {
            let mut out = String::new();
            for row in &rows {
                for (idx, v) in row.values.iter().enumerate() {
                    let i = from + idx as i64;
                    out.push_str(&format!("{i}\t{}\t{v}\n", i + row.k - 1));
                }
            }
            out
        }
        Format::Json => to_json(&Rendered {
            c: f.c().clone(),
            n,
            from,
            cols,
            rows,
        }),
    };
    emit(&text, None, stdout)
}

fn analyze(args: &InArgs, stdout: &mut dyn Write) -> Outcome {
    let f = load_frieze(&args.input)?;
    let report = serde_json::json!({
        "s": f.s(),
        "t": f.t(),
        "s_convention": S_CONVENTION,
        "periodicity": f.period_report(),
        "classification": classify(&f),
        "integrality": is_integer_frieze(&f),
        "positive": is_positive(&f),
    });
    emit(&to_json(&report), None, stdout)
}

fn reconstruct_cmd(args: &ReconstructArgs, stdout: &mut dyn Write) -> Outcome {
    let params = FriezeParams::new(args.c.clone(), args.n)?;
    let section: SectionJson = read_json(&args.input)?;
    let sv = section.to_section_values(&params)?;
    let f = reconstruct(&params, &sv)?;
    emit(&to_json(&f.descriptor()), args.out.as_deref(), stdout)
}

fn transform(args: &TransformArgs, stdout: &mut dyn Write) -> Outcome {
    let f = load_frieze(&args.input)?;
    let seed = match &args.op {
        Op::Flip => flip_sign_seed(f.seed())?,
        Op::Scale(d) => scale_seed(f.seed(), d)?,
        Op::Gamma => gamma(f.seed())?,
        Op::GammaInv(j0) => {
            let j0 = match j0 {
                Some(j) => *j,
                None => classify(&f).induced_index.unwrap_or(f.base_index()),
            };
            gamma_inverse(&f, j0)?.seed().clone()
        }
    };
    emit(&to_json(&FriezeDescriptor::from_seed(&seed)), args.out.as_deref(), stdout)
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Outcome {
    let mut out = String::new();
    let mut failure = None;
    if args.identities {
        for (identity, result) in verify_suite(args.max_k, Exec::default()) {
            match result {
                Ok(cert) => out.push_str(&format!("ok {identity}: lhs has {} terms\n", cert.lhs.len())),
                Err(e) => {
                    out.push_str(&format!("FAIL {identity}: {e}\n"));
                    if failure.is_none() {
                        failure = Some(DomainError::Identity(e));
                    }
                }
            }
        }
    }
    if let Some(path) = &args.input {
        let f = load_frieze(path)?;
        let from = args.from.unwrap_or(f.base_index());
        let cols = args.cols.unwrap_or(40) as i64;
        match check_local_relations(&f, from, from + cols, Exec::default()) {
            Ok(()) => out.push_str(&format!("ok local relations on anchors {from}..{}\n", from + cols)),
            Err(e) => {
                out.push_str(&format!("FAIL {e}\n"));
                failure.get_or_insert(DomainError::Relation(e.to_string()));
            }
        }
    }
    emit(&out, None, stdout)?;
    failure.map_or(Ok(()), Err)
}

fn report<T: Display>(stderr: &mut dyn Write, name: &str, e: T) {
    let _ = writeln!(stderr, "error: {name}: {e}");
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let outcome = match &cli.command {
        Command::Build(a) => build(a, stdout),
        Command::Render(a) => render(a, stdout),
        Command::Analyze(a) => analyze(a, stdout),
        Command::Reconstruct(a) => reconstruct_cmd(a, stdout),
        Command::Transform(a) => transform(a, stdout),
        Command::Verify(a) => verify(a, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            report(stderr, e.name(), &e);
            1
        }
    }
}
