//! `pcm`: analyze, extend, generate and survey reciprocal matrices.
//!
//! Exit codes: 0 success or efficient, 1 input or validation error,
//! 2 construction impossible, 3 inefficient, 4 property sweep failed.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pcm_core::efficiency::{is_efficient_with, subvector_efficiency_profile_with, PERRON_EDGE_TOL};
use pcm_core::generators::{
    block_double, bordered_growth, bozoki, random_consistent, random_reciprocal, toeplitz_alt,
    DEFAULT_SCALE,
};
use pcm_core::io::{read_matrix, read_vector, to_csv, to_json};
use pcm_core::survey::{run_survey, run_theorem_sweep, survey_csv, Property, SurveyConfig};
use pcm_core::{
    characterize_4x4, classify, extend_constant_row_sums, extend_efficient, extend_inefficient,
    extend_inefficient_via, extend_with_perron, geometric_mean_vector, perron, Error,
    ReciprocalMatrix, FIXTURE_TOL,
};

use report::{AnalysisReport, VectorSource};

const EXIT_ERROR: u8 = 1;
const EXIT_IMPOSSIBLE: u8 = 2;
const EXIT_INEFFICIENT: u8 = 3;
const EXIT_SWEEP_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "pcm", version, about = "Reciprocal matrix analysis and construction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perron eigenpair, efficiency, digraph structure and well-behaved class.
    Analyze(AnalyzeArgs),
    /// Extend a matrix by one row and column (or more, for the inefficient mode).
    Extend(ExtendArgs),
    /// Write a member of a structured or random matrix family.
    Generate(GenerateArgs),
    /// Order-4 inefficiency characterization with its diagonal witness.
    Char4(Char4Args),
    /// Monte Carlo frequency of Perron-vector inefficiency.
    Survey(SurveyArgs),
    /// Check a structural property on seeded random instances.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file (CSV or JSON); `-` or omitted reads standard input.
    input: Option<PathBuf>,
    /// Relative reciprocity tolerance for the input matrix.
    #[arg(long = "fixture-tol", alias = "tolerance", default_value_t = FIXTURE_TOL)]
    tolerance: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Matrix output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `perron`, `geomean`, or a path to a vector file.
    #[arg(long, default_value = "perron")]
    vector: String,
    /// Relative edge tolerance; defaults to 1e-9 for computed vectors and 0
    /// for vectors read from a file.
    #[arg(long)]
    edge_tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Extension with all row sums equal (Perron vector e).
    Constant,
    /// Extension with a prescribed Perron vector.
    Perron,
    /// Extension with inefficient Perron vector.
    Inefficient,
    /// Extension with efficient Perron vector.
    Efficient,
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Mode::Constant)]
    mode: Mode,
    /// Prescribed Perron vector file (perron mode).
    #[arg(long)]
    perron_vector: Option<PathBuf>,
    /// Order of the result (inefficient mode); defaults to one more than the input.
    #[arg(long)]
    target_order: Option<usize>,
    /// Intermediate matrix whose leading block is the input (inefficient mode).
    #[arg(long)]
    intermediate: Option<PathBuf>,
    /// Border constant (inefficient mode).
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Scale of the new vertex (inefficient mode).
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// 1-based column used for the diagonal scaling (efficient mode).
    #[arg(long, default_value_t = 1)]
    column: usize,
    /// Seed for growing a random intermediate matrix (inefficient mode).
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
    /// Write the construction metadata as JSON to this path.
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Print the full result (matrix and metadata) as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Bozoki,
    Toeplitz,
    Blockdouble,
    Border,
    Random,
    Consistent,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 3)]
    order: usize,
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    /// Entries (or weights) are log-uniform on [1/scale, scale].
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    scale: f64,
    /// Required by the random families.
    #[arg(long)]
    seed: Option<u64>,
    /// First block (blockdouble) or base matrix (border).
    #[arg(long)]
    t0: Option<PathBuf>,
    /// Second block (blockdouble).
    #[arg(long)]
    t1: Option<PathBuf>,
    #[arg(long = "fixture-tol", alias = "tolerance", default_value_t = FIXTURE_TOL)]
    tolerance: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct Char4Args {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5, 6, 7])]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Emit CSV.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Property name; see `Property` for the accepted spellings.
    property: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
    }
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
    Ok(s)
}

fn load_matrix(path: Option<&Path>, tol: f64) -> Result<ReciprocalMatrix> {
    let name = path.map_or("standard input".to_string(), |p| p.display().to_string());
    read_matrix(&read_text(path)?, tol).with_context(|| format!("invalid matrix in {name}"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn encode(a: &ReciprocalMatrix, format: Format) -> String {
    match format {
        Format::Csv => to_csv(a),
        Format::Json => to_json(a),
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn analyze(args: AnalyzeArgs) -> Result<u8> {
    let a = load_matrix(args.input.input.as_deref(), args.input.tolerance)?;
    let p = perron(&a)?;
    let (source, w, default_eps) = match args.vector.as_str() {
        "perron" => (VectorSource::Perron, p.vector.clone(), PERRON_EDGE_TOL),
        "geomean" => (VectorSource::GeometricMean, geometric_mean_vector(&a), PERRON_EDGE_TOL),
        path => {
            let w = read_vector(&read_text(Some(Path::new(path)))?)
                .with_context(|| format!("invalid vector in {path}"))?;
            (VectorSource::File(path.to_string()), w, 0.0)
        }
    };
    let eps = args.edge_tol.unwrap_or(default_eps);
    let efficiency = is_efficient_with(&a, &w, eps)?;
    let profile = if a.order() >= 3 {
        Some(subvector_efficiency_profile_with(&a, &w, eps)?)
    } else {
        None
    };
    let rep = AnalysisReport {
        order: a.order(),
        eigenvalue: p.eigenvalue,
        perron_vector: p.vector.into_vec(),
        residual: p.residual,
        vector_source: source,
        vector: w.into_vec(),
        edge_tolerance: eps,
        efficiency,
        well_behaved: classify(&a),
        subvector_profile: profile,
    };
    let text = if args.json { json_line(&rep)? } else { rep.to_text() };
    emit(None, &text)?;
    Ok(if rep.efficiency.efficient { 0 } else { EXIT_INEFFICIENT })
}

fn extend(args: ExtendArgs) -> Result<u8> {
    let b = load_matrix(args.input.input.as_deref(), args.input.tolerance)?;
    let result = match args.mode {
        Mode::Constant => extend_constant_row_sums(&b),
        Mode::Perron => {
            let path = args.perron_vector.as_deref().context("--mode perron needs --perron-vector")?;
            let w = read_vector(&read_text(Some(path))?)
                .with_context(|| format!("invalid vector in {}", path.display()))?;
            extend_with_perron(&b, &w)
        }
        Mode::Inefficient => match args.intermediate.as_deref() {
            Some(path) => {
                let s = load_matrix(Some(path), args.input.tolerance)?;
                if let Some(n) = args.target_order {
                    if n != s.order() + 1 {
                        bail!("--target-order {n} does not match intermediate of order {}", s.order());
                    }
                }
                extend_inefficient_via(&b, &s, args.a, args.c)
            }
            None => {
                let n = args.target_order.unwrap_or(b.order() + 1);
                let seed = if n > b.order() + 1 {
                    args.seed.context("growing an intermediate matrix needs an explicit --seed")?
                } else {
                    args.seed.unwrap_or(0)
                };
                extend_inefficient(&b, n, args.a, args.c, seed)
            }
        },
        Mode::Efficient => {
            if args.column == 0 {
                bail!("--column is 1-based");
            }
            extend_efficient(&b, args.column - 1)
        }
    };
    let result = match result {
        Ok(r) => r,
        Err(e @ Error::ConsistentInputAtFullOrder { .. }) => {
            eprintln!("error: {e}");
            return Ok(EXIT_IMPOSSIBLE);
        }
        Err(e) => return Err(e.into()),
    };
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(meta) = args.meta.as_deref() {
        emit(Some(meta), &json_line(&result)?)?;
    }
    let text = if args.json { json_line(&result)? } else { encode(&result.matrix, args.output.format) };
    emit(args.output.out.as_deref(), &text)?;
    Ok(0)
}

fn generate(args: GenerateArgs) -> Result<u8> {
    let need_seed = || args.seed.context("random families need an explicit --seed");
    let block = |p: &Option<PathBuf>, flag: &str| -> Result<ReciprocalMatrix> {
        let path = p.as_deref().with_context(|| format!("this family needs {flag}"))?;
        load_matrix(Some(path), args.tolerance)
    };
    let a = match args.family {
        Family::Bozoki => bozoki(args.order, args.b)?,
        Family::Toeplitz => toeplitz_alt(args.order, args.b)?,
        Family::Blockdouble => block_double(&block(&args.t0, "--t0")?, &block(&args.t1, "--t1")?)?,
        Family::Border => bordered_growth(&block(&args.t0, "--t0")?)?,
        Family::Random | Family::Consistent => {
            if args.order < 2 {
                return Err(Error::OrderTooSmall { order: args.order, min: 2 }.into());
            }
            if !(args.scale.is_finite() && args.scale >= 1.0) {
                bail!("--scale must be at least 1");
            }
            let seed = need_seed()?;
            if matches!(args.family, Family::Random) {
                random_reciprocal(args.order, args.scale, seed)
            } else {
                random_consistent(args.order, args.scale, seed)
            }
        }
    };
    emit(args.output.out.as_deref(), &encode(&a, args.output.format))?;
    Ok(0)
}

fn char4(args: Char4Args) -> Result<u8> {
    let a = load_matrix(args.input.input.as_deref(), args.input.tolerance)?;
    let w = characterize_4x4(&a)?;
    let text = if args.json { json_line(&w)? } else { report::char4_text(&w) };
    emit(None, &text)?;
    Ok(if w.inefficient { EXIT_INEFFICIENT } else { 0 })
}

fn survey(args: SurveyArgs) -> Result<u8> {
    let cfg = SurveyConfig {
        dims: args.dims,
        samples_per_dim: args.samples,
        scale: args.scale,
        seed: args.seed,
        workers: args.workers,
    };
    let rows = run_survey(&cfg)?;
    let text = if args.csv {
        survey_csv(&rows)
    } else if args.json {
        json_line(&rows)?
    } else {
        report::survey_text(&rows)
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn sweep(args: SweepArgs) -> Result<u8> {
    let property: Property = args.property.parse()?;
    let r = run_theorem_sweep(property, args.samples, args.seed)?;
    let text = if args.json { json_line(&r)? } else { report::sweep_text(&r)? };
    emit(None, &text)?;
    Ok(if r.passed { 0 } else { EXIT_SWEEP_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Extend(a) => extend(a),
        Command::Generate(a) => generate(a),
        Command::Char4(a) => char4(a),
        Command::Survey(a) => survey(a),
        Command::Sweep(a) => sweep(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
