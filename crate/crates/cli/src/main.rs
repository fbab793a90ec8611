use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use jtriple::embedding::io::vector_to_json;
use jtriple::embedding::{EmbeddingSpec, FtSpec, LieSpec, MokSpec};
use jtriple::verify::{classify_embedding, SampleConfig, VerificationReport};
use jtriple::{Element, Error, TripleSystem};

mod suites;

use suites::Suite;

#[derive(Parser, Debug)]
#[command(name = "jtriple", version, about = "Jordan triple systems, bounded symmetric domains and isometric embeddings of the ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print dimension, rank, multiplicities and genus of the standard systems.
    ListSystems,
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate an embedding at points of the ball.
    Embed(EmbedArgs),
    /// Decide whether an embedding is of Mok type.
    Classify(ClassifyArgs),
    /// Write an embedding description file.
    Spec(SpecArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Mok,
    Lie,
    Ft,
}

#[derive(Args, Debug)]
struct EmbeddingArgs {
    /// System such as rect:2,3, sym:3, asym:5, spin:4, bicayley or albert.
    #[arg(long)]
    system: Option<String>,
    /// Embedding description file; overrides --system.
    #[arg(long)]
    spec_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Family::Mok)]
    embedding: Family,
    /// Parameter of the F_t family.
    #[arg(long, default_value_t = 0.5)]
    t: f64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the extension of --out (json or csv), else text.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        let by_extension = || {
            let ext = self.out.as_ref()?.extension()?.to_str()?.to_ascii_lowercase();
            match ext.as_str() {
                "json" => Some(Format::Json),
                "csv" => Some(Format::Csv),
                _ => None,
            }
        };
        self.format.or_else(by_extension).unwrap_or(Format::Text)
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    target: EmbeddingArgs,
    #[arg(long, default_value = "all", value_parser = clap::value_parser!(Suite))]
    suite: Suite,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Sampling radius as a fraction of the domain.
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    #[command(flatten)]
    target: EmbeddingArgs,
    /// Comma-separated coordinates, each real or complex (`0.1+0.2i`).
    #[arg(long = "point", allow_hyphen_values = true)]
    points: Vec<String>,
    /// JSON file with a list of points, each a list of [re, im] pairs.
    #[arg(long)]
    points_file: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    target: EmbeddingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[command(flatten)]
    target: EmbeddingArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failures that end a command: bad input (exit 2) or a broken run (exit 1).
#[derive(Debug)]
enum Failure {
    Config(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_)
            | Error::InvalidArgument(_)
            | Error::NotApplicable(_)
            | Error::MalformedSpec(_)
            | Error::DimensionMismatch { .. }
            | Error::OutsideBall { .. }
            | Error::NotATripotent { .. }
            | Error::NotTubeType(_)
            | Error::NotAutomorphism { .. }
            | Error::ConstructionValidationFailed(_) => Failure::Config(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<bool, Failure>;

const LISTED: [&str; 6] = ["rect:2,3", "sym:3", "asym:5", "spin:4", "bicayley", "albert"];

fn list_systems() -> CmdResult {
    for s in LISTED {
        let sys = TripleSystem::parse(s)?;
        let inv = sys.invariants();
        println!("{s} dim={} r={} a={} b={} p={}", inv.dim, inv.rank, inv.a, inv.b, inv.genus);
    }
    Ok(true)
}

fn load_embedding(args: &EmbeddingArgs) -> std::result::Result<EmbeddingSpec, Failure> {
    if let Some(path) = &args.spec_file {
        let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        return Ok(EmbeddingSpec::from_json(&text)?);
    }
    let Some(system) = &args.system else {
        return Err(Failure::Config("give --system or --spec-file".into()));
    };
    let sys = Arc::new(TripleSystem::parse(system)?);
    Ok(match args.embedding {
        Family::Mok => EmbeddingSpec::Mok(MokSpec::canonical(sys)?),
        Family::Lie => EmbeddingSpec::LieIrrational(LieSpec::canonical(sys, Complex64::new(1.0, 0.0))?),
        Family::Ft => EmbeddingSpec::FtFamily(FtSpec::new(sys, args.t)?),
    })
}

fn emit(output: &OutputArgs, json: impl FnOnce() -> String, csv: impl FnOnce() -> String, text: &str) -> std::result::Result<(), Failure> {
    let body = match output.format() {
        Format::Json => json(),
        Format::Csv => csv(),
        Format::Text => text.to_string(),
    };
    match &output.out {
        Some(path) => {
            write_file(path, &body)?;
            print!("{text}");
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn write_file(path: &Path, body: &str) -> std::result::Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let cfg = SampleConfig::new(args.seed, args.samples, args.radius, args.tol)?;
    let spec = load_embedding(&args.target)?;
    let jobs = suites::plan(args.suite, &spec, cfg)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    let mut errors = Vec::new();
    for (name, outcome) in suites::run(jobs) {
        match outcome {
            Ok(r) => reports.extend(r),
            Err(e) => errors.push((name, e)),
        }
    }
    let mut text: String = reports.iter().map(|r| r.text_line() + "\n").collect();
    for (name, e) in &errors {
        text.push_str(&format!("ERROR  {name}: {e}\n"));
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    text.push_str(&format!("{passed}/{} reports passed\n", reports.len()));
    emit(
        &args.output,
        || serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        || {
            let mut s = String::from(VerificationReport::csv_header());
            s.push('\n');
            for r in &reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        },
        &text,
    )?;
    if let Some((_, e)) = errors.into_iter().next() {
        return Err(e.into());
    }
    Ok(passed == reports.len())
}

fn parse_point(text: &str) -> std::result::Result<Element, Failure> {
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<Complex64>().map_err(|_| Failure::Config(format!("bad coordinate {s:?} in point {text:?}"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Element::from_vec(coords))
}

#[derive(Serialize)]
struct EmbeddedPoint {
    z: Vec<[f64; 2]>,
    image: Vec<[f64; 2]>,
    /// `|Delta(F(z), F(z)) - (1 - |z|^2)|`.
    kernel_residual: f64,
}

#[derive(Serialize)]
struct EmbedReport {
    system: String,
    embedding: &'static str,
    points: Vec<EmbeddedPoint>,
}

fn embed(args: &EmbedArgs) -> CmdResult {
    let spec = load_embedding(&args.target)?;
    let mut points: Vec<Element> = args.points.iter().map(|p| parse_point(p)).collect::<std::result::Result<_, _>>()?;
    if let Some(path) = &args.points_file {
        let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        let raw: Vec<Vec<[f64; 2]>> =
            serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        points.extend(raw.iter().map(|p| jtriple::embedding::io::vector_from_json(p)));
    }
    if points.is_empty() {
        return Err(Failure::Config("no points given; use --point or --points-file".into()));
    }
    let sys = spec.system();
    let mut out = Vec::with_capacity(points.len());
    for z in &points {
        let fz = spec.evaluate(z)?;
        let expected = 1.0 - z.norm_squared();
        let kernel_residual = (sys.quasi_det(&fz, &fz) - expected).norm();
        out.push(EmbeddedPoint { z: vector_to_json(z), image: vector_to_json(&fz), kernel_residual });
    }
    let report = EmbedReport { system: sys.kind().to_string(), embedding: spec.variant_name(), points: out };
    let fmt_c = |v: &[[f64; 2]]| v.iter().map(|[re, im]| format!("{re}{im:+}i")).collect::<Vec<_>>().join(" ");
    let text: String = report
        .points
        .iter()
        .map(|p| format!("F({}) = ({})  residual={:.3e}\n", fmt_c(&p.z), fmt_c(&p.image), p.kernel_residual))
        .collect();
    emit(
        &args.output,
        || serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        || {
            let mut s = String::from("index,z_norm,kernel_residual\n");
            for (i, (p, z)) in report.points.iter().zip(&points).enumerate() {
                s.push_str(&format!("{i},{:e},{:e}\n", z.norm(), p.kernel_residual));
            }
            s
        },
        &text,
    )?;
    Ok(true)
}

fn classify(args: &ClassifyArgs) -> CmdResult {
    let spec = load_embedding(&args.target)?;
    let c = classify_embedding(&spec)?;
    let text = format!("{c}\n");
    emit(
        &args.output,
        || serde_json::to_string_pretty(&c).expect("classification serializes") + "\n",
        || {
            format!(
                "class,sff_min,tripotent_label,xi_rank\n{:?},{:e},{},{}\n",
                c.class,
                c.sff_min,
                c.tripotent_label.clone().unwrap_or_default(),
                c.xi_rank.map(|r| r.to_string()).unwrap_or_default()
            )
        },
        &text,
    )?;
    Ok(true)
}

fn spec(args: &SpecArgs) -> CmdResult {
    let spec = load_embedding(&args.target)?;
    let body = spec.to_json() + "\n";
    match &args.out {
        Some(path) => write_file(path, &body)?,
        None => print!("{body}"),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::ListSystems => list_systems(),
        Command::Verify(a) => verify(a),
        Command::Embed(a) => embed(a),
        Command::Classify(a) => classify(a),
        Command::Spec(a) => spec(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
