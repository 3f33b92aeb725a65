use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use quadlab_core::connectsum::{
    build_k_diamond, build_k_star, default_eta, subdivide_for_trefoil_sum, ConnectSumError, ConstructOptions,
};
use quadlab_core::exact::rational::{parse_rational, to_decimal_string};
use quadlab_core::knot::{builtin_knot, load_knot, random_generic_knot, save_knot, KnotError, KnotFile, PolygonalKnot};
use quadlab_core::pipeline::{analyze, AnalyzeOptions, ErrorKind, PipelineReport};
use quadlab_core::quadrisecant::{find_all_quadrisecants, quadrisecants_csv, QuadrisecantError};

const EXIT_INPUT: u8 = 2;
const EXIT_DEGENERACY: u8 = 3;
const EXIT_CONSTRUCTION: u8 = 4;

/// Quadrisecants of polygonal knots and their approximations.
#[derive(Parser)]
#[command(name = "quadlab", version, about)]
struct Cli {
    /// Worker threads (default: all logical cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true, env = "QUADLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Knot file (JSON).
    input: PathBuf,
    /// Skip the knot classification stage.
    #[arg(long)]
    skip_classify: bool,
    /// Largest diagram the state sum will expand.
    #[arg(long, default_value_t = quadlab_core::classify::DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    /// Leave per-stage timings out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin knot (k6, k14, k0, k6_triangle_stage, k14_remark) or a random generic one.
    Gen {
        /// Builtin name, or `random`.
        name: String,
        /// Edge count for `random`.
        #[arg(long, default_value_t = 6)]
        edges: usize,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the full pipeline and print the report.
    Analyze {
        #[command(flatten)]
        args: AnalyzeArgs,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build K*, K-diamond or the subdivided K-diamond from a knot file.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        input: PathBuf,
        /// Initial split distance, a rational such as 1/64.
        #[arg(long)]
        eta: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
        /// Transcript path (default: output with `.transcript.json`).
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long, default_value_t = quadlab_core::classify::DEFAULT_MAX_CROSSINGS)]
        max_crossings: usize,
    },
    /// Convert a knot or report file to OBJ, CSV or JSON.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        /// Significant digits for decimal output.
        #[arg(long, default_value_t = 15)]
        precision: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the pipeline and print a one-line verdict.
    VerifyConjecture {
        #[command(flatten)]
        args: AnalyzeArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    KStar,
    KDiamond,
    SubdividedDiamond,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Csv,
    Json,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_INPUT,
            error: e.into(),
        }
    }
}

fn fail(code: u8, error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code,
        error: error.into(),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_knot(path: &Path) -> Result<PolygonalKnot, Failure> {
    Ok(load_knot(path)?)
}

fn run_analysis(args: &AnalyzeArgs, seed: u64) -> Result<PipelineReport, Failure> {
    let knot = read_knot(&args.input)?;
    let opts = AnalyzeOptions {
        seed,
        max_crossings: args.max_crossings,
        skip_classify: args.skip_classify,
        timing: !args.no_timing,
    };
    Ok(analyze(&knot, &opts))
}

fn report_code(r: &PipelineReport) -> u8 {
    match r.error.as_ref().map(|e| e.kind) {
        None => 0,
        Some(ErrorKind::Input) => EXIT_INPUT,
        Some(ErrorKind::Degeneracy) => EXIT_DEGENERACY,
    }
}

fn construction_code(e: &ConnectSumError) -> u8 {
    match e {
        ConnectSumError::NotEmbedded(_)
        | ConnectSumError::NonPositiveParameter
        | ConnectSumError::TooFewEdges { .. }
        | ConnectSumError::Knot(_) => EXIT_INPUT,
        ConnectSumError::Quadrisecant(QuadrisecantError::TooFewEdges(_)) => EXIT_INPUT,
        ConnectSumError::Quadrisecant(_) => EXIT_DEGENERACY,
        _ => EXIT_CONSTRUCTION,
    }
}

fn transcript_path(output: &Path, explicit: Option<&PathBuf>) -> PathBuf {
    explicit.cloned().unwrap_or_else(|| {
        let mut p = output.as_os_str().to_owned();
        p.push(".transcript.json");
        PathBuf::from(p)
    })
}

fn construct(
    kind: Kind,
    input: &Path,
    eta: Option<&str>,
    output: &Path,
    transcript: Option<&PathBuf>,
    opts: &ConstructOptions,
) -> Result<(), Failure> {
    let knot = read_knot(input)?;
    let eta = match eta {
        Some(s) => parse_rational(s).with_context(|| format!("bad --eta {s:?}"))?,
        None => default_eta(),
    };
    let tpath = transcript_path(output, transcript);
    let mut record = serde_json::Map::new();
    let guest = match kind {
        Kind::SubdividedDiamond => {
            let (k, report) = subdivide_for_trefoil_sum(&knot, opts.seed).map_err(|e| {
                let code = construction_code(&e);
                fail(code, e)
            })?;
            record.insert("subdivision".into(), serde_json::to_value(&report)?);
            k
        }
        _ => knot,
    };
    let built = match kind {
        Kind::KStar => build_k_star(&guest, &eta, opts),
        Kind::KDiamond | Kind::SubdividedDiamond => build_k_diamond(&guest, &eta, opts),
    };
    match built {
        Ok(c) => {
            record.insert("construction".into(), serde_json::to_value(&c.transcript)?);
            save_knot(&c.knot, output)?;
            fs::write(&tpath, serde_json::to_string_pretty(&record)? + "\n")?;
            eprintln!("{} edges written to {}", c.knot.len(), output.display());
            Ok(())
        }
        Err(e) => {
            if let ConnectSumError::ShrinkLoopExhausted {
                transcript: Some(t), ..
            } = &e
            {
                record.insert("construction".into(), serde_json::to_value(t.as_ref())?);
                fs::write(&tpath, serde_json::to_string_pretty(&record)? + "\n")?;
            }
            let code = construction_code(&e);
            Err(fail(code, e))
        }
    }
}

/// A knot file, or the input knot of a report file.
fn knot_from_any(text: &str) -> Result<(PolygonalKnot, bool), Failure> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(KnotError::Json)?;
    if let Some(input) = value.get("input") {
        let file: KnotFile = serde_json::from_value(input.clone()).map_err(KnotError::Json)?;
        return Ok((file.to_knot()?, true));
    }
    Ok((PolygonalKnot::from_json(text)?, false))
}

fn export(input: &Path, format: Format, precision: usize, output: Option<&Path>) -> Result<(), Failure> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let (knot, is_report) = knot_from_any(&text)?;
    let dec = |r| to_decimal_string(r, precision);
    let out = match format {
        Format::Json => {
            let value: serde_json::Value = serde_json::from_str(&text)?;
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Obj => {
            let mut s = format!("# {}\n", knot.name());
            for v in knot.vertices() {
                s += &format!("v {} {} {}\n", dec(&v.x), dec(&v.y), dec(&v.z));
            }
            s += "l";
            for i in 1..=knot.len() {
                s += &format!(" {i}");
            }
            s + " 1\n"
        }
        Format::Csv if is_report => {
            let quads = find_all_quadrisecants(&knot).map_err(|e| fail(EXIT_DEGENERACY, e))?;
            quadrisecants_csv(&quads, precision)
        }
        Format::Csv => {
            let mut s = String::from("vertex,x,y,z\n");
            for (i, v) in knot.vertices().iter().enumerate() {
                s += &format!("{},{},{},{}\n", i + 1, dec(&v.x), dec(&v.y), dec(&v.z));
            }
            s
        }
    };
    write_out(output, &out)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Gen { name, edges, output } => {
            let knot = if name == "random" {
                if edges < 4 {
                    return Err(fail(EXIT_INPUT, anyhow::anyhow!("random knots need at least 4 edges")));
                }
                random_generic_knot(edges, cli.seed)
            } else {
                builtin_knot(&name)?
            };
            match output {
                Some(p) => save_knot(&knot, p)?,
                None => println!("{}", knot.to_json()),
            }
            Ok(0)
        }
        Command::Analyze { args, json, output } => {
            let report = run_analysis(&args, cli.seed)?;
            let text = serde_json::to_string_pretty(&report)? + "\n";
            if let Some(p) = output {
                fs::write(&p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
            if json {
                print!("{text}");
            } else {
                print!("{}", report.human());
            }
            Ok(report_code(&report))
        }
        Command::VerifyConjecture { args } => {
            let report = run_analysis(&args, cli.seed)?;
            println!("{}", report.verdict);
            if let Some(e) = &report.error {
                eprintln!("error at {:?}: {}", e.stage, e.message);
            }
            Ok(report_code(&report))
        }
        Command::Construct {
            kind,
            input,
            eta,
            output,
            transcript,
            max_crossings,
        } => {
            let opts = ConstructOptions {
                seed: cli.seed,
                max_crossings,
            };
            construct(kind, &input, eta.as_deref(), &output, transcript.as_ref(), &opts)?;
            Ok(0)
        }
        Command::Export {
            input,
            format,
            precision,
            output,
        } => {
            export(&input, format, precision, output.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            // Library errors already spell out their sources.
            let mut msg = String::new();
            for cause in f.error.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    if !msg.is_empty() {
                        msg += ": ";
                    }
                    msg += &cause;
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(f.code)
        }
    }
}
