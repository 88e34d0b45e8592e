//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails or is infeasible, 2 for unusable input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::axioms::{is_strict_sqrt, strict_sqrt_c};
use crate::campaign::{self, CampaignConfig, Format};
use crate::matcat::Morphism;
use crate::projspan::{self, SpanReport};
use crate::random;
use crate::report::{Report, SuiteReport};
use crate::scalar::{FieldTag, Tolerance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "daggerlab",
    version,
    about = "Checks for matrix dagger categories over R, C and H"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the (H1)-(H5) suites for one field
    VerifyAxioms(CampaignArgs),
    /// Run the reconstruction checks
    Reconstruct(CampaignArgs),
    /// Strict square root of a complex unitary read as morphism JSON
    Sqrt(SqrtArgs),
    /// Real span rank of words in projections
    Span(SpanArgs),
    /// Run the whole property catalogue
    Lemmas(CampaignArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct CampaignArgs {
    /// R, C or H
    #[arg(long)]
    pub field: Option<FieldTag>,
    /// Comma-separated object dimensions
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[arg(long, env = "DAGGERLAB_SEED")]
    pub seed: Option<u64>,
    /// Trials per check, overriding the defaults
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub tol_abs: Option<f64>,
    #[arg(long)]
    pub tol_rel: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// JSON campaign configuration; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpanArgs {
    #[command(flatten)]
    pub campaign: CampaignArgs,
    #[arg(long, default_value_t = projspan::DEFAULT_MAX_LEN)]
    pub max_len: usize,
    /// Random rank-one generators added to the coordinate projections
    #[arg(long, default_value_t = projspan::DEFAULT_GENERATORS)]
    pub generators: usize,
}

#[derive(Debug, Args)]
pub struct SqrtArgs {
    /// Morphism JSON file; stdin when absent or "-"
    pub input: Option<PathBuf>,
    /// Random projections used by the strictness check
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, env = "DAGGERLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tol_abs: Option<f64>,
    #[arg(long)]
    pub tol_rel: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

/// Input problems, reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

fn tolerance(base: Tolerance, abs: Option<f64>, rel: Option<f64>) -> Result<Tolerance, InputError> {
    let t = Tolerance::new(abs.unwrap_or(base.abs_eps), rel.unwrap_or(base.rel_eps));
    if !(t.abs_eps >= 0.0 && t.rel_eps >= 0.0) {
        return Err(InputError("tolerances must be non-negative".into()));
    }
    Ok(t)
}

/// Merges a configuration file with command-line flags.
pub fn resolve_config(args: &CampaignArgs) -> Result<CampaignConfig, InputError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str::<CampaignConfig>(&text)
                .map_err(|e| InputError(format!("malformed config {}: {e}", path.display())))?
        }
        None => CampaignConfig::default(),
    };
    if let Some(f) = args.field {
        cfg.field = f;
    }
    if let Some(d) = &args.dims {
        cfg.dims = d.clone();
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if args.trials.is_some() {
        cfg.trials = args.trials;
    }
    cfg.tolerance = tolerance(cfg.tolerance, args.tol_abs, args.tol_rel)?;
    if args.out.is_some() {
        cfg.output = args.out.clone();
    }
    if let Some(f) = args.format {
        cfg.format = f.into();
    }
    Ok(cfg)
}

fn open_sink<'a>(
    path: Option<&Path>,
    stdout: &'a mut dyn Write,
) -> io::Result<Box<dyn Write + 'a>> {
    match path {
        Some(p) => Ok(Box::new(fs::File::create(p)?)),
        None => Ok(Box::new(stdout)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

type SuiteFn = fn(&CampaignConfig, &mut dyn FnMut(&Report)) -> SuiteReport;

fn run_suite(cfg: &CampaignConfig, stdout: &mut dyn Write, suite: SuiteFn) -> io::Result<i32> {
    let mut sink = open_sink(cfg.output.as_deref(), stdout)?;
    let mut io_err = None;
    let report = match cfg.format {
        Format::Text => suite(cfg, &mut |r| {
            if let Err(e) = writeln!(sink, "{}", r.line()).and_then(|_| sink.flush()) {
                io_err.get_or_insert(e);
            }
        }),
        Format::Json => suite(cfg, &mut |_| {}),
    };
    if let Some(e) = io_err {
        return Err(e);
    }
    match cfg.format {
        Format::Text => {
            let failed = report.reports.iter().filter(|r| !r.passed()).count();
            writeln!(
                sink,
                "{}: {} checks, {} not passing",
                report.command,
                report.reports.len(),
                failed
            )?;
        }
        Format::Json => sink.write_all(to_json(&report).as_bytes())?,
    }
    sink.flush()?;
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

#[derive(Serialize)]
struct SpanSuite<'a> {
    command: &'static str,
    field: FieldTag,
    seed: u64,
    max_len: usize,
    generators: usize,
    reports: &'a [SpanReport],
}

fn run_span(args: &SpanArgs, stdout: &mut dyn Write) -> Result<io::Result<i32>, InputError> {
    let cfg = resolve_config(&args.campaign)?;
    if cfg.dims.contains(&0) {
        return Err(InputError("span dimensions must be at least 1".into()));
    }
    let mut lines = Vec::new();
    let reports = campaign::span(&cfg, args.max_len, args.generators, &mut |r| {
        lines.push(r.line())
    })
    .map_err(|e| InputError(e.to_string()))?;
    Ok((|| {
        let mut sink = open_sink(cfg.output.as_deref(), stdout)?;
        match cfg.format {
            Format::Text => {
                for l in &lines {
                    writeln!(sink, "{l}")?;
                }
            }
            Format::Json => {
                let suite = SpanSuite {
                    command: "span",
                    field: cfg.field,
                    seed: cfg.seed,
                    max_len: args.max_len,
                    generators: args.generators,
                    reports: &reports,
                };
                sink.write_all(to_json(&suite).as_bytes())?;
            }
        }
        sink.flush()?;
        Ok(if reports.iter().all(SpanReport::passed) {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        })
    })())
}

fn read_morphism(input: Option<&Path>, stdin: &mut dyn Read) -> Result<Morphism, InputError> {
    let (text, source) = match input {
        Some(p) if p != Path::new("-") => (
            fs::read_to_string(p)
                .map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))?,
            p.display().to_string(),
        ),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| InputError(format!("cannot read stdin: {e}")))?;
            (s, "<stdin>".to_string())
        }
    };
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("malformed morphism JSON in {source}: {e}")))
}

fn run_sqrt(
    args: &SqrtArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<io::Result<i32>, InputError> {
    let tol = tolerance(Tolerance::default(), args.tol_abs, args.tol_rel)?;
    let u = read_morphism(args.input.as_deref(), stdin)?;
    let cert = strict_sqrt_c(&u, &tol).map_err(|e| InputError(e.to_string()))?;
    let mut rng = random::rng(args.seed, "cli-sqrt", 0);
    let strict = is_strict_sqrt(&u, &cert.root, args.samples, &mut rng, &tol)
        .map_err(|e| InputError(e.to_string()))?;
    Ok((|| {
        let mut sink = open_sink(args.out.as_deref(), stdout)?;
        sink.write_all(to_json(&cert).as_bytes())?;
        sink.flush()?;
        Ok(if strict { EXIT_OK } else { EXIT_VIOLATION })
    })())
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::VerifyAxioms(a) => {
            resolve_config(a).map(|c| run_suite(&c, stdout, campaign::verify_axioms))
        }
        Command::Reconstruct(a) => {
            resolve_config(a).map(|c| run_suite(&c, stdout, campaign::reconstruct))
        }
        Command::Lemmas(a) => resolve_config(a).map(|c| run_suite(&c, stdout, campaign::lemmas)),
        Command::Span(a) => run_span(a, stdout),
        Command::Sqrt(a) => run_sqrt(a, stdin, stdout),
    };
    match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
