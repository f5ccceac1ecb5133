use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use multistruct::batch::{inputs_from_dir, inputs_from_specs, run_batch, write_outputs, BatchInput, BatchOptions};
use multistruct::corpus::{corpus_file_name, generate_corpus, CorpusKind, GenSpec};
use multistruct::problem::{parse_problem, Mode};
use multistruct::report::run_analysis;
use multistruct::scalar::FieldSpec;
use multistruct::selftest::run_selftest;
use multistruct::Error;

const SEED_VAR: &str = "MULTISTRUCT_SEED";

/// Filtrations and Gorenstein duality for local Artinian algebras.
#[derive(Parser, Debug)]
#[command(name = "multistruct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one problem file.
    Analyze(AnalyzeArgs),
    /// Generate a seeded corpus of problem files.
    Gen(GenArgs),
    /// Analyze a directory of problem files or a generated corpus.
    Batch(BatchArgs),
    /// Run the built-in invariant suite.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Print the JSON report.
    #[arg(long)]
    json: bool,
    /// Include the property battery in text output.
    #[arg(long)]
    properties: bool,
    /// Override the field of the file (`Q` or a prime).
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Override the mode of the file.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Leave out the timing field.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// ci, monomial or random.
    kind: CorpusKind,
    /// Number of variables, `n` or `a-b`.
    #[arg(long, default_value = "1-3")]
    vars: String,
    /// Degree range, `d` or `a-b`.
    #[arg(long)]
    deg: Option<String>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 150)]
    max_dim: usize,
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Write one file per problem instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// A directory of `*.problem` files, or corpus specs such as
    /// `ci:count=200,seed=1+monomial:count=200`.
    source: String,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Print the full summary, reports included, as JSON.
    #[arg(long)]
    json: bool,
    /// Write per-input reports and summary.json here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Analyze every input over this field.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Seed for corpus specs without `seed=`.
    #[arg(long)]
    seed: Option<u64>,
    /// Keep timing fields in reports.
    #[arg(long)]
    timing: bool,
    /// Do not stop at the first falsification.
    #[arg(long)]
    keep_going: bool,
    /// Where a falsification reproducer goes; defaults to --out or `.`.
    #[arg(long)]
    reproducer_dir: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|_| format!("expected intrinsic or embedded, found `{s}`"))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once('-').unwrap_or((s, s));
    match (a.trim().parse(), b.trim().parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => Err(format!("expected `n` or `a-b`, found `{s}`")),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_VAR} is not an integer: `{v}`")),
        Err(_) => Ok(0),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}\n");
    eprintln!("{}", Cli::command().render_usage());
    ExitCode::from(1)
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn analyze(args: AnalyzeArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => return fail(&Error::Io(format!("{}: {e}", args.file.display()))),
    };
    let mut problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    if let Some(f) = args.field {
        problem.field = f;
    }
    if let Some(m) = args.mode {
        problem.mode = m;
    }
    let report = match run_analysis(&problem) {
        Ok(r) if args.no_timing => r.without_timing(),
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text(args.properties));
    }
    if report.has_falsification() {
        eprintln!("falsification: {}", report.falsifications.join("; "));
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}

fn gen(args: GenArgs) -> ExitCode {
    let seed = match resolve_seed(args.seed) {
        Ok(s) => s,
        Err(m) => return usage_error(&m),
    };
    let mut spec = GenSpec::new(args.kind, args.count, seed);
    match parse_range(&args.vars) {
        Ok((a, b)) => spec = spec.with_vars(a as usize, b as usize),
        Err(m) => return usage_error(&m),
    }
    if let Some(d) = &args.deg {
        match parse_range(d) {
            Ok((a, b)) if b <= u64::from(u32::MAX) => spec = spec.with_degrees(a as u32, b as u32),
            Ok(_) => return usage_error("degree too large"),
            Err(m) => return usage_error(&m),
        }
    }
    spec.max_dim = args.max_dim;
    if let Some(f) = args.field {
        spec.field = f;
    }
    let problems = match generate_corpus(&spec) {
        Ok(p) => p,
        Err(e @ Error::Parse { .. }) => return usage_error(&e.to_string()),
        Err(e) => return fail(&e),
    };
    match &args.out {
        Some(dir) => {
            let written = fs::create_dir_all(dir).and_then(|_| {
                problems
                    .iter()
                    .enumerate()
                    .try_for_each(|(i, p)| fs::write(dir.join(corpus_file_name(spec.kind, i)), p.to_string()))
            });
            if let Err(e) = written {
                return fail(&Error::from(e));
            }
            eprintln!("wrote {} problems to {}", problems.len(), dir.display());
        }
        None => {
            for (i, p) in problems.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("# {}", corpus_file_name(spec.kind, i));
                print!("{p}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn batch_inputs(source: &str, seed: u64) -> Result<Vec<BatchInput>, ExitCode> {
    let path = Path::new(source);
    if path.is_dir() {
        let inputs = inputs_from_dir(path).map_err(|e| fail(&e))?;
        if inputs.is_empty() {
            return Err(usage_error(&format!("no *.problem files in {source}")));
        }
        return Ok(inputs);
    }
    if path.is_file() {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let problem = fs::read_to_string(path).map_err(Error::from).and_then(|t| parse_problem(&t));
        return Ok(vec![BatchInput { name, problem }]);
    }
    match inputs_from_specs(source, seed) {
        Ok(inputs) => Ok(inputs),
        Err(e @ Error::GenerationExhausted(_)) => Err(fail(&e)),
        Err(e) => Err(usage_error(&format!("`{source}` is neither a directory nor a corpus spec ({e})"))),
    }
}

fn batch(args: BatchArgs) -> ExitCode {
    let seed = match resolve_seed(args.seed) {
        Ok(s) => s,
        Err(m) => return usage_error(&m),
    };
    let inputs = match batch_inputs(&args.source, seed) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let opts = BatchOptions {
        jobs: args.jobs,
        field: args.field,
        keep_timing: args.timing,
        keep_going: args.keep_going,
        reproducer_dir: Some(
            args.reproducer_dir
                .or_else(|| args.out.clone())
                .unwrap_or_else(|| PathBuf::from(".")),
        ),
    };
    let summary = match run_batch(&inputs, &opts) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    if let Some(dir) = &args.out {
        if let Err(e) = write_outputs(&summary, dir) {
            return fail(&e);
        }
    }
    if args.json {
        println!("{}", summary.to_json());
    } else {
        print!("{}", summary.render_text());
    }
    ExitCode::from(summary.exit_code as u8)
}

fn selftest(seed: Option<u64>) -> ExitCode {
    let seed = match resolve_seed(seed) {
        Ok(s) => s,
        Err(m) => return usage_error(&m),
    };
    let checks = run_selftest(seed);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if checks.iter().all(|c| c.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Gen(g) => gen(g),
        Command::Batch(b) => batch(b),
        Command::Selftest { seed } => selftest(seed),
    }
}
