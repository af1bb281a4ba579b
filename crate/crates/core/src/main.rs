use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand};

use afsolve::bench::{self, BenchInstance, GeneratorSpec, SuiteConfig};
use afsolve::encodings::{self, EncodingName, SolverCommand};
use afsolve::io::{self as afio, InputFormat, OutputStyle};
use afsolve::oracle;
use afsolve::{ArgumentationFramework, Budget, EndpointMode, Error, SemanticsKind};

/// Exit codes.
mod code {
    pub const MISMATCH: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const IO: u8 = 5;
    pub const CAP: u8 = 6;
    pub const UNKNOWN_ARGUMENT: u8 = 7;
    pub const SOLVER: u8 = 8;
}

#[derive(Parser)]
#[command(name = "afsolve", version, about = "Abstract argumentation solver")]
#[command(
    after_help = "Exit codes: 0 success, 1 check mismatch, 2 usage, 3 parse error, \
4 budget exhausted or timeout, 5 I/O error, 6 brute-force cap exceeded, 7 unknown argument, \
8 external solver failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all extensions.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        sem: SemanticsKind,
        #[command(flatten)]
        limits: Limits,
        /// Print all extensions on one line as a nested list.
        #[arg(long)]
        single: bool,
    },
    /// Decide credulous or skeptical acceptance of one argument.
    #[command(group(ArgGroup::new("mode").required(true).args(["cred", "skep"])))]
    Query {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        sem: SemanticsKind,
        #[arg(long, value_name = "ARG")]
        cred: Option<String>,
        #[arg(long, value_name = "ARG")]
        skep: Option<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print an ASP encoding and/or the facts of an instance.
    #[command(group(ArgGroup::new("what").required(true).multiple(true).args(["encoding", "facts"])))]
    Emit {
        #[arg(long, value_name = "NAME")]
        encoding: Option<EncodingName>,
        /// Print the instance as arg/att facts.
        #[arg(long)]
        facts: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compare the search engine with brute force, and with an external ASP
    /// solver when one is configured through AFSOLVE_SOLVER_CMD.
    #[command(group(ArgGroup::new("kinds").required(true).args(["all", "sem"])))]
    #[command(group(ArgGroup::new("source").args(["path", "gen"])))]
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "SPEC")]
        gen: Option<GeneratorSpec>,
        /// Number of generated instances, with consecutive seeds.
        #[arg(long, default_value_t = 1, requires = "gen")]
        count: u64,
        #[arg(long)]
        all: bool,
        #[arg(long, value_delimiter = ',')]
        sem: Vec<SemanticsKind>,
        /// Largest framework the brute-force oracle accepts.
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = Budget::DEFAULT_NODES)]
        budget: u64,
    },
    /// Time enumeration over generated and file instances and write a CSV.
    Bench {
        /// Instance files (apx or tgf, per --format).
        paths: Vec<PathBuf>,
        #[arg(long, value_name = "SPEC")]
        gen: Vec<GeneratorSpec>,
        /// Instances per generator spec, with consecutive seeds.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Semantics to measure; all six when omitted.
        #[arg(long, value_delimiter = ',')]
        sem: Vec<SemanticsKind>,
        #[arg(long, default_value = "apx")]
        format: InputFormat,
        #[arg(long, value_name = "MS", default_value_t = 60_000)]
        timeout: u64,
        #[arg(long, default_value_t = Budget::DEFAULT_NODES)]
        budget: u64,
        #[arg(long, value_name = "K", default_value_t = 1)]
        workers: usize,
        /// CSV destination; without it the CSV goes to stdout and the
        /// summary to stderr.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Instance file; standard input when omitted or `-`.
    #[arg(value_name = "INPUT")]
    path: Option<PathBuf>,
    #[arg(long, default_value = "apx")]
    format: InputFormat,
    /// Reject attacks on undeclared arguments (default).
    #[arg(long, conflicts_with = "lenient")]
    strict: bool,
    /// Declare arguments that only occur in attacks, with a warning.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct Limits {
    /// Search node budget.
    #[arg(long, default_value_t = Budget::DEFAULT_NODES)]
    budget: u64,
    /// Wall-clock limit in milliseconds.
    #[arg(long, value_name = "MS")]
    timeout: Option<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax { .. } | Error::DuplicateArgument(_) | Error::InvalidConstant(_) => {
                code::PARSE
            }
            Error::BudgetExceeded(_) | Error::Cancelled => code::BUDGET,
            Error::File { .. } | Error::Io(_) | Error::Csv(_) => code::IO,
            Error::CapExceeded { .. } => code::CAP,
            Error::UnknownArgument(_) => code::UNKNOWN_ARGUMENT,
            Error::Solver(_) => code::SOLVER,
            _ => code::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_source(path: Option<&Path>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
        Some(p) if p == Path::new("-") => {
            io::stdin().read_to_string(&mut text)?;
        }
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|source| Error::File {
                path: p.to_owned(),
                source,
            })?;
        }
    }
    Ok(text)
}

fn parse_text(
    text: &str,
    format: InputFormat,
    mode: EndpointMode,
) -> CliResult<ArgumentationFramework> {
    let (af, diag) = match format {
        InputFormat::Apx => afio::parse_apx(text, mode)?,
        InputFormat::Tgf => afio::parse_tgf(text)?,
    };
    eprint!("{}", afio::format_diagnostics(&diag));
    Ok(af)
}

fn load(input: &InputArgs) -> CliResult<ArgumentationFramework> {
    let mode = if input.lenient {
        EndpointMode::Lenient
    } else {
        EndpointMode::Strict
    };
    let text = read_source(input.path.as_deref())?;
    parse_text(&text, input.format, mode).map_err(|mut f| {
        if let Some(p) = &input.path {
            f.message = format!("{}: {}", p.display(), f.message);
        }
        f
    })
}

/// Runs `job` on its own thread, cancelling it after `timeout_ms`.
fn with_timeout<T: Send + 'static>(
    limits: &Limits,
    job: impl FnOnce(&mut Budget) -> afsolve::Result<T> + Send + 'static,
) -> CliResult<T> {
    let cancel = Arc::new(AtomicBool::new(false));
    let mut budget = Budget::new(limits.budget).with_cancel(Arc::clone(&cancel));
    let Some(ms) = limits.timeout else {
        return Ok(job(&mut budget)?);
    };
    let (tx, rx) = mpsc::channel();
    let worker = thread::spawn(move || {
        let _ = tx.send(job(&mut budget));
    });
    let outcome = rx.recv_timeout(Duration::from_millis(ms));
    if outcome.is_err() {
        cancel.store(true, Ordering::Relaxed);
    }
    let _ = worker.join();
    match outcome {
        Ok(result) => Ok(result?),
        Err(_) => Err(Failure {
            code: code::BUDGET,
            message: format!("timed out after {ms} ms"),
        }),
    }
}

fn solve(
    input: &InputArgs,
    sem: SemanticsKind,
    limits: &Limits,
    single: bool,
) -> CliResult<String> {
    let af = Arc::new(load(input)?);
    let exts = {
        let af = Arc::clone(&af);
        with_timeout(limits, move |b| afsolve::enumerate(&af, sem, b))?
    };
    let style = if single {
        OutputStyle::Single
    } else {
        OutputStyle::Lines
    };
    let mut out = afio::format_extensions(&af, &exts, style);
    if single {
        out.push('\n');
    }
    Ok(out)
}

fn query(
    input: &InputArgs,
    sem: SemanticsKind,
    cred: Option<&str>,
    skep: Option<&str>,
    limits: &Limits,
) -> CliResult<String> {
    let af = Arc::new(load(input)?);
    let (name, skeptical) = match (cred, skep) {
        (Some(n), None) => (n, false),
        (None, Some(n)) => (n, true),
        _ => unreachable!("clap enforces exactly one mode"),
    };
    let a = af.lookup(name)?;
    let accepted = with_timeout(limits, move |b| {
        if skeptical {
            afsolve::skeptical(&af, a, sem, b)
        } else {
            afsolve::credulous(&af, a, sem, b)
        }
    })?;
    Ok(if accepted { "YES\n" } else { "NO\n" }.to_owned())
}

fn emit(encoding: Option<EncodingName>, facts: bool, input: &InputArgs) -> CliResult<String> {
    let mut out = String::new();
    if let Some(name) = encoding {
        out.push_str(&encodings::emit_encoding(name));
    }
    if facts {
        out.push_str(&encodings::emit_apx_facts(&load(input)?)?);
    }
    Ok(out)
}

struct CheckTally {
    report: String,
    mismatches: usize,
}

fn check_one(
    id: &str,
    af: &ArgumentationFramework,
    kinds: &[SemanticsKind],
    cap: usize,
    budget: u64,
    solver: Option<&SolverCommand>,
    tally: &mut CheckTally,
) -> CliResult {
    let expected = oracle::brute_force_all(af, cap)?;
    for &kind in kinds {
        let native = afsolve::enumerate(af, kind, &mut Budget::new(budget))?;
        let oracle_ok = native == expected[kind as usize];
        let asp = match (solver, EncodingName::for_semantics(kind)) {
            (None, _) | (_, None) => "SKIPPED",
            (Some(cmd), Some(_)) => {
                if encodings::differential_check(af, kind, cmd, &mut Budget::new(budget))?
                    .is_match()
                {
                    "PASS"
                } else {
                    "FAIL"
                }
            }
        };
        if !oracle_ok || asp == "FAIL" {
            tally.mismatches += 1;
        }
        tally.report.push_str(&format!(
            "{id} {} oracle={} asp={asp}\n",
            kind.tag(),
            if oracle_ok { "PASS" } else { "FAIL" }
        ));
        if !oracle_ok {
            eprint!(
                "{id} {}: expected\n{}got\n{}",
                kind.tag(),
                afio::format_extensions(af, &expected[kind as usize], OutputStyle::Lines),
                afio::format_extensions(af, &native, OutputStyle::Lines)
            );
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn check(
    input: &InputArgs,
    gen: Option<GeneratorSpec>,
    count: u64,
    all: bool,
    sem: &[SemanticsKind],
    cap: usize,
    budget: u64,
) -> CliResult<(String, bool)> {
    let kinds: Vec<SemanticsKind> = if all {
        SemanticsKind::ALL.to_vec()
    } else {
        sem.to_vec()
    };
    let solver = SolverCommand::from_env();
    if solver.is_none() {
        eprintln!("no external ASP solver configured; differential check SKIPPED");
    }
    let mut tally = CheckTally {
        report: String::new(),
        mismatches: 0,
    };
    match gen {
        Some(spec) => {
            for i in 0..count {
                let spec = spec.with_seed(spec.seed.wrapping_add(i));
                let af = spec.generate();
                check_one(
                    &spec.instance_id(),
                    &af,
                    &kinds,
                    cap,
                    budget,
                    solver.as_ref(),
                    &mut tally,
                )?;
            }
        }
        None => {
            let af = load(input)?;
            let id = input
                .path
                .as_deref()
                .and_then(Path::file_stem)
                .map_or("stdin".to_owned(), |s| s.to_string_lossy().into_owned());
            check_one(&id, &af, &kinds, cap, budget, solver.as_ref(), &mut tally)?;
        }
    }
    let ok = tally.mismatches == 0;
    tally.report.push_str(if ok { "PASS\n" } else { "FAIL\n" });
    Ok((tally.report, ok))
}

#[allow(clippy::too_many_arguments)]
fn run_bench(
    paths: &[PathBuf],
    gens: &[GeneratorSpec],
    count: u64,
    sem: &[SemanticsKind],
    format: InputFormat,
    config: SuiteConfig,
    out: Option<&Path>,
) -> CliResult<String> {
    let mut instances = Vec::new();
    for spec in gens {
        for i in 0..count {
            instances.push(BenchInstance::generated(
                &spec.with_seed(spec.seed.wrapping_add(i)),
            ));
        }
    }
    for path in paths {
        let text = read_source(Some(path))?;
        let af = parse_text(&text, format, EndpointMode::Strict)?;
        let id = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        instances.push(BenchInstance::new(id, af));
    }
    if instances.is_empty() {
        return Err(Failure {
            code: code::USAGE,
            message: "no instances: give instance files or --gen".into(),
        });
    }
    let kinds = if sem.is_empty() {
        SemanticsKind::ALL.to_vec()
    } else {
        sem.to_vec()
    };
    match out {
        Some(path) => Ok(bench::run_suite(&instances, &kinds, &config, path)?.to_string()),
        None => {
            let records = bench::run_records(&instances, &kinds, &config);
            let mut csv = Vec::new();
            bench::write_csv(&records, &mut csv)?;
            eprint!("{}", bench::summarize(&records, config.timeout_ms));
            Ok(String::from_utf8(csv).expect("CSV output is UTF-8"))
        }
    }
}

fn run(cli: Cli) -> CliResult<(String, u8)> {
    let ok = |s: String| Ok((s, 0));
    match cli.command {
        Command::Solve {
            input,
            sem,
            limits,
            single,
        } => ok(solve(&input, sem, &limits, single)?),
        Command::Query {
            input,
            sem,
            cred,
            skep,
            limits,
        } => ok(query(
            &input,
            sem,
            cred.as_deref(),
            skep.as_deref(),
            &limits,
        )?),
        Command::Emit {
            encoding,
            facts,
            input,
        } => ok(emit(encoding, facts, &input)?),
        Command::Check {
            input,
            gen,
            count,
            all,
            sem,
            cap,
            budget,
        } => {
            let (report, passed) = check(&input, gen, count, all, &sem, cap, budget)?;
            Ok((report, if passed { 0 } else { code::MISMATCH }))
        }
        Command::Bench {
            paths,
            gen,
            count,
            sem,
            format,
            timeout,
            budget,
            workers,
            out,
        } => {
            let config = SuiteConfig {
                timeout_ms: timeout,
                workers,
                budget,
            };
            ok(run_bench(
                &paths,
                &gen,
                count,
                &sem,
                format,
                config,
                out.as_deref(),
            )?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { code::USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok((payload, status)) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(payload.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(code::IO);
            }
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("afsolve: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
