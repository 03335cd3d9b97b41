//! The `sepkit` command line.
//!
//! Exit codes: 0 success, 1 invalid input (parse or index validation
//! errors, or a verdict that cannot run), 2 usage or I/O errors.

pub mod fixtures;
pub mod report;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use fixtures::{camacho_constraint, generate_example, pad_vertex_sums, Example};
pub use report::{analyze, AnalysisReport};

use crate::dualgraph::{has_errors, induced_subcurve, parse_graph, to_json_string, validate_indices};
use crate::error::Error;
use crate::verdict::{subcurve_criterion, toma_prune, verdict};
use crate::{DualGraph, Rational};

#[derive(Parser, Debug)]
#[command(name = "sepkit", version, about = "Separatrix certificates for decorated resolution dual graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check index data; prints findings.
    Validate(Common),
    /// Full report: findings, matrix, representation, residues, certificate.
    Analyze(Common),
    /// Components of the pruned subcurve (or the induced subcurve for --keep).
    Prune(Common),
    /// Certificate only (the subcurve criterion when --keep is given).
    Verdict(Common),
    /// Write a generated input file.
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Input file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Comma-separated component ids selecting a subcurve.
    #[arg(long, value_delimiter = ',')]
    keep: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExampleName {
    Camacho,
    #[value(name = "p2_cycle", alias = "p2-cycle")]
    P2Cycle,
    Torsion4,
    #[value(name = "random_tree", alias = "random-tree")]
    RandomTree,
}

#[derive(Args, Debug)]
struct ExampleArgs {
    name: ExampleName,
    #[arg(long)]
    output: Option<PathBuf>,
    /// camacho: the three self-intersections.
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true, default_values_t = [-2i64, -2, -3])]
    self_intersections: Vec<i64>,
    /// camacho: omit the closed-world declaration.
    #[arg(long)]
    open_world: bool,
    /// p2_cycle: rational parameter, not 0 or -1.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    t: String,
    /// random_tree: seed (overridden by SEPKIT_SEED).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// random_tree: number of components.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// random_tree: probability that a crossing is a saddle-node.
    #[arg(long, default_value_t = 0.3)]
    saddle_node_probability: f64,
    /// random_tree: draw indices from Q(sqrt(d)).
    #[arg(long, allow_hyphen_values = true)]
    quadratic: Option<i64>,
}

/// Process environment the CLI reads, injectable for tests.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub seed: Option<String>,
}

impl Env {
    pub fn from_process() -> Self {
        Env {
            seed: std::env::var("SEPKIT_SEED").ok(),
        }
    }
}

pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with_io(
        args,
        &Env::from_process(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

pub fn run_cli_with_io<I, S>(
    args: I,
    env: &Env,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, env, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "sepkit: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, env: &Env, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate(c) => {
            let (g, _) = load(&c, stdin)?;
            let findings = validate_indices(&g);
            let body = match c.format {
                Format::Json => json(&findings),
                Format::Text => report::findings_text(&findings),
            };
            emit(&c.output, stdout, &body)?;
            Ok(if has_errors(&findings) { 1 } else { 0 })
        }
        Command::Analyze(c) => {
            let (g, bytes) = load(&c, stdin)?;
            let r = analyze(&g, &bytes);
            let body = match c.format {
                Format::Json => json(&r),
                Format::Text => report::report_text(&r),
            };
            emit(&c.output, stdout, &body)?;
            Ok(if has_errors(&r.findings) { 1 } else { 0 })
        }
        Command::Prune(c) => {
            let (g, _) = load(&c, stdin)?;
            let body = match &c.keep {
                Some(keep) => {
                    let sub = induced_subcurve(&g, keep).map_err(|e| invalid(e.to_string()))?;
                    to_json_string(&sub.graph)
                }
                None => {
                    let ids = toma_prune(&g).map_err(|e| invalid(e.to_string()))?;
                    match c.format {
                        Format::Json => json(&serde_json::json!({ "pruned_subcurve": ids })),
                        Format::Text => format!("{}\n", ids.join(", ")),
                    }
                }
            };
            emit(&c.output, stdout, &body)?;
            Ok(0)
        }
        Command::Verdict(c) => {
            let (g, _) = load(&c, stdin)?;
            let cert = match &c.keep {
                Some(keep) => subcurve_criterion(&g, keep),
                None => verdict(&g),
            }
            .map_err(|e| invalid(e.to_string()))?;
            let body = match c.format {
                Format::Json => json(&cert),
                Format::Text => report::certificate_text(&cert),
            };
            emit(&c.output, stdout, &body)?;
            Ok(0)
        }
        Command::Example(a) => {
            let example = example_from_args(&a, env)?;
            let g = generate_example(&example).map_err(|e| usage(e.to_string()))?;
            emit(&a.output, stdout, &to_json_string(&g))?;
            Ok(0)
        }
    }
}

fn example_from_args(a: &ExampleArgs, env: &Env) -> Result<Example, Failure> {
    Ok(match a.name {
        ExampleName::Camacho => {
            let e: [i64; 3] = a
                .self_intersections
                .clone()
                .try_into()
                .map_err(|_| usage("--self-intersections takes exactly three integers"))?;
            Example::Camacho {
                self_intersections: e,
                closed_world: !a.open_world,
            }
        }
        ExampleName::P2Cycle => Example::P2Cycle {
            t: a
                .t
                .parse::<Rational>()
                .map_err(|_| usage(format!("--t `{}` is not a rational p/q", a.t)))?,
        },
        ExampleName::Torsion4 => Example::Torsion4,
        ExampleName::RandomTree => {
            let seed = match &env.seed {
                Some(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("SEPKIT_SEED `{s}` is not an unsigned integer")))?,
                None => a.seed,
            };
            Example::RandomTree {
                seed,
                n: a.n,
                saddle_node_probability: a.saddle_node_probability,
                quadratic: a.quadratic,
            }
        }
    })
}

fn load(c: &Common, stdin: &mut dyn Read) -> Result<(DualGraph, Vec<u8>), Failure> {
    let bytes = match c.input.as_deref() {
        None => read_all(stdin)?,
        Some(p) if p.as_os_str() == "-" => read_all(stdin)?,
        Some(p) => std::fs::read(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
    };
    let text = std::str::from_utf8(&bytes).map_err(|_| invalid("input is not UTF-8"))?;
    let g = parse_graph(text).map_err(|e: Error| invalid(e.to_string()))?;
    Ok((g, bytes))
}

fn read_all(r: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)
        .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
    Ok(buf)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(path: &Option<PathBuf>, stdout: &mut dyn Write, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}
