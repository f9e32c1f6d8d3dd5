//! `novikov-knot`: twisted Novikov homology, twisted Alexander invariants
//! and Morse–Novikov bounds from the command line.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 a representation fails
//! verification, 3 an internal invariant is violated.

mod batch;
mod job;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use job::{JobSpec, Operation, SearchParams};
use novikov_core::presentation::validate;
use novikov_core::reps::{verify_rep, RepFile};
use novikov_core::Error;

const WORKERS_ENV: &str = "NOVIKOV_KNOT_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "novikov-knot", version, about)]
struct Cli {
    /// Write the JSON document here (`-` for stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the human-readable report (default when no --out is given).
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Input {
    /// Presentation file.
    #[arg(long, short = 'p')]
    presentation: Option<PathBuf>,
    /// Braid word whose closure is the knot, e.g. "2: 1 1 1".
    #[arg(long, short = 'b', allow_hyphen_values = true)]
    braid: Option<String>,
    /// Built-in knot: unknot, trefoil, figure-eight, kinoshita-terasaka, conway.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Debug, Default)]
struct RepSource {
    /// Representation file (cycle notation or integer matrices).
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Search S_k, e.g. --search-reps k=5 class=3cycle limit=10.
    #[arg(long, num_args = 1.., value_delimiter = ' ')]
    search_reps: Option<Vec<String>>,
    /// Use the trivial 1-dimensional representation.
    #[arg(long)]
    trivial_rep: bool,
    /// Matrix storage convention: as-given or transpose.
    #[arg(long, default_value = "as-given")]
    convention: novikov_core::reps::Convention,
}

#[derive(Args, Debug, Default)]
struct Drops {
    /// Generator (0-based) whose rows leave the torsion minor.
    #[arg(long)]
    drop_gen: Option<usize>,
    /// Relators (0-based, comma-separated) left out of the torsion minor.
    #[arg(long, value_delimiter = ',')]
    drop_rels: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a presentation; prints it in file form.
    Parse {
        #[command(flatten)]
        input: Input,
    },
    /// Search for or verify permutation representations.
    Reps {
        #[command(subcommand)]
        action: RepsAction,
    },
    /// Twisted Alexander invariant and monic verdict.
    Alexander {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reps: RepSource,
        #[command(flatten)]
        drops: Drops,
    },
    /// Novikov profile, certificates and Morse–Novikov lower bound.
    Novikov {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reps: RepSource,
        #[command(flatten)]
        drops: Drops,
        /// Primes for the mod-ell rank certificates.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Morse–Novikov bounds, optionally for connected sums of copies.
    Bound {
        /// Report written by `novikov --out`.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reps: RepSource,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Known upper bound with citation, e.g. "2 (handle construction)".
        #[arg(long)]
        upper: Option<String>,
    },
    /// Run a JSON manifest of jobs.
    Batch { manifest: PathBuf },
}

#[derive(Subcommand, Debug)]
enum RepsAction {
    /// Enumerate representations up to conjugacy: k=5 class=3cycle limit=10.
    Search {
        #[command(flatten)]
        input: Input,
        params: Vec<String>,
    },
    /// Check a representation file against the relators.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rep: PathBuf,
    },
}

/// Maps an error to the documented exit code.
pub(crate) fn exit_code(e: &anyhow::Error) -> i32 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Unverified | Error::DimensionMismatch(..) | Error::MeridianMismatch) => 2,
        Some(Error::ChainLaw | Error::Invariant(_)) => 3,
        _ => 1,
    }
}

fn base_spec(input: Input) -> JobSpec {
    JobSpec {
        presentation: input.presentation,
        braid: input.braid,
        fixture: input.fixture,
        ..Default::default()
    }
}

fn with_reps(mut spec: JobSpec, reps: RepSource) -> JobSpec {
    spec.rep = reps.rep;
    spec.search = reps.search_reps.map(|v| v.join(" "));
    spec.trivial_rep = reps.trivial_rep;
    spec.convention = reps.convention;
    spec
}

struct Output {
    json: String,
    text: String,
}

fn emit(cli_out: &Option<PathBuf>, text_flag: bool, out: Output) -> Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match cli_out {
        Some(path) if path.as_os_str() == "-" => lock.write_all(out.json.as_bytes())?,
        Some(path) => std::fs::write(path, &out.json)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => {}
    }
    let to_stdout_json = cli_out.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if text_flag || (cli_out.is_none() && !to_stdout_json) {
        lock.write_all(out.text.as_bytes())?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<i32> {
    let (out, text) = (cli.out, cli.text);
    let output = match cli.command {
        Command::Parse { input } => {
            let (p, warnings) = job::load_presentation(&base_spec(input))?;
            let report = validate(&p);
            for w in warnings.iter().chain(&report.warnings) {
                log::warn!("{w}");
            }
            let json = serde_json::json!({ "presentation": p, "validation": report });
            Output {
                json: serde_json::to_string_pretty(&json)? + "\n",
                text: p.to_text(),
            }
        }
        Command::Reps { action: RepsAction::Search { input, params } } => {
            let (p, _) = job::load_presentation(&base_spec(input))?;
            let params: SearchParams = params.join(" ").parse()?;
            let found = job::search(&p, &params)?;
            let mut text = String::new();
            let mut docs = Vec::new();
            for (i, r) in found.iter().enumerate() {
                let order = r.image_order();
                text += &format!("# representation {}, image order {order}\n", i + 1);
                text += &format!("degree: {}\n", r.degree);
                let mut images = Vec::new();
                for (g, img) in r.images.iter().enumerate() {
                    text += &format!("{}: {img}\n", p.names()[g]);
                    images.push(img.to_string());
                }
                text += "\n";
                docs.push(serde_json::json!({
                    "degree": r.degree,
                    "image_order": order,
                    "images": images,
                }));
            }
            if found.is_empty() {
                text += "no representations found\n";
            }
            Output {
                json: serde_json::to_string_pretty(&docs)? + "\n",
                text,
            }
        }
        Command::Reps { action: RepsAction::Verify { input, rep } } => {
            let (p, _) = job::load_presentation(&base_spec(input))?;
            let body = std::fs::read_to_string(&rep)
                .with_context(|| format!("cannot read {}", rep.display()))?;
            let r = novikov_core::reps::parse_rep_file(&body, &p)?;
            if !verify_rep(&p, &r) {
                return Err(Error::Unverified.into());
            }
            let kind = match r {
                RepFile::Permutation(_) => "permutation",
                RepFile::Matrix(_) => "matrix",
            };
            let json = serde_json::json!({ "verified": true, "kind": kind, "dim": r.dim() });
            Output {
                json: serde_json::to_string_pretty(&json)? + "\n",
                text: format!("verified: {kind} representation of dimension {}\n", r.dim()),
            }
        }
        Command::Alexander { input, reps, drops } => {
            let mut spec = with_reps(base_spec(input), reps);
            spec.drop_generator = drops.drop_gen;
            spec.drop_relators = drops.drop_rels;
            spec.operations = vec![Operation::Alexander];
            let o = job::run(&spec)?;
            Output { json: o.to_json()?, text: o.to_text() }
        }
        Command::Novikov { input, reps, drops, primes } => {
            let mut spec = with_reps(base_spec(input), reps);
            spec.drop_generator = drops.drop_gen;
            spec.drop_relators = drops.drop_rels;
            spec.primes = primes;
            spec.operations = vec![Operation::Novikov];
            let o = job::run(&spec)?;
            Output { json: o.to_json()?, text: o.to_text() }
        }
        Command::Bound { profile, input, reps, copies, upper } => {
            let report = match profile {
                Some(path) => {
                    let body = std::fs::read_to_string(&path)
                        .with_context(|| format!("cannot read {}", path.display()))?;
                    let upper = upper.as_deref().map(str::parse).transpose()?;
                    job::rebound(&body, copies, upper)?
                }
                None => {
                    let mut spec = with_reps(base_spec(input), reps);
                    spec.copies = copies;
                    spec.upper = upper;
                    spec.operations = vec![Operation::Bound];
                    job::run(&spec)?.report.expect("bound produces a report")
                }
            };
            Output {
                json: serde_json::to_string_pretty(&report)? + "\n",
                text: report.to_text(),
            }
        }
        Command::Batch { manifest } => {
            let jobs = batch::read_manifest(&manifest)?;
            let rows = batch::run_batch(&jobs);
            let code = rows.iter().map(|r| r.exit_code).max().unwrap_or(0);
            emit(
                &out,
                text,
                Output {
                    json: serde_json::to_string_pretty(&rows)? + "\n",
                    text: batch::summary_text(&rows),
                },
            )?;
            return Ok(code);
        }
    };
    emit(&out, text, output)?;
    Ok(0)
}

fn configure_workers() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{WORKERS_ENV} must be a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot start worker pool")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_workers().and_then(|()| execute(cli));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
