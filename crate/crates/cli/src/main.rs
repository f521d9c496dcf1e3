//! `schubert`: queries and verification sweeps over affine Grassmannian
//! Schubert varieties.
//!
//! Exit status: 0 on success, 1 when a verify suite records failures, 2 on
//! usage or input errors.

mod query;
mod verify;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use schubert_core::{Context, Point};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Schubert varieties in the affine Grassmannian")]
struct Cli {
    /// Emit the JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Ctx {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
}

/// Points are ℓ-vectors such as `4,0,0,0`, or tuples prefixed with `t:`.
#[derive(Args)]
struct Pair {
    #[command(flatten)]
    ctx: Ctx,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Args)]
struct Host {
    #[command(flatten)]
    ctx: Ctx,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Subcommand)]
enum Command {
    /// Show every representation of a point.
    Point {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, conflicts_with = "tuple", required_unless_present = "tuple", allow_hyphen_values = true)]
        l: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tuple: Option<String>,
        /// Draw the string diagram.
        #[arg(long)]
        diagram: bool,
    },
    /// Whether `x ≤ w`.
    Leq(Pair),
    /// dim X(w).
    Dim(Host),
    /// codim of X(x) in X(w).
    Codim(Pair),
    /// T-stable curves of X(w) through x.
    Curves(Pair),
    /// Tangent space of X(w) at x, exact where a formula applies.
    Tangent(Pair),
    /// Singularity patterns of w.
    Patterns {
        #[command(flatten)]
        host: Host,
        /// Comma-separated kinds, e.g. `imaginary,exc_first`.
        #[arg(long)]
        kinds: Option<String>,
    },
    /// Maximal singular points of X(w).
    Locus(Host),
    /// Smooth or singular point, with the method and witnesses.
    Classify(Pair),
    /// Run a verification sweep over every context up to the given bounds.
    Verify(verify::VerifyArgs),
}

/// The JSON envelope shared by every subcommand.
#[derive(Serialize)]
struct Document {
    schema_version: u32,
    context: Value,
    query: Value,
    result: Value,
}

pub(crate) struct Output {
    context: Value,
    query: Value,
    result: Value,
    text: String,
    failed: bool,
}

impl Output {
    pub(crate) fn new(context: Value, query: Value, result: impl Serialize, text: String) -> Result<Output> {
        Ok(Output { context, query, result: serde_json::to_value(result)?, text, failed: false })
    }
}

pub(crate) fn context_json(ctx: Context) -> Value {
    serde_json::json!({ "n": ctx.n(), "s": ctx.s(), "d": ctx.d() })
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|v| v.trim().parse::<usize>().with_context(|| format!("`{v}` is not a nonnegative integer in `{text}`")))
        .collect()
}

/// ℓ-csv, or a `t:`-prefixed I-tuple.
pub(crate) fn parse_point(ctx: Context, text: &str) -> Result<Point> {
    match text.strip_prefix("t:") {
        Some(t) => Ok(Point::from_tuple(ctx, &parse_list(t)?)?),
        None => Ok(Point::from_lengths(ctx, parse_list(text)?)?),
    }
}

impl Ctx {
    fn build(self) -> Result<Context> {
        Ok(Context::new(self.n, self.s)?)
    }
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Point { ctx, l, tuple, diagram } => {
            let c = ctx.build()?;
            let p = match (l, tuple) {
                (Some(l), _) => Point::from_lengths(c, parse_list(&l)?)?,
                (None, Some(t)) => Point::from_tuple(c, &parse_list(&t)?)?,
                (None, None) => unreachable!("clap requires one of --l and --tuple"),
            };
            query::point(p, diagram)
        }
        Command::Leq(p) => query::with_pair(p, query::leq),
        Command::Dim(h) => query::with_host(h, query::dim),
        Command::Codim(p) => query::with_pair(p, query::codim),
        Command::Curves(p) => query::with_pair(p, query::curves),
        Command::Tangent(p) => query::with_pair(p, query::tangent),
        Command::Patterns { host, kinds } => query::patterns(host, kinds.as_deref()),
        Command::Locus(h) => query::with_host(h, query::locus),
        Command::Classify(p) => query::with_pair(p, query::classify),
        Command::Verify(args) => verify::run(args),
    }
}

fn emit(out: &Output, json: bool, file: Option<&PathBuf>) -> Result<()> {
    let doc = Document {
        schema_version: 1,
        context: out.context.clone(),
        query: out.query.clone(),
        result: out.result.clone(),
    };
    let rendered = serde_json::to_string_pretty(&doc)?;
    if let Some(path) = file {
        std::fs::write(path, format!("{rendered}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    let body = if json { &rendered } else { &out.text };
    match writeln!(std::io::stdout().lock(), "{body}") {
        // A closed reader such as `head` is not an error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command).and_then(|out| emit(&out, cli.json, cli.out.as_ref()).map(|_| out.failed));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
