//! The `skein` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 for usage and
//! parse errors, 3 for evaluation errors.

pub mod cache;
mod named;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::algebra::AxiomOptions;
use crate::diagram::{BraidWord, Diagram, DiagramError};
use crate::invariants::EvalOptions;
use crate::simplify::{reduce_untangled, SimplifyError};
use crate::skein::{is_untangled, make_untangled, BaseStrategy, Convention, ResolvingTree, SkeinError, DEFAULT_NODE_CAP};
use crate::zoo::ALGEBRA_NAMES;

use cache::{key_hex, Cache};
pub use named::Zoo;
use named::parse_algebra;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse: {0}")]
    Parse(String),
    #[error("evaluate: {0}")]
    Eval(#[from] SkeinError),
    #[error("simplify: {0}")]
    Simplify(#[from] SimplifyError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Eval(_) | CliError::Simplify(_) | CliError::Io(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "skein", version, about = "Conway algebra invariants of oriented links")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Which crossing sign takes `|`.
    #[arg(long, global = true, default_value = "modern", value_parser = parse_convention)]
    convention: Convention,
    /// Place base points pseudo-randomly from this seed instead of on the
    /// lowest edge of each component.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Neither read nor write the value cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Planar diagram code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long)]
    pd: Option<String>,
    /// Braid word, e.g. "3: 1 -2 1 -2".
    #[arg(long)]
    braid: Option<String>,
    /// File holding a PD code or a braid word.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate invariants, one JSON line per algebra.
    Invariant {
        #[command(flatten)]
        input: Input,
        #[arg(long = "algebra", required = true, value_parser = parse_algebra)]
        algebras: Vec<String>,
    },
    /// Print the resolving tree.
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Keep kinks and bigons in child diagrams.
        #[arg(long)]
        full: bool,
    },
    /// Reduce an untangled diagram to a crossingless one; prints the moves
    /// as JSON lines.
    Simplify {
        #[command(flatten)]
        input: Input,
        /// Switch bad crossings first instead of rejecting the input.
        #[arg(long)]
        untangle: bool,
        /// The outer face is the left side of this edge.
        #[arg(long)]
        outer_edge: Option<u32>,
    },
    /// Check the algebra laws.
    Axioms {
        /// Defaults to every algebra.
        #[arg(long = "algebra", value_parser = parse_algebra)]
        algebras: Vec<String>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Weighted simplex of sublinks, optionally compared with another link.
    Simplex {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_algebra)]
        algebra: String,
        /// Second link, as a PD code or braid word.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Evaluate a CSV corpus with columns name,kind,input.
    Batch {
        #[arg(long)]
        file: PathBuf,
        #[arg(long = "algebra", required = true, value_parser = parse_algebra)]
        algebras: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse()
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

/// Reads a PD code (`X(...)` terms or `O`) or else a braid word.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let t = text.trim();
    let pd_like = t.contains('X') || (!t.is_empty() && t.split_whitespace().all(|w| w == "O"));
    if pd_like {
        Diagram::parse_pd(t)
    } else {
        Ok(t.parse::<BraidWord>()?.closure())
    }
}

fn read_input(i: &Input) -> Result<Diagram, CliError> {
    if let Some(pd) = &i.pd {
        return Diagram::parse_pd(pd).map_err(parse_err);
    }
    if let Some(b) = &i.braid {
        return Ok(b.parse::<BraidWord>().map_err(parse_err)?.closure());
    }
    let path = i.file.as_ref().expect("clap enforces one input");
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(parse_err)
}

/// One line of `invariant` output.
#[derive(Serialize)]
struct Record<'a> {
    algebra: &'a str,
    value: &'a str,
    diagram_key: &'a str,
}

struct Ctx {
    zoo: Zoo,
    opts: EvalOptions,
    cache: Option<Cache>,
}

impl Ctx {
    fn value(&self, name: &str, d: &Diagram, key: &str) -> Result<String, CliError> {
        let conv = self.opts.convention.to_string();
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(key, &conv, name)) {
            return Ok(v);
        }
        let v = self.zoo.evaluate(name, d, self.opts)?;
        if let Some(c) = &self.cache {
            c.put(key, &conv, name, &v)?;
        }
        Ok(v)
    }
}

/// Runs the command line; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        // the reader went away, e.g. `| head`
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "skein: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let strategy = cli.seed.map_or(BaseStrategy::LowestEdge, BaseStrategy::Seeded);
    let opts = EvalOptions { strategy, convention: cli.convention, ..Default::default() };
    let cache_wanted = matches!(cli.command, Command::Invariant { .. } | Command::Batch { .. });
    let cache = if cli.no_cache || !cache_wanted { None } else { Cache::from_env()? };
    let ctx = Ctx { zoo: Zoo::new(), opts, cache };
    match cli.command {
        Command::Invariant { input, algebras } => {
            let d = read_input(&input)?;
            let k = d.canonical_key();
            let (hex, digest) = (key_hex(&k), k.digest());
            for name in &algebras {
                let v = ctx.value(name, &d, &hex)?;
                let rec = Record { algebra: name, value: &v, diagram_key: &digest };
                writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
            }
            Ok(0)
        }
        Command::Tree { input, format, full } => {
            let d = read_input(&input)?;
            let bp = strategy.choose(&d);
            let t = if full {
                ResolvingTree::build_from(&d, &bp, &strategy, DEFAULT_NODE_CAP)?
            } else {
                ResolvingTree::build_compressed(&d, &bp, &strategy, DEFAULT_NODE_CAP)?
            };
            match format {
                Format::Json => writeln!(out, "{}", t.to_json())?,
                Format::Dot => write!(out, "{}", t.to_dot())?,
            }
            Ok(0)
        }
        Command::Simplify { input, untangle, outer_edge } => {
            let mut d = read_input(&input)?;
            let bp = strategy.choose(&d);
            if untangle {
                d = make_untangled(&d, &bp)?;
            } else if !is_untangled(&d, &bp) {
                return Err(SimplifyError::NotUntangled.into());
            }
            let r = reduce_untangled(&d, &bp, outer_edge)?;
            for m in &r.moves {
                writeln!(out, "{}", m.to_json_line())?;
            }
            Ok(0)
        }
        Command::Axioms { algebras, exhaustive, samples, max_n } => {
            let names: Vec<String> = if algebras.is_empty() {
                ALGEBRA_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                algebras
            };
            let aopts = AxiomOptions { samples, max_n, seed: cli.seed.unwrap_or(AxiomOptions::default().seed), exhaustive };
            let mut ok = true;
            for name in &names {
                let report = ctx.zoo.axioms(name, &aopts);
                ok &= report.passed();
                writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
                if name == "quasi" {
                    let c = ctx.zoo.quasi_constraints(max_n)?;
                    ok &= c["passed"] == json!(true);
                    writeln!(out, "{c}")?;
                }
            }
            if ok {
                Ok(0)
            } else {
                Err(CliError::Failed("some laws failed".into()))
            }
        }
        Command::Simplex { input, algebra, compare } => {
            let d = read_input(&input)?;
            let other = compare.as_deref().map(parse_diagram).transpose().map_err(parse_err)?;
            let r = ctx.zoo.simplex(&algebra, &d, other.as_ref(), opts)?;
            writeln!(out, "{}", json!({ "algebra": algebra, "simplex": r.first }))?;
            if let (Some(s), Some(eq)) = (r.second, r.equivalent) {
                writeln!(out, "{}", json!({ "algebra": algebra, "simplex": s }))?;
                writeln!(out, "{}", if eq { "EQUIVALENT" } else { "NOT EQUIVALENT" })?;
            }
            Ok(0)
        }
        Command::Batch { file, algebras, jobs } => batch(&ctx, &file, &algebras, jobs, out),
    }
}

struct Row {
    name: String,
    cells: Vec<String>,
    code: i32,
}

fn batch_row(ctx: &Ctx, name: String, kind: &str, input: &str, algebras: &[String]) -> Row {
    let parsed = match kind {
        "pd" => Diagram::parse_pd(input),
        "braid" => input.parse::<BraidWord>().map(|b| b.closure()),
        other => Err(DiagramError::Syntax(format!("unknown kind {other:?}"))),
    };
    let d = match parsed {
        Ok(d) => d,
        Err(e) => {
            let cell = format!("error: parse: {e}");
            return Row { name, cells: vec![cell; algebras.len()], code: 2 };
        }
    };
    let hex = key_hex(&d.canonical_key());
    let mut code = 0;
    let cells = algebras
        .iter()
        .map(|a| match ctx.value(a, &d, &hex) {
            Ok(v) => v,
            Err(e) => {
                code = code.max(e.exit_code());
                format!("error: {e}")
            }
        })
        .collect();
    Row { name, cells, code }
}

fn batch(ctx: &Ctx, file: &Path, algebras: &[String], jobs: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut rdr = csv::Reader::from_path(file).map_err(parse_err)?;
    let mut items = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(parse_err)?;
        if rec.len() != 3 {
            return Err(CliError::Parse(format!("expected name,kind,input; got {} fields", rec.len())));
        }
        items.push((rec[0].to_string(), rec[1].to_string(), rec[2].to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let rows: Vec<Row> = pool.install(|| {
        items
            .into_par_iter()
            .map(|(name, kind, input)| batch_row(ctx, name, &kind, &input, algebras))
            .collect()
    });
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = std::iter::once("name").chain(algebras.iter().map(String::as_str)).collect();
    w.write_record(&header).map_err(|e| CliError::Io(e.into()))?;
    let mut code = 0;
    for r in &rows {
        code = code.max(r.code);
        w.write_record(std::iter::once(&r.name).chain(&r.cells)).map_err(|e| CliError::Io(e.into()))?;
    }
    out.write_all(&w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)?;
    Ok(code)
}
