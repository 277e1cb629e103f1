//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain refusal (an unrealizable notation where a
//! diagram is required), 2 usage error. Arguments are checked before any
//! computation starts.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::ThreadPool;
use serde_json::json;

use knotclass_core::coloring::{count_notation_colorings, fingerprint, ColoringError};
use knotclass_core::moves::{equivalent, legal_moves, EquivalenceStatus, MoveError};
use knotclass_core::pipeline::{compare_with_reference, ClassifyError, ReferenceStatus};
use knotclass_core::realizability::is_realizable;
use knotclass_core::{ClassifyConfig, ColoringScheme, Notation};

use crate::parallel;
use crate::table::{load_table, save_table, to_table_string, TableError};

/// Largest `--max-crossings` accepted without `--allow-large`.
pub const DESK_LIMIT: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "knotclass", version, about = "Prime knot tables from pair notations")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, clap::Args)]
pub struct SearchArgs {
    /// Most crossings a move search may pass through (default: input size + 2).
    #[arg(long)]
    pub budget_n: Option<usize>,
    /// States each search component may expand.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Least member of the relabeling orbit.
    Canonical { notation: Notation },
    /// Every relabeling, one per line.
    Orbit { notation: Notation },
    /// Over and under exchanged.
    Mirror { notation: Notation },
    /// Planarity verdict with its chirality witness.
    Realizable { notation: Notation },
    /// Segment cuts at label 1 and the projection count they imply.
    Segments { notation: Notation },
    /// Legal moves and their results.
    Moves {
        notation: Notation,
        #[arg(long)]
        budget_n: usize,
    },
    /// Searches for a move path between two notations.
    Equiv {
        a: Notation,
        b: Notation,
        #[arg(long)]
        emit_path: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Number of colorings under one scheme.
    Colorings {
        notation: Notation,
        #[arg(long)]
        scheme: ColoringScheme,
    },
    /// Mirror-symmetrized counts over a scheme list.
    Fingerprint {
        notation: Notation,
        /// Comma-separated `r:t` list (default: the built-in set).
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<ColoringScheme>>,
    },
    /// Canonical, realizable, prime projections, one per line.
    Enumerate {
        #[arg(long)]
        crossings: usize,
    },
    /// Builds the knot table up to a crossing number.
    Classify {
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<ColoringScheme>>,
        /// Permits more than eight crossings; nine takes minutes, ten much longer.
        #[arg(long)]
        allow_large: bool,
    },
    /// Compares a saved table with the reference counts.
    Compare {
        #[arg(long)]
        table: PathBuf,
    },
}

enum Failure {
    Refusal(String),
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<ColoringError> for Failure {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::Unrealizable => Failure::Refusal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Unrealizable => Failure::Refusal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Io(e) => Failure::Io(e),
            e => Failure::Refusal(e.to_string()),
        }
    }
}

/// Parses `argv` (program name first) and runs it, writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let threads = match parallel::threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let pool = parallel::pool(threads);
    let result = execute(&cli, &pool, out, err);
    match result {
        Ok(()) => 0,
        Err(Failure::Refusal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn schemes_or_default(s: &Option<Vec<ColoringScheme>>) -> Result<Vec<ColoringScheme>, Failure> {
    match s {
        Some(list) if list.is_empty() => Err(Failure::Usage("empty scheme list".into())),
        Some(list) => Ok(list.clone()),
        None => Ok(ColoringScheme::default_set()),
    }
}

fn execute(cli: &Cli, pool: &ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let records = cli.format == Format::Records;
    match &cli.command {
        Command::Canonical { notation } => {
            let c = notation.canonicalize();
            if records {
                writeln!(out, "{}", json!({ "canonical": c.to_string() }))?;
            } else {
                writeln!(out, "{c}")?;
            }
        }
        Command::Orbit { notation } => {
            for v in notation.orbit() {
                writeln!(out, "{v}")?;
            }
        }
        Command::Mirror { notation } => {
            let m = notation.mirror();
            if records {
                writeln!(out, "{}", json!({ "mirror": m.to_string() }))?;
            } else {
                writeln!(out, "{m}")?;
            }
        }
        Command::Realizable { notation } => {
            let verdict = is_realizable(notation);
            let witness = verdict.witness.as_ref().map(|w| w.bit_string());
            let reason = verdict.reason.map(|r| r.as_str());
            if records {
                writeln!(
                    out,
                    "{}",
                    json!({ "realizable": verdict.realizable(), "reason": reason, "witness": witness })
                )?;
            } else if let Some(w) = witness {
                writeln!(out, "realizable {w}")?;
            } else {
                writeln!(out, "unrealizable {}", reason.unwrap_or(""))?;
            }
        }
        Command::Segments { notation } => {
            if notation.is_empty() {
                return Err(Failure::Usage("the empty notation has no segments".into()));
            }
            let seg = notation.segment_decomposition().map_err(|e| Failure::Usage(e.to_string()))?;
            if records {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "boundaries": seg.boundaries,
                        "segments": seg.segment_count(),
                        "projections": seg.projection_count(),
                    })
                )?;
            } else {
                let b: Vec<String> = seg.boundaries.iter().map(ToString::to_string).collect();
                writeln!(out, "boundaries {}", b.join(","))?;
                writeln!(out, "segments {}", seg.segment_count())?;
                writeln!(out, "projections {}", seg.projection_count())?;
            }
        }
        Command::Moves { notation, budget_n } => {
            if *budget_n < notation.crossings() {
                return Err(Failure::Usage(format!(
                    "budget {budget_n} is below the notation's {} crossings",
                    notation.crossings()
                )));
            }
            for (d, r) in legal_moves(notation, *budget_n)? {
                if records {
                    writeln!(out, "{}", json!({ "move": d.to_string(), "result": r.to_string() }))?;
                } else {
                    writeln!(out, "{d}\t{r}")?;
                }
            }
        }
        Command::Equiv { a, b, emit_path, search } => {
            let budget_n = search.budget_n.unwrap_or(a.crossings().max(b.crossings()) + 2);
            let v = equivalent(a, b, budget_n, search.budget_nodes as usize)?;
            let status = match v.status {
                EquivalenceStatus::Connected => "connected",
                EquivalenceStatus::Unknown => "unknown",
            };
            let path: Vec<String> = v.path.iter().flatten().map(ToString::to_string).collect();
            if records {
                let mut rec = json!({ "status": status, "explored": v.explored });
                if *emit_path {
                    rec["path"] = json!(path);
                }
                writeln!(out, "{rec}")?;
            } else {
                writeln!(out, "{status}")?;
                if *emit_path {
                    for p in &path {
                        writeln!(out, "{p}")?;
                    }
                }
            }
        }
        Command::Colorings { notation, scheme } => {
            let c = count_notation_colorings(notation, scheme)?;
            if records {
                writeln!(out, "{}", json!({ "r": scheme.r, "t": scheme.t, "count": c.to_string() }))?;
            } else {
                writeln!(out, "{c}")?;
            }
        }
        Command::Fingerprint { notation, schemes } => {
            let fp = fingerprint(notation, &schemes_or_default(schemes)?)?;
            writeln!(out, "{fp}")?;
        }
        Command::Enumerate { crossings } => {
            if *crossings == 0 {
                return Err(Failure::Usage("--crossings must be at least 1".into()));
            }
            if *crossings > 13 {
                return Err(Failure::Usage("--crossings above 13 is not supported".into()));
            }
            for v in pool.install(|| parallel::enumerate_projections(*crossings)) {
                writeln!(out, "{v}")?;
            }
        }
        Command::Classify { max_crossings, out: path, search, schemes, allow_large } => {
            if *max_crossings > DESK_LIMIT && !allow_large {
                return Err(Failure::Usage(format!(
                    "--max-crossings above {DESK_LIMIT} needs --allow-large"
                )));
            }
            if *max_crossings > 13 {
                return Err(Failure::Usage("--max-crossings above 13 is not supported".into()));
            }
            let config = ClassifyConfig {
                budget_n: search.budget_n,
                budget_nodes: search.budget_nodes as usize,
                schemes: schemes_or_default(schemes)?,
            };
            knotclass_core::pipeline::validate(*max_crossings, &config)?;
            let rep = pool.install(|| parallel::classify(*max_crossings, &config))?;
            if let Some(p) = path {
                save_table(&rep, p)?;
            }
            if records {
                write!(out, "{}", to_table_string(&rep))?;
            } else {
                for n in 0..=rep.n_max {
                    writeln!(
                        out,
                        "{n}\t{}\tlower {}\tunresolved {}",
                        rep.counts[n],
                        rep.lower_bounds[n],
                        rep.unresolved_at(n)
                    )?;
                }
                for c in rep.classes.iter().filter(|c| c.is_composite()) {
                    writeln!(err, "composite class excluded: {}", c.representative)?;
                }
                let counts: Vec<String> = rep.counts.iter().map(ToString::to_string).collect();
                writeln!(out, "{}", counts.join(","))?;
            }
        }
        Command::Compare { table } => {
            let rep = load_table(table)?;
            for row in compare_with_reference(&rep) {
                let status = match row.status {
                    ReferenceStatus::Match => "match".to_string(),
                    ReferenceStatus::Mismatch { expected } => format!("mismatch expected {expected}"),
                    ReferenceStatus::BoundOnly { bound, within } => {
                        format!("bound-only {bound} {}", if within { "within" } else { "above" })
                    }
                    ReferenceStatus::NoReference => "no-reference".to_string(),
                };
                if records {
                    writeln!(out, "{}", json!({ "n": row.crossings, "count": row.count, "status": status }))?;
                } else {
                    writeln!(out, "{}\t{}\t{status}", row.crossings, row.count)?;
                }
            }
        }
    }
    Ok(())
}
