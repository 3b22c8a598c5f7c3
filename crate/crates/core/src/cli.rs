//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::bridges::{assemble_plabic, enumerate_decompositions, BridgeDecomposition, BridgeError};
use crate::exact::parse_q;
use crate::permcore::{necklace_of_matrix, DecoratedPermutation, PermError, Permutation, SubsetJ};
use crate::plabic::{to_dot, PlabicError, PlabicGraph};
use crate::polytope::{classify_two_faces, face_census, geodesics, s_j_vertices, PolytopeError};
use crate::verify::{run_all, VerifyConfig};

/// Environment variable naming the directory for `verify` reports when no
/// `--output` is given.
pub const OUTPUT_DIR_ENV: &str = "POSITROID_OUTPUT_DIR";

/// Largest `n` for skeleton and LP work without `--unsafe`.
pub const MAX_SAFE_N: usize = 6;
/// Largest move-search budget without `--unsafe`.
pub const MAX_SAFE_BUDGET: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "positroid", version, about = "Bridge decompositions, plabic graphs and bridge polytopes")]
struct Cli {
    /// Lift the size guardrails.
    #[arg(long = "unsafe", global = true)]
    unsafe_limits: bool,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bridge decompositions of a decorated permutation.
    #[command(subcommand)]
    Bridge(BridgeCommand),
    /// Plabic graph files.
    #[command(subcommand)]
    Plabic(PlabicCommand),
    /// Bridge polytopes `Br_J`.
    #[command(subcommand)]
    Polytope(PolytopeCommand),
    /// Exhaustive checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Grassmann necklace and decorated permutation of a matrix.
    Necklace {
        /// Whitespace-separated rational entries, one row per line; `#` starts a comment.
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Debug, Args)]
struct PermArgs {
    /// One-line notation, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    perm: Vec<usize>,
    /// Fixed points colored counterclockwise.
    #[arg(long, value_delimiter = ',')]
    ccw: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
enum BridgeCommand {
    /// List every bridge decomposition, one per line.
    Enumerate {
        #[command(flatten)]
        perm: PermArgs,
        /// Print the window after every step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Build the plabic graph of one decomposition.
    Assemble {
        #[command(flatten)]
        perm: PermArgs,
        /// Steps as `i-j` pairs, comma separated, e.g. `1-2,2-3`.
        #[arg(long, value_delimiter = ',')]
        steps: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum PlabicCommand {
    /// Trip permutation and reducedness; exits 1 when the graph is not reduced.
    Check {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Re-emit a graph in canonical numbering.
    Render {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct SubsetArgs {
    /// Positions of forced weak excedances, comma separated.
    #[arg(long = "J", value_delimiter = ',')]
    j: Vec<usize>,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum PolytopeCommand {
    /// One-skeleton, one edge per line as `u;v;i,l`.
    Skeleton {
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Shortest paths from `π(J)` to the identity, as label sequences.
    Geodesics {
        #[command(flatten)]
        subset: SubsetArgs,
        /// Stop after this many paths.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// 2-face census.
    Faces {
        #[command(flatten)]
        subset: SubsetArgs,
        /// List every face, not just the counts.
        #[arg(long)]
        detail: bool,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Run every check and print a JSON report.
    All {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Size for random edge spot checks.
        #[arg(long)]
        spot_n: Option<usize>,
        #[arg(long, default_value_t = 200)]
        spot_pairs: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Move-search budget, in graphs.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Plabic(#[from] PlabicError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    /// Already reported; only the exit code matters.
    #[error("verification failed")]
    Failed,
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed => 1,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn decorated(p: &PermArgs) -> Result<DecoratedPermutation, CliError> {
    Ok(DecoratedPermutation::new(Permutation::new(p.perm.clone())?, p.ccw.iter().copied())?)
}

fn subset(s: &SubsetArgs, unsafe_limits: bool) -> Result<SubsetJ, CliError> {
    if s.n > MAX_SAFE_N && !unsafe_limits {
        return Err(CliError::Usage(format!("n = {} exceeds {MAX_SAFE_N}; pass --unsafe to proceed", s.n)));
    }
    Ok(SubsetJ::new(s.j.iter().copied(), s.n)?)
}

fn parse_steps(steps: &[String]) -> Result<Vec<(usize, usize)>, CliError> {
    steps
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s.split_once('-').ok_or_else(|| CliError::Usage(format!("step {s:?} is not of the form i-j")))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad step {s:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<crate::exact::Q>>, CliError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|x| parse_q(x).ok_or_else(|| CliError::Usage(format!("bad matrix entry {x:?}"))))
                .collect()
        })
        .collect()
}

fn unsupported(format: Format, what: &str) -> CliError {
    CliError::Usage(format!("{what} does not support --format {}", format.to_possible_value().unwrap().get_name()))
}

fn label(pair: (usize, usize)) -> String {
    format!("({}{})", pair.0, pair.1)
}

/// Runs one command, writing its primary output to `out`.
fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |source: io::Error| CliError::Io { path: PathBuf::from("<output>"), source };
    match &cli.command {
        Command::Bridge(BridgeCommand::Enumerate { perm, trace, limit, format }) => {
            let d = decorated(perm)?;
            for dec in enumerate_decompositions(&d, *limit) {
                match format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&dec.to_json()).expect("serializable")),
                    Format::Table if *trace => writeln!(out, "{}", dec.render_trace()),
                    Format::Table => writeln!(out, "{}", dec.steps.iter().map(|&s| label(s)).collect::<String>()),
                    other => return Err(unsupported(*other, "bridge enumerate")),
                }
                .map_err(io_err)?;
            }
        }
        Command::Bridge(BridgeCommand::Assemble { perm, steps, format }) => {
            let dec = BridgeDecomposition::replay(&decorated(perm)?, &parse_steps(steps)?)?;
            let g = assemble_plabic(&dec)?;
            let text = match format {
                Format::Json => g.to_json(),
                Format::Dot => to_dot(&g)?,
                other => return Err(unsupported(*other, "bridge assemble")),
            };
            writeln!(out, "{text}").map_err(io_err)?;
        }
        Command::Plabic(PlabicCommand::Check { graph }) => {
            let g = PlabicGraph::from_json(&read(graph)?)?;
            let trip = g.trip_permutation()?;
            let resonance = g.resonance()?;
            let report = json!({
                "n": g.n(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "trip_permutation": trip,
                "resonance": resonance,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable")).map_err(io_err)?;
            if !resonance.reduced {
                writeln!(err, "graph is not reduced").map_err(io_err)?;
                return Err(CliError::Failed);
            }
        }
        Command::Plabic(PlabicCommand::Render { graph, format }) => {
            let g = PlabicGraph::from_json(&read(graph)?)?;
            let text = match format {
                Format::Json => g.canonical_form().to_graph()?.to_json(),
                Format::Dot => to_dot(&g)?,
                other => return Err(unsupported(*other, "plabic render")),
            };
            writeln!(out, "{text}").map_err(io_err)?;
        }
        Command::Polytope(PolytopeCommand::Skeleton { subset: s, format }) => {
            let skel = s_j_vertices(&subset(s, cli.unsafe_limits)?).skeleton();
            match format {
                Format::Csv => write!(out, "{}", skel.to_csv()),
                Format::Json => {
                    let edges: Vec<_> = skel
                        .edges()
                        .iter()
                        .map(|e| json!({ "u": skel.vertices()[e.u], "v": skel.vertices()[e.v], "label": [e.label.0, e.label.1] }))
                        .collect();
                    writeln!(out, "{}", json!({ "vertices": skel.vertices(), "edges": edges }))
                }
                other => return Err(unsupported(*other, "polytope skeleton")),
            }
            .map_err(io_err)?;
        }
        Command::Polytope(PolytopeCommand::Geodesics { subset: s, cap, format }) => {
            let bp = s_j_vertices(&subset(s, cli.unsafe_limits)?);
            let paths = geodesics(&bp.skeleton(), &bp.apex(), &Permutation::identity(s.n), *cap)?;
            match format {
                Format::Json => {
                    let lists: Vec<Vec<[usize; 2]>> = paths.iter().map(|p| p.labels.iter().map(|&(a, b)| [a, b]).collect()).collect();
                    writeln!(out, "{}", serde_json::to_string(&lists).expect("serializable")).map_err(io_err)?;
                }
                Format::Table => {
                    for p in &paths {
                        writeln!(out, "{}", p.labels.iter().map(|&l| label(l)).collect::<String>()).map_err(io_err)?;
                    }
                }
                other => return Err(unsupported(*other, "polytope geodesics")),
            }
        }
        Command::Polytope(PolytopeCommand::Faces { subset: s, detail }) => {
            let bp = s_j_vertices(&subset(s, cli.unsafe_limits)?);
            let faces = classify_two_faces(&bp.skeleton());
            let census = face_census(&faces);
            let text = if *detail {
                serde_json::to_string(&json!({ "census": census, "faces": faces }))
            } else {
                serde_json::to_string(&census)
            };
            writeln!(out, "{}", text.expect("serializable")).map_err(io_err)?;
        }
        Command::Verify(VerifyCommand::All { n, spot_n, spot_pairs, seed, budget }) => {
            for size in std::iter::once(*n).chain(*spot_n) {
                if size > MAX_SAFE_N && !cli.unsafe_limits {
                    return Err(CliError::Usage(format!("n = {size} exceeds {MAX_SAFE_N}; pass --unsafe to proceed")));
                }
            }
            if *budget > MAX_SAFE_BUDGET && !cli.unsafe_limits {
                return Err(CliError::Usage(format!("budget {budget} exceeds {MAX_SAFE_BUDGET}; pass --unsafe to proceed")));
            }
            let cfg = VerifyConfig { n: *n, spot_n: *spot_n, spot_pairs: *spot_pairs, seed: *seed, bfs_budget: *budget };
            let report = run_all(&cfg);
            for c in &report.checks {
                writeln!(err, "{:>2} {} {}: {}", c.id, if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).map_err(io_err)?;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable")).map_err(io_err)?;
            if !report.passed {
                return Err(CliError::Failed);
            }
        }
        Command::Necklace { matrix } => {
            let m = parse_matrix(&read(matrix)?)?;
            let necklace = necklace_of_matrix(&m)?;
            let d = necklace.to_decorated()?;
            writeln!(out, "{}", json!({ "necklace": necklace, "decorated_permutation": d })).map_err(io_err)?;
        }
    }
    Ok(())
}

/// Where the primary output goes: `--output`, else a report file under
/// `$POSITROID_OUTPUT_DIR` for `verify`, else standard output.
fn output_path(cli: &Cli) -> Option<PathBuf> {
    if let Some(p) = &cli.output {
        return Some(p.clone());
    }
    match &cli.command {
        Command::Verify(VerifyCommand::All { n, .. }) => {
            std::env::var_os(OUTPUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(format!("verify-n{n}.json")))
        }
        _ => None,
    }
}

/// Parses `argv` and runs the command with explicit streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // a second build in the same process fails harmlessly
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global();
    }
    let result = match output_path(&cli) {
        Some(path) => {
            let mut buf = Vec::new();
            let r = execute(&cli, &mut buf, err);
            // a failing report is still written
            if matches!(r, Ok(()) | Err(CliError::Failed)) {
                let written = path
                    .parent()
                    .filter(|d| !d.as_os_str().is_empty())
                    .map_or(Ok(()), fs::create_dir_all)
                    .and_then(|()| fs::write(&path, &buf));
                if let Err(source) = written {
                    return report(CliError::Io { path, source }, err);
                }
            }
            r
        }
        None => execute(&cli, out, err),
    };
    match result {
        Ok(()) => 0,
        // reader went away, e.g. piped into head
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => report(e, err),
    }
}

fn report(e: CliError, err: &mut dyn Write) -> i32 {
    if !matches!(e, CliError::Failed) {
        let _ = writeln!(err, "error: {e}");
    }
    e.exit_code()
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
