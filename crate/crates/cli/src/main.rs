//! `pathlap`: path Laplacian spectra, persistence sweeps and path-complex
//! summaries of digraphs read from edge lists or XYZ point clouds.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathlap::{
    analyze, directed_complete_graph, load_edge_list, omega_basis, parse_xyz, reduce, sweep,
    AnalysisConfig, Digraph, Error, PathConfig, PrecedenceTable, WeightedDigraph,
    DEFAULT_MAX_PATHS, DEFAULT_ZERO_TOLERANCE,
};

use render::OutputFormat;

const MAX_DIMENSION: usize = 5;

#[derive(Parser, Debug)]
#[command(
    name = "pathlap",
    version,
    about = "Path homology and path Laplacian spectra of digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and Laplacian spectra of one digraph.
    Spectra(RunArgs),
    /// Betti numbers and spectra at every critical distance of a filtration.
    Persist(RunArgs),
    /// Vertex, edge, allowed-path and Omega dimension counts.
    Info(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Edgelist,
    Xyz,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Input file.
    #[arg(long, short)]
    input: PathBuf,

    #[arg(long, value_enum, default_value = "edgelist")]
    format: InputFormat,

    /// Path dimensions to report, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    dims: Vec<usize>,

    /// Bond cutoff in the units of the XYZ coordinates.
    #[arg(long)]
    cutoff: Option<f64>,

    /// Precedence table (`LABEL score` per line) overriding the built-in
    /// electronegativities.
    #[arg(long)]
    precedence: Option<PathBuf>,

    /// Keep vertices with no edge at a threshold (persist only).
    #[arg(long)]
    keep_isolated: bool,

    /// Remove source and sink fans before the analysis.
    #[arg(long)]
    reduce: bool,

    /// Output format; json for spectra and info, csv for persist by default.
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,

    /// Resample a sweep onto K evenly spaced distances.
    #[arg(long, value_name = "K")]
    grid: Option<usize>,

    /// Relative zero-eigenvalue factor.
    #[arg(long, default_value_t = DEFAULT_ZERO_TOLERANCE)]
    tolerance: f64,

    /// Cap on the number of allowed paths in any dimension.
    #[arg(long, env = "PATHLAP_MAX_PATHS", default_value_t = DEFAULT_MAX_PATHS)]
    max_paths: usize,

    /// Fail when an eigenvalue zero count disagrees with the exact Betti number.
    #[arg(long)]
    strict: bool,
}

/// A failure with its process exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PathCap { .. } => 2,
            Error::Inconsistent(_) => 3,
            Error::Parse { .. } | Error::InvalidDigraph(_) | Error::Config(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Spectra(args) => spectra(&args),
        Command::Persist(args) => persist(&args),
        Command::Info(args) => info(&args),
    }
}

fn dims(args: &RunArgs) -> std::result::Result<Vec<usize>, Failure> {
    let mut dims = args.dims.clone();
    if dims.is_empty() {
        return Err(Failure::usage("--dims needs at least one dimension"));
    }
    if let Some(&n) = dims.iter().find(|&&n| n > MAX_DIMENSION) {
        return Err(Failure::usage(format!(
            "dimension {n} is above the supported maximum {MAX_DIMENSION}"
        )));
    }
    dims.sort_unstable();
    dims.dedup();
    Ok(dims)
}

fn config(args: &RunArgs) -> std::result::Result<AnalysisConfig, Failure> {
    if !(args.tolerance > 0.0 && args.tolerance.is_finite()) {
        return Err(Failure::usage("--tolerance must be a positive number"));
    }
    if args.max_paths == 0 {
        return Err(Failure::usage("--max-paths must be positive"));
    }
    Ok(AnalysisConfig {
        paths: PathConfig {
            max_paths: args.max_paths,
        },
        zero_tolerance: args.tolerance,
    })
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load(args: &RunArgs) -> std::result::Result<WeightedDigraph, Failure> {
    let text = read(&args.input)?;
    match args.format {
        InputFormat::Edgelist => {
            if args.cutoff.is_some() || args.precedence.is_some() {
                return Err(Failure::usage(
                    "--cutoff and --precedence only apply to xyz input",
                ));
            }
            Ok(load_edge_list(&text)?)
        }
        InputFormat::Xyz => {
            let cutoff = args
                .cutoff
                .ok_or_else(|| Failure::usage("xyz input needs --cutoff"))?;
            let mut table = PrecedenceTable::default();
            if let Some(path) = &args.precedence {
                table = table.merged(&PrecedenceTable::parse(&read(path)?)?);
            }
            let cloud = parse_xyz(&text)?;
            Ok(directed_complete_graph(&cloud, &table, cutoff)?)
        }
    }
}

/// The digraph analysed by `spectra` and `info`, reduced when asked.
fn single_digraph(
    args: &RunArgs,
) -> std::result::Result<(Digraph, Option<Vec<pathlap::ReductionStep>>), Failure> {
    let g = load(args)?.digraph().clone();
    if args.grid.is_some() {
        return Err(Failure::usage("--grid only applies to persist"));
    }
    if args.keep_isolated {
        eprintln!("warning: --keep-isolated only affects persist; ignored");
    }
    Ok(if args.reduce {
        let (reduced, steps) = reduce(&g);
        (reduced, Some(steps))
    } else {
        (g, None)
    })
}

/// Warns about nullity mismatches, or fails under `--strict`.
fn check_nullity(
    args: &RunArgs,
    mismatches: impl Iterator<Item = String>,
) -> std::result::Result<(), Failure> {
    let mismatches: Vec<String> = mismatches.collect();
    if mismatches.is_empty() {
        return Ok(());
    }
    if args.strict {
        return Err(Failure {
            code: 3,
            message: format!(
                "zero count differs from Betti number: {}",
                mismatches.join("; ")
            ),
        });
    }
    for m in &mismatches {
        eprintln!("warning: zero count differs from Betti number: {m}");
    }
    Ok(())
}

fn spectra(args: &RunArgs) -> Outcome {
    let dims = dims(args)?;
    let config = config(args)?;
    let (g, steps) = single_digraph(args)?;
    let reports = analyze(&g, &dims, &config)?;
    check_nullity(
        args,
        reports.iter().filter(|r| r.nullity_mismatch()).map(|r| {
            format!(
                "n={} betti {} zero count {}",
                r.dimension, r.betti, r.spectrum.zero_count
            )
        }),
    )?;
    Ok(render::spectra(
        args.output.unwrap_or(OutputFormat::Json),
        &g,
        &reports,
        steps.as_deref(),
    ))
}

fn persist(args: &RunArgs) -> Outcome {
    let dims = dims(args)?;
    let config = config(args)?;
    if args.reduce {
        return Err(Failure::usage(
            "--reduce is not supported for persist: removals do not commute with the filtration",
        ));
    }
    if args.grid.is_some_and(|k| k < 2) {
        return Err(Failure::usage("--grid needs at least 2 points"));
    }
    let g = load(args)?;
    let result = sweep(&g, &dims, args.keep_isolated, &config)?;
    check_nullity(
        args,
        result
            .reports
            .iter()
            .flatten()
            .filter(|r| r.laplacian.nullity_mismatch())
            .map(|r| {
                format!(
                    "delta={} n={} betti {} zero count {}",
                    r.s,
                    r.dimension(),
                    r.betti(),
                    r.laplacian.spectrum.zero_count
                )
            }),
    )?;
    Ok(render::persist(
        args.output.unwrap_or(OutputFormat::Csv),
        &result,
        args.grid,
    ))
}

fn info(args: &RunArgs) -> Outcome {
    let dims = dims(args)?;
    let config = config(args)?;
    let (g, steps) = single_digraph(args)?;
    let rows = dims
        .iter()
        .map(|&n| {
            let omega = omega_basis(&g, n, &config.paths)?;
            Ok(render::InfoRow {
                dimension: n,
                allowed_paths: omega.ambient().len(),
                omega_dim: omega.len(),
            })
        })
        .collect::<pathlap::Result<Vec<_>>>()?;
    Ok(render::info(
        args.output.unwrap_or(OutputFormat::Json),
        &g,
        &rows,
        steps.as_deref(),
    ))
}
