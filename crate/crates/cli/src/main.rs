//! `macx`: invariants of moment-angle complexes from the command line.

mod commands;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use macx_core::io::{parse_complex, ComplexDocument};
use macx_core::report::{InputInfo, ReportDocument, Timing};
use macx_core::store::{cache_key, ResultStore, CACHE_DIR_VAR};
use macx_core::tor::DEFAULT_SWEEP_LIMIT;
use macx_core::{Error, SimplicialComplex};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "macx",
    version,
    about = "Invariants of moment-angle complexes Z_K"
)]
struct Cli {
    /// Largest vertex count for sweeps over all vertex subsets.
    #[arg(long, global = true, default_value_t = DEFAULT_SWEEP_LIMIT)]
    limit: usize,
    /// Worker threads for subset sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Leave out timing so that repeated runs print identical bytes.
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector, dimension, neighbourliness and chordless cycles.
    Info { input: PathBuf },
    /// Reduced integral homology of K or of a full subcomplex.
    Homology {
        input: PathBuf,
        /// Comma-separated vertex labels.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Bigraded Betti numbers of Z_K from the Hochster decomposition.
    Betti { input: PathBuf },
    /// Cup length of H^*(Z_K).
    Cuplen {
        input: PathBuf,
        /// Show a longest nonzero product.
        #[arg(long)]
        witness: bool,
    },
    /// Length of a longest spherical filtration (spheres of dimension at most 2).
    Filt {
        input: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Bounds on the Lusternik-Schnirelmann category of Z_K, exact when decidable.
    Cat {
        input: PathBuf,
        /// Construction recipe (JSON) describing how K was built.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// The m for which K is m-Golod.
    Golod {
        input: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Yes/no properties of K.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Build a sphere from others; prints a complex document with its recipe.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Boundary of the dual of a simple 3-polytope given by its 2-faces.
    Dual { polytope: PathBuf },
    /// Independent cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Is K a triangulated sphere of dimension at most 2?
    Sphere { input: PathBuf },
    /// Does the 1-skeleton have no chordless cycle on 4 or more vertices?
    Chordal { input: PathBuf },
    /// Is every set of k vertices a face?
    Neighbourly { k: usize, input: PathBuf },
    /// Well-behavedness of a sphere of dimension at most 2.
    WellBehaved { input: PathBuf },
    /// Homology generated by minimal non-faces.
    Hmf { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Join of two or more spheres.
    Join {
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
    },
    /// Connected sum along a facet of each summand.
    Connsum {
        left: PathBuf,
        right: PathBuf,
        /// Facet of the left summand (default: its first facet).
        #[arg(long)]
        left_face: Option<String>,
        /// Facet of the right summand (default: its first facet).
        #[arg(long)]
        right_face: Option<String>,
    },
    /// Simplicial wedge K(J).
    Wedge {
        input: PathBuf,
        /// Comma-separated J, one entry per vertex, giving the total number of copies of
        /// that vertex: 1 leaves it alone, 2 doubles it.
        #[arg(long)]
        copies: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Tor ranks from the Koszul complex, compared with the Hochster sweep.
    Koszul { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::LimitExceeded { .. }) => 3,
        Some(Error::CrossCheckMismatch(_) | Error::InconsistentBounds { .. }) => 4,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring the worker pool")?;
    }
    if cli.limit > DEFAULT_SWEEP_LIMIT {
        eprintln!(
            "warning: sweep limit raised to {} (default {DEFAULT_SWEEP_LIMIT}); sweeps visit 2^n subsets",
            cli.limit
        );
    }
    match &cli.command {
        Command::Construct(c) => {
            let doc = match c {
                ConstructCommand::Join { inputs } => {
                    let docs = inputs
                        .iter()
                        .map(|p| load(p).map(|x| x.1))
                        .collect::<Result<Vec<_>>>()?;
                    commands::construct_join(&docs)?
                }
                ConstructCommand::Connsum {
                    left,
                    right,
                    left_face,
                    right_face,
                } => commands::construct_connsum(
                    &load(left)?.1,
                    &load(right)?.1,
                    left_face.as_deref(),
                    right_face.as_deref(),
                )?,
                ConstructCommand::Wedge { input, copies } => {
                    commands::construct_wedge(&load(input)?.1, copies)?
                }
            };
            print!("{}", doc.to_json());
            Ok(())
        }
        Command::Dual { polytope } => {
            print!("{}", commands::dual(&read(polytope)?)?.to_json());
            Ok(())
        }
        _ => analyze(cli),
    }
}

/// Commands that compute something about one complex, served through the cache.
fn analyze(cli: &Cli) -> Result<()> {
    use serde_json::json;
    let limit = cli.limit;
    let (name, input, params): (&str, &Path, Value) = match &cli.command {
        Command::Info { input } => ("info", input, json!({})),
        Command::Homology { input, subset } => ("homology", input, json!({ "subset": subset })),
        Command::Betti { input } => ("betti", input, json!({ "limit": limit })),
        Command::Cuplen { input, witness } => (
            "cuplen",
            input,
            json!({ "limit": limit, "witness": witness }),
        ),
        Command::Filt { input, witness } => {
            ("filt", input, json!({ "limit": limit, "witness": witness }))
        }
        Command::Cat { input, .. } => ("cat", input, json!({ "limit": limit })),
        Command::Golod { input, .. } => ("golod", input, json!({ "limit": limit })),
        Command::Check(CheckCommand::Sphere { input }) => ("check sphere", input, json!({})),
        Command::Check(CheckCommand::Chordal { input }) => ("check chordal", input, json!({})),
        Command::Check(CheckCommand::Neighbourly { k, input }) => {
            ("check neighbourly", input, json!({ "k": k }))
        }
        Command::Check(CheckCommand::WellBehaved { input }) => {
            ("check well-behaved", input, json!({ "limit": limit }))
        }
        Command::Check(CheckCommand::Hmf { input }) => {
            ("check hmf", input, json!({ "limit": limit }))
        }
        Command::Oracle(OracleCommand::Koszul { input }) => {
            ("oracle koszul", input, json!({ "limit": limit }))
        }
        Command::Construct(_) | Command::Dual { .. } => unreachable!("handled in run"),
    };
    let (k, mut doc) = load(input)?;
    let mut params = params;
    if let Command::Cat {
        certificate: Some(path),
        ..
    }
    | Command::Golod {
        certificate: Some(path),
        ..
    } = &cli.command
    {
        let text = read(path)?;
        doc.certificate = Some(
            serde_json::from_str(&text)
                .with_context(|| format!("reading certificate {}", path.display()))?,
        );
    }
    if let Some(c) = &doc.certificate {
        params["certificate"] = serde_json::to_value(c)?;
    }
    let info = InputInfo {
        name: doc.name.clone(),
        n: k.n(),
        hash: k.content_hash(),
    };

    let compute = || -> macx_core::Result<ReportDocument> {
        let (result, table) = commands::compute(name, &cli_args(cli), &k, &doc, limit)?;
        Ok(ReportDocument::new(name, Some(info.clone()), params.clone(), result).with_table(table))
    };

    let start = Instant::now();
    let store = if cli.no_cache {
        None
    } else {
        cache_dir().map(ResultStore::new)
    };
    let (mut report, cached) = match &store {
        Some(store) => {
            let key = cache_key(&doc, name, &params)?;
            match store.load(&key) {
                Ok(Some(hit)) => (hit, true),
                Ok(None) | Err(Error::CorruptCacheEntry(_)) => {
                    let report = compute()?;
                    if let Err(e) = store.store(&key, &report) {
                        eprintln!("warning: could not write cache entry: {e}");
                    }
                    (report, false)
                }
                Err(e) => {
                    eprintln!("warning: could not read cache entry: {e}");
                    (compute()?, false)
                }
            }
        }
        None => (compute()?, false),
    };
    if !cli.deterministic {
        report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
            cached,
        });
    }
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

/// Per-command options the computation needs beyond the complex.
fn cli_args(cli: &Cli) -> commands::Args {
    let mut args = commands::Args::default();
    match &cli.command {
        Command::Homology { subset, .. } => args.subset = subset.clone(),
        Command::Cuplen { witness, .. } | Command::Filt { witness, .. } => args.witness = *witness,
        Command::Check(CheckCommand::Neighbourly { k, .. }) => args.k = *k,
        _ => {}
    }
    args
}

fn cache_dir() -> Option<PathBuf> {
    match std::env::var_os(CACHE_DIR_VAR) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => dirs::cache_dir().map(|d| d.join("macx")),
    }
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).context("reading standard input");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<(SimplicialComplex, ComplexDocument)> {
    let text = read(path)?;
    let (k, mut doc) =
        parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?;
    if doc.name.is_none() && path != Path::new("-") {
        doc.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok((k, doc))
}
