//! Command-line front end.
//!
//! Exit codes: 0 on success (and on a passing claim), 1 when a verified claim
//! fails with counterexamples, 2 on usage or input errors.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use semidom::families::{self, FamilyId};
use semidom::format;
use semidom::graph::{Edge, Graph};
use semidom::solver::{self, DominationVariant};
use semidom::verify::{self, ClaimId, Verdict, VerifyOptions};
use serde::Serialize;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Recognition is served from a generated catalog, so cap the input order.
const RECOGNITION_CAP: usize = 16;

#[derive(Parser)]
#[command(
    name = "semidom",
    about = "Domination, total domination, and semitotal domination of small graphs: \
             exact values, multisubdivision numbers, labeled tree families, and claim verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Gamma,
    #[value(name = "gamma-t")]
    GammaT,
    #[value(name = "gamma-t2")]
    GammaT2,
}

impl Param {
    fn variant(self) -> DominationVariant {
        match self {
            Param::Gamma => DominationVariant::Plain,
            Param::GammaT => DominationVariant::Total,
            Param::GammaT2 => DominationVariant::Semitotal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    U,
    T,
    T1,
}

impl FamilyArg {
    fn id(self) -> FamilyId {
        match self {
            FamilyArg::U => FamilyId::U,
            FamilyArg::T => FamilyId::T,
            FamilyArg::T1 => FamilyId::T1,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a domination parameter of each input graph
    Compute {
        /// Which parameter to compute
        #[arg(long, value_enum)]
        param: Param,
        /// Input file (`-` for stdin)
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
    /// Compute the semitotal domination multisubdivision number
    Msd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Largest subdivision count to try
        #[arg(long, default_value_t = semidom::DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Subdivide one edge and print the resulting graph
    Subdivide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Edge to subdivide, as `u,v`
        #[arg(long)]
        edge: String,
        /// Number of fresh vertices to insert
        #[arg(long)]
        times: usize,
    },
    /// Generate a labeled tree family up to an order bound
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max_n: usize,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether each input tree carries a labeling in a family
    Recognize {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
    /// Minimum almost semitotal dominating set relative to a vertex
    AlmostSds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// The vertex exempt from the distance-two partner requirement
        #[arg(long)]
        vertex: usize,
    },
    /// Run one registered claim check (or `all`)
    Verify {
        /// Claim id such as `thm2.4`, or `all`
        #[arg(long)]
        claim: String,
        /// Override the claim's default order bound
        #[arg(long)]
        max_n: Option<usize>,
        /// graph6 stream with extra instances for general-graph claims
        #[arg(long)]
        graphs: Option<PathBuf>,
        /// Worker threads (the SEMIDOM_JOBS environment variable wins)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Parses the input into one graph per record: a single edge-list document,
/// or one graph per graph6 line.
fn load_graphs(path: &Path, format: Format) -> Result<Vec<Graph>> {
    let text = read_input(path)?;
    match format {
        Format::Edgelist => Ok(vec![format::parse_edgelist(&text)?]),
        Format::Graph6 => Ok(format::parse_graph6_stream(&text)?),
    }
}

fn write_graph(g: &Graph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Edgelist => format::write_edgelist(g).trim_end().to_string(),
        Format::Graph6 => format::encode_graph6(g)?,
    })
}

#[derive(Serialize)]
struct AlmostReport<'a> {
    param: &'a str,
    vertex: usize,
    value: usize,
    witness: &'a [usize],
    explored: u64,
}

#[derive(Serialize)]
struct RecognizeReport<'a> {
    family: &'a str,
    member: Option<RecognizedMember>,
}

#[derive(Serialize)]
struct RecognizedMember {
    order: usize,
    canonical_code: String,
    status_string: String,
    derivation: String,
}

fn jobs_from_env_or_flag(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var("SEMIDOM_JOBS") {
        Ok(v) => {
            let parsed = v
                .parse::<usize>()
                .map_err(|_| anyhow!("SEMIDOM_JOBS must be a positive integer, got `{v}`"))?;
            Ok(Some(parsed))
        }
        Err(_) => Ok(flag),
    }
}

#[cfg(feature = "parallel")]
fn configure_pool(jobs: Option<usize>) -> Result<()> {
    if let Some(threads) = jobs {
        if threads == 0 {
            return Err(anyhow!("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_pool(_jobs: Option<usize>) -> Result<()> {
    Ok(())
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            param,
            input,
            format,
        } => {
            for g in load_graphs(&input, format)? {
                let result = solver::min_set(&g, param.variant())?;
                println!("{}", format::to_json(&result));
            }
            Ok(0)
        }
        Command::Msd {
            input,
            format,
            k_max,
        } => {
            if k_max == 0 {
                return Err(anyhow!("--k-max must be at least 1"));
            }
            for g in load_graphs(&input, format)? {
                let result = semidom::msd_semitotal(&g, k_max)?;
                println!("{}", format::to_json(&result));
            }
            Ok(0)
        }
        Command::Subdivide {
            input,
            format,
            edge,
            times,
        } => {
            let (u, v) = edge
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| anyhow!("--edge expects `u,v`, got `{edge}`"))?;
            let e = Edge::new(u, v)?;
            for g in load_graphs(&input, format)? {
                let subdivided = g.subdivide_edge(e, times)?;
                println!("{}", write_graph(&subdivided, format)?);
            }
            Ok(0)
        }
        Command::Generate { family, max_n, out } => {
            let catalog = families::generate_family(family.id(), max_n);
            let tsv = format::catalog_tsv(&catalog);
            match out {
                Some(path) => std::fs::write(&path, tsv)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{tsv}"),
            }
            Ok(0)
        }
        Command::Recognize {
            family,
            input,
            format: fmt,
        } => {
            for g in load_graphs(&input, fmt)? {
                let found = families::recognize(family.id(), &g, RECOGNITION_CAP)?;
                let member = found.map(|(labeled, derivation)| RecognizedMember {
                    order: labeled.order(),
                    canonical_code: semidom::canonical_code(labeled.graph())
                        .expect("recognized members are trees")
                        .to_string(),
                    status_string: labeled.status_string(),
                    derivation: derivation.to_compact(),
                });
                let report = RecognizeReport {
                    family: family.id().as_str(),
                    member,
                };
                println!("{}", format::to_json(&report));
            }
            Ok(0)
        }
        Command::AlmostSds {
            input,
            format,
            vertex,
        } => {
            for g in load_graphs(&input, format)? {
                let result = solver::min_almost_semitotal(&g, vertex)?;
                let report = AlmostReport {
                    param: result.variant.as_str(),
                    vertex,
                    value: result.value,
                    witness: &result.witness,
                    explored: result.explored,
                };
                println!("{}", format::to_json(&report));
            }
            Ok(0)
        }
        Command::Verify {
            claim,
            max_n,
            graphs,
            jobs,
        } => {
            configure_pool(jobs_from_env_or_flag(jobs)?)?;
            let external_graphs = match graphs {
                Some(path) => {
                    let text = read_input(&path)?;
                    format::parse_graph6_stream(&text)?
                }
                None => Vec::new(),
            };
            let opts = VerifyOptions {
                max_n,
                external_graphs,
                counterexample_cap: None,
            };
            let claims: Vec<ClaimId> = if claim == "all" {
                ClaimId::ALL.to_vec()
            } else {
                vec![claim.parse::<ClaimId>()?]
            };
            let mut any_failed = false;
            for claim in claims {
                let report = verify::run_verification(claim, &opts)?;
                println!("{}", format::to_json(&report));
                any_failed |= report.verdict == Verdict::Fail;
            }
            Ok(if any_failed { 1 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
