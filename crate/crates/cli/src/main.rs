use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use charpoly::factor::{conjecture_sum, topfact_mu};
use charpoly::perm::Partition;
use charpoly::polyring::PolyRepr;
use charpoly::trees::enumerate_trees;
use charpoly::{Integer, QPoly, QSeries};
use charpoly_cli::cache::{DEFAULT_DIR, ENV_VAR};
use charpoly_cli::{verify, Cache, CliError, Params, ReportSet, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "charpoly",
    version,
    about = "Stanley character polynomials and coloured top factorizations"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock times in verification reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Directory for cached polynomials.
    #[arg(long, global = true, env = ENV_VAR, default_value = DEFAULT_DIR)]
    cache_dir: PathBuf,
    /// Compute everything afresh and write nothing to disk.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// F_k by the residue formula.
    Fk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// F_μ by interpolation of characters.
    Fmu {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long)]
        m: usize,
    },
    /// Sums over coloured factorizations of ω_k or ω_μ.
    #[command(group(ArgGroup::new("target").required(true).args(["k", "mu"])))]
    Topfact {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_partition)]
        mu: Option<Partition>,
        #[arg(long)]
        m: usize,
        /// Sum over every coloured permutation, not only the top ones.
        #[arg(long)]
        full: bool,
    },
    /// Coloured plane trees.
    Trees {
        #[command(subcommand)]
        command: TreesCommand,
    },
    /// Machine checks of the identities.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enumerate,
    Recursion,
}

#[derive(Subcommand)]
enum TreesCommand {
    /// The tree series T(x).
    Series {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "enumerate")]
        method: Method,
    },
    /// Graphviz rendering of one coloured edge-rooted tree.
    Dot {
        #[arg(long)]
        k: usize,
        /// Position in the enumeration order.
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Top-degree terms of F_k against TopFact, and the series identity.
    Theorem1 {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        m: usize,
    },
    /// Product formula for every μ ⊢ k.
    Corollary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Residuals of the planted-tree lemmas.
    Lemmas {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Full coloured sums against F_μ for every μ ⊢ k.
    Conjecture {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Residue, interpolation and characters on a grid of shapes.
    Characters {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        grid: usize,
    },
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: charpoly::Error| e.to_string())
}

#[derive(Serialize)]
struct PolyOutput<'a> {
    schema_version: u32,
    command: &'a str,
    params: Params,
    text: String,
    polynomial: PolyRepr,
}

#[derive(Serialize)]
struct SeriesOutput<'a> {
    schema_version: u32,
    command: &'a str,
    params: Params,
    text: String,
    coefficients: Vec<PolyRepr>,
}

fn emit_poly(json: bool, command: &str, params: Params, p: &QPoly) {
    if json {
        let out = PolyOutput {
            schema_version: SCHEMA_VERSION,
            command,
            params,
            text: p.to_string(),
            polynomial: p.to_repr(),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!("{p}");
    }
}

fn emit_series(json: bool, command: &str, params: Params, s: &QSeries) {
    if json {
        let out = SeriesOutput {
            schema_version: SCHEMA_VERSION,
            command,
            params,
            text: s.to_string(),
            coefficients: s.coeffs().iter().map(QPoly::to_repr).collect(),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!("{s}");
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::at(&cli.cache_dir)
    };
    let json = cli.json;
    match cli.command {
        Command::Fk { k, m } => {
            emit_poly(json, "fk", Params::km(k, m), &verify::fk(k, m, &cache)?);
        }
        Command::Fmu { mu, m } => {
            let params = Params {
                mu: Some(mu.to_string()),
                m: Some(m),
                ..Params::default()
            };
            emit_poly(json, "fmu", params, &verify::fmu(&mu, m, &cache)?);
        }
        Command::Topfact { k, mu, m, full } => {
            let mu = match (k, mu) {
                (Some(k), None) => Partition::new(vec![k])?,
                (None, Some(mu)) => mu,
                _ => return Err(CliError::Usage("give exactly one of --k and --mu".into())),
            };
            let p = if full {
                conjecture_sum::<Integer>(&mu, m)?
            } else {
                topfact_mu::<Integer>(&mu, m)?
            };
            let params = Params {
                k: Some(mu.size()),
                mu: Some(mu.to_string()),
                m: Some(m),
                ..Params::default()
            };
            emit_poly(json, "topfact", params, &p.to_rational());
        }
        Command::Trees { command } => match command {
            TreesCommand::Series { m, order, method } => {
                let s = verify::tree_series(m, order, matches!(method, Method::Recursion))?;
                let params = Params {
                    m: Some(m),
                    order: Some(order),
                    ..Params::default()
                };
                emit_series(json, "trees-series", params, &s);
            }
            TreesCommand::Dot { k, index, m } => {
                let trees = enumerate_trees(k, m)?;
                let count = trees.len();
                let t = trees.into_iter().nth(index).ok_or_else(|| {
                    CliError::Usage(format!("index {index} out of range: {count} trees"))
                })?;
                print!("{}", t.to_dot());
            }
        },
        Command::Verify { command } => {
            let reports = match command {
                VerifyCommand::Theorem1 { kmax, m } => verify::theorem1(kmax, m, &cache)?,
                VerifyCommand::Corollary { k, m } => verify::corollary(k, m)?,
                VerifyCommand::Lemmas { m, order } => verify::lemmas(m, order)?,
                VerifyCommand::Conjecture { k, m } => verify::conjecture(k, m, &cache)?,
                VerifyCommand::Characters { k, m, grid } => verify::characters(k, m, grid, &cache)?,
            };
            let mut set = ReportSet::new(reports);
            if !cli.timing {
                for r in &mut set.reports {
                    r.wall_time_ms = None;
                }
            }
            if json {
                println!("{}", set.to_json());
            } else {
                println!("{set}");
            }
            return Ok(set.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
