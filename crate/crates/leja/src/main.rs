use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use leja::commands::{CheckParams, Claim, Family, GenSequence, GridParams, NodeFamilyParams};
use leja::config::{ExperimentConfig, Params};
use leja::experiments::{default_ks, ConvergeFamily, ConvergeParams, GrowthParams, TestFunction};
use leja::report::{self, Format};

#[derive(Parser)]
#[command(name = "leja", version, about = "Leja sequences, their real projections, and Lebesgue constants")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = leja_core::checks::DEFAULT_SEED)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "LEJA_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Leja sequence on the unit disk as exact dyadic angles.
    GenLeja(SeqArgs),
    /// ℜ-Leja sequence (distinct real parts in order of appearance).
    GenRleja(SeqArgs),
    /// A node family on [-1, 1].
    GenNodes(FamilyArgs),
    /// Intertwined grid P_k as a list of (alpha, point).
    GenGrid(GridArgs),
    /// Lebesgue constant of a node family.
    Lebesgue1d(FamilyArgs),
    /// Lebesgue constant of an intertwined grid.
    LebesgueNd(GridArgs),
    /// Numeric check of one claim; exits nonzero when it fails.
    Check(CheckArgs),
    /// Lebesgue constant growth table and log-log plot.
    Growth(GrowthArgs),
    /// Interpolation error against k for a test function.
    Converge(ConvergeArgs),
}

#[derive(Args)]
struct SeqArgs {
    #[arg(long)]
    count: usize,
    /// Draw the rotations from the seed.
    #[arg(long)]
    random_rho: bool,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    degree: usize,
    /// Shift in turns for modcheb, e.g. 1/2^5.
    #[arg(long)]
    beta: Option<String>,
    /// Samples per gap.
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    degree: usize,
    /// Samples per axis.
    #[arg(long, default_value_t = 65)]
    samples: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    claim: Claim,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    d_max: Option<usize>,
    #[arg(long)]
    betas: Option<usize>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(long)]
    max_k: usize,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    random_rho: bool,
    /// Where to write the plot; defaults to the output path with an .svg
    /// extension. Ignored with --format svg.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long, value_enum)]
    function: TestFunction,
    #[arg(long, value_enum, default_value = "rleja")]
    family: ConvergeFamily,
    #[arg(long, value_delimiter = ',', default_values_t = default_ks())]
    ks: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
}

fn config<P: Params>(name: &str, seed: u64, p: P) -> Result<ExperimentConfig> {
    ExperimentConfig::new(name, seed, &p)
}

fn build(cli: &Cli) -> Result<(ExperimentConfig, Option<PathBuf>)> {
    let seed = cli.common.seed;
    let mut plot = None;
    let cfg = match &cli.command {
        Command::GenLeja(a) => config("gen-leja", seed, GenSequence { count: a.count, random_rho: a.random_rho })?,
        Command::GenRleja(a) => config("gen-rleja", seed, GenSequence { count: a.count, random_rho: a.random_rho })?,
        Command::GenNodes(a) | Command::Lebesgue1d(a) => {
            let name = if matches!(cli.command, Command::GenNodes(_)) { "gen-nodes" } else { "lebesgue1d" };
            config(
                name,
                seed,
                NodeFamilyParams { family: a.family, degree: a.degree, beta: a.beta.clone(), samples: a.samples },
            )?
        }
        Command::GenGrid(a) | Command::LebesgueNd(a) => {
            let name = if matches!(cli.command, Command::GenGrid(_)) { "gen-grid" } else { "lebesgue-nd" };
            config(name, seed, GridParams { dim: a.dim, degree: a.degree, samples: a.samples })?
        }
        Command::Check(a) => config(
            "check",
            seed,
            CheckParams {
                claim: a.claim,
                trials: a.trials,
                grid: a.grid,
                d_max: a.d_max,
                betas: a.betas,
                n_max: a.n_max,
                k_max: a.k_max,
                samples: a.samples,
            },
        )?,
        Command::Growth(a) => {
            plot = a.plot.clone().or_else(|| cli.common.out.as_ref().map(|o| o.with_extension("svg")));
            config(
                "growth",
                seed,
                GrowthParams { max_k: a.max_k, dim: a.dim, samples: a.samples, random_rho: a.random_rho },
            )?
        }
        Command::Converge(a) => config(
            "converge",
            seed,
            ConvergeParams { function: a.function, family: a.family, ks: a.ks.clone(), grid: a.grid },
        )?,
    };
    Ok((cfg, plot))
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if cli.common.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.common.threads).build_global()?;
    }
    let (cfg, plot) = build(&cli)?;
    cfg.validate()?;
    let out = cfg.run()?;
    let body = match cli.common.format {
        Format::Csv => {
            let mut buf = Vec::new();
            report::write_csv(&out.table, &mut buf)?;
            buf
        }
        Format::Json => {
            let (k, v) = out.extra.clone().unzip();
            let mut buf = serde_json::to_vec_pretty(&report::to_json(&out.table, &cfg.meta(), k.as_deref().zip(v)))?;
            buf.push(b'\n');
            buf
        }
        Format::Svg => match &out.svg {
            Some(s) => s.clone().into_bytes(),
            None => bail!("`{}` does not produce a plot", cfg.command),
        },
    };
    write_to(cli.common.out.as_deref(), &body)?;
    if cli.common.format != Format::Svg {
        if let (Some(svg), Some(path)) = (&out.svg, plot) {
            write_to(Some(&path), svg.as_bytes())?;
        }
    }
    Ok(out.passed.unwrap_or(true))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
