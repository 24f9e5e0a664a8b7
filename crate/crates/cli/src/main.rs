//! `fuzzy-placer`: score storage resources with the Mamdani rulebase,
//! pick placement targets, run cluster simulations, and export membership
//! curves for plotting.
//!
//! Exit codes are a stable contract: 0 success, 2 input error (bad
//! arguments, unreadable or invalid files), 3 domain error (a selection
//! that cannot be made, e.g. every score is zero).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzy_placer::inventory::load_inventory;
use fuzzy_placer::resource::{
    default_rulebase, score_all, validate_placement_rulebase, ResourceMetrics,
};
use fuzzy_placer::rules::RuleBase;
use fuzzy_placer::selector::{normalize, select_argmax, RngSeed, SelectError};
use fuzzy_placer::simulator::{run, ClusterState, SimError, SimResource, Strategy};

const EXIT_INPUT: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "fuzzy-placer", version, about)]
struct Cli {
    /// Rulebase document to load; absent files fall back to the built-in
    /// defaults
    #[arg(long, global = true, env = "FUZZY_PLACER_RULEBASE", value_name = "PATH")]
    rulebase: Option<PathBuf>,

    /// Ignore --rulebase and the environment; use the built-in defaults
    #[arg(long, global = true)]
    defaults: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one resource from its crisp metrics and print p
    Evaluate {
        /// Access speed in Mb/s (>= 0)
        #[arg(long)]
        speed: f64,
        /// Uptime percentage in [0, 100]
        #[arg(long)]
        reliability: f64,
        /// Percentage of stored information already on the resource, in [0, 100]
        #[arg(long)]
        concentration: f64,
    },
    /// Pick a resource from an inventory file and print its id
    Select {
        /// Inventory file (header: id,speed_mbs,reliability_pct,concentration_pct)
        #[arg(long, value_name = "PATH")]
        inventory: PathBuf,
        /// argmax or sample (the baselines are simulate-only)
        #[arg(long)]
        strategy: StrategyArg,
        /// Seed for the sample strategy (draw index 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Also print an id,p,weight table before the chosen id
        #[arg(long)]
        verbose: bool,
    },
    /// Place a chunk workload with a strategy and report the distribution
    Simulate {
        /// Inventory file; concentrations are derived from placements, so
        /// the concentration_pct column is ignored here
        #[arg(long, value_name = "PATH")]
        inventory: PathBuf,
        #[arg(long)]
        strategy: StrategyArg,
        /// Number of chunks to place
        #[arg(long)]
        chunks: u64,
        /// Seed for the sample strategy (step k uses draw index k)
        #[arg(long)]
        seed: u64,
        /// Write the report here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Record a trace row per placement in the report
        #[arg(long)]
        verbose: bool,
    },
    /// Export a variable's membership curves as CSV for plotting
    Plot {
        /// Variable name (an input or the output)
        #[arg(long)]
        variable: String,
        /// Output CSV path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Argmax,
    Sample,
    RoundRobin,
    AlwaysFirst,
}

impl StrategyArg {
    fn to_strategy(self) -> Strategy {
        match self {
            StrategyArg::Argmax => Strategy::FuzzyArgmax,
            StrategyArg::Sample => Strategy::FuzzySample,
            StrategyArg::RoundRobin => Strategy::RoundRobin,
            StrategyArg::AlwaysFirst => Strategy::AlwaysFirst,
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_INPUT, message: message.into() }
}

fn domain_error(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_DOMAIN, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let rb = resolve_rulebase(cli.defaults, cli.rulebase.as_deref())?;
    match cli.command {
        Command::Evaluate { speed, reliability, concentration } => {
            cmd_evaluate(&rb, speed, reliability, concentration)
        }
        Command::Select { inventory, strategy, seed, verbose } => {
            cmd_select(&rb, &inventory, strategy, seed, verbose)
        }
        Command::Simulate { inventory, strategy, chunks, seed, out, verbose } => {
            cmd_simulate(&rb, &inventory, strategy, chunks, seed, out.as_deref(), verbose)
        }
        Command::Plot { variable, out } => cmd_plot(&rb, &variable, &out),
    }
}

fn resolve_rulebase(
    defaults: bool,
    path: Option<&std::path::Path>,
) -> Result<RuleBase, CliError> {
    let rb = match (defaults, path) {
        (true, _) | (false, None) => default_rulebase(),
        (false, Some(path)) => {
            fuzzy_placer::document::load_rulebase(path).map_err(|e| input_error(e.to_string()))?
        }
    };
    validate_placement_rulebase(&rb).map_err(|e| {
        input_error(format!("rulebase is not usable for resource scoring: {e}"))
    })?;
    Ok(rb)
}

fn cmd_evaluate(
    rb: &RuleBase,
    speed: f64,
    reliability: f64,
    concentration: f64,
) -> Result<(), CliError> {
    let metrics = ResourceMetrics::new(speed, reliability, concentration)
        .map_err(|e| input_error(e.to_string()))?;
    let p = fuzzy_placer::resource::resource_probability(&metrics, rb);
    println!("{p:.6}");
    Ok(())
}

fn load_rows(path: &std::path::Path) -> Result<Vec<(String, ResourceMetrics)>, CliError> {
    let rows = load_inventory(path).map_err(|e| input_error(e.to_string()))?;
    if rows.is_empty() {
        return Err(input_error(format!("inventory {} has no resources", path.display())));
    }
    Ok(rows)
}

fn cmd_select(
    rb: &RuleBase,
    inventory: &std::path::Path,
    strategy: StrategyArg,
    seed: Option<u64>,
    verbose: bool,
) -> Result<(), CliError> {
    let rows = load_rows(inventory)?;
    let scores = score_all(&rows, rb).map_err(|e| input_error(e.to_string()))?;

    let chosen = match strategy {
        StrategyArg::Argmax => select_argmax(&scores)
            .map_err(|e| domain_error(e.to_string()))?
            .to_string(),
        StrategyArg::Sample => {
            let seed =
                seed.ok_or_else(|| input_error("--seed is required for the sample strategy"))?;
            let dist = normalize(&scores).map_err(|e| match e {
                SelectError::ZeroMass | SelectError::NegativeScore { .. } => {
                    domain_error(e.to_string())
                }
                other => input_error(other.to_string()),
            })?;
            dist.sample(RngSeed(seed), 0).to_string()
        }
        StrategyArg::RoundRobin | StrategyArg::AlwaysFirst => {
            return Err(input_error(
                "select supports only the argmax and sample strategies",
            ));
        }
    };

    if verbose {
        let weights = normalize(&scores).ok();
        println!("id,p,weight");
        for (i, score) in scores.iter().enumerate() {
            let weight = match &weights {
                Some(dist) => format!("{:.6}", dist.weights()[i]),
                None => "-".to_string(),
            };
            println!("{},{:.6},{}", score.resource_id, score.p, weight);
        }
    }
    println!("{chosen}");
    Ok(())
}

fn cmd_simulate(
    rb: &RuleBase,
    inventory: &std::path::Path,
    strategy: StrategyArg,
    chunks: u64,
    seed: u64,
    out: Option<&std::path::Path>,
    verbose: bool,
) -> Result<(), CliError> {
    let rows = load_rows(inventory)?;
    let resources = rows
        .into_iter()
        .map(|(id, m)| SimResource::new(id, m.speed, m.reliability))
        .collect();
    let state = ClusterState::new(resources).map_err(|e| input_error(e.to_string()))?;

    let report = run(&state, strategy.to_strategy(), rb, RngSeed(seed), chunks, verbose)
        .map_err(|e| match e {
            SimError::NegativeScore { .. } => domain_error(e.to_string()),
            other => input_error(other.to_string()),
        })?;

    let rendered = report.render();
    match out {
        Some(path) => std::fs::write(path, &rendered).map_err(|e| {
            input_error(format!("cannot write report {}: {e}", path.display()))
        })?,
        None => print!("{rendered}"),
    }
    match &report.shares {
        Some(s) => println!("max_share {:.6} min_share {:.6}", s.max_share, s.min_share),
        None => println!("shares undefined"),
    }
    Ok(())
}

fn cmd_plot(rb: &RuleBase, variable: &str, out: &std::path::Path) -> Result<(), CliError> {
    const SAMPLES: usize = 201;
    let var = rb
        .variable(variable)
        .ok_or_else(|| input_error(format!("unknown variable {variable:?}")))?;
    let universe = var.universe();

    // 201 uniform samples plus every term breakpoint, deduplicated
    let mut xs: Vec<f64> = (0..SAMPLES)
        .map(|i| {
            universe.min() + (universe.max() - universe.min()) * i as f64 / (SAMPLES - 1) as f64
        })
        .collect();
    for (_, mf) in var.terms() {
        xs.extend(mf.breakpoints().iter().map(|&(x, _)| x));
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|next, kept| (*next - *kept).abs() <= 1e-12);

    let mut csv = String::from("x");
    for (term, _) in var.terms() {
        let _ = write!(csv, ",{term}");
    }
    csv.push('\n');
    for &x in &xs {
        let _ = write!(csv, "{x:.6}");
        for (_, mf) in var.terms() {
            let _ = write!(csv, ",{:.6}", mf.degree(x));
        }
        csv.push('\n');
    }

    std::fs::write(out, csv)
        .map_err(|e| input_error(format!("cannot write curve file {}: {e}", out.display())))?;
    Ok(())
}
