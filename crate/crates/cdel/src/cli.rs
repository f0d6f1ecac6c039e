//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use cdel_core::generate::{erdos_renyi, theorem2_graph};
use cdel_core::pipeline::{Clock, LowerBound, Matcher, PipelineError, WedgeSource};
use cdel_core::stc_lp::{self, LpError, DEFAULT_ARC_BUDGET};
use cdel_core::{CdResult, Graph, PivotStrategy};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{read_graph, with_output, write_clustering, write_graph, write_lp, write_wedges, InputError};
use crate::stats::RunStats;

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_LP_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cdel", version, about = "Cluster deletion by wedge matching or STC LP rounding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a graph and report the result against its lower bound.
    Run(RunArgs),
    /// Print the wedge and LP lower bounds without clustering.
    Lb(LbArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Run every algorithm and strategy on one graph and print a CSV table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Mfp,
    Stclp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Degree,
    Ratio,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatcherArg {
    Simple,
    Fast,
}

impl From<MatcherArg> for Matcher {
    fn from(m: MatcherArg) -> Self {
        match m {
            MatcherArg::Simple => Matcher::Simple,
            MatcherArg::Fast => Matcher::Fast,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "mfp")]
    pub algo: AlgoArg,
    #[arg(long, value_enum, default_value = "degree")]
    pub strategy: StrategyArg,
    /// Wedge matcher; only meaningful with `--algo mfp`.
    #[arg(long, value_enum)]
    pub matcher: Option<MatcherArg>,
    /// Random pivot trials; the best is kept. Needs `--strategy random`.
    #[arg(long)]
    pub trials: Option<u32>,
    /// Seed of the first random trial; trial `i` uses `seed + i`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Merge clusters whose union is a clique.
    #[arg(long)]
    pub merge: bool,
    /// Wall-clock limit for merging, checked between passes.
    #[arg(long)]
    pub merge_budget_ms: Option<u64>,
    /// Largest cut network the LP may build.
    #[arg(long, default_value_t = DEFAULT_ARC_BUDGET)]
    pub lp_arc_budget: u64,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Clustering output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Also write the wedge set (`i j k` per line).
    #[arg(long)]
    pub wedges_out: Option<PathBuf>,
    /// Also write LP values (`u v half_units` per line).
    #[arg(long)]
    pub lp_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LbArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub matcher: MatcherArg,
    #[arg(long, default_value_t = DEFAULT_ARC_BUDGET)]
    pub lp_arc_budget: u64,
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("kind").required(true).args(["theorem2", "er"])))]
pub struct GenArgs {
    /// Tight instance on an even number of nodes, at least 8.
    #[arg(long, value_name = "N")]
    pub theorem2: Option<usize>,
    /// Erdős–Rényi G(n, p).
    #[arg(long, num_args = 2, value_names = ["N", "P"])]
    pub er: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ARC_BUDGET)]
    pub lp_arc_budget: u64,
}

struct WallClock(Instant);

impl Clock for WallClock {
    fn now_ms(&self) -> Option<f64> {
        Some(self.0.elapsed().as_secs_f64() * 1e3)
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    error: anyhow::Error,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: anyhow::anyhow!(msg.into()),
        }
    }

    fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_INPUT,
            error: error.into(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::input(e)
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::Lp(_) => EXIT_LP_BUDGET,
            PipelineError::InvalidWedgeSet => EXIT_USAGE,
        };
        Failure { code, error: e.into() }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(&a),
        Command::Lb(a) => cmd_lb(&a),
        Command::Gen(a) => cmd_gen(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}

fn strategy_of(arg: StrategyArg, seed: u64) -> PivotStrategy {
    match arg {
        StrategyArg::Degree => PivotStrategy::Degree,
        StrategyArg::Ratio => PivotStrategy::Ratio,
        StrategyArg::Random => PivotStrategy::Random { seed },
    }
}

fn check_run_flags(a: &RunArgs) -> Result<(), Failure> {
    if a.trials.is_some() && a.strategy != StrategyArg::Random {
        return Err(Failure::usage("--trials needs --strategy random"));
    }
    if a.trials == Some(0) {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if a.seed.is_some() && a.strategy != StrategyArg::Random {
        return Err(Failure::usage("--seed needs --strategy random"));
    }
    if a.merge_budget_ms.is_some() && !a.merge {
        return Err(Failure::usage("--merge-budget-ms needs --merge"));
    }
    if a.algo == AlgoArg::Stclp && a.matcher.is_some() {
        return Err(Failure::usage("--matcher only applies to --algo mfp"));
    }
    if a.algo == AlgoArg::Stclp && a.wedges_out.is_some() {
        return Err(Failure::usage("--wedges-out only applies to --algo mfp"));
    }
    if a.algo == AlgoArg::Mfp && a.lp_out.is_some() {
        return Err(Failure::usage("--lp-out only applies to --algo stclp"));
    }
    Ok(())
}

fn cmd_run(a: &RunArgs) -> Result<(), Failure> {
    check_run_flags(a)?;
    let clock = WallClock(Instant::now());
    let g = read_graph(&a.input)?;
    let bound = match a.algo {
        AlgoArg::Mfp => {
            let matcher = a.matcher.map(Matcher::from).unwrap_or_default();
            LowerBound::wedges(&g, WedgeSource::Matcher(matcher), &clock)?
        }
        AlgoArg::Stclp => LowerBound::stc_lp(&g, Some(a.lp_arc_budget), &clock)?,
    };

    let seed = (a.strategy == StrategyArg::Random).then(|| a.seed.unwrap_or(0));
    let mut mean = None;
    let mut result = match (a.strategy, a.trials) {
        (StrategyArg::Random, Some(t)) => {
            let trials = bound.best_of_random(&g, t, seed.unwrap_or(0), &clock);
            mean = Some(trials.mean_deletions);
            trials.best
        }
        (s, _) => bound.round(&g, strategy_of(s, seed.unwrap_or(0)), &clock),
    };
    if a.merge {
        let started = Instant::now();
        let budget = a.merge_budget_ms;
        let mut stop = |_passes: usize| budget.is_some_and(|ms| started.elapsed().as_millis() >= ms as u128);
        bound.merge(&g, &mut result, &mut stop, &clock);
    }
    let total = clock.now_ms();

    write_file(a.out.as_deref(), |w| write_clustering(&g, &result.clustering, w))?;
    if let (Some(path), Some(ws)) = (&a.wedges_out, &bound.wedge_set) {
        write_file(Some(path), |w| write_wedges(&g, ws, w))?;
    }
    if let (Some(path), Some(sol)) = (&a.lp_out, &bound.lp) {
        write_file(Some(path), |w| write_lp(&g, sol, w))?;
    }
    let stats = RunStats::new(&g, &result, seed, total);
    if let Some(path) = &a.stats {
        let json = stats.to_json() + "\n";
        std::fs::write(path, json)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::input)?;
    }
    eprintln!("{}", summary(&result, mean));
    Ok(())
}

fn summary(r: &CdResult, mean: Option<f64>) -> String {
    let ratio = r.ratio();
    let mut line = format!(
        "deletions={} lower_bound_half_units={} ratio={} clusters={}",
        r.deletions,
        r.lower_bound_half_units,
        ratio.as_f64().map_or("n/a".to_string(), |x| format!("{x:.4}")),
        r.clustering.len()
    );
    if let Some(m) = mean {
        line += &format!(" mean_deletions={m:.2}");
    }
    line
}

fn write_file<F>(path: Option<&Path>, f: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    with_output(path, f).map_err(|e| {
        let target = path.map_or("stdout".to_string(), |p| p.display().to_string());
        Failure::input(anyhow::Error::new(e).context(format!("cannot write {target}")))
    })
}

fn cmd_lb(a: &LbArgs) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    let ws = Matcher::from(a.matcher).run(&g);
    println!("wedges={}", ws.len());
    match stc_lp::solve_stc_lp_budgeted(&g, Some(a.lp_arc_budget)) {
        Ok(sol) => println!("lp_half_units={}", sol.objective_half_units),
        Err(LpError::OverBudget { arcs, budget }) => {
            eprintln!("warning: LP skipped, cut network needs {arcs} arcs (budget {budget})");
        }
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> Result<(), Failure> {
    let g: Graph = if let Some(n) = a.theorem2 {
        theorem2_graph(n).map_err(|e| Failure::usage(e.to_string()))?.graph
    } else {
        let er = a.er.as_ref().expect("argument group requires one kind");
        let n: usize = er[0].parse().map_err(|_| Failure::usage(format!("invalid node count {:?}", er[0])))?;
        let p: f64 = er[1].parse().map_err(|_| Failure::usage(format!("invalid probability {:?}", er[1])))?;
        erdos_renyi(n, p, a.seed).map_err(|e| Failure::usage(e.to_string()))?
    };
    write_file(a.out.as_deref(), |w| write_graph(&g, w))
}

fn cmd_bench(a: &BenchArgs) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    let mut bounds = Vec::new();
    let clock = WallClock(Instant::now());
    bounds.push(LowerBound::wedges(&g, WedgeSource::Matcher(Matcher::Fast), &clock)?);
    match LowerBound::stc_lp(&g, Some(a.lp_arc_budget), &clock) {
        Ok(b) => bounds.push(b),
        Err(e) => eprintln!("warning: {e}; skipping stclp rows"),
    }
    println!("algorithm,strategy,merged,deletions,lower_bound_half_units,ratio,weak_pct,mean_deletions,runtime_ms");
    for bound in &bounds {
        let bound_ms = bound.timings.matcher.or(bound.timings.lp).unwrap_or(0.0);
        for strategy in [StrategyArg::Degree, StrategyArg::Ratio, StrategyArg::Random] {
            let (result, mean) = match strategy {
                StrategyArg::Random => {
                    let t = bound.best_of_random(&g, a.trials, a.seed, &clock);
                    (t.best, Some(t.mean_deletions))
                }
                s => (bound.round(&g, strategy_of(s, a.seed), &clock), None),
            };
            let mut merged = result.clone();
            bound.merge(&g, &mut merged, &mut |_| false, &clock);
            for r in [&result, &merged] {
                let ms = bound_ms + r.timings.pivot.unwrap_or(0.0) + r.timings.merge.unwrap_or(0.0);
                let weak_pct = if g.m() == 0 { 0.0 } else { 100.0 * r.weak_edges() as f64 / g.m() as f64 };
                println!(
                    "{},{},{},{},{},{},{:.2},{},{:.3}",
                    r.algorithm.name(),
                    r.strategy.name(),
                    r.merged,
                    r.deletions,
                    r.lower_bound_half_units,
                    r.ratio().as_f64().map_or(String::new(), |x| format!("{x:.4}")),
                    weak_pct,
                    mean.map_or(String::new(), |m| format!("{m:.2}")),
                    ms
                );
            }
        }
    }
    Ok(())
}
