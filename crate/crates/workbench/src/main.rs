use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homonym_core::cluster::Algorithm;
use homonym_core::dimred::ProjectionMethod;
use homonym_workbench::{cmd_plot, cmd_prepare, cmd_run, RunConfig, WorkbenchError};

#[derive(Parser)]
#[command(
    name = "homonym",
    version,
    about = "Cluster per-sense embeddings and score them against homonym groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve homonym groups and write per-word instance files.
    Prepare(PrepareArgs),
    /// Average, cluster, project, evaluate and plot every prepared word.
    Run(RunArgs),
    /// Re-render the plots recorded in a report.
    Plot(PlotArgs),
}

#[derive(Args)]
struct Common {
    /// TOML or JSON configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PrepareArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    inventory: Option<PathBuf>,
    /// Context tokens kept on each side of the target.
    #[arg(long)]
    radius: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    prepared: Option<PathBuf>,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    #[arg(long, value_delimiter = ',')]
    projections: Option<Vec<ProjectionMethod>>,
    #[arg(long, conflicts_with = "ward_threshold")]
    ward_k: Option<usize>,
    #[arg(long)]
    ward_threshold: Option<f64>,
    #[arg(long)]
    bandwidth: Option<f64>,
    #[arg(long)]
    quantile: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    min_samples: Option<usize>,
    #[arg(long)]
    perplexity: Option<f64>,
    #[arg(long)]
    tsne_iter: Option<usize>,
    #[arg(long)]
    mds_iter: Option<usize>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    report: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn base_config(common: &Common) -> Result<RunConfig, WorkbenchError> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out = Some(out.clone());
    }
    Ok(cfg)
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn execute(command: Command) -> Result<(), WorkbenchError> {
    match command {
        Command::Prepare(args) => {
            let mut cfg = base_config(&args.common)?;
            set(&mut cfg.corpus, args.corpus.map(Some));
            set(&mut cfg.sense_index, args.index.map(Some));
            set(&mut cfg.inventory, args.inventory.map(Some));
            set(&mut cfg.radius, args.radius);
            let manifest = cmd_prepare(&cfg)?;
            println!("prepared {} words", manifest.words.len());
        }
        Command::Run(args) => {
            let mut cfg = base_config(&args.common)?;
            set(&mut cfg.prepared, args.prepared.map(Some));
            set(&mut cfg.embeddings, args.embeddings.map(Some));
            set(&mut cfg.algorithms, args.algorithms);
            set(&mut cfg.projections, args.projections);
            if args.ward_k.is_some() || args.ward_threshold.is_some() {
                cfg.ward.k = args.ward_k;
                cfg.ward.distance_threshold = args.ward_threshold;
            }
            set(&mut cfg.meanshift.bandwidth, args.bandwidth.map(Some));
            set(&mut cfg.meanshift.quantile, args.quantile);
            set(&mut cfg.dbscan.eps, args.eps.map(Some));
            set(&mut cfg.dbscan.min_samples, args.min_samples);
            set(&mut cfg.tsne.perplexity, args.perplexity.map(Some));
            set(&mut cfg.tsne.max_iter, args.tsne_iter);
            set(&mut cfg.mds.max_iter, args.mds_iter);
            let report = cmd_run(&cfg)?;
            println!(
                "evaluated {} words, skipped {}",
                report.words.len(),
                report.skipped.len()
            );
        }
        Command::Plot(args) => {
            let written = cmd_plot(&args.report, &args.out)?;
            println!("wrote {} plots", written.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
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
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}
