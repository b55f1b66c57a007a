use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fuzzy_mlp::bench::{
    convergence_gain, emit_reports, read_results, run_sweep, summarize, write_summary, SweepConfig, SweepRow,
    DEFAULT_ALPHAS, DEFAULT_REPEATS, DEFAULT_SEED,
};
use fuzzy_mlp::data::{self, Dataset, DatasetDescriptor};
use fuzzy_mlp::network::{NetworkShape, PatternOrder, DEFAULT_EPOCHS, DEFAULT_INIT_SCALE, DEFAULT_MU};
use fuzzy_mlp::{Error, Result};

#[derive(Parser)]
#[command(name = "bench", version, about = "MLP vs fuzzy-MLP learning-rate sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train both models over a learning-rate grid and write CSV reports.
    Run(RunArgs),
    /// Average the gains and times of every results_*.csv in a directory.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the convergence gain for a pair of minimum MSEs.
    Gain {
        #[arg(allow_negative_numbers = true)]
        mse_mlp: f64,
        #[arg(allow_negative_numbers = true)]
        mse_fuzzy: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Catalog name (iris, abalone, bcw, glass, soybean, wine) or path to a data file.
    /// May be repeated.
    #[arg(long, required = true)]
    dataset: Vec<String>,
    /// JSON dataset descriptor, for files that are not in the catalog.
    #[arg(long)]
    descriptor: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ALPHAS)]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[arg(long, default_value_t = DEFAULT_EPOCHS)]
    epochs: usize,
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Hidden units; defaults to ceil(3n/2).
    #[arg(long)]
    hidden: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_INIT_SCALE)]
    init_scale: f64,
    /// Pattern presentation order within each epoch.
    #[arg(long, value_enum, default_value_t = Order::Shuffled)]
    order: Order,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Stored,
    Shuffled,
}

impl From<Order> for PatternOrder {
    fn from(order: Order) -> Self {
        match order {
            Order::Stored => PatternOrder::Stored,
            Order::Shuffled => PatternOrder::Shuffled,
        }
    }
}

fn load_dataset(source: &str, descriptor: Option<&Path>) -> Result<Dataset> {
    if let Some(path) = descriptor {
        let descriptor = DatasetDescriptor::from_json_file(path)?;
        return data::load_csv(Path::new(source), &descriptor);
    }
    if let Ok(entry) = data::lookup(source) {
        if data::bundled_fixture(&entry.name).is_some() {
            return data::load_bundled(&entry.name);
        }
    }
    let path = Path::new(source);
    if path.is_file() {
        let descriptor = data::lookup_by_file_name(path).ok_or_else(|| {
            Error::InvalidArgument(format!("{source}: not a catalog file name, pass --descriptor"))
        })?;
        return data::load_csv(path, &descriptor);
    }
    // surfaces "not bundled" or "unknown dataset"
    data::load_bundled(source)
}

fn run(args: RunArgs) -> Result<()> {
    if args.workers > 1 {
        eprintln!("warning: {} workers share the CPU; timing columns will be skewed", args.workers);
    }
    let mut all_rows: Vec<Vec<SweepRow>> = Vec::new();
    for source in &args.dataset {
        let dataset = load_dataset(source, args.descriptor.as_deref())?;
        let name = dataset.descriptor.name.clone();
        if dataset.dropped_rows > 0 {
            eprintln!("{name}: dropped {} rows with missing values", dataset.dropped_rows);
        }
        let cfg = SweepConfig {
            dataset: name.clone(),
            alphas: args.alphas.clone(),
            mu: args.mu,
            epochs: args.epochs,
            repeats: args.repeats,
            base_seed: args.seed,
            hidden_override: args.hidden,
            init_scale: args.init_scale,
            order: args.order.into(),
            workers: args.workers,
        };
        let shape = NetworkShape::new(dataset.n(), cfg.hidden_units(dataset.n()))?;
        if shape.exceeds_hidden_limit() {
            eprintln!(
                "warning: {} hidden units exceed 2n+1 = {} for {name}",
                shape.hidden(),
                2 * shape.inputs() + 1
            );
        }
        println!(
            "{name}: P = {}, n = {}, K = {}, hidden = {}",
            dataset.len(),
            dataset.n(),
            dataset.class_count(),
            shape.hidden()
        );

        let rows = run_sweep(&cfg, &dataset)?;
        println!("{:>7} {:>12} {:>12} {:>9} {:>10} {:>10}", "alpha", "mse_mlp", "mse_fuzzy", "gain", "t_mlp", "t_fuzzy");
        for r in &rows {
            println!(
                "{:>7.2} {:>12.5} {:>12.5} {:>9.4} {:>10.4} {:>10.4}",
                r.alpha, r.min_mse_mlp, r.min_mse_fuzzy, r.gain, r.time_mlp_s, r.time_fuzzy_s
            );
        }
        for path in emit_reports(&name, &rows, &args.out)? {
            println!("wrote {}", path.display());
        }
        all_rows.push(rows);
    }
    let summary = summarize(all_rows.iter().map(Vec::as_slice));
    println!("wrote {}", write_summary(&summary, &args.out)?.display());
    Ok(())
}

fn summarize_dir(input: &Path, out: &Path) -> Result<()> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(input)
        .map_err(|e| Error::Io { path: input.to_path_buf(), source: e })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("results_") && n.ends_with(".csv"))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::EmptyData(format!("no results_*.csv files in {}", input.display())));
    }
    let per_dataset = files.iter().map(|f| read_results(f)).collect::<Result<Vec<_>>>()?;
    let summary = summarize(per_dataset.iter().map(Vec::as_slice));
    for s in &summary {
        println!(
            "alpha {:.2}: mean gain {:.4}, mean time mlp {:.4}s fuzzy {:.4}s ({} datasets)",
            s.alpha, s.mean_gain, s.mean_time_mlp_s, s.mean_time_fuzzy_s, s.datasets
        );
    }
    println!("wrote {}", write_summary(&summary, out)?.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Summarize { input, out } => summarize_dir(&input, &out),
        Command::Gain { mse_mlp, mse_fuzzy } => convergence_gain(mse_mlp, mse_fuzzy).map(|g| println!("{g:.5}")),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
