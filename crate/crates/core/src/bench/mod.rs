//! Paired MLP / fuzzy-MLP learning-rate sweeps and convergence-gain reporting.

mod report;
mod seed;

pub use report::{emit_reports, read_results, write_summary, RESULTS_HEADER, SUMMARY_HEADER};
pub use seed::derive_seed;

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::fuzzifier::FuzzifierModel;
use crate::network::{
    NetworkShape, NetworkWeights, PatternOrder, TrainConfig, TrainTrace, DEFAULT_EPOCHS, DEFAULT_INIT_SCALE, DEFAULT_MU,
};

pub const DEFAULT_ALPHAS: [f64; 8] = [0.05, 0.10, 0.25, 0.40, 0.55, 0.70, 0.85, 0.99];
pub const DEFAULT_REPEATS: usize = 5;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    /// Network fed the raw attribute values.
    Mlp,
    /// Network fed S-membership degrees of the attributes.
    Fuzzy,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [ModelKind::Mlp, ModelKind::Fuzzy];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Mlp => "mlp",
            ModelKind::Fuzzy => "fuzzy",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Dataset identifier, used for seeding and report file names.
    pub dataset: String,
    pub alphas: Vec<f64>,
    pub mu: f64,
    pub epochs: usize,
    pub repeats: usize,
    pub base_seed: u64,
    pub hidden_override: Option<usize>,
    pub init_scale: f64,
    pub order: PatternOrder,
    /// Upper bound on concurrently running trainings.
    pub workers: usize,
}

impl SweepConfig {
    pub fn new(dataset: impl Into<String>) -> Self {
        Self {
            dataset: dataset.into(),
            alphas: DEFAULT_ALPHAS.to_vec(),
            mu: DEFAULT_MU,
            epochs: DEFAULT_EPOCHS,
            repeats: DEFAULT_REPEATS,
            base_seed: DEFAULT_SEED,
            hidden_override: None,
            init_scale: DEFAULT_INIT_SCALE,
            order: PatternOrder::default(),
            workers: 1,
        }
    }

    pub fn hidden_units(&self, inputs: usize) -> usize {
        self.hidden_override.unwrap_or_else(|| NetworkShape::default_hidden(inputs))
    }

    fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::InvalidArgument("no learning rates given".into()));
        }
        if self.repeats == 0 {
            return Err(Error::InvalidArgument("repeats must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        for &alpha in &self.alphas {
            self.train_config(alpha, 0).validate()?;
        }
        Ok(())
    }

    fn train_config(&self, alpha: f64, seed: u64) -> TrainConfig {
        TrainConfig {
            alpha,
            mu: self.mu,
            epochs: self.epochs,
            seed,
            init_scale: self.init_scale,
            order: self.order,
        }
    }
}

/// One training run inside a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub alpha_index: usize,
    pub alpha: f64,
    pub repeat: usize,
    pub model: ModelKind,
    pub seed: u64,
    pub trace: TrainTrace,
}

/// Per-learning-rate comparison, averaged over repeats.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub min_mse_mlp: f64,
    pub min_mse_fuzzy: f64,
    /// `NaN` when the MLP reached zero error and the gain is undefined.
    pub gain: f64,
    pub time_mlp_s: f64,
    pub time_fuzzy_s: f64,
    pub trajectory_mlp: Vec<f64>,
    pub trajectory_fuzzy: Vec<f64>,
}

impl SweepRow {
    pub fn trajectory(&self, model: ModelKind) -> &[f64] {
        match model {
            ModelKind::Mlp => &self.trajectory_mlp,
            ModelKind::Fuzzy => &self.trajectory_fuzzy,
        }
    }
}

/// Relative reduction of the fuzzy-MLP's minimum MSE against the MLP's.
pub fn convergence_gain(min_mse_mlp: f64, min_mse_fuzzy: f64) -> Result<f64> {
    if !(min_mse_mlp > 0.0 && min_mse_mlp.is_finite()) {
        return Err(Error::InvalidArgument(format!("MLP minimum MSE must be positive, got {min_mse_mlp}")));
    }
    if !(min_mse_fuzzy >= 0.0 && min_mse_fuzzy.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "fuzzy-MLP minimum MSE must be non-negative, got {min_mse_fuzzy}"
        )));
    }
    Ok((min_mse_mlp - min_mse_fuzzy) / min_mse_mlp)
}

/// Trains every `(alpha, repeat, model)` combination and returns the runs in
/// that nesting order.
///
/// The fuzzifier is fitted once on the full attribute matrix; timing covers
/// only the training call.
pub fn run_all(cfg: &SweepConfig, data: &Dataset) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyData(format!("dataset {:?} has no patterns", cfg.dataset)));
    }
    let shape = NetworkShape::new(data.n(), cfg.hidden_units(data.n()))?;
    let fuzzy_x = FuzzifierModel::fit(&data.x)?.fuzzify_all(&data.x)?;

    let mut jobs = Vec::with_capacity(cfg.alphas.len() * cfg.repeats * 2);
    for (alpha_index, &alpha) in cfg.alphas.iter().enumerate() {
        for repeat in 0..cfg.repeats {
            for model in ModelKind::ALL {
                let seed = derive_seed(cfg.base_seed, &cfg.dataset, alpha_index, repeat, model);
                jobs.push((alpha_index, alpha, repeat, model, seed));
            }
        }
    }

    let run = |&(alpha_index, alpha, repeat, model, seed): &(usize, f64, usize, ModelKind, u64)| {
        let inputs = match model {
            ModelKind::Mlp => &data.x,
            ModelKind::Fuzzy => &fuzzy_x,
        };
        let train_cfg = cfg.train_config(alpha, seed);
        NetworkWeights::init(shape, seed, cfg.init_scale)
            .and_then(|mut net| net.train(inputs, &data.targets, &train_cfg))
            .map(|trace| RunRecord { alpha_index, alpha, repeat, model, seed, trace })
            .map_err(|e| Error::Run { alpha, repeat, model: model.as_str(), source: Box::new(e) })
    };

    if cfg.workers == 1 {
        return jobs.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(run).collect())
}

/// Runs the sweep and averages each learning rate's repeats into one row.
pub fn run_sweep(cfg: &SweepConfig, data: &Dataset) -> Result<Vec<SweepRow>> {
    let runs = run_all(cfg, data)?;
    Ok(aggregate(cfg, &runs))
}

/// Folds run records into per-alpha rows (records may arrive in any order).
pub fn aggregate(cfg: &SweepConfig, runs: &[RunRecord]) -> Vec<SweepRow> {
    cfg.alphas
        .iter()
        .enumerate()
        .map(|(alpha_index, &alpha)| {
            let stats = |model: ModelKind| {
                let mut selected: Vec<&RunRecord> = runs
                    .iter()
                    .filter(|r| r.alpha_index == alpha_index && r.model == model)
                    .collect();
                selected.sort_by_key(|r| r.repeat);
                let count = selected.len().max(1) as f64;
                let min_mse = selected.iter().filter_map(|r| r.trace.min_mse()).sum::<f64>() / count;
                let time = selected.iter().map(|r| r.trace.elapsed_seconds).sum::<f64>() / count;
                let mut trajectory = vec![0.0; cfg.epochs];
                for r in &selected {
                    for (acc, mse) in trajectory.iter_mut().zip(&r.trace.mse_per_epoch) {
                        *acc += mse;
                    }
                }
                trajectory.iter_mut().for_each(|v| *v /= count);
                (min_mse, time, trajectory)
            };
            let (min_mse_mlp, time_mlp_s, trajectory_mlp) = stats(ModelKind::Mlp);
            let (min_mse_fuzzy, time_fuzzy_s, trajectory_fuzzy) = stats(ModelKind::Fuzzy);
            SweepRow {
                alpha,
                min_mse_mlp,
                min_mse_fuzzy,
                gain: convergence_gain(min_mse_mlp, min_mse_fuzzy).unwrap_or(f64::NAN),
                time_mlp_s,
                time_fuzzy_s,
                trajectory_mlp,
                trajectory_fuzzy,
            }
        })
        .collect()
}

/// Cross-dataset averages at one learning rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub alpha: f64,
    pub mean_gain: f64,
    pub mean_time_mlp_s: f64,
    pub mean_time_fuzzy_s: f64,
    pub datasets: usize,
}

/// Averages gains and times per learning rate over the given datasets' rows.
/// Output is ordered by increasing alpha.
pub fn summarize<'a>(per_dataset: impl IntoIterator<Item = &'a [SweepRow]>) -> Vec<SummaryRow> {
    let mut groups: Vec<(f64, Vec<&SweepRow>)> = Vec::new();
    for rows in per_dataset {
        for row in rows {
            match groups.iter_mut().find(|(alpha, _)| *alpha == row.alpha) {
                Some((_, members)) => members.push(row),
                None => groups.push((row.alpha, vec![row])),
            }
        }
    }
    groups.sort_by(|a, b| a.0.total_cmp(&b.0));
    groups
        .into_iter()
        .map(|(alpha, members)| {
            let count = members.len() as f64;
            let mean = |f: fn(&SweepRow) -> f64| members.iter().map(|r| f(r)).sum::<f64>() / count;
            SummaryRow {
                alpha,
                mean_gain: mean(|r| r.gain),
                mean_time_mlp_s: mean(|r| r.time_mlp_s),
                mean_time_fuzzy_s: mean(|r| r.time_fuzzy_s),
                datasets: members.len(),
            }
        })
        .collect()
}
