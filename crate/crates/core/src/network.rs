//! Single-hidden-layer sigmoid network trained by online backpropagation
//! with momentum.
//!
//! The plain MLP and the fuzzy-MLP share this module unchanged; they differ
//! only in what is fed to [`NetworkWeights::train`] (raw or fuzzified
//! attributes).
//!
//! Weights follow the usual naming: `v` maps inputs to hidden units
//! (row-major `n x m`, entry `(i, j)` at `i * m + j`), `w` maps hidden units
//! to the single output, `b1` and `b2` are the hidden and output biases.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math::{sigmoid, sigmoid_derivative_from_activation};

pub const DEFAULT_MU: f64 = 0.50;
pub const DEFAULT_EPOCHS: usize = 100;
pub const DEFAULT_INIT_SCALE: f64 = 0.5;

/// Input-unit and hidden-unit counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkShape {
    inputs: usize,
    hidden: usize,
}

impl NetworkShape {
    pub fn new(inputs: usize, hidden: usize) -> Result<Self> {
        if inputs == 0 || hidden == 0 {
            return Err(Error::InvalidArgument(format!(
                "network needs at least one input and one hidden unit (got {inputs} x {hidden})"
            )));
        }
        Ok(Self { inputs, hidden })
    }

    /// Shape with `ceil(3n/2)` hidden units.
    pub fn with_default_hidden(inputs: usize) -> Result<Self> {
        Self::new(inputs, Self::default_hidden(inputs))
    }

    pub fn default_hidden(inputs: usize) -> usize {
        (3 * inputs).div_ceil(2)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    /// True when the hidden layer is wider than the customary `2n + 1` ceiling.
    /// Callers report this as a warning only.
    pub fn exceeds_hidden_limit(&self) -> bool {
        self.hidden > 2 * self.inputs + 1
    }
}

/// Hyperparameters of one training run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    /// Learning rate, in `(0, 1]`.
    pub alpha: f64,
    /// Momentum factor, in `[0, 1)`.
    pub mu: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Half-width of the uniform weight initialisation interval.
    pub init_scale: f64,
    pub order: PatternOrder,
}

/// Order in which an epoch presents the training patterns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PatternOrder {
    /// Stored order, every epoch. On class-sorted files the running error
    /// then mostly measures how fast the output follows the current class.
    Stored,
    /// A fresh permutation every epoch, drawn from an RNG stream seeded by
    /// `TrainConfig::seed`.
    #[default]
    Shuffled,
}

impl TrainConfig {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            mu: DEFAULT_MU,
            epochs: DEFAULT_EPOCHS,
            seed: 0,
            init_scale: DEFAULT_INIT_SCALE,
            order: PatternOrder::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        if !(self.mu >= 0.0 && self.mu < 1.0) {
            return Err(Error::InvalidArgument(format!("mu must lie in [0, 1), got {}", self.mu)));
        }
        if !(self.init_scale > 0.0 && self.init_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "init_scale must be positive, got {}",
                self.init_scale
            )));
        }
        Ok(())
    }
}

/// Multiply-accumulate tallies, split by the four phases of one pattern
/// presentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Forward, input layer to hidden layer (`n * m` per pattern).
    pub input_hidden: u64,
    /// Forward, hidden layer to output (`m` per pattern).
    pub hidden_output: u64,
    /// Backward, output error to hidden-output weights (`m` per pattern).
    pub output_hidden: u64,
    /// Backward, hidden error to input-hidden weights (`n * m` per pattern).
    pub hidden_input: u64,
}

impl OpCounters {
    pub fn total(&self) -> u64 {
        self.input_hidden + self.hidden_output + self.output_hidden + self.hidden_input
    }

    /// Work in the two phases that touch every input-hidden weight.
    pub fn input_layer_total(&self) -> u64 {
        self.input_hidden + self.hidden_input
    }
}

/// Hidden activations and output of one forward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardPass {
    pub hidden: Vec<f64>,
    pub output: f64,
}

/// Per-run record of training progress.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainTrace {
    pub mse_per_epoch: Vec<f64>,
    pub elapsed_seconds: f64,
    pub epochs_run: usize,
    /// Work done in one epoch (every epoch does the same amount).
    pub ops_per_epoch: OpCounters,
}

impl TrainTrace {
    /// Smallest epoch MSE, `None` for an empty trace.
    pub fn min_mse(&self) -> Option<f64> {
        self.mse_per_epoch.iter().copied().reduce(f64::min)
    }
}

/// Weights, biases and momentum buffers of the network.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkWeights {
    shape: NetworkShape,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub b1: Vec<f64>,
    pub b2: f64,
    pub dv_prev: Vec<f64>,
    pub dw_prev: Vec<f64>,
}

impl NetworkWeights {
    /// Draws every weight and bias independently from
    /// `U[-init_scale, init_scale]`; momentum buffers start at zero.
    pub fn init(shape: NetworkShape, seed: u64, init_scale: f64) -> Result<Self> {
        if !(init_scale > 0.0 && init_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("init_scale must be positive, got {init_scale}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |len: usize| -> Vec<f64> {
            (0..len).map(|_| rng.random_range(-init_scale..=init_scale)).collect()
        };
        let (n, m) = (shape.inputs, shape.hidden);
        let v = draw(n * m);
        let w = draw(m);
        let b1 = draw(m);
        let b2 = draw(1)[0];
        Ok(Self {
            shape,
            v,
            w,
            b1,
            b2,
            dv_prev: vec![0.0; n * m],
            dw_prev: vec![0.0; m],
        })
    }

    /// Builds weights from explicit values, with zeroed momentum buffers.
    pub fn from_parts(shape: NetworkShape, v: Vec<f64>, w: Vec<f64>, b1: Vec<f64>, b2: f64) -> Result<Self> {
        let (n, m) = (shape.inputs, shape.hidden);
        for (len, expected) in [(v.len(), n * m), (w.len(), m), (b1.len(), m)] {
            if len != expected {
                return Err(Error::DimensionMismatch { expected, actual: len });
            }
        }
        Ok(Self {
            shape,
            v,
            w,
            b1,
            b2,
            dv_prev: vec![0.0; n * m],
            dw_prev: vec![0.0; m],
        })
    }

    pub fn shape(&self) -> NetworkShape {
        self.shape
    }

    /// Input-hidden weight from input `i` to hidden unit `j`.
    pub fn v_at(&self, i: usize, j: usize) -> f64 {
        self.v[i * self.shape.hidden + j]
    }

    pub fn is_finite(&self) -> bool {
        self.v.iter().chain(&self.w).chain(&self.b1).all(|x| x.is_finite()) && self.b2.is_finite()
    }

    pub fn forward(&self, x: &[f64]) -> Result<ForwardPass> {
        self.forward_counted(x, &mut OpCounters::default())
    }

    pub fn forward_counted(&self, x: &[f64], ops: &mut OpCounters) -> Result<ForwardPass> {
        let (n, m) = (self.shape.inputs, self.shape.hidden);
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: x.len() });
        }
        if let Some(&bad) = x.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(bad));
        }

        let mut hidden = self.b1.clone();
        for (xi, row) in x.iter().zip(self.v.chunks_exact(m)) {
            for (acc, vij) in hidden.iter_mut().zip(row) {
                *acc += xi * vij;
            }
            ops.input_hidden += m as u64;
        }
        let mut y_in = self.b2;
        for (z, wj) in hidden.iter_mut().zip(&self.w) {
            if !z.is_finite() {
                return Err(Error::Divergence { epoch: None, what: "hidden net input" });
            }
            *z = sigmoid(*z);
            y_in += *z * wj;
        }
        ops.hidden_output += m as u64;
        if !y_in.is_finite() {
            return Err(Error::Divergence { epoch: None, what: "output net input" });
        }
        Ok(ForwardPass { hidden, output: sigmoid(y_in) })
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        self.forward(x).map(|pass| pass.output)
    }

    /// One online update for pattern `(x, target)` given its forward pass.
    /// Returns the error `E = target - y`.
    ///
    /// Hidden-layer deltas use the hidden-output weights as they were before
    /// this step. Nothing is written if any updated value would be
    /// non-finite.
    pub fn backprop_step(&mut self, x: &[f64], pass: &ForwardPass, target: f64, cfg: &TrainConfig) -> Result<f64> {
        self.backprop_counted(x, pass, target, cfg, &mut OpCounters::default())
    }

    pub fn backprop_counted(
        &mut self,
        x: &[f64],
        pass: &ForwardPass,
        target: f64,
        cfg: &TrainConfig,
        ops: &mut OpCounters,
    ) -> Result<f64> {
        let (n, m) = (self.shape.inputs, self.shape.hidden);
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: x.len() });
        }
        if pass.hidden.len() != m {
            return Err(Error::DimensionMismatch { expected: m, actual: pass.hidden.len() });
        }

        let error = target - pass.output;
        let output_delta = cfg.alpha * error * sigmoid_derivative_from_activation(pass.output);

        let mut dw = Vec::with_capacity(m);
        let mut hidden_delta = Vec::with_capacity(m);
        for j in 0..m {
            let z = pass.hidden[j];
            dw.push(output_delta * z + cfg.mu * self.dw_prev[j]);
            hidden_delta.push(output_delta * self.w[j] * sigmoid_derivative_from_activation(z));
        }
        ops.output_hidden += m as u64;

        let mut dv = Vec::with_capacity(n * m);
        for (i, &xi) in x.iter().enumerate() {
            for j in 0..m {
                dv.push(hidden_delta[j] * xi + cfg.mu * self.dv_prev[i * m + j]);
            }
            ops.hidden_input += m as u64;
        }

        let new_b2 = self.b2 + output_delta;
        let finite = new_b2.is_finite()
            && self.w.iter().zip(&dw).all(|(w, d)| (w + d).is_finite())
            && self.b1.iter().zip(&hidden_delta).all(|(b, d)| (b + d).is_finite())
            && self.v.iter().zip(&dv).all(|(v, d)| (v + d).is_finite());
        if !finite {
            return Err(Error::Divergence { epoch: None, what: "weight update" });
        }

        self.b2 = new_b2;
        for (w, d) in self.w.iter_mut().zip(&dw) {
            *w += d;
        }
        for (b, d) in self.b1.iter_mut().zip(&hidden_delta) {
            *b += d;
        }
        for (v, d) in self.v.iter_mut().zip(&dv) {
            *v += d;
        }
        self.dw_prev = dw;
        self.dv_prev = dv;
        Ok(error)
    }

    /// Trains for exactly `cfg.epochs` epochs, updating after every pattern.
    /// Patterns are presented as `cfg.order` says.
    ///
    /// Epoch MSE is the mean of `E^2` over the epoch's patterns, with each `E`
    /// taken before that pattern's update.
    pub fn train(&mut self, inputs: &[Vec<f64>], targets: &[f64], cfg: &TrainConfig) -> Result<TrainTrace> {
        cfg.validate()?;
        if inputs.len() != targets.len() {
            return Err(Error::DimensionMismatch { expected: inputs.len(), actual: targets.len() });
        }
        if cfg.epochs > 0 && inputs.is_empty() {
            return Err(Error::EmptyData("no training patterns".into()));
        }
        if let Some(row) = inputs.iter().find(|row| row.len() != self.shape.inputs) {
            return Err(Error::DimensionMismatch { expected: self.shape.inputs, actual: row.len() });
        }

        let mut order: Vec<usize> = (0..inputs.len()).collect();
        let mut shuffler = ChaCha8Rng::seed_from_u64(cfg.seed);
        shuffler.set_stream(1);
        let started = Instant::now();
        let mut mse_per_epoch = Vec::with_capacity(cfg.epochs);
        let mut ops_per_epoch = OpCounters::default();
        for epoch in 1..=cfg.epochs {
            let mut ops = OpCounters::default();
            let mut sum_sq = 0.0;
            if cfg.order == PatternOrder::Shuffled {
                order.shuffle(&mut shuffler);
            }
            for (x, t) in order.iter().map(|&p| (&inputs[p], targets[p])) {
                let pass = self.forward_counted(x, &mut ops).map_err(|e| e.at_epoch(epoch))?;
                let e = self
                    .backprop_counted(x, &pass, t, cfg, &mut ops)
                    .map_err(|e| e.at_epoch(epoch))?;
                sum_sq += e * e;
            }
            let mse = sum_sq / inputs.len() as f64;
            if !mse.is_finite() {
                return Err(Error::Divergence { epoch: Some(epoch), what: "epoch MSE" });
            }
            mse_per_epoch.push(mse);
            ops_per_epoch = ops;
        }

        Ok(TrainTrace {
            epochs_run: mse_per_epoch.len(),
            mse_per_epoch,
            elapsed_seconds: started.elapsed().as_secs_f64(),
            ops_per_epoch,
        })
    }
}
