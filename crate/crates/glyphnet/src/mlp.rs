//! The feed-forward network: topology construction, logsig/tansig
//! activations, exact backpropagation, gradient-descent training with a
//! mean-loss tolerance stop, prediction, and finite-difference gradient
//! verification.
//!
//! Everything is double precision and deterministic: initialization draws
//! from [`SplitMix64`] in a fixed order, and training applies updates in a
//! fixed order, so identical seeds and samples give bit-identical networks.

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::rng::SplitMix64;

/// Logistic sigmoid `1 / (1 + exp(-x))`, the "Logsig" transfer function.
/// Its derivative in terms of the output is `y * (1 - y)`.
pub fn logsig(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Hyperbolic-tangent sigmoid `2 / (1 + exp(-2x)) - 1`, the "Tansig"
/// transfer function, evaluated in full precision as `tanh(x)` (the same
/// function, without the intermediate rounding of the two-step formula).
/// Its derivative in terms of the output is `1 - y^2`.
pub fn tansig(x: f64) -> f64 {
    x.tanh()
}

/// Per-layer transfer function tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    /// Used by the input layer only.
    Identity,
    Logsig,
    Tansig,
}

impl Activation {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Identity => x,
            Activation::Logsig => logsig(x),
            Activation::Tansig => tansig(x),
        }
    }

    /// Derivative expressed in terms of the activation output `y`.
    pub fn derivative_from_output(self, y: f64) -> f64 {
        match self {
            Activation::Identity => 1.0,
            Activation::Logsig => y * (1.0 - y),
            Activation::Tansig => 1.0 - y * y,
        }
    }

    /// Stable serialization tag.
    pub fn tag(self) -> &'static str {
        match self {
            Activation::Identity => "identity",
            Activation::Logsig => "logsig",
            Activation::Tansig => "tansig",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "identity" => Some(Activation::Identity),
            "logsig" => Some(Activation::Logsig),
            "tansig" => Some(Activation::Tansig),
            _ => None,
        }
    }
}

/// One layer: unit count plus transfer function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSpec {
    pub units: usize,
    pub activation: Activation,
}

/// Ordered layer list; the first layer is the identity input layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkTopology {
    layers: Vec<LayerSpec>,
}

impl NetworkTopology {
    /// Validates and builds a topology: at least two layers, identity on the
    /// input layer only, logsig/tansig on the rest, no zero-width layer.
    pub fn new(layers: Vec<LayerSpec>) -> Result<Self> {
        if layers.len() < 2 {
            return Err(Error::InvalidTopology(format!(
                "need at least 2 layers, got {}",
                layers.len()
            )));
        }
        if layers[0].activation != Activation::Identity {
            return Err(Error::InvalidTopology(
                "the input layer must use the identity activation".into(),
            ));
        }
        for (i, layer) in layers.iter().enumerate() {
            if layer.units == 0 {
                return Err(Error::InvalidTopology(format!("layer {i} has zero units")));
            }
            if i > 0 && layer.activation == Activation::Identity {
                return Err(Error::InvalidTopology(format!(
                    "layer {i} uses identity; only the input layer may"
                )));
            }
        }
        Ok(NetworkTopology { layers })
    }

    /// The default 26-class topology:
    /// `[inputs identity, 25 logsig, 25 tansig, 26 logsig]`.
    pub fn multiclass(inputs: usize) -> Self {
        NetworkTopology::new(vec![
            LayerSpec {
                units: inputs,
                activation: Activation::Identity,
            },
            LayerSpec {
                units: 25,
                activation: Activation::Logsig,
            },
            LayerSpec {
                units: 25,
                activation: Activation::Tansig,
            },
            LayerSpec {
                units: 26,
                activation: Activation::Logsig,
            },
        ])
        .expect("multiclass topology is valid by construction")
    }

    /// The one-vs-rest topology:
    /// `[inputs identity, 25 logsig, 25 tansig, 1 logsig]`.
    pub fn per_letter(inputs: usize) -> Self {
        NetworkTopology::new(vec![
            LayerSpec {
                units: inputs,
                activation: Activation::Identity,
            },
            LayerSpec {
                units: 25,
                activation: Activation::Logsig,
            },
            LayerSpec {
                units: 25,
                activation: Activation::Tansig,
            },
            LayerSpec {
                units: 1,
                activation: Activation::Logsig,
            },
        ])
        .expect("per-letter topology is valid by construction")
    }

    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    pub fn input_units(&self) -> usize {
        self.layers[0].units
    }

    pub fn output_units(&self) -> usize {
        self.layers[self.layers.len() - 1].units
    }

    /// Total number of weights and biases.
    pub fn parameter_count(&self) -> usize {
        self.layers
            .windows(2)
            .map(|w| w[1].units * w[0].units + w[1].units)
            .sum()
    }
}

/// Dense row-major matrix of doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Builds from row-major data. Shape violations panic.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Weight-initialization distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    /// Uniform `[0, 1)`, matching the original "Random [0,1]" description.
    /// Documented as convergence-hostile: with all-positive weights the 25
    /// binary inputs drive every logsig unit deep into saturation.
    Paper,
    /// Uniform `[-0.5, 0.5)`, the default.
    Symmetric,
}

impl InitMode {
    pub fn tag(self) -> &'static str {
        match self {
            InitMode::Paper => "paper",
            InitMode::Symmetric => "symmetric",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "paper" => Some(InitMode::Paper),
            "symmetric" => Some(InitMode::Symmetric),
            _ => None,
        }
    }

    fn scale(self, unit: f64) -> f64 {
        match self {
            InitMode::Paper => unit,
            InitMode::Symmetric => unit - 0.5,
        }
    }
}

/// Gradient-descent update granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    /// One step per epoch on the mean gradient over all samples.
    Batch,
    /// One step per sample, applied sequentially in sample order (the
    /// default; see `TrainConfig`).
    PerSample,
}

impl UpdateMode {
    pub fn tag(self) -> &'static str {
        match self {
            UpdateMode::Batch => "batch",
            UpdateMode::PerSample => "per-sample",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "batch" => Some(UpdateMode::Batch),
            "per-sample" => Some(UpdateMode::PerSample),
            _ => None,
        }
    }
}

/// Training hyperparameters.
///
/// Defaults: learning rate 0.05, at most 1000 epochs, mean-loss tolerance
/// 0.005, symmetric initialization, per-sample updates, seed 0. Per-sample
/// is the default update mode because with one step per epoch at this fixed
/// learning rate, batch descent on the 520-sample corpus is still far from
/// the tolerance after thousands of epochs; batch mode remains available.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub max_epochs: usize,
    pub tolerance: f64,
    pub init_mode: InitMode,
    pub update_mode: UpdateMode,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.05,
            max_epochs: 1000,
            tolerance: 0.005,
            init_mode: InitMode::Symmetric,
            update_mode: UpdateMode::PerSample,
            seed: 0,
        }
    }
}

impl TrainConfig {
    /// Checks the invariants: positive finite learning rate, at least one
    /// epoch, non-negative finite tolerance.
    pub fn validate(&self) -> Result<()> {
        if self.learning_rate <= 0.0 || !self.learning_rate.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "learning_rate must be > 0, got {}",
                self.learning_rate
            )));
        }
        if self.max_epochs < 1 {
            return Err(Error::InvalidConfig("max_epochs must be >= 1".into()));
        }
        if self.tolerance < 0.0 || !self.tolerance.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be >= 0, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Why training stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ToleranceMet,
    MaxEpochs,
}

impl StopReason {
    pub fn tag(self) -> &'static str {
        match self {
            StopReason::ToleranceMet => "tolerance_met",
            StopReason::MaxEpochs => "max_epochs",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "tolerance_met" => Some(StopReason::ToleranceMet),
            "max_epochs" => Some(StopReason::MaxEpochs),
            _ => None,
        }
    }
}

/// Outcome of a training call.
///
/// `epochs_run` counts completed epochs; the mean loss is evaluated before
/// each epoch, so a network that already meets the tolerance reports 0
/// epochs. `final_mean_loss` is the mean loss at the moment of stopping.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub epochs_run: usize,
    pub final_mean_loss: f64,
    pub stop_reason: StopReason,
}

/// A concrete network: topology plus, for every non-input layer `l`, a
/// weight matrix `W_l` (`units_l` x `units_{l-1}`) and a bias vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    topology: NetworkTopology,
    weights: Vec<Matrix>,
    biases: Vec<Vec<f64>>,
}

impl Network {
    /// Assembles a network from parts, validating shapes and finiteness
    /// (used by deserialization).
    pub fn from_parts(
        topology: NetworkTopology,
        weights: Vec<Matrix>,
        biases: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let layer_count = topology.layers().len();
        if weights.len() != layer_count - 1 || biases.len() != layer_count - 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} weight/bias blocks, got {}/{}",
                layer_count - 1,
                weights.len(),
                biases.len()
            )));
        }
        for l in 1..layer_count {
            let (rows, cols) = (topology.layers()[l].units, topology.layers()[l - 1].units);
            let w = &weights[l - 1];
            if w.rows() != rows || w.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "layer {l} weights are {}x{}, topology needs {rows}x{cols}",
                    w.rows(),
                    w.cols()
                )));
            }
            if biases[l - 1].len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "layer {l} biases have length {}, topology needs {rows}",
                    biases[l - 1].len()
                )));
            }
            for &v in w.data().iter().chain(biases[l - 1].iter()) {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue(format!("{v}")));
                }
            }
        }
        Ok(Network {
            topology,
            weights,
            biases,
        })
    }

    pub fn topology(&self) -> &NetworkTopology {
        &self.topology
    }

    /// Weight matrices for layers 1.., in layer order.
    pub fn weights(&self) -> &[Matrix] {
        &self.weights
    }

    /// Bias vectors for layers 1.., in layer order.
    pub fn biases(&self) -> &[Vec<f64>] {
        &self.biases
    }
}

/// Per-parameter gradients, in the same shapes as the network's weights and
/// biases.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub weights: Vec<Matrix>,
    pub biases: Vec<Vec<f64>>,
}

impl Gradient {
    fn zeros_like(net: &Network) -> Self {
        Gradient {
            weights: net
                .weights
                .iter()
                .map(|w| Matrix::zeros(w.rows(), w.cols()))
                .collect(),
            biases: net.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
        }
    }

    fn add_assign(&mut self, other: &Gradient) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            for (x, y) in a.data_mut().iter_mut().zip(b.data()) {
                *x += y;
            }
        }
        for (a, b) in self.biases.iter_mut().zip(&other.biases) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }

    fn scale(&mut self, factor: f64) {
        for w in &mut self.weights {
            for x in w.data_mut() {
                *x *= factor;
            }
        }
        for b in &mut self.biases {
            for x in b.iter_mut() {
                *x *= factor;
            }
        }
    }
}

/// Initializes a network from `config.seed` and `config.init_mode`.
///
/// Values are drawn in a fixed order — for each non-input layer in
/// ascending order: the weight matrix row-major, then the bias vector — so
/// initialization is reproducible bit for bit.
pub fn init_network(topology: &NetworkTopology, config: &TrainConfig) -> Network {
    let mut rng = SplitMix64::new(config.seed);
    init_network_with(topology, config.init_mode, &mut rng)
}

/// Initialization drawing from a caller-supplied generator (lets callers
/// continue the same stream for other probes, e.g. gradient checking).
pub fn init_network_with(
    topology: &NetworkTopology,
    init_mode: InitMode,
    rng: &mut SplitMix64,
) -> Network {
    let mut weights = Vec::new();
    let mut biases = Vec::new();
    for pair in topology.layers().windows(2) {
        let (prev, this) = (pair[0].units, pair[1].units);
        let data = (0..this * prev)
            .map(|_| init_mode.scale(rng.next_unit()))
            .collect();
        weights.push(Matrix::from_vec(this, prev, data));
        biases.push(
            (0..this)
                .map(|_| init_mode.scale(rng.next_unit()))
                .collect(),
        );
    }
    Network {
        topology: topology.clone(),
        weights,
        biases,
    }
}

/// Forward pass: `a_0 = input`, `a_l = act_l(W_l a_{l-1} + b_l)`.
///
/// Returns every layer's activation vector, input first and output last.
pub fn forward(net: &Network, input: &[f64]) -> Result<Vec<Vec<f64>>> {
    if input.len() != net.topology.input_units() {
        return Err(Error::DimensionMismatch {
            expected: net.topology.input_units(),
            got: input.len(),
        });
    }
    let mut activations = Vec::with_capacity(net.topology.layers().len());
    activations.push(input.to_vec());
    for (l, (w, b)) in net.weights.iter().zip(&net.biases).enumerate() {
        let prev = &activations[l];
        let act = net.topology.layers()[l + 1].activation;
        let mut next = Vec::with_capacity(w.rows());
        for (row, &bias) in w.data().chunks_exact(w.cols()).zip(b) {
            let mut z = bias;
            for (wv, av) in row.iter().zip(prev) {
                z += wv * av;
            }
            next.push(act.apply(z));
        }
        activations.push(next);
    }
    Ok(activations)
}

/// Sum-of-squares loss `0.5 * Σ (output_k - target_k)^2`. Dataset loss is
/// the arithmetic mean of per-sample losses.
pub fn loss(output: &[f64], target: &[f64]) -> Result<f64> {
    if output.len() != target.len() {
        return Err(Error::DimensionMismatch {
            expected: target.len(),
            got: output.len(),
        });
    }
    Ok(output
        .iter()
        .zip(target)
        .map(|(o, t)| (o - t) * (o - t))
        .sum::<f64>()
        * 0.5)
}

/// Exact analytic gradient of the per-sample loss.
///
/// Output delta is `(output - target) ⊙ act'`; hidden deltas propagate
/// through transposed weights; derivatives use the activation outputs
/// (`logsig' = y(1-y)`, `tansig' = 1-y^2`).
pub fn backprop(net: &Network, input: &[f64], target: &[f64]) -> Result<Gradient> {
    let activations = forward(net, input)?;
    let output = activations.last().expect("forward returns >= 2 layers");
    if target.len() != output.len() {
        return Err(Error::DimensionMismatch {
            expected: output.len(),
            got: target.len(),
        });
    }

    let layer_count = net.topology.layers().len();
    let mut gradient = Gradient::zeros_like(net);

    // Deltas for the output layer.
    let act_out = net.topology.layers()[layer_count - 1].activation;
    let mut delta: Vec<f64> = output
        .iter()
        .zip(target)
        .map(|(o, t)| (o - t) * act_out.derivative_from_output(*o))
        .collect();

    // Walk layers from last to first, filling gradients and propagating.
    for l in (1..layer_count).rev() {
        let prev_activation = &activations[l - 1];
        let gw = &mut gradient.weights[l - 1];
        let cols = gw.cols();
        for (r, d) in delta.iter().enumerate() {
            let row = &mut gw.data_mut()[r * cols..(r + 1) * cols];
            for (slot, a) in row.iter_mut().zip(prev_activation) {
                *slot = d * a;
            }
        }
        gradient.biases[l - 1].copy_from_slice(&delta);

        if l > 1 {
            let w = &net.weights[l - 1];
            let act_prev = net.topology.layers()[l - 1].activation;
            let mut prev_delta = vec![0.0; w.cols()];
            for (r, d) in delta.iter().enumerate() {
                let row = &w.data()[r * w.cols()..(r + 1) * w.cols()];
                for (slot, wv) in prev_delta.iter_mut().zip(row) {
                    *slot += wv * d;
                }
            }
            for (slot, y) in prev_delta.iter_mut().zip(prev_activation) {
                *slot *= act_prev.derivative_from_output(*y);
            }
            delta = prev_delta;
        }
    }
    Ok(gradient)
}

fn check_same_shape(net: &Network, gradient: &Gradient) -> Result<()> {
    let ok = net.weights.len() == gradient.weights.len()
        && net.biases.len() == gradient.biases.len()
        && net
            .weights
            .iter()
            .zip(&gradient.weights)
            .all(|(a, b)| a.rows() == b.rows() && a.cols() == b.cols())
        && net
            .biases
            .iter()
            .zip(&gradient.biases)
            .all(|(a, b)| a.len() == b.len());
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: net.topology.parameter_count(),
            got: gradient
                .weights
                .iter()
                .map(|w| w.data().len())
                .chain(gradient.biases.iter().map(|b| b.len()))
                .sum(),
        })
    }
}

fn apply_step(net: &mut Network, gradient: &Gradient, learning_rate: f64) {
    for (w, g) in net.weights.iter_mut().zip(&gradient.weights) {
        for (p, gv) in w.data_mut().iter_mut().zip(g.data()) {
            *p -= learning_rate * gv;
        }
    }
    for (b, g) in net.biases.iter_mut().zip(&gradient.biases) {
        for (p, gv) in b.iter_mut().zip(g) {
            *p -= learning_rate * gv;
        }
    }
}

/// One gradient-descent step: every parameter `p ← p - learning_rate * g`.
pub fn gd_step(net: &Network, gradient: &Gradient, learning_rate: f64) -> Result<Network> {
    check_same_shape(net, gradient)?;
    let mut next = net.clone();
    apply_step(&mut next, gradient, learning_rate);
    Ok(next)
}

/// Mean loss of the network over a sample set.
pub fn mean_loss(net: &Network, samples: &[(FeatureVector, Vec<f64>)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut total = 0.0;
    for (features, target) in samples {
        let activations = forward(net, &features.to_reals())?;
        total += loss(activations.last().unwrap(), target)?;
    }
    Ok(total / samples.len() as f64)
}

fn mean_loss_inner(net: &Network, inputs: &[Vec<f64>], targets: &[&Vec<f64>]) -> Result<f64> {
    let mut total = 0.0;
    for (input, target) in inputs.iter().zip(targets) {
        let activations = forward(net, input)?;
        total += loss(activations.last().unwrap(), target)?;
    }
    Ok(total / inputs.len() as f64)
}

/// Gradient-descent training loop.
///
/// The mean loss is evaluated before each epoch: the loop stops with
/// `ToleranceMet` as soon as it is ≤ `config.tolerance` (so an
/// already-converged network reports 0 epochs), and with `MaxEpochs` once
/// `config.max_epochs` epochs have run. An epoch is one step on the mean
/// gradient (batch mode) or one step per sample in sample order
/// (per-sample mode).
pub fn train(
    net: Network,
    samples: &[(FeatureVector, Vec<f64>)],
    config: &TrainConfig,
) -> Result<(Network, TrainReport)> {
    config.validate()?;
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let inputs: Vec<Vec<f64>> = samples.iter().map(|(f, _)| f.to_reals()).collect();
    let targets: Vec<&Vec<f64>> = samples.iter().map(|(_, t)| t).collect();

    let mut net = net;
    let mut epoch = 0;
    loop {
        let mean = mean_loss_inner(&net, &inputs, &targets)?;
        let stop_reason = if mean <= config.tolerance {
            Some(StopReason::ToleranceMet)
        } else if epoch == config.max_epochs {
            Some(StopReason::MaxEpochs)
        } else {
            None
        };
        if let Some(stop_reason) = stop_reason {
            return Ok((
                net,
                TrainReport {
                    epochs_run: epoch,
                    final_mean_loss: mean,
                    stop_reason,
                },
            ));
        }

        match config.update_mode {
            UpdateMode::Batch => {
                let mut total = Gradient::zeros_like(&net);
                for (input, target) in inputs.iter().zip(&targets) {
                    total.add_assign(&backprop(&net, input, target)?);
                }
                total.scale(1.0 / inputs.len() as f64);
                apply_step(&mut net, &total, config.learning_rate);
            }
            UpdateMode::PerSample => {
                for (input, target) in inputs.iter().zip(&targets) {
                    let gradient = backprop(&net, input, target)?;
                    apply_step(&mut net, &gradient, config.learning_rate);
                }
            }
        }
        epoch += 1;
    }
}

/// Decodes a network's output for one feature vector.
///
/// Multiclass (≥ 2 outputs): returns the index of the maximum output, ties
/// broken toward the lowest index. One-output (one-vs-rest) networks:
/// returns 1 ("positive") exactly when the output is ≥ 0.5, else 0.
pub fn predict(net: &Network, features: &FeatureVector) -> Result<(usize, Vec<f64>)> {
    let activations = forward(net, &features.to_reals())?;
    let output = activations.last().unwrap().clone();
    let index = if output.len() == 1 {
        usize::from(output[0] >= 0.5)
    } else {
        argmax(&output)
    };
    Ok((index, output))
}

/// Index of the maximum value, lowest index on ties.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Compares backprop against central finite differences over every
/// parameter of a seeded probe network.
///
/// From one generator seeded with `seed`: the network is initialized
/// (symmetric mode), then a random binary input (each bit set when the next
/// unit draw is < 0.5), then a one-hot target at a random output index.
/// Returns the maximum relative error
/// `|a - n| / max(1e-12, |a| + |n|)` where `n = (L(p+ε) - L(p-ε)) / 2ε`.
pub fn gradient_check(topology: &NetworkTopology, seed: u64, epsilon: f64) -> Result<f64> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let mut rng = SplitMix64::new(seed);
    let mut net = init_network_with(topology, InitMode::Symmetric, &mut rng);
    let input: Vec<f64> = (0..topology.input_units())
        .map(|_| if rng.next_unit() < 0.5 { 1.0 } else { 0.0 })
        .collect();
    let hot = (rng.next_u64() % topology.output_units() as u64) as usize;
    let mut target = vec![0.0; topology.output_units()];
    target[hot] = 1.0;

    let analytic = backprop(&net, &input, &target)?;

    let mut max_relative = 0.0f64;
    let layer_count = net.weights.len();
    for l in 0..layer_count {
        for i in 0..net.weights[l].data().len() {
            let a = analytic.weights[l].data()[i];
            let n = central_difference(&mut net, &input, &target, epsilon, |net| {
                &mut net.weights[l].data_mut()[i]
            })?;
            max_relative = max_relative.max(relative_error(a, n));
        }
        for i in 0..net.biases[l].len() {
            let a = analytic.biases[l][i];
            let n = central_difference(&mut net, &input, &target, epsilon, |net| {
                &mut net.biases[l][i]
            })?;
            max_relative = max_relative.max(relative_error(a, n));
        }
    }
    Ok(max_relative)
}

fn relative_error(a: f64, n: f64) -> f64 {
    (a - n).abs() / 1e-12f64.max(a.abs() + n.abs())
}

fn central_difference(
    net: &mut Network,
    input: &[f64],
    target: &[f64],
    epsilon: f64,
    mut param: impl FnMut(&mut Network) -> &mut f64,
) -> Result<f64> {
    let original = *param(net);
    *param(net) = original + epsilon;
    let plus = sample_loss(net, input, target)?;
    *param(net) = original - epsilon;
    let minus = sample_loss(net, input, target)?;
    *param(net) = original;
    Ok((plus - minus) / (2.0 * epsilon))
}

fn sample_loss(net: &Network, input: &[f64], target: &[f64]) -> Result<f64> {
    let activations = forward(net, input)?;
    loss(activations.last().unwrap(), target)
}
