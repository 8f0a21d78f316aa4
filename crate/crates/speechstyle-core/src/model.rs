//! From-scratch classifier heads: dense layers, time-average pooling,
//! inverted dropout, sigmoid output, binary cross entropy, Adam, and the
//! best-checkpoint training loop.
//!
//! Two architectures cover the two input shapes:
//!
//! * vector head: `Dense(in -> 50) + ReLU -> Dropout(0.2) -> Dense(50 -> 1) + Sigmoid`
//! * matrix head: `Dense(D -> 100)` per frame `-> mean pool over time ->`
//!   the vector head stack on 100 inputs.
//!
//! Training runs in f32. The math is generic over the float type so the
//! gradient tests can drive the identical code path in f64.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embeddings::{FeatureMatrix, FeatureVector};
use crate::eval::{roc_auc, THRESHOLD};
use crate::corpus::Label;
use crate::handcrafted::Standardizer;

/// Hidden width shared by both heads.
pub const HIDDEN_DIM: usize = 50;
/// Per-frame projection width of the matrix head.
pub const MATRIX_HIDDEN_DIM: usize = 100;
/// Probability clamp applied inside the cross-entropy.
pub const SCORE_CLAMP: f64 = 1e-7;

/// Classifier head shape, keyed by the incoming feature kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum HeadArch {
    /// 1-D features of the given dimension.
    Vector { input_dim: usize },
    /// Time x dim features of the given column dimension.
    Matrix { input_dim: usize },
}

impl HeadArch {
    pub fn input_dim(&self) -> usize {
        match self {
            HeadArch::Vector { input_dim } | HeadArch::Matrix { input_dim } => *input_dim,
        }
    }

    /// (in, out) shapes of each dense layer, in forward order.
    pub fn layer_shapes(&self) -> Vec<(usize, usize)> {
        match self {
            HeadArch::Vector { input_dim } => {
                vec![(*input_dim, HIDDEN_DIM), (HIDDEN_DIM, 1)]
            }
            HeadArch::Matrix { input_dim } => vec![
                (*input_dim, MATRIX_HIDDEN_DIM),
                (MATRIX_HIDDEN_DIM, HIDDEN_DIM),
                (HIDDEN_DIM, 1),
            ],
        }
    }
}

/// One dense layer, weights row-major `out_dim x in_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense<F> {
    pub in_dim: usize,
    pub out_dim: usize,
    pub w: Vec<F>,
    pub b: Vec<F>,
}

impl<F: Float> Dense<F> {
    fn zeros(in_dim: usize, out_dim: usize) -> Self {
        Dense {
            in_dim,
            out_dim,
            w: vec![F::zero(); in_dim * out_dim],
            b: vec![F::zero(); out_dim],
        }
    }

    fn apply(&self, x: &[F], out: &mut [F]) {
        debug_assert_eq!(x.len(), self.in_dim);
        debug_assert_eq!(out.len(), self.out_dim);
        for (o, slot) in out.iter_mut().enumerate() {
            let row = &self.w[o * self.in_dim..(o + 1) * self.in_dim];
            let mut acc = self.b[o];
            for (wi, xi) in row.iter().zip(x) {
                acc = acc + *wi * *xi;
            }
            *slot = acc;
        }
    }
}

/// All parameters of one head.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadParams<F> {
    pub arch: HeadArch,
    pub layers: Vec<Dense<F>>,
}

impl<F: Float> HeadParams<F> {
    fn zeros(arch: HeadArch) -> Self {
        let layers = arch
            .layer_shapes()
            .into_iter()
            .map(|(i, o)| Dense::zeros(i, o))
            .collect();
        HeadParams { arch, layers }
    }

    /// Convert parameters to another float width.
    pub fn convert<G: Float>(&self) -> HeadParams<G> {
        HeadParams {
            arch: self.arch,
            layers: self
                .layers
                .iter()
                .map(|l| Dense {
                    in_dim: l.in_dim,
                    out_dim: l.out_dim,
                    w: l.w.iter().map(|v| G::from(*v).unwrap()).collect(),
                    b: l.b.iter().map(|v| G::from(*v).unwrap()).collect(),
                })
                .collect(),
        }
    }

    pub fn parameter_count(&self) -> usize {
        self.layers.iter().map(|l| l.w.len() + l.b.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    ZeroClassCount,
    ShapeMismatch { expected: usize, got: usize },
    SchemaMismatch { expected: String, got: String },
    EmptyDataset,
    NonFiniteInput,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::ZeroClassCount => f.write_str("both classes need at least one episode"),
            ModelError::ShapeMismatch { expected, got } => {
                write!(f, "input dimension {got} does not match head input {expected}")
            }
            ModelError::SchemaMismatch { expected, got } => {
                write!(f, "feature schema `{got}` does not match checkpoint schema `{expected}`")
            }
            ModelError::EmptyDataset => f.write_str("training and validation sets must be non-empty"),
            ModelError::NonFiniteInput => f.write_str("non-finite value in scores or labels"),
        }
    }
}

impl core::error::Error for ModelError {}

/// Output-layer bias that makes the untrained sigmoid emit the scripted
/// prior: `b = ln(n_scripted / n_spontaneous)`.
pub fn prior_bias(n_scripted: u64, n_spontaneous: u64) -> Result<f64, ModelError> {
    if n_scripted == 0 || n_spontaneous == 0 {
        return Err(ModelError::ZeroClassCount);
    }
    Ok(crate::fmath::ln64(n_scripted as f64 / n_spontaneous as f64))
}

/// Seeded Glorot-uniform initialization. Hidden biases start at zero; the
/// output bias encodes the class prior via [`prior_bias`].
pub fn init_params(
    arch: HeadArch,
    seed: u64,
    class_counts: (u64, u64),
) -> Result<HeadParams<f32>, ModelError> {
    let bias = prior_bias(class_counts.0, class_counts.1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = HeadParams::zeros(arch);
    for layer in &mut params.layers {
        let limit = crate::fmath::sqrt(6.0 / (layer.in_dim + layer.out_dim) as f32);
        for w in layer.w.iter_mut() {
            *w = rng.random_range(-limit..limit);
        }
    }
    let last = params.layers.last_mut().expect("head has layers");
    last.b[0] = bias as f32;
    Ok(params)
}

/// A borrowed classifier input.
#[derive(Debug, Clone, Copy)]
pub enum Input<'a, F> {
    Vector(&'a [F]),
    /// Row-major frames x dim.
    Matrix { data: &'a [F], rows: usize, cols: usize },
}

impl<'a, F> Input<'a, F> {
    fn feature_dim(&self) -> usize {
        match self {
            Input::Vector(v) => v.len(),
            Input::Matrix { cols, .. } => *cols,
        }
    }
}

/// Intermediate activations retained for backpropagation.
#[derive(Debug, Clone)]
pub struct ForwardCache<F> {
    /// Mean of the input frames (the input itself for vector heads).
    input_mean: Vec<F>,
    /// Matrix head only: pooled per-frame projection, pre hidden stack.
    pooled: Option<Vec<F>>,
    /// Hidden pre-activation.
    h_pre: Vec<F>,
    /// Hidden after ReLU and dropout, as fed to the output layer.
    h_act: Vec<F>,
    /// Sigmoid score.
    pub score: F,
}

impl<F: Float> ForwardCache<F> {
    /// Hidden pre-activations. Gradient checks read these to keep their
    /// probe points away from the ReLU kink.
    pub fn hidden_preactivation(&self) -> &[F] {
        &self.h_pre
    }
}

fn sigmoid<F: Float>(z: F) -> F {
    F::one() / (F::one() + (-z).exp())
}

/// One forward pass. `dropout_mask` carries per-hidden-unit scale factors
/// (0 or 1/keep) during training and is `None` for deterministic
/// inference.
pub fn forward<F: Float>(
    params: &HeadParams<F>,
    input: Input<'_, F>,
    dropout_mask: Option<&[F]>,
) -> Result<ForwardCache<F>, ModelError> {
    let expected = params.arch.input_dim();
    if input.feature_dim() != expected {
        return Err(ModelError::ShapeMismatch { expected, got: input.feature_dim() });
    }
    if let Some(mask) = dropout_mask {
        debug_assert_eq!(mask.len(), HIDDEN_DIM);
    }

    let (stack_input, input_mean, pooled) = match (params.arch, input) {
        (HeadArch::Vector { .. }, Input::Vector(v)) => (v.to_vec(), v.to_vec(), None),
        (HeadArch::Matrix { .. }, Input::Matrix { data, rows, cols }) => {
            if rows == 0 || data.len() != rows * cols {
                return Err(ModelError::ShapeMismatch { expected: rows * cols, got: data.len() });
            }
            // Per-frame linear projection, averaged over time.
            let proj = &params.layers[0];
            let mut pooled = vec![F::zero(); proj.out_dim];
            let mut frame_out = vec![F::zero(); proj.out_dim];
            for t in 0..rows {
                proj.apply(&data[t * cols..(t + 1) * cols], &mut frame_out);
                for (p, o) in pooled.iter_mut().zip(&frame_out) {
                    *p = *p + *o;
                }
            }
            let scale = F::one() / F::from(rows).unwrap();
            for p in pooled.iter_mut() {
                *p = *p * scale;
            }
            // Input mean feeds the projection gradient.
            let mut mean = vec![F::zero(); cols];
            for t in 0..rows {
                for (m, x) in mean.iter_mut().zip(&data[t * cols..(t + 1) * cols]) {
                    *m = *m + *x;
                }
            }
            for m in mean.iter_mut() {
                *m = *m * scale;
            }
            (pooled.clone(), mean, Some(pooled))
        }
        _ => {
            return Err(ModelError::ShapeMismatch { expected, got: input.feature_dim() });
        }
    };

    let hidden_layer = &params.layers[params.layers.len() - 2];
    let mut h_pre = vec![F::zero(); hidden_layer.out_dim];
    hidden_layer.apply(&stack_input, &mut h_pre);
    let mut h_act: Vec<F> = h_pre.iter().map(|z| z.max(F::zero())).collect();
    if let Some(mask) = dropout_mask {
        for (h, m) in h_act.iter_mut().zip(mask) {
            *h = *h * *m;
        }
    }

    let out_layer = params.layers.last().expect("head has layers");
    let mut z = vec![F::zero(); 1];
    out_layer.apply(&h_act, &mut z);
    Ok(ForwardCache {
        input_mean,
        pooled,
        h_pre,
        h_act,
        score: sigmoid(z[0]),
    })
}

/// Deterministic inference score in (0, 1).
pub fn predict<F: Float>(params: &HeadParams<F>, input: Input<'_, F>) -> Result<F, ModelError> {
    Ok(forward(params, input, None)?.score)
}

/// Mean binary cross entropy over a batch, probabilities clamped away
/// from 0 and 1 by [`SCORE_CLAMP`]. Labels: `true` = scripted = 1.
pub fn bce_loss<F: Float>(scores: &[F], labels: &[bool]) -> Result<F, ModelError> {
    if scores.is_empty() || scores.len() != labels.len() {
        return Err(ModelError::EmptyDataset);
    }
    let lo = F::from(SCORE_CLAMP).unwrap();
    let hi = F::one() - lo;
    let mut total = F::zero();
    for (s, y) in scores.iter().zip(labels) {
        if !s.is_finite() {
            return Err(ModelError::NonFiniteInput);
        }
        let p = s.max(lo).min(hi);
        let term = if *y { p.ln() } else { (F::one() - p).ln() };
        total = total - term;
    }
    Ok(total / F::from(scores.len()).unwrap())
}

/// Accumulate gradients for one example given `d loss / d z_out`.
///
/// With the sigmoid folded into the cross entropy the output delta is
/// `(score - y) / batch_len`.
pub fn backward<F: Float>(
    params: &HeadParams<F>,
    input: Input<'_, F>,
    cache: &ForwardCache<F>,
    d_z_out: F,
    grads: &mut HeadParams<F>,
    dropout_mask: Option<&[F]>,
) {
    let n_layers = params.layers.len();
    let out_layer = &params.layers[n_layers - 1];

    // Output layer.
    {
        let g = &mut grads.layers[n_layers - 1];
        for (gw, h) in g.w.iter_mut().zip(&cache.h_act) {
            *gw = *gw + d_z_out * *h;
        }
        g.b[0] = g.b[0] + d_z_out;
    }

    // Back through output weights, dropout and ReLU.
    let mut d_hidden: Vec<F> = out_layer.w.iter().map(|w| *w * d_z_out).collect();
    if let Some(mask) = dropout_mask {
        for (d, m) in d_hidden.iter_mut().zip(mask) {
            *d = *d * *m;
        }
    }
    for (d, z) in d_hidden.iter_mut().zip(&cache.h_pre) {
        if *z <= F::zero() {
            *d = F::zero();
        }
    }

    // Hidden dense layer over the stack input.
    let stack_input: &[F] = match &cache.pooled {
        Some(pooled) => pooled,
        None => &cache.input_mean,
    };
    let hidden_layer = &params.layers[n_layers - 2];
    {
        let g = &mut grads.layers[n_layers - 2];
        for (o, d) in d_hidden.iter().enumerate() {
            let row = &mut g.w[o * g.in_dim..(o + 1) * g.in_dim];
            for (gw, x) in row.iter_mut().zip(stack_input) {
                *gw = *gw + *d * *x;
            }
            g.b[o] = g.b[o] + *d;
        }
    }

    // Matrix head: projection layer via the pooled-input identity — the
    // gradient of a mean-pooled linear map is the outer product with the
    // mean input frame.
    if n_layers == 3 {
        let mut d_pool = vec![F::zero(); MATRIX_HIDDEN_DIM];
        for (o, d) in d_hidden.iter().enumerate() {
            let row = &hidden_layer.w[o * hidden_layer.in_dim..(o + 1) * hidden_layer.in_dim];
            for (dp, w) in d_pool.iter_mut().zip(row) {
                *dp = *dp + *w * *d;
            }
        }
        let g = &mut grads.layers[0];
        for (o, d) in d_pool.iter().enumerate() {
            let row = &mut g.w[o * g.in_dim..(o + 1) * g.in_dim];
            for (gw, x) in row.iter_mut().zip(&cache.input_mean) {
                *gw = *gw + *d * *x;
            }
            g.b[o] = g.b[o] + *d;
        }
        let _ = input;
    }
}

/// Training hyperparameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainConfig {
    pub learning_rate: f32,
    pub beta1: f32,
    pub beta2: f32,
    pub adam_epsilon: f32,
    pub batch_size: usize,
    pub max_epochs: usize,
    pub dropout: f32,
    pub seed: u64,
    /// Episode counts (scripted, spontaneous) for the bias prior.
    pub class_counts: (u64, u64),
}

impl TrainConfig {
    /// Defaults for 1-D feature heads: up to 40 epochs.
    pub fn vector_defaults(seed: u64, class_counts: (u64, u64)) -> Self {
        TrainConfig {
            learning_rate: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            adam_epsilon: 1e-7,
            batch_size: 64,
            max_epochs: 40,
            dropout: 0.2,
            seed,
            class_counts,
        }
    }

    /// Defaults for matrix-input heads: capped at 10 epochs.
    pub fn matrix_defaults(seed: u64, class_counts: (u64, u64)) -> Self {
        TrainConfig {
            max_epochs: 10,
            ..Self::vector_defaults(seed, class_counts)
        }
    }
}

/// First/second moment accumulators for Adam.
#[derive(Debug, Clone)]
pub struct AdamState<F> {
    m: HeadParams<F>,
    v: HeadParams<F>,
    pub step: u64,
}

impl<F: Float> AdamState<F> {
    pub fn new(params: &HeadParams<F>) -> Self {
        AdamState {
            m: HeadParams::zeros(params.arch),
            v: HeadParams::zeros(params.arch),
            step: 0,
        }
    }
}

/// One Adam update with bias-corrected moments.
pub fn adam_step<F: Float>(
    params: &mut HeadParams<F>,
    grads: &HeadParams<F>,
    state: &mut AdamState<F>,
    config: &TrainConfig,
) {
    state.step += 1;
    let lr = F::from(config.learning_rate).unwrap();
    let b1 = F::from(config.beta1).unwrap();
    let b2 = F::from(config.beta2).unwrap();
    let eps = F::from(config.adam_epsilon).unwrap();
    let t = state.step as i32;
    let corr1 = F::one() - b1.powi(t);
    let corr2 = F::one() - b2.powi(t);
    for layer in 0..params.layers.len() {
        let p = &mut params.layers[layer];
        let g = &grads.layers[layer];
        let m = &mut state.m.layers[layer];
        let v = &mut state.v.layers[layer];
        let update = |p: &mut F, g: &F, m: &mut F, v: &mut F| {
            *m = b1 * *m + (F::one() - b1) * *g;
            *v = b2 * *v + (F::one() - b2) * *g * *g;
            let m_hat = *m / corr1;
            let v_hat = *v / corr2;
            *p = *p - lr * m_hat / (v_hat.sqrt() + eps);
        };
        for i in 0..p.w.len() {
            update(&mut p.w[i], &g.w[i], &mut m.w[i], &mut v.w[i]);
        }
        for i in 0..p.b.len() {
            update(&mut p.b[i], &g.b[i], &mut m.b[i], &mut v.b[i]);
        }
    }
}

/// One labeled example borrowed from feature storage.
pub type Example<'a> = (Input<'a, f32>, bool);

/// Per-epoch training diagnostics.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EpochLog {
    pub epoch: usize,
    pub train_loss: f32,
    pub train_accuracy: f32,
    pub train_auc: Option<f64>,
    pub val_loss: f32,
    pub val_accuracy: f32,
    pub val_auc: Option<f64>,
}

/// Trained head plus everything needed to reproduce and apply it.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub params: HeadParams<f32>,
    pub standardizer: Option<Standardizer>,
    pub schema_id: String,
    pub config: TrainConfig,
    /// Epoch (0-based) whose parameters were kept.
    pub epoch: usize,
    /// Validation loss at that epoch.
    pub val_loss: f32,
}

impl Checkpoint {
    /// Score a 1-D feature, applying the stored standardizer if present.
    pub fn score_vector(&self, features: &FeatureVector) -> Result<f32, ModelError> {
        if features.schema_id != self.schema_id {
            return Err(ModelError::SchemaMismatch {
                expected: self.schema_id.clone(),
                got: features.schema_id.clone(),
            });
        }
        match &self.standardizer {
            Some(s) => {
                let mut values = features.values.clone();
                s.apply(&mut values)
                    .map_err(|_| ModelError::ShapeMismatch {
                        expected: s.dim(),
                        got: features.values.len(),
                    })?;
                predict(&self.params, Input::Vector(&values))
            }
            None => predict(&self.params, Input::Vector(&features.values)),
        }
    }

    /// Score a matrix feature.
    pub fn score_matrix(&self, features: &FeatureMatrix) -> Result<f32, ModelError> {
        if features.schema_id != self.schema_id {
            return Err(ModelError::SchemaMismatch {
                expected: self.schema_id.clone(),
                got: features.schema_id.clone(),
            });
        }
        predict(
            &self.params,
            Input::Matrix { data: &features.data, rows: features.rows, cols: features.cols },
        )
    }
}

// Distinct ChaCha streams per purpose, all derived from the config seed.
const STREAM_INIT: u64 = 0;
const STREAM_SHUFFLE: u64 = 1;
const STREAM_DROPOUT: u64 = 2;

/// Train one head with shuffled mini-batches and keep the epoch with the
/// lowest validation loss (earlier epoch on ties). Fully deterministic for
/// a fixed config, dataset order and seed.
pub fn train(
    train_set: &[Example<'_>],
    val_set: &[Example<'_>],
    arch: HeadArch,
    config: &TrainConfig,
    schema_id: &str,
    standardizer: Option<Standardizer>,
) -> Result<(Checkpoint, Vec<EpochLog>), ModelError> {
    if train_set.is_empty() || val_set.is_empty() {
        return Err(ModelError::EmptyDataset);
    }
    let mut params = init_params(arch, config.seed, config.class_counts)?;
    let mut adam = AdamState::new(&params);
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(config.seed);
    shuffle_rng.set_stream(STREAM_SHUFFLE);
    let mut dropout_rng = ChaCha8Rng::seed_from_u64(config.seed);
    dropout_rng.set_stream(STREAM_DROPOUT);
    let _ = STREAM_INIT;

    let keep = 1.0 - config.dropout;
    let mut indices: Vec<usize> = (0..train_set.len()).collect();
    let mut mask = vec![0.0f32; HIDDEN_DIM];
    let mut best: Option<(HeadParams<f32>, usize, f32)> = None;
    let mut logs = Vec::with_capacity(config.max_epochs);

    for epoch in 0..config.max_epochs {
        indices.shuffle(&mut shuffle_rng);
        let mut loss_sum = 0.0f64;
        let mut train_scores: Vec<(f32, bool)> = Vec::with_capacity(train_set.len());
        for batch in indices.chunks(config.batch_size.max(1)) {
            let mut grads = HeadParams::zeros(arch);
            let inv_batch = 1.0 / batch.len() as f32;
            let mut batch_scores = Vec::with_capacity(batch.len());
            let mut batch_labels = Vec::with_capacity(batch.len());
            for &idx in batch {
                let (input, label) = &train_set[idx];
                let mask_ref = if config.dropout > 0.0 {
                    for m in mask.iter_mut() {
                        *m = if dropout_rng.random::<f32>() < config.dropout {
                            0.0
                        } else {
                            1.0 / keep
                        };
                    }
                    Some(mask.as_slice())
                } else {
                    None
                };
                let cache = forward(&params, *input, mask_ref)?;
                let y = if *label { 1.0f32 } else { 0.0 };
                backward(&params, *input, &cache, (cache.score - y) * inv_batch, &mut grads, mask_ref);
                batch_scores.push(cache.score);
                batch_labels.push(*label);
                train_scores.push((cache.score, *label));
            }
            loss_sum += bce_loss(&batch_scores, &batch_labels)? as f64 * batch.len() as f64;
            adam_step(&mut params, &grads, &mut adam, config);
        }

        let train_loss = (loss_sum / train_set.len() as f64) as f32;
        let train_accuracy = accuracy(train_scores.iter().copied());
        let train_auc = auc_of(train_scores.iter().copied());

        // Snippet-level validation in inference mode.
        let mut val_scores = Vec::with_capacity(val_set.len());
        let mut val_labels = Vec::with_capacity(val_set.len());
        for (input, label) in val_set {
            val_scores.push(predict(&params, *input)?);
            val_labels.push(*label);
        }
        let val_loss = bce_loss(&val_scores, &val_labels)?;
        let val_accuracy = accuracy(val_scores.iter().copied().zip(val_labels.iter().copied()));
        let val_auc = auc_of(val_scores.iter().copied().zip(val_labels.iter().copied()));

        logs.push(EpochLog {
            epoch,
            train_loss,
            train_accuracy,
            train_auc,
            val_loss,
            val_accuracy,
            val_auc,
        });

        let better = match &best {
            None => true,
            Some((_, _, best_loss)) => val_loss < *best_loss,
        };
        if better {
            best = Some((params.clone(), epoch, val_loss));
        }
    }

    let (best_params, epoch, val_loss) = best.expect("at least one epoch ran");
    Ok((
        Checkpoint {
            params: best_params,
            standardizer,
            schema_id: String::from(schema_id),
            config: config.clone(),
            epoch,
            val_loss,
        },
        logs,
    ))
}

fn accuracy(scored: impl Iterator<Item = (f32, bool)>) -> f32 {
    let mut correct = 0usize;
    let mut total = 0usize;
    for (score, label) in scored {
        total += 1;
        if (score as f64 >= THRESHOLD) == label {
            correct += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        correct as f32 / total as f32
    }
}

fn auc_of(scored: impl Iterator<Item = (f32, bool)>) -> Option<f64> {
    let mut labels = Vec::new();
    let mut scores = Vec::new();
    for (score, label) in scored {
        labels.push(if label { Label::Scripted } else { Label::Spontaneous });
        scores.push(score as f64);
    }
    roc_auc(&labels, &scores).ok()
}
