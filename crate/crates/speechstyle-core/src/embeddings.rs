//! Feature containers and class-score summarizers for precomputed
//! embeddings.
//!
//! Model inference for the upstream embedding extractors is out of scope;
//! matrices and vectors arrive through the `speechstyle` crate's feature
//! file format and are summarized or fed to classifier heads here.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmath;

/// Schema tag for the 115-dim handcrafted vector.
pub const SCHEMA_HANDCRAFTED: &str = "handcrafted-v1";
/// Schema tag for mean/std class-score summaries (dim 2C).
pub const SCHEMA_CLASSSCORE_SUMMARY: &str = "classscore-summary-v1";
/// Schema tag for top-k frame-count summaries (dim C).
pub const SCHEMA_CLASSSCORE_TOPK: &str = "classscore-topk-v1";
/// Number of audio-event classes in YAMNet-style score matrices.
pub const YAMNET_CLASSES: usize = 521;

/// A 1-D feature with its schema identity.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f32>,
    pub schema_id: String,
}

impl FeatureVector {
    pub fn new(values: Vec<f32>, schema_id: &str) -> Self {
        FeatureVector {
            values,
            schema_id: String::from(schema_id),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// A time × dim feature matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    /// Row-major payload of `rows * cols` values.
    pub data: Vec<f32>,
    /// Time frames.
    pub rows: usize,
    /// Embedding / class dimension.
    pub cols: usize,
    pub schema_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    Empty,
    TopKTooLarge { k: usize, classes: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ShapeMismatch { rows, cols, len } => {
                write!(f, "payload of {len} values cannot be {rows}x{cols}")
            }
            MatrixError::Empty => f.write_str("matrix must have at least one row and column"),
            MatrixError::TopKTooLarge { k, classes } => {
                write!(f, "top-{k} requested but matrix has only {classes} classes")
            }
        }
    }
}

impl core::error::Error for MatrixError {}

impl FeatureMatrix {
    pub fn new(data: Vec<f32>, rows: usize, cols: usize, schema_id: &str) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch { rows, cols, len: data.len() });
        }
        Ok(FeatureMatrix {
            data,
            rows,
            cols,
            schema_id: String::from(schema_id),
        })
    }

    pub fn row(&self, t: usize) -> &[f32] {
        &self.data[t * self.cols..(t + 1) * self.cols]
    }

    /// Truncate or zero-pad the time axis to exactly `rows` frames.
    /// Returns how many rows were cut (negative meaning rows added).
    pub fn fit_rows(&mut self, rows: usize) -> isize {
        let delta = self.rows as isize - rows as isize;
        self.data.resize(rows * self.cols, 0.0);
        self.rows = rows;
        delta
    }
}

/// Per-frame scores over a fixed audio-event taxonomy. The frame hop of
/// YAMNet-style inputs is 0.48 s (0.96 s windows, 50% overlap).
pub type ClassScoreMatrix = FeatureMatrix;

/// Mean and population standard deviation of each class's scores across
/// time, concatenated `[means | stds]`. C classes give a 2C vector; the
/// 521 YAMNet classes give 1042 dims.
pub fn class_score_summary(scores: &ClassScoreMatrix) -> FeatureVector {
    let c = scores.cols;
    let t = scores.rows;
    let mut out = vec![0.0f32; 2 * c];
    let (means, stds) = out.split_at_mut(c);
    for row in 0..t {
        for (j, v) in scores.row(row).iter().enumerate() {
            means[j] += v;
        }
    }
    for m in means.iter_mut() {
        *m /= t as f32;
    }
    for row in 0..t {
        for (j, v) in scores.row(row).iter().enumerate() {
            let d = v - means[j];
            stds[j] += d * d;
        }
    }
    for s in stds.iter_mut() {
        *s = fmath::sqrt(*s / t as f32);
    }
    FeatureVector::new(out, SCHEMA_CLASSSCORE_SUMMARY)
}

/// Per-class count of frames where the class ranks inside the top `k`
/// scores. Ties at the k-th rank break toward the lower class index, so
/// the result is deterministic and every frame contributes exactly `k`.
pub fn class_score_top_k_counts(scores: &ClassScoreMatrix, k: usize) -> Result<FeatureVector, MatrixError> {
    let c = scores.cols;
    if k > c {
        return Err(MatrixError::TopKTooLarge { k, classes: c });
    }
    let mut counts = vec![0.0f32; c];
    let mut order: Vec<usize> = Vec::with_capacity(c);
    for t in 0..scores.rows {
        let row = scores.row(t);
        order.clear();
        order.extend(0..c);
        // Descending by score, ascending class index on ties.
        order.sort_unstable_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .expect("NaN in class scores")
                .then(a.cmp(&b))
        });
        for &class in &order[..k] {
            counts[class] += 1.0;
        }
    }
    Ok(FeatureVector::new(counts, SCHEMA_CLASSSCORE_TOPK))
}

/// Default top-k depth used by the summarizer.
pub const TOP_K_DEFAULT: usize = 4;
