//! Per-dimension z-score standardization fitted on training folds.

use alloc::vec;
use alloc::vec::Vec;

use crate::embeddings::FeatureVector;
use crate::fmath;
use crate::handcrafted::FeatureError;

/// Floor applied to per-dimension standard deviations.
pub const STANDARDIZER_EPSILON: f32 = 1e-6;

/// Fitted standardization statistics. Stored deviations are already
/// floored at [`STANDARDIZER_EPSILON`], so applying and inverting are
/// exact inverses.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f32>,
    pub std: Vec<f32>,
    pub epsilon: f32,
}

impl Standardizer {
    /// Fit on training-fold vectors (at least two, equal dimension).
    pub fn fit(vectors: &[&FeatureVector]) -> Result<Self, FeatureError> {
        if vectors.len() < 2 {
            return Err(FeatureError::TooFewVectors(vectors.len()));
        }
        let dim = vectors[0].dim();
        for v in vectors {
            if v.dim() != dim {
                return Err(FeatureError::DimensionMismatch {
                    component: "standardizer input",
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        let n = vectors.len() as f32;
        let mut mean = vec![0.0f32; dim];
        for v in vectors {
            for (m, x) in mean.iter_mut().zip(&v.values) {
                *m += x;
            }
        }
        for m in mean.iter_mut() {
            *m /= n;
        }
        let mut std = vec![0.0f32; dim];
        for v in vectors {
            for ((s, x), m) in std.iter_mut().zip(&v.values).zip(&mean) {
                let d = x - m;
                *s += d * d;
            }
        }
        for s in std.iter_mut() {
            *s = fmath::sqrt(*s / n).max(STANDARDIZER_EPSILON);
        }
        Ok(Standardizer { mean, std, epsilon: STANDARDIZER_EPSILON })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// z = (x - mean) / std, in place.
    pub fn apply(&self, values: &mut [f32]) -> Result<(), FeatureError> {
        if values.len() != self.dim() {
            return Err(FeatureError::DimensionMismatch {
                component: "standardizer input",
                expected: self.dim(),
                got: values.len(),
            });
        }
        for ((x, m), s) in values.iter_mut().zip(&self.mean).zip(&self.std) {
            *x = (*x - m) / s;
        }
        Ok(())
    }

    /// x = z * std + mean, in place.
    pub fn invert(&self, values: &mut [f32]) -> Result<(), FeatureError> {
        if values.len() != self.dim() {
            return Err(FeatureError::DimensionMismatch {
                component: "standardizer input",
                expected: self.dim(),
                got: values.len(),
            });
        }
        for ((z, m), s) in values.iter_mut().zip(&self.mean).zip(&self.std) {
            *z = *z * s + m;
        }
        Ok(())
    }
}
