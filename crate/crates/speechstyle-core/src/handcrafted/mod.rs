//! The 115-dimensional handcrafted feature vector.
//!
//! Layout: 88 acoustic functionals, then 2 speaking-rate statistics, then
//! 25 speech/non-speech/overlap duration statistics. [`feature_names`]
//! lists every dimension in order; the extractor stamps vectors with the
//! [`crate::embeddings::SCHEMA_HANDCRAFTED`] schema id.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::audio::Snippet;
use crate::embeddings::{FeatureVector, SCHEMA_HANDCRAFTED};

pub mod functionals;
pub mod lld;
pub mod pitch;
pub mod rate;
pub mod standardize;
pub mod stats;
pub mod vad;

pub use functionals::{acoustic_feature_names, compute_functionals, ACOUSTIC_DIM};
pub use lld::{extract_llds, FrameSeries};
pub use pitch::estimate_f0;
pub use rate::{speaking_rate, RATE_DIM};
pub use standardize::{Standardizer, STANDARDIZER_EPSILON};
pub use stats::{duration_feature_names, duration_stats, DURATION_DIM};
pub use vad::{detect_speech_segments, Segment, SegmentKind, SegmentList};

/// Total handcrafted dimensionality: 88 + 2 + 25.
pub const HANDCRAFTED_DIM: usize = ACOUSTIC_DIM + RATE_DIM + DURATION_DIM;

/// Feature extraction failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureError {
    DimensionMismatch {
        component: &'static str,
        expected: usize,
        got: usize,
    },
    EmptySeries,
    TooFewVectors(usize),
    NonFinite { index: usize },
}

impl fmt::Display for FeatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureError::DimensionMismatch { component, expected, got } => {
                write!(f, "{component}: expected {expected} values, got {got}")
            }
            FeatureError::EmptySeries => f.write_str("frame series is empty"),
            FeatureError::TooFewVectors(n) => {
                write!(f, "standardizer needs at least 2 vectors, got {n}")
            }
            FeatureError::NonFinite { index } => {
                write!(f, "non-finite feature value at index {index}")
            }
        }
    }
}

impl core::error::Error for FeatureError {}

/// Concatenate the three blocks into the 115-dim vector, in the order
/// `[acoustic | rate | stats]`, verifying each block's dimension.
pub fn assemble_handcrafted(
    acoustic: &[f32],
    rate: &[f32],
    stats: &[f32],
) -> Result<FeatureVector, FeatureError> {
    if acoustic.len() != ACOUSTIC_DIM {
        return Err(FeatureError::DimensionMismatch {
            component: "acoustic",
            expected: ACOUSTIC_DIM,
            got: acoustic.len(),
        });
    }
    if rate.len() != RATE_DIM {
        return Err(FeatureError::DimensionMismatch {
            component: "rate",
            expected: RATE_DIM,
            got: rate.len(),
        });
    }
    if stats.len() != DURATION_DIM {
        return Err(FeatureError::DimensionMismatch {
            component: "stats",
            expected: DURATION_DIM,
            got: stats.len(),
        });
    }
    let mut values = Vec::with_capacity(HANDCRAFTED_DIM);
    values.extend_from_slice(acoustic);
    values.extend_from_slice(rate);
    values.extend_from_slice(stats);
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(FeatureError::NonFinite { index });
    }
    Ok(FeatureVector::new(values, SCHEMA_HANDCRAFTED))
}

/// Run the full handcrafted pipeline on one snippet. The per-frame
/// analysis is shared across the functional, VAD and rate paths, so this
/// is the efficient way to extract everything at once.
pub fn extract_handcrafted(snippet: &Snippet) -> Result<FeatureVector, FeatureError> {
    let analysis = lld::analyze(&snippet.samples);
    let duration = snippet.samples.len() as f32 / crate::SAMPLE_RATE as f32;
    let acoustic = compute_functionals(&analysis.series)?;
    let segments = vad::segments_from_analysis(&analysis, duration);
    let stats = duration_stats(&segments);
    let (rate_mean, rate_std) = speaking_rate(&analysis.series);
    assemble_handcrafted(&acoustic, &[rate_mean, rate_std], &stats)
}

/// All 115 feature names, matching the assembled vector order.
pub fn feature_names() -> Vec<String> {
    let mut names = acoustic_feature_names();
    names.push(String::from("rate_mean"));
    names.push(String::from("rate_std"));
    names.extend(duration_feature_names());
    debug_assert_eq!(names.len(), HANDCRAFTED_DIM);
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn zeros_assemble_to_zeros() {
        let v = assemble_handcrafted(&[0.0; 88], &[0.0; 2], &[0.0; 25]).unwrap();
        assert_eq!(v.dim(), 115);
        assert!(v.values.iter().all(|x| *x == 0.0));
        assert_eq!(v.schema_id, SCHEMA_HANDCRAFTED);
    }

    #[test]
    fn wrong_stats_dimension_names_the_component() {
        let err = assemble_handcrafted(&[0.0; 88], &[0.0; 2], &[0.0; 24]).unwrap_err();
        match err {
            FeatureError::DimensionMismatch { component, expected, got } => {
                assert_eq!(component, "stats");
                assert_eq!(expected, 25);
                assert_eq!(got, 24);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rate_mean_lands_at_index_88() {
        let mut rate = [0.0f32; 2];
        rate[0] = 3.5;
        let v = assemble_handcrafted(&[0.0; 88], &rate, &[0.0; 25]).unwrap();
        assert_eq!(v.values[88], 3.5);
        assert_eq!(v.values[89], 0.0);
    }

    #[test]
    fn names_line_up_with_dimensions() {
        let names = feature_names();
        assert_eq!(names.len(), HANDCRAFTED_DIM);
        assert_eq!(names[88], "rate_mean");
        assert_eq!(names[90], "speech_count");
    }

    fn extract(samples: Vec<f32>) -> FeatureVector {
        let snippet = Snippet::from_samples("hc", 0, samples).unwrap();
        extract_handcrafted(&snippet).unwrap()
    }

    #[test]
    fn silence_noise_and_clipping_stay_finite() {
        // Digital silence.
        let silent = extract(vec![0.0; crate::SNIPPET_LEN]);
        assert!(silent.values.iter().all(|v| v.is_finite()));

        // Uniform noise.
        let mut state = 0xABCDEF12345u64;
        let noise: Vec<f32> = (0..crate::SNIPPET_LEN)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (((state >> 33) as f32 / (1u64 << 31) as f32) - 1.0) * 0.9
            })
            .collect();
        let noisy = extract(noise);
        assert!(noisy.values.iter().all(|v| v.is_finite()));

        // Full-scale square wave (clipping level).
        let clipped: Vec<f32> = (0..crate::SNIPPET_LEN)
            .map(|i| if (i / 40) % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let hard = extract(clipped);
        assert!(hard.values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn hop_shift_barely_moves_distributional_functionals() {
        // A 5 Hz amplitude-modulated 170 Hz tone, long enough that one
        // hop of shift is negligible.
        let gen = |offset: usize| -> Vec<f32> {
            (0..crate::SNIPPET_LEN)
                .map(|i| {
                    let t = (i + offset) as f32 / 16000.0;
                    let env = 0.3 + 0.7 * 0.5
                        * (1.0 - crate::fmath::cos(2.0 * core::f32::consts::PI * 5.0 * t));
                    crate::fmath::sin(2.0 * core::f32::consts::PI * 170.0 * t) * env * 0.4
                })
                .collect()
        };
        let a = extract(gen(0));
        let b = extract(gen(crate::dsp::HOP_LEN));
        // Compare the mean/std style functionals of the pitch and energy
        // blocks (indices 0..6 and 8..14).
        for idx in (0..6).chain(8..14) {
            let (x, y) = (a.values[idx], b.values[idx]);
            let denom = x.abs().max(1.0);
            assert!(
                (x - y).abs() / denom < 0.01,
                "functional {idx} moved: {x} vs {y}"
            );
        }
    }
}
