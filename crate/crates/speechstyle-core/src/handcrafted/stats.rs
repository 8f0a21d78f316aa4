//! Duration statistics over the VAD segmentation: 25 values.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dsp;
use crate::handcrafted::vad::{SegmentKind, SegmentList};

/// Dimensionality of the duration-statistics block.
pub const DURATION_DIM: usize = 25;

const KINDS: [(SegmentKind, &str); 3] = [
    (SegmentKind::Speech, "speech"),
    (SegmentKind::NonSpeech, "nonspeech"),
    (SegmentKind::OverlapProxy, "overlap"),
];

/// Summarize segment durations: for each of speech / non-speech /
/// overlap-proxy the count, total, mean, std, median, min, max and
/// fraction of the snippet (8 x 3), plus one speaker-alternation proxy,
/// the rate of speech-segment onsets beyond the first per second.
/// Kinds with no segments contribute zeros.
pub fn duration_stats(segments: &SegmentList) -> Vec<f32> {
    let mut out = Vec::with_capacity(DURATION_DIM);
    let mut speech_count = 0usize;
    for (kind, _) in KINDS {
        let durations: Vec<f32> = segments.of_kind(kind).map(|s| s.duration()).collect();
        if kind == SegmentKind::Speech {
            speech_count = durations.len();
        }
        if durations.is_empty() {
            out.extend([0.0; 8]);
            continue;
        }
        let sorted = dsp::sorted(&durations);
        let total: f32 = durations.iter().sum();
        out.extend([
            durations.len() as f32,
            total,
            dsp::mean(&durations),
            dsp::pop_std(&durations),
            dsp::percentile_sorted(&sorted, 0.5),
            sorted[0],
            sorted[sorted.len() - 1],
            total / segments.duration,
        ]);
    }
    out.push(speech_count.saturating_sub(1) as f32 / segments.duration);
    debug_assert_eq!(out.len(), DURATION_DIM);
    out
}

/// Names of the 25 duration statistics, in output order.
pub fn duration_feature_names() -> Vec<String> {
    let mut names = Vec::with_capacity(DURATION_DIM);
    for (_, kind) in KINDS {
        for stat in ["count", "total_s", "mean_s", "std_s", "median_s", "min_s", "max_s", "fraction"] {
            names.push(format!("{kind}_{stat}"));
        }
    }
    names.push(String::from("alternation_rate"));
    names
}
