//! Snippet-level functionals over the LLD series: the 88-dimensional
//! acoustic block of the handcrafted vector.
//!
//! The layout follows the spirit of the eGeMAPS functional sets (pitch,
//! energy, spectral and cepstral statistics plus voiced/unvoiced segment
//! durations) but is an independent schema; values are not comparable to
//! any external tool. [`acoustic_feature_names`] documents the exact order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dsp::{self, MFCC_COEFFS};
use crate::handcrafted::lld::FrameSeries;
use crate::handcrafted::FeatureError;

/// Dimensionality of the acoustic functional block.
pub const ACOUSTIC_DIM: usize = 88;

/// Full 8-functional summary of one (optionally masked) series:
/// mean, std, p20, p50, p80, p80-p20 range, mean rising slope, mean
/// falling slope. Slopes are per second and only taken between adjacent
/// valid frames; an empty selection yields all zeros.
fn full_stats(values: &[f32], valid: impl Fn(usize) -> bool, frame_rate: f32) -> [f32; 8] {
    let selected: Vec<f32> = (0..values.len()).filter(|&i| valid(i)).map(|i| values[i]).collect();
    if selected.is_empty() {
        return [0.0; 8];
    }
    let sorted = dsp::sorted(&selected);
    let p20 = dsp::percentile_sorted(&sorted, 0.2);
    let p50 = dsp::percentile_sorted(&sorted, 0.5);
    let p80 = dsp::percentile_sorted(&sorted, 0.8);

    let mut rising = 0.0f32;
    let mut n_rising = 0usize;
    let mut falling = 0.0f32;
    let mut n_falling = 0usize;
    for i in 1..values.len() {
        if !(valid(i) && valid(i - 1)) {
            continue;
        }
        let d = (values[i] - values[i - 1]) * frame_rate;
        if d > 0.0 {
            rising += d;
            n_rising += 1;
        } else if d < 0.0 {
            falling += d;
            n_falling += 1;
        }
    }
    [
        dsp::mean(&selected),
        dsp::pop_std(&selected),
        p20,
        p50,
        p80,
        p80 - p20,
        if n_rising > 0 { rising / n_rising as f32 } else { 0.0 },
        if n_falling > 0 { falling / n_falling as f32 } else { 0.0 },
    ]
}

fn mean_std(values: &[f32], valid: impl Fn(usize) -> bool) -> (f32, f32) {
    let selected: Vec<f32> = (0..values.len()).filter(|&i| valid(i)).map(|i| values[i]).collect();
    (dsp::mean(&selected), dsp::pop_std(&selected))
}

/// Lengths in seconds of the maximal runs where `mask` holds.
fn run_lengths(mask: &[bool], frame_rate: f32) -> Vec<f32> {
    let mut runs = Vec::new();
    let mut current = 0usize;
    for &m in mask {
        if m {
            current += 1;
        } else if current > 0 {
            runs.push(current as f32 / frame_rate);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current as f32 / frame_rate);
    }
    runs
}

/// Compute the 88 acoustic functionals for one snippet's series.
///
/// Pitch and HNR functionals are taken over voiced frames only and are
/// defined as 0 when the snippet has no voiced frames at all.
pub fn compute_functionals(series: &FrameSeries) -> Result<Vec<f32>, FeatureError> {
    if series.is_empty() {
        return Err(FeatureError::EmptySeries);
    }
    let n = series.len();
    let voiced_mask: Vec<bool> = (0..n).map(|i| series.voiced(i)).collect();
    let voiced = |i: usize| voiced_mask[i];
    let all = |_: usize| true;

    let mut out = Vec::with_capacity(ACOUSTIC_DIM);
    out.extend(full_stats(&series.f0, voiced, series.frame_rate));
    out.extend(full_stats(&series.energy, all, series.frame_rate));

    let (v_mean, v_std) = mean_std(&series.voicing, all);
    let v_sorted = dsp::sorted(&series.voicing);
    out.extend([v_mean, v_std, dsp::percentile_sorted(&v_sorted, 0.5)]);

    let (h_mean, h_std) = mean_std(&series.hnr, voiced);
    out.extend([h_mean, h_std]);

    let (c_mean, c_std) = mean_std(&series.centroid, all);
    out.extend([c_mean, c_std]);

    let (fl_mean, fl_std) = mean_std(&series.flux, all);
    let (fl_voiced, _) = mean_std(&series.flux, voiced);
    let (fl_unvoiced, _) = mean_std(&series.flux, |i| !voiced_mask[i]);
    out.extend([fl_mean, fl_std, fl_voiced, fl_unvoiced]);

    let (s_mean, s_std) = mean_std(&series.slope, all);
    out.extend([s_mean, s_std]);

    for c in 0..MFCC_COEFFS {
        let coef: Vec<f32> = series.mfcc.iter().map(|m| m[c]).collect();
        let sorted = dsp::sorted(&coef);
        out.extend([
            dsp::mean(&coef),
            dsp::pop_std(&coef),
            dsp::percentile_sorted(&sorted, 0.2),
            dsp::percentile_sorted(&sorted, 0.8),
        ]);
    }

    // Temporal block: voiced/unvoiced segment-length statistics.
    let duration = series.duration_seconds();
    let voiced_runs = run_lengths(&voiced_mask, series.frame_rate);
    let unvoiced_mask: Vec<bool> = voiced_mask.iter().map(|v| !v).collect();
    let unvoiced_runs = run_lengths(&unvoiced_mask, series.frame_rate);
    let n_voiced = voiced_mask.iter().filter(|v| **v).count();
    out.extend([
        dsp::mean(&voiced_runs),
        dsp::pop_std(&voiced_runs),
        dsp::mean(&unvoiced_runs),
        dsp::pop_std(&unvoiced_runs),
        voiced_runs.len() as f32 / duration,
        energy_peak_rate(&series.energy, series.frame_rate),
        n_voiced as f32 / n as f32,
    ]);

    debug_assert_eq!(out.len(), ACOUSTIC_DIM);
    Ok(out)
}

/// Rate of prominent energy maxima per second: local peaks at least 3 dB
/// above the median frame energy.
fn energy_peak_rate(energy: &[f32], frame_rate: f32) -> f32 {
    if energy.len() < 3 {
        return 0.0;
    }
    let sorted = dsp::sorted(energy);
    let gate = dsp::percentile_sorted(&sorted, 0.5) + 3.0;
    let mut peaks = 0usize;
    for i in 1..energy.len() - 1 {
        if energy[i] > energy[i - 1] && energy[i] >= energy[i + 1] && energy[i] > gate {
            peaks += 1;
        }
    }
    peaks as f32 / (energy.len() as f32 / frame_rate)
}

/// Names of the 88 acoustic functionals, in output order.
pub fn acoustic_feature_names() -> Vec<String> {
    let mut names = Vec::with_capacity(ACOUSTIC_DIM);
    let full = ["mean", "std", "p20", "p50", "p80", "range_p20_p80", "rise_slope_mean", "fall_slope_mean"];
    for f in full {
        names.push(format!("f0_{f}"));
    }
    for f in full {
        names.push(format!("energy_{f}"));
    }
    for f in ["mean", "std", "p50"] {
        names.push(format!("voicing_{f}"));
    }
    for f in ["mean", "std"] {
        names.push(format!("hnr_{f}"));
    }
    for f in ["mean", "std"] {
        names.push(format!("centroid_{f}"));
    }
    for f in ["mean", "std", "voiced_mean", "unvoiced_mean"] {
        names.push(format!("flux_{f}"));
    }
    for f in ["mean", "std"] {
        names.push(format!("slope_{f}"));
    }
    for c in 0..MFCC_COEFFS {
        for f in ["mean", "std", "p20", "p80"] {
            names.push(format!("mfcc{c}_{f}"));
        }
    }
    for f in [
        "voiced_seg_len_mean",
        "voiced_seg_len_std",
        "unvoiced_seg_len_mean",
        "unvoiced_seg_len_std",
        "voiced_segs_per_sec",
        "energy_peak_rate",
        "voiced_fraction",
    ] {
        names.push(String::from(f));
    }
    debug_assert_eq!(names.len(), ACOUSTIC_DIM);
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn series_with_f0(f0: Vec<f32>) -> FrameSeries {
        let n = f0.len();
        let voicing = f0.iter().map(|&f| if f > 0.0 { 1.0 } else { 0.0 }).collect();
        FrameSeries {
            frame_rate: 100.0,
            f0,
            voicing,
            energy: vec![-30.0; n],
            mfcc: vec![[0.0; MFCC_COEFFS]; n],
            centroid: vec![500.0; n],
            flux: vec![0.01; n],
            slope: vec![-1.0; n],
            hnr: vec![10.0; n],
        }
    }

    #[test]
    fn constant_f0_has_zero_std_and_exact_mean() {
        let series = series_with_f0(vec![200.0; 300]);
        let v = compute_functionals(&series).unwrap();
        assert_eq!(v.len(), ACOUSTIC_DIM);
        assert!((v[0] - 200.0).abs() < 1e-4, "f0 mean {}", v[0]);
        assert_eq!(v[1], 0.0, "f0 std");
    }

    #[test]
    fn distributional_functionals_are_reversal_invariant() {
        let f0: Vec<f32> = (0..400).map(|i| 100.0 + (i % 37) as f32 * 3.0).collect();
        let mut series = series_with_f0(f0);
        series.energy = (0..400).map(|i| -40.0 + (i % 23) as f32).collect();
        let forward = compute_functionals(&series).unwrap();

        series.f0.reverse();
        series.voicing.reverse();
        series.energy.reverse();
        series.mfcc.reverse();
        series.centroid.reverse();
        series.flux.reverse();
        series.slope.reverse();
        series.hnr.reverse();
        let backward = compute_functionals(&series).unwrap();

        // mean/std/percentiles/range match; slope features (indices 6, 7
        // within each 8-block) may flip.
        for block in [0usize, 8] {
            for j in 0..6 {
                assert!(
                    (forward[block + j] - backward[block + j]).abs() < 1e-3,
                    "index {} fwd {} bwd {}",
                    block + j,
                    forward[block + j],
                    backward[block + j]
                );
            }
        }
        for idx in 29..81 {
            assert!((forward[idx] - backward[idx]).abs() < 1e-3);
        }
    }

    #[test]
    fn linear_ramp_median_is_midpoint() {
        // 100 -> 300 Hz over 401 frames.
        let f0: Vec<f32> = (0..=400).map(|i| 100.0 + i as f32 * 0.5).collect();
        let series = series_with_f0(f0);
        let v = compute_functionals(&series).unwrap();
        assert!((v[3] - 200.0).abs() <= 0.5, "p50 {}", v[3]);
        // Rising slope mean: 0.5 Hz per frame at 100 fps = 50 Hz/s.
        assert!((v[6] - 50.0).abs() < 0.5, "rise {}", v[6]);
        assert_eq!(v[7], 0.0, "no falling pairs");
    }

    #[test]
    fn unvoiced_snippet_zeroes_the_pitch_block() {
        let series = series_with_f0(vec![0.0; 200]);
        let v = compute_functionals(&series).unwrap();
        for (i, value) in v.iter().take(8).enumerate() {
            assert_eq!(*value, 0.0, "f0 functional {i}");
        }
        // HNR block too.
        assert_eq!(v[19], 0.0);
        assert_eq!(v[20], 0.0);
        // voiced fraction
        assert_eq!(v[87], 0.0);
    }

    #[test]
    fn empty_series_is_an_error() {
        let series = series_with_f0(vec![]);
        assert!(matches!(compute_functionals(&series), Err(FeatureError::EmptySeries)));
    }

    #[test]
    fn names_match_dimensions_and_are_unique() {
        let names = acoustic_feature_names();
        assert_eq!(names.len(), ACOUSTIC_DIM);
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), ACOUSTIC_DIM);
    }
}
