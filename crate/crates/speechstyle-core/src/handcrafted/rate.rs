//! Speaking-rate estimation from syllable-like energy nuclei.
//!
//! Nuclei are prominent energy maxima inside voiced spans. The rate is
//! counted over one-second windows; the feature is the mean and population
//! standard deviation of those window rates. This replaces pitch-direction
//! based rate extraction with a self-contained energy-peak method.

use alloc::vec;
use alloc::vec::Vec;

use crate::dsp;
use crate::handcrafted::lld::FrameSeries;

/// Dimensionality of the speaking-rate block (mean, std).
pub const RATE_DIM: usize = 2;

/// Minimum spacing between nuclei, in frames (100 ms, about the fastest
/// plausible syllable rate).
const MIN_PEAK_SPACING: usize = 10;
/// Required prominence of a nucleus over the quietest point of its voiced
/// span, in dB.
const MIN_PROMINENCE_DB: f32 = 2.0;

/// Estimate (mean, std) of the speaking rate in nuclei per second.
/// Returns (0, 0) when nothing is voiced.
pub fn speaking_rate(series: &FrameSeries) -> (f32, f32) {
    if series.is_empty() {
        return (0.0, 0.0);
    }
    let n = series.len();
    let voiced: Vec<bool> = (0..n).map(|i| series.voiced(i)).collect();
    if !voiced.iter().any(|v| *v) {
        return (0.0, 0.0);
    }
    let energy = smooth3(&series.energy);

    // Nuclei per voiced span; a span without a distinct peak still counts
    // as one nucleus.
    let mut nuclei_frames: Vec<usize> = Vec::new();
    let mut span_start = None;
    for i in 0..=n {
        let in_span = i < n && voiced[i];
        match (in_span, span_start) {
            (true, None) => span_start = Some(i),
            (false, Some(s)) => {
                collect_span_nuclei(&energy, s, i, &mut nuclei_frames);
                span_start = None;
            }
            _ => {}
        }
    }

    // Window the nuclei into whole seconds.
    let windows = (series.duration_seconds().ceil() as usize).max(1);
    let mut rates = vec![0.0f32; windows];
    for &f in &nuclei_frames {
        let w = ((f as f32 / series.frame_rate) as usize).min(windows - 1);
        rates[w] += 1.0;
    }
    (dsp::mean(&rates), dsp::pop_std(&rates))
}

fn collect_span_nuclei(energy: &[f32], start: usize, end: usize, out: &mut Vec<usize>) {
    let span = &energy[start..end];
    if span.is_empty() {
        return;
    }
    let span_min = span.iter().copied().fold(f32::INFINITY, f32::min);
    let mut peaks: Vec<usize> = Vec::new();
    for i in 1..span.len().saturating_sub(1) {
        if span[i] > span[i - 1]
            && span[i] >= span[i + 1]
            && span[i] - span_min >= MIN_PROMINENCE_DB
        {
            match peaks.last() {
                Some(&last) if i - last < MIN_PEAK_SPACING => {
                    if span[i] > span[last] {
                        *peaks.last_mut().unwrap() = i;
                    }
                }
                _ => peaks.push(i),
            }
        }
    }
    if peaks.is_empty() {
        // Level spans still carry one syllable-like event.
        out.push(start + span.len() / 2);
    } else {
        out.extend(peaks.iter().map(|p| start + p));
    }
}

fn smooth3(values: &[f32]) -> Vec<f32> {
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(1);
            let hi = (i + 2).min(values.len());
            values[lo..hi].iter().sum::<f32>() / (hi - lo) as f32
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::Snippet;
    use crate::fmath;
    use crate::handcrafted::lld::extract_llds;

    fn snippet(samples: Vec<f32>) -> Snippet {
        Snippet::from_samples("rate", 0, samples).unwrap()
    }

    #[test]
    fn amplitude_modulated_tone_counts_modulation_rate() {
        // 180 Hz carrier, 4 Hz raised-cosine envelope, full snippet.
        let samples: Vec<f32> = (0..crate::SNIPPET_LEN)
            .map(|i| {
                let t = i as f32 / 16000.0;
                let env = 0.05 + 0.95 * 0.5 * (1.0 - fmath::cos(2.0 * core::f32::consts::PI * 4.0 * t));
                fmath::sin(2.0 * core::f32::consts::PI * 180.0 * t) * env * 0.4
            })
            .collect();
        let series = extract_llds(&snippet(samples));
        let (mean, _std) = speaking_rate(&series);
        assert!((mean - 4.0).abs() <= 0.5, "rate mean {mean}");
    }

    #[test]
    fn silence_has_zero_rate() {
        let series = extract_llds(&snippet(vec![0.0; crate::SNIPPET_LEN]));
        assert_eq!(speaking_rate(&series), (0.0, 0.0));
    }

    #[test]
    fn constant_tone_is_at_most_one_nucleus() {
        let samples: Vec<f32> = (0..crate::SNIPPET_LEN)
            .map(|i| fmath::sin(2.0 * core::f32::consts::PI * 200.0 * i as f32 / 16000.0) * 0.3)
            .collect();
        let series = extract_llds(&snippet(samples));
        let (mean, _) = speaking_rate(&series);
        assert!(mean <= 1.0, "constant tone rate {mean}");
    }
}
