//! Per-frame low-level descriptors on the 100 fps analysis grid.

use alloc::vec::Vec;

use crate::audio::Snippet;
use crate::dsp::{
    self, bin_frequency, hann_window, magnitude_spectrum, MfccExtractor, FRAME_RATE, HOP_LEN,
    MFCC_COEFFS, SPECTRUM_BINS, WINDOW_LEN,
};
use crate::fmath;
use crate::handcrafted::pitch::{self, PitchFrame, PITCH_WINDOW};

/// Per-frame acoustic series over one snippet. All vectors share one
/// length; f0 is 0 on unvoiced frames and otherwise within [50, 500] Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSeries {
    /// Frames per second (100).
    pub frame_rate: f32,
    /// Fundamental frequency in Hz, 0 where unvoiced.
    pub f0: Vec<f32>,
    /// Periodicity confidence in [0, 1].
    pub voicing: Vec<f32>,
    /// Frame energy in dB relative to full scale, floored at -100.
    pub energy: Vec<f32>,
    /// 13 cepstral coefficients per frame.
    pub mfcc: Vec<[f32; MFCC_COEFFS]>,
    /// Spectral centroid in Hz.
    pub centroid: Vec<f32>,
    /// Magnitude spectral flux against the previous frame.
    pub flux: Vec<f32>,
    /// Spectral slope in dB per kHz.
    pub slope: Vec<f32>,
    /// Harmonics-to-noise proxy in dB, 0 where unvoiced.
    pub hnr: Vec<f32>,
}

impl FrameSeries {
    pub fn len(&self) -> usize {
        self.f0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f0.is_empty()
    }

    pub fn duration_seconds(&self) -> f32 {
        self.len() as f32 / self.frame_rate
    }

    /// True when frame `i` counts as voiced.
    pub fn voiced(&self, i: usize) -> bool {
        self.voicing[i] > 0.5 && self.f0[i] > 0.0
    }
}

/// Frame series plus the extra per-frame cues the VAD consumes.
#[derive(Debug, Clone)]
pub(crate) struct FrameAnalysis {
    pub series: FrameSeries,
    /// Spectral flatness in [0, 1] (1 = white).
    pub flatness: Vec<f32>,
    /// Two deep inharmonic periodicities detected in this frame.
    pub double_period: Vec<bool>,
}

/// Energy floor returned for digital silence: 10*log10(1e-10).
pub const ENERGY_FLOOR_DB: f32 = -100.0;

/// Extract the full LLD series for one snippet.
pub fn extract_llds(snippet: &Snippet) -> FrameSeries {
    analyze(&snippet.samples).series
}

pub(crate) fn analyze(samples: &[f32]) -> FrameAnalysis {
    let n_frames = dsp::frame_count(samples.len());
    let window = hann_window(WINDOW_LEN);
    let mfcc_extractor = MfccExtractor::new();

    // Fixed regression abscissa for the spectral slope: bin frequency in
    // kHz over bins 1..=256.
    let freqs_khz: Vec<f32> = (1..SPECTRUM_BINS).map(|k| bin_frequency(k) / 1000.0).collect();
    let freq_mean = dsp::mean(&freqs_khz);
    let freq_denom: f32 = freqs_khz.iter().map(|f| (f - freq_mean) * (f - freq_mean)).sum();

    let mut series = FrameSeries {
        frame_rate: FRAME_RATE,
        f0: Vec::with_capacity(n_frames),
        voicing: Vec::with_capacity(n_frames),
        energy: Vec::with_capacity(n_frames),
        mfcc: Vec::with_capacity(n_frames),
        centroid: Vec::with_capacity(n_frames),
        flux: Vec::with_capacity(n_frames),
        slope: Vec::with_capacity(n_frames),
        hnr: Vec::with_capacity(n_frames),
    };
    let mut flatness = Vec::with_capacity(n_frames);
    let mut double_period = Vec::with_capacity(n_frames);

    let mut windowed = [0.0f32; WINDOW_LEN];
    let mut prev_mags: Option<[f32; SPECTRUM_BINS]> = None;
    for t in 0..n_frames {
        let start = t * HOP_LEN;
        let frame = &samples[start..start + WINDOW_LEN];

        // Energy over the raw 25 ms window.
        let mean_sq = frame.iter().map(|s| s * s).sum::<f32>() / WINDOW_LEN as f32;
        let energy_db = 10.0 * fmath::log10(mean_sq + 1e-10);
        series.energy.push(energy_db);

        // Spectrum of the Hann-windowed frame.
        for (w, (s, h)) in windowed.iter_mut().zip(frame.iter().zip(&window)) {
            *w = s * h;
        }
        let mags = magnitude_spectrum(&windowed);
        let mut power = [0.0f32; SPECTRUM_BINS];
        for (p, m) in power.iter_mut().zip(&mags) {
            *p = m * m;
        }

        series.mfcc.push(mfcc_extractor.compute(&power));

        let mag_sum: f32 = mags.iter().sum();
        series.centroid.push(if mag_sum > 1e-9 {
            mags.iter()
                .enumerate()
                .map(|(k, m)| bin_frequency(k) * m)
                .sum::<f32>()
                / mag_sum
        } else {
            0.0
        });

        series.flux.push(match &prev_mags {
            Some(prev) => {
                let ss: f32 = mags
                    .iter()
                    .zip(prev.iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                fmath::sqrt(ss) / SPECTRUM_BINS as f32
            }
            None => 0.0,
        });

        // Spectral slope: least squares of dB magnitude on kHz.
        let dbs: Vec<f32> = mags[1..].iter().map(|m| 20.0 * fmath::log10(m + 1e-10)).collect();
        let db_mean = dsp::mean(&dbs);
        let cov: f32 = freqs_khz
            .iter()
            .zip(&dbs)
            .map(|(f, d)| (f - freq_mean) * (d - db_mean))
            .sum();
        series.slope.push(if freq_denom > 0.0 { cov / freq_denom } else { 0.0 });

        // Geometric over arithmetic mean of power, excluding DC.
        let log_mean: f32 =
            power[1..].iter().map(|p| fmath::ln(p + 1e-12)).sum::<f32>() / (SPECTRUM_BINS - 1) as f32;
        let arith: f32 = power[1..].iter().sum::<f32>() / (SPECTRUM_BINS - 1) as f32;
        flatness.push((fmath::exp(log_mean) / (arith + 1e-12)).clamp(0.0, 1.0));

        // Pitch over a longer window centered on the same hop, shifted
        // inside the buffer near the edges.
        let pitch_start = start.min(samples.len().saturating_sub(PITCH_WINDOW));
        let p = if samples.len() >= PITCH_WINDOW {
            pitch::analyze_frame(&samples[pitch_start..pitch_start + PITCH_WINDOW])
        } else {
            PitchFrame::UNVOICED
        };
        series.f0.push(p.f0);
        series.voicing.push(p.voicing);
        series.hnr.push(if p.f0 > 0.0 {
            let c = p.cmnd_min.clamp(1e-3, 1.0);
            10.0 * fmath::log10((1.0 - c).max(1e-3) / c)
        } else {
            0.0
        });
        double_period.push(p.f0 > 0.0 && p.cmnd_min < 0.25 && p.second_valley < 0.35);

        prev_mags = Some(mags);
    }

    FrameAnalysis { series, flatness, double_period }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn snippet_from(samples: Vec<f32>) -> Snippet {
        Snippet::from_samples("test", 0, samples).unwrap()
    }

    #[test]
    fn thirty_seconds_gives_2998_frames() {
        let s = snippet_from(vec![0.0; crate::SNIPPET_LEN]);
        let series = extract_llds(&s);
        assert_eq!(series.len(), 2998);
    }

    #[test]
    fn silence_is_unvoiced_at_the_energy_floor() {
        let s = snippet_from(vec![0.0; crate::SNIPPET_LEN]);
        let series = extract_llds(&s);
        assert!(series.voicing.iter().all(|&v| v == 0.0));
        assert!(series.f0.iter().all(|&f| f == 0.0));
        assert!(series.energy.iter().all(|&e| e == ENERGY_FLOOR_DB));
    }

    #[test]
    fn sawtooth_median_f0_within_three_hz() {
        let samples: Vec<f32> = (0..crate::SNIPPET_LEN)
            .map(|i| {
                let t = i as f32 / 16000.0;
                (1..=6)
                    .map(|h| fmath::sin(2.0 * core::f32::consts::PI * 150.0 * h as f32 * t) / h as f32)
                    .sum::<f32>()
                    * 0.25
            })
            .collect();
        let series = extract_llds(&snippet_from(samples));
        let mut voiced: Vec<f32> = (0..series.len())
            .filter(|&i| series.voiced(i))
            .map(|i| series.f0[i])
            .collect();
        assert!(voiced.len() > series.len() / 2);
        voiced.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let median = voiced[voiced.len() / 2];
        assert!((median - 150.0).abs() <= 3.0, "median f0 {median}");
    }

    #[test]
    fn all_series_share_length_and_stay_finite() {
        // Clipping-level noise.
        let mut state = 1u64;
        let samples: Vec<f32> = (0..crate::SNIPPET_LEN)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                if state >> 63 == 0 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        let series = extract_llds(&snippet_from(samples));
        let n = series.len();
        assert!(n > 0);
        assert_eq!(series.voicing.len(), n);
        assert_eq!(series.energy.len(), n);
        assert_eq!(series.mfcc.len(), n);
        assert_eq!(series.centroid.len(), n);
        assert_eq!(series.flux.len(), n);
        assert_eq!(series.slope.len(), n);
        assert_eq!(series.hnr.len(), n);
        for i in 0..n {
            assert!(series.f0[i] == 0.0 || (50.0..=500.0).contains(&series.f0[i]));
            assert!(series.energy[i].is_finite());
            assert!(series.centroid[i].is_finite());
            assert!(series.flux[i].is_finite());
            assert!(series.slope[i].is_finite());
            assert!(series.hnr[i].is_finite());
            assert!(series.mfcc[i].iter().all(|c| c.is_finite()));
        }
    }
}
