//! Shared DSP building blocks: short-time spectra, mel filterbank, DCT.
//!
//! The analysis grid used throughout the crate is a 25 ms window with a
//! 10 ms hop at 16 kHz (400/160 samples, 100 frames per second). Spectra
//! are taken over a zero-padded 512-point real FFT.

use alloc::vec::Vec;

use crate::fmath;

/// Analysis window length in samples (25 ms at 16 kHz).
pub const WINDOW_LEN: usize = 400;
/// Hop between frames in samples (10 ms at 16 kHz).
pub const HOP_LEN: usize = 160;
/// Frames per second on the analysis grid.
pub const FRAME_RATE: f32 = 16_000.0 / HOP_LEN as f32;
/// FFT size used for spectral descriptors.
pub const FFT_LEN: usize = 512;
/// Number of spectrum bins (DC through Nyquist inclusive).
pub const SPECTRUM_BINS: usize = FFT_LEN / 2 + 1;
/// Number of mel filters backing the MFCCs.
pub const MEL_BANDS: usize = 26;
/// Number of cepstral coefficients kept per frame.
pub const MFCC_COEFFS: usize = 13;

/// Number of complete analysis frames in a signal of `len` samples.
pub fn frame_count(len: usize) -> usize {
    if len < WINDOW_LEN {
        0
    } else {
        1 + (len - WINDOW_LEN) / HOP_LEN
    }
}

/// Symmetric Hann window of length `n`.
pub fn hann_window(n: usize) -> Vec<f32> {
    let denom = (n - 1) as f32;
    (0..n)
        .map(|i| 0.5 - 0.5 * fmath::cos(2.0 * core::f32::consts::PI * i as f32 / denom))
        .collect()
}

/// Magnitude spectrum of one windowed frame, bins 0..=256.
///
/// `frame` holds at most [`FFT_LEN`] samples; shorter input is zero padded.
pub fn magnitude_spectrum(frame: &[f32]) -> [f32; SPECTRUM_BINS] {
    debug_assert!(frame.len() <= FFT_LEN);
    let mut buf = [0.0f32; FFT_LEN];
    buf[..frame.len()].copy_from_slice(frame);
    let packed = microfft::real::rfft_512(&mut buf);
    let mut mags = [0.0f32; SPECTRUM_BINS];
    // rfft packs the purely real Nyquist bin into bin 0's imaginary part.
    mags[0] = fmath::abs(packed[0].re);
    mags[SPECTRUM_BINS - 1] = fmath::abs(packed[0].im);
    for (k, c) in packed.iter().enumerate().skip(1) {
        mags[k] = fmath::sqrt(c.re * c.re + c.im * c.im);
    }
    mags
}

/// Center frequency of spectrum bin `k` in Hz.
pub fn bin_frequency(k: usize) -> f32 {
    k as f32 * crate::SAMPLE_RATE as f32 / FFT_LEN as f32
}

fn hz_to_mel(hz: f32) -> f32 {
    2595.0 * fmath::log10(1.0 + hz / 700.0)
}

fn mel_to_hz(mel: f32) -> f32 {
    700.0 * (fmath::powf(10.0, mel / 2595.0) - 1.0)
}

/// Triangular mel filterbank over the 257-bin power spectrum.
///
/// Filters span 0..8000 Hz with edges equally spaced on the mel scale.
pub struct MelBank {
    /// Per filter: (first bin, weights).
    filters: Vec<(usize, Vec<f32>)>,
}

impl MelBank {
    pub fn new() -> Self {
        let lo = hz_to_mel(0.0);
        let hi = hz_to_mel(crate::SAMPLE_RATE as f32 / 2.0);
        let edges: Vec<f32> = (0..MEL_BANDS + 2)
            .map(|i| mel_to_hz(lo + (hi - lo) * i as f32 / (MEL_BANDS + 1) as f32))
            .collect();
        let mut filters = Vec::with_capacity(MEL_BANDS);
        for m in 0..MEL_BANDS {
            let (f_lo, f_c, f_hi) = (edges[m], edges[m + 1], edges[m + 2]);
            let mut first = None;
            let mut weights = Vec::new();
            for k in 0..SPECTRUM_BINS {
                let f = bin_frequency(k);
                let w = if f <= f_lo || f >= f_hi {
                    0.0
                } else if f <= f_c {
                    (f - f_lo) / (f_c - f_lo)
                } else {
                    (f_hi - f) / (f_hi - f_c)
                };
                if w > 0.0 {
                    if first.is_none() {
                        first = Some(k);
                    }
                    weights.push(w);
                } else if first.is_some() {
                    break;
                }
            }
            filters.push((first.unwrap_or(0), weights));
        }
        MelBank { filters }
    }

    /// Log mel energies of one power spectrum.
    pub fn log_energies(&self, power: &[f32; SPECTRUM_BINS]) -> [f32; MEL_BANDS] {
        let mut out = [0.0f32; MEL_BANDS];
        for (m, (first, weights)) in self.filters.iter().enumerate() {
            let mut acc = 0.0f32;
            for (j, w) in weights.iter().enumerate() {
                acc += w * power[first + j];
            }
            out[m] = fmath::ln(acc + 1e-10);
        }
        out
    }
}

impl Default for MelBank {
    fn default() -> Self {
        Self::new()
    }
}

/// Orthonormal DCT-II of the log mel energies, truncated to 13 coefficients.
pub fn dct_mfcc(log_mel: &[f32; MEL_BANDS]) -> [f32; MFCC_COEFFS] {
    let m = MEL_BANDS as f32;
    let mut out = [0.0f32; MFCC_COEFFS];
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0f32;
        for (j, &x) in log_mel.iter().enumerate() {
            acc += x * fmath::cos(core::f32::consts::PI * i as f32 * (j as f32 + 0.5) / m);
        }
        let scale = if i == 0 {
            fmath::sqrt(1.0 / m)
        } else {
            fmath::sqrt(2.0 / m)
        };
        *o = acc * scale;
    }
    out
}

/// MFCC pipeline with cached filterbank and DCT basis, for per-frame use.
pub struct MfccExtractor {
    bank: MelBank,
    /// Row-major `MFCC_COEFFS x MEL_BANDS` DCT-II basis including scaling.
    basis: Vec<f32>,
}

impl MfccExtractor {
    pub fn new() -> Self {
        let m = MEL_BANDS as f32;
        let mut basis = Vec::with_capacity(MFCC_COEFFS * MEL_BANDS);
        for i in 0..MFCC_COEFFS {
            let scale = if i == 0 {
                fmath::sqrt(1.0 / m)
            } else {
                fmath::sqrt(2.0 / m)
            };
            for j in 0..MEL_BANDS {
                basis.push(
                    scale * fmath::cos(core::f32::consts::PI * i as f32 * (j as f32 + 0.5) / m),
                );
            }
        }
        MfccExtractor { bank: MelBank::new(), basis }
    }

    pub fn compute(&self, power: &[f32; SPECTRUM_BINS]) -> [f32; MFCC_COEFFS] {
        let log_mel = self.bank.log_energies(power);
        let mut out = [0.0f32; MFCC_COEFFS];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.basis[i * MEL_BANDS..(i + 1) * MEL_BANDS];
            *o = row.iter().zip(&log_mel).map(|(c, x)| c * x).sum();
        }
        out
    }
}

impl Default for MfccExtractor {
    fn default() -> Self {
        Self::new()
    }
}

/// Linear-interpolation percentile of already-sorted data, `q` in [0, 1].
pub fn percentile_sorted(sorted: &[f32], q: f32) -> f32 {
    if sorted.is_empty() {
        return 0.0;
    }
    if sorted.len() == 1 {
        return sorted[0];
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f32;
    let lo = pos as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - lo as f32;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Mean of a slice; 0 when empty.
pub fn mean(values: &[f32]) -> f32 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f32>() / values.len() as f32
}

/// Population standard deviation of a slice; 0 when empty.
pub fn pop_std(values: &[f32]) -> f32 {
    if values.is_empty() {
        return 0.0;
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f32>() / values.len() as f32;
    fmath::sqrt(var)
}

/// Sorted copy helper for percentile computations.
pub fn sorted(values: &[f32]) -> Vec<f32> {
    let mut v = values.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("NaN in series"));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive DFT magnitude at bin k, the oracle the FFT is checked against.
    fn dft_mag(signal: &[f32], k: usize, n: usize) -> f32 {
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for (i, &x) in signal.iter().enumerate() {
            let phase = -2.0 * core::f64::consts::PI * k as f64 * i as f64 / n as f64;
            re += x as f64 * phase.cos();
            im += x as f64 * phase.sin();
        }
        ((re * re + im * im) as f32).sqrt()
    }

    #[test]
    fn spectrum_matches_naive_dft() {
        // Deterministic pseudo-random frame.
        let mut state = 0x2545F4914F6CDD1Du64;
        let frame: Vec<f32> = (0..WINDOW_LEN)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as f32 / (1u64 << 31) as f32) - 1.0
            })
            .collect();
        let mags = magnitude_spectrum(&frame);
        let mut padded = frame.clone();
        padded.resize(FFT_LEN, 0.0);
        for k in [0usize, 1, 7, 64, 255, 256] {
            let want = dft_mag(&padded, k, FFT_LEN);
            let got = mags[k];
            assert!(
                (want - got).abs() <= 1e-3 * want.abs().max(1.0),
                "bin {k}: naive {want} vs fft {got}"
            );
        }
    }

    #[test]
    fn spectrum_peak_of_pure_tone() {
        // 1000 Hz sits at bin 32 exactly (1000 / 31.25).
        let tone: Vec<f32> = (0..FFT_LEN)
            .map(|i| (2.0 * core::f32::consts::PI * 1000.0 * i as f32 / 16000.0).sin())
            .collect();
        let mags = magnitude_spectrum(&tone);
        let peak = mags
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(peak, 32);
    }

    #[test]
    fn mel_bank_covers_all_bands() {
        let bank = MelBank::new();
        let power = [1.0f32; SPECTRUM_BINS];
        let energies = bank.log_energies(&power);
        for (m, e) in energies.iter().enumerate() {
            assert!(e.is_finite() && *e > fmath::ln(1e-10), "band {m} got no energy");
        }
    }

    #[test]
    fn dct_of_constant_is_dc_only() {
        let log_mel = [2.5f32; MEL_BANDS];
        let c = dct_mfcc(&log_mel);
        assert!((c[0] - 2.5 * (MEL_BANDS as f32).sqrt()).abs() < 1e-4);
        for v in &c[1..] {
            assert!(v.abs() < 1e-4);
        }
    }

    #[test]
    fn percentile_linear_interpolation() {
        let v = [1.0f32, 2.0, 3.0, 4.0];
        assert_eq!(percentile_sorted(&v, 0.0), 1.0);
        assert_eq!(percentile_sorted(&v, 1.0), 4.0);
        assert!((percentile_sorted(&v, 0.5) - 2.5).abs() < 1e-6);
    }

    #[test]
    fn frame_count_hop_arithmetic() {
        assert_eq!(frame_count(crate::SNIPPET_LEN), 2998);
        assert_eq!(frame_count(WINDOW_LEN), 1);
        assert_eq!(frame_count(WINDOW_LEN - 1), 0);
    }
}
