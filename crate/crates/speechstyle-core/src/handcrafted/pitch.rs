//! Fundamental frequency estimation on the YIN cumulative-mean-normalized
//! difference function, plus the valley shape data the overlap heuristic
//! feeds on.

use alloc::vec;

use crate::fmath;

/// Pitch search floor in Hz.
pub const F0_MIN: f32 = 50.0;
/// Pitch search ceiling in Hz.
pub const F0_MAX: f32 = 500.0;
/// Samples per pitch analysis window (40 ms at 16 kHz, two 50 Hz periods).
pub const PITCH_WINDOW: usize = 640;

const TAU_MIN: usize = 32; // 16000 / 500
const TAU_MAX: usize = 320; // 16000 / 50
const INTEGRATION: usize = PITCH_WINDOW - TAU_MAX;
const YIN_THRESHOLD: f32 = 0.1;
/// Frames quieter than this are unvoiced outright.
const SILENCE_DB: f32 = -70.0;

/// Full per-frame periodicity analysis.
#[derive(Debug, Clone, Copy)]
pub struct PitchFrame {
    /// Estimated f0 in Hz, 0 when unvoiced.
    pub f0: f32,
    /// Periodicity confidence in [0, 1].
    pub voicing: f32,
    /// Depth of the best difference-function valley (lower = more periodic).
    pub cmnd_min: f32,
    /// Depth of the best valley at a lag inharmonic to the winner, 1 when
    /// there is none. A second deep inharmonic valley suggests two
    /// simultaneous periodicities.
    pub second_valley: f32,
}

impl PitchFrame {
    pub const UNVOICED: PitchFrame = PitchFrame {
        f0: 0.0,
        voicing: 0.0,
        cmnd_min: 1.0,
        second_valley: 1.0,
    };
}

/// Estimate f0 and voicing for one frame of at least [`PITCH_WINDOW`]
/// samples at 16 kHz. Degenerate (short, silent, aperiodic) frames come
/// back unvoiced with `f0 = 0`.
pub fn estimate_f0(frame: &[f32], sample_rate: u32) -> (f32, f32) {
    debug_assert_eq!(sample_rate, crate::SAMPLE_RATE);
    let analysis = analyze_frame(frame);
    (analysis.f0, analysis.voicing)
}

/// The full analysis behind [`estimate_f0`].
pub fn analyze_frame(frame: &[f32]) -> PitchFrame {
    if frame.len() < PITCH_WINDOW {
        return PitchFrame::UNVOICED;
    }
    let x = &frame[..PITCH_WINDOW];
    let mean_sq = x.iter().map(|s| s * s).sum::<f32>() / PITCH_WINDOW as f32;
    if 10.0 * fmath::log10(mean_sq + 1e-10) < SILENCE_DB {
        return PitchFrame::UNVOICED;
    }

    // Difference function d(tau) over the integration window.
    let mut diff = vec![0.0f32; TAU_MAX + 1];
    let head = &x[..INTEGRATION];
    for (tau, d) in diff.iter_mut().enumerate().skip(1) {
        let shifted = &x[tau..tau + INTEGRATION];
        *d = head
            .iter()
            .zip(shifted)
            .map(|(a, b)| {
                let e = a - b;
                e * e
            })
            .sum();
    }

    // Cumulative mean normalization.
    let mut cmnd = vec![1.0f32; TAU_MAX + 1];
    let mut running = 0.0f32;
    for tau in 1..=TAU_MAX {
        running += diff[tau];
        cmnd[tau] = if running > 0.0 {
            diff[tau] * tau as f32 / running
        } else {
            1.0
        };
    }

    // First dip under the absolute threshold, descended to its local
    // minimum; otherwise the global minimum over the search range.
    let mut best_tau = 0usize;
    let mut best_val = f32::INFINITY;
    let mut chosen = None;
    for tau in TAU_MIN..=TAU_MAX {
        if cmnd[tau] < best_val {
            best_val = cmnd[tau];
            best_tau = tau;
        }
        if chosen.is_none() && cmnd[tau] < YIN_THRESHOLD {
            let mut t = tau;
            while t + 1 <= TAU_MAX && cmnd[t + 1] < cmnd[t] {
                t += 1;
            }
            chosen = Some(t);
        }
    }
    let tau = chosen.unwrap_or(best_tau);
    let cmnd_min = cmnd[tau];
    let voicing = (1.0 - cmnd_min).clamp(0.0, 1.0);

    if cmnd_min >= 0.5 {
        return PitchFrame {
            f0: 0.0,
            voicing,
            cmnd_min,
            second_valley: 1.0,
        };
    }

    // Parabolic refinement of the winning lag.
    let refined = if tau > TAU_MIN && tau < TAU_MAX {
        let (a, b, c) = (cmnd[tau - 1], cmnd[tau], cmnd[tau + 1]);
        let denom = a - 2.0 * b + c;
        if fmath::abs(denom) > 1e-12 {
            tau as f32 + 0.5 * (a - c) / denom
        } else {
            tau as f32
        }
    } else {
        tau as f32
    };
    let f0 = (crate::SAMPLE_RATE as f32 / refined).clamp(F0_MIN, F0_MAX);

    PitchFrame {
        f0,
        voicing,
        cmnd_min,
        second_valley: second_inharmonic_valley(&cmnd, tau),
    }
}

/// Depth of the deepest local minimum whose lag is not (close to) a
/// harmonic or subharmonic of the winning lag.
fn second_inharmonic_valley(cmnd: &[f32], winner: usize) -> f32 {
    let harmonic = |tau: f32| -> bool {
        let w = winner as f32;
        for rel in [w, 2.0 * w, 3.0 * w, w / 2.0, w / 3.0] {
            if fmath::abs(tau - rel) <= 0.12 * rel {
                return true;
            }
        }
        false
    };
    let mut best = 1.0f32;
    for tau in TAU_MIN + 1..TAU_MAX {
        if cmnd[tau] <= cmnd[tau - 1] && cmnd[tau] <= cmnd[tau + 1] && !harmonic(tau as f32) {
            best = best.min(cmnd[tau]);
        }
    }
    best
}
