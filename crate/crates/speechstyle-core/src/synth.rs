//! Synthetic labeled corpus generation.
//!
//! Episodes are tonal pseudo-speech: harmonic voiced spans with a pitch
//! random walk and syllabic amplitude modulation, separated by true
//! silences. The two style profiles differ mainly in their pause
//! statistics (amount, length and burstiness of silence), secondarily in
//! pitch variability and rate regularity, which mirrors where the real
//! classes differ. A small share of episodes is drawn near the class
//! boundary so the task is hard but solvable.
//!
//! Generation is pure: one seed produces one bit-identical episode.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::audio::AudioBuffer;
use crate::corpus::Label;
use crate::fmath;
use crate::SAMPLE_RATE;

/// Style parameters for one class.
#[derive(Debug, Clone, PartialEq)]
pub struct StyleProfile {
    /// Mean voiced-span length in seconds and its relative jitter.
    pub utterance_mean_s: f32,
    pub utterance_jitter: f32,
    /// Mean pause length in seconds and its relative jitter.
    pub pause_mean_s: f32,
    pub pause_jitter: f32,
    /// Probability that a pause stretches threefold (burstiness).
    pub long_pause_prob: f32,
    /// Per-episode target silence fraction is drawn from this band.
    pub silence_band: (f32, f32),
    /// Band used for boundary episodes (still inside `silence_band`'s
    /// legal range, but adjacent to the opposite class).
    pub boundary_silence_band: (f32, f32),
    /// Probability of drawing a boundary episode.
    pub boundary_prob: f32,
    /// Per-episode base pitch draw range in Hz.
    pub f0_base_range: (f32, f32),
    /// Per-episode pitch random-walk step range, Hz per 10 ms.
    pub f0_walk_range: (f32, f32),
    /// Syllable rate band in Hz and per-syllable relative jitter.
    pub rate_band: (f32, f32),
    pub rate_jitter: f32,
}

impl StyleProfile {
    /// Read-style speech: little, regular silence; steady pitch and rate.
    pub fn scripted_default() -> Self {
        StyleProfile {
            utterance_mean_s: 4.0,
            utterance_jitter: 0.2,
            pause_mean_s: 0.45,
            pause_jitter: 0.3,
            long_pause_prob: 0.02,
            silence_band: (0.07, 0.13),
            boundary_silence_band: (0.12, 0.15),
            boundary_prob: 0.15,
            f0_base_range: (110.0, 210.0),
            f0_walk_range: (0.5, 5.0),
            rate_band: (3.4, 4.6),
            rate_jitter: 0.08,
        }
    }

    /// Conversational speech: frequent, variable, bursty silence; livelier
    /// pitch movement and uneven rate.
    pub fn spontaneous_default() -> Self {
        StyleProfile {
            utterance_mean_s: 2.4,
            utterance_jitter: 0.6,
            pause_mean_s: 1.3,
            pause_jitter: 0.7,
            long_pause_prob: 0.25,
            silence_band: (0.28, 0.42),
            boundary_silence_band: (0.25, 0.29),
            boundary_prob: 0.15,
            f0_base_range: (100.0, 220.0),
            f0_walk_range: (2.0, 12.0),
            rate_band: (2.6, 5.4),
            rate_jitter: 0.35,
        }
    }
}

/// Exact accounting of what one generated episode contains.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeBookkeeping {
    /// Rendered silence samples over total samples.
    pub silence_fraction: f64,
    pub speech_seconds: f64,
    pub silence_seconds: f64,
    pub n_utterances: usize,
    pub n_pauses: usize,
    /// The silence fraction the episode was shaped toward.
    pub target_silence: f32,
    pub f0_base: f32,
}

const MIN_PAUSE_S: f32 = 0.12;
const HARMONICS: usize = 4;

/// Generate one episode of tonal pseudo-speech. Deterministic per seed.
/// Callers should request at least 60 seconds so the pause statistics
/// have room to express the profile.
pub fn gen_episode(profile: &StyleProfile, seed: u64, duration_s: u32) -> (AudioBuffer, EpisodeBookkeeping) {
    debug_assert!(duration_s >= 60, "episodes shorter than 60 s are not representative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let duration = duration_s as f32;

    let boundary = rng.random::<f32>() < profile.boundary_prob;
    let band = if boundary { profile.boundary_silence_band } else { profile.silence_band };
    let target = rng.random_range(band.0..band.1);
    let f0_base = rng.random_range(profile.f0_base_range.0..profile.f0_base_range.1);
    let f0_walk = rng.random_range(profile.f0_walk_range.0..profile.f0_walk_range.1);
    let base_rate = rng.random_range(profile.rate_band.0..profile.rate_band.1);

    // Alternating utterance/pause plan covering the episode.
    let jittered = |rng: &mut ChaCha8Rng, mean: f32, jitter: f32| -> f32 {
        mean * (1.0 - jitter + 2.0 * jitter * rng.random::<f32>())
    };
    let mut utterances: Vec<f32> = Vec::new();
    let mut pauses: Vec<f32> = Vec::new();
    let mut total = 0.0f32;
    while total < duration {
        let utt = jittered(&mut rng, profile.utterance_mean_s, profile.utterance_jitter);
        utterances.push(utt);
        total += utt;
        let mut pause = jittered(&mut rng, profile.pause_mean_s, profile.pause_jitter);
        if rng.random::<f32>() < profile.long_pause_prob {
            pause *= 3.0;
        }
        pauses.push(pause.max(MIN_PAUSE_S));
        total += pause;
    }
    // Drop the trailing pause so episodes start and end voiced.
    pauses.pop();

    // Shape the plan to the drawn silence target, then rescale everything
    // to the exact duration so the fraction survives.
    let utt_total: f32 = utterances.iter().sum();
    let pause_total: f32 = pauses.iter().sum::<f32>().max(1e-3);
    let desired_pause_total = utt_total * target / (1.0 - target);
    let pause_scale = desired_pause_total / pause_total;
    for p in pauses.iter_mut() {
        *p = (*p * pause_scale).max(MIN_PAUSE_S);
    }
    let grand_total: f32 = utt_total + pauses.iter().sum::<f32>();
    let global_scale = duration / grand_total;
    for u in utterances.iter_mut() {
        *u *= global_scale;
    }
    for p in pauses.iter_mut() {
        *p *= global_scale;
    }

    // Render with sample-exact boundaries.
    let total_samples = (duration_s * SAMPLE_RATE) as usize;
    let mut samples = Vec::with_capacity(total_samples);
    let mut silence_samples = 0usize;
    let mut boundary_time = 0.0f64;
    let mut synth = VoiceState::new(f0_base, f0_walk, base_rate, profile.rate_jitter);
    for (i, utt) in utterances.iter().enumerate() {
        boundary_time += *utt as f64;
        let end = ((boundary_time * SAMPLE_RATE as f64) as usize).min(total_samples);
        synth.render_utterance(&mut rng, &mut samples, end);
        if let Some(pause) = pauses.get(i) {
            boundary_time += *pause as f64;
            let end = ((boundary_time * SAMPLE_RATE as f64) as usize).min(total_samples);
            silence_samples += end.saturating_sub(samples.len());
            samples.resize(end, 0.0);
        }
    }
    if samples.len() < total_samples {
        // Numeric slack lands in the final utterance.
        synth.render_utterance(&mut rng, &mut samples, total_samples);
    }
    samples.truncate(total_samples);

    let bookkeeping = EpisodeBookkeeping {
        silence_fraction: silence_samples as f64 / total_samples as f64,
        speech_seconds: (total_samples - silence_samples) as f64 / SAMPLE_RATE as f64,
        silence_seconds: silence_samples as f64 / SAMPLE_RATE as f64,
        n_utterances: utterances.len(),
        n_pauses: pauses.len(),
        target_silence: target,
        f0_base,
    };
    let buffer = AudioBuffer::new(samples, SAMPLE_RATE).expect("generator output is non-empty");
    (buffer, bookkeeping)
}

/// Harmonic oscillator with pitch walk and syllabic envelope.
struct VoiceState {
    phase: f32,
    f0: f32,
    f0_base: f32,
    f0_walk: f32,
    base_rate: f32,
    rate_jitter: f32,
}

impl VoiceState {
    fn new(f0_base: f32, f0_walk: f32, base_rate: f32, rate_jitter: f32) -> Self {
        VoiceState {
            phase: 0.0,
            f0: f0_base,
            f0_base,
            f0_walk,
            base_rate,
            rate_jitter,
        }
    }

    fn render_utterance(&mut self, rng: &mut ChaCha8Rng, samples: &mut Vec<f32>, end: usize) {
        let amp = 0.32 * (1.0 + rng.random_range(-0.15..0.15f32));
        let mut syllable_left = 0usize;
        let mut syllable_len = 1usize;
        let mut i = samples.len();
        while i < end {
            if syllable_left == 0 {
                let rate = self.base_rate
                    * (1.0 - self.rate_jitter + 2.0 * self.rate_jitter * rng.random::<f32>());
                syllable_len = ((SAMPLE_RATE as f32 / rate) as usize).max(400);
                syllable_left = syllable_len;
            }
            // Pitch walk on a 10 ms grid, reflected into a plausible band.
            if i % 160 == 0 {
                self.f0 += rng.random_range(-self.f0_walk..self.f0_walk);
                let lo = (self.f0_base * 0.7).max(85.0);
                let hi = (self.f0_base * 1.4).min(320.0);
                if self.f0 < lo {
                    self.f0 = 2.0 * lo - self.f0;
                }
                if self.f0 > hi {
                    self.f0 = 2.0 * hi - self.f0;
                }
                self.f0 = self.f0.clamp(lo, hi);
            }
            let t_in = 1.0 - syllable_left as f32 / syllable_len as f32;
            let envelope = 0.08
                + 0.92 * 0.5 * (1.0 - fmath::cos(2.0 * core::f32::consts::PI * t_in));
            self.phase += 2.0 * core::f32::consts::PI * self.f0 / SAMPLE_RATE as f32;
            if self.phase > 2.0 * core::f32::consts::PI {
                self.phase -= 2.0 * core::f32::consts::PI;
            }
            let mut value = 0.0f32;
            for h in 1..=HARMONICS {
                value += fmath::sin(self.phase * h as f32) / h as f32;
            }
            samples.push(value * envelope * amp * 0.48);
            syllable_left -= 1;
            i += 1;
        }
    }
}

/// Corpus-level generation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_scripted: usize,
    pub n_spontaneous: usize,
    pub episode_seconds: u32,
    /// Synthetic language tags cycled across episodes.
    pub languages: Vec<String>,
    pub scripted: StyleProfile,
    pub spontaneous: StyleProfile,
}

impl SynthConfig {
    pub fn new(seed: u64, n_scripted: usize, n_spontaneous: usize) -> Self {
        SynthConfig {
            seed,
            n_scripted,
            n_spontaneous,
            episode_seconds: 180,
            languages: alloc::vec![String::from("lang-a"), String::from("lang-b")],
            scripted: StyleProfile::scripted_default(),
            spontaneous: StyleProfile::spontaneous_default(),
        }
    }

    /// Split `total` episodes by a class ratio (largest remainder on the
    /// scripted side).
    pub fn with_ratio(seed: u64, total: usize, scripted_weight: u64, spontaneous_weight: u64) -> Self {
        let w = scripted_weight + spontaneous_weight;
        let n_scripted = ((total as u64 * scripted_weight + w / 2) / w) as usize;
        Self::new(seed, n_scripted, total - n_scripted)
    }
}

/// One planned episode, ready to be rendered and written.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodePlan {
    pub episode_id: String,
    pub label: Label,
    pub language: String,
    pub category: String,
    pub format: String,
    pub seed: u64,
    pub duration_s: u32,
}

/// Lay out the whole corpus: ids, labels, per-episode seeds and stratum
/// tags. Rendering is left to the caller so episodes can be generated in
/// parallel.
pub fn plan_corpus(config: &SynthConfig) -> Vec<EpisodePlan> {
    let mut seeder = ChaCha8Rng::seed_from_u64(config.seed);
    let mut plans = Vec::with_capacity(config.n_scripted + config.n_spontaneous);
    let classes = [
        (Label::Scripted, config.n_scripted, ["synth-narrated", "synth-monologue"]),
        (Label::Spontaneous, config.n_spontaneous, ["synth-chat", "synth-callin"]),
    ];
    for (label, count, formats) in classes {
        for i in 0..count {
            let language = config.languages[i % config.languages.len().max(1)].clone();
            plans.push(EpisodePlan {
                episode_id: format!("{}-{i:03}", label.as_str()),
                label,
                language,
                category: String::from(if i % 4 < 2 { "alpha" } else { "beta" }),
                format: String::from(formats[i % 2]),
                seed: seeder.random::<u64>(),
                duration_s: config.episode_seconds,
            });
        }
    }
    plans
}

/// Profile lookup for a planned label.
pub fn profile_for<'a>(config: &'a SynthConfig, label: Label) -> &'a StyleProfile {
    match label {
        Label::Scripted => &config.scripted,
        Label::Spontaneous => &config.spontaneous,
    }
}
