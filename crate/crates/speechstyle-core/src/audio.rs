//! Audio buffers, resampling, snippet segmentation and window selection.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::fmath;
use crate::{SAMPLE_RATE, SNIPPET_LEN};

/// Mono audio at a known sample rate, samples in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    pub samples: Vec<f32>,
    pub sample_rate: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AudioError {
    EmptyAudio,
    BadSampleRate(u32),
    NonFiniteSample(usize),
}

impl fmt::Display for AudioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AudioError::EmptyAudio => f.write_str("audio contains no samples"),
            AudioError::BadSampleRate(sr) => write!(f, "unusable sample rate {sr} Hz"),
            AudioError::NonFiniteSample(i) => write!(f, "non-finite sample at index {i}"),
        }
    }
}

impl core::error::Error for AudioError {}

impl AudioBuffer {
    pub fn new(samples: Vec<f32>, sample_rate: u32) -> Result<Self, AudioError> {
        if sample_rate == 0 {
            return Err(AudioError::BadSampleRate(sample_rate));
        }
        if samples.is_empty() {
            return Err(AudioError::EmptyAudio);
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(AudioError::NonFiniteSample(i));
        }
        Ok(AudioBuffer { samples, sample_rate })
    }

    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// Average interleaved channels down to mono.
pub fn mixdown(interleaved: &[f32], channels: usize) -> Vec<f32> {
    if channels <= 1 {
        return interleaved.to_vec();
    }
    let frames = interleaved.len() / channels;
    let scale = 1.0 / channels as f32;
    (0..frames)
        .map(|i| {
            interleaved[i * channels..(i + 1) * channels]
                .iter()
                .sum::<f32>()
                * scale
        })
        .collect()
}

// Windowed-sinc filter parameters: 24 zero crossings per side under a
// Blackman window, cutoff at 95% of the narrower Nyquist.
const SINC_ZEROS: usize = 24;
const CUTOFF_MARGIN: f64 = 0.95;

fn blackman(x: f64, half_width: f64) -> f64 {
    let t = core::f64::consts::PI * x / half_width;
    0.42 + 0.5 * fmath::cos64(t) + 0.08 * fmath::cos64(2.0 * t)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        return 1.0;
    }
    let px = core::f64::consts::PI * x;
    fmath::sin64(px) / px
}

/// Band-limited resampling to [`SAMPLE_RATE`]. Equal input and output rates
/// return the samples unchanged bit for bit.
pub fn resample(buffer: &AudioBuffer) -> Result<AudioBuffer, AudioError> {
    resample_to(buffer, SAMPLE_RATE)
}

/// Windowed-sinc resampling to an arbitrary target rate.
pub fn resample_to(buffer: &AudioBuffer, out_rate: u32) -> Result<AudioBuffer, AudioError> {
    if out_rate == 0 {
        return Err(AudioError::BadSampleRate(out_rate));
    }
    if buffer.samples.is_empty() {
        return Err(AudioError::EmptyAudio);
    }
    if buffer.sample_rate == out_rate {
        return Ok(buffer.clone());
    }
    let in_rate = buffer.sample_rate as f64;
    let out_len = (buffer.samples.len() as u64 * out_rate as u64 / buffer.sample_rate as u64) as usize;
    let out_len = out_len.max(1);
    // Kernel in input-sample units: h(t) = c * sinc(c * t) * blackman(t),
    // where c is the cutoff as a fraction of the input rate.
    let c = CUTOFF_MARGIN * (out_rate as f64).min(in_rate) / in_rate;
    let half_width = SINC_ZEROS as f64 / c;
    let step = in_rate / out_rate as f64;
    let input = &buffer.samples;
    let mut out = Vec::with_capacity(out_len);
    for n in 0..out_len {
        let center = n as f64 * step;
        let lo = ((center - half_width).ceil() as isize).max(0) as usize;
        let hi = ((center + half_width).floor() as isize).min(input.len() as isize - 1) as usize;
        let mut acc = 0.0f64;
        for k in lo..=hi {
            let x = k as f64 - center;
            acc += input[k] as f64 * c * sinc(c * x) * blackman(x, half_width);
        }
        out.push(acc as f32);
    }
    AudioBuffer::new(out, out_rate)
}

/// A 30-second window of one episode, zero padded to exactly
/// [`SNIPPET_LEN`] samples when flagged by `padded_tail`.
#[derive(Debug, Clone, PartialEq)]
pub struct Snippet {
    pub episode_id: String,
    /// Ordinal position within the episode, contiguous from 0.
    pub index: u32,
    pub samples: Vec<f32>,
    /// Number of zero samples appended to fill the final partial chunk.
    pub padded_tail: u32,
}

impl Snippet {
    /// Construct directly from raw 16 kHz samples, padding or rejecting
    /// off-length input.
    pub fn from_samples(episode_id: &str, index: u32, samples: Vec<f32>) -> Option<Snippet> {
        if samples.len() > SNIPPET_LEN || samples.is_empty() {
            return None;
        }
        let padded_tail = (SNIPPET_LEN - samples.len()) as u32;
        let mut samples = samples;
        samples.resize(SNIPPET_LEN, 0.0);
        Some(Snippet {
            episode_id: String::from(episode_id),
            index,
            samples,
            padded_tail,
        })
    }
}

/// Minimum tail length kept as a padded final snippet: 5 s.
pub const MIN_TAIL_LEN: usize = 5 * SAMPLE_RATE as usize;

/// Cut a decoded episode into 30 s snippets.
///
/// Every full 30 s window becomes a snippet. A final partial window of at
/// least 5 s is zero padded to full length and its `padded_tail` records
/// the fill; shorter remainders are dropped. Episodes under 5 s produce an
/// empty list.
pub fn chunk_episode(episode_id: &str, buffer: &AudioBuffer) -> Vec<Snippet> {
    debug_assert_eq!(buffer.sample_rate, SAMPLE_RATE);
    let len = buffer.samples.len();
    let full = len / SNIPPET_LEN;
    let remainder = len - full * SNIPPET_LEN;
    let mut snippets = Vec::with_capacity(full + 1);
    for i in 0..full {
        snippets.push(Snippet {
            episode_id: String::from(episode_id),
            index: i as u32,
            samples: buffer.samples[i * SNIPPET_LEN..(i + 1) * SNIPPET_LEN].to_vec(),
            padded_tail: 0,
        });
    }
    if remainder >= MIN_TAIL_LEN {
        let mut samples = vec![0.0f32; SNIPPET_LEN];
        samples[..remainder].copy_from_slice(&buffer.samples[full * SNIPPET_LEN..]);
        snippets.push(Snippet {
            episode_id: String::from(episode_id),
            index: full as u32,
            samples,
            padded_tail: (SNIPPET_LEN - remainder) as u32,
        });
    }
    snippets
}

/// Index range of the `n` sequential snippets centered in a run of `count`,
/// or the whole run when it is shorter than `n`.
pub fn training_window_range(count: usize, n: usize) -> Range<usize> {
    if count <= n {
        0..count
    } else {
        let start = (count - n) / 2;
        start..start + n
    }
}

/// Select the training snippets: `n` sequential chunks from the middle of
/// the episode, or everything when the episode is shorter.
pub fn training_window(snippets: &[Snippet], n: usize) -> &[Snippet] {
    &snippets[training_window_range(snippets.len(), n)]
}

/// Default training window length: 25 chunks, 12.5 minutes.
pub const TRAINING_WINDOW: usize = 25;
