//! Energy-threshold voice activity detection with hangover, plus an
//! approximate overlapping-speech heuristic.
//!
//! This is a self-contained replacement for neural segmentation models:
//! speech/non-speech comes from a smoothed adaptive energy gate, and the
//! overlap proxy flags frames showing two deep inharmonic periodicities.
//! The overlap output is explicitly approximate and tends toward zero on
//! single-voice material.

use alloc::vec::Vec;

use crate::audio::Snippet;
use crate::dsp;
use crate::handcrafted::lld::{analyze, FrameAnalysis};

/// Segment class labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Speech,
    NonSpeech,
    /// Heuristic overlapping-speech detection; approximate by design.
    OverlapProxy,
}

/// A labeled time span within one snippet, in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f32,
    pub end: f32,
    pub kind: SegmentKind,
}

impl Segment {
    pub fn duration(&self) -> f32 {
        self.end - self.start
    }
}

/// Ordered segments covering one snippet. Speech and non-speech partition
/// the timeline; overlap-proxy segments lie inside speech spans.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentList {
    pub segments: Vec<Segment>,
    /// Snippet duration in seconds.
    pub duration: f32,
}

impl SegmentList {
    pub fn of_kind(&self, kind: SegmentKind) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(move |s| s.kind == kind)
    }

    /// Total duration of one kind in seconds.
    pub fn total_duration(&self, kind: SegmentKind) -> f32 {
        self.of_kind(kind).map(Segment::duration).sum()
    }
}

/// Energy smoothing width in frames (centered moving average).
const SMOOTH_FRAMES: usize = 5;
/// Hangover after the energy drops below threshold: 200 ms at 100 fps.
const HANGOVER_FRAMES: usize = 20;
/// MAD multiplier for the adaptive threshold.
const MAD_MULTIPLIER: f32 = 3.0;
/// Lower bound on the threshold's clearance above the floor, in dB.
const MIN_CLEARANCE_DB: f32 = 3.0;
/// Energies within this many dB of the floor count as the quiet mode.
const QUIET_BAND_DB: f32 = 15.0;
/// Minimum overlap-proxy run length: 300 ms.
const MIN_OVERLAP_FRAMES: usize = 30;

/// Segment one snippet into speech / non-speech / overlap-proxy spans.
pub fn detect_speech_segments(snippet: &Snippet) -> SegmentList {
    let analysis = analyze(&snippet.samples);
    let duration = snippet.samples.len() as f32 / crate::SAMPLE_RATE as f32;
    segments_from_analysis(&analysis, duration)
}

pub(crate) fn segments_from_analysis(analysis: &FrameAnalysis, duration: f32) -> SegmentList {
    let energy = &analysis.series.energy;
    if energy.is_empty() {
        return SegmentList {
            segments: alloc::vec![Segment { start: 0.0, end: duration, kind: SegmentKind::NonSpeech }],
            duration,
        };
    }
    let smoothed = moving_average(energy, SMOOTH_FRAMES);

    // Adaptive gate: noise floor plus a MAD-scaled clearance. The spread
    // is measured over the quiet mode only, so a mostly-speech snippet
    // does not inflate the threshold past its own pauses.
    let sorted = dsp::sorted(&smoothed);
    let floor = dsp::percentile_sorted(&sorted, 0.05);
    let quiet: Vec<f32> = smoothed.iter().copied().filter(|e| *e <= floor + QUIET_BAND_DB).collect();
    let mad = median_absolute_deviation(&quiet);
    let threshold = floor + (MAD_MULTIPLIER * mad).max(MIN_CLEARANCE_DB);

    let mut active: Vec<bool> = smoothed.iter().map(|e| *e > threshold).collect();

    // Hangover: carry activity over short dips.
    let mut counter = 0usize;
    for slot in active.iter_mut() {
        if *slot {
            counter = HANGOVER_FRAMES;
        } else if counter > 0 {
            counter -= 1;
            *slot = true;
        }
    }

    let frame_rate = analysis.series.frame_rate;
    let mut segments = Vec::new();
    push_runs(&active, frame_rate, duration, SegmentKind::Speech, &mut segments, true);
    push_runs(&active, frame_rate, duration, SegmentKind::NonSpeech, &mut segments, false);

    let overlap: Vec<bool> = active
        .iter()
        .zip(&analysis.double_period)
        .zip(&analysis.flatness)
        .map(|((a, d), fl)| *a && *d && *fl < 0.5)
        .collect();
    let mut overlap_segments = Vec::new();
    push_runs(&overlap, frame_rate, duration, SegmentKind::OverlapProxy, &mut overlap_segments, true);
    overlap_segments.retain(|s| s.duration() >= MIN_OVERLAP_FRAMES as f32 / frame_rate);
    segments.extend(overlap_segments);

    segments.sort_by(|a, b| a.start.partial_cmp(&b.start).unwrap());
    SegmentList { segments, duration }
}

fn moving_average(values: &[f32], width: usize) -> Vec<f32> {
    let half = width / 2;
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(values.len());
            values[lo..hi].iter().sum::<f32>() / (hi - lo) as f32
        })
        .collect()
}

fn median_absolute_deviation(values: &[f32]) -> f32 {
    if values.is_empty() {
        return 0.0;
    }
    let sorted = dsp::sorted(values);
    let median = dsp::percentile_sorted(&sorted, 0.5);
    let deviations: Vec<f32> = values.iter().map(|v| (v - median).abs()).collect();
    let dev_sorted = dsp::sorted(&deviations);
    dsp::percentile_sorted(&dev_sorted, 0.5)
}

/// Convert maximal `target`-valued runs of `mask` into segments.
fn push_runs(
    mask: &[bool],
    frame_rate: f32,
    duration: f32,
    kind: SegmentKind,
    out: &mut Vec<Segment>,
    target: bool,
) {
    let mut start = None;
    for (i, &m) in mask.iter().enumerate() {
        match (m == target, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(frame_segment(s, i, frame_rate, duration, kind));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        // The final frame's window extends to the end of the snippet.
        out.push(Segment {
            start: s as f32 / frame_rate,
            end: duration,
            kind,
        });
    }
}

fn frame_segment(first: usize, end_exclusive: usize, frame_rate: f32, duration: f32, kind: SegmentKind) -> Segment {
    Segment {
        start: first as f32 / frame_rate,
        end: (end_exclusive as f32 / frame_rate).min(duration),
        kind,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath;
    use alloc::vec;

    fn snippet(samples: Vec<f32>) -> Snippet {
        Snippet::from_samples("vad", 0, samples).unwrap()
    }

    fn tone(freq: f32, seconds: f32) -> Vec<f32> {
        (0..(seconds * 16000.0) as usize)
            .map(|i| fmath::sin(2.0 * core::f32::consts::PI * freq * i as f32 / 16000.0) * 0.3)
            .collect()
    }

    #[test]
    fn ten_seconds_tone_then_silence() {
        let mut samples = tone(220.0, 10.0);
        samples.resize(crate::SNIPPET_LEN, 0.0);
        let segs = detect_speech_segments(&snippet(samples));
        let speech = segs.total_duration(SegmentKind::Speech);
        let nonspeech = segs.total_duration(SegmentKind::NonSpeech);
        assert!((speech - 10.0).abs() <= 0.3, "speech {speech}");
        assert!((nonspeech - 20.0).abs() <= 0.3, "nonspeech {nonspeech}");
        assert!((speech + nonspeech - 30.0).abs() < 1e-3);
    }

    #[test]
    fn all_silence_is_one_nonspeech_segment() {
        let segs = detect_speech_segments(&snippet(vec![0.0; crate::SNIPPET_LEN]));
        let spans: Vec<&Segment> = segs.of_kind(SegmentKind::NonSpeech).collect();
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].start, 0.0);
        assert!((spans[0].end - 30.0).abs() < 1e-4);
        assert_eq!(segs.of_kind(SegmentKind::Speech).count(), 0);
    }

    #[test]
    fn alternating_tone_silence_count() {
        let mut samples = Vec::with_capacity(crate::SNIPPET_LEN);
        for _ in 0..15 {
            samples.extend(tone(180.0, 1.0));
            samples.extend(vec![0.0f32; 16000]);
        }
        let segs = detect_speech_segments(&snippet(samples));
        let n_speech = segs.of_kind(SegmentKind::Speech).count();
        assert!(
            (14..=16).contains(&n_speech),
            "expected about 15 speech segments, got {n_speech}"
        );
    }

    #[test]
    fn segments_are_sane_and_bounded() {
        let mut samples = tone(150.0, 7.3);
        samples.extend(vec![0.0f32; 20000]);
        samples.extend(tone(260.0, 5.0));
        samples.resize(crate::SNIPPET_LEN, 0.0);
        let segs = detect_speech_segments(&snippet(samples));
        for kind in [SegmentKind::Speech, SegmentKind::NonSpeech, SegmentKind::OverlapProxy] {
            let mut last_end = 0.0f32;
            for s in segs.of_kind(kind) {
                assert!(s.start < s.end);
                assert!(s.start >= last_end, "{kind:?} overlaps within kind");
                assert!(s.end <= segs.duration + 1e-4);
                last_end = s.end;
            }
        }
        let covered = segs.total_duration(SegmentKind::Speech) + segs.total_duration(SegmentKind::NonSpeech);
        assert!((covered - segs.duration).abs() < 1e-3);
    }
}
