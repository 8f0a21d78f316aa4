//! Core algorithms for classifying recorded speech as scripted or spontaneous.
//!
//! This crate is the pure, `no_std`-compatible (with `alloc`) half of the
//! toolkit. It contains everything that computes: manifest label resolution
//! and stratified fold splitting ([`corpus`]), snippet segmentation and
//! resampling ([`audio`]), the 115-dimensional handcrafted acoustic feature
//! extractor ([`handcrafted`]), class-score summarizers for precomputed
//! embeddings ([`embeddings`]), the from-scratch classifier heads and
//! training loop ([`model`]), episode-level aggregation and metrics
//! ([`eval`]), and the synthetic corpus generator ([`synth`]).
//!
//! File formats, WAV decoding and the command-line pipeline live in the
//! companion `speechstyle` crate.
//!
//! Everything here is deterministic: all randomness flows through seeded
//! ChaCha8 streams, and no operation reads clocks, threads or files.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod audio;
pub mod corpus;
pub mod dsp;
pub mod embeddings;
pub mod eval;
mod fmath;
pub mod handcrafted;
pub mod model;
pub mod synth;

pub use embeddings::{FeatureMatrix, FeatureVector};

/// Fixed processing sample rate in Hz. All feature extraction assumes it.
pub const SAMPLE_RATE: u32 = 16_000;

/// Snippet duration in seconds.
pub const SNIPPET_SECONDS: u32 = 30;

/// Samples per snippet (30 s at 16 kHz).
pub const SNIPPET_LEN: usize = (SAMPLE_RATE * SNIPPET_SECONDS) as usize;
