//! Binaural spatial-audio toolkit: signal primitives, classic spatial
//! features (CPS, IPD, ILD, GCC, GCC-PHAT), binaural scene synthesis with
//! noise/reverb augmentation, a CPU tensor/autodiff engine with a causal
//! Conformer encoder, distillation pretraining and DoA fine-tuning loops,
//! and an MAE-vs-SNR evaluation bench.

pub mod audio;
pub mod dsp;
pub mod error;
pub mod eval;
pub mod nn;
pub mod rng;
pub mod scene;
pub mod spatial;
pub mod train;

pub use audio::AudioBuffer;
pub use dsp::{ComplexSpectrogram, StftConfig, WindowKind};
pub use error::{Error, Result};
pub use spatial::{ArrayGeometry, FeatureKind, SpatialFeatureSeq};
