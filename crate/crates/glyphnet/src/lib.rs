//! Recognizer for handwritten lowercase English letters.
//!
//! The crate is a vertical slice of a classic pattern-recognition experiment:
//! a character image is reduced to 25 binary grid features (binarize, clean,
//! crop, scale to 50x50, thin to a skeleton, 5x5 segmentation, per-cell
//! digitization) and classified by a small feed-forward network trained with
//! plain gradient-descent backpropagation.
//!
//! Modules:
//!
//! * [`imaging`] — grayscale/binary rasters and the image-level operations
//!   (thresholding, isolated-pixel cleanup, cropping, scaling, thinning).
//! * [`features`] — grid segmentation and digitization into [`features::FeatureVector`].
//! * [`mlp`] — matrices, activations, forward/backward passes, training and
//!   finite-difference gradient checking.
//! * [`synthgen`] — deterministic synthetic glyph corpus generation from
//!   embedded letter templates.
//! * [`experiment`] — multi-run train/evaluate harness, per-letter result
//!   table, confusion matrix and similar-letter analysis.
//! * [`persistence`] — PGM and glyph-text image formats, feature/manifest CSV,
//!   and bit-exact model serialization.
//! * [`cli`] — the `glyphnet` command-line interface.
//!
//! Everything is deterministic: all randomness flows from explicit seeds
//! through the crate's own [`rng::SplitMix64`] generator.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod features;
pub mod imaging;
pub mod mlp;
pub mod persistence;
pub mod rng;
pub mod synthgen;

pub use error::{Error, Result};
pub use synthgen::Letter;
