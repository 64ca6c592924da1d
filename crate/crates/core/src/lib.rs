//! Pixel-level human skin detection.
//!
//! A pixel is classified as skin when it passes an RGB/alpha gate and, in
//! addition, either an HSV band or a YCbCr region bounded by five lines in
//! the Cb-Cr plane. Around that rule the crate provides:
//!
//! - [`color`]: ARGB unpacking and the color-space conversions the rule needs
//!   (HSV, YCbCr in two modes, normalized RGB).
//! - [`classifier`]: the threshold rule, per pixel and per image, with
//!   per-color-space pass counts.
//! - [`image`]: pixel buffers, binary masks, PNG/JPEG decoding, mask and
//!   overlay output, ground-truth binarization.
//! - [`eval`]: confusion matrices, precision and accuracy, pooled summaries
//!   and CSV/JSON reports.
//! - [`batch`]: pairing images with ground truth and evaluating a whole set
//!   on a bounded worker pool.
//!
//! The real-valued math is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root pin `f64`, which is what the CLI uses and what
//! the exactness guarantees are stated for.

pub mod batch;
pub mod classifier;
pub mod color;
pub mod error;
pub mod eval;
pub mod image;
mod scalar;

pub use classifier::{
    classify_image, classify_image_par, classify_pixel, hsv_rule, rgb_rule, ycbcr_rule,
    BoundaryLine, ClassificationStats, LineDirection, SkinDecision, ThresholdConfig,
};
pub use color::{
    normalize_rgb, pack_argb, rgb_to_hsv, rgb_to_ycbcr, unpack_argb, Hsv, NormalizedRgb, Rgba,
    YCbCr, YCbCrMode,
};
pub use error::{Error, Result};
pub use eval::{accuracy, aggregate, confusion, precision, ConfusionMatrix, MetricsRow, Summary};
pub use image::{
    binarize_ground_truth, load_image, overlay, write_image, write_mask, ImageBuffer, Mask,
    DEFAULT_GT_THRESHOLD,
};
pub use scalar::Scalar;

pub type HsvF64 = Hsv<f64>;
pub type HsvF32 = Hsv<f32>;
pub type YCbCrF64 = YCbCr<f64>;
pub type YCbCrF32 = YCbCr<f32>;
pub type NormalizedRgbF64 = NormalizedRgb<f64>;
pub type NormalizedRgbF32 = NormalizedRgb<f32>;
pub type ThresholdConfigF64 = ThresholdConfig<f64>;
pub type ThresholdConfigF32 = ThresholdConfig<f32>;
