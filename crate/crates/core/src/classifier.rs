//! The combined RGB/HSV/YCbCr skin rule.
//!
//! A pixel is skin when `rgb ∧ (hsv ∨ ycbcr)`:
//!
//! - **rgb**: `R > 95, G > 40, B > 20, R > G, R > B, |R - G| > 15, A > 15`
//! - **hsv**: `0 ≤ H ≤ 50` (degrees) and `0.23 ≤ S ≤ 0.68`
//! - **ycbcr**: `Cr > 135, Cb > 85, Y > 80` and five half-planes in (Cb, Cr)
//!
//! Minima are strict, bands and lines are inclusive. Values are compared
//! as computed, without any epsilon.

use std::ops::{Add, AddAssign};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::color::{rgb_to_hsv, rgb_to_ycbcr, Hsv, Rgba, YCbCr, YCbCrMode};
use crate::error::{Error, Result};
use crate::image::{ImageBuffer, Mask};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineDirection {
    /// `Cr ≤ slope·Cb + intercept`
    #[serde(rename = "le", alias = "<=")]
    AtMost,
    /// `Cr ≥ slope·Cb + intercept`
    #[serde(rename = "ge", alias = ">=")]
    AtLeast,
}

/// One half-plane bound on Cr as a linear function of Cb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct BoundaryLine<T = f64> {
    pub slope: T,
    pub intercept: T,
    pub direction: LineDirection,
}

impl<T: Scalar> BoundaryLine<T> {
    pub fn new(slope: f64, intercept: f64, direction: LineDirection) -> Self {
        Self {
            slope: T::lit(slope),
            intercept: T::lit(intercept),
            direction,
        }
    }

    #[inline]
    pub fn holds(&self, cb: T, cr: T) -> bool {
        let bound = self.slope * cb + self.intercept;
        match self.direction {
            LineDirection::AtMost => cr <= bound,
            LineDirection::AtLeast => cr >= bound,
        }
    }
}

/// Every constant of the skin rule. Serialized as a flat JSON object whose
/// keys are the field names; missing keys take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[serde(bound(
    deserialize = "T: Scalar + Deserialize<'de>",
    serialize = "T: Serialize"
))]
pub struct ThresholdConfig<T = f64> {
    pub h_min: T,
    pub h_max: T,
    pub s_min: T,
    pub s_max: T,
    pub r_min: u8,
    pub g_min: u8,
    pub b_min: u8,
    pub rg_gap_min: u8,
    pub a_min: u8,
    pub y_min: T,
    pub cr_min: T,
    pub cb_min: T,
    pub line_coeffs: [BoundaryLine<T>; 5],
    pub ycbcr_mode: YCbCrMode,
}

impl<T: Scalar> Default for ThresholdConfig<T> {
    fn default() -> Self {
        use LineDirection::*;
        Self {
            h_min: T::lit(0.0),
            h_max: T::lit(50.0),
            s_min: T::lit(0.23),
            s_max: T::lit(0.68),
            r_min: 95,
            g_min: 40,
            b_min: 20,
            rg_gap_min: 15,
            a_min: 15,
            y_min: T::lit(80.0),
            cr_min: T::lit(135.0),
            cb_min: T::lit(85.0),
            line_coeffs: [
                BoundaryLine::new(1.5862, 20.0, AtMost),
                BoundaryLine::new(0.3448, 76.2069, AtLeast),
                BoundaryLine::new(-4.5652, 234.5652, AtLeast),
                BoundaryLine::new(-1.15, 301.75, AtMost),
                BoundaryLine::new(-2.2857, 432.85, AtMost),
            ],
            ycbcr_mode: YCbCrMode::Digital,
        }
    }
}

impl<T: Scalar + for<'de> Deserialize<'de>> ThresholdConfig<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let cfg: Self = serde_json::from_value(value)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl<T: Scalar + Serialize> ThresholdConfig<T> {
    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl<T: Scalar> ThresholdConfig<T> {
    pub fn with_mode(mut self, mode: YCbCrMode) -> Self {
        self.ycbcr_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let reals = [
            ("h_min", self.h_min),
            ("h_max", self.h_max),
            ("s_min", self.s_min),
            ("s_max", self.s_max),
            ("y_min", self.y_min),
            ("cr_min", self.cr_min),
            ("cb_min", self.cb_min),
        ];
        if let Some((name, _)) = reals.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!("{name} is not finite")));
        }
        if self
            .line_coeffs
            .iter()
            .any(|l| !l.slope.is_finite() || !l.intercept.is_finite())
        {
            return Err(Error::InvalidConfig("boundary line is not finite".into()));
        }
        if self.h_min > self.h_max {
            return Err(Error::InvalidConfig(format!(
                "h_min {} exceeds h_max {}",
                self.h_min, self.h_max
            )));
        }
        if self.s_min > self.s_max {
            return Err(Error::InvalidConfig(format!(
                "s_min {} exceeds s_max {}",
                self.s_min, self.s_max
            )));
        }
        Ok(())
    }
}

/// Outcome of the rule for one pixel, with each color space's sub-rule
/// evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SkinDecision {
    pub is_skin: bool,
    pub rgb_pass: bool,
    pub hsv_pass: bool,
    pub ycbcr_pass: bool,
}

/// Per-color-space pass counts. Each count is independent: a pixel that
/// passes the HSV band is counted there even when the RGB gate rejects it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ClassificationStats {
    pub total_pixels: u64,
    pub skin_pixels: u64,
    pub rgb_pass_count: u64,
    pub hsv_pass_count: u64,
    pub ycbcr_pass_count: u64,
}

impl ClassificationStats {
    #[inline]
    pub fn record(&mut self, d: SkinDecision) {
        self.total_pixels += 1;
        self.skin_pixels += u64::from(d.is_skin);
        self.rgb_pass_count += u64::from(d.rgb_pass);
        self.hsv_pass_count += u64::from(d.hsv_pass);
        self.ycbcr_pass_count += u64::from(d.ycbcr_pass);
    }
}

impl AddAssign for ClassificationStats {
    fn add_assign(&mut self, o: Self) {
        self.total_pixels += o.total_pixels;
        self.skin_pixels += o.skin_pixels;
        self.rgb_pass_count += o.rgb_pass_count;
        self.hsv_pass_count += o.hsv_pass_count;
        self.ycbcr_pass_count += o.ycbcr_pass_count;
    }
}

impl Add for ClassificationStats {
    type Output = Self;

    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

#[inline]
pub fn rgb_rule<T: Scalar>(p: Rgba, cfg: &ThresholdConfig<T>) -> bool {
    p.r > cfg.r_min
        && p.g > cfg.g_min
        && p.b > cfg.b_min
        && p.r > p.g
        && p.r > p.b
        && p.r.abs_diff(p.g) > cfg.rg_gap_min
        && p.a > cfg.a_min
}

/// V is not part of the rule.
#[inline]
pub fn hsv_rule<T: Scalar>(h: &Hsv<T>, cfg: &ThresholdConfig<T>) -> bool {
    cfg.h_min <= h.h && h.h <= cfg.h_max && cfg.s_min <= h.s && h.s <= cfg.s_max
}

/// `c` is expected to be in `cfg.ycbcr_mode`; the mode tag is not checked.
#[inline]
pub fn ycbcr_rule<T: Scalar>(c: &YCbCr<T>, cfg: &ThresholdConfig<T>) -> bool {
    c.cr > cfg.cr_min
        && c.cb > cfg.cb_min
        && c.y > cfg.y_min
        && cfg.line_coeffs.iter().all(|l| l.holds(c.cb, c.cr))
}

#[inline]
pub fn classify_pixel<T: Scalar>(p: Rgba, cfg: &ThresholdConfig<T>) -> SkinDecision {
    let rgb_pass = rgb_rule(p, cfg);
    let hsv_pass = hsv_rule(&rgb_to_hsv::<T>(p), cfg);
    let ycbcr_pass = ycbcr_rule(&rgb_to_ycbcr::<T>(p, cfg.ycbcr_mode), cfg);
    SkinDecision {
        is_skin: rgb_pass && (hsv_pass || ycbcr_pass),
        rgb_pass,
        hsv_pass,
        ycbcr_pass,
    }
}

fn classify_slice<T: Scalar>(
    pixels: &[Rgba],
    cfg: &ThresholdConfig<T>,
    out: &mut [bool],
) -> ClassificationStats {
    let mut stats = ClassificationStats::default();
    for (p, bit) in pixels.iter().zip(out.iter_mut()) {
        let d = classify_pixel(*p, cfg);
        *bit = d.is_skin;
        stats.record(d);
    }
    stats
}

pub fn classify_image<T: Scalar>(
    img: &ImageBuffer,
    cfg: &ThresholdConfig<T>,
) -> Result<(Mask, ClassificationStats)> {
    if img.is_empty() {
        return Err(Error::EmptyImage);
    }
    let mut bits = vec![false; img.pixels().len()];
    let stats = classify_slice(img.pixels(), cfg, &mut bits);
    Ok((Mask::from_bits(img.width(), img.height(), bits)?, stats))
}

/// Same result as [`classify_image`], split by rows across the current
/// rayon pool.
pub fn classify_image_par<T: Scalar>(
    img: &ImageBuffer,
    cfg: &ThresholdConfig<T>,
) -> Result<(Mask, ClassificationStats)> {
    if img.is_empty() {
        return Err(Error::EmptyImage);
    }
    let width = img.width() as usize;
    let mut bits = vec![false; img.pixels().len()];
    let stats = img
        .pixels()
        .par_chunks(width)
        .zip(bits.par_chunks_mut(width))
        .map(|(row, out)| classify_slice(row, cfg, out))
        .reduce(ClassificationStats::default, Add::add);
    Ok((Mask::from_bits(img.width(), img.height(), bits)?, stats))
}
