//! Pixel unpacking and color-space conversions.
//!
//! Every conversion takes 8-bit channels and forms each output as one exact
//! integer numerator divided once by an integer denominator. For `f64` the
//! result is therefore the correctly rounded value of the exact rational, so
//! a value that lands exactly on a threshold (Y = 80, S = 0.23, H = 50, ...)
//! compares exactly, and achromatic pixels give Cb = Cr = 128 with no drift.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One 8-bit-per-channel pixel. `a = 0` is fully transparent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Rgba {
    pub r: u8,
    pub g: u8,
    pub b: u8,
    pub a: u8,
}

impl Rgba {
    pub const fn new(r: u8, g: u8, b: u8, a: u8) -> Self {
        Self { r, g, b, a }
    }

    pub const fn opaque(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b, a: 255 }
    }

    pub fn is_achromatic(self) -> bool {
        self.r == self.g && self.g == self.b
    }

    fn max_min(self) -> (u8, u8) {
        (
            self.r.max(self.g).max(self.b),
            self.r.min(self.g).min(self.b),
        )
    }
}

/// Splits a packed `0xAARRGGBB` word into channels.
#[inline]
pub const fn unpack_argb(packed: u32) -> Rgba {
    Rgba {
        a: ((packed >> 24) & 0xff) as u8,
        r: ((packed >> 16) & 0xff) as u8,
        g: ((packed >> 8) & 0xff) as u8,
        b: (packed & 0xff) as u8,
    }
}

#[inline]
pub const fn pack_argb(p: Rgba) -> u32 {
    (p.a as u32) << 24 | (p.r as u32) << 16 | (p.g as u32) << 8 | p.b as u32
}

/// Chromaticity coordinates: each channel divided by R + G + B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedRgb<T = f64> {
    pub rn: T,
    pub gn: T,
    pub bn: T,
}

pub fn normalize_rgb<T: Scalar>(p: Rgba) -> Result<NormalizedRgb<T>> {
    let sum = i64::from(p.r) + i64::from(p.g) + i64::from(p.b);
    if sum == 0 {
        return Err(Error::DegenerateBlack);
    }
    let sum = T::int(sum);
    Ok(NormalizedRgb {
        rn: T::int(p.r.into()) / sum,
        gn: T::int(p.g.into()) / sum,
        bn: T::int(p.b.into()) / sum,
    })
}

/// Hexcone HSV. `h` in degrees on `[0, 360)`, `s` and `v` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hsv<T = f64> {
    pub h: T,
    pub s: T,
    pub v: T,
}

impl<T: Scalar> Hsv<T> {
    pub fn new(h: T, s: T, v: T) -> Self {
        Self { h, s, v }
    }
}

/// Achromatic pixels get `h = 0`.
pub fn rgb_to_hsv<T: Scalar>(p: Rgba) -> Hsv<T> {
    let (max, min) = p.max_min();
    let v = T::int(max.into()) / T::int(255);
    if max == 0 {
        return Hsv {
            h: T::zero(),
            s: T::zero(),
            v,
        };
    }
    let delta = i64::from(max) - i64::from(min);
    let s = T::int(delta) / T::int(max.into());
    if delta == 0 {
        return Hsv { h: T::zero(), s, v };
    }

    let (r, g, b) = (i64::from(p.r), i64::from(p.g), i64::from(p.b));
    // Hue as a single numerator over delta, already shifted into [0, 360).
    let numerator = if p.r == max {
        let n = 60 * (g - b);
        if n < 0 {
            n + 360 * delta
        } else {
            n
        }
    } else if p.g == max {
        60 * (b - r) + 120 * delta
    } else {
        60 * (r - g) + 240 * delta
    };
    let h = T::int(numerator) / T::int(delta);
    Hsv { h, s, v }
}

/// Which YCbCr definition to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YCbCrMode {
    /// BT.601 full range with chroma centered at 128. Y lies on `[0, 255]`;
    /// Cb and Cr on `[0.5, 255.5]` since they are not clamped.
    #[default]
    Digital,
    /// `Y = 0.299R + 0.287G + 0.11B`, `Cr = R - Y`, `Cb = B - Y`, with no offset.
    PaperLiteral,
}

impl std::str::FromStr for YCbCrMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "digital" | "digital-full-range" => Ok(Self::Digital),
            "paper-literal" | "literal" => Ok(Self::PaperLiteral),
            other => Err(format!(
                "unknown ycbcr mode `{other}` (expected digital or paper-literal)"
            )),
        }
    }
}

impl std::fmt::Display for YCbCrMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Digital => "digital",
            Self::PaperLiteral => "paper-literal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YCbCr<T = f64> {
    pub y: T,
    pub cb: T,
    pub cr: T,
    pub mode: YCbCrMode,
}

impl<T: Scalar> YCbCr<T> {
    pub fn new(y: T, cb: T, cr: T, mode: YCbCrMode) -> Self {
        Self { y, cb, cr, mode }
    }
}

pub fn rgb_to_ycbcr<T: Scalar>(p: Rgba, mode: YCbCrMode) -> YCbCr<T> {
    let (r, g, b) = (i64::from(p.r), i64::from(p.g), i64::from(p.b));
    match mode {
        YCbCrMode::Digital => {
            // Coefficients scaled by 1e6; the chroma rows each sum to zero.
            let y = 299_000 * r + 587_000 * g + 114_000 * b;
            let cb = 128_000_000 - 168_736 * r - 331_264 * g + 500_000 * b;
            let cr = 128_000_000 + 500_000 * r - 418_688 * g - 81_312 * b;
            let scale = T::int(1_000_000);
            YCbCr {
                y: T::int(y) / scale,
                cb: T::int(cb) / scale,
                cr: T::int(cr) / scale,
                mode,
            }
        }
        YCbCrMode::PaperLiteral => {
            let y = 299 * r + 287 * g + 110 * b;
            let scale = T::int(1000);
            YCbCr {
                y: T::int(y) / scale,
                cb: T::int(1000 * b - y) / scale,
                cr: T::int(1000 * r - y) / scale,
                mode,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn unpack_examples() {
        assert_eq!(unpack_argb(0xFFFF_FFFF), Rgba::new(255, 255, 255, 255));
        assert_eq!(unpack_argb(0), Rgba::new(0, 0, 0, 0));
        assert_eq!(unpack_argb(0x80C8_9678), Rgba::new(200, 150, 120, 128));
    }

    #[test]
    fn pack_unpack_each_byte() {
        for v in 0..=255u8 {
            for (shift, pick) in [
                (24, Rgba::new(0, 0, 0, v)),
                (16, Rgba::new(v, 0, 0, 0)),
                (8, Rgba::new(0, v, 0, 0)),
                (0, Rgba::new(0, 0, v, 0)),
            ] {
                let word = u32::from(v) << shift;
                assert_eq!(unpack_argb(word), pick);
                assert_eq!(pack_argb(pick), word);
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let n: NormalizedRgb = normalize_rgb(Rgba::opaque(100, 100, 100)).unwrap();
        assert!(close(n.rn, 1.0 / 3.0, 1e-12) && close(n.gn, 1.0 / 3.0, 1e-12));
        let n: NormalizedRgb = normalize_rgb(Rgba::opaque(255, 0, 0)).unwrap();
        assert_eq!((n.rn, n.gn, n.bn), (1.0, 0.0, 0.0));
        let n: NormalizedRgb = normalize_rgb(Rgba::opaque(200, 150, 120)).unwrap();
        assert!(close(n.rn, 0.42553, 1e-5));
        assert!(close(n.gn, 0.31915, 1e-5));
        assert!(close(n.bn, 0.25532, 1e-5));
    }

    #[test]
    fn normalize_black_is_error() {
        assert!(matches!(
            normalize_rgb::<f64>(Rgba::opaque(0, 0, 0)),
            Err(Error::DegenerateBlack)
        ));
        // alpha does not rescue it
        assert!(normalize_rgb::<f32>(Rgba::new(0, 0, 0, 7)).is_err());
    }

    #[test]
    fn hsv_examples() {
        let h: Hsv = rgb_to_hsv(Rgba::opaque(255, 0, 0));
        assert_eq!((h.h, h.s, h.v), (0.0, 1.0, 1.0));
        let h: Hsv = rgb_to_hsv(Rgba::opaque(0, 0, 0));
        assert_eq!((h.h, h.s, h.v), (0.0, 0.0, 0.0));
        let h: Hsv = rgb_to_hsv(Rgba::opaque(200, 150, 120));
        assert!(close(h.h, 22.5, 1e-4));
        assert!(close(h.s, 0.4, 1e-4));
        assert!(close(h.v, 0.78431, 1e-4));
    }

    #[test]
    fn hsv_sector_anchors() {
        let cases = [
            ((0, 255, 0), 120.0),
            ((0, 0, 255), 240.0),
            ((255, 255, 0), 60.0),
            ((0, 255, 255), 180.0),
            ((255, 0, 255), 300.0),
            ((255, 0, 1), 360.0 - 60.0 / 255.0),
        ];
        for ((r, g, b), want) in cases {
            let h: Hsv = rgb_to_hsv(Rgba::opaque(r, g, b));
            assert!(close(h.h, want, 1e-12), "({r},{g},{b}) -> {}", h.h);
            assert!(h.h < 360.0);
        }
    }

    #[test]
    fn hue_tie_lands_exactly() {
        // 6(G - B) = 5 delta puts the hue exactly on 50 degrees.
        let h: Hsv = rgb_to_hsv(Rgba::opaque(106, 105, 100));
        assert_eq!(h.h, 50.0);
        let h: Hsv = rgb_to_hsv(Rgba::opaque(100, 95, 77));
        assert_eq!(h.s, 0.23);
    }

    #[test]
    fn ycbcr_examples() {
        let c: YCbCr = rgb_to_ycbcr(Rgba::opaque(128, 128, 128), YCbCrMode::Digital);
        assert_eq!((c.y, c.cb, c.cr), (128.0, 128.0, 128.0));

        let c: YCbCr = rgb_to_ycbcr(Rgba::opaque(200, 150, 120), YCbCrMode::Digital);
        assert!(close(c.y, 161.53, 0.01));
        assert!(close(c.cb, 104.56, 0.01));
        assert!(close(c.cr, 155.44, 0.01));

        let c: YCbCr = rgb_to_ycbcr(Rgba::opaque(100, 100, 100), YCbCrMode::PaperLiteral);
        assert!(close(c.y, 69.6, 1e-9));
        assert!(close(c.cb, 30.4, 1e-9));
        assert!(close(c.cr, 30.4, 1e-9));
        assert_eq!(c.mode, YCbCrMode::PaperLiteral);

        let c: YCbCr = rgb_to_ycbcr(Rgba::opaque(200, 150, 120), YCbCrMode::PaperLiteral);
        assert!(close(c.y, 116.05, 1e-9));
        assert!(close(c.cb, 3.95, 1e-9));
        assert!(close(c.cr, 83.95, 1e-9));
    }

    #[test]
    fn digital_range_extremes() {
        for p in [
            Rgba::opaque(255, 0, 0),
            Rgba::opaque(0, 255, 0),
            Rgba::opaque(0, 0, 255),
            Rgba::opaque(255, 255, 0),
            Rgba::opaque(0, 255, 255),
            Rgba::opaque(255, 0, 255),
        ] {
            let c: YCbCr = rgb_to_ycbcr(p, YCbCrMode::Digital);
            assert!((0.0..=255.0).contains(&c.y), "{p:?} -> {c:?}");
            for v in [c.cb, c.cr] {
                assert!((0.5..=255.5).contains(&v), "{p:?} -> {c:?}");
            }
        }
    }

    #[test]
    fn every_gray_level_is_exact() {
        for v in 0..=255u8 {
            let c: YCbCr = rgb_to_ycbcr(Rgba::opaque(v, v, v), YCbCrMode::Digital);
            assert_eq!((c.y, c.cb, c.cr), (f64::from(v), 128.0, 128.0));
            let c: YCbCr<f32> = rgb_to_ycbcr(Rgba::opaque(v, v, v), YCbCrMode::Digital);
            assert_eq!((c.cb, c.cr), (128.0, 128.0));
            let h: Hsv = rgb_to_hsv(Rgba::opaque(v, v, v));
            assert_eq!((h.h, h.s), (0.0, 0.0));
        }
    }

    #[test]
    fn f32_tracks_f64() {
        let p = Rgba::opaque(200, 150, 120);
        let a: YCbCr<f32> = rgb_to_ycbcr(p, YCbCrMode::Digital);
        let b: YCbCr<f64> = rgb_to_ycbcr(p, YCbCrMode::Digital);
        assert!((f64::from(a.cr) - b.cr).abs() < 1e-4);
        let a: Hsv<f32> = rgb_to_hsv(p);
        assert_eq!(a.h, 22.5);
    }

    #[test]
    fn mode_parses() {
        assert_eq!("digital".parse::<YCbCrMode>().unwrap(), YCbCrMode::Digital);
        assert_eq!(
            "paper-literal".parse::<YCbCrMode>().unwrap(),
            YCbCrMode::PaperLiteral
        );
        assert!("studio".parse::<YCbCrMode>().is_err());
        assert_eq!(YCbCrMode::PaperLiteral.to_string(), "paper-literal");
    }
}
