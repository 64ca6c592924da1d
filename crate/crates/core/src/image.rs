//! Pixel buffers, binary masks, and file I/O.
//!
//! Indexing is row-major from the top-left corner. Inputs are PNG or
//! baseline JPEG decoded to 8-bit RGBA; outputs are always PNG.

use std::path::{Path, PathBuf};

use ::image::{ImageError, ImageFormat};

use crate::color::{rgb_to_ycbcr, Rgba, YCbCrMode};
use crate::error::{Error, Result};

/// Ground-truth luma at or above this value counts as skin.
pub const DEFAULT_GT_THRESHOLD: f64 = 128.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    pixels: Vec<Rgba>,
}

fn check_len(width: u32, height: u32, len: usize) -> Result<()> {
    if width as usize * height as usize != len {
        return Err(Error::BufferLength { width, height, len });
    }
    if len == 0 {
        return Err(Error::EmptyImage);
    }
    Ok(())
}

fn check_dims(a: (u32, u32), b: (u32, u32)) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            left_width: a.0,
            left_height: a.1,
            right_width: b.0,
            right_height: b.1,
        });
    }
    Ok(())
}

impl ImageBuffer {
    pub fn new(width: u32, height: u32, pixels: Vec<Rgba>) -> Result<Self> {
        check_len(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: u32, height: u32, p: Rgba) -> Result<Self> {
        Self::new(width, height, vec![p; width as usize * height as usize])
    }

    /// Builds an image by evaluating `f(x, y)` for every position.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> Rgba) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[Rgba] {
        &self.pixels
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn get(&self, x: u32, y: u32) -> Option<Rgba> {
        if x >= self.width || y >= self.height {
            return None;
        }
        self.pixels
            .get(y as usize * self.width as usize + x as usize)
            .copied()
    }

    fn to_rgba8(&self) -> ::image::RgbaImage {
        let raw = self
            .pixels
            .iter()
            .flat_map(|p| [p.r, p.g, p.b, p.a])
            .collect();
        ::image::RgbaImage::from_raw(self.width, self.height, raw)
            .expect("buffer length checked at construction")
    }
}

/// Binary skin map; `true` is skin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl Mask {
    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Result<Self> {
        check_len(width, height, bits.len())?;
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn filled(width: u32, height: u32, value: bool) -> Result<Self> {
        Self::from_bits(width, height, vec![value; width as usize * height as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_true(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn complement(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// 0/255 grayscale bytes, one per pixel.
    pub fn to_gray_bytes(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect()
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::NotFound(path.to_owned()),
        _ => Error::Io {
            path: path.to_owned(),
            source: e,
        },
    })?;
    if bytes.is_empty() {
        return Err(Error::CorruptFile {
            path: path.to_owned(),
            reason: "empty file".into(),
        });
    }
    let format = match ::image::guess_format(&bytes) {
        Ok(f @ (ImageFormat::Png | ImageFormat::Jpeg)) => f,
        _ => return Err(Error::UnsupportedFormat(path.to_owned())),
    };
    let decoded = ::image::load_from_memory_with_format(&bytes, format).map_err(|e| match e {
        ImageError::Unsupported(_) => Error::UnsupportedFormat(path.to_owned()),
        other => Error::CorruptFile {
            path: path.to_owned(),
            reason: other.to_string(),
        },
    })?;
    let rgba = decoded.to_rgba8();
    let (width, height) = rgba.dimensions();
    let pixels = rgba
        .pixels()
        .map(|p| Rgba::new(p[0], p[1], p[2], p[3]))
        .collect();
    ImageBuffer::new(width, height, pixels)
}

fn encode_error(path: &Path, e: ImageError) -> Error {
    match e {
        ImageError::IoError(source) => Error::Io {
            path: path.to_owned(),
            source,
        },
        other => Error::Encode {
            path: path.to_owned(),
            reason: other.to_string(),
        },
    }
}

/// Writes an 8-bit grayscale PNG: skin 255, non-skin 0.
pub fn write_mask(m: &Mask, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    ::image::save_buffer_with_format(
        path,
        &m.to_gray_bytes(),
        m.width,
        m.height,
        ::image::ExtendedColorType::L8,
        ImageFormat::Png,
    )
    .map_err(|e| encode_error(path, e))
}

/// Writes an 8-bit RGBA PNG.
pub fn write_image(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path: PathBuf = path.as_ref().to_owned();
    img.to_rgba8()
        .save_with_format(&path, ImageFormat::Png)
        .map_err(|e| encode_error(&path, e))
}

fn blend(src: u8, top: u8, alpha: u32) -> u8 {
    ((u32::from(top) * alpha + u32::from(src) * (255 - alpha) + 127) / 255) as u8
}

/// Blends `highlight` over every skin pixel with weight `highlight.a / 255`.
/// An opaque highlight replaces the pixel; non-skin pixels are untouched.
pub fn overlay(img: &ImageBuffer, m: &Mask, highlight: Rgba) -> Result<ImageBuffer> {
    check_dims(img.dimensions(), m.dimensions())?;
    let alpha = u32::from(highlight.a);
    let pixels = img
        .pixels
        .iter()
        .zip(&m.bits)
        .map(|(&p, &skin)| {
            if !skin {
                return p;
            }
            Rgba::new(
                blend(p.r, highlight.r, alpha),
                blend(p.g, highlight.g, alpha),
                blend(p.b, highlight.b, alpha),
                blend(p.a, 255, alpha),
            )
        })
        .collect();
    ImageBuffer::new(img.width, img.height, pixels)
}

/// Skin where the digital-mode luma is at least `luma_threshold`.
pub fn binarize_ground_truth(img: &ImageBuffer, luma_threshold: f64) -> Mask {
    let bits = img
        .pixels
        .iter()
        .map(|&p| rgb_to_ycbcr::<f64>(p, YCbCrMode::Digital).y >= luma_threshold)
        .collect();
    Mask {
        width: img.width,
        height: img.height,
        bits,
    }
}
