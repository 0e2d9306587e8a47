//! Row-major raster containers shared by every stage of the pipeline.

use crate::error::{Error, Result};

/// Grayscale image with intensities in `[0, 1]`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        if let Some(pos) = data.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::invalid(format!(
                "intensity {} at index {pos} is outside [0, 1]",
                data[pos]
            )));
        }
        Ok(GrayImage { width, height, data })
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel. Values are
    /// clamped to `[0, 1]`.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_dims(width, height, width * height)?;
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y).clamp(0.0, 1.0));
            }
        }
        Ok(GrayImage { width, height, data })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Crate-internal constructor for maps already known to be in range.
    pub(crate) fn from_raw(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        GrayImage { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn same_shape(&self, mask: &BinaryMask) -> bool {
        self.width == mask.width() && self.height == mask.height()
    }
}

/// Per-pixel fluid labels: 1 = fluid, 0 = tissue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        if let Some(pos) = data.iter().position(|&v| v > 1) {
            return Err(Error::invalid(format!(
                "mask label {} at index {pos} is not 0 or 1",
                data[pos]
            )));
        }
        Ok(BinaryMask { width, height, data })
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![0; width * height])
    }

    /// Nonzero entries of `raw` become fluid.
    pub fn from_nonzero(width: usize, height: usize, raw: impl IntoIterator<Item = u8>) -> Result<Self> {
        let data: Vec<u8> = raw.into_iter().map(|v| u8::from(v != 0)).collect();
        Self::new(width, height, data)
    }

    pub(crate) fn from_raw(width: usize, height: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        BinaryMask { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    pub fn fluid_count(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    pub fn same_shape(&self, other: &BinaryMask) -> bool {
        self.width == other.width && self.height == other.height
    }
}

/// Tint applied to fluid pixels in overlays.
pub const OVERLAY_TINT: [u8; 3] = [255, 0, 0];
pub const OVERLAY_OPACITY: f64 = 0.5;

/// `round(v * 255)`, with `v` clamped to `[0, 1]`.
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Interleaved RGB overlay of `mask` on `image`: fluid pixels are blended
/// with [`OVERLAY_TINT`] at [`OVERLAY_OPACITY`], tissue stays gray.
pub fn overlay_rgb(image: &GrayImage, mask: &BinaryMask) -> Result<Vec<u8>> {
    if !image.same_shape(mask) {
        return Err(Error::invalid("overlay mask and image dimensions differ"));
    }
    let mut rgb = Vec::with_capacity(image.len() * 3);
    for (&v, &m) in image.data().iter().zip(mask.data()) {
        let g = quantize(v);
        if m == 1 {
            for t in OVERLAY_TINT {
                let blended = (1.0 - OVERLAY_OPACITY) * g as f64 + OVERLAY_OPACITY * t as f64;
                rgb.push(blended.round() as u8);
            }
        } else {
            rgb.extend([g, g, g]);
        }
    }
    Ok(rgb)
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::invalid(format!(
            "raster dimensions must be positive, got {width}x{height}"
        )));
    }
    if width.checked_mul(height) != Some(len) {
        return Err(Error::invalid(format!(
            "raster of {width}x{height} needs {} values, got {len}",
            width.saturating_mul(height)
        )));
    }
    Ok(())
}
