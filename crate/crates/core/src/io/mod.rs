//! Raster files, dataset trees and report serialisation.
//!
//! Grayscale inputs (PGM, PNG 8/16-bit, TIFF) are scaled by their type
//! maximum into `[0, 1]`. Masks are written as 8-bit PNG with fluid = 255
//! and read back with any nonzero value counting as fluid.

mod dataset;
mod report;

pub use dataset::{index_dataset, DatasetIndex, DatasetLayout, OptimaLayout, ScanEntry, SubjectEntry};
pub use report::{report_to_csv, report_to_json, write_report, ReportFormat};

use std::path::Path;

use image::{DynamicImage, ImageBuffer, ImageError, ImageFormat, ImageReader, Luma, Rgb};

use crate::error::{Error, Result};
pub use crate::raster::{overlay_rgb, quantize, OVERLAY_OPACITY, OVERLAY_TINT};
use crate::raster::{BinaryMask, GrayImage};

fn decode(path: &Path) -> Result<(DynamicImage, String)> {
    if !path.exists() {
        return Err(Error::NotFound(path.to_path_buf()));
    }
    let reader = ImageReader::open(path)?.with_guessed_format()?;
    let format = reader
        .format()
        .map(|f| format!("{f:?}"))
        .unwrap_or_else(|| extension_of(path));
    let img = reader.decode().map_err(|e| image_error(e, &format))?;
    Ok((img, format))
}

fn extension_of(path: &Path) -> String {
    path.extension()
        .and_then(|e| e.to_str())
        .unwrap_or("unknown")
        .to_ascii_uppercase()
}

fn image_error(e: ImageError, format: &str) -> Error {
    match e {
        ImageError::IoError(io) => Error::Io(io),
        other => Error::Format {
            format: format.to_string(),
            detail: other.to_string(),
        },
    }
}

fn not_grayscale(format: &str, img: &DynamicImage) -> Error {
    Error::Format {
        format: format.to_string(),
        detail: format!("{:?} pixels are not single-channel grayscale", img.color()),
    }
}

/// Loads a grayscale raster, normalised to `[0, 1]`. Colour inputs are
/// rejected.
pub fn load_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let (img, format) = decode(path.as_ref())?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data: Vec<f64> = match &img {
        DynamicImage::ImageLuma8(buf) => buf.as_raw().iter().map(|&v| v as f64 / 255.0).collect(),
        DynamicImage::ImageLuma16(buf) => buf.as_raw().iter().map(|&v| v as f64 / 65535.0).collect(),
        other => return Err(not_grayscale(&format, other)),
    };
    GrayImage::new(w, h, data)
}

/// Loads a mask; any nonzero value is fluid.
pub fn load_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let (img, format) = decode(path.as_ref())?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    match &img {
        DynamicImage::ImageLuma8(buf) => BinaryMask::from_nonzero(w, h, buf.as_raw().iter().copied()),
        DynamicImage::ImageLuma16(buf) => {
            BinaryMask::from_nonzero(w, h, buf.as_raw().iter().map(|&v| u8::from(v != 0)))
        }
        other => Err(not_grayscale(&format, other)),
    }
}

/// Reads only the header to get `(width, height)`.
pub fn raster_dimensions(path: impl AsRef<Path>) -> Result<(usize, usize)> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::NotFound(path.to_path_buf()));
    }
    let (w, h) = image::image_dimensions(path).map_err(|e| image_error(e, &extension_of(path)))?;
    Ok((w as usize, h as usize))
}

fn save_png<P, C>(buf: ImageBuffer<P, C>, path: &Path) -> Result<()>
where
    P: image::Pixel + image::PixelWithColorType,
    [P::Subpixel]: image::EncodableLayout,
    C: std::ops::Deref<Target = [P::Subpixel]>,
{
    buf.save_with_format(path, ImageFormat::Png)
        .map_err(|e| image_error(e, "Png"))
}

pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let raw: Vec<u8> = mask.data().iter().map(|&v| if v == 1 { 255 } else { 0 }).collect();
    let buf = ImageBuffer::<Luma<u8>, _>::from_raw(mask.width() as u32, mask.height() as u32, raw)
        .expect("buffer length matches mask dimensions");
    save_png(buf, path.as_ref())
}

/// Writes an image as 8-bit grayscale PNG, `round(v * 255)` per pixel.
pub fn save_gray(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let raw: Vec<u8> = image.data().iter().map(|&v| quantize(v)).collect();
    let buf = ImageBuffer::<Luma<u8>, _>::from_raw(image.width() as u32, image.height() as u32, raw)
        .expect("buffer length matches image dimensions");
    save_png(buf, path.as_ref())
}

pub fn save_overlay(image: &GrayImage, mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let rgb = overlay_rgb(image, mask)?;
    let buf = ImageBuffer::<Rgb<u8>, _>::from_raw(image.width() as u32, image.height() as u32, rgb)
        .expect("buffer length matches image dimensions");
    save_png(buf, path.as_ref())
}
