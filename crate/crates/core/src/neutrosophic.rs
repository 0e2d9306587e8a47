//! Neutrosophic representation of a grayscale image.
//!
//! Each pixel is described by three degrees: truth `T` (normalised local
//! mean), indeterminacy `I` (normalised deviation from the local mean) and
//! falsity `F = 1 - T`.

use crate::error::{Error, Result};
use crate::raster::GrayImage;

/// Ranges narrower than this are treated as constant during min-max
/// normalisation.
pub const DEGENERATE_RANGE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct NeutrosophicImage {
    pub t_map: GrayImage,
    pub i_map: GrayImage,
    pub f_map: GrayImage,
    /// `|g - mean|` per pixel, before normalisation.
    pub delta_map: GrayImage,
    pub mean_map: GrayImage,
}

impl NeutrosophicImage {
    pub fn width(&self) -> usize {
        self.t_map.width()
    }

    pub fn height(&self) -> usize {
        self.t_map.height()
    }
}

/// Mean over the `window x window` neighbourhood centred on each pixel.
///
/// Coordinates falling outside the image are clamped to the nearest edge
/// pixel (replicate padding). `window` must be odd and no larger than
/// `2 * min(width, height) - 1`.
pub fn local_mean(image: &GrayImage, window: usize) -> Result<GrayImage> {
    check_window(image, window)?;
    let (w, h) = (image.width(), image.height());
    let r = (window / 2) as isize;
    let src = image.data();

    // Separable box: horizontal sums first, then vertical sums of those.
    let mut rows = vec![0.0; w * h];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = 0.0;
            for dx in -r..=r {
                acc += line[clamp_index(x as isize + dx, w)];
            }
            rows[y * w + x] = acc;
        }
    }

    let norm = (window * window) as f64;
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for dy in -r..=r {
                acc += rows[clamp_index(y as isize + dy, h) * w + x];
            }
            out[y * w + x] = (acc / norm).clamp(0.0, 1.0);
        }
    }
    Ok(GrayImage::from_raw(w, h, out))
}

/// Transforms `image` into its truth, indeterminacy and falsity maps using a
/// local-mean window of size `window`.
pub fn to_neutrosophic(image: &GrayImage, window: usize) -> Result<NeutrosophicImage> {
    let mean_map = local_mean(image, window)?;
    let (w, h) = (image.width(), image.height());

    let delta: Vec<f64> = image
        .data()
        .iter()
        .zip(mean_map.data())
        .map(|(g, m)| (g - m).abs())
        .collect();

    let t = min_max_normalize(mean_map.data(), 0.5);
    let i = min_max_normalize(&delta, 0.0);
    let f: Vec<f64> = t.iter().map(|t| 1.0 - t).collect();

    Ok(NeutrosophicImage {
        t_map: GrayImage::from_raw(w, h, t),
        i_map: GrayImage::from_raw(w, h, i),
        f_map: GrayImage::from_raw(w, h, f),
        delta_map: GrayImage::from_raw(w, h, delta),
        mean_map,
    })
}

/// Maps `values` linearly onto `[0, 1]`; a degenerate range yields `fallback`
/// everywhere.
fn min_max_normalize(values: &[f64], fallback: f64) -> Vec<f64> {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    let range = hi - lo;
    if range < DEGENERATE_RANGE {
        return vec![fallback; values.len()];
    }
    values.iter().map(|&v| ((v - lo) / range).clamp(0.0, 1.0)).collect()
}

fn check_window(image: &GrayImage, window: usize) -> Result<()> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "window size must be a positive odd number, got {window}"
        )));
    }
    let limit = 2 * image.width().min(image.height()) - 1;
    if window > limit {
        return Err(Error::invalid(format!(
            "window size {window} exceeds {limit} for a {}x{} image",
            image.width(),
            image.height()
        )));
    }
    Ok(())
}

#[inline]
fn clamp_index(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}
