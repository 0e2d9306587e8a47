//! Synthetic B-scans: bright horizontal retinal layers with dark elliptical
//! fluid pockets and additive Gaussian noise. The returned mask is the exact
//! pocket support, so it serves as ground truth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, GrayImage};

const PLACEMENT_RETRIES: usize = 500;
/// Minimum gap in pixels between two pockets.
const BLOB_GAP: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomSpec {
    pub width: usize,
    pub height: usize,
    pub layer_count: usize,
    pub blob_count: usize,
    /// `(min, max)` range for the fluid level shared by all pockets.
    pub blob_intensity: (f64, f64),
    /// `(min, max)` layer intensity.
    pub background_intensity: (f64, f64),
    pub noise_std: f64,
    pub seed: u64,
}

impl Default for PhantomSpec {
    fn default() -> Self {
        PhantomSpec {
            width: 512,
            height: 496,
            layer_count: 11,
            blob_count: 4,
            blob_intensity: (0.02, 0.08),
            background_intensity: (0.4, 0.9),
            noise_std: 0.02,
            seed: 0,
        }
    }
}

impl PhantomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::invalid("phantom dimensions must be positive"));
        }
        if self.layer_count == 0 {
            return Err(Error::invalid("phantom needs at least one layer"));
        }
        for (name, (lo, hi)) in [("blob", self.blob_intensity), ("background", self.background_intensity)] {
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                return Err(Error::invalid(format!(
                    "{name} intensity range [{lo}, {hi}] must be an interval inside [0, 1]"
                )));
            }
        }
        if self.blob_intensity.1 >= self.background_intensity.0 {
            return Err(Error::invalid(format!(
                "blob intensity max {} must be below background min {}",
                self.blob_intensity.1, self.background_intensity.0
            )));
        }
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return Err(Error::invalid(format!(
                "noise stddev must be >= 0, got {}",
                self.noise_std
            )));
        }
        Ok(())
    }
}

struct Ellipse {
    cx: f64,
    cy: f64,
    a: f64,
    b: f64,
}

impl Ellipse {
    fn contains(&self, x: f64, y: f64, grow: f64) -> bool {
        let dx = (x - self.cx) / (self.a + grow);
        let dy = (y - self.cy) / (self.b + grow);
        dx * dx + dy * dy <= 1.0
    }

    fn overlaps(&self, other: &Ellipse) -> bool {
        // Conservative: bounding circles with the required gap.
        let r1 = self.a.max(self.b);
        let r2 = other.a.max(other.b);
        let d = ((self.cx - other.cx).powi(2) + (self.cy - other.cy).powi(2)).sqrt();
        d < r1 + r2 + BLOB_GAP
    }
}

pub fn generate_phantom(spec: &PhantomSpec) -> Result<(GrayImage, BinaryMask)> {
    spec.validate()?;
    let (w, h) = (spec.width, spec.height);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let (bg_lo, bg_hi) = spec.background_intensity;
    let levels: Vec<f64> = (0..spec.layer_count).map(|_| rng.random_range(bg_lo..=bg_hi)).collect();
    let band = h as f64 / spec.layer_count as f64;

    let mut data = vec![0.0; w * h];
    for y in 0..h {
        let layer = ((y as f64 / band).floor() as usize).min(spec.layer_count - 1);
        data[y * w..(y + 1) * w].fill(levels[layer]);
    }

    let blobs = place_blobs(spec, &mut rng)?;
    let mut labels = vec![0u8; w * h];
    let (bl_lo, bl_hi) = spec.blob_intensity;
    let level = rng.random_range(bl_lo..=bl_hi);
    for blob in &blobs {
        let x0 = (blob.cx - blob.a).floor().max(0.0) as usize;
        let x1 = ((blob.cx + blob.a).ceil() as usize).min(w - 1);
        let y0 = (blob.cy - blob.b).floor().max(0.0) as usize;
        let y1 = ((blob.cy + blob.b).ceil() as usize).min(h - 1);
        for y in y0..=y1 {
            for x in x0..=x1 {
                if blob.contains(x as f64, y as f64, 0.0) {
                    data[y * w + x] = level;
                    labels[y * w + x] = 1;
                }
            }
        }
    }

    if spec.noise_std > 0.0 {
        let noise = Normal::new(0.0, spec.noise_std).map_err(|e| Error::Generation(e.to_string()))?;
        for v in &mut data {
            *v = (*v + noise.sample(&mut rng)).clamp(0.0, 1.0);
        }
    }

    Ok((GrayImage::from_raw(w, h, data), BinaryMask::from_raw(w, h, labels)))
}

fn place_blobs(spec: &PhantomSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Ellipse>> {
    let (w, h) = (spec.width as f64, spec.height as f64);
    let a_range = ((w / 20.0).max(1.0), (w / 8.0).max(1.0));
    let b_range = ((h / 20.0).max(1.0), (h / 10.0).max(1.0));
    let mut blobs: Vec<Ellipse> = Vec::with_capacity(spec.blob_count);

    for n in 0..spec.blob_count {
        let mut placed = false;
        for _ in 0..PLACEMENT_RETRIES {
            let a = rng.random_range(a_range.0..=a_range.1);
            let b = rng.random_range(b_range.0..=b_range.1);
            if 2.0 * a + 1.0 > w || 2.0 * b + 1.0 > h {
                continue;
            }
            let cx = rng.random_range(a..=(w - 1.0 - a));
            let cy = rng.random_range(b..=(h - 1.0 - b));
            let candidate = Ellipse { cx, cy, a, b };
            if blobs.iter().all(|e| !e.overlaps(&candidate)) {
                blobs.push(candidate);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Generation(format!(
                "could not place blob {} of {} in a {}x{} image after {PLACEMENT_RETRIES} attempts",
                n + 1,
                spec.blob_count,
                spec.width,
                spec.height
            )));
        }
    }
    Ok(blobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> PhantomSpec {
        PhantomSpec {
            width: 128,
            height: 96,
            seed,
            ..PhantomSpec::default()
        }
    }

    #[test]
    fn noiseless_phantom_thresholds_exactly() {
        let spec = PhantomSpec {
            noise_std: 0.0,
            blob_intensity: (0.05, 0.05),
            ..small(3)
        };
        let (img, mask) = generate_phantom(&spec).unwrap();
        assert!(mask.fluid_count() > 0);
        for (v, m) in img.data().iter().zip(mask.data()) {
            assert_eq!(u8::from(*v < 0.2), *m);
        }
    }

    #[test]
    fn same_seed_same_output() {
        assert_eq!(
            generate_phantom(&small(9)).unwrap(),
            generate_phantom(&small(9)).unwrap()
        );
        assert_ne!(
            generate_phantom(&small(9)).unwrap().1,
            generate_phantom(&small(10)).unwrap().1
        );
    }

    #[test]
    fn no_blobs_no_fluid() {
        let (_, mask) = generate_phantom(&PhantomSpec {
            blob_count: 0,
            ..small(1)
        })
        .unwrap();
        assert_eq!(mask.fluid_count(), 0);
    }

    #[test]
    fn mask_is_exact_blob_support() {
        let spec = PhantomSpec {
            noise_std: 0.0,
            ..small(5)
        };
        let (img, mask) = generate_phantom(&spec).unwrap();
        for (v, m) in img.data().iter().zip(mask.data()) {
            let is_blob = (spec.blob_intensity.0..=spec.blob_intensity.1).contains(v);
            assert_eq!(u8::from(is_blob), *m);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let inverted = PhantomSpec {
            blob_intensity: (0.1, 0.5),
            background_intensity: (0.4, 0.9),
            ..small(0)
        };
        assert!(matches!(generate_phantom(&inverted), Err(Error::InvalidArgument(_))));
        let crowded = PhantomSpec {
            width: 8,
            height: 8,
            blob_count: 50,
            ..small(0)
        };
        assert!(matches!(generate_phantom(&crowded), Err(Error::Generation(_))));
    }
}
