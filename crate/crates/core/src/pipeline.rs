//! B-scan segmentation: neutrosophic transform, clustering of the pixel
//! intensities, then the darkest cluster becomes the fluid mask.

use crate::clustering::{ncm_fit, NcmConfig, NcmState};
use crate::error::{Error, Result};
use crate::neutrosophic::{to_neutrosophic, NeutrosophicImage};
use crate::raster::{BinaryMask, GrayImage};

#[derive(Debug, Clone)]
pub struct SegmentationResult {
    pub mask: BinaryMask,
    /// Solver state over the in-ROI pixels, in row-major pixel order.
    pub state: NcmState,
    pub sorted_centers: Vec<f64>,
    /// Cluster index per image pixel. Pixels outside the ROI get their
    /// nearest centre but are never labelled fluid.
    pub assignments: Vec<usize>,
    /// Index of the darkest cluster.
    pub fluid_cluster: usize,
    pub neutrosophic: NeutrosophicImage,
    /// Wall-clock seconds spent in [`segment_bscan`].
    pub elapsed: f64,
}

/// Hard assignment of every clustered point to its largest truth
/// membership, lowest index on ties.
pub fn assign_pixels(state: &NcmState) -> Vec<usize> {
    (0..state.points()).map(|i| argmax(state.t_row(i))).collect()
}

fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (j, &v) in row.iter().enumerate().skip(1) {
        if v > row[best] {
            best = j;
        }
    }
    best
}

/// Index of the smallest centre, lowest index on ties.
pub fn darkest_cluster(centers: &[f64]) -> usize {
    let mut best = 0;
    for (j, &v) in centers.iter().enumerate().skip(1) {
        if v < centers[best] {
            best = j;
        }
    }
    best
}

/// Marks the pixels of the lowest-centre cluster as fluid.
pub fn binarize(assignments: &[usize], centers: &[f64], width: usize, height: usize) -> Result<BinaryMask> {
    if centers.is_empty() {
        return Err(Error::invalid("no cluster centres to binarize against"));
    }
    let fluid = darkest_cluster(centers);
    BinaryMask::new(
        width,
        height,
        assignments.iter().map(|&a| u8::from(a == fluid)).collect(),
    )
}

/// Segments a B-scan into fluid (1) and tissue (0).
///
/// Only pixels inside `roi` take part in clustering; without a ROI the whole
/// image is used.
pub fn segment_bscan(image: &GrayImage, config: &NcmConfig, roi: Option<&BinaryMask>) -> Result<SegmentationResult> {
    let timer = Stopwatch::start();
    if let Some(roi) = roi {
        if !image.same_shape(roi) {
            return Err(Error::invalid(format!(
                "ROI is {}x{} but the image is {}x{}",
                roi.width(),
                roi.height(),
                image.width(),
                image.height()
            )));
        }
    }
    let neutrosophic = to_neutrosophic(image, config.window())?;

    let inside: Vec<usize> = match roi {
        Some(roi) => (0..image.len()).filter(|&k| roi.data()[k] == 1).collect(),
        None => (0..image.len()).collect(),
    };
    if inside.len() < config.clusters() {
        return Err(Error::invalid(format!(
            "ROI selects {} pixels, fewer than {} clusters",
            inside.len(),
            config.clusters()
        )));
    }
    let pixels: Vec<f64> = inside.iter().map(|&k| image.data()[k]).collect();
    let state = ncm_fit(&pixels, config)?;

    let mut assignments: Vec<usize> = image.data().iter().map(|&x| nearest(&state.centers, x)).collect();
    for (&k, a) in inside.iter().zip(assign_pixels(&state)) {
        assignments[k] = a;
    }

    let fluid_cluster = darkest_cluster(&state.centers);
    let mut labels = vec![0u8; image.len()];
    for &k in &inside {
        labels[k] = u8::from(assignments[k] == fluid_cluster);
    }
    let mask = BinaryMask::new(image.width(), image.height(), labels)?;

    let mut sorted_centers = state.centers.clone();
    sorted_centers.sort_by(f64::total_cmp);

    Ok(SegmentationResult {
        mask,
        state,
        sorted_centers,
        assignments,
        fluid_cluster,
        neutrosophic,
        elapsed: timer.seconds(),
    })
}

fn nearest(centers: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (j, c) in centers.iter().enumerate().skip(1) {
        if (x - c).abs() < (x - centers[best]).abs() {
            best = j;
        }
    }
    best
}

/// Clears 4-connected fluid components smaller than `min_area` pixels.
pub fn remove_small_components(mask: &BinaryMask, min_area: usize) -> BinaryMask {
    let (w, h) = (mask.width(), mask.height());
    let src = mask.data();
    let mut out = src.to_vec();
    let mut seen = vec![false; src.len()];
    let mut stack = Vec::new();
    let mut component = Vec::new();

    for start in 0..src.len() {
        if src[start] == 0 || seen[start] {
            continue;
        }
        component.clear();
        stack.push(start);
        seen[start] = true;
        while let Some(k) = stack.pop() {
            component.push(k);
            let (x, y) = (k % w, k / w);
            let mut visit = |n: usize| {
                if src[n] == 1 && !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            };
            if x > 0 {
                visit(k - 1);
            }
            if x + 1 < w {
                visit(k + 1);
            }
            if y > 0 {
                visit(k - w);
            }
            if y + 1 < h {
                visit(k + w);
            }
        }
        if component.len() < min_area {
            for &k in &component {
                out[k] = 0;
            }
        }
    }
    BinaryMask::from_raw(w, h, out)
}

// `Instant` is unavailable on wasm32-unknown-unknown.
struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn seconds(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_secs_f64()
        }
        #[cfg(target_arch = "wasm32")]
        {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state_with_rows(rows: &[&[f64]]) -> NcmState {
        let c = rows[0].len();
        NcmState {
            centers: vec![0.0; c],
            t_memb: rows.iter().flat_map(|r| r.iter().copied()).collect(),
            i_memb: vec![0.0; rows.len()],
            f_memb: vec![0.0; rows.len()],
            cost_history: vec![],
            iterations: 0,
            converged: true,
        }
    }

    #[test]
    fn assignment_rules() {
        let s = state_with_rows(&[&[0.0, 1.0, 0.0], &[0.25, 0.25, 0.25], &[0.1, 0.2, 0.3]]);
        assert_eq!(assign_pixels(&s), vec![1, 0, 2]);
    }

    #[test]
    fn binarize_picks_min_center() {
        let m = binarize(&[0, 1, 2, 1], &[0.8, 0.05, 0.4], 2, 2).unwrap();
        assert_eq!(m.data(), &[0, 1, 0, 1]);
        let m = binarize(&[0, 0], &[0.8, 0.05, 0.4], 2, 1).unwrap();
        assert_eq!(m.fluid_count(), 0);
    }

    #[test]
    fn twelve_stripes_pick_darkest() {
        let levels: Vec<f64> = (0..12).map(|k| 0.05 + 0.08 * k as f64).collect();
        // Order the stripes so the darkest is not first.
        let order = [5, 2, 9, 0, 11, 7, 3, 10, 1, 6, 8, 4];
        let img = GrayImage::from_fn(24, 36, |_, y| levels[order[y / 3]]).unwrap();
        let cfg = NcmConfig::default();
        let res = segment_bscan(&img, &cfg, None).unwrap();
        for y in 0..36 {
            for x in 0..24 {
                assert_eq!(res.mask.get(x, y), u8::from(order[y / 3] == 0), "({x},{y})");
            }
        }
        assert!(res.sorted_centers.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn roi_restricts_fluid() {
        let img = GrayImage::from_fn(20, 20, |x, y| {
            if (x + y) % 5 == 0 {
                0.05
            } else {
                0.3 + 0.02 * (x % 10) as f64
            }
        })
        .unwrap();
        let roi = BinaryMask::new(20, 20, (0..400).map(|k| u8::from(k % 20 < 10)).collect()).unwrap();
        let cfg = NcmConfig::builder().clusters(4).build().unwrap();
        let res = segment_bscan(&img, &cfg, Some(&roi)).unwrap();
        assert!(res.mask.fluid_count() > 0);
        for k in 0..400 {
            if roi.data()[k] == 0 {
                assert_eq!(res.mask.data()[k], 0);
            }
        }
        assert!(res.assignments.iter().all(|&a| a < 4));

        let bad = BinaryMask::zeros(10, 20).unwrap();
        assert!(segment_bscan(&img, &cfg, Some(&bad)).is_err());
        let tiny = BinaryMask::new(20, 20, (0..400).map(|k| u8::from(k < 3)).collect()).unwrap();
        assert!(segment_bscan(&img, &cfg, Some(&tiny)).is_err());
    }

    #[test]
    fn small_components_removed() {
        #[rustfmt::skip]
        let m = BinaryMask::new(5, 3, vec![
            1, 0, 0, 1, 1,
            0, 0, 0, 1, 1,
            1, 0, 0, 0, 0,
        ]).unwrap();
        let out = remove_small_components(&m, 2);
        assert_eq!(out.fluid_count(), 4);
        assert_eq!(remove_small_components(&m, 1), m);
    }
}
