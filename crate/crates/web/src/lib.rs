//! Browser demo bindings: generate a phantom B-scan, view its neutrosophic
//! maps and segment it, all rendered as RGBA buffers for a `<canvas>`.
//!
//! The plain-Rust functions below do the work and are tested natively; the
//! `#[wasm_bindgen]` wrappers only translate errors into JS exceptions.

use ncmseg::metrics::confusion;
use ncmseg::raster::{overlay_rgb, quantize};
use ncmseg::{generate_phantom, segment_bscan, to_neutrosophic, BinaryMask, GrayImage, NcmConfig, PhantomSpec};
use wasm_bindgen::prelude::*;

/// Expands an interleaved RGB buffer to RGBA with full opacity.
fn rgb_to_rgba(rgb: &[u8]) -> Vec<u8> {
    rgb.chunks_exact(3).flat_map(|p| [p[0], p[1], p[2], 255]).collect()
}

fn gray_to_rgba(image: &GrayImage) -> Vec<u8> {
    image
        .data()
        .iter()
        .flat_map(|&v| {
            let g = quantize(v);
            [g, g, g, 255]
        })
        .collect()
}

/// Solver parameters exposed by the page's controls.
#[derive(Debug, Clone, Copy)]
pub struct DemoParams {
    pub clusters: usize,
    pub fuzzifier: f64,
    pub weights: [f64; 3],
    pub delta: f64,
    pub window: usize,
    pub max_iter: usize,
}

impl Default for DemoParams {
    fn default() -> Self {
        let c = NcmConfig::default();
        DemoParams {
            clusters: c.clusters(),
            fuzzifier: c.fuzzifier(),
            weights: c.weights(),
            delta: c.delta(),
            window: c.window(),
            max_iter: c.max_iter(),
        }
    }
}

impl DemoParams {
    fn config(&self) -> ncmseg::Result<NcmConfig> {
        let [w1, w2, w3] = self.weights;
        NcmConfig::builder()
            .clusters(self.clusters)
            .fuzzifier(self.fuzzifier)
            .weights(w1, w2, w3)
            .delta(self.delta)
            .window(self.window)
            .max_iter(self.max_iter)
            .build()
    }
}

/// Outcome of one segmentation run.
#[derive(Debug, Clone)]
pub struct SegmentOutcome {
    pub overlay_rgba: Vec<u8>,
    pub dice: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub fluid_pixels: usize,
    pub centers: Vec<f64>,
}

/// A phantom B-scan together with its ground truth.
#[derive(Debug, Clone)]
pub struct Scene {
    image: GrayImage,
    truth: BinaryMask,
}

impl Scene {
    pub fn generate(width: usize, height: usize, blobs: usize, noise: f64, seed: u64) -> ncmseg::Result<Self> {
        let spec = PhantomSpec {
            width,
            height,
            blob_count: blobs,
            noise_std: noise,
            seed,
            ..PhantomSpec::default()
        };
        let (image, truth) = generate_phantom(&spec)?;
        Ok(Scene { image, truth })
    }

    pub fn image_rgba(&self) -> Vec<u8> {
        gray_to_rgba(&self.image)
    }

    pub fn truth_rgba(&self) -> ncmseg::Result<Vec<u8>> {
        overlay_rgb(&self.image, &self.truth).map(|rgb| rgb_to_rgba(&rgb))
    }

    /// One of the maps `t`, `i`, `f` or `delta`, as grayscale RGBA.
    pub fn map_rgba(&self, window: usize, which: &str) -> ncmseg::Result<Vec<u8>> {
        let ns = to_neutrosophic(&self.image, window)?;
        let map = match which {
            "t" => &ns.t_map,
            "i" => &ns.i_map,
            "f" => &ns.f_map,
            "delta" => &ns.delta_map,
            other => {
                return Err(ncmseg::Error::InvalidArgument(format!(
                    "unknown map {other:?}; expected t, i, f or delta"
                )))
            }
        };
        Ok(gray_to_rgba(map))
    }

    pub fn segment(&self, params: &DemoParams) -> ncmseg::Result<SegmentOutcome> {
        let result = segment_bscan(&self.image, &params.config()?, None)?;
        let counts = confusion(&result.mask, &self.truth)?;
        Ok(SegmentOutcome {
            overlay_rgba: rgb_to_rgba(&overlay_rgb(&self.image, &result.mask)?),
            dice: counts.dice(),
            iterations: result.state.iterations,
            converged: result.state.converged,
            fluid_pixels: result.mask.fluid_count(),
            centers: result.sorted_centers,
        })
    }
}

fn js_err(e: ncmseg::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct Demo {
    scene: Scene,
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(width: usize, height: usize, blobs: usize, noise: f64, seed: u64) -> Result<Demo, JsError> {
        Scene::generate(width, height, blobs, noise, seed)
            .map(|scene| Demo { scene })
            .map_err(js_err)
    }

    pub fn width(&self) -> usize {
        self.scene.image.width()
    }

    pub fn height(&self) -> usize {
        self.scene.image.height()
    }

    #[wasm_bindgen(js_name = imageRgba)]
    pub fn image_rgba(&self) -> Vec<u8> {
        self.scene.image_rgba()
    }

    #[wasm_bindgen(js_name = truthRgba)]
    pub fn truth_rgba(&self) -> Result<Vec<u8>, JsError> {
        self.scene.truth_rgba().map_err(js_err)
    }

    #[wasm_bindgen(js_name = mapRgba)]
    pub fn map_rgba(&self, window: usize, which: &str) -> Result<Vec<u8>, JsError> {
        self.scene.map_rgba(window, which).map_err(js_err)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn segment(
        &self,
        clusters: usize,
        fuzzifier: f64,
        w1: f64,
        w2: f64,
        w3: f64,
        delta: f64,
        window: usize,
        max_iter: usize,
    ) -> Result<Segmentation, JsError> {
        let params = DemoParams {
            clusters,
            fuzzifier,
            weights: [w1, w2, w3],
            delta,
            window,
            max_iter,
        };
        self.scene.segment(&params).map(Segmentation).map_err(js_err)
    }
}

#[wasm_bindgen]
pub struct Segmentation(SegmentOutcome);

#[wasm_bindgen]
impl Segmentation {
    #[wasm_bindgen(js_name = overlayRgba)]
    pub fn overlay_rgba(&self) -> Vec<u8> {
        self.0.overlay_rgba.clone()
    }

    /// Dice against the phantom's ground truth; NaN when undefined.
    pub fn dice(&self) -> f64 {
        self.0.dice.unwrap_or(f64::NAN)
    }

    pub fn iterations(&self) -> usize {
        self.0.iterations
    }

    pub fn converged(&self) -> bool {
        self.0.converged
    }

    #[wasm_bindgen(js_name = fluidPixels)]
    pub fn fluid_pixels(&self) -> usize {
        self.0.fluid_pixels
    }

    pub fn centers(&self) -> Vec<f64> {
        self.0.centers.clone()
    }
}
