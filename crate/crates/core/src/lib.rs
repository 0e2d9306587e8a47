//! Fluid/tissue segmentation of grayscale OCT B-scans by neutrosophic
//! c-means clustering.
//!
//! The crate is organised bottom-up:
//!
//! * [`raster`] holds the image and mask containers,
//! * [`neutrosophic`] maps an image to its truth/indeterminacy/falsity sets,
//! * [`clustering`] contains the fuzzy c-means baseline and the neutrosophic
//!   c-means solver,
//! * [`pipeline`] turns a B-scan into a binary fluid mask,
//! * [`metrics`] scores masks against expert annotations,
//! * [`phantom`] generates synthetic B-scans with exact ground truth,
//! * [`io`] (feature `io`) reads and writes rasters, datasets and reports.

pub mod clustering;
pub mod error;
#[cfg(feature = "io")]
pub mod io;
pub mod metrics;
pub mod neutrosophic;
pub mod phantom;
pub mod pipeline;
pub mod raster;

pub use clustering::{
    fcm_cost, fcm_fit, ncm_cost, ncm_fit, FcmState, NcmConfig, NcmConfigBuilder, NcmSolver, NcmState,
};
pub use error::{Error, Result};
pub use metrics::{ConfusionCounts, MetricsReport};
pub use neutrosophic::{local_mean, to_neutrosophic, NeutrosophicImage};
pub use phantom::{generate_phantom, PhantomSpec};
pub use pipeline::{segment_bscan, SegmentationResult};
pub use raster::{BinaryMask, GrayImage};
