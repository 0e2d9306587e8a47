use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use super::raster_dimensions;
use crate::error::{Error, Result};

const IMAGE_EXTENSIONS: [&str; 4] = ["png", "pgm", "tif", "tiff"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    /// File stem shared by the B-scan and its masks.
    pub id: String,
    pub image: PathBuf,
    /// Expert name to mask path.
    pub masks: BTreeMap<String, PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectEntry {
    pub id: String,
    pub scans: Vec<ScanEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DatasetIndex {
    pub subjects: Vec<SubjectEntry>,
    /// Sorted expert names found anywhere in the tree.
    pub experts: Vec<String>,
    /// One entry per B-scan left out of the index.
    pub warnings: Vec<String>,
}

impl DatasetIndex {
    pub fn scan_count(&self) -> usize {
        self.subjects.iter().map(|s| s.scans.len()).sum()
    }

    /// Resolves an expert given either by name or by 1-based position in
    /// [`DatasetIndex::experts`].
    pub fn resolve_expert(&self, selector: &str) -> Option<&str> {
        if let Some(name) = self.experts.iter().find(|e| e.as_str() == selector) {
            return Some(name);
        }
        let k: usize = selector.parse().ok()?;
        self.experts.get(k.checked_sub(1)?).map(String::as_str)
    }
}

/// Maps a dataset root to an index. Alternative on-disk conventions can
/// implement this and feed the same evaluation code.
pub trait DatasetLayout {
    fn index(&self, root: &Path) -> Result<DatasetIndex>;
}

/// `root/<subject>/images/<stem>.{png,pgm,tif}` paired with
/// `root/<subject>/masks/<expert>/<stem>.png`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OptimaLayout;

pub fn index_dataset(root: impl AsRef<Path>) -> Result<DatasetIndex> {
    OptimaLayout.index(root.as_ref())
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn is_raster(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

fn find_mask(dir: &Path, stem: &str) -> Option<PathBuf> {
    IMAGE_EXTENSIONS
        .iter()
        .map(|ext| dir.join(format!("{stem}.{ext}")))
        .find(|p| p.is_file())
}

impl DatasetLayout for OptimaLayout {
    fn index(&self, root: &Path) -> Result<DatasetIndex> {
        if !root.is_dir() {
            return Err(Error::NotFound(root.to_path_buf()));
        }
        let subject_dirs: Vec<PathBuf> = sorted_entries(root)?
            .into_iter()
            .filter(|p| p.join("images").is_dir())
            .collect();

        let mut experts = BTreeSet::new();
        for dir in &subject_dirs {
            let masks = dir.join("masks");
            if masks.is_dir() {
                for e in sorted_entries(&masks)? {
                    if e.is_dir() {
                        experts.insert(file_name(&e));
                    }
                }
            }
        }
        let experts: Vec<String> = experts.into_iter().collect();

        let mut index = DatasetIndex {
            experts,
            ..DatasetIndex::default()
        };
        for dir in subject_dirs {
            let subject = file_name(&dir);
            let mut scans = Vec::new();
            for image in sorted_entries(&dir.join("images"))?
                .into_iter()
                .filter(|p| is_raster(p))
            {
                let stem = image
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                match pair_masks(&dir, &image, &stem, &index.experts) {
                    Ok(masks) => scans.push(ScanEntry { id: stem, image, masks }),
                    Err(reason) => index.warnings.push(format!("{subject}/{stem}: {reason}")),
                }
            }
            if !scans.is_empty() {
                index.subjects.push(SubjectEntry { id: subject, scans });
            }
        }

        if index.scan_count() == 0 {
            return Err(Error::invalid(format!(
                "no annotated B-scans found under {}",
                root.display()
            )));
        }
        Ok(index)
    }
}

fn pair_masks(
    subject_dir: &Path,
    image: &Path,
    stem: &str,
    experts: &[String],
) -> std::result::Result<BTreeMap<String, PathBuf>, String> {
    if experts.is_empty() {
        return Err("no expert masks in dataset".into());
    }
    let dims = raster_dimensions(image).map_err(|e| e.to_string())?;
    let mut masks = BTreeMap::new();
    for expert in experts {
        let path = find_mask(&subject_dir.join("masks").join(expert), stem)
            .ok_or_else(|| format!("missing mask for expert {expert}"))?;
        let mdims = raster_dimensions(&path).map_err(|e| e.to_string())?;
        if mdims != dims {
            return Err(format!(
                "mask for expert {expert} is {}x{} but the B-scan is {}x{}",
                mdims.0, mdims.1, dims.0, dims.1
            ));
        }
        masks.insert(expert.clone(), path);
    }
    Ok(masks)
}
