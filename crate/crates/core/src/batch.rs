//! Dataset evaluation: pair images with ground truth, classify, compare.
//!
//! Images are paired with ground-truth files by filename stem, or listed
//! explicitly in a manifest. Pairs are processed on a pool of `workers`
//! threads but results always come back in pair order, so the report is
//! identical for any worker count.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::classifier::{classify_image, ClassificationStats, ThresholdConfig};
use crate::error::{Error, Result};
use crate::eval::{aggregate, confusion, MetricsRow, Summary};
use crate::image::{binarize_ground_truth, load_image, write_mask, Mask, DEFAULT_GT_THRESHOLD};

const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub id: String,
    pub image: PathBuf,
    pub gt: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pairing {
    /// Sorted by image filename.
    pub pairs: Vec<Pair>,
    /// Files in either directory with no counterpart.
    pub unpaired: Vec<PathBuf>,
}

fn is_image(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

fn stem(path: &Path) -> Option<String> {
    path.file_stem().and_then(|s| s.to_str()).map(str::to_owned)
}

fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::NotFound(dir.to_owned()),
        _ => Error::Io {
            path: dir.to_owned(),
            source: e,
        },
    })?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::Io {
            path: dir.to_owned(),
            source: e,
        })?;
        let path = entry.path();
        if is_image(&path) {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Pairs `image_dir/<stem>.*` with `gt_dir/<stem>.*`. When a stem occurs
/// more than once in a directory, the lexicographically first file wins and
/// the others are reported as unpaired.
pub fn pair_by_stem(image_dir: &Path, gt_dir: &Path) -> Result<Pairing> {
    let images = list_images(image_dir)?;
    let mut unpaired = Vec::new();

    let mut gts: BTreeMap<String, PathBuf> = BTreeMap::new();
    for gt in list_images(gt_dir)? {
        match stem(&gt) {
            Some(s) if !gts.contains_key(&s) => {
                gts.insert(s, gt);
            }
            _ => unpaired.push(gt),
        }
    }

    let mut pairs: Vec<Pair> = Vec::new();
    for image in images {
        let Some(id) = stem(&image) else {
            unpaired.push(image);
            continue;
        };
        if pairs.iter().any(|p| p.id == id) {
            unpaired.push(image);
            continue;
        }
        match gts.remove(&id) {
            Some(gt) => pairs.push(Pair { id, image, gt }),
            None => unpaired.push(image),
        }
    }
    unpaired.extend(gts.into_values());
    unpaired.sort();
    Ok(Pairing { pairs, unpaired })
}

/// Reads a manifest of `image,gt` lines. Blank lines and lines starting with
/// `#` are skipped; relative paths resolve against the manifest's directory.
/// Pairs keep manifest order.
pub fn read_manifest(path: &Path) -> Result<Vec<Pair>> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::NotFound(path.to_owned()),
        _ => Error::Io {
            path: path.to_owned(),
            source: e,
        },
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::Manifest {
            path: path.to_owned(),
            line: idx + 1,
            reason: reason.to_owned(),
        };
        let (image, gt) = line
            .split_once(',')
            .ok_or_else(|| bad("expected `image,gt`"))?;
        let (image, gt) = (image.trim(), gt.trim());
        if image.is_empty() || gt.is_empty() || gt.contains(',') {
            return Err(bad("expected `image,gt`"));
        }
        let image = base.join(image);
        let id = stem(&image).ok_or_else(|| bad("image path has no file name"))?;
        pairs.push(Pair {
            id,
            image,
            gt: base.join(gt),
        });
    }
    Ok(pairs)
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub config: ThresholdConfig<f64>,
    pub gt_threshold: f64,
    pub workers: usize,
    /// When set, `<id>_mask.png` is written here for every processed pair.
    pub mask_dir: Option<PathBuf>,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self {
            config: ThresholdConfig::default(),
            gt_threshold: DEFAULT_GT_THRESHOLD,
            workers: 1,
            mask_dir: None,
        }
    }
}

#[derive(Debug)]
pub struct PairResult {
    pub row: MetricsRow,
    pub mask: Mask,
    pub stats: ClassificationStats,
}

/// Classifies one image and compares it with its ground truth.
pub fn evaluate_pair(
    id: &str,
    image: &Path,
    gt: &Path,
    cfg: &ThresholdConfig<f64>,
    gt_threshold: f64,
) -> Result<PairResult> {
    let img = load_image(image)?;
    let truth = binarize_ground_truth(&load_image(gt)?, gt_threshold);
    let (mask, stats) = classify_image(&img, cfg)?;
    let cm = confusion(&mask, &truth)?;
    let row = MetricsRow::new(id, cm)?.with_stats(stats);
    Ok(PairResult { row, mask, stats })
}

#[derive(Debug)]
pub struct BatchOutcome {
    pub summary: Summary,
    /// Pairs that failed, in pair order.
    pub failures: Vec<(Pair, Error)>,
}

pub fn run_batch(pairs: &[Pair], opts: &BatchOptions) -> Result<BatchOutcome> {
    if pairs.is_empty() {
        return Err(Error::NoPairs);
    }
    opts.config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;

    let process = |pair: &Pair| -> Result<MetricsRow> {
        let res = evaluate_pair(
            &pair.id,
            &pair.image,
            &pair.gt,
            &opts.config,
            opts.gt_threshold,
        )?;
        if let Some(dir) = &opts.mask_dir {
            write_mask(&res.mask, dir.join(format!("{}_mask.png", pair.id)))?;
        }
        Ok(res.row)
    };
    let results: Vec<Result<MetricsRow>> = pool.install(|| pairs.par_iter().map(process).collect());

    let mut rows = Vec::with_capacity(pairs.len());
    let mut failures = Vec::new();
    for (pair, res) in pairs.iter().zip(results) {
        match res {
            Ok(row) => rows.push(row),
            Err(e) => failures.push((pair.clone(), e)),
        }
    }
    if rows.is_empty() {
        return Err(Error::NoPairs);
    }
    Ok(BatchOutcome {
        summary: aggregate(&rows)?,
        failures,
    })
}
