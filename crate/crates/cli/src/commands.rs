use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use log::warn;
use serde_json::json;
use skinmask::batch::{pair_by_stem, read_manifest, run_batch, BatchOptions, Pair};
use skinmask::eval::{write_rows_csv, write_summary_csv, write_summary_json};
use skinmask::{
    binarize_ground_truth, classify_image, classify_image_par, confusion, load_image, overlay,
    write_image, write_mask, ClassificationStats, ImageBuffer, Mask, MetricsRow, Rgba,
};

use crate::config::RunConfig;
use crate::{Failure, Format};

const HIGHLIGHT: Rgba = Rgba::opaque(0, 255, 0);

type CmdResult = Result<(), Failure>;

fn op<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Operation(e.into())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_owned())
}

fn classify(img: &ImageBuffer, rc: &RunConfig) -> anyhow::Result<(Mask, ClassificationStats)> {
    if rc.workers <= 1 {
        return Ok(classify_image(img, &rc.thresholds)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(rc.workers)
        .build()?;
    Ok(pool.install(|| classify_image_par(img, &rc.thresholds))?)
}

fn create_out(dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("{}: cannot create directory", dir.display()))
}

fn stats_json(image: &Path, s: &ClassificationStats) -> serde_json::Value {
    json!({
        "image": image.display().to_string(),
        "total_pixels": s.total_pixels,
        "skin_pixels": s.skin_pixels,
        "rgb": s.rgb_pass_count,
        "hsv": s.hsv_pass_count,
        "ycbcr": s.ycbcr_pass_count,
    })
}

pub fn detect(input: &Path, rc: &RunConfig) -> CmdResult {
    let img = load_image(input).map_err(op)?;
    let (mask, stats) = classify(&img, rc).map_err(op)?;

    create_out(&rc.out).map_err(op)?;
    let mask_path = rc.out.join(format!("{}_mask.png", stem(input)));
    write_mask(&mask, &mask_path).map_err(op)?;
    let overlay_path = if rc.overlay {
        let path = rc.out.join(format!("{}_overlay.png", stem(input)));
        write_image(&overlay(&img, &mask, HIGHLIGHT).map_err(op)?, &path).map_err(op)?;
        Some(path)
    } else {
        None
    };

    let mut out = std::io::stdout().lock();
    match rc.format {
        Format::Csv => {
            writeln!(out, "image,total_pixels,skin_pixels,rgb,hsv,ycbcr,mask").map_err(op)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                input.display(),
                stats.total_pixels,
                stats.skin_pixels,
                stats.rgb_pass_count,
                stats.hsv_pass_count,
                stats.ycbcr_pass_count,
                mask_path.display()
            )
            .map_err(op)?;
        }
        Format::Json => {
            let mut v = stats_json(input, &stats);
            v["mask"] = json!(mask_path.display().to_string());
            if let Some(p) = overlay_path {
                v["overlay"] = json!(p.display().to_string());
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(op)?).map_err(op)?;
        }
    }
    Ok(())
}

pub fn eval(input: &Path, gt: &Path, rc: &RunConfig) -> CmdResult {
    let img = load_image(input).map_err(op)?;
    let truth = binarize_ground_truth(&load_image(gt).map_err(op)?, rc.gt_threshold);
    let (mask, stats) = classify(&img, rc).map_err(op)?;
    let cm = confusion(&mask, &truth)
        .with_context(|| format!("{} vs {}", input.display(), gt.display()))
        .map_err(op)?;
    let row = MetricsRow::new(stem(input), cm)
        .map_err(op)?
        .with_stats(stats);

    let out = std::io::stdout().lock();
    match rc.format {
        Format::Csv => write_rows_csv(std::slice::from_ref(&row), out).map_err(op)?,
        Format::Json => {
            let mut out = out;
            writeln!(out, "{}", serde_json::to_string_pretty(&row).map_err(op)?).map_err(op)?;
        }
    }
    Ok(())
}

fn collect_pairs(
    image_dir: Option<&Path>,
    gt_dir: Option<&Path>,
    manifest: Option<&Path>,
) -> Result<Vec<Pair>, Failure> {
    if let Some(m) = manifest {
        return read_manifest(m).map_err(op);
    }
    let (Some(images), Some(gts)) = (image_dir, gt_dir) else {
        return Err(Failure::Usage(anyhow!(
            "batch needs IMAGE_DIR and GT_DIR, or --manifest"
        )));
    };
    let pairing = pair_by_stem(images, gts).map_err(op)?;
    for path in &pairing.unpaired {
        warn!(
            "{}: no matching image/ground-truth file, skipped",
            path.display()
        );
    }
    Ok(pairing.pairs)
}

pub fn batch(
    image_dir: Option<&Path>,
    gt_dir: Option<&Path>,
    manifest: Option<&Path>,
    rc: &RunConfig,
) -> CmdResult {
    let pairs = collect_pairs(image_dir, gt_dir, manifest)?;
    if pairs.is_empty() {
        return Err(op(anyhow!("no image/ground-truth pairs found")));
    }
    create_out(&rc.out).map_err(op)?;
    let opts = BatchOptions {
        config: rc.thresholds.clone(),
        gt_threshold: rc.gt_threshold,
        workers: rc.workers,
        mask_dir: Some(rc.out.clone()),
    };
    let outcome = run_batch(&pairs, &opts).map_err(op)?;
    for (pair, err) in &outcome.failures {
        warn!("{}: skipped: {err}", pair.id);
    }
    let summary = &outcome.summary;

    let csv_path: PathBuf = rc.out.join("report.csv");
    let file = std::fs::File::create(&csv_path)
        .with_context(|| format!("{}: cannot create report", csv_path.display()))
        .map_err(op)?;
    write_summary_csv(summary, std::io::BufWriter::new(file)).map_err(op)?;
    if rc.format == Format::Json {
        let json_path = rc.out.join("report.json");
        let file = std::fs::File::create(&json_path)
            .with_context(|| format!("{}: cannot create report", json_path.display()))
            .map_err(op)?;
        write_summary_json(summary, std::io::BufWriter::new(file)).map_err(op)?;
    }

    let pct = |v: Option<f64>| v.map_or_else(|| "NA".to_owned(), |v| format!("{v:.2}%"));
    println!(
        "pooled: images={} precision={} accuracy={} (macro precision={} accuracy={}) report={}",
        summary.rows.len(),
        pct(summary.pooled_precision_pct),
        pct(Some(summary.pooled_accuracy_pct)),
        pct(summary.macro_precision_pct),
        pct(Some(summary.macro_accuracy_pct)),
        csv_path.display()
    );
    Ok(())
}

pub fn stats(input: &Path, rc: &RunConfig) -> CmdResult {
    let img = load_image(input).map_err(op)?;
    let (_, s) = classify(&img, rc).map_err(op)?;
    let mut out = std::io::stdout().lock();
    match rc.format {
        Format::Csv => {
            let rows = [
                ("RGB", s.rgb_pass_count),
                ("HSV", s.hsv_pass_count),
                ("YCbCr", s.ycbcr_pass_count),
                ("combined", s.skin_pixels),
            ];
            writeln!(out, "color_space,pixels").map_err(op)?;
            for (name, n) in rows {
                writeln!(out, "{name},{n}").map_err(op)?;
            }
        }
        Format::Json => {
            let v = stats_json(input, &s);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(op)?).map_err(op)?;
        }
    }
    Ok(())
}
