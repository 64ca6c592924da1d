//! Confusion matrices, precision/accuracy and per-image report tables.
//!
//! Percentages are carried at full precision. CSV output rounds them to one
//! decimal; JSON output keeps every digit.

use std::io::Write;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::classifier::ClassificationStats;
use crate::error::{Error, Result};
use crate::image::Mask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub const fn new(tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        Self { tp, fp, tn, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// Pixels predicted skin.
    pub fn detected_skin(&self) -> u64 {
        self.tp + self.fp
    }

    pub fn gt_skin(&self) -> u64 {
        self.tp + self.fn_
    }

    pub fn detected_nonskin(&self) -> u64 {
        self.tn + self.fn_
    }

    pub fn gt_nonskin(&self) -> u64 {
        self.tn + self.fp
    }
}

impl AddAssign for ConfusionMatrix {
    fn add_assign(&mut self, o: Self) {
        self.tp += o.tp;
        self.fp += o.fp;
        self.tn += o.tn;
        self.fn_ += o.fn_;
    }
}

impl Add for ConfusionMatrix {
    type Output = Self;

    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

pub fn confusion(pred: &Mask, gt: &Mask) -> Result<ConfusionMatrix> {
    if pred.dimensions() != gt.dimensions() {
        return Err(Error::DimensionMismatch {
            left_width: pred.width(),
            left_height: pred.height(),
            right_width: gt.width(),
            right_height: gt.height(),
        });
    }
    let mut cm = ConfusionMatrix::default();
    for (&p, &g) in pred.bits().iter().zip(gt.bits()) {
        match (p, g) {
            (true, true) => cm.tp += 1,
            (true, false) => cm.fp += 1,
            (false, false) => cm.tn += 1,
            (false, true) => cm.fn_ += 1,
        }
    }
    Ok(cm)
}

/// `100 · TP / (TP + FP)`. Undefined when nothing was predicted skin.
pub fn precision(cm: &ConfusionMatrix) -> Result<f64> {
    let predicted = cm.tp + cm.fp;
    if predicted == 0 {
        return Err(Error::UndefinedPrecision);
    }
    Ok(100.0 * cm.tp as f64 / predicted as f64)
}

/// `100 · (TP + TN) / total`.
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::EmptyComparison);
    }
    Ok(100.0 * (cm.tp + cm.tn) as f64 / total as f64)
}

fn ratio_pct(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| 100.0 * num as f64 / den as f64)
}

/// Recall, specificity and F1. Reported for reference only; the headline
/// metrics are precision and accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupplementaryMetrics {
    pub recall_pct: Option<f64>,
    pub specificity_pct: Option<f64>,
    pub f1_pct: Option<f64>,
}

impl SupplementaryMetrics {
    pub fn from_counts(cm: &ConfusionMatrix) -> Self {
        Self {
            recall_pct: ratio_pct(cm.tp, cm.tp + cm.fn_),
            specificity_pct: ratio_pct(cm.tn, cm.tn + cm.fp),
            f1_pct: ratio_pct(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn_),
        }
    }
}

/// One line of the per-image table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub image_id: String,
    pub total: u64,
    pub detected_skin: u64,
    pub gt_skin: u64,
    pub detected_nonskin: u64,
    pub gt_nonskin: u64,
    pub cm: ConfusionMatrix,
    /// `None` when no pixel was predicted skin.
    pub precision_pct: Option<f64>,
    pub accuracy_pct: f64,
    /// Per-color-space pass counts from the classifier, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_space_counts: Option<ClassificationStats>,
    pub supplementary: SupplementaryMetrics,
}

impl MetricsRow {
    pub fn new(image_id: impl Into<String>, cm: ConfusionMatrix) -> Result<Self> {
        Ok(Self {
            image_id: image_id.into(),
            total: cm.total(),
            detected_skin: cm.detected_skin(),
            gt_skin: cm.gt_skin(),
            detected_nonskin: cm.detected_nonskin(),
            gt_nonskin: cm.gt_nonskin(),
            precision_pct: precision(&cm).ok(),
            accuracy_pct: accuracy(&cm)?,
            supplementary: SupplementaryMetrics::from_counts(&cm),
            color_space_counts: None,
            cm,
        })
    }

    pub fn with_stats(mut self, stats: ClassificationStats) -> Self {
        self.color_space_counts = Some(stats);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: Vec<MetricsRow>,
    /// Summed counts over every row.
    pub pooled: ConfusionMatrix,
    /// Micro-average: metrics of the pooled counts.
    pub pooled_precision_pct: Option<f64>,
    pub pooled_accuracy_pct: f64,
    /// Macro-average: mean of per-row metrics. Rows with undefined
    /// precision are left out of the precision mean.
    pub macro_precision_pct: Option<f64>,
    pub macro_accuracy_pct: f64,
}

/// Pools rows by summing their counts. Row order is preserved.
pub fn aggregate(rows: &[MetricsRow]) -> Result<Summary> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let pooled = rows
        .iter()
        .fold(ConfusionMatrix::default(), |acc, r| acc + r.cm);
    let precisions: Vec<f64> = rows.iter().filter_map(|r| r.precision_pct).collect();
    let macro_precision_pct =
        (!precisions.is_empty()).then(|| precisions.iter().sum::<f64>() / precisions.len() as f64);
    let macro_accuracy_pct = rows.iter().map(|r| r.accuracy_pct).sum::<f64>() / rows.len() as f64;
    Ok(Summary {
        rows: rows.to_vec(),
        pooled,
        pooled_precision_pct: precision(&pooled).ok(),
        pooled_accuracy_pct: accuracy(&pooled)?,
        macro_precision_pct,
        macro_accuracy_pct,
    })
}

/// CSV header; the column order is fixed.
pub const CSV_HEADER: [&str; 12] = [
    "Sr. No.",
    "Total pixels",
    "Skin pixels detected",
    "Skin pixels in GT",
    "Non-skin pixels detected",
    "Non-skin pixels in GT",
    "TP",
    "FP",
    "TN",
    "FN",
    "Precision",
    "Accuracy",
];

/// Label of the summary row appended by [`write_summary_csv`].
pub const POOLED_LABEL: &str = "pooled";

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_owned(), |v| format!("{v:.1}"))
}

fn csv_record(id: &str, cm: &ConfusionMatrix) -> [String; 12] {
    [
        id.to_owned(),
        cm.total().to_string(),
        cm.detected_skin().to_string(),
        cm.gt_skin().to_string(),
        cm.detected_nonskin().to_string(),
        cm.gt_nonskin().to_string(),
        cm.tp.to_string(),
        cm.fp.to_string(),
        cm.tn.to_string(),
        cm.fn_.to_string(),
        pct(precision(cm).ok()),
        pct(accuracy(cm).ok()),
    ]
}

pub fn write_rows_csv<W: Write>(rows: &[MetricsRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(csv_record(&r.image_id, &r.cm))?;
    }
    w.flush()?;
    Ok(())
}

/// Per-row table followed by one `pooled` row with the summed counts.
pub fn write_summary_csv<W: Write>(summary: &Summary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &summary.rows {
        w.write_record(csv_record(&r.image_id, &r.cm))?;
    }
    w.write_record(csv_record(POOLED_LABEL, &summary.pooled))?;
    w.flush()?;
    Ok(())
}

pub fn write_summary_json<W: Write>(summary: &Summary, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, summary)?;
    writeln!(out)?;
    Ok(())
}
