//! Resolution of the run configuration: defaults, then the config file, then
//! command-line flags. Every setting remembers where its value came from.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use serde::Serialize;
use serde_json::{Map, Value};
use skinmask::{ThresholdConfigF64, DEFAULT_GT_THRESHOLD};

use crate::{CommonArgs, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Default,
    File,
    Flag,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub thresholds: ThresholdConfigF64,
    pub gt_threshold: f64,
    pub out: PathBuf,
    pub format: Format,
    pub workers: usize,
    pub overlay: bool,
    pub config_file: Option<PathBuf>,
    pub sources: BTreeMap<String, Source>,
}

fn read_config_file(path: &Path) -> anyhow::Result<Map<String, Value>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("{}: cannot read config", path.display()))?;
    match serde_json::from_str(&text)
        .with_context(|| format!("{}: invalid JSON", path.display()))?
    {
        Value::Object(map) => Ok(map),
        _ => bail!("{}: config must be a JSON object", path.display()),
    }
}

/// Parses a `key=value` override. The value is read as JSON when possible,
/// otherwise as a plain string.
fn parse_set(item: &str) -> anyhow::Result<(String, Value)> {
    let (key, raw) = item
        .split_once('=')
        .ok_or_else(|| anyhow!("--set expects key=value, got `{item}`"))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    Ok((key.trim().to_owned(), value))
}

/// Errors from here are usage errors.
pub fn resolve(args: &CommonArgs) -> anyhow::Result<RunConfig> {
    let defaults = serde_json::to_value(ThresholdConfigF64::default())?;
    let Value::Object(mut merged) = defaults else {
        unreachable!("threshold config serializes to an object")
    };
    let mut sources: BTreeMap<String, Source> = merged
        .keys()
        .map(|k| (k.clone(), Source::Default))
        .collect();
    for k in ["gt_threshold", "out", "format", "workers", "overlay"] {
        sources.insert(k.to_owned(), Source::Default);
    }

    if let Some(path) = &args.config {
        for (k, v) in read_config_file(path)? {
            if !merged.contains_key(&k) {
                bail!("{}: unknown config key `{k}`", path.display());
            }
            merged.insert(k.clone(), v);
            sources.insert(k, Source::File);
        }
    }

    for item in &args.set {
        let (k, v) = parse_set(item)?;
        if !merged.contains_key(&k) {
            bail!("--set: unknown config key `{k}`");
        }
        merged.insert(k.clone(), v);
        sources.insert(k, Source::Flag);
    }

    if let Some(mode) = args.ycbcr_mode {
        merged.insert("ycbcr_mode".into(), serde_json::to_value(mode)?);
        sources.insert("ycbcr_mode".into(), Source::Flag);
    }

    let thresholds = ThresholdConfigF64::from_json_value(Value::Object(merged))
        .map_err(|e| anyhow!("invalid threshold config: {e}"))?;

    let mut flag = |key: &str, set: bool| {
        if set {
            sources.insert(key.to_owned(), Source::Flag);
        }
    };
    flag("gt_threshold", args.gt_threshold.is_some());
    flag("out", args.out.is_some());
    flag("format", args.format.is_some());
    flag("workers", args.workers.is_some());
    flag("overlay", args.overlay);

    let gt_threshold = args.gt_threshold.unwrap_or(DEFAULT_GT_THRESHOLD);
    if !(0.0..=255.0).contains(&gt_threshold) {
        bail!("--gt-threshold must lie in 0..=255, got {gt_threshold}");
    }
    let workers = args.workers.unwrap_or(1);
    if workers == 0 {
        bail!("--workers must be at least 1");
    }

    Ok(RunConfig {
        thresholds,
        gt_threshold,
        out: args.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        format: args.format.unwrap_or(Format::Csv),
        workers,
        overlay: args.overlay,
        config_file: args.config.clone(),
        sources,
    })
}
