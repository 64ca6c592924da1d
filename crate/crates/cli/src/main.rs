//! `skinmask` command-line tool.
//!
//! Exit codes: 0 on success, 1 when an operation fails (I/O, decoding,
//! mismatched inputs), 2 on usage errors (bad flags or config).

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skinmask::YCbCrMode;

#[derive(Debug, Parser)]
#[command(
    name = "skinmask",
    version,
    about = "Pixel-level skin detection and evaluation"
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Threshold config (flat JSON); missing keys keep their defaults
    #[arg(long, global = true, env = "SKINMASK_CONFIG", value_name = "JSON")]
    pub config: Option<PathBuf>,

    /// Override one threshold key, e.g. `--set h_max=45` (repeatable)
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// YCbCr definition used by the classifier [digital | paper-literal]
    #[arg(long, global = true, value_name = "MODE")]
    pub ycbcr_mode: Option<YCbCrMode>,

    /// Ground-truth luma at or above which a pixel counts as skin [default: 128]
    #[arg(long, global = true, value_name = "0-255")]
    pub gt_threshold: Option<f64>,

    /// Output directory [default: .]
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Report format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads [default: 1]
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    /// Also write an overlay PNG highlighting detected skin
    #[arg(long, global = true)]
    pub overlay: bool,

    /// Print the resolved configuration with the source of every setting
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one image and write its skin mask
    Detect { input: PathBuf },
    /// Compare one image's detection with a ground-truth mask
    Eval { input: PathBuf, gt: PathBuf },
    /// Evaluate every image/ground-truth pair of a dataset
    Batch {
        /// Directory of source images
        image_dir: Option<PathBuf>,
        /// Directory of ground-truth masks, paired by filename stem
        gt_dir: Option<PathBuf>,
        /// CSV file of `image,gt` pairs, used instead of directory pairing
        #[arg(long, conflicts_with_all = ["image_dir", "gt_dir"])]
        manifest: Option<PathBuf>,
    },
    /// Per-color-space pass counts for one image
    Stats { input: PathBuf },
}

pub enum Failure {
    Usage(anyhow::Error),
    Operation(anyhow::Error),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Usage(e) => {
                eprintln!("skinmask: {e:#}");
                ExitCode::from(2)
            }
            Failure::Operation(e) => {
                eprintln!("skinmask: {e:#}");
                ExitCode::from(1)
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    let rc = match config::resolve(&cli.common) {
        Ok(rc) => rc,
        Err(e) => return Failure::Usage(e).report(),
    };

    if cli.common.print_config {
        match serde_json::to_string_pretty(&rc) {
            Ok(text) => println!("{text}"),
            Err(e) => return Failure::Operation(e.into()).report(),
        }
        if cli.command.is_none() {
            return ExitCode::SUCCESS;
        }
    }

    let result = match cli.command {
        Some(Command::Detect { input }) => commands::detect(&input, &rc),
        Some(Command::Eval { input, gt }) => commands::eval(&input, &gt, &rc),
        Some(Command::Batch {
            image_dir,
            gt_dir,
            manifest,
        }) => commands::batch(
            image_dir.as_deref(),
            gt_dir.as_deref(),
            manifest.as_deref(),
            &rc,
        ),
        Some(Command::Stats { input }) => commands::stats(&input, &rc),
        None => Err(Failure::Usage(anyhow::anyhow!(
            "a subcommand is required (detect, eval, batch, stats); see --help"
        ))),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
