//! reflab: build finite-depth slices of Coxeter root systems, construct
//! and verify reflection orders on them, and certify the structural
//! properties of those orders at desk scale.
//!
//! Exit codes: 0 success, 1 certifier violation, 2 configuration or
//! parse error, 3 slice cap exceeded.

mod certify;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use reflab_core::error::Error;
use reflab_core::io;
use reflab_core::matrix::CoxeterMatrix;
use reflab_core::roots::DEFAULT_ROOT_CAP;
use reflab_core::scalar::ScalarMode;

#[derive(Parser)]
#[command(
    name = "reflab",
    about = "Coxeter root slices, reflection orders, and order-type certifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Root-count cap; the REFLAB_CAP environment variable overrides.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Scalar mode override: exact | approx.
    #[arg(long, global = true)]
    mode: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the positive-root slice and write it as CSV.
    Roots {
        /// Matrix file (JSON/TOML) or a preset name (universal3, a2, a1~, a2~).
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        depth: u32,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical pair, form value and classification of the dihedral
    /// subgroup generated by two roots, as JSON.
    Dihedral {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        depth: u32,
        /// Two root ids, comma separated.
        #[arg(long)]
        pair: String,
    },
    /// Sort a slice by a reflection-order spec; optionally verify the
    /// axioms and emit violations as a JSON list.
    Order {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        depth: u32,
        /// lex:1,2,3 | ainf:6 | two-sided | two-sided-swapped
        #[arg(long)]
        spec: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two-sided order of an affine slice from the standard pair of
    /// infinite reduced words, with the loop-extension CSV.
    AffineOrder {
        /// a1~ | a2~
        #[arg(long = "type")]
        affine_type: String,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        verify: bool,
        /// Loop-extension CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one certifier and write its JSON report.
    Certify {
        #[arg(long)]
        matrix: String,
        /// c-range | density | blocks | stability | char3
        #[arg(long)]
        lemma: String,
        /// Depth ladder "d,D" (single "d" where one depth suffices).
        #[arg(long)]
        depths: String,
        /// JSON output path (stdout when omitted).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run every certifier on the default configuration and aggregate.
    CertifyAll {
        #[arg(long, default_value_t = 8)]
        universal_depth: u32,
        #[arg(long, default_value_t = 6)]
        affine_depth: u32,
        /// JSON summary path (stdout when omitted).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Barycentric SVG plot of a rank-3 slice.
    Svg {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        depth: u32,
        /// Fiber chord, e.g. "axis=1,c=2/3"; repeatable.
        #[arg(long = "highlight-fiber")]
        highlight_fiber: Vec<String>,
        /// Root-id pair "a,b" joined by a segment; repeatable.
        #[arg(long = "highlight-segment")]
        highlight_segment: Vec<String>,
        /// Auto-select two near-cone roots at this closeness and draw
        /// their chord.
        #[arg(long = "highlight-near-pair")]
        near_pair: Option<String>,
        #[arg(long)]
        out: PathBuf,
        /// Also export normalized coordinates as CSV.
        #[arg(long)]
        normroots: Option<PathBuf>,
    },
}

pub struct Config {
    pub cap: usize,
    pub mode_override: Option<ScalarMode>,
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, Error> {
    if let Ok(text) = std::env::var("REFLAB_CAP") {
        return text
            .parse()
            .map_err(|_| Error::Parse { detail: format!("bad REFLAB_CAP value {text:?}") });
    }
    Ok(flag.unwrap_or(DEFAULT_ROOT_CAP))
}

fn resolve_mode(flag: &Option<String>) -> Result<Option<ScalarMode>, Error> {
    match flag.as_deref() {
        None => Ok(None),
        Some("exact") => Ok(Some(ScalarMode::Exact)),
        Some("approx") => Ok(Some(ScalarMode::Approx)),
        Some(other) => Err(Error::Parse { detail: format!("bad mode {other:?}") }),
    }
}

/// Presets resolve by name; anything else is read as a file.
pub fn resolve_matrix(spec: &str) -> Result<(CoxeterMatrix, ScalarMode), Error> {
    if let Some(matrix) = io::preset(spec) {
        return Ok((matrix, ScalarMode::Exact));
    }
    io::load_matrix_file(std::path::Path::new(spec))
}

fn run(cli: Cli) -> Result<i32, Error> {
    let config = Config {
        cap: resolve_cap(cli.cap)?,
        mode_override: resolve_mode(&cli.mode)?,
    };
    match cli.command {
        Command::Roots { matrix, depth, out } => {
            commands::roots(&config, &matrix, depth, out.as_deref())
        }
        Command::Dihedral { matrix, depth, pair } => {
            commands::dihedral(&config, &matrix, depth, &pair)
        }
        Command::Order { matrix, depth, spec, verify, out } => {
            commands::order(&config, &matrix, depth, &spec, verify, out.as_deref())
        }
        Command::AffineOrder { affine_type, depth, verify, out } => {
            commands::affine_order(&config, &affine_type, depth, verify, out.as_deref())
        }
        Command::Certify { matrix, lemma, depths, json } => {
            certify::certify(&config, &matrix, &lemma, &depths, json.as_deref())
        }
        Command::CertifyAll { universal_depth, affine_depth, json } => {
            certify::certify_all(&config, universal_depth, affine_depth, json.as_deref())
        }
        Command::Svg { matrix, depth, highlight_fiber, highlight_segment, near_pair, out, normroots } => {
            commands::svg(
                &config,
                &matrix,
                depth,
                &highlight_fiber,
                &highlight_segment,
                near_pair.as_deref(),
                &out,
                normroots.as_deref(),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::SliceTooLarge { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
