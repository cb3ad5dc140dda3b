//! Data generation behind the `dpo` binary: figure curves, sweeps over
//! ε/κ and the oracle verification report.

pub mod figure;
pub mod output;
pub mod sweep;
pub mod verify;

use std::path::PathBuf;

pub use output::{OutputFormat, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "DPO_OUT_DIR";

/// Smallest number of grid points accepted for a curve.
pub const MIN_POINTS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] dpo_core::Error),
    #[error("unknown figure {0:?}; expected fig2..fig9")]
    UnknownFigure(String),
    #[error("unknown quantity {0:?}")]
    UnknownQuantity(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Optional overrides of a curve's x-axis grid.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridOverride {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<usize>,
}

impl GridOverride {
    pub fn apply(&self, default: dpo_core::UniformGrid) -> Result<dpo_core::UniformGrid> {
        let grid = dpo_core::UniformGrid::new(
            self.min.unwrap_or(default.min),
            self.max.unwrap_or(default.max),
            self.points.unwrap_or(default.points),
        )?;
        if grid.points < MIN_POINTS {
            return Err(CliError::Usage(format!(
                "need at least {MIN_POINTS} points, got {}",
                grid.points
            )));
        }
        Ok(grid)
    }
}
