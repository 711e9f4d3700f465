//! Walker-mode identification from ferromagnetic-resonance reflection spectra.
//!
//! Dips are located in |S11|, referenced to the Kittel frequency of their
//! trace, and matched against the theoretical catalog. A scalar factor on
//! 4πM_s can be fitted across several traces.

mod assign;
mod dips;
mod spectrum;

use thiserror::Error;

use crate::magnetostatics::MagnetostaticsError;

pub use assign::{
    assign_against_catalog, assign_modes, assign_modes_with_tolerance, fit_ms_eff, ms_objective,
    theory_catalog, CatalogEntry, ModeAssignment, MsFit, Trace, DEFAULT_TOLERANCE_GHZ,
    MAX_CATALOG_DEGREE, MS_SCALE_WINDOW,
};
pub use dips::find_dips;
pub use spectrum::{load_spectrum, FmrSpectrum, MIN_POINTS};

#[derive(Debug, Error)]
pub enum IdentifyError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: grid not increasing")]
    GridNotIncreasing { line: u64 },
    #[error("spectrum has {0} points, need at least {MIN_POINTS}")]
    TooFewPoints(usize),
    #[error("no Kittel frequency given for the trace")]
    MissingKittel,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no dip can be assigned anywhere in the scale window [{lo}, {hi}]")]
    FitFailed { lo: f64, hi: f64 },
    #[error(transparent)]
    Magnetostatics(#[from] MagnetostaticsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
