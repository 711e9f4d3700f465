//! Magnetostatic (Walker) modes of a uniformly magnetized sphere.
//!
//! Frequencies are handled in the dimensionless form Ω = ω/ω_M with the
//! internal field Ω_H = ω_H/ω_M. Modes live in the band Ω_H < Ω ≤ Ω_H + 1/2.

mod legendre;
mod material;
mod solver;
mod texture;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use legendre::{legendre_logderiv, LegendreKernel, MAX_DEGREE};
pub use material::MaterialConfig;
pub use solver::{
    characteristic_function, find_walker_mode, solve_walker_modes, walker_catalog,
    BAND_SAMPLES, ROOT_RESIDUAL_TOL,
};
pub use texture::{
    compute_texture, winding_number, TextureField, WalkerPotential, BOUNDARY_RESIDUAL_TOL,
    PDE_RESIDUAL_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MagnetostaticsError {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),
    #[error("invalid Walker index (n={n}, m={m}): {reason}")]
    InvalidIndex { n: u32, m: i32, reason: String },
    #[error("pole ({what}) at {at}")]
    Pole { what: &'static str, at: f64 },
    #[error(
        "bisection did not converge in [{lo}, {hi}]: f(lo)={f_lo:e}, f(hi)={f_hi:e}, residual={residual:e}"
    )]
    NonConvergent {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        residual: f64,
    },
    #[error("mode {0} not found among the roots")]
    ModeNotFound(WalkerModeIndex),
    #[error("texture construction failed: {0}")]
    Texture(String),
    #[error("winding number ill-defined at loop radius {radius}: min |m+| / max |m+| = {ratio:e}")]
    IllDefinedWinding { radius: f64, ratio: f64 },
}

/// Walker mode label (n, m_mag, r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WalkerModeIndex {
    pub n: u32,
    pub m: i32,
    pub r: u32,
}

impl WalkerModeIndex {
    pub fn new(n: u32, m: i32, r: u32) -> Result<Self, MagnetostaticsError> {
        validate_orders(n, m)?;
        Ok(Self { n, m, r })
    }
}

impl fmt::Display for WalkerModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.m, self.r)
    }
}

pub(crate) fn validate_orders(n: u32, m: i32) -> Result<(), MagnetostaticsError> {
    let reason = if n == 0 {
        Some("n must be at least 1".to_string())
    } else if m.unsigned_abs() > n {
        Some("|m| must not exceed n".to_string())
    } else if n > MAX_DEGREE {
        Some(format!("n above supported maximum {MAX_DEGREE}"))
    } else {
        None
    };
    match reason {
        Some(reason) => Err(MagnetostaticsError::InvalidIndex { n, m, reason }),
        None => Ok(()),
    }
}

/// A solved Walker mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkerModeSolution {
    pub index: WalkerModeIndex,
    /// Ω = ω/ω_M.
    pub omega: f64,
    /// GHz.
    pub frequency: f64,
    pub kappa: f64,
    pub nu: f64,
    pub xi0_sq: f64,
    pub oam: i32,
}

impl WalkerModeSolution {
    /// Frequency relative to the Kittel mode, in GHz.
    pub fn relative_frequency(&self, config: &MaterialConfig) -> f64 {
        self.frequency - config.kittel_frequency
    }
}

/// Diagonal (κ) and off-diagonal (ν) Polder susceptibility elements.
pub fn polder_parameters(omega: f64, omega_h: f64) -> Result<(f64, f64), MagnetostaticsError> {
    let denom = (omega_h - omega) * (omega_h + omega);
    if denom == 0.0 || omega == omega_h {
        return Err(MagnetostaticsError::Pole {
            what: "Polder resonance omega = omega_h",
            at: omega,
        });
    }
    Ok((omega_h / denom, omega / denom))
}

/// ℒ_z = −(m_mag − 1).
pub fn oam_of_walker(m_mag: i32) -> i32 {
    1 - m_mag
}
