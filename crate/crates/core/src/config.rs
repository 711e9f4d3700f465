//! Run configuration shared by every command.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::magnetostatics::{MagnetostaticsError, MaterialConfig};
use crate::optics::{OpticsError, WgmLadderConfig};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse configuration: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("magnon_linewidth must be finite and positive, got {0}")]
    MagnonLinewidth(f64),
    #[error(transparent)]
    Material(#[from] MagnetostaticsError),
    #[error(transparent)]
    Ladder(#[from] OpticsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub material: MaterialConfig,
    pub ladder: WgmLadderConfig,
    /// FWHM of the magnon resonance, GHz.
    pub magnon_linewidth: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            material: MaterialConfig::default(),
            ladder: WgmLadderConfig::default(),
            magnon_linewidth: 0.002,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.material.validate()?;
        self.ladder.validate()?;
        if !(self.magnon_linewidth.is_finite() && self.magnon_linewidth > 0.0) {
            return Err(ConfigError::MagnonLinewidth(self.magnon_linewidth));
        }
        Ok(())
    }
}
