//! Whispering-gallery-mode ladder and the angular momentum of its
//! polarization components.
//!
//! A TM mode is stored by its spin component (σ⁺ or σ⁻). Whether that
//! component is the radially inner or outer one depends on the orbit: for CCW
//! the σ⁺ part is inner, for CW it is outer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpticsError {
    #[error("invalid WGM label: {0}")]
    InvalidLabel(String),
    #[error("invalid WGM ladder: {0}")]
    InvalidLadder(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Te,
    Tm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orbit {
    Cw,
    Ccw,
}

impl Orbit {
    pub fn sign(self) -> i64 {
        match self {
            Orbit::Ccw => 1,
            Orbit::Cw => -1,
        }
    }
}

/// Spin content of a WGM field component along the symmetry axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    Pi,
    SigmaPlus,
    SigmaMinus,
}

impl Polarization {
    pub fn spin(self) -> i64 {
        match self {
            Polarization::Pi => 0,
            Polarization::SigmaPlus => 1,
            Polarization::SigmaMinus => -1,
        }
    }
}

/// Presentation name of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Pi,
    Inner,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WgmLabel {
    pub family: Family,
    pub m: u32,
    pub orbit: Orbit,
    pub polarization: Polarization,
}

impl WgmLabel {
    pub fn te(m: u32, orbit: Orbit) -> Result<Self, OpticsError> {
        Self::with_polarization(Family::Te, m, orbit, Polarization::Pi)
    }

    pub fn tm(m: u32, orbit: Orbit, polarization: Polarization) -> Result<Self, OpticsError> {
        Self::with_polarization(Family::Tm, m, orbit, polarization)
    }

    /// Build a label from the inner/outer/pi naming.
    pub fn new(
        family: Family,
        m: u32,
        orbit: Orbit,
        component: Component,
    ) -> Result<Self, OpticsError> {
        let polarization = match (family, component, orbit) {
            (Family::Te, Component::Pi, _) => Polarization::Pi,
            (Family::Tm, Component::Inner, Orbit::Ccw) | (Family::Tm, Component::Outer, Orbit::Cw) => {
                Polarization::SigmaPlus
            }
            (Family::Tm, Component::Outer, Orbit::Ccw) | (Family::Tm, Component::Inner, Orbit::Cw) => {
                Polarization::SigmaMinus
            }
            _ => {
                return Err(OpticsError::InvalidLabel(format!(
                    "{family:?} has no {component:?} component"
                )))
            }
        };
        Self::with_polarization(family, m, orbit, polarization)
    }

    fn with_polarization(
        family: Family,
        m: u32,
        orbit: Orbit,
        polarization: Polarization,
    ) -> Result<Self, OpticsError> {
        if m < 2 {
            return Err(OpticsError::InvalidLabel(format!(
                "azimuthal index must be at least 2, got {m}"
            )));
        }
        let ok = matches!(
            (family, polarization),
            (Family::Te, Polarization::Pi)
                | (Family::Tm, Polarization::SigmaPlus | Polarization::SigmaMinus)
        );
        if !ok {
            return Err(OpticsError::InvalidLabel(format!(
                "{family:?} cannot carry {polarization:?}"
            )));
        }
        Ok(Self {
            family,
            m,
            orbit,
            polarization,
        })
    }

    pub fn component(&self) -> Component {
        match (self.polarization, self.orbit) {
            (Polarization::Pi, _) => Component::Pi,
            (Polarization::SigmaPlus, Orbit::Ccw) | (Polarization::SigmaMinus, Orbit::Cw) => {
                Component::Inner
            }
            _ => Component::Outer,
        }
    }

    /// Spin plus orbital angular momentum.
    pub fn total_angular_momentum(&self) -> i64 {
        oam_of_wgm(self) + self.polarization.spin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WgmLadderConfig {
    /// THz.
    pub reference_frequency: f64,
    pub reference_index: i64,
    /// GHz.
    pub fsr: f64,
    /// TE offset from TM at equal azimuthal index, GHz.
    pub gb: f64,
    pub quality_factor: f64,
}

impl Default for WgmLadderConfig {
    fn default() -> Self {
        Self {
            reference_frequency: 193.41,
            reference_index: 4835,
            fsr: 40.0,
            gb: -32.0,
            quality_factor: 1e5,
        }
    }
}

impl WgmLadderConfig {
    pub fn validate(&self) -> Result<(), OpticsError> {
        if !(self.fsr.is_finite() && self.fsr > 0.0) {
            return Err(OpticsError::InvalidLadder(format!("fsr must be positive, got {}", self.fsr)));
        }
        if !(self.quality_factor > 0.0) {
            return Err(OpticsError::InvalidLadder(format!(
                "quality_factor must be positive, got {}",
                self.quality_factor
            )));
        }
        if !(self.reference_frequency.is_finite() && self.reference_frequency > 0.0) {
            return Err(OpticsError::InvalidLadder(format!(
                "reference_frequency must be positive, got {}",
                self.reference_frequency
            )));
        }
        if !self.gb.is_finite() {
            return Err(OpticsError::InvalidLadder("gb must be finite".into()));
        }
        let lw = linewidth(self);
        if !(lw.is_finite() && lw > 0.0) {
            return Err(OpticsError::InvalidLadder(format!("linewidth {lw} GHz is not usable")));
        }
        Ok(())
    }

    /// Resonance offset from the reference frequency, GHz.
    pub fn offset_ghz(&self, family: Family, m: i64) -> f64 {
        let birefringence = match family {
            Family::Te => self.gb,
            Family::Tm => 0.0,
        };
        (m - self.reference_index) as f64 * self.fsr + birefringence
    }
}

/// Resonance frequency in THz; independent of orbit and TM component.
pub fn wgm_frequency(label: &WgmLabel, config: &WgmLadderConfig) -> f64 {
    config.reference_frequency + config.offset_ghz(label.family, label.m as i64) * 1e-3
}

/// Orbital angular momentum ℒ_z of the labelled field component.
pub fn oam_of_wgm(label: &WgmLabel) -> i64 {
    // Every component of one mode shares the total angular momentum ±m.
    label.orbit.sign() * label.m as i64 - label.polarization.spin()
}

/// Energy decay rate κ_opt = f/Q in GHz.
pub fn linewidth(config: &WgmLadderConfig) -> f64 {
    config.reference_frequency * 1e3 / config.quality_factor
}
