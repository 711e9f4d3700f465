use serde::{Deserialize, Serialize};

use super::MagnetostaticsError;

/// Sphere and bias parameters driving every magnon computation.
///
/// Frequencies are in GHz, `gamma` in GHz per gauss and the magnetization is
/// given as 4πM_s in gauss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialConfig {
    pub gamma: f64,
    pub four_pi_ms: f64,
    /// Sphere radius in mm. Magnetostatic frequencies do not depend on it.
    pub sphere_radius: f64,
    pub kittel_frequency: f64,
}

impl Default for MaterialConfig {
    fn default() -> Self {
        Self {
            gamma: 2.8e-3,
            four_pi_ms: 1940.0,
            sphere_radius: 0.5,
            kittel_frequency: 7.1,
        }
    }
}

impl MaterialConfig {
    pub fn validate(&self) -> Result<(), MagnetostaticsError> {
        let positive = [
            ("gamma", self.gamma),
            ("four_pi_ms", self.four_pi_ms),
            ("sphere_radius", self.sphere_radius),
            ("kittel_frequency", self.kittel_frequency),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(MagnetostaticsError::InvalidMaterial(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        let omega_h = self.omega_h();
        if !(omega_h > 0.0) {
            return Err(MagnetostaticsError::InvalidMaterial(format!(
                "internal field is not positive (Omega_H = {omega_h}); the Kittel frequency \
                 must exceed gamma*4piMs/3 = {} GHz",
                self.omega_m() / 3.0
            )));
        }
        Ok(())
    }

    /// ω_M = γ·4πM_s in GHz.
    pub fn omega_m(&self) -> f64 {
        self.gamma * self.four_pi_ms
    }

    /// Dimensionless internal field Ω_H = ω_H/ω_M, with ω_H = ω_Kittel − ω_M/3.
    pub fn omega_h(&self) -> f64 {
        let omega_m = self.omega_m();
        (self.kittel_frequency - omega_m / 3.0) / omega_m
    }

    pub fn with_kittel_frequency(self, kittel_frequency: f64) -> Self {
        Self {
            kittel_frequency,
            ..self
        }
    }

    /// Same sphere with 4πM_s multiplied by `scale`.
    pub fn with_scaled_magnetization(self, scale: f64) -> Self {
        Self {
            four_pi_ms: self.four_pi_ms * scale,
            ..self
        }
    }
}
