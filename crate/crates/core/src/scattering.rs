//! Brillouin scattering channels between a TM input and the TE ladder.
//!
//! Selection rules for a magnon of azimuthal order m (input on TM resonance at
//! m_TM):
//!
//! | orbit | process     | input component | m_TE          |
//! |-------|-------------|-----------------|---------------|
//! | CCW   | anti-Stokes | inner (σ⁺)      | m_TM − m      |
//! | CCW   | Stokes      | outer (σ⁻)      | m_TM + m      |
//! | CW    | anti-Stokes | outer (σ⁺)      | m_TM + m      |
//! | CW    | Stokes      | inner (σ⁻)      | m_TM − m      |
//!
//! Each channel is weighted by the Lorentzian density of states of its target
//! TE resonance; inner and outer inputs carry equal base weight.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::magnetostatics::{oam_of_walker, WalkerModeIndex, WalkerModeSolution};
use crate::optics::{
    linewidth, oam_of_wgm, wgm_frequency, Family, OpticsError, Orbit, Polarization, WgmLabel,
    WgmLadderConfig,
};

pub const DEFAULT_RECIPROCITY_THRESHOLD: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatteringError {
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error("TE index {0} produced by the selection rule is not a valid WGM")]
    OutputIndex(i64),
    #[error("drive grid is empty")]
    EmptyGrid,
    #[error("drive grid must be finite and strictly increasing")]
    GridNotIncreasing,
    #[error("magnon linewidth must be positive, got {0}")]
    MagnonLinewidth(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Process {
    Stokes,
    AntiStokes,
}

impl Process {
    /// +1 for anti-Stokes (magnon annihilated), −1 for Stokes.
    pub fn sign(self) -> i64 {
        match self {
            Process::AntiStokes => 1,
            Process::Stokes => -1,
        }
    }

    /// Spin of the TM component that feeds this process.
    pub fn input_polarization(self) -> Polarization {
        match self {
            Process::AntiStokes => Polarization::SigmaPlus,
            Process::Stokes => Polarization::SigmaMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringChannel {
    pub orbit: Orbit,
    pub process: Process,
    pub input: WgmLabel,
    pub walker: WalkerModeSolution,
    pub output_m_te: i64,
    pub output_oam: i64,
    /// THz.
    pub photon_frequency: f64,
    /// THz.
    pub target_resonance: f64,
    /// Photon minus target resonance, GHz.
    pub detuning: f64,
    pub weight: f64,
}

/// TE index selected by angular-momentum conservation.
pub fn selected_te_index(m_tm: i64, m_mag: i32, orbit: Orbit, process: Process) -> i64 {
    let m = m_mag as i64;
    match (orbit, process) {
        (Orbit::Ccw, Process::AntiStokes) | (Orbit::Cw, Process::Stokes) => m_tm - m,
        (Orbit::Ccw, Process::Stokes) | (Orbit::Cw, Process::AntiStokes) => m_tm + m,
    }
}

/// Normalized Lorentzian (κ/2)² / (Δ² + (κ/2)²).
pub fn lorentzian_weight(detuning: f64, fwhm: f64) -> f64 {
    let half = 0.5 * fwhm;
    half * half / (detuning * detuning + half * half)
}

/// The Stokes and anti-Stokes channels for an input on TM resonance at `m_tm`.
pub fn enumerate_channels(
    m_tm: u32,
    walker: &WalkerModeSolution,
    orbit: Orbit,
    ladder: &WgmLadderConfig,
) -> Result<[ScatteringChannel; 2], ScatteringError> {
    ladder.validate()?;
    let kappa_opt = linewidth(ladder);
    let build = |process: Process| -> Result<ScatteringChannel, ScatteringError> {
        let input = WgmLabel::tm(m_tm, orbit, process.input_polarization())?;
        let output_m_te = selected_te_index(m_tm as i64, walker.index.m, orbit, process);
        let te = u32::try_from(output_m_te)
            .ok()
            .and_then(|m| WgmLabel::te(m, orbit).ok())
            .ok_or(ScatteringError::OutputIndex(output_m_te))?;
        let shift = process.sign() as f64 * walker.frequency;
        // Relative offsets keep the GHz-scale detuning free of THz round-off.
        let detuning = ladder.offset_ghz(Family::Tm, m_tm as i64) + shift
            - ladder.offset_ghz(Family::Te, output_m_te);
        Ok(ScatteringChannel {
            orbit,
            process,
            input,
            walker: *walker,
            output_m_te,
            output_oam: oam_of_wgm(&te),
            photon_frequency: wgm_frequency(&input, ladder) + shift * 1e-3,
            target_resonance: wgm_frequency(&te, ladder),
            detuning,
            weight: lorentzian_weight(detuning, kappa_opt),
        })
    };
    Ok([build(Process::Stokes)?, build(Process::AntiStokes)?])
}

/// Orbital and spin angular-momentum bookkeeping for one channel.
///
/// The magnon carries ℒ_z = −(m − 1) and spin −1: annihilating it (anti-Stokes)
/// adds both to the photon, creating it (Stokes) removes both.
pub fn check_conservation(channel: &ScatteringChannel) -> bool {
    let input = &channel.input;
    if input.family != Family::Tm || input.orbit != channel.orbit {
        return false;
    }
    let Some(te) = u32::try_from(channel.output_m_te)
        .ok()
        .and_then(|m| WgmLabel::te(m, channel.orbit).ok())
    else {
        return false;
    };
    let sign = channel.process.sign();
    let magnon_oam = oam_of_walker(channel.walker.index.m) as i64;
    let magnon_spin = -1;
    let oam_ok = channel.output_oam == oam_of_wgm(&te)
        && channel.output_oam == oam_of_wgm(input) + sign * magnon_oam;
    let spin_ok = te.polarization.spin() - input.polarization.spin() == sign * magnon_spin;
    oam_ok && spin_ok
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlsSpectrum {
    /// GHz.
    pub drive_frequencies: Vec<f64>,
    pub amplitude_cw: Vec<f64>,
    pub amplitude_ccw: Vec<f64>,
    pub walker: WalkerModeIndex,
}

/// Summed channel weights for one orbit.
pub fn orbit_weight(
    m_tm: u32,
    walker: &WalkerModeSolution,
    orbit: Orbit,
    ladder: &WgmLadderConfig,
) -> Result<f64, ScatteringError> {
    Ok(enumerate_channels(m_tm, walker, orbit, ladder)?
        .iter()
        .map(|c| c.weight)
        .sum())
}

/// Scattered-light amplitude against microwave drive frequency for both orbits.
///
/// Each orbit's amplitude is the magnon Lorentzian (unit peak, FWHM
/// `magnon_linewidth`) times that orbit's summed channel weight.
pub fn bls_spectrum(
    m_tm: u32,
    walker: &WalkerModeSolution,
    ladder: &WgmLadderConfig,
    drive_grid: &[f64],
    magnon_linewidth: f64,
) -> Result<BlsSpectrum, ScatteringError> {
    if drive_grid.is_empty() {
        return Err(ScatteringError::EmptyGrid);
    }
    if drive_grid.iter().any(|f| !f.is_finite()) || drive_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ScatteringError::GridNotIncreasing);
    }
    if !(magnon_linewidth > 0.0 && magnon_linewidth.is_finite()) {
        return Err(ScatteringError::MagnonLinewidth(magnon_linewidth));
    }
    let cw = orbit_weight(m_tm, walker, Orbit::Cw, ladder)?;
    let ccw = orbit_weight(m_tm, walker, Orbit::Ccw, ladder)?;
    let profile: Vec<f64> = drive_grid
        .iter()
        .map(|f| lorentzian_weight(f - walker.frequency, magnon_linewidth))
        .collect();
    Ok(BlsSpectrum {
        drive_frequencies: drive_grid.to_vec(),
        amplitude_cw: profile.iter().map(|p| p * cw).collect(),
        amplitude_ccw: profile.iter().map(|p| p * ccw).collect(),
        walker: walker.index,
    })
}

/// R = Σ CW weights / Σ CCW weights.
pub fn nonreciprocity_ratio(
    m_tm: u32,
    walker: &WalkerModeSolution,
    ladder: &WgmLadderConfig,
) -> Result<f64, ScatteringError> {
    let cw = orbit_weight(m_tm, walker, Orbit::Cw, ladder)?;
    let ccw = orbit_weight(m_tm, walker, Orbit::Ccw, ladder)?;
    Ok(cw / ccw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Reciprocity {
    CwFavored,
    Reciprocal,
    CcwFavored,
}

pub fn classify_reciprocity(ratio: f64, threshold: f64) -> Reciprocity {
    if ratio > threshold {
        Reciprocity::CwFavored
    } else if ratio < 1.0 / threshold {
        Reciprocity::CcwFavored
    } else {
        Reciprocity::Reciprocal
    }
}
