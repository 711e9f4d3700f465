//! Run configuration assembly: defaults, then `--config`, then environment,
//! then command-line flags.

use std::path::PathBuf;

use clap::Args;
use optomag_core::RunConfig;

use crate::error::CliError;

pub const ENV_PREFIX: &str = "OPTOMAG_";

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Gyromagnetic ratio, GHz per gauss.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Saturation magnetization 4πM_s, gauss.
    #[arg(long, global = true)]
    pub four_pi_ms: Option<f64>,
    /// Sphere radius, mm.
    #[arg(long, global = true)]
    pub sphere_radius: Option<f64>,
    /// Kittel-mode frequency, GHz.
    #[arg(long, global = true)]
    pub kittel_frequency: Option<f64>,
    /// WGM reference frequency, THz.
    #[arg(long, global = true)]
    pub reference_frequency: Option<f64>,
    /// Azimuthal index of the reference TM mode.
    #[arg(long, global = true)]
    pub reference_index: Option<i64>,
    /// Free spectral range, GHz.
    #[arg(long, global = true)]
    pub fsr: Option<f64>,
    /// TE minus TM offset at equal index, GHz.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gb: Option<f64>,
    /// Optical quality factor.
    #[arg(long, global = true)]
    pub quality_factor: Option<f64>,
    /// Magnon FWHM, GHz.
    #[arg(long, global = true)]
    pub magnon_linewidth: Option<f64>,
}

fn env_value<T: std::str::FromStr>(key: &str) -> Result<Option<T>, CliError> {
    let name = format!("{ENV_PREFIX}{key}");
    match std::env::var(&name) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{name}: cannot parse `{raw}`"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{name}: {e}"))),
    }
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };

        macro_rules! layer {
            ($field:expr, $key:literal, $flag:expr) => {
                if let Some(v) = env_value($key)? {
                    $field = v;
                }
                if let Some(v) = $flag {
                    $field = v;
                }
            };
        }
        layer!(cfg.material.gamma, "GAMMA", self.gamma);
        layer!(cfg.material.four_pi_ms, "FOUR_PI_MS", self.four_pi_ms);
        layer!(cfg.material.sphere_radius, "SPHERE_RADIUS", self.sphere_radius);
        layer!(cfg.material.kittel_frequency, "KITTEL_FREQUENCY", self.kittel_frequency);
        layer!(cfg.ladder.reference_frequency, "REFERENCE_FREQUENCY", self.reference_frequency);
        layer!(cfg.ladder.reference_index, "REFERENCE_INDEX", self.reference_index);
        layer!(cfg.ladder.fsr, "FSR", self.fsr);
        layer!(cfg.ladder.gb, "GB", self.gb);
        layer!(cfg.ladder.quality_factor, "QUALITY_FACTOR", self.quality_factor);
        layer!(cfg.magnon_linewidth, "MAGNON_LINEWIDTH", self.magnon_linewidth);

        cfg.validate()?;
        Ok(cfg)
    }
}
