//! Magnetostatic Walker modes, whispering-gallery-mode ladders and
//! orbital-angular-momentum resolved Brillouin light scattering in a
//! ferromagnetic sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`magnetostatics`] solves the Walker characteristic equation, renders
//!   equatorial spin textures and counts their phase winding.
//! * [`optics`] models the TE/TM resonance ladder and the OAM carried by each
//!   polarization component of a WGM.
//! * [`scattering`] enumerates the channels allowed by angular-momentum
//!   conservation and weighs them by the TE density of states.
//! * [`identify`] turns measured |S11| traces into Walker-mode labels and fits
//!   an effective saturation magnetization.
//! * [`config`] bundles everything a reproducible run needs.

pub mod config;
pub mod identify;
pub mod magnetostatics;
pub mod optics;
pub mod scattering;

pub use config::RunConfig;
pub use magnetostatics::{MaterialConfig, WalkerModeIndex, WalkerModeSolution};
pub use optics::{WgmLabel, WgmLadderConfig};
pub use scattering::ScatteringChannel;
