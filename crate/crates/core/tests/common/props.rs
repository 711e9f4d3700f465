//! Property checks shared by the property suite and the acceptance report.

use optomag_core::magnetostatics::{
    characteristic_function, solve_walker_modes, MaterialConfig, WalkerModeIndex,
    WalkerModeSolution,
};
use optomag_core::optics::{wgm_frequency, Orbit, Polarization, WgmLabel, WgmLadderConfig};
use optomag_core::scattering::{
    bls_spectrum, enumerate_channels, lorentzian_weight, nonreciprocity_ratio,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn material() -> impl Strategy<Value = MaterialConfig> {
    (2.0e-3..3.5e-3f64, 500.0..2500.0f64, 0.05..3.0f64, 0.1..2.0f64).prop_map(
        |(gamma, four_pi_ms, omega_h, sphere_radius)| {
            let omega_m = gamma * four_pi_ms;
            MaterialConfig {
                gamma,
                four_pi_ms,
                sphere_radius,
                kittel_frequency: omega_m * (omega_h + 1.0 / 3.0),
            }
        },
    )
}

pub fn orders() -> impl Strategy<Value = (u32, i32)> {
    (1u32..=5).prop_flat_map(|n| (Just(n), -(n as i32)..=(n as i32)))
}

pub fn ladder() -> impl Strategy<Value = WgmLadderConfig> {
    (150.0..250.0f64, 1000i64..10000, 5.0..100.0f64, -50.0..50.0f64, 1e3..1e7f64).prop_map(
        |(reference_frequency, reference_index, fsr, gb, quality_factor)| WgmLadderConfig {
            reference_frequency,
            reference_index,
            fsr,
            gb,
            quality_factor,
        },
    )
}

pub fn orbit() -> impl Strategy<Value = Orbit> {
    prop_oneof![Just(Orbit::Cw), Just(Orbit::Ccw)]
}

pub fn wgm_label() -> impl Strategy<Value = WgmLabel> {
    (2u32..100_000, orbit(), 0u8..3).prop_map(|(m, o, k)| match k {
        0 => WgmLabel::te(m, o).unwrap(),
        1 => WgmLabel::tm(m, o, Polarization::SigmaPlus).unwrap(),
        _ => WgmLabel::tm(m, o, Polarization::SigmaMinus).unwrap(),
    })
}

/// A magnon with arbitrary order and frequency; only these enter the channels.
pub fn magnon() -> impl Strategy<Value = WalkerModeSolution> {
    (-4i32..=4, 0.5..20.0f64).prop_map(|(m, frequency)| synthetic_magnon(m, frequency))
}

pub fn synthetic_magnon(m: i32, frequency: f64) -> WalkerModeSolution {
    WalkerModeSolution {
        index: WalkerModeIndex { n: 4, m, r: 1 },
        omega: 1.2,
        frequency,
        kappa: -1.0,
        nu: -1.0,
        xi0_sq: 0.0,
        oam: 1 - m,
    }
}

pub fn band_confinement(cfg: MaterialConfig, n: u32, m: i32) -> Result<(), TestCaseError> {
    let h = cfg.omega_h();
    let modes = solve_walker_modes(n, m, &cfg).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let r0 = if m >= 1 { 0 } else { 1 };
    for (i, s) in modes.iter().enumerate() {
        prop_assert!(s.omega > h && s.omega <= h + 0.5, "{:?} outside band above {h}", s);
        prop_assert_eq!(s.index.r, r0 + i as u32);
        let f = characteristic_function(n, m, s.omega, h).unwrap();
        prop_assert!(f.abs() < 1e-9, "residual {f}");
        if i > 0 {
            prop_assert!(s.omega > modes[i - 1].omega);
        }
    }
    Ok(())
}

pub fn kittel_anchor(cfg: MaterialConfig) -> Result<(), TestCaseError> {
    let modes = solve_walker_modes(1, 1, &cfg).unwrap();
    prop_assert_eq!(modes.len(), 1);
    prop_assert!((modes[0].frequency - cfg.kittel_frequency).abs() < 1e-9);
    Ok(())
}

pub fn ladder_linearity(ladder: WgmLadderConfig, label: WgmLabel) -> Result<(), TestCaseError> {
    let next = WgmLabel { m: label.m + 1, ..label };
    let step = wgm_frequency(&next, &ladder) - wgm_frequency(&label, &ladder);
    prop_assert!((step - ladder.fsr * 1e-3).abs() < 1e-9, "step {step}");
    let te = WgmLabel::te(label.m, label.orbit).unwrap();
    let tm = WgmLabel::tm(label.m, label.orbit, Polarization::SigmaPlus).unwrap();
    let split = wgm_frequency(&te, &ladder) - wgm_frequency(&tm, &ladder);
    prop_assert!((split - ladder.gb * 1e-3).abs() < 1e-9, "split {split}");
    Ok(())
}

/// m ↔ −m exchanges the roles of the two orbits.
pub fn mirror(
    ladder: WgmLadderConfig,
    m_tm: u32,
    magnon: WalkerModeSolution,
) -> Result<(), TestCaseError> {
    let mirrored = synthetic_magnon(-magnon.index.m, magnon.frequency);
    let a = enumerate_channels(m_tm, &magnon, Orbit::Cw, &ladder).unwrap();
    let b = enumerate_channels(m_tm, &mirrored, Orbit::Ccw, &ladder).unwrap();
    for (x, y) in a.iter().zip(&b) {
        prop_assert_eq!(x.process, y.process);
        prop_assert_eq!(x.detuning, y.detuning);
        prop_assert_eq!(x.weight, y.weight);
    }
    let r = nonreciprocity_ratio(m_tm, &magnon, &ladder).unwrap();
    let r_mirror = nonreciprocity_ratio(m_tm, &mirrored, &ladder).unwrap();
    prop_assert!((r * r_mirror - 1.0).abs() < 1e-9, "{r} * {r_mirror}");
    Ok(())
}

pub fn lorentzian_monotone(d1: f64, d2: f64, fwhm: f64) -> Result<(), TestCaseError> {
    let (w1, w2) = (lorentzian_weight(d1, fwhm), lorentzian_weight(d2, fwhm));
    prop_assert!(w1 > 0.0 && w1 <= 1.0);
    if d1.abs() < d2.abs() {
        prop_assert!(w1 > w2, "w({d1}) = {w1} vs w({d2}) = {w2}");
    }
    prop_assert_eq!(lorentzian_weight(-d1, fwhm), w1);
    prop_assert_eq!(lorentzian_weight(0.0, fwhm), 1.0);
    prop_assert!((lorentzian_weight(fwhm / 2.0, fwhm) - 0.5).abs() < 1e-15);
    Ok(())
}

/// Both BLS amplitudes peak at the magnon frequency.
pub fn argmax_at_magnon(
    ladder: WgmLadderConfig,
    m_tm: u32,
    magnon: WalkerModeSolution,
    linewidth: f64,
    half_points: usize,
    span: f64,
) -> Result<(), TestCaseError> {
    let step = span / half_points as f64;
    let grid: Vec<f64> = (0..=2 * half_points)
        .map(|i| magnon.frequency + step * (i as f64 - half_points as f64))
        .collect();
    let s = bls_spectrum(m_tm, &magnon, &ladder, &grid, linewidth).unwrap();
    for amp in [&s.amplitude_cw, &s.amplitude_ccw] {
        let arg = amp
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        prop_assert_eq!(arg, half_points);
    }
    Ok(())
}

/// Spin plus OAM is the orbit-signed index for every component, and the CW
/// components mirror the CCW ones with the spin flipped.
pub fn optics_sum_rules(m: u32) -> Result<(), TestCaseError> {
    use optomag_core::optics::oam_of_wgm;
    for orbit in [Orbit::Cw, Orbit::Ccw] {
        let plus = WgmLabel::tm(m, orbit, Polarization::SigmaPlus).unwrap();
        let minus = WgmLabel::tm(m, orbit, Polarization::SigmaMinus).unwrap();
        let te = WgmLabel::te(m, orbit).unwrap();
        prop_assert_eq!(oam_of_wgm(&plus) + 1, oam_of_wgm(&minus) - 1);
        prop_assert_eq!(oam_of_wgm(&te), orbit.sign() * m as i64);
        prop_assert_eq!(plus.total_angular_momentum(), te.total_angular_momentum());
    }
    for (p, q) in [
        (Polarization::SigmaPlus, Polarization::SigmaMinus),
        (Polarization::SigmaMinus, Polarization::SigmaPlus),
    ] {
        let cw = WgmLabel::tm(m, Orbit::Cw, p).unwrap();
        let ccw = WgmLabel::tm(m, Orbit::Ccw, q).unwrap();
        prop_assert_eq!(oam_of_wgm(&cw), -oam_of_wgm(&ccw));
        prop_assert_eq!(cw.component(), ccw.component());
    }
    Ok(())
}
