//! Pole-aware scan and bisection for the Walker characteristic equation
//!
//! ```text
//! g(ξ₀²) + (n + 1) + m·ν = 0,    ξ₀² = 1 + 1/κ
//! ```
//!
//! where g is the Legendre log-derivative for |m| and m enters signed.

use super::{
    oam_of_walker, polder_parameters, validate_orders, LegendreKernel, MagnetostaticsError,
    MaterialConfig, WalkerModeIndex, WalkerModeSolution,
};

/// Uniform samples across the band (Ω_H, Ω_H + 1/2].
pub const BAND_SAMPLES: usize = 4096;
/// Largest |F(Ω)| accepted for a reported root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;

const BRACKET_REL_WIDTH: f64 = 1e-12;
const MIDPOINT_POLE_FACTOR: f64 = 10.0;
const MAX_BISECTIONS: usize = 400;

struct Characteristic {
    kernel: LegendreKernel,
    n: u32,
    m: i32,
    omega_h: f64,
}

impl Characteristic {
    fn new(n: u32, m: i32, omega_h: f64) -> Result<Self, MagnetostaticsError> {
        validate_orders(n, m)?;
        Ok(Self {
            kernel: LegendreKernel::new(n, m.unsigned_abs())?,
            n,
            m,
            omega_h,
        })
    }

    fn eval(&self, omega: f64) -> Result<f64, MagnetostaticsError> {
        let h = self.omega_h;
        let (kappa, _) = polder_parameters(omega, h)?;
        // |m|·t/(t − 1) + m·ν = |m| + |m|κ + mν collapses to
        // |m| + |m|/(Ω_H − sgn(m)·Ω); both terms diverge separately near Ω_H.
        let azimuthal = match self.m.signum() {
            0 => 0.0,
            s => {
                let ma = self.m.unsigned_abs() as f64;
                ma + ma / (h - s as f64 * omega)
            }
        };
        let reduced = self.kernel.eval_reduced(1.0 + 1.0 / kappa)?;
        Ok(azimuthal + reduced + (self.n + 1) as f64)
    }
}

/// F(Ω) for mode orders (n, m) at internal field Ω_H.
pub fn characteristic_function(
    n: u32,
    m_mag: i32,
    omega: f64,
    omega_h: f64,
) -> Result<f64, MagnetostaticsError> {
    Characteristic::new(n, m_mag, omega_h)?.eval(omega)
}

/// All Walker modes with orders (n, m_mag), sorted by ascending frequency.
///
/// The radial index r counts from 0 for m_mag ≥ 1 and from 1 for m_mag ≤ 0.
pub fn solve_walker_modes(
    n: u32,
    m_mag: i32,
    config: &MaterialConfig,
) -> Result<Vec<WalkerModeSolution>, MagnetostaticsError> {
    config.validate()?;
    if n == 0 && m_mag == 0 {
        return Err(MagnetostaticsError::InvalidIndex {
            n,
            m: m_mag,
            reason: "no Walker mode with n = m = 0".into(),
        });
    }
    let omega_h = config.omega_h();
    let f = Characteristic::new(n, m_mag, omega_h)?;

    let roots = scan_band(&f, omega_h)?;
    let r0 = if m_mag >= 1 { 0 } else { 1 };
    let omega_m = config.omega_m();
    roots
        .into_iter()
        .enumerate()
        .map(|(i, omega)| {
            let (kappa, nu) = polder_parameters(omega, omega_h)?;
            Ok(WalkerModeSolution {
                index: WalkerModeIndex { n, m: m_mag, r: r0 + i as u32 },
                omega,
                frequency: omega * omega_m,
                kappa,
                nu,
                xi0_sq: 1.0 + 1.0 / kappa,
                oam: oam_of_walker(m_mag),
            })
        })
        .collect()
}

/// Solve for one labelled mode.
pub fn find_walker_mode(
    index: WalkerModeIndex,
    config: &MaterialConfig,
) -> Result<WalkerModeSolution, MagnetostaticsError> {
    solve_walker_modes(index.n, index.m, config)?
        .into_iter()
        .find(|s| s.index == index)
        .ok_or(MagnetostaticsError::ModeNotFound(index))
}

/// Every mode with n ≤ n_max, ordered by frequency.
pub fn walker_catalog(
    config: &MaterialConfig,
    n_max: u32,
) -> Result<Vec<WalkerModeSolution>, MagnetostaticsError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in -(n as i32)..=(n as i32) {
            out.extend(solve_walker_modes(n, m, config)?);
        }
    }
    out.sort_by(|a, b| a.omega.total_cmp(&b.omega).then(a.index.cmp(&b.index)));
    Ok(out)
}

fn scan_band(f: &Characteristic, omega_h: f64) -> Result<Vec<f64>, MagnetostaticsError> {
    let width = 0.5;
    // An extra sample just above the Polder pole catches roots in the first cell.
    let mut grid = Vec::with_capacity(BAND_SAMPLES + 1);
    grid.push(omega_h + width * 1e-9);
    grid.extend((1..=BAND_SAMPLES).map(|i| omega_h + width * i as f64 / BAND_SAMPLES as f64));
    let values: Vec<Option<f64>> = grid.iter().map(|&x| f.eval(x).ok()).collect();

    let mut roots: Vec<f64> = Vec::new();
    let push_root = |x: f64, roots: &mut Vec<f64>| {
        if roots.last().is_none_or(|&last| (x - last).abs() > 1e-10 * x.abs()) {
            roots.push(x);
        }
    };

    for i in 0..grid.len() - 1 {
        let (a, b) = (grid[i], grid[i + 1]);
        let (Some(fa), Some(fb)) = (values[i], values[i + 1]) else {
            continue;
        };
        if fa == 0.0 {
            push_root(a, &mut roots);
            continue;
        }
        if fb == 0.0 {
            // Picked up as the left endpoint of the next cell.
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        let Ok(fmid) = f.eval(0.5 * (a + b)) else {
            continue;
        };
        if fmid.abs() >= MIDPOINT_POLE_FACTOR * 0.5 * (fa.abs() + fb.abs()) {
            continue;
        }
        if let Some(root) = bisect(f, a, b, fa, fb)? {
            push_root(root, &mut roots);
        }
    }
    Ok(roots)
}

/// Returns `Ok(None)` when the bracket collapses onto a pole.
fn bisect(
    f: &Characteristic,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
) -> Result<Option<f64>, MagnetostaticsError> {
    let (a0, b0, fa0, fb0) = (lo, hi, f_lo, f_hi);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let narrow = hi - lo <= BRACKET_REL_WIDTH * mid.abs();
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = match f.eval(mid) {
            Ok(v) => v,
            // Landing exactly on a Legendre zero means the bracket holds a pole.
            Err(MagnetostaticsError::Pole { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if f_mid == 0.0 {
            return Ok(Some(mid));
        }
        if narrow && f_lo.abs().min(f_hi.abs()) < ROOT_RESIDUAL_TOL {
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let (root, residual) = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    if residual.abs() < ROOT_RESIDUAL_TOL {
        return Ok(Some(root));
    }
    if residual.abs() > fa0.abs().max(fb0.abs()) {
        return Ok(None);
    }
    Err(MagnetostaticsError::NonConvergent {
        lo: a0,
        hi: b0,
        f_lo: fa0,
        f_hi: fb0,
        residual,
    })
}
