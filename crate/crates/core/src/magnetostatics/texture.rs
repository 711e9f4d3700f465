//! Equatorial-plane spin textures of Walker modes.
//!
//! Inside the sphere the magnetostatic potential obeys the Walker equation
//! (1+κ)(∂²ψ/∂x² + ∂²ψ/∂y²) + ∂²ψ/∂z² = 0. Every solution regular at the origin
//! with azimuthal order m is a combination of solid harmonics evaluated at the
//! stretched height z·√(1+κ); the combination is fixed by requiring ψ to agree
//! on the sphere with the exterior harmonic r^{−(n+1)}·P_n^m(cos θ)·e^{−imφ}.
//! Continuity of the normal flux density then holds only at a true eigenfrequency,
//! which makes it the check on the root.
//!
//! Conventions: the azimuthal phase is e^{−i·m·φ} and the Polder tensor is
//! m_x = κh_x + iνh_y, m_y = −iνh_x + κh_y, so that m₊ = (κ+ν)h₊ and
//! m₋ = (κ−ν)h₋ with h = ∇ψ. The pairing follows from flux continuity with the
//! characteristic equation's +m·ν term; it puts the uniform Kittel precession in
//! m₊ and makes arg(m₊) wind −(m − 1) times.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::legendre::derivative_coefficients;
use super::{MagnetostaticsError, MaterialConfig, WalkerModeIndex, WalkerModeSolution};

pub const PDE_RESIDUAL_TOL: f64 = 1e-3;
pub const BOUNDARY_RESIDUAL_TOL: f64 = 1e-3;

const STENCIL_STEP: f64 = 1e-3;
const BOUNDARY_POLAR: usize = 8;
const BOUNDARY_AZIMUTHAL: usize = 8;
const LOOP_SAMPLES: usize = 512;
const WINDING_FLOOR: f64 = 1e-6;

/// Dense polynomial in (s, z) with s = x² + y²; `c[i][j]` multiplies sⁱzʲ.
#[derive(Debug, Clone, Default)]
struct Poly2 {
    c: Vec<Vec<f64>>,
}

impl Poly2 {
    fn monomial(i: usize, j: usize, value: f64) -> Self {
        let mut c = vec![vec![0.0; j + 1]; i + 1];
        c[i][j] = value;
        Self { c }
    }

    fn add_scaled(&mut self, other: &Poly2, k: f64) {
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), Vec::new());
        }
        for (row, orow) in self.c.iter_mut().zip(&other.c) {
            if row.len() < orow.len() {
                row.resize(orow.len(), 0.0);
            }
            for (a, b) in row.iter_mut().zip(orow) {
                *a += k * b;
            }
        }
    }

    fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (i, row) in self.c.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (k, orow) in other.c.iter().enumerate() {
                    for (l, &b) in orow.iter().enumerate() {
                        if b != 0.0 {
                            out.add_scaled(&Poly2::monomial(i + k, j + l, a * b), 1.0);
                        }
                    }
                }
            }
        }
        out
    }

    fn pow(&self, e: usize) -> Poly2 {
        (0..e).fold(Poly2::monomial(0, 0, 1.0), |acc, _| acc.mul(self))
    }

    /// (F, ∂F/∂s, ∂F/∂z).
    fn eval(&self, s: f64, z: f64) -> (f64, f64, f64) {
        let mut f = 0.0;
        let mut fs = 0.0;
        let mut fz = 0.0;
        let mut s_pow = 1.0;
        let mut s_pow_prev = 0.0;
        for (i, row) in self.c.iter().enumerate() {
            let mut z_pow = 1.0;
            let mut z_pow_prev = 0.0;
            for (j, &c) in row.iter().enumerate() {
                f += c * s_pow * z_pow;
                fs += c * i as f64 * s_pow_prev * z_pow;
                fz += c * j as f64 * s_pow * z_pow_prev;
                z_pow_prev = z_pow;
                z_pow *= z;
            }
            s_pow_prev = s_pow;
            s_pow *= s;
        }
        (f, fs, fz)
    }

    /// Univariate coefficients in z after substituting s = 1 − z².
    fn on_unit_sphere(&self) -> Vec<f64> {
        let one_minus_z2 = Poly2 {
            c: vec![vec![1.0, 0.0, -1.0]],
        };
        let mut out = Poly2::default();
        for (i, row) in self.c.iter().enumerate() {
            let mut zrow = Poly2 { c: vec![row.clone()] };
            zrow = zrow.mul(&one_minus_z2.pow(i));
            out.add_scaled(&zrow, 1.0);
        }
        out.c.into_iter().next().unwrap_or_default()
    }
}

/// Solid harmonic of degree k and order m (without its w-power prefactor)
/// evaluated at height z·√stretch, with the odd power of √stretch dropped.
fn stretched_solid_harmonic(k: u32, m: u32, stretch: f64) -> Poly2 {
    let q = derivative_coefficients(k, m);
    let d = (k - m) as usize;
    let s_plus_z2 = Poly2 {
        c: vec![vec![0.0, 0.0, stretch], vec![1.0]],
    };
    let mut out = Poly2::default();
    for i in 0..=d / 2 {
        let zp = d - 2 * i;
        let coef = q[zp] * stretch.powi((d / 2 - i) as i32);
        out.add_scaled(&Poly2::monomial(0, zp, coef).mul(&s_plus_z2.pow(i)), 1.0);
    }
    out
}

/// Analytic magnetostatic potential of one Walker mode, inside and outside the
/// unit sphere.
#[derive(Debug, Clone)]
pub struct WalkerPotential {
    n: u32,
    m: i32,
    kappa: f64,
    nu: f64,
    interior: Poly2,
    exterior: Poly2,
}

impl WalkerPotential {
    pub fn new(solution: &WalkerModeSolution) -> Result<Self, MagnetostaticsError> {
        let WalkerModeIndex { n, m, .. } = solution.index;
        let m_abs = m.unsigned_abs();
        let stretch = 1.0 + solution.kappa;
        let exterior = stretched_solid_harmonic(n, m_abs, 1.0);
        let target = exterior.on_unit_sphere();

        let degrees: Vec<u32> = (m_abs..=n).filter(|k| (n - k) % 2 == 0).collect();
        let basis: Vec<Poly2> = degrees
            .iter()
            .map(|&k| stretched_solid_harmonic(k, m_abs, stretch))
            .collect();
        let traces: Vec<Vec<f64>> = basis.iter().map(Poly2::on_unit_sphere).collect();

        // Match the coefficients of z^{d−2j} on the sphere, d = n − |m|.
        let d = (n - m_abs) as usize;
        let rows: Vec<usize> = (0..=d / 2).map(|j| d - 2 * j).collect();
        let size = rows.len();
        let coeff = |v: &[f64], p: usize| v.get(p).copied().unwrap_or(0.0);
        let a = DMatrix::from_fn(size, size, |r, c| coeff(&traces[c], rows[r]));
        let b = DVector::from_fn(size, |r, _| coeff(&target, rows[r]));
        let alpha = a.lu().solve(&b).ok_or_else(|| {
            MagnetostaticsError::Texture(format!(
                "singular interior matching system for {} (1+kappa = {stretch})",
                solution.index
            ))
        })?;

        let mut interior = Poly2::default();
        for (p, &w) in basis.iter().zip(alpha.iter()) {
            interior.add_scaled(p, w);
        }
        Ok(Self {
            n,
            m,
            kappa: solution.kappa,
            nu: solution.nu,
            interior,
            exterior,
        })
    }

    /// Azimuthal prefactor W and its Wirtinger derivatives (∂_w W, ∂_w̄ W).
    fn azimuthal(&self, x: f64, y: f64) -> (Complex64, Complex64, Complex64) {
        let w = Complex64::new(x, y);
        let k = self.m.unsigned_abs();
        let pow = |z: Complex64, e: u32| z.powu(e);
        match self.m.signum() {
            1 => {
                let wb = w.conj();
                (pow(wb, k), Complex64::ZERO, k as f64 * pow(wb, k - 1))
            }
            -1 => (pow(w, k), k as f64 * pow(w, k - 1), Complex64::ZERO),
            _ => (Complex64::ONE, Complex64::ZERO, Complex64::ZERO),
        }
    }

    pub fn psi_interior(&self, x: f64, y: f64, z: f64) -> Complex64 {
        let (w, _, _) = self.azimuthal(x, y);
        w * self.interior.eval(x * x + y * y, z).0
    }

    pub fn psi_exterior(&self, x: f64, y: f64, z: f64) -> Complex64 {
        let s = x * x + y * y;
        let r2 = s + z * z;
        let (w, _, _) = self.azimuthal(x, y);
        w * self.exterior.eval(s, z).0 * r2.powf(-(2.0 * self.n as f64 + 1.0) / 2.0)
    }

    pub fn psi(&self, x: f64, y: f64, z: f64) -> Complex64 {
        if x * x + y * y + z * z <= 1.0 {
            self.psi_interior(x, y, z)
        } else {
            self.psi_exterior(x, y, z)
        }
    }

    /// Interior (h₊, h₋, h_z) with h = ∇ψ.
    pub fn field_interior(&self, x: f64, y: f64, z: f64) -> (Complex64, Complex64, Complex64) {
        let w = Complex64::new(x, y);
        let (pref, d_w, d_wbar) = self.azimuthal(x, y);
        let (f, fs, fz) = self.interior.eval(x * x + y * y, z);
        let dpsi_dw = d_w * f + pref * w.conj() * fs;
        let dpsi_dwbar = d_wbar * f + pref * w * fs;
        (2.0 * dpsi_dwbar, 2.0 * dpsi_dw, pref * fz)
    }

    /// Interior (m₊, m₋); zero outside the sphere.
    pub fn magnetization(&self, x: f64, y: f64, z: f64) -> (Complex64, Complex64) {
        if x * x + y * y + z * z > 1.0 {
            return (Complex64::ZERO, Complex64::ZERO);
        }
        let (h_plus, h_minus, _) = self.field_interior(x, y, z);
        (
            (self.kappa + self.nu) * h_plus,
            (self.kappa - self.nu) * h_minus,
        )
    }

    /// Normal flux density just inside the unit sphere at the unit vector p.
    pub fn normal_flux_interior(&self, p: [f64; 3]) -> Complex64 {
        let (h_plus, h_minus, h_z) = self.field_interior(p[0], p[1], p[2]);
        let b_plus = (1.0 + self.kappa + self.nu) * h_plus;
        let b_minus = (1.0 + self.kappa - self.nu) * h_minus;
        let w = Complex64::new(p[0], p[1]);
        0.5 * (w.conj() * b_plus + w * b_minus) + p[2] * h_z
    }

    /// Normal flux density just outside the unit sphere; ψ_out is homogeneous of
    /// degree −(n+1).
    pub fn normal_flux_exterior(&self, p: [f64; 3]) -> Complex64 {
        -(self.n as f64 + 1.0) * self.psi_exterior(p[0], p[1], p[2])
    }

    /// Max relative Walker-equation residual from a thin central-difference
    /// stencil at the given in-plane points (z = 0).
    pub fn pde_residual(&self, points: &[[f64; 2]]) -> f64 {
        let d = STENCIL_STEP;
        let stretch = 1.0 + self.kappa;
        let mut max_res: f64 = 0.0;
        let mut max_term: f64 = 0.0;
        let mut max_psi: f64 = 0.0;
        for &[x, y] in points {
            let c = self.psi_interior(x, y, 0.0);
            let dxx = (self.psi_interior(x + d, y, 0.0) + self.psi_interior(x - d, y, 0.0) - 2.0 * c)
                / (d * d);
            let dyy = (self.psi_interior(x, y + d, 0.0) + self.psi_interior(x, y - d, 0.0) - 2.0 * c)
                / (d * d);
            let dzz = (self.psi_interior(x, y, d) + self.psi_interior(x, y, -d) - 2.0 * c) / (d * d);
            let res = stretch * (dxx + dyy) + dzz;
            max_res = max_res.max(res.norm());
            max_term = max_term
                .max((stretch * dxx).norm())
                .max((stretch * dyy).norm())
                .max(dzz.norm());
            max_psi = max_psi.max(c.norm());
        }
        // A linear potential has no curvature to compare against.
        let scale = if max_term > 1e-9 * max_psi { max_term } else { max_psi };
        if scale == 0.0 {
            0.0
        } else {
            max_res / scale
        }
    }

    /// Max relative mismatch of ψ and of the normal flux density across the
    /// sphere at 64 surface points.
    pub fn boundary_residual(&self) -> f64 {
        let mut psi_err: f64 = 0.0;
        let mut psi_scale: f64 = 0.0;
        let mut flux_err: f64 = 0.0;
        let mut flux_scale: f64 = 0.0;
        for i in 0..BOUNDARY_POLAR {
            let theta = std::f64::consts::PI * (i as f64 + 0.5) / BOUNDARY_POLAR as f64;
            for j in 0..BOUNDARY_AZIMUTHAL {
                let phi = std::f64::consts::TAU * (j as f64 + 0.25) / BOUNDARY_AZIMUTHAL as f64;
                let p = [
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                ];
                let inside = self.psi_interior(p[0], p[1], p[2]);
                let outside = self.psi_exterior(p[0], p[1], p[2]);
                psi_err = psi_err.max((inside - outside).norm());
                psi_scale = psi_scale.max(outside.norm());
                let b_in = self.normal_flux_interior(p);
                let b_out = self.normal_flux_exterior(p);
                flux_err = flux_err.max((b_in - b_out).norm());
                flux_scale = flux_scale.max(b_out.norm());
            }
        }
        (psi_err / psi_scale).max(flux_err / flux_scale)
    }
}

/// Equatorial texture of one Walker mode on a square grid clipped to radius 2.
#[derive(Debug, Clone)]
pub struct TextureField {
    pub index: WalkerModeIndex,
    pub grid_size: usize,
    /// Grid step in units of the sphere radius.
    pub spacing: f64,
    /// (x, y) sample points in units of the sphere radius, row-major in y then x.
    pub grid: Vec<[f64; 2]>,
    pub m_plus: Vec<Complex64>,
    pub m_minus: Vec<Complex64>,
    pub potential: Vec<Complex64>,
    pub pde_residual: f64,
    pub boundary_residual: f64,
    lookup: Vec<Option<usize>>,
}

impl TextureField {
    fn slot(&self, i: isize, j: isize) -> Option<usize> {
        let n = self.grid_size as isize;
        if i.abs() > n || j.abs() > n {
            return None;
        }
        let side = 2 * n + 1;
        self.lookup[((j + n) * side + (i + n)) as usize]
    }

    /// Bilinear interpolation of m₊ at (x, y).
    pub fn m_plus_at(&self, x: f64, y: f64) -> Option<Complex64> {
        let gx = x / self.spacing;
        let gy = y / self.spacing;
        let i0 = gx.floor() as isize;
        let j0 = gy.floor() as isize;
        let tx = gx - i0 as f64;
        let ty = gy - j0 as f64;
        let v = |i, j| self.slot(i, j).map(|k| self.m_plus[k]);
        Some(
            v(i0, j0)? * ((1.0 - tx) * (1.0 - ty))
                + v(i0 + 1, j0)? * (tx * (1.0 - ty))
                + v(i0, j0 + 1)? * ((1.0 - tx) * ty)
                + v(i0 + 1, j0 + 1)? * (tx * ty),
        )
    }
}

/// Render the equatorial texture of `solution` on a (2·grid_size+1)² grid
/// spanning [−2, 2]², keeping points within radius 2.
pub fn compute_texture(
    solution: &WalkerModeSolution,
    config: &MaterialConfig,
    grid_size: usize,
) -> Result<TextureField, MagnetostaticsError> {
    config.validate()?;
    if grid_size < 21 || grid_size % 2 == 0 {
        return Err(MagnetostaticsError::Texture(format!(
            "grid_size must be odd and at least 21, got {grid_size}"
        )));
    }
    let potential_fn = WalkerPotential::new(solution)?;

    let n = grid_size as isize;
    let spacing = 2.0 / grid_size as f64;
    let side = (2 * n + 1) as usize;
    let mut lookup = vec![None; side * side];
    let mut grid = Vec::new();
    for j in -n..=n {
        for i in -n..=n {
            let (x, y) = (i as f64 * spacing, j as f64 * spacing);
            if x * x + y * y <= 4.0 + 1e-12 {
                lookup[((j + n) as usize) * side + (i + n) as usize] = Some(grid.len());
                grid.push([x, y]);
            }
        }
    }

    let mut m_plus = Vec::with_capacity(grid.len());
    let mut m_minus = Vec::with_capacity(grid.len());
    let mut potential = Vec::with_capacity(grid.len());
    for &[x, y] in &grid {
        let (mp, mm) = potential_fn.magnetization(x, y, 0.0);
        m_plus.push(mp);
        m_minus.push(mm);
        potential.push(potential_fn.psi(x, y, 0.0));
    }

    let interior: Vec<[f64; 2]> = grid
        .iter()
        .copied()
        .filter(|p| (p[0] * p[0] + p[1] * p[1]).sqrt() < 1.0 - 2.0 * STENCIL_STEP)
        .collect();
    let pde_residual = potential_fn.pde_residual(&interior);
    let boundary_residual = potential_fn.boundary_residual();
    if !(pde_residual < PDE_RESIDUAL_TOL) || !(boundary_residual < BOUNDARY_RESIDUAL_TOL) {
        return Err(MagnetostaticsError::Texture(format!(
            "{}: PDE residual {pde_residual:e}, boundary residual {boundary_residual:e}",
            solution.index
        )));
    }

    // Gauge: max |m₊| = 1, phase zero at the strongest point on the positive x axis.
    let max_abs = m_plus.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_abs == 0.0 {
        return Err(MagnetostaticsError::Texture(format!(
            "{}: m+ vanishes on the equator",
            solution.index
        )));
    }
    let axis_ref = grid
        .iter()
        .zip(&m_plus)
        .filter(|(p, _)| p[1] == 0.0 && p[0] > 0.0 && p[0] <= 1.0)
        .map(|(_, z)| *z)
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .filter(|z| z.norm() > 1e-9 * max_abs);
    let reference = axis_ref.unwrap_or_else(|| {
        *m_plus
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("non-empty grid")
    });
    let gauge = reference.conj() / (reference.norm() * max_abs);
    for z in m_plus
        .iter_mut()
        .chain(m_minus.iter_mut())
        .chain(potential.iter_mut())
    {
        *z *= gauge;
    }

    Ok(TextureField {
        index: solution.index,
        grid_size,
        spacing,
        grid,
        m_plus,
        m_minus,
        potential,
        pde_residual,
        boundary_residual,
        lookup,
    })
}

/// Signed number of turns of arg(m₊) around a counter-clockwise loop.
pub fn winding_number(texture: &TextureField, loop_radius: f64) -> Result<i32, MagnetostaticsError> {
    if !(loop_radius > 0.2 && loop_radius < 0.9) {
        return Err(MagnetostaticsError::IllDefinedWinding {
            radius: loop_radius,
            ratio: f64::NAN,
        });
    }
    let max_abs = texture.m_plus.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let samples: Vec<Complex64> = (0..LOOP_SAMPLES)
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / LOOP_SAMPLES as f64;
            texture
                .m_plus_at(loop_radius * phi.cos(), loop_radius * phi.sin())
                .expect("loop lies inside the grid")
        })
        .collect();
    let min_abs = samples.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let ratio = if max_abs > 0.0 { min_abs / max_abs } else { 0.0 };
    if ratio < WINDING_FLOOR {
        return Err(MagnetostaticsError::IllDefinedWinding {
            radius: loop_radius,
            ratio,
        });
    }
    let total: f64 = samples
        .iter()
        .zip(samples.iter().cycle().skip(1))
        .map(|(a, b)| (b * a.conj()).arg())
        .sum();
    Ok((total / std::f64::consts::TAU).round() as i32)
}
