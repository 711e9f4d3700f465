//! Log-derivative of associated Legendre functions as a rational function of
//! t = ξ².
//!
//! With P_n^m(ξ) ∝ (ξ² − 1)^{m/2} ξ^p R(ξ²), where p = (n − m) mod 2 and R is a
//! polynomial, the quantity ξ·P′/P reduces to
//!
//! ```text
//! g(t) = m·t/(t − 1) + p + 2t·R′(t)/R(t)
//! ```
//!
//! which is real for every real t, including t < 0 (imaginary ξ).

use super::MagnetostaticsError;

/// Largest supported degree n.
pub const MAX_DEGREE: u32 = 40;

/// Precomputed R(t) for one (n, |m|) pair.
#[derive(Debug, Clone)]
pub struct LegendreKernel {
    n: u32,
    m_abs: u32,
    parity: u32,
    /// R(t) coefficients, ascending powers.
    coeffs: Vec<f64>,
}

impl LegendreKernel {
    pub fn new(n: u32, m_abs: u32) -> Result<Self, MagnetostaticsError> {
        if m_abs > n || n > MAX_DEGREE {
            return Err(MagnetostaticsError::InvalidIndex {
                n,
                m: m_abs as i32,
                reason: format!("need 0 <= |m| <= n <= {MAX_DEGREE}"),
            });
        }
        let q = derivative_coefficients(n, m_abs);
        let parity = (n - m_abs) % 2;
        let coeffs = q.iter().skip(parity as usize).step_by(2).copied().collect();
        Ok(Self {
            n,
            m_abs,
            parity,
            coeffs,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m_abs(&self) -> u32 {
        self.m_abs
    }

    /// Coefficients of R(t) in ascending powers (overall scale arbitrary).
    pub fn reduced_polynomial(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> Result<f64, MagnetostaticsError> {
        if self.m_abs > 0 && t == 1.0 {
            return Err(MagnetostaticsError::Pole {
                what: "associated Legendre branch point",
                at: t,
            });
        }
        let azimuthal = if self.m_abs > 0 {
            self.m_abs as f64 * t / (t - 1.0)
        } else {
            0.0
        };
        Ok(azimuthal + self.eval_reduced(t)?)
    }

    /// p + 2t·R′(t)/R(t), the part of g(t) without the (ξ² − 1) factor.
    pub fn eval_reduced(&self, t: f64) -> Result<f64, MagnetostaticsError> {
        let (r, dr) = horner_with_derivative(&self.coeffs, t);
        if r == 0.0 {
            return Err(MagnetostaticsError::Pole {
                what: "associated Legendre zero",
                at: t,
            });
        }
        Ok(self.parity as f64 + 2.0 * t * dr / r)
    }
}

/// ξ·P′ₙ^m(ξ)/Pₙ^m(ξ) evaluated at t = ξ².
pub fn legendre_logderiv(n: u32, m_abs: u32, t: f64) -> Result<f64, MagnetostaticsError> {
    LegendreKernel::new(n, m_abs)?.eval(t)
}

/// Coefficients (ascending powers of x) of dᵐ/dxᵐ of 2ⁿ·Pₙ(x).
///
/// Uses the explicit sum 2ⁿPₙ(x) = Σₖ (−1)ᵏ C(n,k) C(2n−2k, n) x^{n−2k}.
pub(crate) fn derivative_coefficients(n: u32, m: u32) -> Vec<f64> {
    let n_us = n as usize;
    let mut coeffs = vec![0.0; n_us + 1];
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = binomial(n, k) as f64 * binomial(2 * n - 2 * k, n) as f64;
        coeffs[(n - 2 * k) as usize] = sign * c;
    }
    for _ in 0..m {
        coeffs = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(p, c)| p as f64 * c)
            .collect();
    }
    if coeffs.is_empty() {
        coeffs.push(0.0);
    }
    coeffs
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Value and first derivative of a polynomial given in ascending powers.
pub(crate) fn horner_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut deriv = 0.0;
    for &c in coeffs.iter().rev() {
        deriv = deriv * x + value;
        value = value * x + c;
    }
    (value, deriv)
}
