#![allow(dead_code)]

pub mod props;

use nalgebra::DMatrix;
use optomag_core::identify::FmrSpectrum;
use optomag_core::magnetostatics::find_walker_mode;
use optomag_core::{MaterialConfig, WalkerModeIndex};

pub const OBSERVED_MODES: [(u32, i32, u32); 4] = [(1, 1, 0), (3, -1, 1), (3, 1, 1), (4, 0, 1)];

pub fn observed_indices() -> [WalkerModeIndex; 4] {
    OBSERVED_MODES.map(|(n, m, r)| WalkerModeIndex { n, m, r })
}

pub fn observed_frequencies(cfg: &MaterialConfig) -> Vec<f64> {
    observed_indices()
        .iter()
        .map(|&i| find_walker_mode(i, cfg).unwrap().frequency)
        .collect()
}

// Dense polynomials, ascending coefficients.

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn poly_scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

fn poly_deriv(a: &[f64]) -> Vec<f64> {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect()
}

fn poly_compose(outer: &[f64], inner: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0];
    for &c in outer.iter().rev() {
        out = poly_add(&poly_mul(&out, inner), &[c]);
    }
    out
}

fn poly_eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// d^m P_n / dξ^m via Rodrigues' formula.
fn legendre_derivative_rodrigues(n: u32, m: u32) -> Vec<f64> {
    let mut p = vec![1.0];
    for _ in 0..n {
        p = poly_mul(&p, &[-1.0, 0.0, 1.0]);
    }
    for _ in 0..(n + m) {
        p = poly_deriv(&p);
    }
    let norm: f64 = (1..=n).map(|k| 2.0 * k as f64).product();
    poly_scale(&p, 1.0 / norm)
}

fn real_roots(poly: &[f64]) -> Vec<f64> {
    let mut p = poly.to_vec();
    while p.len() > 1 && p.last().unwrap().abs() < 1e-300 {
        p.pop();
    }
    let deg = p.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    let mut c = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        c[(i, deg - 1)] = -p[i] / lead;
    }
    let dp = poly_deriv(&p);
    c.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() < 1e-6 * (1.0 + z.re.abs()))
        .map(|z| {
            let mut x = z.re;
            for _ in 0..8 {
                let d = poly_eval(&dp, x);
                if d == 0.0 {
                    break;
                }
                x -= poly_eval(&p, x) / d;
            }
            x
        })
        .collect()
}

/// Band roots Ω of Walker's equation for (n, m), built independently of the
/// library: Rodrigues polynomials, reduction to a polynomial in Ω and
/// companion-matrix eigenvalues.
///
/// With P = (ξ²−1)^{|m|/2} Q(ξ) and Q = ξ^p Q̃(ξ²) the equation
/// ξP′/P + n + 1 + mν = 0 becomes A(t) + (mΩ/Ω_H) Q̃(t) = 0 where
/// A·ξ^p = |m|ξ²Q + (ξ²−1)(ξQ′ + (n+1)Q) and t = ξ² = 1 + (Ω_H²−Ω²)/Ω_H.
pub fn walker_roots_by_reduction(n: u32, m: i32, omega_h: f64) -> Vec<f64> {
    let ma = m.unsigned_abs();
    let q = legendre_derivative_rodrigues(n, ma);
    let p = ((n - ma) % 2) as usize;

    let xi2 = [0.0, 0.0, 1.0];
    let xi2m1 = [-1.0, 0.0, 1.0];
    let xq_prime = poly_mul(&[0.0, 1.0], &poly_deriv(&q));
    let a_xi = poly_add(
        &poly_scale(&poly_mul(&xi2, &q), ma as f64),
        &poly_mul(&xi2m1, &poly_add(&xq_prime, &poly_scale(&q, (n + 1) as f64))),
    );
    let even = |v: &[f64]| -> Vec<f64> {
        v.iter().skip(p).step_by(2).copied().collect::<Vec<f64>>()
    };
    let a_t = even(&a_xi);
    let qt = even(&q);
    for (k, c) in a_xi.iter().enumerate() {
        if (k + p) % 2 == 1 {
            assert!(c.abs() < 1e-9, "parity broken in reduction");
        }
    }

    let h = omega_h;
    let t_of_x = [1.0 + h, 0.0, -1.0 / h];
    let lhs = poly_add(
        &poly_compose(&a_t, &t_of_x),
        &poly_mul(&[0.0, m as f64 / h], &poly_compose(&qt, &t_of_x)),
    );
    let mut roots: Vec<f64> = real_roots(&lhs)
        .into_iter()
        .filter(|&x| x > h + 1e-12 && x <= h + 0.5)
        .filter(|&x| poly_eval(&poly_compose(&qt, &t_of_x), x).abs() > 1e-12)
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
    roots
}

/// Band roots for (4, 0) from 21u² − 14u + 1 = 0 with u = ξ₀².
pub fn quadratic_40_roots(omega_h: f64) -> Vec<f64> {
    let disc = (14.0f64 * 14.0 - 4.0 * 21.0).sqrt();
    let mut out: Vec<f64> = [(14.0 - disc) / 42.0, (14.0 + disc) / 42.0]
        .iter()
        .map(|u| (omega_h * (omega_h + 1.0 - u)).sqrt())
        .filter(|&x| x > omega_h && x <= omega_h + 0.5)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// |S11| trace with unit baseline and one Lorentzian dip per entry of `dips`.
pub fn synthetic_trace(dips: &[f64], kittel: f64) -> FmrSpectrum {
    let lo = kittel - 1.0;
    let hi = kittel + 0.4;
    let step = 0.0005;
    let points = ((hi - lo) / step).round() as usize + 1;
    let hw: f64 = 0.0015;
    let f: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();
    let y: Vec<f64> = f
        .iter()
        .map(|&x| {
            1.0 - dips
                .iter()
                .map(|&c| 0.5 * hw * hw / ((x - c).powi(2) + hw * hw))
                .sum::<f64>()
        })
        .collect();
    FmrSpectrum::new(f, y, kittel).unwrap()
}

pub const DIP_PROMINENCE: f64 = 0.05;
pub const DIP_SEPARATION_GHZ: f64 = 0.010;
