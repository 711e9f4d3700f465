use serde::{Deserialize, Serialize};

use super::IdentifyError;
use crate::magnetostatics::{walker_catalog, MaterialConfig, WalkerModeIndex};

pub const DEFAULT_TOLERANCE_GHZ: f64 = 0.050;
pub const MAX_CATALOG_DEGREE: u32 = 8;
pub const MS_SCALE_WINDOW: (f64, f64) = (0.8, 1.3);

const COARSE_STEPS: usize = 50;
const GOLDEN_TOL: f64 = 1e-4;
// Residuals closer than this are treated as equal when ordering candidate pairs.
const TIE_BUCKET_GHZ: f64 = 1e-9;

/// One theoretical mode with its offset from the Kittel mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub index: WalkerModeIndex,
    /// GHz.
    pub relative_frequency: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeAssignment {
    #[serde(rename = "dip_ghz")]
    pub dip_frequency: f64,
    #[serde(rename = "rel_ghz")]
    pub relative_frequency: f64,
    #[serde(flatten, with = "label_fields")]
    pub label: Option<WalkerModeIndex>,
    /// Distance to the assigned mode, or to the nearest catalog mode when unassigned.
    #[serde(rename = "residual_ghz")]
    pub residual: f64,
}

mod label_fields {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::magnetostatics::WalkerModeIndex;

    #[derive(Serialize, Deserialize)]
    struct Fields {
        n: Option<u32>,
        m: Option<i32>,
        r: Option<u32>,
    }

    pub fn serialize<S: Serializer>(
        label: &Option<WalkerModeIndex>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        Fields {
            n: label.map(|l| l.n),
            m: label.map(|l| l.m),
            r: label.map(|l| l.r),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<WalkerModeIndex>, D::Error> {
        let f = Fields::deserialize(d)?;
        Ok(match (f.n, f.m, f.r) {
            (Some(n), Some(m), Some(r)) => Some(WalkerModeIndex { n, m, r }),
            _ => None,
        })
    }
}

/// Dips of one spectrum together with its Kittel frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub kittel_frequency: f64,
    pub dips: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MsFit {
    pub scale: f64,
    /// Fitted 4πM_s in gauss.
    pub four_pi_ms: f64,
    pub objective: f64,
    /// One list per input trace.
    pub assignments: Vec<Vec<ModeAssignment>>,
}

/// Catalog of all modes with n ≤ n_max for a sphere resonating at `kittel`.
pub fn theory_catalog(
    kittel: f64,
    config: &MaterialConfig,
    n_max: u32,
) -> Result<Vec<CatalogEntry>, IdentifyError> {
    if n_max == 0 || n_max > MAX_CATALOG_DEGREE {
        return Err(IdentifyError::InvalidArgument(format!(
            "n_max must lie in 1..={MAX_CATALOG_DEGREE}, got {n_max}"
        )));
    }
    let cfg = config.with_kittel_frequency(kittel);
    Ok(walker_catalog(&cfg, n_max)?
        .into_iter()
        .map(|s| CatalogEntry {
            index: s.index,
            relative_frequency: s.relative_frequency(&cfg),
        })
        .collect())
}

pub fn assign_modes(
    dips: &[f64],
    kittel: f64,
    config: &MaterialConfig,
    n_max: u32,
) -> Result<Vec<ModeAssignment>, IdentifyError> {
    assign_modes_with_tolerance(dips, kittel, config, n_max, DEFAULT_TOLERANCE_GHZ)
}

pub fn assign_modes_with_tolerance(
    dips: &[f64],
    kittel: f64,
    config: &MaterialConfig,
    n_max: u32,
    tolerance: f64,
) -> Result<Vec<ModeAssignment>, IdentifyError> {
    let catalog = theory_catalog(kittel, config, n_max)?;
    Ok(assign_against_catalog(dips, kittel, &catalog, tolerance))
}

/// Greedy nearest-pair matching, unique on both sides, in dip order.
///
/// Exactly degenerate catalog entries go to the lower n, then lower |m|.
pub fn assign_against_catalog(
    dips: &[f64],
    kittel: f64,
    catalog: &[CatalogEntry],
    tolerance: f64,
) -> Vec<ModeAssignment> {
    let rel: Vec<f64> = dips.iter().map(|d| d - kittel).collect();

    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &r) in rel.iter().enumerate() {
        for (j, entry) in catalog.iter().enumerate() {
            let d = (r - entry.relative_frequency).abs();
            if d <= tolerance {
                pairs.push((d, i, j));
            }
        }
    }
    let bucket = |d: f64| (d / TIE_BUCKET_GHZ).round() as i64;
    pairs.sort_by(|a, b| {
        let (ea, eb) = (&catalog[a.2].index, &catalog[b.2].index);
        bucket(a.0)
            .cmp(&bucket(b.0))
            .then(ea.n.cmp(&eb.n))
            .then(ea.m.unsigned_abs().cmp(&eb.m.unsigned_abs()))
            .then(eb.m.cmp(&ea.m))
            .then(ea.r.cmp(&eb.r))
            .then(a.1.cmp(&b.1))
    });

    let mut dip_label: Vec<Option<(usize, f64)>> = vec![None; dips.len()];
    let mut taken = vec![false; catalog.len()];
    for (d, i, j) in pairs {
        if dip_label[i].is_none() && !taken[j] {
            dip_label[i] = Some((j, d));
            taken[j] = true;
        }
    }

    dips.iter()
        .zip(&rel)
        .zip(dip_label)
        .map(|((&dip, &r), hit)| {
            let (label, residual) = match hit {
                Some((j, d)) => (Some(catalog[j].index), d),
                None => (
                    None,
                    catalog
                        .iter()
                        .map(|e| (r - e.relative_frequency).abs())
                        .fold(f64::INFINITY, f64::min),
                ),
            };
            ModeAssignment {
                dip_frequency: dip,
                relative_frequency: r,
                label,
                residual,
            }
        })
        .collect()
}

/// Capped sum of squared residuals at magnetization scale `scale`.
///
/// Every dip contributes min(residual, tolerance)²; unassigned dips count
/// as a full tolerance. Returns the objective and the number of assigned dips.
pub fn ms_objective(
    traces: &[Trace],
    config: &MaterialConfig,
    n_max: u32,
    scale: f64,
) -> Result<(f64, usize), IdentifyError> {
    let (obj, assigned, _) = evaluate(traces, config, n_max, scale)?;
    Ok((obj, assigned))
}

fn evaluate(
    traces: &[Trace],
    config: &MaterialConfig,
    n_max: u32,
    scale: f64,
) -> Result<(f64, usize, Vec<Vec<ModeAssignment>>), IdentifyError> {
    let scaled = config.with_scaled_magnetization(scale);
    let tol = DEFAULT_TOLERANCE_GHZ;
    let mut objective = 0.0;
    let mut assigned = 0;
    let mut all = Vec::with_capacity(traces.len());
    for trace in traces {
        let catalog = theory_catalog(trace.kittel_frequency, &scaled, n_max)?;
        let a = assign_against_catalog(&trace.dips, trace.kittel_frequency, &catalog, tol);
        for x in &a {
            if x.label.is_some() {
                assigned += 1;
                objective += x.residual.min(tol).powi(2);
            } else {
                objective += tol * tol;
            }
        }
        all.push(a);
    }
    Ok((objective, assigned, all))
}

/// Fit the factor s on 4πM_s that best explains every trace.
///
/// A uniform scan over the window locates the basin, then golden-section
/// search refines s to 1e-4 inside the neighbouring scan cells.
pub fn fit_ms_eff(
    traces: &[Trace],
    config: &MaterialConfig,
    n_max: u32,
) -> Result<MsFit, IdentifyError> {
    if traces.is_empty() {
        return Err(IdentifyError::InvalidArgument("no traces to fit".into()));
    }
    let (lo, hi) = MS_SCALE_WINDOW;
    let step = (hi - lo) / COARSE_STEPS as f64;

    let mut best: Option<(usize, f64)> = None;
    for k in 0..=COARSE_STEPS {
        let s = lo + step * k as f64;
        // Scales that push Ω_H below zero for some trace are skipped.
        let Ok((obj, assigned)) = ms_objective(traces, config, n_max, s) else {
            continue;
        };
        if assigned > 0 && best.is_none_or(|(_, b)| obj < b) {
            best = Some((k, obj));
        }
    }
    let (k, _) = best.ok_or(IdentifyError::FitFailed { lo, hi })?;

    let mut a = (lo + step * (k as f64 - 1.0)).max(lo);
    let mut b = (lo + step * (k as f64 + 1.0)).min(hi);
    let f = |s: f64| {
        ms_objective(traces, config, n_max, s)
            .map(|(o, _)| o)
            .unwrap_or(f64::INFINITY)
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let scale = 0.5 * (a + b);
    let (objective, assigned, assignments) = evaluate(traces, config, n_max, scale)?;
    if assigned == 0 {
        return Err(IdentifyError::FitFailed { lo, hi });
    }
    Ok(MsFit {
        scale,
        four_pi_ms: config.four_pi_ms * scale,
        objective,
        assignments,
    })
}
