use std::io::Write;
use std::path::{Path, PathBuf};

use optomag_core::identify::{
    assign_modes_with_tolerance, find_dips, fit_ms_eff, load_spectrum, ModeAssignment, Trace,
};
use optomag_core::magnetostatics::{
    compute_texture, find_walker_mode, walker_catalog, winding_number,
};
use optomag_core::optics::{oam_of_wgm, Component, Family, Orbit, Polarization};
use optomag_core::scattering::{bls_spectrum, enumerate_channels, Process, ScatteringChannel};
use optomag_core::{RunConfig, WalkerModeIndex};
use serde::Serialize;

use crate::error::CliError;
use crate::format::{fmt_f64, to_json};

/// Loop radius (units of the sphere radius) used for the reported winding.
const WINDING_RADIUS: f64 = 0.5;

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_csv(
    path: Option<&Path>,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(open_output(path)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut out = open_output(path)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn walker_index(n: u32, m: i32, r: u32) -> Result<WalkerModeIndex, CliError> {
    Ok(WalkerModeIndex::new(n, m, r)?)
}

fn input_index(cfg: &RunConfig, m_tm: Option<u32>) -> Result<u32, CliError> {
    let m = match m_tm {
        Some(m) => m,
        None => u32::try_from(cfg.ladder.reference_index).map_err(|_| {
            CliError::Usage(format!(
                "reference_index {} is not a valid TM index",
                cfg.ladder.reference_index
            ))
        })?,
    };
    if m < 2 {
        return Err(CliError::Usage(format!("m_tm must be at least 2, got {m}")));
    }
    Ok(m)
}

pub fn modes(cfg: &RunConfig, n_max: u32, output: Option<&Path>) -> Result<(), CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("n_max must be at least 1".into()));
    }
    let material = &cfg.material;
    let mut rows: Vec<_> = walker_catalog(material, n_max)?
        .into_iter()
        .map(|s| (s.relative_frequency(material), s))
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.index.cmp(&b.1.index)));
    write_csv(
        output,
        &["n", "m", "r", "freq_ghz", "rel_ghz", "oam"],
        rows.into_iter().map(|(rel, s)| {
            vec![
                s.index.n.to_string(),
                s.index.m.to_string(),
                s.index.r.to_string(),
                fmt_f64(s.frequency),
                fmt_f64(rel),
                s.oam.to_string(),
            ]
        }),
    )
}

#[derive(Serialize)]
struct TextureSummary {
    n: u32,
    m: i32,
    r: u32,
    grid: usize,
    loop_radius: f64,
    winding: i32,
    pde_residual: f64,
    boundary_residual: f64,
}

pub fn texture(
    cfg: &RunConfig,
    index: (u32, i32, u32),
    grid: usize,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let index = walker_index(index.0, index.1, index.2)?;
    let sol = find_walker_mode(index, &cfg.material)?;
    let tex = compute_texture(&sol, &cfg.material, grid).map_err(|e| match e {
        optomag_core::magnetostatics::MagnetostaticsError::Texture(msg)
            if msg.contains("grid_size") =>
        {
            CliError::Usage(msg)
        }
        other => other.into(),
    })?;
    let winding = winding_number(&tex, WINDING_RADIUS)?;

    let rows = tex
        .grid
        .iter()
        .zip(tex.m_plus.iter().zip(&tex.m_minus))
        .map(|(p, (mp, mm))| {
            vec![
                fmt_f64(p[0]),
                fmt_f64(p[1]),
                fmt_f64(mp.re),
                fmt_f64(mp.im),
                fmt_f64(mm.re),
                fmt_f64(mm.im),
            ]
        });
    write_csv(
        output,
        &["x", "y", "re_mplus", "im_mplus", "re_mminus", "im_mminus"],
        rows,
    )?;

    let summary = to_json(&TextureSummary {
        n: index.n,
        m: index.m,
        r: index.r,
        grid,
        loop_radius: WINDING_RADIUS,
        winding,
        pde_residual: tex.pde_residual,
        boundary_residual: tex.boundary_residual,
    })?;
    match output {
        Some(p) => write_text(Some(&sidecar_path(p)), &summary),
        None => {
            eprint!("{summary}");
            Ok(())
        }
    }
}

pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

#[derive(Serialize)]
struct InputRecord {
    family: Family,
    m_tm: u32,
    polarization: Polarization,
    component: Component,
    oam: i64,
}

#[derive(Serialize)]
struct WalkerRecord {
    n: u32,
    m: i32,
    r: u32,
    freq_ghz: f64,
    oam: i32,
}

#[derive(Serialize)]
struct OutputRecord {
    m_te: i64,
    oam: i64,
    resonance_thz: f64,
}

#[derive(Serialize)]
struct ChannelRecord {
    orbit: Orbit,
    process: Process,
    input: InputRecord,
    walker: WalkerRecord,
    output: OutputRecord,
    photon_thz: f64,
    detuning_ghz: f64,
    weight: f64,
}

impl From<&ScatteringChannel> for ChannelRecord {
    fn from(c: &ScatteringChannel) -> Self {
        Self {
            orbit: c.orbit,
            process: c.process,
            input: InputRecord {
                family: c.input.family,
                m_tm: c.input.m,
                polarization: c.input.polarization,
                component: c.input.component(),
                oam: oam_of_wgm(&c.input),
            },
            walker: WalkerRecord {
                n: c.walker.index.n,
                m: c.walker.index.m,
                r: c.walker.index.r,
                freq_ghz: c.walker.frequency,
                oam: c.walker.oam,
            },
            output: OutputRecord {
                m_te: c.output_m_te,
                oam: c.output_oam,
                resonance_thz: c.target_resonance,
            },
            photon_thz: c.photon_frequency,
            detuning_ghz: c.detuning,
            weight: c.weight,
        }
    }
}

pub fn channels(
    cfg: &RunConfig,
    index: (u32, i32, u32),
    m_tm: Option<u32>,
    orbit: Orbit,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let index = walker_index(index.0, index.1, index.2)?;
    let m_tm = input_index(cfg, m_tm)?;
    let sol = find_walker_mode(index, &cfg.material)?;
    let records: Vec<ChannelRecord> = enumerate_channels(m_tm, &sol, orbit, &cfg.ladder)?
        .iter()
        .map(ChannelRecord::from)
        .collect();
    write_text(output, &to_json(&records)?)
}

pub fn spectrum(
    cfg: &RunConfig,
    index: (u32, i32, u32),
    m_tm: Option<u32>,
    span: Option<f64>,
    points: usize,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let index = walker_index(index.0, index.1, index.2)?;
    let m_tm = input_index(cfg, m_tm)?;
    if points == 0 {
        return Err(CliError::Usage("points must be at least 1".into()));
    }
    let half = span.unwrap_or(10.0 * cfg.magnon_linewidth);
    if !(half.is_finite() && half > 0.0) {
        return Err(CliError::Usage(format!("span must be positive, got {half}")));
    }
    let sol = find_walker_mode(index, &cfg.material)?;
    let grid: Vec<f64> = if points == 1 {
        vec![sol.frequency]
    } else {
        let step = 2.0 * half / (points - 1) as f64;
        (0..points)
            .map(|i| sol.frequency - half + step * i as f64)
            .collect()
    };
    let s = bls_spectrum(m_tm, &sol, &cfg.ladder, &grid, cfg.magnon_linewidth)?;
    let rows = (0..points).map(|i| {
        vec![
            fmt_f64(s.drive_frequencies[i]),
            fmt_f64(s.amplitude_cw[i]),
            fmt_f64(s.amplitude_ccw[i]),
        ]
    });
    write_csv(output, &["drive_ghz", "amp_cw", "amp_ccw"], rows)
}

pub struct IdentifyOptions {
    pub kittel: Option<f64>,
    pub n_max: u32,
    pub prominence: f64,
    pub min_separation: f64,
    pub tolerance: f64,
    pub fit_ms: bool,
}

#[derive(Serialize)]
struct TraceReport {
    file: String,
    kittel_ghz: f64,
    points: usize,
    assignments: Vec<ModeAssignment>,
}

#[derive(Serialize)]
struct FitReport {
    scale: f64,
    four_pi_ms: f64,
    objective: f64,
}

#[derive(Serialize)]
struct IdentifyReport {
    n_max: u32,
    four_pi_ms: f64,
    traces: Vec<TraceReport>,
    fit: Option<FitReport>,
}

pub fn identify(
    cfg: &RunConfig,
    files: &[PathBuf],
    opts: &IdentifyOptions,
    output: Option<&Path>,
) -> Result<(), CliError> {
    if files.is_empty() {
        return Err(CliError::Usage("no spectrum files given".into()));
    }
    if !(opts.prominence > 0.0) {
        return Err(CliError::Usage("prominence must be positive".into()));
    }
    if !(opts.min_separation >= 0.0 && opts.tolerance > 0.0) {
        return Err(CliError::Usage(
            "min-separation must be non-negative and tolerance positive".into(),
        ));
    }

    let mut traces = Vec::with_capacity(files.len());
    let mut reports = Vec::with_capacity(files.len());
    for path in files {
        let file = std::fs::File::open(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let spectrum = load_spectrum(file, opts.kittel)
            .map_err(|e| CliError::from(e).with_context(&path.display().to_string()))?;
        let dips = find_dips(&spectrum, opts.prominence, opts.min_separation);
        let assignments = assign_modes_with_tolerance(
            &dips,
            spectrum.kittel_frequency,
            &cfg.material,
            opts.n_max,
            opts.tolerance,
        )?;
        reports.push(TraceReport {
            file: path.display().to_string(),
            kittel_ghz: spectrum.kittel_frequency,
            points: spectrum.len(),
            assignments,
        });
        traces.push(Trace {
            kittel_frequency: spectrum.kittel_frequency,
            dips,
        });
    }

    let mut four_pi_ms = cfg.material.four_pi_ms;
    let fit = if opts.fit_ms {
        let fit = fit_ms_eff(&traces, &cfg.material, opts.n_max)?;
        for (report, assignments) in reports.iter_mut().zip(fit.assignments) {
            report.assignments = assignments;
        }
        four_pi_ms = fit.four_pi_ms;
        Some(FitReport {
            scale: fit.scale,
            four_pi_ms: fit.four_pi_ms,
            objective: fit.objective,
        })
    } else {
        None
    };

    let report = IdentifyReport {
        n_max: opts.n_max,
        four_pi_ms,
        traces: reports,
        fit,
    };
    write_text(output, &to_json(&report)?)
}

impl CliError {
    fn with_context(self, what: &str) -> Self {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{what}: {m}")),
            CliError::Numeric(m) => CliError::Numeric(format!("{what}: {m}")),
            CliError::Io(m) => CliError::Io(format!("{what}: {m}")),
        }
    }
}
