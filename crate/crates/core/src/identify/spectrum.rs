use std::io::Read;

use super::IdentifyError;

pub const MIN_POINTS: usize = 16;

/// Normalized |S11| trace.
#[derive(Debug, Clone, PartialEq)]
pub struct FmrSpectrum {
    /// GHz, strictly increasing.
    pub frequencies: Vec<f64>,
    pub s11_magnitude: Vec<f64>,
    /// GHz.
    pub kittel_frequency: f64,
}

impl FmrSpectrum {
    pub fn new(
        frequencies: Vec<f64>,
        s11_magnitude: Vec<f64>,
        kittel_frequency: f64,
    ) -> Result<Self, IdentifyError> {
        if frequencies.len() != s11_magnitude.len() {
            return Err(IdentifyError::InvalidArgument(format!(
                "{} frequencies but {} magnitudes",
                frequencies.len(),
                s11_magnitude.len()
            )));
        }
        if frequencies.len() < MIN_POINTS {
            return Err(IdentifyError::TooFewPoints(frequencies.len()));
        }
        for (i, (&f, &s)) in frequencies.iter().zip(&s11_magnitude).enumerate() {
            let line = i as u64 + 1;
            if !f.is_finite() || !s.is_finite() {
                return Err(IdentifyError::Parse {
                    line,
                    message: "non-finite value".into(),
                });
            }
            if s <= 0.0 {
                return Err(IdentifyError::Parse {
                    line,
                    message: format!("|S11| must be positive, got {s}"),
                });
            }
            if i > 0 && f <= frequencies[i - 1] {
                return Err(IdentifyError::GridNotIncreasing { line });
            }
        }
        if !(kittel_frequency.is_finite() && kittel_frequency > 0.0) {
            return Err(IdentifyError::InvalidArgument(format!(
                "kittel frequency must be positive, got {kittel_frequency}"
            )));
        }
        Ok(Self {
            frequencies,
            s11_magnitude,
            kittel_frequency,
        })
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }
}

/// Read a `freq_ghz,s11` CSV.
///
/// The Kittel frequency comes from `kittel` or, failing that, from a leading
/// comment line of the form `# kittel_ghz=7.1`. An explicit argument wins.
pub fn load_spectrum<R: Read>(
    mut source: R,
    kittel: Option<f64>,
) -> Result<FmrSpectrum, IdentifyError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;

    let mut meta_kittel = None;
    for (i, line) in text.lines().enumerate() {
        let Some(comment) = line.trim_start().strip_prefix('#') else {
            continue;
        };
        if let Some((key, value)) = comment.split_once('=') {
            if key.trim() == "kittel_ghz" {
                let v = value.trim().parse::<f64>().map_err(|e| IdentifyError::Parse {
                    line: i as u64 + 1,
                    message: format!("bad kittel_ghz: {e}"),
                })?;
                meta_kittel = Some(v);
            }
        }
    }
    let kittel = kittel.or(meta_kittel).ok_or(IdentifyError::MissingKittel)?;

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| IdentifyError::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if headers.len() < 2 || &headers[0] != "freq_ghz" || &headers[1] != "s11" {
        return Err(IdentifyError::Parse {
            line: headers.position().map_or(1, |p| p.line()),
            message: format!(
                "expected header `freq_ghz,s11`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut frequencies = Vec::new();
    let mut magnitudes: Vec<f64> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| IdentifyError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |k: usize, name: &str| -> Result<f64, IdentifyError> {
            let raw = record.get(k).ok_or_else(|| IdentifyError::Parse {
                line,
                message: format!("missing {name}"),
            })?;
            let v: f64 = raw.parse().map_err(|_| IdentifyError::Parse {
                line,
                message: format!("cannot parse {name} `{raw}`"),
            })?;
            if !v.is_finite() {
                return Err(IdentifyError::Parse {
                    line,
                    message: format!("{name} is not finite (`{raw}`)"),
                });
            }
            Ok(v)
        };
        let f = field(0, "freq_ghz")?;
        let s = field(1, "s11")?;
        if s <= 0.0 {
            return Err(IdentifyError::Parse {
                line,
                message: format!("s11 must be positive, got {s}"),
            });
        }
        if frequencies.last().is_some_and(|&prev| f <= prev) {
            return Err(IdentifyError::GridNotIncreasing { line });
        }
        frequencies.push(f);
        magnitudes.push(s);
    }
    FmrSpectrum::new(frequencies, magnitudes, kittel)
}
