use super::FmrSpectrum;

/// Absorption dips of |S11|, in GHz, ascending.
///
/// A local minimum is kept when its prominence (height of the lower of the two
/// enclosing maxima above it) reaches `prominence`. Deeper dips win when two
/// lie closer than `min_separation`. Positions are refined by the vertex of the
/// parabola through the minimum and its two neighbours.
pub fn find_dips(spectrum: &FmrSpectrum, prominence: f64, min_separation: f64) -> Vec<f64> {
    let f = &spectrum.frequencies;
    let y = &spectrum.s11_magnitude;
    let n = y.len();
    if n < 3 {
        return Vec::new();
    }

    let mut candidates: Vec<usize> = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if y[i] < y[i - 1] {
            // Walk across a flat bottom and take its centre.
            let mut j = i;
            while j + 1 < n && y[j + 1] == y[i] {
                j += 1;
            }
            if j + 1 < n && y[j + 1] > y[i] {
                candidates.push((i + j) / 2);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }

    let mut scored: Vec<(usize, f64)> = candidates
        .into_iter()
        .map(|k| (k, dip_prominence(y, k)))
        .filter(|&(_, p)| p >= prominence)
        .collect();
    scored.sort_by(|a, b| y[a.0].total_cmp(&y[b.0]).then(a.0.cmp(&b.0)));

    let mut kept: Vec<usize> = Vec::new();
    for (k, _) in scored {
        if kept.iter().all(|&q| (f[q] - f[k]).abs() >= min_separation) {
            kept.push(k);
        }
    }
    let mut out: Vec<f64> = kept.into_iter().map(|k| refine(f, y, k)).collect();
    out.sort_by(f64::total_cmp);
    out
}

fn dip_prominence(y: &[f64], k: usize) -> f64 {
    let level = y[k];
    let mut left = level;
    for &v in y[..k].iter().rev() {
        if v < level {
            break;
        }
        left = left.max(v);
    }
    let mut right = level;
    for &v in &y[k + 1..] {
        if v < level {
            break;
        }
        right = right.max(v);
    }
    left.min(right) - level
}

fn refine(f: &[f64], y: &[f64], k: usize) -> f64 {
    if k == 0 || k + 1 >= f.len() {
        return f[k];
    }
    let (x0, x1, x2) = (f[k - 1], f[k], f[k + 1]);
    let (y0, y1, y2) = (y[k - 1], y[k], y[k + 1]);
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let curvature = (d12 - d01) / (x2 - x0);
    if curvature <= 0.0 {
        return x1;
    }
    // Vertex of the interpolating parabola.
    let vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    vertex.clamp(x0, x2)
}
