//! Agreement metrics between a model curve and a reference curve.
//!
//! The curve distance is the discrete Fréchet (coupling) distance computed
//! by dynamic programming. Its normalized form first maps both curves
//! through the affine transform that sends the reference's bounding box to
//! the unit square, so results are unit-free fractions.

use std::io::Read;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// An ordered polyline with strictly increasing `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Curve {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        let label = label.into();
        if points.len() < 2 {
            return Err(domain(
                "curve",
                format!("`{label}` needs at least 2 points, got {}", points.len()),
            ));
        }
        if let Some((x, y)) = points.iter().find(|(x, y)| !(x.is_finite() && y.is_finite())) {
            return Err(domain("curve", format!("`{label}` has non-finite point ({x}, {y})")));
        }
        if let Some(w) = points.windows(2).find(|w| w[1].0 <= w[0].0) {
            return Err(domain(
                "curve",
                format!("`{label}` x values must strictly increase ({} then {})", w[0].0, w[1].0),
            ));
        }
        Ok(Self { label, points })
    }

    /// Reads a two-column CSV whose first row is exactly `x,y`.
    pub fn from_csv<R: Read>(label: impl Into<String>, reader: R) -> Result<Self> {
        let label = label.into();
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Data(format!("{label}: {e}")))?
            .clone();
        if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
            return Err(Error::Data(format!(
                "{label}: header row must be `x,y`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut points = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Data(format!("{label}: {e}")))?;
            let parse = |j: usize| -> Result<f64> {
                record[j].parse::<f64>().map_err(|_| {
                    Error::Data(format!("{label}: row {} column {} is not a number: `{}`", i + 2, j + 1, &record[j]))
                })
            };
            points.push((parse(0)?, parse(1)?));
        }
        Self::new(label, points).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Linear interpolation; `None` outside `[x_first, x_last]`. Exact at knots.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let first = self.points.first()?.0;
        let last = self.points.last()?.0;
        if x < first || x > last {
            return None;
        }
        let i = self.points.partition_point(|p| p.0 <= x);
        if i == 0 {
            return None;
        }
        let (x0, y0) = self.points[i - 1];
        if x == x0 || i == self.points.len() {
            return Some(y0);
        }
        let (x1, y1) = self.points[i];
        Some(y0 + (x - x0) / (x1 - x0) * (y1 - y0))
    }

    /// This curve sampled at the `x` values of `grid` that fall inside its range.
    pub fn resample_onto(&self, grid: &Curve) -> Result<Curve> {
        let points = grid
            .xs()
            .filter_map(|x| self.interpolate(x).map(|y| (x, y)))
            .collect();
        Curve::new(self.label.clone(), points)
    }

    fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        let fold = |it: &mut dyn Iterator<Item = f64>| {
            it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        (fold(&mut self.xs()), fold(&mut self.ys()))
    }
}

fn point_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

/// Discrete Fréchet distance: the smallest, over all monotone couplings of
/// the two vertex sequences, of the largest paired Euclidean distance.
pub fn discrete_frechet(a: &Curve, b: &Curve) -> Result<f64> {
    if a.points.len() < 2 || b.points.len() < 2 {
        return Err(domain("curve", "Fréchet distance needs at least 2 points per curve"));
    }
    Ok(frechet_points(&a.points, &b.points))
}

fn frechet_points(p: &[(f64, f64)], q: &[(f64, f64)]) -> f64 {
    // one row of the coupling table at a time
    let mut prev = vec![0.0_f64; q.len()];
    let mut row = vec![0.0_f64; q.len()];
    for (i, &pi) in p.iter().enumerate() {
        for (j, &qj) in q.iter().enumerate() {
            let d = point_distance(pi, qj);
            row[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => row[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(row[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev[q.len() - 1]
}

/// Discrete Fréchet distance after mapping the reference's `x` and `y`
/// ranges to `[0, 1]` (the same map is applied to the model).
pub fn normalized_frechet(model: &Curve, reference: &Curve) -> Result<f64> {
    let ((x0, x1), (y0, y1)) = reference.bounds();
    let (sx, sy) = (x1 - x0, y1 - y0);
    if !(sx > 0.0 && sy > 0.0) {
        return Err(domain(
            "reference curve",
            format!("`{}` has a zero x or y range", reference.label),
        ));
    }
    let scale = |c: &Curve| -> Vec<(f64, f64)> {
        c.points
            .iter()
            .map(|&(x, y)| ((x - x0) / sx, (y - y0) / sy))
            .collect()
    };
    discrete_frechet(model, reference)?;
    Ok(frechet_points(&scale(model), &scale(reference)))
}

/// Coefficient of determination of `(reference, model)` pairs, with the
/// reference as ground truth.
pub fn r_squared(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.len() < 2 {
        return Err(domain("r-squared", format!("needs at least 2 pairs, got {}", pairs.len())));
    }
    let n = pairs.len() as f64;
    let mean = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let ss_tot: f64 = pairs.iter().map(|p| (p.0 - mean).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(domain("r-squared", "reference values have zero variance"));
    }
    let ss_res: f64 = pairs.iter().map(|p| (p.0 - p.1).powi(2)).sum();
    Ok(1.0 - ss_res / ss_tot)
}

/// Quantile with linear interpolation between order statistics of a sorted sample.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if frac == 0.0 || lo + 1 >= sorted.len() {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

/// `k` paired quantiles of `a` and `b` at `p = i/(k−1)`.
pub fn qq_pairs(a: &[f64], b: &[f64], k: usize) -> Result<Vec<(f64, f64)>> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("quantile sample", "must not be empty"));
    }
    if k < 2 {
        return Err(domain("quantile count", format!("must be at least 2, got {k}")));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(domain("quantile sample", "values must be finite"));
    }
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        s
    };
    let (sa, sb) = (sorted(a), sorted(b));
    Ok((0..k)
        .map(|i| {
            let p = i as f64 / (k - 1) as f64;
            (quantile_sorted(&sa, p), quantile_sorted(&sb, p))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CompareOptions {
    /// Number of Q-Q pairs to produce, if any.
    pub qq: Option<usize>,
    /// Resample the model onto the reference x grid before measuring distance.
    pub resample: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub model: String,
    pub reference: String,
    /// Fraction; multiply by 100 for percent.
    pub frechet_normalized: f64,
    pub frechet_raw: f64,
    pub r_squared: f64,
    pub resampled: bool,
    /// `(model quantile, reference quantile)`
    pub qq_pairs: Vec<(f64, f64)>,
}

/// Model values paired with reference values at the reference `x` grid.
/// Reference points outside the model's range are skipped.
pub fn paired_values(model: &Curve, reference: &Curve) -> Vec<(f64, f64)> {
    reference
        .points
        .iter()
        .filter_map(|&(x, y)| model.interpolate(x).map(|m| (y, m)))
        .collect()
}

/// Computes every agreement metric between `model` and `reference`.
pub fn compare(model: &Curve, reference: &Curve, options: CompareOptions) -> Result<AgreementReport> {
    let resampled;
    let model_for_distance = if options.resample {
        resampled = model.resample_onto(reference)?;
        &resampled
    } else {
        model
    };
    let frechet_normalized = normalized_frechet(model_for_distance, reference)?;
    let frechet_raw = discrete_frechet(model_for_distance, reference)?;
    let r_squared = r_squared(&paired_values(model, reference))?;
    let qq_pairs = match options.qq {
        Some(k) => {
            let a: Vec<f64> = model_for_distance.ys().collect();
            let b: Vec<f64> = reference.ys().collect();
            qq_pairs(&a, &b, k)?
        }
        None => Vec::new(),
    };
    Ok(AgreementReport {
        model: model.label.clone(),
        reference: reference.label.clone(),
        frechet_normalized,
        frechet_raw,
        r_squared,
        resampled: options.resample,
        qq_pairs,
    })
}
