use super::{GestureError, MapLocation, ENDPOINT_TOLERANCE};

/// Uniform samples of a path `[0, 1] -> R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    dimension: usize,
    coords: Vec<f64>,
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl SampledPath {
    /// Builds a path from its sample points. Needs at least two points, all
    /// of the same positive dimension and finite.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, GestureError> {
        let dimension = points.first().map_or(0, Vec::len);
        let mut coords = Vec::with_capacity(points.len() * dimension);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dimension {
                return Err(GestureError::DimensionMismatch { expected: dimension, found: p.len() });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(GestureError::NonFinite { index });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dimension, coords)
    }

    pub fn from_flat(dimension: usize, coords: Vec<f64>) -> Result<Self, GestureError> {
        if dimension == 0 {
            return Err(GestureError::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dimension) {
            return Err(GestureError::DimensionMismatch { expected: dimension, found: coords.len() % dimension });
        }
        let count = coords.len() / dimension;
        if count < 2 {
            return Err(GestureError::TooFewSamples(count));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(GestureError::NonFinite { index: i / dimension });
        }
        Ok(SampledPath { dimension, coords })
    }

    /// The identity path at `point`.
    pub fn constant(point: &[f64], samples: usize) -> Result<Self, GestureError> {
        Self::from_flat(point.len(), point.repeat(samples))
    }

    /// `samples` evenly spaced points on the segment from `a` to `b`.
    pub fn linear(a: &[f64], b: &[f64], samples: usize) -> Result<Self, GestureError> {
        if a.len() != b.len() {
            return Err(GestureError::DimensionMismatch { expected: a.len(), found: b.len() });
        }
        if samples < 2 {
            return Err(GestureError::TooFewSamples(samples));
        }
        let last = (samples - 1) as f64;
        let mut coords = Vec::with_capacity(samples * a.len());
        coords.extend_from_slice(a);
        for k in 1..samples - 1 {
            let s = k as f64;
            coords.extend(a.iter().zip(b).map(|(x, y)| ((last - s) * x + s * y) / last));
        }
        coords.extend_from_slice(b);
        Self::from_flat(a.len(), coords)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn points(&self) -> impl DoubleEndedIterator<Item = &[f64]> + ExactSizeIterator + '_ {
        self.coords.chunks_exact(self.dimension)
    }

    pub fn first(&self) -> &[f64] {
        self.point(0)
    }

    pub fn last(&self) -> &[f64] {
        self.point(self.len() - 1)
    }

    /// `t -> sigma(1 - t)`.
    pub fn reverse(&self) -> SampledPath {
        let coords = self.points().rev().flatten().copied().collect();
        SampledPath { dimension: self.dimension, coords }
    }

    /// `self` followed by `next`, keeping a single copy of the junction point
    /// (the last point of `self`).
    pub fn concatenate(&self, next: &SampledPath) -> Result<SampledPath, GestureError> {
        if self.dimension != next.dimension {
            return Err(GestureError::DimensionMismatch { expected: self.dimension, found: next.dimension });
        }
        let gap = distance(self.last(), next.first());
        if !(gap <= ENDPOINT_TOLERANCE) {
            return Err(GestureError::EndpointMismatch { gap });
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&next.coords[next.dimension..]);
        Ok(SampledPath { dimension: self.dimension, coords })
    }

    /// Applies `f` to every sample.
    pub fn map<F, E>(&self, f: F) -> Result<SampledPath, GestureError>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>, E>,
        E: std::fmt::Display,
    {
        self.map_at(&f, |sample| MapLocation::Sample { sample })
    }

    pub(crate) fn map_at<F, E>(&self, f: &F, at: impl Fn(usize) -> MapLocation) -> Result<SampledPath, GestureError>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>, E>,
        E: std::fmt::Display,
    {
        let mut dimension = None;
        let mut coords = Vec::new();
        for (i, p) in self.points().enumerate() {
            let image = f(p).map_err(|e| GestureError::MapFailed { at: at(i), message: e.to_string() })?;
            check_image(&image, &mut dimension, || at(i))?;
            coords.extend_from_slice(&image);
        }
        Ok(SampledPath { dimension: dimension.expect("paths have samples"), coords })
    }
}

pub(crate) fn check_image(
    image: &[f64],
    dimension: &mut Option<usize>,
    at: impl Fn() -> MapLocation,
) -> Result<(), GestureError> {
    let fail = |message: String| GestureError::MapFailed { at: at(), message };
    if image.is_empty() {
        return Err(fail("map returned an empty point".into()));
    }
    if image.iter().any(|c| !c.is_finite()) {
        return Err(fail("map returned a non-finite coordinate".into()));
    }
    match *dimension {
        Some(d) if d != image.len() => Err(fail(format!("map returned dimension {}, expected {d}", image.len()))),
        _ => {
            *dimension = Some(image.len());
            Ok(())
        }
    }
}

/// Path-level induced map: `sigma -> f . sigma`.
pub fn map_path<F, E>(f: F, path: &SampledPath) -> Result<SampledPath, GestureError>
where
    F: Fn(&[f64]) -> Result<Vec<f64>, E>,
    E: std::fmt::Display,
{
    path.map(f)
}

/// A sampled homotopy between two paths with common endpoints: row `j` is
/// the path at homotopy parameter `j / (K - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    rows: Vec<SampledPath>,
}

impl Band {
    /// Checks shape agreement and that every row shares the boundary
    /// endpoints.
    pub fn new(rows: Vec<SampledPath>) -> Result<Self, GestureError> {
        if rows.len() < 2 {
            return Err(GestureError::TooFewRows(rows.len()));
        }
        let (d, n) = (rows[0].dimension(), rows[0].len());
        let (start, end) = (rows[0].first().to_vec(), rows[0].last().to_vec());
        for (row, r) in rows.iter().enumerate() {
            if r.dimension() != d {
                return Err(GestureError::DimensionMismatch { expected: d, found: r.dimension() });
            }
            if r.len() != n {
                return Err(GestureError::SampleCountMismatch { expected: n, found: r.len() });
            }
            let gap = distance(r.first(), &start).max(distance(r.last(), &end));
            if !(gap <= ENDPOINT_TOLERANCE) {
                return Err(GestureError::BandEndpoint { row, gap });
            }
        }
        Ok(Band { rows })
    }

    pub fn rows(&self) -> &[SampledPath] {
        &self.rows
    }
}

/// Samplewise straight-line homotopy from `from` to `to` with `rows` rows.
pub fn linear_band(from: &SampledPath, to: &SampledPath, rows: usize) -> Result<Band, GestureError> {
    if rows < 2 {
        return Err(GestureError::TooFewRows(rows));
    }
    if from.dimension() != to.dimension() {
        return Err(GestureError::DimensionMismatch { expected: from.dimension(), found: to.dimension() });
    }
    if from.len() != to.len() {
        return Err(GestureError::SampleCountMismatch { expected: from.len(), found: to.len() });
    }
    let gap = distance(from.first(), to.first()).max(distance(from.last(), to.last()));
    if !(gap <= ENDPOINT_TOLERANCE) {
        return Err(GestureError::EndpointMismatch { gap });
    }
    let last = (rows - 1) as f64;
    let out = (0..rows)
        .map(|j| {
            if j == 0 {
                return from.clone();
            }
            if j == rows - 1 {
                return to.clone();
            }
            let s = j as f64;
            let mut coords: Vec<f64> = from
                .coords
                .iter()
                .zip(&to.coords)
                .map(|(a, b)| ((last - s) * a + s * b) / last)
                .collect();
            // Pin the shared endpoints to the first boundary exactly.
            let (d, n) = (from.dimension, coords.len());
            coords[..d].copy_from_slice(from.first());
            coords[n - d..].copy_from_slice(from.last());
            SampledPath { dimension: from.dimension, coords }
        })
        .collect();
    Band::new(out)
}
