//! Digraph-shaped gestures of sampled paths in `R^d`.
//!
//! A gesture over a digraph `(A, V, d0, d1)` puts one point `x_v` at every
//! vertex and one path `c_a` along every arrow, subject to
//! `c_a(0) = x_{d0(a)}` and `c_a(1) = x_{d1(a)}`. A pointwise map
//! `f: R^d -> R^e` acts on gestures by mapping every vertex point and
//! every path sample; the endpoint conditions carry over automatically.
//!
//! Paths are concrete sample sequences, not homotopy classes. Concatenation
//! drops the duplicated junction sample, which makes it strictly
//! associative.

mod adsr;
mod path;
mod text;

use std::fmt;

use thiserror::Error;

pub use adsr::{adsr_gesture, AdsrParams};
pub use path::{linear_band, map_path, Band, SampledPath};
pub use text::{format_gesture, parse_gesture, TextError};

/// Largest distance at which two points count as the same endpoint.
pub const ENDPOINT_TOLERANCE: f64 = 1e-9;

/// Where a pointwise map failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapLocation {
    Vertex { vertex: usize },
    Sample { sample: usize },
    ArrowSample { arrow: usize, sample: usize },
}

impl fmt::Display for MapLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapLocation::Vertex { vertex } => write!(f, "vertex {vertex}"),
            MapLocation::Sample { sample } => write!(f, "sample {sample}"),
            MapLocation::ArrowSample { arrow, sample } => write!(f, "arrow {arrow} sample {sample}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GestureError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a path needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("paths do not meet: endpoint gap {gap}")]
    EndpointMismatch { gap: f64 },
    #[error("sample count mismatch: expected {expected}, found {found}")]
    SampleCountMismatch { expected: usize, found: usize },
    #[error("a band needs at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("band row {row} leaves the fixed endpoints by {gap}")]
    BandEndpoint { row: usize, gap: f64 },
    #[error("digraph needs at least one vertex")]
    NoVertices,
    #[error("arrow {arrow} refers to vertex {vertex}, but there are only {vertex_count}")]
    VertexOutOfRange { arrow: usize, vertex: usize, vertex_count: usize },
    #[error("expected {expected} {what}, found {found}")]
    ShapeMismatch { what: &'static str, expected: usize, found: usize },
    #[error("arrow {arrow}: path {end} is {gap} away from vertex {vertex}")]
    ArrowEndpoint { arrow: usize, end: &'static str, vertex: usize, gap: f64 },
    #[error("map failed at {at}: {message}")]
    MapFailed { at: MapLocation, message: String },
    #[error("invalid envelope: {0}")]
    InvalidEnvelope(String),
}

/// A finite directed multigraph; loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self, GestureError> {
        if vertex_count == 0 {
            return Err(GestureError::NoVertices);
        }
        for (arrow, &(s, t)) in arrows.iter().enumerate() {
            for vertex in [s, t] {
                if vertex >= vertex_count {
                    return Err(GestureError::VertexOutOfRange { arrow, vertex, vertex_count });
                }
            }
        }
        Ok(Digraph { vertex_count, arrows })
    }

    /// `0 -> 1 -> ... -> n-1`.
    pub fn line(vertex_count: usize) -> Result<Self, GestureError> {
        Self::new(vertex_count, (1..vertex_count).map(|v| (v - 1, v)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn source(&self, arrow: usize) -> usize {
        self.arrows[arrow].0
    }

    pub fn target(&self, arrow: usize) -> usize {
        self.arrows[arrow].1
    }
}

/// A point of the gesture space over a digraph.
#[derive(Debug, Clone, PartialEq)]
pub struct Gesture {
    digraph: Digraph,
    dimension: usize,
    vertex_points: Vec<Vec<f64>>,
    arrow_paths: Vec<SampledPath>,
}

impl Gesture {
    /// Validates shapes and the endpoint law for every arrow.
    pub fn new(digraph: Digraph, vertex_points: Vec<Vec<f64>>, arrow_paths: Vec<SampledPath>) -> Result<Self, GestureError> {
        if vertex_points.len() != digraph.vertex_count() {
            return Err(GestureError::ShapeMismatch {
                what: "vertex points",
                expected: digraph.vertex_count(),
                found: vertex_points.len(),
            });
        }
        if arrow_paths.len() != digraph.arrow_count() {
            return Err(GestureError::ShapeMismatch {
                what: "arrow paths",
                expected: digraph.arrow_count(),
                found: arrow_paths.len(),
            });
        }
        let dimension = vertex_points[0].len();
        if dimension == 0 {
            return Err(GestureError::ZeroDimension);
        }
        for (index, p) in vertex_points.iter().enumerate() {
            if p.len() != dimension {
                return Err(GestureError::DimensionMismatch { expected: dimension, found: p.len() });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(GestureError::NonFinite { index });
            }
        }
        for (arrow, c) in arrow_paths.iter().enumerate() {
            if c.dimension() != dimension {
                return Err(GestureError::DimensionMismatch { expected: dimension, found: c.dimension() });
            }
            let (s, t) = digraph.arrows()[arrow];
            for (end, point, vertex) in [("start", c.first(), s), ("end", c.last(), t)] {
                let gap = path::distance(point, &vertex_points[vertex]);
                if !(gap <= ENDPOINT_TOLERANCE) {
                    return Err(GestureError::ArrowEndpoint { arrow, end, vertex, gap });
                }
            }
        }
        Ok(Gesture { digraph, dimension, vertex_points, arrow_paths })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_points(&self) -> &[Vec<f64>] {
        &self.vertex_points
    }

    pub fn arrow_paths(&self) -> &[SampledPath] {
        &self.arrow_paths
    }

    /// Re-runs the endpoint checks.
    pub fn revalidate(&self) -> Result<(), GestureError> {
        Gesture::new(self.digraph.clone(), self.vertex_points.clone(), self.arrow_paths.clone()).map(|_| ())
    }

    /// The induced map on gestures: `f` on every vertex point and along
    /// every arrow path.
    pub fn map<F, E>(&self, f: F) -> Result<Gesture, GestureError>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>, E>,
        E: fmt::Display,
    {
        let mut dimension = None;
        let mut vertex_points = Vec::with_capacity(self.vertex_points.len());
        for (vertex, p) in self.vertex_points.iter().enumerate() {
            let at = || MapLocation::Vertex { vertex };
            let image = f(p).map_err(|e| GestureError::MapFailed { at: at(), message: e.to_string() })?;
            path::check_image(&image, &mut dimension, at)?;
            vertex_points.push(image);
        }
        let arrow_paths = self
            .arrow_paths
            .iter()
            .enumerate()
            .map(|(arrow, c)| c.map_at(&f, |sample| MapLocation::ArrowSample { arrow, sample }))
            .collect::<Result<Vec<_>, _>>()?;
        Gesture::new(self.digraph.clone(), vertex_points, arrow_paths)
    }
}

/// Free-function form of [`Gesture::map`].
pub fn map_gesture<F, E>(f: F, gesture: &Gesture) -> Result<Gesture, GestureError>
where
    F: Fn(&[f64]) -> Result<Vec<f64>, E>,
    E: fmt::Display,
{
    gesture.map(f)
}
