//! Points in the search space and the hypercube they live in.

use std::ops::Deref;

use crate::rng::RngStream;
use crate::{Error, Result};

/// A position in a D-dimensional real search space.
///
/// Constructed through [`Point::new`], which rejects empty or non-finite
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("dimension must be positive".into()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!(
                "coordinate {i} is not finite ({})",
                coords[i]
            )));
        }
        Ok(Point(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    // Internal constructor for values produced by arithmetic on valid points.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Point(coords)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Scalar bounds applied to every dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    lower: f64,
    upper: f64,
}

impl Bounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::InvalidBounds { lower, upper });
        }
        Ok(Bounds { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn range_length(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter().all(|&c| c >= self.lower && c <= self.upper)
    }
}

/// L2 distance between two points of equal dimension.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(distance_unchecked(a, b))
}

pub(crate) fn distance_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Projects every coordinate into `[lower, upper]`.
pub fn clamp_to_bounds(p: &Point, bounds: Bounds) -> Point {
    let mut coords = p.0.clone();
    clamp_in_place(&mut coords, bounds);
    Point(coords)
}

pub(crate) fn clamp_in_place(coords: &mut [f64], bounds: Bounds) {
    for c in coords {
        *c = c.clamp(bounds.lower, bounds.upper);
    }
}

/// Draws a point with each coordinate uniform on `[lower, upper]`.
pub fn random_point_in_bounds(bounds: Bounds, dim: usize, rng: &mut RngStream) -> Result<Point> {
    if dim == 0 {
        return Err(Error::InvalidPoint("dimension must be positive".into()));
    }
    let coords = (0..dim)
        .map(|_| bounds.lower + rng.uniform() * bounds.range_length())
        .collect();
    Ok(Point(coords))
}
