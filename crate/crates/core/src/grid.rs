//! Evaluation grids over `u ∈ (0, ∞)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Sorted, deduplicated positive sample points with a human-readable description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    points: Vec<f64>,
    spec: String,
}

impl Grid {
    pub const STANDARD_LO: f64 = 1e-6;
    pub const STANDARD_HI: f64 = 1e6;
    pub const STANDARD_POINTS: usize = 20_001;
    pub const REFINEMENT_POINTS: usize = 64;
    pub const REFINEMENT_HALF_WIDTH: f64 = 1e-3;

    /// Log-spaced `[1e-6, 1e6]` with 20 001 points, plus 64 points in `[1 − 1e-3, 1 + 1e-3]`.
    pub fn standard() -> Grid {
        Grid::log_spaced(Self::STANDARD_LO, Self::STANDARD_HI, Self::STANDARD_POINTS)
            .expect("valid standard grid")
            .refined_near_one(Self::REFINEMENT_POINTS, Self::REFINEMENT_HALF_WIDTH)
    }

    pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Grid> {
        check_bounds(lo, hi, n)?;
        let (a, b) = (lo.log10(), hi.log10());
        let points = (0..n)
            .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1).max(1) as f64))
            .collect();
        Ok(Grid::from_points(points, format!("{lo}:{hi}:{n}:log")))
    }

    pub fn linear(lo: f64, hi: f64, n: usize) -> Result<Grid> {
        check_bounds(lo, hi, n)?;
        let points = (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64)
            .collect();
        Ok(Grid::from_points(points, format!("{lo}:{hi}:{n}")))
    }

    /// `lo:hi:points[:log]`; the literal `standard` selects [`Grid::standard`].
    pub fn parse_spec(spec: &str) -> Result<Grid> {
        let spec = spec.trim();
        if spec == "standard" {
            return Ok(Grid::standard());
        }
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Error::Parse(format!("grid spec `{spec}` is not lo:hi:points[:log]"));
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let lo: f64 = parts[0].parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].parse().map_err(|_| bad())?;
        let n: usize = parts[2].parse().map_err(|_| bad())?;
        match parts.get(3) {
            None => Grid::linear(lo, hi, n),
            Some(&"log") => Grid::log_spaced(lo, hi, n),
            Some(_) => Err(bad()),
        }
    }

    pub fn from_points(mut points: Vec<f64>, spec: String) -> Grid {
        points.retain(|u| u.is_finite() && *u > 0.0);
        points.sort_by(f64::total_cmp);
        points.dedup();
        Grid { points, spec }
    }

    /// Adds `count` evenly spaced points in `[1 − half_width, 1 + half_width]`.
    pub fn refined_near_one(self, count: usize, half_width: f64) -> Grid {
        let spec = format!("{}+{count}@1±{half_width}", self.spec);
        let mut points = self.points;
        let span = 2.0 * half_width;
        points.extend((0..count).map(|i| 1.0 - half_width + span * i as f64 / (count - 1).max(1) as f64));
        Grid::from_points(points, spec)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }
}

fn check_bounds(lo: f64, hi: f64, n: usize) -> Result<()> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || n < 2 {
        return Err(Error::Domain(format!("grid needs 0 < lo < hi and at least 2 points, got {lo}:{hi}:{n}")));
    }
    Ok(())
}
