use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniformly spaced, inclusive 1-D grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl UniformGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if max < min {
            return Err(Error::InvalidGrid(format!("max {max} < min {min}")));
        }
        if points == 0 {
            return Err(Error::InvalidGrid("at least one point required".into()));
        }
        Ok(Self { min, max, points })
    }

    /// Grid on [−half_span, half_span].
    pub fn symmetric(half_span: f64, points: usize) -> Result<Self> {
        Self::new(-half_span, half_span, points)
    }

    pub fn step(&self) -> f64 {
        if self.points < 2 {
            0.0
        } else {
            (self.max - self.min) / (self.points - 1) as f64
        }
    }

    /// Grid values; a degenerate range (min == max) collapses to one point.
    pub fn values(&self) -> Vec<f64> {
        if self.min == self.max || self.points == 1 {
            return vec![self.min];
        }
        // Weighted form keeps symmetric grids exactly antisymmetric.
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let i = i as f64;
                (self.min * (last - i) + self.max * i) / last
            })
            .collect()
    }
}

/// Trapezoidal integral of samples `ys` taken at abscissae `xs`.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

pub(crate) fn check_ordered(xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("non-finite grid value".into()));
    }
    if xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid("grid must be ordered".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g = UniformGrid::symmetric(0.1, 2001).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 2001);
        assert_eq!(v[0], -0.1);
        assert_eq!(v[2000], 0.1);
        assert_eq!(v[1000], 0.0);
    }

    #[test]
    fn degenerate_range_is_single_point() {
        assert_eq!(UniformGrid::new(0.2, 0.2, 7).unwrap().values(), vec![0.2]);
        assert!(UniformGrid::new(0.3, 0.2, 7).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn trapezoid_of_linear_is_exact() {
        let g = UniformGrid::new(0.0, 2.0, 11).unwrap().values();
        let y: Vec<f64> = g.iter().map(|x| 3.0 * x + 1.0).collect();
        assert!((trapezoid(&g, &y) - 8.0).abs() < 1e-12);
    }
}
