use crate::error::{Error, Result};

/// Equally spaced points `xmin, xmin + h, …, xmax`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformGrid {
    xmin: f64,
    xmax: f64,
    n: usize,
}

impl UniformGrid {
    pub fn new(xmin: f64, xmax: f64, n: usize) -> Result<Self> {
        if !(xmin.is_finite() && xmax.is_finite()) || xmin >= xmax {
            return Err(Error::Grid(format!("need finite xmin < xmax, got [{xmin}, {xmax}]")));
        }
        if n < 3 {
            return Err(Error::Grid(format!("need at least 3 points, got {n}")));
        }
        Ok(UniformGrid { xmin, xmax, n })
    }

    /// The default working grid, `[-10, 10]` with 2001 points (h = 0.01).
    pub fn standard() -> Self {
        UniformGrid { xmin: -10.0, xmax: 10.0, n: 2001 }
    }

    /// Recovers a grid from explicit points, rejecting non-uniform spacing.
    pub fn from_points(xs: &[f64]) -> Result<Self> {
        if xs.len() < 3 {
            return Err(Error::Grid(format!("need at least 3 points, got {}", xs.len())));
        }
        let grid = UniformGrid::new(xs[0], xs[xs.len() - 1], xs.len())?;
        let h = grid.step();
        for (i, &x) in xs.iter().enumerate() {
            if (x - grid.point(i)).abs() > 1e-9 * h.max(x.abs() * f64::EPSILON * 1e3) {
                return Err(Error::Grid(format!(
                    "non-uniform grid: point {i} is {x}, expected {}",
                    grid.point(i)
                )));
            }
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }

    pub fn xmax(&self) -> f64 {
        self.xmax
    }

    pub fn step(&self) -> f64 {
        (self.xmax - self.xmin) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.xmax
        } else {
            self.xmin + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Index of the grid point equal to `x` (to a small fraction of a step).
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let t = (x - self.xmin) / self.step();
        let i = t.round();
        if i < 0.0 || i as usize >= self.n || (t - i).abs() > 1e-6 {
            None
        } else {
            Some(i as usize)
        }
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.n).map(|i| f(self.point(i))).collect()
    }
}
