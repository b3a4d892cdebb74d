use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of the volume form `dx⁰∧…∧dx^{n-1}` relative to the manifold
/// orientation, i.e. the parity of the ordered coordinate list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    fn from_sign(s: f64) -> Self {
        if s >= 0.0 {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }
}

/// A grid-aligned wall: the plane `x^axis = index · h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallPlane {
    pub axis: usize,
    pub index: usize,
}

/// Uniform periodic grid on a flat torus; the last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    points: Vec<usize>,
    lengths: Vec<f64>,
    orientation: Orientation,
    /// Set when this grid is the wall sub-grid of a higher-dimensional grid.
    parent_wall: Option<WallPlane>,
}

impl Grid {
    /// A periodic grid of dimension 1..=4 with `points[μ]` samples on `[0, lengths[μ])`.
    pub fn new(points: Vec<usize>, lengths: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() > 4 {
            return Err(Error::InvalidGrid(format!(
                "dimension {} outside 1..=4",
                points.len()
            )));
        }
        if points.len() != lengths.len() {
            return Err(Error::InvalidGrid(
                "points and lengths differ in length".into(),
            ));
        }
        for (&n, &l) in points.iter().zip(&lengths) {
            if n < 8 || n % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "{n} points per axis; need an even number >= 8"
                )));
            }
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::InvalidGrid(format!("axis length {l} must be positive")));
            }
        }
        Ok(Grid {
            points,
            lengths,
            orientation: Orientation::Positive,
            parent_wall: None,
        })
    }

    /// The even-dimensional torus `T^dim` with `n` points and circumference `length` per axis.
    pub fn torus(dim: usize, n: usize, length: f64) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::InvalidGrid(format!(
                "manifold dimension {dim}; expected 2 or 4"
            )));
        }
        Grid::new(vec![n; dim], vec![length; dim])
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn parent_wall(&self) -> Option<WallPlane> {
        self.parent_wall
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.points.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.lengths[axis] / self.points[axis] as f64
    }

    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        i as f64 * self.spacing(axis)
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).product()
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.points[axis + 1..].iter().product()
    }

    /// Multi-index of a flat point index.
    pub fn unravel(&self, mut p: usize) -> [usize; 4] {
        let mut idx = [0; 4];
        for a in (0..self.dim()).rev() {
            idx[a] = p % self.points[a];
            p /= self.points[a];
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.points)
            .fold(0, |acc, (&i, &n)| acc * n + i % n)
    }

    /// Coordinates of a flat point index.
    pub fn position(&self, p: usize) -> [f64; 4] {
        let idx = self.unravel(p);
        let mut x = [0.0; 4];
        for a in 0..self.dim() {
            x[a] = self.coordinate(a, idx[a]);
        }
        x
    }

    pub fn check_wall(&self, wall: WallPlane) -> Result<()> {
        if wall.axis >= self.dim() || wall.index >= self.points[wall.axis] {
            return Err(Error::InvalidGrid(format!(
                "wall {wall:?} does not lie on the grid"
            )));
        }
        Ok(())
    }

    /// Coordinate of the wall plane.
    pub fn wall_position(&self, wall: WallPlane) -> f64 {
        self.coordinate(wall.axis, wall.index)
    }

    /// The `(n-1)`-dimensional sub-grid of the wall, with the induced
    /// orientation `ds ∧ vol_Σ = vol_M`.
    pub fn wall_grid(&self, wall: WallPlane) -> Result<Grid> {
        self.check_wall(wall)?;
        if self.dim() < 2 {
            return Err(Error::InvalidGrid("a one-dimensional grid has no wall".into()));
        }
        let keep = |a: &usize| *a != wall.axis;
        let parity = if wall.axis.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(Grid {
            points: (0..self.dim()).filter(keep).map(|a| self.points[a]).collect(),
            lengths: (0..self.dim()).filter(keep).map(|a| self.lengths[a]).collect(),
            orientation: Orientation::from_sign(parity * self.orientation.sign()),
            parent_wall: Some(wall),
        })
    }

    /// Whether two grids carry identical samples (orientation included).
    pub fn same_as(&self, other: &Grid) -> bool {
        self == other
    }
}
