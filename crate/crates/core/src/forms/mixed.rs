use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use super::{ext_d, integrate, restrict_to_wall, wedge, Domain, Form};
use crate::error::{Error, Result};
use crate::grid::{Grid, WallPlane};
use crate::lie::{LieValue, ValueSpace};

/// An inhomogeneous form: at most one homogeneous part per degree.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedForm {
    grid: Grid,
    space: ValueSpace,
    parts: BTreeMap<usize, Form>,
}

impl MixedForm {
    pub fn new(grid: &Grid, space: ValueSpace) -> Self {
        MixedForm { grid: grid.clone(), space, parts: BTreeMap::new() }
    }

    /// The constant 0-form `c` (times the identity for matrix spaces).
    pub fn constant(grid: &Grid, space: ValueSpace, c: C64) -> Self {
        let mut m = MixedForm::new(grid, space);
        let value = LieValue::identity(space.size()).scale(c);
        m.parts.insert(
            0,
            Form::constant(grid, 0, space, &[(&[], value)]).expect("0-forms always fit"),
        );
        m
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn space(&self) -> ValueSpace {
        self.space
    }

    /// Add a homogeneous part (summing with an existing part of that degree).
    pub fn insert(&mut self, form: Form) -> Result<()> {
        if form.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        if form.space() != self.space {
            return Err(Error::ValueSpaceMismatch(self.space, form.space()));
        }
        let deg = form.degree();
        let merged = match self.parts.remove(&deg) {
            Some(old) => old.add(&form)?,
            None => form,
        };
        self.parts.insert(deg, merged);
        Ok(())
    }

    pub fn with(mut self, form: Form) -> Result<Self> {
        self.insert(form)?;
        Ok(self)
    }

    pub fn part(&self, degree: usize) -> Option<&Form> {
        self.parts.get(&degree)
    }

    /// The degree part, or a zero form of that degree.
    pub fn part_or_zero(&self, degree: usize) -> Result<Form> {
        match self.parts.get(&degree) {
            Some(f) => Ok(f.clone()),
            None => Form::zero(&self.grid, degree, self.space),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn parts(&self) -> impl Iterator<Item = &Form> {
        self.parts.values()
    }

    fn combine(&self, other: &MixedForm, sign: f64) -> Result<MixedForm> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.space != other.space {
            return Err(Error::ValueSpaceMismatch(self.space, other.space));
        }
        let mut out = self.clone();
        for f in other.parts.values() {
            out.insert(f.scale(C64::new(sign, 0.0)))?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &MixedForm) -> Result<MixedForm> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &MixedForm) -> Result<MixedForm> {
        self.combine(other, -1.0)
    }

    pub fn scale(&self, s: C64) -> MixedForm {
        let parts = self.parts.iter().map(|(&k, f)| (k, f.scale(s))).collect();
        MixedForm { grid: self.grid.clone(), space: self.space, parts }
    }

    /// Graded product, truncated at the grid dimension.
    pub fn wedge(&self, other: &MixedForm) -> Result<MixedForm> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let space = self.space.compose(other.space)?;
        let mut out = MixedForm::new(&self.grid, space);
        for a in self.parts.values() {
            for b in other.parts.values() {
                if a.degree() + b.degree() <= self.grid.dim() {
                    out.insert(wedge(a, b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative of every part; top-degree parts are closed.
    pub fn ext_d(&self) -> Result<MixedForm> {
        let mut out = MixedForm::new(&self.grid, self.space);
        for f in self.parts.values() {
            if f.degree() < self.grid.dim() {
                out.insert(ext_d(f)?)?;
            }
        }
        Ok(out)
    }

    pub fn restrict_to_wall(&self, wall: WallPlane) -> Result<MixedForm> {
        let sub = self.grid.wall_grid(wall)?;
        let mut out = MixedForm::new(&sub, self.space);
        for f in self.parts.values() {
            if f.degree() < self.grid.dim() {
                out.insert(restrict_to_wall(f, wall)?)?;
            }
        }
        Ok(out)
    }

    /// Pointwise trace of every part.
    pub fn trace(&self) -> MixedForm {
        let parts = self.parts.iter().map(|(&k, f)| (k, f.trace())).collect();
        MixedForm { grid: self.grid.clone(), space: ValueSpace::Scalar, parts }
    }

    /// Integral of the top-degree part (zero when absent).
    pub fn integrate_top(&self, domain: Domain) -> Result<C64> {
        match self.parts.get(&self.grid.dim()) {
            Some(f) => integrate(f, domain),
            None => Ok(C64::new(0.0, 0.0)),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.parts.values().map(Form::max_norm).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.parts.values().map(Form::max_imag).fold(0.0, f64::max)
    }

    /// Max-norm of the difference over all degrees.
    pub fn max_diff(&self, other: &MixedForm) -> Result<f64> {
        Ok(self.sub(other)?.max_norm())
    }
}
