//! Matrix-valued differential forms sampled on periodic grids.

pub(crate) mod basis;
mod mixed;
pub mod spectral;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

pub use mixed::MixedForm;

use crate::error::{Error, Result};
use crate::exec;
use crate::grid::{Grid, WallPlane};
use crate::lie::{mul_acc, trace_of, LieValue, ValueSpace};
use basis::Mask;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Which one-sided limit a discontinuous wall field is sampled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `s → s₀⁺`
    Plus,
    /// `s → s₀⁻`
    Minus,
}

/// Integration domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// The whole periodic grid.
    Full,
    /// A wall sub-grid produced by [`restrict_to_wall`].
    Wall,
    /// The open half `{s₀ < s < s₀ + L/2}`; wall-plane samples are read as `s₀⁺` limits.
    HalfPlus(WallPlane),
    /// The open half `{s₀ - L/2 < s < s₀}`; wall-plane samples are read as `s₀⁻` limits.
    HalfMinus(WallPlane),
}

/// A homogeneous `p`-form with matrix coefficients.
///
/// Components are stored for canonically ordered axis tuples only, each as
/// a point-major array of `s×s` row-major matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "FormRecord", try_from = "FormRecord")]
pub struct Form {
    grid: Grid,
    degree: usize,
    space: ValueSpace,
    comps: Vec<Vec<C64>>,
}

impl Form {
    pub fn zero(grid: &Grid, degree: usize, space: ValueSpace) -> Result<Self> {
        if degree > grid.dim() {
            return Err(Error::DegreeOverflow { lhs: degree, rhs: 0, dim: grid.dim() });
        }
        let block = space.size() * space.size();
        let comps = vec![vec![ZERO; grid.len() * block]; basis::binomial(grid.dim(), degree)];
        Ok(Form { grid: grid.clone(), degree, space, comps })
    }

    /// Build from a pointwise rule `f(axes, position, out)` writing the `s×s`
    /// coefficient of `dx^{axes}` at `position`.
    pub fn from_fn<F>(grid: &Grid, degree: usize, space: ValueSpace, f: F) -> Result<Self>
    where
        F: Fn(&[usize], &[f64], &mut [C64]) + Sync + Send,
    {
        let mut form = Form::zero(grid, degree, space)?;
        let block = form.block();
        let dim = grid.dim();
        for (c, &mask) in basis::basis(dim, degree).iter().enumerate() {
            let ax = basis::axes(mask);
            exec::fill_blocks(&mut form.comps[c], block, |p, out| {
                let x = grid.position(p);
                f(&ax, &x[..dim], out)
            });
        }
        Ok(form)
    }

    /// A scalar 0-form `f(x)`.
    pub fn scalar_function<F>(grid: &Grid, f: F) -> Self
    where
        F: Fn(&[f64]) -> C64 + Sync + Send,
    {
        Form::from_fn(grid, 0, ValueSpace::Scalar, |_, x, out| out[0] = f(x))
            .expect("0-forms always fit")
    }

    /// A form with constant coefficients; axis tuples may be unordered.
    pub fn constant(
        grid: &Grid,
        degree: usize,
        space: ValueSpace,
        terms: &[(&[usize], LieValue)],
    ) -> Result<Self> {
        let mut form = Form::zero(grid, degree, space)?;
        let s = space.size();
        for (axes, value) in terms {
            if axes.len() != degree || axes.iter().any(|&a| a >= grid.dim()) {
                return Err(Error::InvalidInput(format!(
                    "axis tuple {axes:?} is not a {degree}-form basis element"
                )));
            }
            if value.size() != s {
                return Err(Error::InvalidInput(format!(
                    "coefficient of size {} in a {space}-valued form",
                    value.size()
                )));
            }
            let Some(sign) = basis::sort_sign(axes) else { continue };
            let c = basis::position(grid.dim(), degree, basis::mask_of(axes));
            let v = value.as_slice();
            for chunk in form.comps[c].chunks_mut(s * s) {
                chunk.iter_mut().zip(v).for_each(|(o, x)| *o += sign * x);
            }
        }
        Ok(form)
    }

    /// Assemble from raw component arrays in canonical order.
    pub fn from_components(
        grid: &Grid,
        degree: usize,
        space: ValueSpace,
        comps: Vec<Vec<C64>>,
    ) -> Result<Self> {
        let block = space.size() * space.size();
        if degree > grid.dim()
            || comps.len() != basis::binomial(grid.dim(), degree)
            || comps.iter().any(|c| c.len() != grid.len() * block)
        {
            return Err(Error::InvalidInput("component arrays do not match the grid".into()));
        }
        Ok(Form { grid: grid.clone(), degree, space, comps })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> ValueSpace {
        self.space
    }

    fn block(&self) -> usize {
        self.space.size() * self.space.size()
    }

    /// Canonical axis tuples and their coefficient arrays.
    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, &[C64])> {
        basis::basis(self.grid.dim(), self.degree)
            .into_iter()
            .map(basis::axes)
            .zip(self.comps.iter().map(|c| c.as_slice()))
    }

    /// Coefficient array of `dx^{axes}` with its reordering sign; `None` for repeated axes.
    pub fn component(&self, axes: &[usize]) -> Option<(f64, &[C64])> {
        if axes.len() != self.degree || axes.iter().any(|&a| a >= self.grid.dim()) {
            return None;
        }
        let sign = basis::sort_sign(axes)?;
        let c = basis::position(self.grid.dim(), self.degree, basis::mask_of(axes));
        Some((sign, &self.comps[c]))
    }

    /// The coefficient of `dx^{axes}` at point `p` (zero for repeated axes).
    pub fn value_at(&self, axes: &[usize], p: usize) -> LieValue {
        let s = self.space.size();
        match self.component(axes) {
            Some((sign, data)) => LieValue::from_row_major(
                data[p * s * s..(p + 1) * s * s].iter().map(|z| z * sign).collect(),
            ),
            None => LieValue::zeros(s),
        }
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree { expected: self.degree, found: other.degree });
        }
        if self.space != other.space {
            return Err(Error::ValueSpaceMismatch(self.space, other.space));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Form, f: impl Fn(C64, C64) -> C64) -> Result<Form> {
        self.check_same(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
            .collect();
        Ok(Form { comps, ..self.clone_shell() })
    }

    fn clone_shell(&self) -> Form {
        Form { grid: self.grid.clone(), degree: self.degree, space: self.space, comps: Vec::new() }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: C64) -> Form {
        let comps = self.comps.iter().map(|c| c.iter().map(|z| z * s).collect()).collect();
        Form { comps, ..self.clone_shell() }
    }

    /// Multiply every coefficient by the scalar field `f(p)` (by point index).
    pub fn scale_pointwise(&self, f: impl Fn(usize) -> C64) -> Form {
        let block = self.block();
        let comps = self
            .comps
            .iter()
            .map(|c| c.iter().enumerate().map(|(k, z)| z * f(k / block)).collect())
            .collect();
        Form { comps, ..self.clone_shell() }
    }

    /// Pointwise trace, giving a scalar-valued form.
    pub fn trace(&self) -> Form {
        let s = self.space.size();
        let comps = self
            .comps
            .iter()
            .map(|c| c.chunks(s * s).map(|m| trace_of(m, s)).collect())
            .collect();
        Form { space: ValueSpace::Scalar, comps, ..self.clone_shell() }
    }

    /// Pointwise conjugation `g X g⁻¹` by a constant invertible matrix.
    pub fn conjugate(&self, g: &LieValue, g_inv: &LieValue) -> Form {
        let s = self.space.size();
        assert_eq!(g.size(), s);
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let mut out = vec![ZERO; c.len()];
                for (o, m) in out.chunks_mut(s * s).zip(c.chunks(s * s)) {
                    let mut tmp = vec![ZERO; s * s];
                    mul_acc(&mut tmp, g.as_slice(), s, m, s, ONE);
                    mul_acc(o, &tmp, s, g_inv.as_slice(), s, ONE);
                }
                out
            })
            .collect();
        Form { comps, ..self.clone_shell() }
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.comps.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus of an imaginary part (for trace-evaluated forms).
    pub fn max_imag(&self) -> f64 {
        self.comps.iter().flatten().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Max-norm of `self - other`.
    pub fn max_diff(&self, other: &Form) -> Result<f64> {
        Ok(self.sub(other)?.max_norm())
    }

    /// Max-norm of `X + X†` over all coefficients.
    pub fn anti_hermitian_defect(&self) -> f64 {
        let s = self.space.size();
        let mut worst: f64 = 0.0;
        for c in &self.comps {
            for m in c.chunks(s * s) {
                for i in 0..s {
                    for j in 0..s {
                        worst = worst.max((m[i * s + j] + m[j * s + i].conj()).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Graded product with pointwise matrix multiplication.
pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let dim = a.grid.dim();
    if a.degree + b.degree > dim {
        return Err(Error::DegreeOverflow { lhs: a.degree, rhs: b.degree, dim });
    }
    let space = a.space.compose(b.space)?;
    let (sa, sb, s) = (a.space.size(), b.space.size(), space.size());
    let mut out = Form::zero(&a.grid, a.degree + b.degree, space)?;
    let ba = basis::basis(dim, a.degree);
    let bb = basis::basis(dim, b.degree);
    for (k, &mk) in basis::basis(dim, out.degree).iter().enumerate() {
        let terms: Vec<(usize, usize, f64)> = ba
            .iter()
            .enumerate()
            .filter(|(_, &mi)| mi & mk == mi)
            .map(|(i, &mi)| {
                let mj: Mask = mk & !mi;
                let j = bb.iter().position(|&m| m == mj).expect("complement is a basis element");
                (i, j, basis::wedge_sign(mi, mj))
            })
            .collect();
        exec::fill_blocks(&mut out.comps[k], s * s, |p, o| {
            for &(i, j, sign) in &terms {
                let x = &a.comps[i][p * sa * sa..(p + 1) * sa * sa];
                let y = &b.comps[j][p * sb * sb..(p + 1) * sb * sb];
                mul_acc(o, x, sa, y, sb, C64::new(sign, 0.0));
            }
        });
    }
    Ok(out)
}

/// Exterior derivative with spectral differentiation on every axis.
pub fn ext_d(a: &Form) -> Result<Form> {
    let dim = a.grid.dim();
    if a.degree >= dim {
        return Err(Error::TopDegree(a.degree));
    }
    let block = a.block();
    let mut out = Form::zero(&a.grid, a.degree + 1, a.space)?;
    let bin = basis::basis(dim, a.degree);
    let bout = basis::basis(dim, a.degree + 1);
    for (i, &mi) in bin.iter().enumerate() {
        if a.comps[i].iter().all(|z| *z == ZERO) {
            continue;
        }
        for mu in (0..dim).filter(|&mu| mi & (1 << mu) == 0) {
            let deriv = spectral::derivative(&a.grid, &a.comps[i], block, mu);
            let mk = mi | (1 << mu);
            let k = bout.iter().position(|&m| m == mk).expect("basis element");
            let sign = basis::wedge_sign(1 << mu, mi);
            out.comps[k].iter_mut().zip(&deriv).for_each(|(o, d)| *o += sign * d);
        }
    }
    Ok(out)
}

/// Trapezoid weights along the wall axis for half-domain integrals.
fn half_weights(n: usize, i0: usize, plus: bool) -> Vec<f64> {
    let mut w = vec![0.0; n];
    for (j, wj) in w.iter_mut().enumerate() {
        let d = (j + n - i0) % n;
        let in_half = if plus { d <= n / 2 } else { d == 0 || d >= n / 2 };
        if in_half {
            *wj = if d == 0 || d == n / 2 { 0.5 } else { 1.0 };
        }
    }
    w
}

/// Integrate a scalar-valued top-degree form over a domain.
///
/// Periodic trapezoid sums; half domains use end-point weights so that the
/// two halves of a continuous integrand add up to the full-torus sum.
pub fn integrate(a: &Form, domain: Domain) -> Result<C64> {
    let dim = a.grid.dim();
    if a.degree != dim {
        return Err(Error::WrongDegree { expected: dim, found: a.degree });
    }
    if a.space.size() != 1 {
        return Err(Error::InvalidInput(format!(
            "integrand must be scalar-valued, found {}",
            a.space
        )));
    }
    let data = &a.comps[0];
    let weights = match domain {
        Domain::Full => None,
        Domain::Wall => {
            if a.grid.parent_wall().is_none() {
                return Err(Error::InvalidInput("form does not live on a wall grid".into()));
            }
            None
        }
        Domain::HalfPlus(w) | Domain::HalfMinus(w) => {
            a.grid.check_wall(w)?;
            let plus = matches!(domain, Domain::HalfPlus(_));
            Some((w.axis, half_weights(a.grid.points()[w.axis], w.index, plus)))
        }
    };
    let mut sum = ZERO;
    match weights {
        None => data.iter().for_each(|z| sum += z),
        Some((axis, w)) => {
            let n = a.grid.points()[axis];
            let stride = a.grid.stride(axis);
            for (p, z) in data.iter().enumerate() {
                sum += z * w[(p / stride) % n];
            }
        }
    }
    Ok(sum * a.grid.cell_volume() * a.grid.orientation().sign())
}

/// Pull back to the wall grid: drop components containing `ds` and sample the plane.
pub fn restrict_to_wall(a: &Form, wall: WallPlane) -> Result<Form> {
    let sub = a.grid.wall_grid(wall)?;
    let dim = a.grid.dim();
    if a.degree > dim - 1 {
        return Err(Error::WrongDegree { expected: dim - 1, found: a.degree });
    }
    let block = a.block();
    let mut out = Form::zero(&sub, a.degree, a.space)?;
    let stride = a.grid.stride(wall.axis);
    let n = a.grid.points()[wall.axis];
    let bsub = basis::basis(dim - 1, a.degree);
    for (i, &mi) in basis::basis(dim, a.degree).iter().enumerate() {
        if mi & (1 << wall.axis) != 0 {
            continue;
        }
        let shifted: Vec<usize> = basis::axes(mi)
            .into_iter()
            .map(|x| if x > wall.axis { x - 1 } else { x })
            .collect();
        let k = bsub.iter().position(|&m| m == basis::mask_of(&shifted)).expect("basis");
        for q in 0..sub.len() {
            let outer = q / stride;
            let inner = q % stride;
            let p = (outer * n + wall.index) * stride + inner;
            out.comps[k][q * block..(q + 1) * block]
                .copy_from_slice(&a.comps[i][p * block..(p + 1) * block]);
        }
    }
    Ok(out)
}

/// Extend a wall form to the full grid, constant along the wall axis.
pub fn extend_from_wall(a: &Form, grid: &Grid, wall: WallPlane) -> Result<Form> {
    if grid.wall_grid(wall)? != *a.grid() {
        return Err(Error::GridMismatch);
    }
    let dim = grid.dim();
    let block = a.block();
    let mut out = Form::zero(grid, a.degree, a.space)?;
    let stride = grid.stride(wall.axis);
    let n = grid.points()[wall.axis];
    let bfull = basis::basis(dim, a.degree);
    for (i, &mi) in basis::basis(dim - 1, a.degree).iter().enumerate() {
        let lifted: Vec<usize> = basis::axes(mi)
            .into_iter()
            .map(|x| if x >= wall.axis { x + 1 } else { x })
            .collect();
        let k = bfull.iter().position(|&m| m == basis::mask_of(&lifted)).expect("basis");
        for p in 0..grid.len() {
            let q = (p / (stride * n)) * stride + p % stride;
            out.comps[k][p * block..(p + 1) * block]
                .copy_from_slice(&a.comps[i][q * block..(q + 1) * block]);
        }
    }
    Ok(out)
}

/// JSON field format: one record per canonical component, real and imaginary parts split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormRecord {
    pub grid: Grid,
    pub degree: usize,
    pub space: ValueSpace,
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub axes: Vec<usize>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<Form> for FormRecord {
    fn from(f: Form) -> Self {
        let components = f
            .components()
            .map(|(axes, data)| ComponentRecord {
                axes,
                re: data.iter().map(|z| z.re).collect(),
                im: data.iter().map(|z| z.im).collect(),
            })
            .collect();
        FormRecord { grid: f.grid, degree: f.degree, space: f.space, components }
    }
}

impl TryFrom<FormRecord> for Form {
    type Error = Error;

    fn try_from(r: FormRecord) -> Result<Form> {
        let expected = basis::basis(r.grid.dim(), r.degree);
        if r.components.len() != expected.len() {
            return Err(Error::InvalidInput("wrong number of components".into()));
        }
        let mut comps = Vec::with_capacity(expected.len());
        for (c, &m) in r.components.iter().zip(&expected) {
            if basis::mask_of(&c.axes) != m || c.re.len() != c.im.len() {
                return Err(Error::InvalidInput(format!("bad component {:?}", c.axes)));
            }
            comps.push(c.re.iter().zip(&c.im).map(|(&re, &im)| C64::new(re, im)).collect());
        }
        Form::from_components(&r.grid, r.degree, r.space, comps)
    }
}
