//! Domain-wall configurations on a flat torus.
//!
//! Near the wall the connection is `A⁺ = A⁻ + θ(s)𝒜`. On the torus the step
//! is closed periodically: the global field is `A_smooth + h(s)𝒜`, where
//! `h = 1 − f(((s − s₀) mod L)/L)` equals 1 just above the wall, decays
//! smoothly through the bulk, and equals 0 just below it. Nothing is
//! differentiated across the wall: `d(h𝒜) = h′ ds∧𝒜 + h d𝒜` with `h′` exact.
//!
//! On `T²` a background with `m` flux quanta per colour is added as a
//! Landau-gauge potential `A_L = −i a_L(s) dy ⊗ 1`, `a_L` linear in `s`, with
//! the transition function `ψ(s + L_s, y) = e^{iκy} ψ(s, y)`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::charclasses::{curvature, pontryagin_density};
use crate::error::{Error, Result};
use crate::forms::{ext_d, restrict_to_wall, wedge, Domain, Form, Side};
use crate::grid::{Grid, WallPlane};
use crate::lie::{LieValue, ValueSpace};
use crate::profile::SmoothProfile;

/// Metric near the wall. Only flat product metrics are supported, for which
/// the regularized metric and connection coincide with the originals and the
/// extrinsic curvature trace vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    #[default]
    FlatProduct,
}

impl Metric {
    /// Trace of the extrinsic curvature of the wall.
    pub fn extrinsic_curvature_trace(self) -> f64 {
        0.0
    }
}

/// A complete domain-wall configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct WallData {
    grid: Grid,
    wall: WallPlane,
    rank: usize,
    gauge_smooth: Form,
    gauge_jump: Form,
    flux_quanta: i64,
    frame_smooth: Form,
    frame_jump: Form,
    metric: Metric,
    orientation: f64,
    profile: SmoothProfile,
}

/// Builder for [`WallData`]; unspecified fields are zero.
#[derive(Debug, Clone)]
pub struct WallDataBuilder {
    grid: Grid,
    wall: WallPlane,
    rank: usize,
    gauge_smooth: Option<Form>,
    gauge_jump: Option<Form>,
    frame_smooth: Option<Form>,
    frame_jump: Option<Form>,
    flux_quanta: i64,
    orientation: f64,
}

impl WallDataBuilder {
    /// Smooth periodic part `A⁻` of the gauge connection.
    pub fn gauge_smooth(mut self, a: Form) -> Self {
        self.gauge_smooth = Some(a);
        self
    }

    /// Jump density `𝒜`.
    pub fn gauge_jump(mut self, a: Form) -> Self {
        self.gauge_jump = Some(a);
        self
    }

    /// Smooth part `Γ⁻` of the frame connection.
    pub fn frame_smooth(mut self, g: Form) -> Self {
        self.frame_smooth = Some(g);
        self
    }

    /// Frame-connection jump `Γ₀`.
    pub fn frame_jump(mut self, g: Form) -> Self {
        self.frame_jump = Some(g);
        self
    }

    /// Background flux quanta per colour (two-torus only).
    pub fn flux_quanta(mut self, m: i64) -> Self {
        self.flux_quanta = m;
        self
    }

    /// Orientation flag (±1) of 𝓜 relative to the grid's coordinate order.
    /// Reversing it flips the bulk integral, the surface term and the chirality grading.
    pub fn orientation(mut self, sign: f64) -> Self {
        self.orientation = sign;
        self
    }

    pub fn build(self) -> Result<WallData> {
        let grid = self.grid;
        let n = grid.dim();
        if n != 2 && n != 4 {
            return Err(Error::InvalidGrid(format!("manifold dimension {n}; expected 2 or 4")));
        }
        grid.check_wall(self.wall)?;
        if self.rank == 0 {
            return Err(Error::InvalidInput("gauge rank must be positive".into()));
        }
        if self.orientation != 1.0 && self.orientation != -1.0 {
            return Err(Error::InvalidInput("orientation flag must be +1 or -1".into()));
        }
        if self.flux_quanta != 0 && n != 2 {
            return Err(Error::Unsupported("background flux is only supported on T²".into()));
        }
        let gauge = ValueSpace::Gauge { rank: self.rank };
        let frame = ValueSpace::Frame { dim: n };
        let check = |f: Option<Form>, space: ValueSpace, what: &str| -> Result<Form> {
            match f {
                None => Form::zero(&grid, 1, space),
                Some(f) => {
                    if f.grid() != &grid {
                        return Err(Error::GridMismatch);
                    }
                    if f.degree() != 1 {
                        return Err(Error::WrongDegree { expected: 1, found: f.degree() });
                    }
                    if f.space() != space {
                        return Err(Error::InvalidInput(format!(
                            "{what} has {} values, expected {space}",
                            f.space()
                        )));
                    }
                    Ok(f)
                }
            }
        };
        Ok(WallData {
            gauge_smooth: check(self.gauge_smooth, gauge, "gauge connection")?,
            gauge_jump: check(self.gauge_jump, gauge, "gauge jump")?,
            frame_smooth: check(self.frame_smooth, frame, "frame connection")?,
            frame_jump: check(self.frame_jump, frame, "frame jump")?,
            grid,
            wall: self.wall,
            rank: self.rank,
            flux_quanta: self.flux_quanta,
            metric: Metric::FlatProduct,
            orientation: self.orientation,
            profile: SmoothProfile::bump(),
        })
    }
}

impl WallData {
    pub fn builder(grid: &Grid, wall: WallPlane, rank: usize) -> WallDataBuilder {
        WallDataBuilder {
            grid: grid.clone(),
            wall,
            rank,
            gauge_smooth: None,
            gauge_jump: None,
            frame_smooth: None,
            frame_jump: None,
            flux_quanta: 0,
            orientation: 1.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn wall(&self) -> WallPlane {
        self.wall
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gauge_space(&self) -> ValueSpace {
        ValueSpace::Gauge { rank: self.rank }
    }

    pub fn frame_space(&self) -> ValueSpace {
        ValueSpace::Frame { dim: self.dim() }
    }

    pub fn gauge_smooth(&self) -> &Form {
        &self.gauge_smooth
    }

    pub fn gauge_jump(&self) -> &Form {
        &self.gauge_jump
    }

    pub fn frame_smooth(&self) -> &Form {
        &self.frame_smooth
    }

    pub fn frame_jump(&self) -> &Form {
        &self.frame_jump
    }

    pub fn flux_quanta(&self) -> i64 {
        self.flux_quanta
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn profile(&self) -> &SmoothProfile {
        &self.profile
    }

    /// Copy with a different orientation flag.
    pub fn with_orientation(&self, sign: f64) -> Result<WallData> {
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::InvalidInput("orientation flag must be +1 or -1".into()));
        }
        Ok(WallData { orientation: sign, ..self.clone() })
    }

    /// Whether both frame-connection parts vanish identically.
    pub fn is_flat(&self) -> bool {
        self.frame_smooth.max_norm() == 0.0 && self.frame_jump.max_norm() == 0.0
    }

    pub fn has_frame_jump(&self) -> bool {
        self.frame_jump.max_norm() != 0.0
    }

    /// The coordinate axis tangent to the wall on `T²`.
    pub fn tangent_axis(&self) -> usize {
        1 - self.wall.axis
    }

    /// `+1` when `(s, y)` has the grid orientation (two-torus only).
    pub fn frame_orientation(&self) -> f64 {
        let sw = if self.wall.axis == 0 { 1.0 } else { -1.0 };
        sw * self.grid.orientation().sign()
    }

    /// Landau field strength `B`: `F_L = −i B dx⁰∧dx¹ ⊗ 1`.
    pub fn landau_field(&self) -> f64 {
        if self.flux_quanta == 0 {
            return 0.0;
        }
        let l = self.grid.lengths();
        2.0 * PI * self.flux_quanta as f64 * self.grid.orientation().sign() / (l[0] * l[1])
    }

    /// Slope of `a_L(s)` in `A_L = −i a_L(s) dy`, `y` the tangent grid axis.
    pub fn landau_slope(&self) -> f64 {
        let sw = if self.wall.axis == 0 { 1.0 } else { -1.0 };
        self.landau_field() * sw
    }

    /// Twist `κ` of the transition function `ψ(s + L_s, y) = e^{iκy} ψ(s, y)`.
    pub fn landau_twist(&self) -> f64 {
        self.landau_slope() * self.grid.lengths()[self.wall.axis]
    }

    /// `a_L` at the wall-axis plane `j` (gauge with the cut at `s = 0`).
    pub fn landau_potential(&self, j: usize) -> f64 {
        self.landau_slope() * self.grid.coordinate(self.wall.axis, j)
    }

    /// `(h, h′)` on every plane along the wall axis for the given side of the wall plane.
    pub fn closing(&self, side: Side) -> Vec<(f64, f64)> {
        let n = self.grid.points()[self.wall.axis];
        let l = self.grid.lengths()[self.wall.axis];
        (0..n)
            .map(|j| {
                let d = (j + n - self.wall.index) % n;
                if d == 0 {
                    match side {
                        Side::Plus => (1.0, 0.0),
                        Side::Minus => (0.0, 0.0),
                    }
                } else {
                    let u = d as f64 / n as f64;
                    (1.0 - self.profile.value(u), -self.profile.derivative(u) / l)
                }
            })
            .collect()
    }

    fn plane_of(&self, p: usize) -> usize {
        self.grid.unravel(p)[self.wall.axis]
    }

    /// `smooth + h·jump` with the given wall-plane convention.
    fn closed_connection(&self, smooth: &Form, jump: &Form, side: Side) -> Result<Form> {
        let h = self.closing(side);
        smooth.add(&jump.scale_pointwise(|p| C64::new(h[self.plane_of(p)].0, 0.0)))
    }

    /// `d(smooth + h·jump) + (…)∧(…)` with `h′` inserted analytically.
    fn closed_curvature(&self, smooth: &Form, jump: &Form, side: Side) -> Result<Form> {
        let h = self.closing(side);
        let a = self.closed_connection(smooth, jump, side)?;
        let d_jump = ext_d(jump)?.scale_pointwise(|p| C64::new(h[self.plane_of(p)].0, 0.0));
        let ds = Form::constant(
            &self.grid,
            1,
            ValueSpace::Scalar,
            &[(&[self.wall.axis], LieValue::scalar(C64::new(1.0, 0.0)))],
        )?
        .scale_pointwise(|p| C64::new(h[self.plane_of(p)].1, 0.0));
        ext_d(smooth)?
            .add(&d_jump)?
            .add(&wedge(&ds, jump)?)?
            .add(&wedge(&a, &a)?)
    }

    /// Periodic part of the gauge connection, `A_smooth + h𝒜` (Landau term excluded).
    pub fn gauge_connection(&self, side: Side) -> Result<Form> {
        self.closed_connection(&self.gauge_smooth, &self.gauge_jump, side)
    }

    /// Constant Landau curvature `F_L`.
    pub fn landau_curvature(&self) -> Result<Form> {
        let b = self.landau_field();
        Form::constant(
            &self.grid,
            2,
            self.gauge_space(),
            &[(&[0, 1][..self.dim().min(2)], LieValue::identity(self.rank).scale(C64::new(0.0, -b)))],
        )
    }

    /// Full gauge curvature with the wall plane sampled from `side`.
    ///
    /// The Landau potential is proportional to the identity, so it does not
    /// enter the commutator terms and `F = F_L + F_periodic` exactly.
    pub fn gauge_curvature(&self, side: Side) -> Result<Form> {
        let f = self.closed_curvature(&self.gauge_smooth, &self.gauge_jump, side)?;
        if self.flux_quanta == 0 {
            return Ok(f);
        }
        f.add(&self.landau_curvature()?)
    }

    pub fn frame_connection(&self, side: Side) -> Result<Form> {
        self.closed_connection(&self.frame_smooth, &self.frame_jump, side)
    }

    pub fn frame_curvature(&self, side: Side) -> Result<Form> {
        self.closed_curvature(&self.frame_smooth, &self.frame_jump, side)
    }

    /// `A^±|_Σ`: `Plus` gives `A⁺ = A⁻ + 𝒜`, `Minus` gives `A⁻`.
    pub fn restricted_gauge(&self, side: Side) -> Result<Form> {
        let mut a = restrict_to_wall(&self.gauge_connection(side)?, self.wall)?;
        if self.flux_quanta != 0 {
            let al = self.landau_potential(self.wall.index);
            let landau = Form::constant(
                a.grid(),
                1,
                self.gauge_space(),
                &[(&[0], LieValue::identity(self.rank).scale(C64::new(0.0, -al)))],
            )?;
            a = a.add(&landau)?;
        }
        Ok(a)
    }

    /// `Γ^±|_Σ`.
    pub fn restricted_frame(&self, side: Side) -> Result<Form> {
        restrict_to_wall(&self.frame_connection(side)?, self.wall)
    }

    /// `𝒜|_Σ`.
    pub fn restricted_gauge_jump(&self) -> Result<Form> {
        restrict_to_wall(&self.gauge_jump, self.wall)
    }

    /// `Γ₀|_Σ`.
    pub fn restricted_frame_jump(&self) -> Result<Form> {
        restrict_to_wall(&self.frame_jump, self.wall)
    }

    /// `F^±|_Σ`: curvature of the restricted connection on the wall.
    pub fn restricted_gauge_curvature(&self, side: Side) -> Result<Form> {
        curvature(&self.restricted_gauge(side)?)
    }

    pub fn restricted_frame_curvature(&self, side: Side) -> Result<Form> {
        curvature(&self.restricted_frame(side)?)
    }

    /// `∫_{𝓜∖Σ} P` over the two open half-domains, each with its one-sided wall
    /// samples, in the orientation selected by the flag.
    pub fn bulk_pontryagin_integral(&self) -> Result<C64> {
        let mut total = C64::new(0.0, 0.0);
        for (side, domain) in [
            (Side::Plus, Domain::HalfPlus(self.wall)),
            (Side::Minus, Domain::HalfMinus(self.wall)),
        ] {
            let p = pontryagin_density(
                &self.frame_curvature(side)?,
                &self.gauge_curvature(side)?,
                self.rank,
            )?;
            total += p.integrate_top(domain)?;
        }
        Ok(total * self.orientation)
    }
}
