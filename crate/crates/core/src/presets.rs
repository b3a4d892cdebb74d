//! Named field configurations and their construction as [`WallData`].

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::grid::{Grid, WallPlane};
use crate::lie::{LieValue, ValueSpace};
use crate::random::{band_limited_connection, rng, BandLimit};
use crate::wall::WallData;

fn two_pi() -> f64 {
    2.0 * PI
}

fn default_band() -> BandLimit {
    BandLimit { max_mode: 1, amplitude: 0.5 }
}

fn one() -> f64 {
    1.0
}

fn default_background() -> f64 {
    0.1
}

/// The periodic manifold `T^n` with `N` points and circumference `L` per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub dim: usize,
    pub points: usize,
    #[serde(default = "two_pi")]
    pub length: f64,
}

impl ManifoldSpec {
    pub fn grid(&self) -> Result<Grid> {
        Grid::torus(self.dim, self.points, self.length)
    }
}

/// The wall plane `x^axis = index·h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallSpec {
    pub axis: usize,
    pub index: usize,
}

/// Gauge-field presets. `c` values are jumps of the tangential component
/// `A_y = −i c` (times the identity for rank > 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GaugeSpec {
    /// `A = 0`.
    Free,
    /// Constant jump `c` on top of a constant background `A⁻_y = −i a⁻`.
    ConstantJump {
        c: f64,
        #[serde(default = "default_background")]
        background: f64,
    },
    /// Smooth flux `m` (two-torus), optionally with a constant jump.
    Flux {
        m: i64,
        #[serde(default)]
        jump: f64,
    },
    /// Pure-gauge jump `𝒜 = g dg⁻¹`, `g = exp(2πi k y / L)`.
    Winding { k: i64 },
    /// Band-limited random `A⁻` and `𝒜` (u(1) for rank 1, su(r) otherwise).
    RandomBandLimited {
        seed: u64,
        #[serde(default = "default_band")]
        band: BandLimit,
    },
}

/// Frame-connection presets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FrameSpec {
    /// Flat product metric: `Γ = 0` on both sides.
    #[default]
    Zero,
    /// Band-limited random so(n)-valued `Γ⁻` and jump `Γ₀`.
    RandomBandLimited {
        seed: u64,
        #[serde(default = "default_band")]
        band: BandLimit,
    },
}

/// Everything needed to build a wall configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub rank: usize,
    pub gauge: GaugeSpec,
    #[serde(default)]
    pub frame: FrameSpec,
    #[serde(default = "one")]
    pub orientation: f64,
}

/// The tangent axis carrying preset jumps: 1 for walls normal to axis 0, else 0.
fn tangent_axis(axis: usize) -> usize {
    if axis == 0 {
        1
    } else {
        0
    }
}

fn tangential_constant(grid: &Grid, axis: usize, rank: usize, c: f64) -> Result<Form> {
    let y = tangent_axis(axis);
    Form::constant(
        grid,
        1,
        ValueSpace::Gauge { rank },
        &[(&[y], LieValue::identity(rank).scale(C64::new(0.0, -c)))],
    )
}

/// Build the wall configuration described by the specs.
pub fn build_wall(manifold: &ManifoldSpec, wall: &WallSpec, field: &FieldSpec) -> Result<WallData> {
    let grid = manifold.grid()?;
    let plane = WallPlane { axis: wall.axis, index: wall.index };
    grid.check_wall(plane)?;
    let rank = field.rank;
    if rank == 0 {
        return Err(Error::InvalidInput("gauge rank must be positive".into()));
    }
    let gauge_space = ValueSpace::Gauge { rank };
    let tangent_length = grid.lengths()[tangent_axis(wall.axis)];
    let mut b = WallData::builder(&grid, plane, rank).orientation(field.orientation);
    b = match &field.gauge {
        GaugeSpec::Free => b,
        GaugeSpec::ConstantJump { c, background } => b
            .gauge_smooth(tangential_constant(&grid, wall.axis, rank, *background)?)
            .gauge_jump(tangential_constant(&grid, wall.axis, rank, *c)?),
        GaugeSpec::Flux { m, jump } => {
            b.flux_quanta(*m).gauge_jump(tangential_constant(&grid, wall.axis, rank, *jump)?)
        }
        GaugeSpec::Winding { k } => b.gauge_jump(tangential_constant(
            &grid,
            wall.axis,
            rank,
            2.0 * PI * *k as f64 / tangent_length,
        )?),
        GaugeSpec::RandomBandLimited { seed, band } => {
            let mut r = rng(*seed);
            let smooth = band_limited_connection(&grid, gauge_space, *band, &mut r)?;
            let jump = band_limited_connection(&grid, gauge_space, *band, &mut r)?;
            b.gauge_smooth(smooth).gauge_jump(jump)
        }
    };
    if let FrameSpec::RandomBandLimited { seed, band } = &field.frame {
        let space = ValueSpace::Frame { dim: grid.dim() };
        let mut r = rng(*seed ^ 0x5eed_f4a3e);
        let smooth = band_limited_connection(&grid, space, *band, &mut r)?;
        let jump = band_limited_connection(&grid, space, *band, &mut r)?;
        b = b.frame_smooth(smooth).frame_jump(jump);
    }
    b.build()
}
