#![allow(dead_code)]

use std::f64::consts::PI;

use wallindex_core::forms::{Form, MixedForm};
use wallindex_core::presets::{build_wall, FieldSpec, FrameSpec, GaugeSpec, ManifoldSpec, WallSpec};
use wallindex_core::random::{band_limited_connection, band_limited_form, rng, BandLimit};
use wallindex_core::wall::WallData;
use wallindex_core::{Grid, ValueSpace, C64};

pub const BAND: BandLimit = BandLimit { max_mode: 1, amplitude: 0.5 };

pub fn torus(dim: usize, n: usize) -> Grid {
    Grid::torus(dim, n, 2.0 * PI).unwrap()
}

pub fn cube(dim: usize, n: usize) -> Grid {
    Grid::new(vec![n; dim], vec![2.0 * PI; dim]).unwrap()
}

pub fn connection(grid: &Grid, space: ValueSpace, seed: u64) -> Form {
    band_limited_connection(grid, space, BAND, &mut rng(seed)).unwrap()
}

/// `1 + ω₂` with a random scalar 2-form (when it fits).
pub fn even_scalar(grid: &Grid, seed: u64) -> MixedForm {
    let one = MixedForm::constant(grid, ValueSpace::Scalar, C64::new(1.0, 0.0));
    if grid.dim() < 2 {
        return one;
    }
    let w = band_limited_form(grid, 2, ValueSpace::Scalar, BAND, &mut rng(seed)).unwrap();
    one.with(w).unwrap()
}

pub fn random_wall(dim: usize, n: usize, rank: usize, seed: u64, frame_jump: bool, axis: usize) -> WallData {
    let frame = if frame_jump {
        FrameSpec::RandomBandLimited { seed: seed.wrapping_add(1000), band: BAND }
    } else {
        FrameSpec::Zero
    };
    build_wall(
        &ManifoldSpec { dim, points: n, length: 2.0 * PI },
        &WallSpec { axis, index: (3 + seed as usize) % n },
        &FieldSpec { rank, gauge: GaugeSpec::RandomBandLimited { seed, band: BAND }, frame, orientation: 1.0 },
    )
    .unwrap()
}
