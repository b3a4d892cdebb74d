//! Sequential versus rayon paths for the grid kernels.

use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wallindex_core::charclasses::{curvature, transgression, InvariantPolynomial};
use wallindex_core::cylinder::{cylinder_integral, paste_cylinder};
use wallindex_core::exec;
use wallindex_core::forms::wedge;
use wallindex_core::presets::{build_wall, FieldSpec, FrameSpec, GaugeSpec, ManifoldSpec, WallSpec};
use wallindex_core::random::{band_limited_connection, rng, BandLimit};
use wallindex_core::{Grid, ValueSpace};

const BAND: BandLimit = BandLimit { max_mode: 1, amplitude: 0.5 };
const MODES: [(&str, bool); 2] = [("sequential", true), ("rayon", false)];

fn kernels(c: &mut Criterion) {
    let grid = Grid::torus(4, 8, 2.0 * PI).unwrap();
    let space = ValueSpace::Gauge { rank: 2 };
    let mut r = rng(3);
    let a0 = band_limited_connection(&grid, space, BAND, &mut r).unwrap();
    let a1 = band_limited_connection(&grid, space, BAND, &mut r).unwrap();
    let f = curvature(&a0).unwrap();
    let ch = InvariantPolynomial::chern_character();

    let wall = build_wall(
        &ManifoldSpec { dim: 4, points: 8, length: 2.0 * PI },
        &WallSpec { axis: 3, index: 5 },
        &FieldSpec { rank: 2, gauge: GaugeSpec::RandomBandLimited { seed: 5, band: BAND }, frame: FrameSpec::Zero, orientation: 1.0 },
    )
    .unwrap();
    let cyl = paste_cylinder(&wall, 0.05).unwrap();

    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for (name, sequential) in MODES {
        exec::set_sequential(sequential);
        group.bench_function(BenchmarkId::new("wedge_FF_T4_N8", name), |b| {
            b.iter(|| wedge(black_box(&f), black_box(&f)).unwrap())
        });
        group.bench_function(BenchmarkId::new("transgression_ch_T4_N8", name), |b| {
            b.iter(|| transgression(&ch, black_box(&a1), black_box(&a0), 16).unwrap())
        });
        group.bench_function(BenchmarkId::new("cylinder_T4_N8", name), |b| {
            b.iter(|| cylinder_integral(black_box(&cyl)).unwrap())
        });
    }
    exec::set_sequential(false);
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
