//! Spectral differentiation along periodic axes.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::exec;
use crate::grid::Grid;

type Plans = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

pub(crate) fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<Plans>> = OnceLock::new();
    let mut plans = PLANS.get_or_init(Default::default).lock().expect("fft plan cache");
    plans
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// Signed integer frequency of FFT bin `j`; the Nyquist bin maps to 0.
pub fn frequency(j: usize, n: usize) -> i64 {
    if 2 * j < n {
        j as i64
    } else if 2 * j == n {
        0
    } else {
        j as i64 - n as i64
    }
}

/// Integer frequency of FFT bin `j` in `(-n/2, n/2]` (Nyquist kept as `n/2`).
pub fn frequency_signed(j: usize, n: usize) -> i64 {
    if 2 * j <= n {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Derivative along `axis` of point-major data with `block` entries per point.
///
/// Trigonometric interpolation with the Nyquist mode dropped, so real data
/// keeps real derivatives and band-limited data is differentiated exactly.
pub fn derivative(grid: &Grid, data: &[C64], block: usize, axis: usize) -> Vec<C64> {
    let n = grid.points()[axis];
    let npts = grid.len();
    assert_eq!(data.len(), npts * block);
    let stride = grid.stride(axis);
    let fwd = plan(n, false);
    let inv = plan(n, true);
    let scale = 2.0 * PI / grid.lengths()[axis] / n as f64;
    let mult: Vec<C64> = (0..n)
        .map(|j| C64::new(0.0, scale * frequency(j, n) as f64))
        .collect();

    // Lines are indexed by (outer, inner) with the axis index removed.
    let outer = npts / (n * stride);
    let lines = outer * stride;
    let results = exec::map_indices(lines, |l| {
        let base = (l / stride) * n * stride + l % stride;
        let mut buf = vec![C64::new(0.0, 0.0); n * block];
        for e in 0..block {
            let line = &mut buf[e * n..(e + 1) * n];
            for (j, v) in line.iter_mut().enumerate() {
                *v = data[(base + j * stride) * block + e];
            }
            fwd.process(line);
            line.iter_mut().zip(&mult).for_each(|(v, m)| *v *= m);
            inv.process(line);
        }
        buf
    });
    let mut out = vec![C64::new(0.0, 0.0); npts * block];
    for (l, buf) in results.into_iter().enumerate() {
        let base = (l / stride) * n * stride + l % stride;
        for e in 0..block {
            for j in 0..n {
                out[(base + j * stride) * block + e] = buf[e * n + j];
            }
        }
    }
    out
}
