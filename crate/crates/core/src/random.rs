//! Seeded random band-limited fields.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::forms::Form;
use crate::grid::Grid;
use crate::lie::{LieValue, ValueSpace};

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random element of the Lie algebra of a value space: `u(1)` for rank 1,
/// traceless anti-Hermitian `su(r)` for higher rank, real antisymmetric `so(n)`
/// for frames, real numbers for scalars. Entries are uniform in `[-1, 1]`.
pub fn lie_element(rng: &mut impl Rng, space: ValueSpace) -> LieValue {
    let n = space.size();
    match space {
        ValueSpace::Scalar => LieValue::scalar(C64::new(rng.gen_range(-1.0..1.0), 0.0)),
        ValueSpace::Gauge { rank: 1 } => LieValue::scalar(C64::new(0.0, rng.gen_range(-1.0..1.0))),
        ValueSpace::Gauge { .. } => {
            let m = LieValue::from_row_major(
                (0..n * n)
                    .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
            let x = m.sub(&m.adjoint()).scale(C64::new(0.5, 0.0));
            let tr = x.trace() / n as f64;
            x.sub(&LieValue::identity(n).scale(tr))
        }
        ValueSpace::Frame { .. } => {
            let m = LieValue::from_row_major(
                (0..n * n).map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)).collect(),
            );
            m.sub(&m.adjoint()).scale(C64::new(0.5, 0.0))
        }
    }
}

/// Parameters of a random band-limited field.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandLimit {
    /// Largest integer wavenumber per axis.
    pub max_mode: usize,
    /// Typical coefficient size.
    pub amplitude: f64,
}

/// A random `degree`-form whose coefficients are algebra-valued trigonometric
/// polynomials with wavenumbers in `[-K, K]` on every axis.
pub fn band_limited_form(
    grid: &Grid,
    degree: usize,
    space: ValueSpace,
    band: BandLimit,
    rng: &mut impl Rng,
) -> Result<Form> {
    let dim = grid.dim();
    let k = band.max_mode as i64;
    let mut waves: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        waves = waves
            .into_iter()
            .flat_map(|w| {
                (-k..=k).map(move |q| {
                    let mut v = w.clone();
                    v.push(q);
                    v
                })
            })
            .collect();
    }
    let norm = band.amplitude / (waves.len() as f64).sqrt();
    let ncomp = crate::forms::basis::binomial(dim, degree);
    // Per component: (wave, cos coefficient, sin coefficient).
    let terms: Vec<Vec<(Vec<f64>, LieValue, LieValue)>> = (0..ncomp)
        .map(|_| {
            waves
                .iter()
                .map(|w| {
                    let kv: Vec<f64> = w
                        .iter()
                        .zip(grid.lengths())
                        .map(|(&q, &l)| 2.0 * PI * q as f64 / l)
                        .collect();
                    let a = lie_element(rng, space).scale(C64::new(norm, 0.0));
                    let b = lie_element(rng, space).scale(C64::new(norm, 0.0));
                    (kv, a, b)
                })
                .collect()
        })
        .collect();
    let bases = crate::forms::basis::basis(dim, degree);
    Form::from_fn(grid, degree, space, |axes, x, out| {
        let c = bases
            .iter()
            .position(|&m| m == crate::forms::basis::mask_of(axes))
            .expect("basis");
        out.iter_mut().for_each(|o| *o = C64::new(0.0, 0.0));
        for (kv, a, b) in &terms[c] {
            let phase: f64 = kv.iter().zip(x).map(|(k, x)| k * x).sum();
            let (s, co) = phase.sin_cos();
            for ((o, ai), bi) in out.iter_mut().zip(a.as_slice()).zip(b.as_slice()) {
                *o += ai * co + bi * s;
            }
        }
    })
}

/// A random connection 1-form.
pub fn band_limited_connection(
    grid: &Grid,
    space: ValueSpace,
    band: BandLimit,
    rng: &mut impl Rng,
) -> Result<Form> {
    band_limited_form(grid, 1, space, band, rng)
}

/// A random unitary (complex) or orthogonal (real) matrix and its inverse.
pub fn random_group_element(rng: &mut impl Rng, n: usize, real: bool) -> (LieValue, LieValue) {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n)
            .map(|_| {
                let im = if real { 0.0 } else { rng.gen_range(-1.0..1.0) };
                C64::new(rng.gen_range(-1.0..1.0), im)
            })
            .collect();
        for c in &cols {
            let dot: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(c).for_each(|(x, ci)| *x -= dot * ci);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|x| *x /= norm);
            cols.push(v);
        }
    }
    let g = LieValue::from_fn(n, |i, j| cols[j][i]);
    let inv = g.adjoint();
    (g, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_live_in_the_algebra() {
        let mut r = rng(7);
        for space in [
            ValueSpace::Gauge { rank: 1 },
            ValueSpace::Gauge { rank: 2 },
            ValueSpace::Frame { dim: 4 },
        ] {
            let x = lie_element(&mut r, space);
            assert!(x.anti_hermitian_defect() < 1e-15);
        }
        let x = lie_element(&mut r, ValueSpace::Gauge { rank: 3 });
        assert!(x.trace().norm() < 1e-15);
    }

    #[test]
    fn group_elements_are_unitary() {
        let mut r = rng(3);
        for real in [false, true] {
            let (g, gi) = random_group_element(&mut r, 4, real);
            assert!(g.mul(&gi).sub(&LieValue::identity(4)).max_abs() < 1e-13);
        }
    }

    #[test]
    fn fields_are_reproducible() {
        let g = Grid::torus(2, 8, 1.0).unwrap();
        let band = BandLimit { max_mode: 2, amplitude: 0.5 };
        let sp = ValueSpace::Gauge { rank: 2 };
        let a = band_limited_connection(&g, sp, band, &mut rng(11)).unwrap();
        let b = band_limited_connection(&g, sp, band, &mut rng(11)).unwrap();
        assert_eq!(a, b);
        assert!(a.anti_hermitian_defect() < 1e-14);
    }
}
