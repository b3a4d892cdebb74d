//! Domain-wall Dirac operators on `T²` and their spectral index.
//!
//! In the frame `(s, y)` (wall normal, wall tangent) the operator is
//!
//! ```text
//!        ⎛ 0            −∇_s + i∇_y ⎞
//!   D̸ =  ⎝ ∇_s + i∇_y   0           ⎠ ,   γ = ±diag(1, −1),
//! ```
//!
//! with `∇ = d + A` and the gauge field sampled at grid sites; sites on the
//! wall plane take the `s → s₀⁻` value. A Landau background is handled by a
//! twisted boundary condition `ψ(s + L, y) = e^{iκy} ψ(s, y)`.
//!
//! Near-zero modes (`|λ| < τ`) are split into chirality sectors and, inside
//! each sector, into long-wavelength (physical) and grid-scale (artifact:
//! doublers, wall-localized Gibbs modes) states by the projector onto
//! momenta `|k| < N/4`. The index counts the physical states.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::forms::{spectral, Side};
use crate::grid::Grid;
use crate::linalg::hermitian_eigen;
use crate::rsa::{rsa_report, EtaOptions, RsaReport};
use crate::wall::WallData;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Default matrix-dimension cap per unit of rank: `2·48²`.
pub const DIMENSION_CAP_PER_RANK: usize = 2 * 48 * 48;
/// Default near-zero threshold.
pub const DEFAULT_TAU: f64 = 0.05;
/// Chirality purity required of zero modes.
pub const CHIRALITY_PURITY: f64 = 0.99;
/// Low-momentum weight above which a near-zero state counts as physical.
pub const PHYSICAL_WEIGHT: f64 = 0.75;
/// Low-momentum weight below which a near-zero state is a lattice artifact.
pub const ARTIFACT_WEIGHT: f64 = 0.25;

/// How derivatives are discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Discretization {
    /// Fourier differentiation (Nyquist mode dropped).
    #[default]
    Spectral,
    /// Naive central differences (with doublers).
    FiniteDifference,
}

/// A Hermitian Dirac matrix with its chirality grading.
#[derive(Debug, Clone)]
pub struct DiracOperator {
    matrix: Vec<C64>,
    dim: usize,
    disc: Discretization,
    wall: WallData,
    gamma_sign: f64,
}

/// `(ψ-site layout)`: row index `c·(npts·r) + p·r + a`.
struct Layout {
    npts: usize,
    rank: usize,
}

impl Layout {
    fn site_block(&self) -> usize {
        self.npts * self.rank
    }
}

/// Dense `n×n` first-derivative matrix on a periodic line of length `l`.
fn derivative_matrix(n: usize, l: f64, disc: Discretization) -> Vec<f64> {
    let mut d = vec![0.0; n * n];
    match disc {
        Discretization::Spectral => {
            let omega = 2.0 * PI / l;
            for j in 0..n {
                for jp in 0..n {
                    // (1/N) Σ_q iωq e^{2πi q (j−j′)/N}; real by symmetry of the mode set.
                    let mut acc = 0.0;
                    for q in 0..n {
                        let k = spectral::frequency(q, n) as f64;
                        let phase = 2.0 * PI * (q as f64) * ((j as f64) - (jp as f64)) / n as f64;
                        acc += -omega * k * phase.sin();
                    }
                    d[j * n + jp] = acc / n as f64;
                }
            }
        }
        Discretization::FiniteDifference => {
            let h = l / n as f64;
            for j in 0..n {
                d[j * n + (j + 1) % n] += 0.5 / h;
                d[j * n + (j + n - 1) % n] -= 0.5 / h;
            }
        }
    }
    d
}

/// Normal derivative on one `y`-line with the twist phase `θ = κy`.
fn twisted_line(d: &[f64], n: usize, l: f64, theta: f64, disc: Discretization) -> Vec<C64> {
    let mut m: Vec<C64> = d.iter().map(|&x| C64::new(x, 0.0)).collect();
    if theta == 0.0 {
        return m;
    }
    match disc {
        Discretization::Spectral => {
            let h = l / n as f64;
            for j in 0..n {
                for jp in 0..n {
                    let ph = theta * (j as f64 - jp as f64) * h / l;
                    m[j * n + jp] *= C64::from_polar(1.0, ph);
                }
                m[j * n + j] += C64::new(0.0, theta / l);
            }
        }
        Discretization::FiniteDifference => {
            m[(n - 1) * n] *= C64::from_polar(1.0, theta);
            m[n - 1] *= C64::from_polar(1.0, -theta);
        }
    }
    m
}

/// Build the Dirac matrix of a `T²` wall configuration.
pub fn build_dirac(w: &WallData, disc: Discretization) -> Result<DiracOperator> {
    build_dirac_capped(w, disc, DIMENSION_CAP_PER_RANK * w.rank())
}

/// [`build_dirac`] with an explicit matrix-dimension cap.
pub fn build_dirac_capped(w: &WallData, disc: Discretization, cap: usize) -> Result<DiracOperator> {
    if w.dim() != 2 {
        return Err(Error::Unsupported(format!("Dirac operators need n = 2, got n = {}", w.dim())));
    }
    if !w.is_flat() {
        return Err(Error::Unsupported("Dirac operators need a flat product metric".into()));
    }
    let grid = w.grid().clone();
    let r = w.rank();
    let lay = Layout { npts: grid.len(), rank: r };
    let dim = 2 * lay.site_block();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let (s_ax, y_ax) = (w.wall().axis, w.tangent_axis());
    let (ns, ny) = (grid.points()[s_ax], grid.points()[y_ax]);
    let (ls, ly) = (grid.lengths()[s_ax], grid.lengths()[y_ax]);
    let ds = derivative_matrix(ns, ls, disc);
    let dy: Vec<C64> = derivative_matrix(ny, ly, disc).into_iter().map(|x| C64::new(x, 0.0)).collect();
    let kappa = w.landau_twist();
    let ds_lines: Vec<Vec<C64>> =
        (0..ny).map(|l| twisted_line(&ds, ns, ls, kappa * grid.coordinate(y_ax, l), disc)).collect();

    let a = w.gauge_connection(Side::Minus)?;
    let a_s = a.component(&[s_ax]).expect("1-form").1.to_vec();
    let a_y = a.component(&[y_ax]).expect("1-form").1.to_vec();
    let landau: Vec<f64> = (0..ns).map(|j| w.landau_potential(j)).collect();

    let block = lay.site_block();
    let mut matrix = vec![ZERO; dim * dim];
    exec::fill_blocks(&mut matrix, dim, |row, out| {
        let c = row / block;
        let p = (row % block) / r;
        let ca = row % r;
        let idx = grid.unravel(p);
        let (j, l) = (idx[s_ax], idx[y_ax]);
        // Row of ∇_s and of i∇_y at (p, a), written into the opposite spinor block.
        let (sign_s, off) = if c == 0 { (-1.0, block) } else { (1.0, 0) };
        let mut at = |q: usize, b: usize, v: C64| out[off + q * r + b] += v;
        let mut qidx = idx;
        for jp in 0..ns {
            let v = ds_lines[l][j * ns + jp];
            if v != ZERO {
                qidx[s_ax] = jp;
                at(grid.ravel(&qidx[..2]), ca, v * sign_s);
            }
        }
        qidx = idx;
        for lp in 0..ny {
            let v = dy[l * ny + lp];
            if v != ZERO {
                qidx[y_ax] = lp;
                at(grid.ravel(&qidx[..2]), ca, v * C64::new(0.0, 1.0));
            }
        }
        let i = C64::new(0.0, 1.0);
        for b in 0..r {
            let mut v = a_s[p * r * r + ca * r + b] * sign_s + i * a_y[p * r * r + ca * r + b];
            if b == ca {
                // i·(−i a_L) = a_L
                v += landau[j];
            }
            at(p, b, v);
        }
    });
    Ok(DiracOperator { matrix, dim, disc, wall: w.clone(), gamma_sign: w.frame_orientation() * w.orientation() })
}

impl DiracOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn discretization(&self) -> Discretization {
        self.disc
    }

    pub fn wall(&self) -> &WallData {
        &self.wall
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> &[C64] {
        &self.matrix
    }

    /// Diagonal of `γ`.
    pub fn chirality(&self, row: usize) -> f64 {
        if row < self.dim / 2 {
            self.gamma_sign
        } else {
            -self.gamma_sign
        }
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[i * n + j] - self.matrix[j * n + i].conj()).norm());
            }
        }
        worst
    }

    /// `max |γD + Dγ|`; zero by construction (block off-diagonal).
    pub fn anticommutator_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let v = self.matrix[i * n + j] * (self.chirality(i) + self.chirality(j));
                worst = worst.max(v.norm());
            }
        }
        worst
    }

    /// Twist phase `θ(site)` used to untwist states before Fourier analysis.
    fn untwist_phase(&self, p: usize) -> f64 {
        let g = self.wall.grid();
        let (s_ax, y_ax) = (self.wall.wall().axis, self.wall.tangent_axis());
        let idx = g.unravel(p);
        let theta = self.wall.landau_twist() * g.coordinate(y_ax, idx[y_ax]);
        theta * g.coordinate(s_ax, idx[s_ax]) / g.lengths()[s_ax]
    }
}

/// Projection of a scalar grid field onto momenta `|k_μ| < N_μ/4`.
fn low_pass(grid: &Grid, data: &mut [C64]) {
    let dims = grid.points().to_vec();
    for (axis, &n) in dims.iter().enumerate() {
        let stride = grid.stride(axis);
        let fwd = spectral::plan(n, false);
        let inv = spectral::plan(n, true);
        for p in 0..grid.len() {
            if grid.unravel(p)[axis] != 0 {
                continue;
            }
            let mut line: Vec<C64> = (0..n).map(|j| data[p + j * stride]).collect();
            fwd.process(&mut line);
            for (q, v) in line.iter_mut().enumerate() {
                if 4 * spectral::frequency_signed(q, n).unsigned_abs() as usize >= n {
                    *v = ZERO;
                }
            }
            inv.process(&mut line);
            for (j, v) in line.into_iter().enumerate() {
                data[p + j * stride] = v / n as f64;
            }
        }
    }
}

/// Classification of a near-zero state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Physical,
    Artifact,
    Ambiguous,
}

/// A state of the near-zero space diagonalizing `γ` and then the
/// low-momentum projector within its chirality sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMode {
    pub chirality: f64,
    pub low_momentum_weight: f64,
    pub kind: ModeKind,
}

/// Full spectrum with the analysed near-zero space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiracSpectrum {
    pub eigenvalues: Vec<f64>,
    /// `⟨ψ|γ|ψ⟩` for every eigenvector, aligned with `eigenvalues`.
    pub chirality: Vec<f64>,
    pub tau: f64,
    pub zero_modes: Vec<ZeroMode>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// `max_i |λ_i + λ_{n−1−i}|`.
    pub pairing_residual: f64,
}

impl DiracSpectrum {
    /// `(eigenvalue, chirality)` rows.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.eigenvalues.iter().copied().zip(self.chirality.iter().copied())
    }

    pub fn ambiguous(&self) -> usize {
        self.zero_modes.iter().filter(|m| m.kind == ModeKind::Ambiguous).count()
    }
}

/// Columns of a dense `n×k` matrix stored column by column.
type Columns = Vec<Vec<C64>>;

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Diagonalize the Hermitian `k×k` compression `⟨vᵢ|O|vⱼ⟩` and rotate the basis.
fn rotate(basis: &Columns, op: impl Fn(&[C64]) -> Vec<C64>) -> Result<(Vec<f64>, Columns)> {
    let k = basis.len();
    if k == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let images: Columns = basis.iter().map(|v| op(v)).collect();
    let mut m = vec![ZERO; k * k];
    for i in 0..k {
        for j in 0..k {
            m[i * k + j] = inner(&basis[i], &images[j]);
        }
    }
    let e = hermitian_eigen(&m, k, true)?;
    let n = basis[0].len();
    let rotated = (0..k)
        .map(|c| {
            let mut v = vec![ZERO; n];
            for (i, b) in basis.iter().enumerate() {
                let u = e.vector(i, c);
                for (x, y) in v.iter_mut().zip(b) {
                    *x += u * y;
                }
            }
            v
        })
        .collect();
    Ok((e.values, rotated))
}

/// Eigen-decompose and analyse the near-zero space `|λ| < τ`.
pub fn spectrum(d: &DiracOperator, tau: f64) -> Result<DiracSpectrum> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::InvalidInput(format!("zero-mode threshold {tau} must be positive")));
    }
    let n = d.dim;
    let eig = hermitian_eigen(&d.matrix, n, true)?;
    let vecs = eig.vectors.as_ref().expect("vectors requested");
    let chirality: Vec<f64> = (0..n)
        .map(|k| (0..n).map(|i| d.chirality(i) * vecs[i * n + k].norm_sqr()).sum())
        .collect();
    let pairing_residual =
        (0..n).map(|i| (eig.values[i] + eig.values[n - 1 - i]).abs()).fold(0.0, f64::max);

    let near: Columns = (0..n)
        .filter(|&k| eig.values[k].abs() < tau)
        .map(|k| (0..n).map(|i| vecs[i * n + k]).collect())
        .collect();
    let gamma = |v: &[C64]| -> Vec<C64> { v.iter().enumerate().map(|(i, x)| x * d.chirality(i)).collect() };
    let (gs, states) = rotate(&near, gamma)?;

    let grid = d.wall.grid().clone();
    let r = d.wall.rank();
    let npts = grid.len();
    let phases: Vec<C64> = (0..npts).map(|p| C64::from_polar(1.0, d.untwist_phase(p))).collect();
    let project = |v: &[C64]| -> Vec<C64> {
        let mut out = vec![ZERO; v.len()];
        for c in 0..2 {
            for a in 0..r {
                let at = |p: usize| c * npts * r + p * r + a;
                let mut field: Vec<C64> = (0..npts).map(|p| v[at(p)] * phases[p].conj()).collect();
                low_pass(&grid, &mut field);
                for p in 0..npts {
                    out[at(p)] = field[p] * phases[p];
                }
            }
        }
        out
    };

    let mut zero_modes = Vec::new();
    for positive in [true, false] {
        let (sector, pure): (Columns, Vec<bool>) = gs
            .iter()
            .zip(&states)
            .filter(|(g, _)| (**g > 0.0) == positive)
            .map(|(g, v)| (v.clone(), g.abs() > CHIRALITY_PURITY))
            .unzip();
        let (weights, rotated) = rotate(&sector, project)?;
        let all_pure = pure.iter().all(|&p| p);
        for (wgt, v) in weights.into_iter().zip(&rotated) {
            let g = inner(v, &gamma(v)).re;
            let kind = if !all_pure || g.abs() <= CHIRALITY_PURITY {
                ModeKind::Ambiguous
            } else if wgt > PHYSICAL_WEIGHT {
                ModeKind::Physical
            } else if wgt < ARTIFACT_WEIGHT {
                ModeKind::Artifact
            } else {
                ModeKind::Ambiguous
            };
            zero_modes.push(ZeroMode { chirality: g, low_momentum_weight: wgt, kind });
        }
    }
    let count = |pos: bool| {
        zero_modes.iter().filter(|m| m.kind == ModeKind::Physical && (m.chirality > 0.0) == pos).count()
    };
    let (n_plus, n_minus) = (count(true), count(false));
    Ok(DiracSpectrum { eigenvalues: eig.values, chirality, tau, zero_modes, n_plus, n_minus, pairing_residual })
}

/// `n₊ − n₋`, refusing to guess when any near-zero state is ambiguous.
pub fn index_spectral(s: &DiracSpectrum) -> Result<i64> {
    let bad: Vec<String> = s
        .zero_modes
        .iter()
        .filter(|m| m.kind == ModeKind::Ambiguous)
        .map(|m| format!("(chirality {:.4}, low-momentum weight {:.4})", m.chirality, m.low_momentum_weight))
        .collect();
    if !bad.is_empty() {
        return Err(Error::AmbiguousZeroModes(format!("{} state(s): {}", bad.len(), bad.join(", "))));
    }
    Ok(s.n_plus as i64 - s.n_minus as i64)
}

/// Settings for [`index_predicted`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexOptions {
    pub discretization: Discretization,
    pub tau: f64,
    pub eta: EtaOptions,
    /// Also build and diagonalize the Dirac matrix when possible.
    pub spectral: bool,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { discretization: Discretization::Spectral, tau: DEFAULT_TAU, eta: EtaOptions::default(), spectral: true }
    }
}

/// Spectral side of an [`IndexReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralIndex {
    pub index: i64,
    pub n_plus: usize,
    pub n_minus: usize,
    pub tau: f64,
    pub discretization: Discretization,
    pub matrix_dim: usize,
    pub pairing_residual: f64,
}

/// Bulk integral, surface term, predicted and (when available) spectral index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub bulk: f64,
    pub rsa: RsaReport,
    /// `bulk − ½ η̃` with `η̃` from the Eq4 integrand.
    pub predicted: f64,
    /// `|predicted − round(predicted)|`.
    pub integrality_residual: f64,
    pub spectral: Option<SpectralIndex>,
    /// Why the spectral channel is missing, if it is.
    pub spectral_unavailable: Option<String>,
    /// `|predicted − spectral|`.
    pub residual: Option<f64>,
}

/// Assemble the index prediction and compare with the spectral count.
pub fn index_predicted(w: &WallData, opts: &IndexOptions) -> Result<IndexReport> {
    let bulk = w.bulk_pontryagin_integral()?.re;
    let rsa = rsa_report(w, &opts.eta)?;
    let predicted = bulk - 0.5 * rsa.rsa_eq4.re;
    let integrality_residual = (predicted - predicted.round()).abs();
    let (spectral, spectral_unavailable) = if !opts.spectral {
        (None, Some("not requested".to_string()))
    } else if w.dim() != 2 {
        (None, Some(format!("spectral index needs n = 2 (n = {})", w.dim())))
    } else if !w.is_flat() {
        (None, Some("spectral index needs a flat product metric".to_string()))
    } else {
        let d = build_dirac(w, opts.discretization)?;
        let s = spectrum(&d, opts.tau)?;
        let index = index_spectral(&s)?;
        (
            Some(SpectralIndex {
                index,
                n_plus: s.n_plus,
                n_minus: s.n_minus,
                tau: opts.tau,
                discretization: opts.discretization,
                matrix_dim: d.dim(),
                pairing_residual: s.pairing_residual,
            }),
            None,
        )
    };
    let residual = spectral.as_ref().map(|s| (predicted - s.index as f64).abs());
    Ok(IndexReport { bulk, rsa, predicted, integrality_residual, spectral, spectral_unavailable, residual })
}
