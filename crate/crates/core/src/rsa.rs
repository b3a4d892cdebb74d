//! Relative spectral asymmetry of a domain wall.
//!
//! The surface term is
//!
//! ```text
//! η̃ = −2 ∫_Σ [ Â(R⁺) ∧ Tch(A⁺, A⁻) + TÂ(Γ⁺, Γ⁻) ∧ ch(F⁻) ]      (Eq4)
//!   = −2 ∫_Σ [ Â(R⁻) ∧ Tch(A⁺, A⁻) + TÂ(Γ⁺, Γ⁻) ∧ ch(F⁺) ]      (Eq5)
//! ```
//!
//! with all forms restricted to Σ. On `T²` it is cross-checked against the
//! eta invariants of the wall operators `𝒟 = i∇_y` (zeta-regularized, on the
//! circle) and against the one-dimensional heat-coefficient formula
//! `−(2/√π) ∫₀¹ a₀(∂_s𝒟, 𝒟²) ds`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::charclasses::{transgression, InvariantPolynomial};
use crate::cylinder::{two_cylinder_rsa, CornerOrder};
use crate::error::{Error, Result};
use crate::forms::{spectral, Domain, Form, MixedForm, Side};
use crate::linalg::hermitian_eigen;
use crate::quadrature;
use crate::wall::WallData;

/// Default Gauss–Legendre order for transgressions.
pub const TRANSGRESSION_ORDER: usize = 16;

/// Which of the two equivalent surface integrands to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RsaVariant {
    Eq4,
    Eq5,
}

struct Restrictions {
    a_plus: Form,
    a_minus: Form,
    g_plus: Form,
    g_minus: Form,
}

fn restrictions(w: &WallData) -> Result<Restrictions> {
    Ok(Restrictions {
        a_plus: w.restricted_gauge(Side::Plus)?,
        a_minus: w.restricted_gauge(Side::Minus)?,
        g_plus: w.restricted_frame(Side::Plus)?,
        g_minus: w.restricted_frame(Side::Minus)?,
    })
}

fn surface_integral(w: &WallData, integrand: &MixedForm) -> Result<C64> {
    let v = integrand.integrate_top(Domain::Wall)?;
    Ok(v * (-2.0 * w.orientation()))
}

/// The generalized RSA via either equivalent surface integrand.
pub fn generalized_rsa(w: &WallData, variant: RsaVariant) -> Result<C64> {
    generalized_rsa_with(w, variant, TRANSGRESSION_ORDER)
}

/// [`generalized_rsa`] with an explicit transgression quadrature order.
pub fn generalized_rsa_with(w: &WallData, variant: RsaVariant, q: usize) -> Result<C64> {
    let r = restrictions(w)?;
    let ch = InvariantPolynomial::chern_character();
    let ah = InvariantPolynomial::a_hat();
    let tch = transgression(&ch, &r.a_plus, &r.a_minus, q)?;
    let tah = transgression(&ah, &r.g_plus, &r.g_minus, q)?;
    let (frame_side, gauge_side) = match variant {
        RsaVariant::Eq4 => (&r.g_plus, &r.a_minus),
        RsaVariant::Eq5 => (&r.g_minus, &r.a_plus),
    };
    let ahat = ah.of_connection(frame_side)?;
    let chf = ch.of_connection(gauge_side)?;
    let integrand = ahat.wedge(&tch)?.add(&tah.wedge(&chf)?)?;
    debug_assert!(integrand.degrees().iter().all(|&d| d < w.dim()));
    surface_integral(w, &integrand)
}

/// The reduced surface term `−2 ∫_Σ Â(R⁺) ∧ Tch(A⁺, A⁻)`; requires `Γ₀ = 0`.
pub fn rsa_reduced(w: &WallData) -> Result<C64> {
    if w.has_frame_jump() {
        return Err(Error::NonzeroFrameJump(w.frame_jump().max_norm()));
    }
    let r = restrictions(w)?;
    let ch = InvariantPolynomial::chern_character();
    let tch = transgression(&ch, &r.a_plus, &r.a_minus, TRANSGRESSION_ORDER)?;
    let ahat = InvariantPolynomial::a_hat().of_connection(&r.g_plus)?;
    surface_integral(w, &ahat.wedge(&tch)?)
}

/// `∫_Σ TÂ(Γ′, Γ) ∧ [ch(F⁺) − ch(F⁻)]`. For flat product metrics the
/// regularized connection equals the original one, so the term vanishes.
pub fn surface_correction(w: &WallData) -> Result<C64> {
    let r = restrictions(w)?;
    let regularized = r.g_minus.clone();
    let tah = transgression(&InvariantPolynomial::a_hat(), &regularized, &r.g_minus, TRANSGRESSION_ORDER)?;
    let ch = InvariantPolynomial::chern_character();
    let dch = ch.of_connection(&r.a_plus)?.sub(&ch.of_connection(&r.a_minus)?)?;
    tah.wedge(&dch)?.integrate_top(Domain::Wall)
}

// ---------------------------------------------------------------------------
// Circle operators.

/// A Hermitian `r×r` profile `a(θ)` sampled at `M` equispaced points of a circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleProfile {
    length: f64,
    rank: usize,
    samples: Vec<C64>,
}

impl CircleProfile {
    pub fn new(length: f64, rank: usize, samples: Vec<C64>) -> Result<Self> {
        let block = rank * rank;
        if rank == 0 || samples.is_empty() || !samples.len().is_multiple_of(block) || length.is_nan() || length <= 0.0 {
            return Err(Error::InvalidInput("malformed circle profile".into()));
        }
        for m in samples.chunks(block) {
            for i in 0..rank {
                for j in 0..rank {
                    if (m[i * rank + j] - m[j * rank + i].conj()).norm() > 1e-12 {
                        return Err(Error::InvalidInput("circle profile is not Hermitian".into()));
                    }
                }
            }
        }
        Ok(CircleProfile { length, rank, samples })
    }

    /// The constant rank-1 profile `a`.
    pub fn constant(length: f64, a: f64) -> Self {
        CircleProfile { length, rank: 1, samples: vec![C64::new(a, 0.0); 8] }
    }

    /// Sample `f(θ)` (row-major `r×r`) at `points` nodes.
    pub fn from_fn(
        length: f64,
        rank: usize,
        points: usize,
        f: impl Fn(f64) -> Vec<C64>,
    ) -> Result<Self> {
        let samples = (0..points)
            .flat_map(|j| f(j as f64 * length / points as f64))
            .collect();
        CircleProfile::new(length, rank, samples)
    }

    /// The wall operator `𝒟 = σ i∇_y` of a restricted `T²` connection, written
    /// as `−i d/dθ + a(θ)` with `θ = −σy`; `σ` is the wall's induced orientation.
    pub fn from_wall_connection(a: &Form) -> Result<Self> {
        let grid = a.grid();
        if grid.dim() != 1 || a.degree() != 1 {
            return Err(Error::Unsupported("wall operators are only built on a circle".into()));
        }
        let rank = a.space().size();
        let sigma = grid.orientation().sign();
        let n = grid.points()[0];
        let (_, data) = a.component(&[0]).expect("1-form on a circle");
        let block = rank * rank;
        let mut samples = Vec::with_capacity(n * block);
        for j in 0..n {
            let src = if sigma > 0.0 { (n - j) % n } else { j };
            samples.extend(data[src * block..(src + 1) * block].iter().map(|z| z * C64::new(0.0, sigma)));
        }
        CircleProfile::new(grid.lengths()[0], rank, samples)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn points(&self) -> usize {
        self.samples.len() / (self.rank * self.rank)
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    /// `a + c·1`.
    pub fn shifted(&self, c: f64) -> Self {
        let r = self.rank;
        let mut out = self.clone();
        for m in out.samples.chunks_mut(r * r) {
            for i in 0..r {
                m[i * r + i] += c;
            }
        }
        out
    }

    /// `∫ tr a dθ` (trapezoid, exact for band-limited profiles).
    pub fn trace_integral(&self) -> f64 {
        let r = self.rank;
        let m = self.points();
        let s: C64 = self
            .samples
            .chunks(r * r)
            .map(|x| (0..r).map(|i| x[i * r + i]).sum::<C64>())
            .sum();
        s.re * self.length / m as f64
    }

    /// Max-norm of the difference of two sampled profiles.
    pub fn max_diff(&self, other: &CircleProfile) -> f64 {
        if self.rank != other.rank || self.samples.len() != other.samples.len() {
            return f64::INFINITY;
        }
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Fourier coefficients `â_q` (per matrix entry) for `|q| < M/2`.
    #[allow(clippy::needless_range_loop)]
    fn fourier(&self) -> Vec<(i64, Vec<C64>)> {
        let r = self.rank;
        let m = self.points();
        let fft = spectral::plan(m, false);
        let mut coeffs = vec![vec![C64::new(0.0, 0.0); r * r]; m];
        for e in 0..r * r {
            let mut line: Vec<C64> = (0..m).map(|j| self.samples[j * r * r + e]).collect();
            fft.process(&mut line);
            for (q, v) in line.into_iter().enumerate() {
                coeffs[q][e] = v / m as f64;
            }
        }
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(q, _)| 2 * q != m)
            .map(|(q, c)| (spectral::frequency(q, m), c))
            .collect()
    }

    /// Matrix of `−i d/dθ + a` on Fourier modes `|k| ≤ cutoff` (row-major).
    fn mode_matrix(&self, cutoff: usize) -> (Vec<C64>, usize) {
        let r = self.rank;
        let modes = 2 * cutoff + 1;
        let n = modes * r;
        let omega = 2.0 * PI / self.length;
        let coeffs = self.fourier();
        let mut h = vec![C64::new(0.0, 0.0); n * n];
        for ki in 0..modes {
            let k = ki as i64 - cutoff as i64;
            for a in 0..r {
                h[(ki * r + a) * n + ki * r + a] += omega * k as f64;
            }
            for (q, c) in &coeffs {
                let kj = k - q;
                if kj < -(cutoff as i64) || kj > cutoff as i64 {
                    continue;
                }
                let kj = (kj + cutoff as i64) as usize;
                for a in 0..r {
                    for b in 0..r {
                        h[(ki * r + a) * n + kj * r + b] += c[a * r + b];
                    }
                }
            }
        }
        (h, n)
    }
}

/// Settings for the regulated eta sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaOptions {
    /// Base Fourier cutoff Λ (modes `|k| ≤ Λ`); levels Λ, 2Λ, 4Λ are used.
    pub cutoff: usize,
    /// Ratio of cutoff to Gaussian regulator width.
    pub damping_ratio: f64,
    /// Eigenvalues with `|λ|` below this are zero modes.
    pub kernel_tolerance: f64,
    /// Largest accepted change between the last two extrapolation levels.
    pub convergence_tolerance: f64,
}

impl Default for EtaOptions {
    fn default() -> Self {
        EtaOptions {
            cutoff: 64,
            damping_ratio: 6.0,
            kernel_tolerance: 1e-12,
            convergence_tolerance: 1e-6,
        }
    }
}

/// Eta invariant with its extrapolation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaEstimate {
    pub eta: f64,
    pub kernel_dim: usize,
    /// Regulated sums at cutoffs Λ, 2Λ, 4Λ.
    pub partial_sums: [f64; 3],
    /// First-stage extrapolants from (Λ, 2Λ) and (2Λ, 4Λ).
    pub first_stage: [f64; 2],
    /// `|eta − first_stage[1]|`.
    pub error_estimate: f64,
}

/// Eta invariant of `−i d/dθ + a(θ)` on the circle.
///
/// Regulated sums `Σ sign(λ) exp(−(λ/ρ)²)` with `ρ ∝ Λ` differ from the
/// zeta-regularized value by a series in `ρ⁻²`; two Richardson stages over
/// (Λ, 2Λ, 4Λ) remove the `ρ⁻²` and `ρ⁻⁴` terms. Zero modes are excluded.
pub fn eta_circle_spectral(a: &CircleProfile, opts: &EtaOptions) -> Result<EtaEstimate> {
    if opts.cutoff < 64 {
        return Err(Error::InvalidInput(format!("cutoff {} below 64 modes", opts.cutoff)));
    }
    let omega = 2.0 * PI / a.length();
    let mut sums = [0.0; 3];
    let mut kernel_dim = 0;
    for (level, s) in sums.iter_mut().enumerate() {
        let cutoff = opts.cutoff << level;
        let (h, n) = a.mode_matrix(cutoff);
        let eig = hermitian_eigen(&h, n, false)?;
        let rho = omega * cutoff as f64 / opts.damping_ratio;
        let mut acc = 0.0;
        let mut zeros = 0;
        for &l in &eig.values {
            if l.abs() < opts.kernel_tolerance {
                zeros += 1;
            } else {
                acc += l.signum() * (-(l / rho).powi(2)).exp();
            }
        }
        if level == 0 {
            kernel_dim = zeros;
        }
        *s = acc;
    }
    let r12 = (4.0 * sums[1] - sums[0]) / 3.0;
    let r23 = (4.0 * sums[2] - sums[1]) / 3.0;
    let eta = (16.0 * r23 - r12) / 15.0;
    let err = (eta - r23).abs();
    if err.is_nan() || err > opts.convergence_tolerance {
        return Err(Error::NonConvergent(format!(
            "regulated sums {:?}, first-stage extrapolants [{r12}, {r23}], final {eta}, change {err:e} > {:e}",
            sums, opts.convergence_tolerance
        )));
    }
    Ok(EtaEstimate { eta, kernel_dim, partial_sums: sums, first_stage: [r12, r23], error_estimate: err })
}

// ---------------------------------------------------------------------------
// One-dimensional heat-coefficient formula.

/// A smooth family `s ↦ a(s, ·)`, `s ∈ [0, 1]`, of circle profiles.
pub trait ProfileFamily: Sync {
    fn profile(&self, s: f64) -> CircleProfile;
    /// Samples of `∂_s a(s, ·)` on the profile's nodes.
    fn velocity(&self, s: f64) -> CircleProfile;
}

/// `a(s) = a⁻ + s (a⁺ − a⁻)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StraightLine {
    pub minus: CircleProfile,
    pub plus: CircleProfile,
}

impl StraightLine {
    pub fn new(minus: CircleProfile, plus: CircleProfile) -> Result<Self> {
        if minus.rank != plus.rank
            || minus.samples.len() != plus.samples.len()
            || minus.length != plus.length
        {
            return Err(Error::InvalidInput("family endpoints live on different circles".into()));
        }
        Ok(StraightLine { minus, plus })
    }
}

impl ProfileFamily for StraightLine {
    fn profile(&self, s: f64) -> CircleProfile {
        let samples = self
            .minus
            .samples
            .iter()
            .zip(&self.plus.samples)
            .map(|(m, p)| m + (p - m) * s)
            .collect();
        CircleProfile { samples, ..self.minus.clone() }
    }

    fn velocity(&self, _s: f64) -> CircleProfile {
        let samples = self.minus.samples.iter().zip(&self.plus.samples).map(|(m, p)| p - m).collect();
        CircleProfile { samples, ..self.minus.clone() }
    }
}

/// A family reparametrized by `φ: [0,1] → [0,1]`, `φ(0) = 0`, `φ(1) = 1`;
/// `map(s)` returns `(φ(s), φ′(s))`.
pub struct Reparametrized<F, M> {
    pub base: F,
    pub map: M,
}

impl<F: ProfileFamily, M: Fn(f64) -> (f64, f64) + Sync> ProfileFamily for Reparametrized<F, M> {
    fn profile(&self, s: f64) -> CircleProfile {
        self.base.profile((self.map)(s).0)
    }

    fn velocity(&self, s: f64) -> CircleProfile {
        let (phi, dphi) = (self.map)(s);
        let mut v = self.base.velocity(phi);
        v.samples.iter_mut().for_each(|z| *z *= dphi);
        v
    }
}

/// `−(2/√π) ∫₀¹ ds a₀(∂_s a, ·)` with `a₀(Q) = (4π)^{−1/2} ∫ tr Q dθ`,
/// by `q`-point Gauss–Legendre in `s`.
pub fn eta_relative_seeley_1d(family: &dyn ProfileFamily, q: usize) -> f64 {
    let (nodes, weights) = quadrature::unit_interval(q);
    let a0 = |s: f64| family.velocity(s).trace_integral() / (4.0 * PI).sqrt();
    let integral: f64 = nodes.iter().zip(&weights).map(|(&s, &w)| w * a0(s)).sum();
    -2.0 / PI.sqrt() * integral
}

/// The wall operators `𝒟^∓` of a `T²` configuration as circle profiles.
pub fn wall_profiles(w: &WallData) -> Result<(CircleProfile, CircleProfile)> {
    if w.dim() != 2 {
        return Err(Error::Unsupported("wall operators are only built for n = 2".into()));
    }
    Ok((
        CircleProfile::from_wall_connection(&w.restricted_gauge(Side::Minus)?)?,
        CircleProfile::from_wall_connection(&w.restricted_gauge(Side::Plus)?)?,
    ))
}

/// [`eta_relative_seeley_1d`] after checking `a(0) = 𝒟⁻` and `a(1) = 𝒟⁺`.
pub fn eta_relative_seeley_for_wall(
    w: &WallData,
    family: &dyn ProfileFamily,
    q: usize,
) -> Result<f64> {
    let (minus, plus) = wall_profiles(w)?;
    let dev = family.profile(0.0).max_diff(&minus).max(family.profile(1.0).max_diff(&plus));
    if dev > 1e-10 {
        return Err(Error::EndpointMismatch(dev));
    }
    Ok(eta_relative_seeley_1d(family, q))
}

// ---------------------------------------------------------------------------
// Reports.

/// Both wall eta invariants and their difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaDifference {
    pub plus: EtaEstimate,
    pub minus: EtaEstimate,
    pub difference: f64,
}

/// One pairwise comparison between channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub a: String,
    pub b: String,
    pub value: f64,
}

/// All available evaluations of the surface term, with pairwise residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsaReport {
    pub rsa_eq4: C64,
    pub rsa_eq5: C64,
    /// Present when the frame jump vanishes.
    pub rsa_eq6: Option<C64>,
    /// Two-cylinder evaluation (frame interpolated first).
    pub cylinder: C64,
    /// `T²` only.
    pub eta_spectral: Option<EtaDifference>,
    /// `T²` only, straight-line family.
    pub eta_seeley: Option<f64>,
    pub surface_correction: C64,
    /// `eta_spectral − eta_seeley` when both exist.
    pub spectral_minus_seeley: Option<f64>,
    /// Even-integer offset `2k` between the spectral and family channels, if nonzero.
    pub spectral_flow: Option<i64>,
    pub residuals: Vec<Residual>,
}

impl RsaReport {
    /// Largest imaginary part among the complex channels.
    pub fn max_imag(&self) -> f64 {
        [Some(self.rsa_eq4), Some(self.rsa_eq5), self.rsa_eq6, Some(self.cylinder), Some(self.surface_correction)]
            .into_iter()
            .flatten()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn residual(&self, a: &str, b: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|r| (r.a == a && r.b == b) || (r.a == b && r.b == a))
            .map(|r| r.value)
    }
}

fn spectral_difference(w: &WallData, opts: &EtaOptions) -> Result<EtaDifference> {
    let (minus, plus) = wall_profiles(w)?;
    let pair = crate::exec::map_indices(2, |i| {
        eta_circle_spectral(if i == 0 { &plus } else { &minus }, opts)
    });
    let mut it = pair.into_iter();
    let plus = it.next().expect("two results")?;
    let minus = it.next().expect("two results")?;
    let difference = plus.eta - minus.eta;
    Ok(EtaDifference { plus, minus, difference })
}

/// Evaluate every available channel of the surface term.
pub fn rsa_report(w: &WallData, eta_opts: &EtaOptions) -> Result<RsaReport> {
    let rsa_eq4 = generalized_rsa(w, RsaVariant::Eq4)?;
    let rsa_eq5 = generalized_rsa(w, RsaVariant::Eq5)?;
    let rsa_eq6 = if w.has_frame_jump() { None } else { Some(rsa_reduced(w)?) };
    let cylinder = two_cylinder_rsa(w, CornerOrder::FrameFirst)?;
    let surface_correction = surface_correction(w)?;
    let (eta_spectral, eta_seeley) = if w.dim() == 2 {
        let (minus, plus) = wall_profiles(w)?;
        let line = StraightLine::new(minus, plus)?;
        (Some(spectral_difference(w, eta_opts)?), Some(eta_relative_seeley_for_wall(w, &line, 16)?))
    } else {
        (None, None)
    };
    let spectral_minus_seeley = match (&eta_spectral, eta_seeley) {
        (Some(e), Some(s)) => Some(e.difference - s),
        _ => None,
    };
    let spectral_flow = spectral_minus_seeley.and_then(|d| {
        let k = (d / 2.0).round();
        (k != 0.0 && (d - 2.0 * k).abs() < 1e-3).then_some(2 * k as i64)
    });

    let mut channels: Vec<(&str, f64)> = vec![("eq4", rsa_eq4.re), ("eq5", rsa_eq5.re)];
    if let Some(v) = rsa_eq6 {
        channels.push(("eq6", v.re));
    }
    channels.push(("cylinder", cylinder.re));
    if let Some(e) = &eta_spectral {
        channels.push(("eta_spectral", e.difference));
    }
    if let Some(s) = eta_seeley {
        channels.push(("eta_seeley", s));
    }
    let mut residuals = Vec::new();
    for i in 0..channels.len() {
        for j in i + 1..channels.len() {
            residuals.push(Residual {
                a: channels[i].0.into(),
                b: channels[j].0.into(),
                value: (channels[i].1 - channels[j].1).abs(),
            });
        }
    }
    Ok(RsaReport {
        rsa_eq4,
        rsa_eq5,
        rsa_eq6,
        cylinder,
        eta_spectral,
        eta_seeley,
        surface_correction,
        spectral_minus_seeley,
        spectral_flow,
        residuals,
    })
}

/// All channels for a flat product configuration on `T²`.
pub fn check_theorem1(w: &WallData, eta_opts: &EtaOptions) -> Result<RsaReport> {
    if w.dim() != 2 {
        return Err(Error::Unsupported("spectral checks need n = 2".into()));
    }
    if !w.is_flat() {
        return Err(Error::Unsupported("spectral checks need a flat product metric".into()));
    }
    rsa_report(w, eta_opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid, WallPlane};
    use crate::lie::{LieValue, ValueSpace};

    fn constant_jump(axis: usize, c: f64, a_minus: f64) -> WallData {
        let g = Grid::torus(2, 16, 2.0 * PI).unwrap();
        let y = 1 - axis;
        let sp = ValueSpace::Gauge { rank: 1 };
        let jump = Form::constant(&g, 1, sp, &[(&[y], LieValue::scalar(C64::new(0.0, -c)))]).unwrap();
        let smooth =
            Form::constant(&g, 1, sp, &[(&[y], LieValue::scalar(C64::new(0.0, -a_minus)))]).unwrap();
        WallData::builder(&g, WallPlane { axis, index: 3 }, 1)
            .gauge_smooth(smooth)
            .gauge_jump(jump)
            .build()
            .unwrap()
    }

    #[test]
    fn zero_jump_gives_zero() {
        let w = constant_jump(0, 0.0, 0.2);
        assert_eq!(generalized_rsa(&w, RsaVariant::Eq4).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(rsa_reduced(&w).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn constant_jump_value() {
        for axis in [0, 1] {
            let w = constant_jump(axis, 0.3, 0.1);
            let v = generalized_rsa(&w, RsaVariant::Eq4).unwrap();
            let sign = if axis == 0 { 1.0 } else { -1.0 };
            assert!((v - C64::new(-2.0 * 0.3 * sign, 0.0)).norm() < 1e-13, "{v}");
        }
    }

    #[test]
    fn eta_symmetric_point() {
        let e = eta_circle_spectral(&CircleProfile::constant(2.0 * PI, 0.5), &EtaOptions::default()).unwrap();
        assert!(e.eta.abs() < 1e-8);
        assert_eq!(e.kernel_dim, 0);
    }

    #[test]
    fn eta_kernel_is_counted() {
        let e = eta_circle_spectral(&CircleProfile::constant(2.0 * PI, 0.0), &EtaOptions::default()).unwrap();
        assert_eq!(e.kernel_dim, 1);
        assert!(e.eta.abs() < 1e-8);
    }

    #[test]
    fn eta_rejects_small_cutoff() {
        let opts = EtaOptions { cutoff: 32, ..EtaOptions::default() };
        assert!(eta_circle_spectral(&CircleProfile::constant(2.0 * PI, 0.3), &opts).is_err());
    }

    #[test]
    fn eta_reports_nonconvergence() {
        // A regulator far too wide for the cutoff leaves large truncation errors.
        let opts = EtaOptions { damping_ratio: 0.5, convergence_tolerance: 1e-12, ..EtaOptions::default() };
        let err = eta_circle_spectral(&CircleProfile::constant(2.0 * PI, 0.3), &opts).unwrap_err();
        assert!(matches!(err, Error::NonConvergent(_)));
    }

    #[test]
    fn seeley_straight_line() {
        let l = 2.0 * PI;
        let line = StraightLine::new(CircleProfile::constant(l, 0.1), CircleProfile::constant(l, 0.4)).unwrap();
        assert!((eta_relative_seeley_1d(&line, 8) + 0.6).abs() < 1e-14);
        let same = StraightLine::new(CircleProfile::constant(l, 0.1), CircleProfile::constant(l, 0.1)).unwrap();
        assert_eq!(eta_relative_seeley_1d(&same, 8), 0.0);
    }

    #[test]
    fn seeley_endpoint_mismatch() {
        let w = constant_jump(0, 0.3, 0.1);
        let l = 2.0 * PI;
        let wrong = StraightLine::new(CircleProfile::constant(l, 0.0), CircleProfile::constant(l, 0.3)).unwrap();
        let wrong = StraightLine::new(
            CircleProfile { samples: vec![C64::new(0.0, 0.0); 16], ..wrong.minus },
            CircleProfile { samples: vec![C64::new(0.3, 0.0); 16], ..wrong.plus },
        )
        .unwrap();
        assert!(matches!(
            eta_relative_seeley_for_wall(&w, &wrong, 8),
            Err(Error::EndpointMismatch(_))
        ));
        let (m, p) = wall_profiles(&w).unwrap();
        let right = StraightLine::new(m, p).unwrap();
        assert!((eta_relative_seeley_for_wall(&w, &right, 8).unwrap() + 0.6).abs() < 1e-13);
    }

    /// `ζ_H(s, a)` continued to `s` near 0 by Euler–Maclaurin with `n` head terms.
    fn hurwitz_zeta(s: f64, a: f64, n: usize) -> f64 {
        let x = n as f64 + a;
        let head: f64 = (0..n).map(|k| (k as f64 + a).powf(-s)).sum();
        // Bernoulli numbers B₂, B₄, B₆.
        let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0];
        let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
        let mut poch = s;
        let mut fact = 2.0;
        for (j, bj) in b.iter().enumerate() {
            let p = 2 * j + 1;
            tail += bj / fact * poch * x.powf(-s - p as f64);
            poch *= (s + p as f64) * (s + p as f64 + 1.0);
            fact *= ((p + 1) * (p + 2)) as f64;
        }
        head + tail
    }

    #[test]
    fn eta_matches_hurwitz() {
        for (l, a) in [(2.0 * PI, 0.3), (2.0 * PI, -0.45), (3.0, 0.7), (5.0, 2.2)] {
            let omega = 2.0 * PI / l;
            let x = (a / omega).rem_euclid(1.0);
            // Spectrum ω(k + x): η = ζ_H(0, x) − ζ_H(0, 1 − x).
            let oracle = hurwitz_zeta(0.0, x, 20) - hurwitz_zeta(0.0, 1.0 - x, 20);
            let e = eta_circle_spectral(&CircleProfile::constant(l, a), &EtaOptions::default()).unwrap();
            assert!((e.eta - oracle).abs() < 1e-8, "L={l} a={a}: {} vs {oracle}", e.eta);
        }
    }

    #[test]
    fn eta_of_nonconstant_profile_depends_on_mean() {
        let l = 2.0 * PI;
        let p = CircleProfile::from_fn(l, 1, 32, |t| vec![C64::new(0.2 + 0.4 * t.cos() - 0.3 * (2.0 * t).sin(), 0.0)]).unwrap();
        let e = eta_circle_spectral(&p, &EtaOptions::default()).unwrap();
        assert!((e.eta - 0.6).abs() < 1e-8, "{}", e.eta);
    }

    #[test]
    fn constant_jump_all_channels() {
        for axis in [0, 1] {
            let w = constant_jump(axis, 0.3, 0.1);
            let rep = check_theorem1(&w, &EtaOptions::default()).unwrap();
            let expect = if axis == 0 { -0.6 } else { 0.6 };
            assert!((rep.rsa_eq4.re - expect).abs() < 1e-12);
            assert!((rep.rsa_eq5.re - expect).abs() < 1e-12);
            assert!((rep.cylinder.re - expect).abs() < 1e-12);
            let spec = rep.eta_spectral.as_ref().unwrap().difference;
            assert!((spec - expect).abs() < 1e-8, "axis {axis}: {spec}");
            assert!((rep.eta_seeley.unwrap() - expect).abs() < 1e-12);
            assert_eq!(rep.spectral_flow, None);
        }
    }

    #[test]
    fn winding_jump_shows_spectral_flow() {
        // A jump by a full unit of momentum: eigenvalues are shifted by one
        // lattice step, eta is unchanged, while the family formula gives −2.
        let w = constant_jump(0, 1.0, 0.25);
        let rep = check_theorem1(&w, &EtaOptions::default()).unwrap();
        assert!((rep.rsa_eq4.re + 2.0).abs() < 1e-12);
        assert!(rep.eta_spectral.as_ref().unwrap().difference.abs() < 1e-8);
        assert_eq!(rep.spectral_flow, Some(2));
    }
}
