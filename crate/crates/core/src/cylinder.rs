//! Thin cylinders `Σ × [0, ε]` and the interpolation formula for
//! `∫_C ω ∧ V(F_ε)`.
//!
//! A form on the cylinder whose coefficients depend on `s` is stored as a pair
//! `(α, β)` of forms on Σ meaning `α + ds∧β`. Along the cylinder the connection
//! is `𝒜_ε(s) = B₁ + s B₂ + f(s/ε) B₃` and the coefficient form is
//! `ω = ω₁ + s ω₂`. The integrand is evaluated by explicit powers of
//! `F_ε = F̂(s) + ds ∧ (B₂ + ε⁻¹f′(s/ε) B₃)`, independently of the
//! polarization code used for transgressions.
//!
//! Σ may be any periodic grid; integrals use its own orientation.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::charclasses::{curvature, transgression, InvariantPolynomial};
use crate::error::{Error, Result};
use crate::exec;
use crate::forms::{Domain, Form, MixedForm, Side};
use crate::grid::Grid;
use crate::lie::ValueSpace;
use crate::quadrature;
use crate::wall::WallData;

pub use crate::profile::SmoothProfile;

/// Minimum number of transverse Gauss nodes.
pub const MIN_TRANSVERSE_POINTS: usize = 32;

/// The smoothing profile used by cylinders and walls.
pub fn smoothing_profile() -> SmoothProfile {
    SmoothProfile::bump()
}

/// Data of one cylinder integral.
#[derive(Debug, Clone)]
pub struct CylinderConfig {
    pub epsilon: f64,
    pub transverse_points: usize,
    pub polynomial: InvariantPolynomial,
    pub b1: Form,
    pub b2: Option<Form>,
    pub b3: Form,
    pub omega1: MixedForm,
    pub omega2: Option<MixedForm>,
    pub profile: SmoothProfile,
}

impl CylinderConfig {
    /// `B₂ = 0`, `ω₂ = 0`.
    pub fn new(
        polynomial: InvariantPolynomial,
        b1: Form,
        b3: Form,
        omega1: MixedForm,
        epsilon: f64,
    ) -> Self {
        CylinderConfig {
            epsilon,
            transverse_points: MIN_TRANSVERSE_POINTS,
            polynomial,
            b1,
            b2: None,
            b3,
            omega1,
            omega2: None,
            profile: smoothing_profile(),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.b1.grid()
    }

    fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::InvalidInput(format!("cylinder width {} must be positive", self.epsilon)));
        }
        if self.transverse_points < MIN_TRANSVERSE_POINTS {
            return Err(Error::InvalidInput(format!(
                "{} transverse points, need at least {MIN_TRANSVERSE_POINTS}",
                self.transverse_points
            )));
        }
        let grid = self.grid();
        for b in [Some(&self.b1), self.b2.as_ref(), Some(&self.b3)].into_iter().flatten() {
            if b.degree() != 1 {
                return Err(Error::WrongDegree { expected: 1, found: b.degree() });
            }
            if b.grid() != grid {
                return Err(Error::GridMismatch);
            }
            if b.space() != self.b1.space() {
                return Err(Error::ValueSpaceMismatch(self.b1.space(), b.space()));
            }
        }
        for w in [Some(&self.omega1), self.omega2.as_ref()].into_iter().flatten() {
            if w.grid() != grid {
                return Err(Error::GridMismatch);
            }
            if w.space() != ValueSpace::Scalar {
                return Err(Error::ValueSpaceMismatch(ValueSpace::Scalar, w.space()));
            }
        }
        Ok(())
    }
}

/// `α + ds∧β` on `Σ × [0, ε]`.
#[derive(Debug, Clone)]
struct CylForm {
    tan: MixedForm,
    nor: MixedForm,
}

/// `(−1)^p` applied to every degree-`p` part.
fn graded(m: &MixedForm) -> Result<MixedForm> {
    let mut out = MixedForm::new(m.grid(), m.space());
    for f in m.parts() {
        let s = if f.degree() % 2 == 0 { 1.0 } else { -1.0 };
        out.insert(f.scale(C64::new(s, 0.0)))?;
    }
    Ok(out)
}

impl CylForm {
    /// `(a + ds∧b)(c + ds∧d) = ac + ds∧(bc + (−1)^{|a|} ad)`.
    fn wedge(&self, o: &CylForm) -> Result<CylForm> {
        Ok(CylForm {
            tan: self.tan.wedge(&o.tan)?,
            nor: self.nor.wedge(&o.tan)?.add(&graded(&self.tan)?.wedge(&o.nor)?)?,
        })
    }

    fn trace(&self) -> CylForm {
        CylForm { tan: self.tan.trace(), nor: self.nor.trace() }
    }

    fn scale(&self, c: C64) -> CylForm {
        CylForm { tan: self.tan.scale(c), nor: self.nor.scale(c) }
    }

    fn add(&self, o: &CylForm) -> Result<CylForm> {
        Ok(CylForm { tan: self.tan.add(&o.tan)?, nor: self.nor.add(&o.nor)? })
    }
}

fn single(f: Form) -> Result<MixedForm> {
    MixedForm::new(f.grid(), f.space()).with(f)
}

/// `∫_Σ` of the `ds`-part of `ω ∧ V(F̂ + ds∧E)` for the connection `a` on Σ.
fn slice_integral(
    poly: &InvariantPolynomial,
    a: &Form,
    e: &Form,
    omega: &MixedForm,
) -> Result<C64> {
    let grid = a.grid();
    let space = a.space();
    let tan = if grid.dim() >= 2 { single(curvature(a)?)? } else { MixedForm::new(grid, space) };
    let f = CylForm { tan, nor: single(e.clone())? };
    let mut v = CylForm {
        tan: MixedForm::constant(grid, ValueSpace::Scalar, poly.constant_term(space)),
        nor: MixedForm::new(grid, ValueSpace::Scalar),
    };
    let c1 = poly.coefficient(1);
    if c1 != C64::new(0.0, 0.0) {
        v = v.add(&f.trace().scale(c1))?;
    }
    let c2 = poly.coefficient(2);
    if c2 != C64::new(0.0, 0.0) {
        v = v.add(&f.wedge(&f)?.trace().scale(c2))?;
    }
    let w = CylForm { tan: omega.clone(), nor: MixedForm::new(grid, ValueSpace::Scalar) };
    w.wedge(&v)?.nor.integrate_top(Domain::Full)
}

fn omega_at(c: &CylinderConfig, s: f64) -> Result<MixedForm> {
    match &c.omega2 {
        Some(w2) => c.omega1.add(&w2.scale(C64::new(s, 0.0))),
        None => Ok(c.omega1.clone()),
    }
}

fn connection_at(c: &CylinderConfig, s: f64, t: f64) -> Result<Form> {
    let mut a = c.b1.add(&c.b3.scale(C64::new(t, 0.0)))?;
    if let Some(b2) = &c.b2 {
        a = a.add(&b2.scale(C64::new(s, 0.0)))?;
    }
    Ok(a)
}

/// `∫_{Σ×[0,ε]} ω ∧ V(F_ε)` with the `B₃` part integrated in `t = f(s/ε)`
/// and the `B₂` part in `u = s/ε`.
pub fn cylinder_integral(c: &CylinderConfig) -> Result<C64> {
    c.validate()?;
    let (nodes, weights) = quadrature::unit_interval(c.transverse_points);
    let s_dependent = c.b2.is_some() || c.omega2.is_some();
    let terms = exec::map_indices(nodes.len(), |i| -> Result<C64> {
        let t = nodes[i];
        let s = if s_dependent { c.epsilon * c.profile.inverse(t) } else { 0.0 };
        let mut g = slice_integral(&c.polynomial, &connection_at(c, s, t)?, &c.b3, &omega_at(c, s)?)?;
        if let Some(b2) = &c.b2 {
            let u = nodes[i];
            let s = c.epsilon * u;
            let a = connection_at(c, s, c.profile.value(u))?;
            g += slice_integral(&c.polynomial, &a, b2, &omega_at(c, s)?)? * c.epsilon;
        }
        Ok(g * weights[i])
    });
    terms.into_iter().sum()
}

/// The `ε → 0` limit `∫_Σ ω₁ ∧ TV(B₁ + B₃, B₁)`.
pub fn lemma1_limit(c: &CylinderConfig) -> Result<C64> {
    c.validate()?;
    let tv = transgression(&c.polynomial, &c.b1.add(&c.b3)?, &c.b1, 16)?;
    c.omega1.wedge(&tv)?.integrate_top(Domain::Full)
}

/// `cylinder_integral` at each width, in order.
pub fn epsilon_sweep(c: &CylinderConfig, widths: &[f64]) -> Result<Vec<(f64, C64)>> {
    widths
        .iter()
        .map(|&e| {
            let cfg = CylinderConfig { epsilon: e, ..c.clone() };
            Ok((e, cylinder_integral(&cfg)?))
        })
        .collect()
}

/// The gauge cylinder pasted at the wall: `V = ch`, `B₁ = A⁻|_Σ`, `B₃ = 𝒜|_Σ`,
/// `ω₁ = Â(R̃)|_Σ` with `R̃` the curvature of `Γ⁻|_Σ`.
pub fn paste_cylinder(w: &WallData, epsilon: f64) -> Result<CylinderConfig> {
    let b1 = w.restricted_gauge(Side::Minus)?;
    let b3 = w.restricted_gauge(Side::Plus)?.sub(&b1)?;
    let omega1 = InvariantPolynomial::a_hat().of_connection(&w.restricted_frame(Side::Minus)?)?;
    Ok(CylinderConfig::new(InvariantPolynomial::chern_character(), b1, b3, omega1, epsilon))
}

/// Which connection is interpolated first across the corner of two cylinders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CornerOrder {
    /// Interpolate `Γ` with `A = A⁻` fixed, then `A` with `Γ = Γ⁺` fixed.
    FrameFirst,
    /// Interpolate `A` with `Γ = Γ⁻` fixed, then `Γ` with `A = A⁺` fixed.
    GaugeFirst,
}

/// Width used for the two cylinders; the integrals are exact in `ε` when `B₂ = 0`.
pub const CORNER_WIDTH: f64 = 0.1;

/// The two cylinders of the corner construction.
pub fn corner_cylinders(w: &WallData, order: CornerOrder) -> Result<[CylinderConfig; 2]> {
    let (a_m, a_p) = (w.restricted_gauge(Side::Minus)?, w.restricted_gauge(Side::Plus)?);
    let (g_m, g_p) = (w.restricted_frame(Side::Minus)?, w.restricted_frame(Side::Plus)?);
    let ch = InvariantPolynomial::chern_character();
    let ah = InvariantPolynomial::a_hat();
    let frame_cyl = |gauge_fixed: &Form| -> Result<CylinderConfig> {
        Ok(CylinderConfig::new(ah.clone(), g_m.clone(), g_p.sub(&g_m)?, ch.of_connection(gauge_fixed)?, CORNER_WIDTH))
    };
    let gauge_cyl = |frame_fixed: &Form| -> Result<CylinderConfig> {
        Ok(CylinderConfig::new(ch.clone(), a_m.clone(), a_p.sub(&a_m)?, ah.of_connection(frame_fixed)?, CORNER_WIDTH))
    };
    Ok(match order {
        CornerOrder::FrameFirst => [frame_cyl(&a_m)?, gauge_cyl(&g_p)?],
        CornerOrder::GaugeFirst => [gauge_cyl(&g_m)?, frame_cyl(&a_p)?],
    })
}

/// `−2 (I₁ + I₂)` from the two corner cylinders, each integrated directly.
pub fn two_cylinder_rsa(w: &WallData, order: CornerOrder) -> Result<C64> {
    let cyls = corner_cylinders(w, order)?;
    let mut total = C64::new(0.0, 0.0);
    for c in &cyls {
        total += cylinder_integral(c)?;
    }
    Ok(total * (-2.0 * w.orientation()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::WallPlane;
    use crate::lie::LieValue;
    use std::f64::consts::PI;

    fn u1_wall(n: usize) -> WallData {
        let g = Grid::torus(2, n, 2.0 * PI).unwrap();
        let sp = ValueSpace::Gauge { rank: 1 };
        let jump = Form::from_fn(&g, 1, sp, |ax, x, o| {
            o[0] = if ax == [1] { C64::new(0.0, -(0.3 + 0.2 * x[1].cos())) } else { C64::new(0.0, 0.0) }
        })
        .unwrap();
        WallData::builder(&g, WallPlane { axis: 0, index: 4 }, 1).gauge_jump(jump).build().unwrap()
    }

    #[test]
    fn abelian_circle_cylinder_equals_limit() {
        let w = u1_wall(16);
        let c = paste_cylinder(&w, 0.2).unwrap();
        let direct = cylinder_integral(&c).unwrap();
        let limit = lemma1_limit(&c).unwrap();
        // ∫ (i/2π) tr 𝒜 over the circle, 𝒜_y = −i(0.3 + 0.2 cos y).
        let oracle = 0.3 * 2.0 * PI / (2.0 * PI);
        assert!((direct.re - oracle).abs() < 1e-12, "{direct}");
        assert!((direct - limit).norm() < 1e-12);
    }

    #[test]
    fn width_independent_without_b2() {
        let w = u1_wall(16);
        let c = paste_cylinder(&w, 1.0).unwrap();
        let sweep = epsilon_sweep(&c, &[1.0, 0.1, 0.01]).unwrap();
        for (_, v) in &sweep {
            assert!((v - sweep[0].1).norm() < 1e-12);
        }
    }

    #[test]
    fn b2_contribution_vanishes_linearly() {
        let w = u1_wall(16);
        let mut c = paste_cylinder(&w, 1.0).unwrap();
        let b2 = Form::constant(
            c.grid(),
            1,
            ValueSpace::Gauge { rank: 1 },
            &[(&[0], LieValue::scalar(C64::new(0.0, -0.5)))],
        )
        .unwrap();
        c.b2 = Some(b2);
        let limit = lemma1_limit(&c).unwrap();
        let sweep = epsilon_sweep(&c, &[0.4, 0.2, 0.1]).unwrap();
        let d: Vec<f64> = sweep.iter().map(|(_, v)| (v - limit).norm()).collect();
        // ∫ (i/2π)·ε·B₂ over the circle = ε·0.5.
        for ((e, _), dv) in sweep.iter().zip(&d) {
            assert!((dv - 0.5 * e).abs() < 1e-12, "{e}: {dv}");
        }
    }

    #[test]
    fn rejects_coarse_transverse_rule() {
        let w = u1_wall(16);
        let mut c = paste_cylinder(&w, 0.1).unwrap();
        c.transverse_points = 16;
        assert!(cylinder_integral(&c).is_err());
    }

    #[test]
    fn corner_matches_surface_term_on_circle() {
        let w = u1_wall(16);
        let v = two_cylinder_rsa(&w, CornerOrder::FrameFirst).unwrap();
        let u = two_cylinder_rsa(&w, CornerOrder::GaugeFirst).unwrap();
        assert!((v.re + 0.6).abs() < 1e-12, "{v}");
        assert!((u - v).norm() < 1e-12);
    }
}
