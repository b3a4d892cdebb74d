//! Invariant polynomials of curvature and their transgressions.
//!
//! Conventions: connections are anti-Hermitian (gauge) or real antisymmetric
//! (frame), `F = dA + A∧A`, and
//!
//! * `ch(F) = r + (i/2π) tr F + ½ (i/2π)² tr F∧F`, so a `u(1)` field with
//!   `n` flux quanta has `∫ ch₁ = n`;
//! * `Â(R) = 1 + tr(R∧R) / (192π²)`, i.e. `1 − p₁/24` with `p₁ = −tr R²/(8π²)`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{ext_d, wedge, Form, MixedForm};
use crate::lie::ValueSpace;
use crate::quadrature;

/// Which invariant polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolynomialKind {
    ChernCharacter,
    AHat,
    Custom,
}

/// `V(X) = V₀ + Σ_k c_k tr(X^k)` for `k = 1, 2` (degrees up to 4).
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantPolynomial {
    kind: PolynomialKind,
    constant: Option<C64>,
    coefficients: [C64; 2],
}

impl InvariantPolynomial {
    /// The Chern character; its degree-0 part is the rank.
    pub fn chern_character() -> Self {
        let c1 = C64::new(0.0, 1.0 / (2.0 * PI));
        InvariantPolynomial {
            kind: PolynomialKind::ChernCharacter,
            constant: None,
            coefficients: [c1, c1 * c1 * 0.5],
        }
    }

    /// The Â-genus (only degree 0 and 4 up to dimension 4).
    pub fn a_hat() -> Self {
        InvariantPolynomial {
            kind: PolynomialKind::AHat,
            constant: Some(C64::new(1.0, 0.0)),
            coefficients: [C64::new(0.0, 0.0), C64::new(1.0 / (192.0 * PI * PI), 0.0)],
        }
    }

    /// A custom polynomial `constant + c₁ tr X + c₂ tr X²`.
    pub fn custom(constant: C64, c1: C64, c2: C64) -> Self {
        InvariantPolynomial {
            kind: PolynomialKind::Custom,
            constant: Some(constant),
            coefficients: [c1, c2],
        }
    }

    pub fn kind(&self) -> PolynomialKind {
        self.kind
    }

    /// Coefficient of `tr(X^k)`.
    pub fn coefficient(&self, k: usize) -> C64 {
        match k {
            1 | 2 => self.coefficients[k - 1],
            _ => C64::new(0.0, 0.0),
        }
    }

    /// Degree-0 value for coefficients in `space`.
    pub fn constant_term(&self, space: ValueSpace) -> C64 {
        self.constant.unwrap_or(C64::new(space.size() as f64, 0.0))
    }

    fn check_space(&self, space: ValueSpace) -> Result<()> {
        match (self.kind, space) {
            (PolynomialKind::AHat, ValueSpace::Frame { .. }) => Ok(()),
            (PolynomialKind::AHat, other) => Err(Error::ValueSpaceMismatch(
                ValueSpace::Frame { dim: other.size() },
                other,
            )),
            (PolynomialKind::ChernCharacter, ValueSpace::Frame { .. }) => Err(
                Error::ValueSpaceMismatch(ValueSpace::Gauge { rank: space.size() }, space),
            ),
            _ => Ok(()),
        }
    }

    /// `V(F)` as a scalar mixed form truncated at the grid dimension.
    pub fn evaluate(&self, f: &Form) -> Result<MixedForm> {
        if f.degree() != 2 {
            return Err(Error::WrongDegree { expected: 2, found: f.degree() });
        }
        self.check_space(f.space())?;
        let grid = f.grid();
        let mut out = MixedForm::constant(grid, ValueSpace::Scalar, self.constant_term(f.space()));
        let c1 = self.coefficient(1);
        if c1 != C64::new(0.0, 0.0) {
            out.insert(f.trace().scale(c1))?;
        }
        let c2 = self.coefficient(2);
        if grid.dim() >= 4 && c2 != C64::new(0.0, 0.0) {
            out.insert(wedge(f, f)?.trace().scale(c2))?;
        }
        Ok(out)
    }
}

impl InvariantPolynomial {
    /// `V(F_A)` for a connection `A`; on one-dimensional grids no 2-form fits
    /// and only the constant term survives.
    pub fn of_connection(&self, a: &Form) -> Result<MixedForm> {
        if a.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, found: a.degree() });
        }
        if a.grid().dim() < 2 {
            self.check_space(a.space())?;
            return Ok(MixedForm::constant(a.grid(), ValueSpace::Scalar, self.constant_term(a.space())));
        }
        self.evaluate(&curvature(a)?)
    }
}

/// A connection with its curvature `F = dA + A∧A`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvaturePair {
    pub connection: Form,
    pub curvature: Form,
}

impl CurvaturePair {
    pub fn new(a: Form) -> Result<Self> {
        let curvature = curvature(&a)?;
        Ok(CurvaturePair { connection: a, curvature })
    }

    /// Max-norm of `dF + A∧F − F∧A`.
    pub fn bianchi_residual(&self) -> Result<f64> {
        if self.curvature.grid().dim() < 3 {
            return Ok(0.0);
        }
        let a = &self.connection;
        let f = &self.curvature;
        let r = ext_d(f)?.add(&wedge(a, f)?)?.sub(&wedge(f, a)?)?;
        Ok(r.max_norm())
    }
}

/// `F = dA + A∧A`.
pub fn curvature(a: &Form) -> Result<Form> {
    if a.degree() != 1 {
        return Err(Error::WrongDegree { expected: 1, found: a.degree() });
    }
    ext_d(a)?.add(&wedge(a, a)?)
}

/// `ch(F)` for a rank-`r` curvature.
pub fn chern_character(f: &Form, rank: usize) -> Result<MixedForm> {
    if f.space().size() != rank {
        return Err(Error::InvalidInput(format!(
            "curvature has {} values, expected rank {rank}",
            f.space()
        )));
    }
    InvariantPolynomial::chern_character().evaluate(f)
}

/// `Â(R)` for a frame curvature.
pub fn a_hat(r: &Form) -> Result<MixedForm> {
    InvariantPolynomial::a_hat().evaluate(r)
}

/// `P = Â(R) ∧ ch(F)`.
pub fn pontryagin_density(r: &Form, f: &Form, rank: usize) -> Result<MixedForm> {
    a_hat(r)?.wedge(&chern_character(f, rank)?)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// The polarization `Ṽ_k(X₁, …, X_k) = c_k (1/k!) Σ_σ ± tr(X_σ1 ∧ … ∧ X_σk)`,
/// with Koszul signs for odd-degree slots.
pub fn polarization_eval(v: &InvariantPolynomial, k: usize, args: &[&Form]) -> Result<Form> {
    if k == 0 || args.len() != k {
        return Err(Error::InvalidInput(format!(
            "polarization of degree {k} needs {k} arguments, got {}",
            args.len()
        )));
    }
    let grid = args[0].grid();
    let mut space = ValueSpace::Scalar;
    let mut total = 0;
    for a in args {
        if a.grid() != grid {
            return Err(Error::GridMismatch);
        }
        space = space.compose(a.space())?;
        total += a.degree();
    }
    if total > grid.dim() {
        return Err(Error::DegreeOverflow { lhs: total - args[k - 1].degree(), rhs: args[k - 1].degree(), dim: grid.dim() });
    }
    v.check_space(space)?;
    let perms = permutations(k);
    let mut acc = Form::zero(grid, total, ValueSpace::Scalar)?;
    for perm in &perms {
        let mut sign = 1.0;
        for i in 0..k {
            for j in i + 1..k {
                if perm[i] > perm[j] && args[perm[i]].degree() % 2 == 1 && args[perm[j]].degree() % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        let mut prod = args[perm[0]].clone();
        for &i in &perm[1..] {
            prod = wedge(&prod, args[i])?;
        }
        acc = acc.add(&prod.trace().scale(C64::new(sign, 0.0)))?;
    }
    Ok(acc.scale(v.coefficient(k) / perms.len() as f64))
}

/// `TV(A₁, A₀) = Σ_k k ∫₀¹ Ṽ_k(A₁ − A₀, F_t, …, F_t) dt` along the straight
/// line `A_t = A₀ + t(A₁ − A₀)`, with a `q`-point Gauss–Legendre rule in `t`.
pub fn transgression(
    v: &InvariantPolynomial,
    a1: &Form,
    a0: &Form,
    q: usize,
) -> Result<MixedForm> {
    for a in [a1, a0] {
        if a.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, found: a.degree() });
        }
    }
    if q < 8 {
        return Err(Error::InvalidInput(format!("quadrature order {q} below 8")));
    }
    v.check_space(a0.space())?;
    let eta = a1.sub(a0)?;
    let grid = a0.grid();
    let mut out = MixedForm::new(grid, ValueSpace::Scalar);
    if v.coefficient(1) != C64::new(0.0, 0.0) {
        out.insert(polarization_eval(v, 1, &[&eta])?)?;
    }
    if grid.dim() >= 3 && v.coefficient(2) != C64::new(0.0, 0.0) {
        // F_t = F₀ + t G + t² η∧η is quadratic in t and Ṽ₂ is linear in its
        // second slot, so the rule is applied to F_t before the single polarization.
        let f0 = ext_d(a0)?.add(&wedge(a0, a0)?)?;
        let g = ext_d(&eta)?.add(&wedge(a0, &eta)?)?.add(&wedge(&eta, a0)?)?;
        let h = wedge(&eta, &eta)?;
        let (nodes, weights) = quadrature::unit_interval(q);
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for (&t, &w) in nodes.iter().zip(&weights) {
            m0 += 2.0 * w;
            m1 += 2.0 * w * t;
            m2 += 2.0 * w * t * t;
        }
        let f_bar = f0
            .scale(C64::new(m0, 0.0))
            .add(&g.scale(C64::new(m1, 0.0)))?
            .add(&h.scale(C64::new(m2, 0.0)))?;
        let acc = polarization_eval(v, 2, &[&eta, &f_bar])?;
        out.insert(acc)?;
    }
    Ok(out)
}

/// Max-norm of `dTV(A₁, A₀) − (V(F₁) − V(F₀))` over all positive degrees.
pub fn transgression_residual(v: &InvariantPolynomial, a1: &Form, a0: &Form, q: usize) -> Result<f64> {
    let lhs = transgression(v, a1, a0, q)?.ext_d()?;
    let rhs = v.evaluate(&curvature(a1)?)?.sub(&v.evaluate(&curvature(a0)?)?)?;
    let mut worst = 0.0f64;
    for d in 1..=a0.grid().dim() {
        worst = worst.max(lhs.part_or_zero(d)?.max_diff(&rhs.part_or_zero(d)?)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{integrate, Domain};
    use crate::grid::Grid;
    use crate::lie::LieValue;
    use crate::random::{band_limited_connection, rng, BandLimit};

    fn t(dim: usize, n: usize) -> Grid {
        Grid::torus(dim, n, 2.0 * PI).unwrap()
    }

    #[test]
    fn curvature_examples() {
        let g = t(2, 16);
        let sp = ValueSpace::Gauge { rank: 1 };
        assert_eq!(curvature(&Form::zero(&g, 1, sp).unwrap()).unwrap().max_norm(), 0.0);
        let c = 0.8;
        let a = Form::from_fn(&g, 1, sp, |ax, x, o| {
            o[0] = if ax == [1] { C64::new(0.0, -c * x[0].sin()) } else { C64::new(0.0, 0.0) }
        })
        .unwrap();
        let f = curvature(&a).unwrap();
        for (p, z) in f.component(&[0, 1]).unwrap().1.iter().enumerate() {
            let x = g.position(p);
            assert!((z - C64::new(0.0, -c * x[0].cos())).norm() < 1e-12);
        }
        let su = ValueSpace::Gauge { rank: 2 };
        let a = Form::constant(&g, 1, su, &[(&[0], LieValue::su2(1)), (&[1], LieValue::su2(2))])
            .unwrap();
        let f = curvature(&a).unwrap();
        let comm = LieValue::su2(1).commutator(&LieValue::su2(2));
        assert!(f.value_at(&[0, 1], 5).sub(&comm).max_abs() < 1e-14);
    }

    #[test]
    fn chern_character_degrees() {
        let g = t(2, 8);
        let f = Form::zero(&g, 2, ValueSpace::Gauge { rank: 2 }).unwrap();
        let ch = chern_character(&f, 2).unwrap();
        assert_eq!(ch.part(0).unwrap().component(&[]).unwrap().1[0], C64::new(2.0, 0.0));
        assert_eq!(ch.part(2).unwrap().max_norm(), 0.0);
        assert!(ch.part(4).is_none());
        assert!(chern_character(&f, 3).is_err());
    }

    #[test]
    fn a_hat_rejects_gauge_values() {
        let g = t(4, 8);
        let f = Form::zero(&g, 2, ValueSpace::Gauge { rank: 2 }).unwrap();
        assert!(a_hat(&f).is_err());
        let r = Form::zero(&g, 2, ValueSpace::Frame { dim: 4 }).unwrap();
        let ah = a_hat(&r).unwrap();
        assert_eq!(ah.degrees(), vec![0, 4]);
        let g2 = t(2, 8);
        let r2 = Form::zero(&g2, 2, ValueSpace::Frame { dim: 2 }).unwrap();
        assert_eq!(a_hat(&r2).unwrap().degrees(), vec![0]);
    }

    #[test]
    fn polarization_diagonal_and_symmetry() {
        let g = t(4, 8);
        let sp = ValueSpace::Gauge { rank: 2 };
        let band = BandLimit { max_mode: 1, amplitude: 0.6 };
        let mut r = rng(5);
        let a = band_limited_connection(&g, sp, band, &mut r).unwrap();
        let b = band_limited_connection(&g, sp, band, &mut r).unwrap();
        let fa = curvature(&a).unwrap();
        let fb = curvature(&b).unwrap();
        let ch = InvariantPolynomial::chern_character();
        let diag = polarization_eval(&ch, 2, &[&fa, &fa]).unwrap();
        let direct = chern_character(&fa, 2).unwrap();
        assert!(diag.max_diff(direct.part(4).unwrap()).unwrap() < 1e-14);
        let ab = polarization_eval(&ch, 2, &[&fa, &fb]).unwrap();
        let ba = polarization_eval(&ch, 2, &[&fb, &fa]).unwrap();
        assert!(ab.max_diff(&ba).unwrap() < 1e-12);
        let eab = polarization_eval(&ch, 2, &[&a, &fb]).unwrap();
        let eba = polarization_eval(&ch, 2, &[&fb, &a]).unwrap();
        assert!(eab.max_diff(&eba).unwrap() < 1e-12);
    }

    #[test]
    fn abelian_polarization_oracle() {
        let g = t(4, 8);
        let sp = ValueSpace::Gauge { rank: 1 };
        let band = BandLimit { max_mode: 1, amplitude: 1.0 };
        let mut r = rng(9);
        let eta = band_limited_connection(&g, sp, band, &mut r).unwrap();
        let f = curvature(&band_limited_connection(&g, sp, band, &mut r).unwrap()).unwrap();
        let ch = InvariantPolynomial::chern_character();
        let v = polarization_eval(&ch, 2, &[&eta, &f]).unwrap();
        // Single point: c2 · Σ_{μ,ρ<σ} η_μ F_ρσ dx^μ∧dx^ρ∧dx^σ, symmetrized by hand.
        let p = 123;
        let c2 = ch.coefficient(2);
        for axes in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            let mut expect = C64::new(0.0, 0.0);
            for i in 0..3 {
                let mu = axes[i];
                let rest: Vec<usize> = axes.iter().copied().filter(|&x| x != mu).collect();
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let e = eta.value_at(&[mu], p).trace();
                let fr = f.value_at(&rest, p).trace();
                // η∧F and F∧η agree for a 1-form and a 2-form; average of both orders.
                expect += c2 * sign * e * fr;
            }
            let got = v.value_at(&axes, p).trace();
            assert!((got - expect).norm() < 1e-15, "{axes:?}: {got} vs {expect}");
        }
    }

    #[test]
    fn degree_one_transgression_is_c1_trace() {
        let g = t(2, 16);
        let sp = ValueSpace::Gauge { rank: 1 };
        let band = BandLimit { max_mode: 3, amplitude: 1.0 };
        let mut r = rng(2);
        let a1 = band_limited_connection(&g, sp, band, &mut r).unwrap();
        let a0 = band_limited_connection(&g, sp, band, &mut r).unwrap();
        let ch = InvariantPolynomial::chern_character();
        let tch = transgression(&ch, &a1, &a0, 16).unwrap();
        let expect = a1.sub(&a0).unwrap().trace().scale(ch.coefficient(1));
        assert!(tch.part(1).unwrap().max_diff(&expect).unwrap() < 1e-15);
        let zero = transgression(&ch, &a1, &a1, 16).unwrap();
        assert_eq!(zero.max_norm(), 0.0);
        assert!(transgression(&ch, &a1, &a0, 4).is_err());
    }

    #[test]
    fn flux_three_chern_number() {
        let g = t(2, 16);
        let l = 2.0 * PI;
        let b = 2.0 * PI * 3.0 / (l * l);
        // Constant flux plus an exact perturbation dα.
        let f = Form::from_fn(&g, 2, ValueSpace::Gauge { rank: 1 }, |_, x, o| {
            o[0] = C64::new(0.0, -b - 0.3 * x[0].cos() * x[1].sin())
        })
        .unwrap();
        let ch = chern_character(&f, 1).unwrap();
        let n = integrate(ch.part(2).unwrap(), Domain::Full).unwrap();
        assert!((n - C64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn constant_commuting_t4_field() {
        let g = t(4, 8);
        let l = 2.0 * PI;
        let (m1, m2) = (2.0, -3.0);
        let b1 = 2.0 * PI * m1 / (l * l);
        let b2 = 2.0 * PI * m2 / (l * l);
        let sp = ValueSpace::Gauge { rank: 1 };
        let f = Form::constant(
            &g,
            2,
            sp,
            &[
                (&[0, 1], LieValue::scalar(C64::new(0.0, -b1))),
                (&[2, 3], LieValue::scalar(C64::new(0.0, -b2))),
            ],
        )
        .unwrap();
        let ch = chern_character(&f, 1).unwrap();
        let v = integrate(ch.part(4).unwrap(), Domain::Full).unwrap();
        assert!((v - C64::new(m1 * m2, 0.0)).norm() < 1e-10);
        let r0 = Form::zero(&g, 2, ValueSpace::Frame { dim: 4 }).unwrap();
        let p = pontryagin_density(&r0, &f, 1).unwrap();
        let vp = integrate(p.part(4).unwrap(), Domain::Full).unwrap();
        assert!((vp - v).norm() < 1e-12);
    }

    #[test]
    fn bianchi_identity() {
        let g = t(4, 8);
        let band = BandLimit { max_mode: 1, amplitude: 0.7 };
        let a = band_limited_connection(&g, ValueSpace::Gauge { rank: 2 }, band, &mut rng(4)).unwrap();
        let pair = CurvaturePair::new(a).unwrap();
        assert!(pair.bianchi_residual().unwrap() < 1e-10);
    }
}
