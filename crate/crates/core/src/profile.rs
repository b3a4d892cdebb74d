//! The bump-integral smoothing profile `f(t) = ∫₀ᵗ b / ∫₀¹ b`,
//! `b(u) = exp(−1/(u(1−u)))`.

use serde::{Deserialize, Serialize};

use crate::quadrature;

const ORDER: usize = 20;
const PANELS: usize = 24;

/// Flat-ended monotone profile from 0 to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothProfile {
    half_integral: f64,
}

impl Default for SmoothProfile {
    fn default() -> Self {
        Self::bump()
    }
}

fn bump(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        (-1.0 / (u * (1.0 - u))).exp()
    }
}

impl SmoothProfile {
    pub fn bump() -> Self {
        SmoothProfile { half_integral: quadrature::integrate(bump, 0.0, 0.5, ORDER, PANELS) }
    }

    /// Identifier of the profile family.
    pub fn family(&self) -> &'static str {
        "bump-integral"
    }

    /// `f(t)`, clamped to `[0, 1]` outside the unit interval.
    pub fn value(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else if t <= 0.5 {
            0.5 * quadrature::integrate(bump, 0.0, t, ORDER, PANELS) / self.half_integral
        } else {
            1.0 - self.value(1.0 - t)
        }
    }

    /// `f′(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        0.5 * bump(t) / self.half_integral
    }

    /// `(f(t), f′(t))`.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        (self.value(t), self.derivative(t))
    }

    /// `f^{(m)}(t)` for `m ≥ 1`, from the derivatives of `g = −1/u − 1/(1−u)`
    /// via `b′ = g′ b`.
    pub fn nth_derivative(&self, t: f64, m: usize) -> f64 {
        assert!(m >= 1);
        let b0 = bump(t);
        if b0 == 0.0 {
            return 0.0;
        }
        // g^{(j)}(t), j ≥ 1
        let mut fact = 1.0;
        let g: Vec<f64> = (1..m)
            .map(|j| {
                fact *= j as f64;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                -(sign * fact / t.powi(j as i32 + 1) + fact / (1.0 - t).powi(j as i32 + 1))
            })
            .collect();
        // b^{(k)} = Σ_{j<k} C(k−1, j) g^{(j+1)} b^{(k−1−j)}
        let mut b = vec![b0];
        for k in 1..m {
            let mut s = 0.0;
            let mut c = 1.0;
            for j in 0..k {
                s += c * g[j] * b[k - 1 - j];
                c = c * (k - 1 - j) as f64 / (j + 1) as f64;
            }
            b.push(s);
        }
        0.5 * b[m - 1] / self.half_integral
    }

    /// `f⁻¹(v)` for `v ∈ [0, 1]` (safeguarded Newton).
    pub fn inverse(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        if v >= 1.0 {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut t = 0.5;
        for _ in 0..200 {
            let (f, d) = self.eval(t);
            let r = f - v;
            if r == 0.0 {
                return t;
            }
            if r > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let newton = t - r / d;
            let next = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (next - t).abs() < 1e-16 || hi - lo < 1e-16 {
                return next;
            }
            t = next;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_values_and_symmetry() {
        let f = SmoothProfile::bump();
        assert_eq!(f.value(0.0), 0.0);
        assert_eq!(f.value(1.0), 1.0);
        assert!((f.value(0.5) - 0.5).abs() < 1e-15);
        for t in [0.1, 0.3, 0.45] {
            assert!((f.value(t) + f.value(1.0 - t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn monotone() {
        let f = SmoothProfile::bump();
        let mut prev = 0.0;
        for k in 1..=200 {
            let v = f.value(k as f64 / 200.0);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn flat_ends() {
        let f = SmoothProfile::bump();
        assert!(f.derivative(1e-3) < 1e-12);
        for m in 1..=4 {
            assert!(f.nth_derivative(0.0, m).abs() < 1e-12);
            assert!(f.nth_derivative(1.0, m).abs() < 1e-12);
            assert!(f.nth_derivative(1e-3, m).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_quotient() {
        let f = SmoothProfile::bump();
        for t in [0.2, 0.5, 0.7] {
            let h = 1e-5;
            let fd = (f.value(t + h) - f.value(t - h)) / (2.0 * h);
            assert!((fd - f.derivative(t)).abs() < 1e-8);
            assert!((f.nth_derivative(t, 1) - f.derivative(t)).abs() < 1e-14);
            let fd2 = (f.derivative(t + h) - f.derivative(t - h)) / (2.0 * h);
            assert!((fd2 - f.nth_derivative(t, 2)).abs() < 1e-6);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = SmoothProfile::bump();
        for v in [1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999] {
            let t = f.inverse(v);
            assert!((f.value(t) - v).abs() < 1e-14, "v={v}");
        }
    }

    #[test]
    fn quadrature_normalization_is_accurate() {
        let f = SmoothProfile::bump();
        // Independent reference: composite Simpson on a fine mesh.
        let n = 20000;
        let h = 0.5 / n as f64;
        let mut s = bump(0.0) + bump(0.5);
        for k in 1..n {
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * bump(k as f64 * h);
        }
        s *= h / 3.0;
        assert!((s - f.half_integral).abs() < 1e-13);
    }
}
