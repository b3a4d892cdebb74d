//! Gauss–Legendre rules.

use std::f64::consts::PI;

/// Nodes and weights of the `q`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    for i in 0..q.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(q, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let dp = legendre(q, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_q(x), P_q'(x))` by the three-term recurrence.
fn legendre(q: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=q {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if q == 0 { 1.0 } else { p1 };
    let d = q as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// The Gauss–Legendre rule mapped to `[0, 1]`.
pub fn unit_interval(q: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(q);
    (
        x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        w.iter().map(|w| 0.5 * w).collect(),
    )
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]` with `panels` panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, q: usize, panels: usize) -> f64 {
    let (x, w) = unit_interval(q);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let lo = a + k as f64 * h;
        for (t, wt) in x.iter().zip(&w) {
            sum += wt * f(lo + t * h);
        }
    }
    sum * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        for q in [1, 2, 5, 8, 16, 32] {
            let (x, w) = gauss_legendre(q);
            for deg in 0..2 * q {
                let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 { 2.0 / (deg + 1) as f64 } else { 0.0 };
                assert!((s - exact).abs() < 1e-13, "q={q} deg={deg}: {s} vs {exact}");
            }
        }
    }

    #[test]
    fn composite_rule() {
        let v = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, 8, 4);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
