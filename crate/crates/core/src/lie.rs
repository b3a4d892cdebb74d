use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What a form's coefficients are: plain scalars, `u(r)` gauge matrices, or
/// `so(n)` frame matrices (real antisymmetric, embedded in complex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ValueSpace {
    Scalar,
    Gauge { rank: usize },
    Frame { dim: usize },
}

impl ValueSpace {
    /// Side length of the coefficient matrices.
    pub fn size(self) -> usize {
        match self {
            ValueSpace::Scalar => 1,
            ValueSpace::Gauge { rank } => rank,
            ValueSpace::Frame { dim } => dim,
        }
    }

    /// Value space of a pointwise product, if the operands compose.
    pub fn compose(self, other: ValueSpace) -> Result<ValueSpace> {
        match (self, other) {
            (ValueSpace::Scalar, x) | (x, ValueSpace::Scalar) => Ok(x),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::ValueSpaceMismatch(a, b)),
        }
    }
}

impl fmt::Display for ValueSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSpace::Scalar => write!(f, "scalar"),
            ValueSpace::Gauge { rank } => write!(f, "u({rank})"),
            ValueSpace::Frame { dim } => write!(f, "so({dim})"),
        }
    }
}

/// `out += alpha · a · b` for square row-major matrices; a side of size 1 broadcasts as a scalar.
pub(crate) fn mul_acc(out: &mut [C64], a: &[C64], na: usize, b: &[C64], nb: usize, alpha: C64) {
    match (na, nb) {
        (1, 1) => out[0] += alpha * a[0] * b[0],
        (1, _) => {
            let s = alpha * a[0];
            out.iter_mut().zip(b).for_each(|(o, &x)| *o += s * x);
        }
        (_, 1) => {
            let s = alpha * b[0];
            out.iter_mut().zip(a).for_each(|(o, &x)| *o += s * x);
        }
        (n, m) => {
            debug_assert_eq!(n, m);
            for i in 0..n {
                for k in 0..n {
                    let aik = alpha * a[i * n + k];
                    if aik == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let row = &b[k * n..(k + 1) * n];
                    let o = &mut out[i * n..(i + 1) * n];
                    o.iter_mut().zip(row).for_each(|(o, &x)| *o += aik * x);
                }
            }
        }
    }
}

pub(crate) fn trace_of(a: &[C64], n: usize) -> C64 {
    (0..n).map(|i| a[i * n + i]).sum()
}

/// A single square complex matrix: one coefficient of a matrix-valued form.
#[derive(Debug, Clone, PartialEq)]
pub struct LieValue {
    n: usize,
    data: Vec<C64>,
}

impl LieValue {
    pub fn zeros(n: usize) -> Self {
        LieValue { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn scalar(z: C64) -> Self {
        LieValue { n: 1, data: vec![z] }
    }

    /// From row-major entries; panics unless `data.len()` is a perfect square.
    pub fn from_row_major(data: Vec<C64>) -> Self {
        let n = (data.len() as f64).sqrt().round() as usize;
        assert_eq!(n * n, data.len(), "LieValue needs n*n entries");
        LieValue { n, data }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        LieValue { n, data }
    }

    /// The su(2) generator `T_a = -(i/2) σ_a`, `a ∈ {1, 2, 3}`.
    pub fn su2(a: usize) -> Self {
        let z = C64::new(0.0, 0.0);
        let h = 0.5;
        let data = match a {
            1 => vec![z, C64::new(0.0, -h), C64::new(0.0, -h), z],
            2 => vec![z, C64::new(-h, 0.0), C64::new(h, 0.0), z],
            3 => vec![C64::new(0.0, -h), z, z, C64::new(0.0, h)],
            _ => panic!("su(2) generator index must be 1, 2 or 3"),
        };
        LieValue { n: 2, data }
    }

    /// The so(n) generator with `+1` at `(i, j)` and `-1` at `(j, i)`.
    pub fn so(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[i * n + j] = C64::new(1.0, 0.0);
        m.data[j * n + i] = C64::new(-1.0, 0.0);
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &LieValue) -> LieValue {
        let n = self.n.max(other.n);
        let mut out = LieValue::zeros(n);
        mul_acc(&mut out.data, &self.data, self.n, &other.data, other.n, C64::new(1.0, 0.0));
        out
    }

    pub fn add(&self, other: &LieValue) -> LieValue {
        assert_eq!(self.n, other.n);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        LieValue { n: self.n, data }
    }

    pub fn sub(&self, other: &LieValue) -> LieValue {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> LieValue {
        LieValue { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn commutator(&self, other: &LieValue) -> LieValue {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn adjoint(&self) -> LieValue {
        LieValue::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        trace_of(&self.data, self.n)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm of `X + X†`.
    pub fn anti_hermitian_defect(&self) -> f64 {
        self.add(&self.adjoint()).max_abs()
    }
}
