//! Dense Hermitian eigensolves (single-threaded per operator).

use faer::Mat;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and,
/// when requested, the eigenvectors as columns (row-major `n×n`).
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<C64>>,
    pub n: usize,
}

impl Eigen {
    /// Component `i` of eigenvector `k`.
    pub fn vector(&self, i: usize, k: usize) -> C64 {
        self.vectors.as_ref().expect("eigenvectors were computed")[i * self.n + k]
    }
}

fn pin_sequential() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

/// Eigen-decomposition of the Hermitian matrix `m` (row-major, lower triangle read).
pub fn hermitian_eigen(m: &[C64], n: usize, vectors: bool) -> Result<Eigen> {
    assert_eq!(m.len(), n * n);
    pin_sequential();
    let a = Mat::<faer::c64>::from_fn(n, n, |i, j| m[i * n + j]);
    if !vectors {
        let values = a
            .self_adjoint_eigenvalues(faer::Side::Lower)
            .map_err(|e| Error::Eigensolver(format!("{e:?} (dimension {n})")))?;
        return Ok(Eigen { values, vectors: None, n });
    }
    let evd = a
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?} (dimension {n})")))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let values = (0..n).map(|k| s[k].re).collect();
    let mut vecs = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            vecs[i * n + k] = u[(i, k)];
        }
    }
    Ok(Eigen { values, vectors: Some(vecs), n })
}
