//! Shared helpers for unit and integration tests.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::ComplexMatrix;
use crate::qsys::{DensityMatrix, SystemLayout};

pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        for j in (i + 1)..n {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m.set(i, j, v);
            m.set(j, i, v.conj());
        }
    }
    m
}

/// Random full-rank density matrix: G G^dag normalized to unit trace.
pub fn random_density(dims: &[usize], rng: &mut ChaCha8Rng) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let mut g = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            g.set(
                i,
                j,
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
    }
    let gg = g.matmul(&g.adjoint()).unwrap();
    let trace = gg.trace().re;
    let rho = gg.scale(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::new(rho, SystemLayout::new(dims.to_vec()).unwrap()).unwrap()
}
