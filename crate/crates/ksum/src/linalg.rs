//! Dense complex matrix kernel: Hermitian eigendecomposition, trace norm,
//! PSD projection, tensor products.
//!
//! Everything in scope is at most 256-dimensional, so all storage is dense
//! row-major and the eigensolver is a cyclic Jacobi iteration with a
//! threshold skip. Jacobi is slower than Householder tridiagonalization but
//! is simple, unconditionally stable, and accurate to a few ulps at these
//! sizes.

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix, row-major.
///
/// Equality of floating-point matrices is always tested through
/// [`ComplexMatrix::approx_eq`] with an explicit absolute tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

pub const C_ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const C_ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C_ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C_ONE);
        }
        m
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(rows, cols, data)
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Outer product `v v^dag` of a column vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let out = (0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .map(|(j, x)| self.get(i, j) * x)
                    .sum()
            })
            .collect();
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in max_abs_diff"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise comparison under an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_abs_diff(other) <= tol
    }

    /// Largest deviation from Hermitian symmetry, `max |H_ij - conj(H_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let dev = self.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// Symmetrized copy `(H + H^dag)/2` with a real diagonal.
    pub fn hermitized(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
            out.set(i, i, Complex64::new(self.get(i, i).re, 0.0));
        }
        out
    }

    /// Kronecker product with `self`'s indices major.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == C_ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Tensor (Kronecker) product `A (x) B`, A's indices major.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Full eigensystem of a Hermitian matrix.
///
/// Eigenvalues are real and sorted descending; `eigenvectors` holds the
/// corresponding orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap_or(&0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.first().unwrap_or(&0.0)
    }

    /// Rebuild `V f(diag) V^dag` for a real function of the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k) * w;
                if vik == C_ZERO {
                    continue;
                }
                for j in 0..n {
                    let val = out.get(i, j) + vik * v.get(j, k).conj();
                    out.set(i, j, val);
                }
            }
        }
        out
    }

    /// `V diag(lambda) V^dag`; reconstruction of the input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|x| x)
    }
}

/// Relative off-diagonal target for the Jacobi sweep loop.
const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `tol` bounds the accepted deviation from Hermitian symmetry; anything
/// beyond it is rejected rather than silently symmetrized away.
pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    h.check_hermitian(tol)?;
    let n = h.rows();
    let mut a = h.hermitized();
    let mut v = ComplexMatrix::identity(n);

    if n <= 1 {
        return Ok(Spectrum {
            eigenvalues: a.data().first().map(|c| c.re).into_iter().collect(),
            eigenvectors: v,
        });
    }

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let off_target = JACOBI_OFF_TOL * scale;
    // Rotations below this threshold cannot move off(A) above the target.
    let skip = off_target / (2.0 * n as f64);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += a.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off_sq).sqrt() <= off_target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag <= skip {
                    continue;
                }
                // Phase that makes the pivot entry real, then a standard
                // symmetric Jacobi rotation on the 2x2 subproblem.
                let phase = apq / mag;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cp = phase.conj();

                // A <- U^dag A U with U = D R, column pass then row pass.
                for r in 0..n {
                    let xp = a.get(r, p);
                    let xq = a.get(r, q);
                    a.set(r, p, xp * c - xq * cp * s);
                    a.set(r, q, xp * s + xq * cp * c);
                }
                for col in 0..n {
                    let xp = a.get(p, col);
                    let xq = a.get(q, col);
                    a.set(p, col, xp * c - xq * phase * s);
                    a.set(q, col, xp * s + xq * phase * c);
                }
                // Clean the rounding residue the rotation was built to kill.
                a.set(p, q, C_ZERO);
                a.set(q, p, C_ZERO);
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));

                for r in 0..n {
                    let xp = v.get(r, p);
                    let xq = v.get(r, q);
                    v.set(r, p, xp * c - xq * cp * s);
                    v.set(r, q, xp * s + xq * cp * c);
                }
            }
        }
    }
    if !converged {
        // One more residual check; the sweep cap is generous for dim <= 256.
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += a.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off_sq).sqrt() > off_target * 10.0 {
            return Err(Error::Numerical(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps (dim {n})"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Hermiticity tolerance used when an operation takes no explicit `tol`.
pub fn default_hermitian_tol(m: &ComplexMatrix) -> f64 {
    1e-9 * m.max_abs().max(1.0)
}

/// Trace norm `(1/2) tr sqrt(X^dag X)` of a Hermitian matrix: half the sum
/// of absolute eigenvalues. General non-Hermitian inputs are out of scope.
pub fn trace_norm(x: &ComplexMatrix) -> Result<f64> {
    let spec = hermitian_eig(x, default_hermitian_tol(x))?;
    Ok(0.5 * spec.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}

/// Projection onto the PSD cone: clip negative eigenvalues to zero.
/// This is the Frobenius-nearest PSD matrix to a Hermitian input.
pub fn psd_project(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = hermitian_eig(h, default_hermitian_tol(h))?;
    if spec.min_eigenvalue() >= 0.0 {
        return Ok(h.hermitized());
    }
    Ok(spec.apply(|l| l.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c(rng.gen_range(-1.0..1.0), 0.0));
            for j in (i + 1)..n {
                let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        m
    }

    #[test]
    fn eig_identity() {
        let spec = hermitian_eig(&ComplexMatrix::identity(4), 1e-12).unwrap();
        for l in &spec.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_pauli_x() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let spec = hermitian_eig(&x, 1e-12).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((spec.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_golden_ratio_2x2() {
        // Characteristic polynomial l^2 - l/3 - 1/9 = 0, roots (1 +- sqrt5)/6.
        let t = 1.0 / 3.0;
        let h = ComplexMatrix::from_real(2, 2, &[t, t, t, 0.0]).unwrap();
        let spec = hermitian_eig(&h, 1e-12).unwrap();
        let s5 = 5.0_f64.sqrt();
        assert!((spec.eigenvalues[0] - (1.0 + s5) / 6.0).abs() < 1e-14);
        assert!((spec.eigenvalues[1] - (1.0 - s5) / 6.0).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eig(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_reconstruction_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[2usize, 3, 5, 8, 16, 48] {
            let h = random_hermitian(n, &mut rng);
            let spec = hermitian_eig(&h, 1e-12).unwrap();
            assert!(
                spec.reconstruct().max_abs_diff(&h.hermitized()) <= 1e-10,
                "reconstruction failed at dim {n}"
            );
            // Descending order and orthonormal columns.
            for w in spec.eigenvalues.windows(2) {
                assert!(w[0] >= w[1]);
            }
            let vtv = spec
                .eigenvectors
                .adjoint()
                .matmul(&spec.eigenvectors)
                .unwrap();
            assert!(vtv.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-11);
        }
    }

    #[test]
    fn eig_reconstruction_dim_256() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(256, &mut rng);
        let spec = hermitian_eig(&h, 1e-12).unwrap();
        assert!(spec.reconstruct().max_abs_diff(&h.hermitized()) <= 1e-10);
    }

    #[test]
    fn trace_norm_cases() {
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!((trace_norm(&d).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_bell_minus_mixed() {
        // Bell projector minus the maximally mixed two-qubit state has
        // eigenvalues (3/4, -1/4, -1/4, -1/4).
        let r = 0.5;
        let mut bell = ComplexMatrix::zeros(4, 4);
        for &(i, j) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            bell.set(i, j, c(r, 0.0));
        }
        let diff = bell.sub(&ComplexMatrix::identity(4).scale(c(0.25, 0.0))).unwrap();
        assert!((trace_norm(&diff).unwrap() - 0.75).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(trace_norm(&m).is_err());
    }

    #[test]
    fn trace_norm_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let a = random_hermitian(6, &mut rng);
            let b = random_hermitian(6, &mut rng);
            let lhs = trace_norm(&a.add(&b).unwrap()).unwrap();
            let rhs = trace_norm(&a).unwrap() + trace_norm(&b).unwrap();
            assert!(lhs <= rhs + 1e-10);
        }
    }

    #[test]
    fn trace_norm_unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let x = random_hermitian(5, &mut rng);
            let u = hermitian_eig(&random_hermitian(5, &mut rng), 1e-12)
                .unwrap()
                .eigenvectors;
            let rotated = u.matmul(&x).unwrap().matmul(&u.adjoint()).unwrap();
            let a = trace_norm(&x).unwrap();
            let b = trace_norm(&rotated).unwrap();
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn psd_project_cases() {
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let p = psd_project(&d).unwrap();
        assert!(p.approx_eq(
            &ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]),
            1e-14
        ));

        // Pauli-X / 2: clipping the -1/2 eigenvalue leaves the |+><+|/2 part.
        let h = ComplexMatrix::from_real(2, 2, &[0.0, 0.5, 0.5, 0.0]).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[0.25, 0.25, 0.25, 0.25]).unwrap();
        assert!(psd_project(&h).unwrap().approx_eq(&expect, 1e-14));
    }

    #[test]
    fn psd_project_fixed_point_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let h = random_hermitian(5, &mut rng);
            let p = psd_project(&h).unwrap();
            let spec = hermitian_eig(&p, 1e-10).unwrap();
            assert!(spec.min_eigenvalue() >= -1e-12);
            let pp = psd_project(&p).unwrap();
            assert!(pp.approx_eq(&p, 1e-10));
        }
        // A PSD input is a fixed point.
        let g = random_hermitian(4, &mut rng);
        let psd = {
            let spec = hermitian_eig(&g, 1e-12).unwrap();
            spec.apply(|l| l * l)
        };
        assert!(psd_project(&psd).unwrap().approx_eq(&psd, 1e-10));
    }

    #[test]
    fn tensor_product_cases() {
        let i6 = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert!(i6.approx_eq(&ComplexMatrix::identity(6), 0.0));

        let a = ComplexMatrix::from_diag(&[c(2.0, 0.0), c(3.0, 0.0)]);
        let b = ComplexMatrix::from_diag(&[c(5.0, 0.0), c(7.0, 0.0)]);
        let ab = tensor_product(&a, &b);
        let expect = ComplexMatrix::from_diag(&[
            c(10.0, 0.0),
            c(14.0, 0.0),
            c(15.0, 0.0),
            c(21.0, 0.0),
        ]);
        assert!(ab.approx_eq(&expect, 0.0));
    }

    #[test]
    fn tensor_product_bell_pair_rank_one() {
        let mut bell = ComplexMatrix::zeros(4, 4);
        for &(i, j) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            bell.set(i, j, c(0.5, 0.0));
        }
        let two = tensor_product(&bell, &bell);
        assert!((two.trace().re - 1.0).abs() < 1e-14);
        let spec = hermitian_eig(&two, 1e-12).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-12);
        for l in &spec.eigenvalues[1..] {
            assert!(l.abs() < 1e-12);
        }
    }
}
