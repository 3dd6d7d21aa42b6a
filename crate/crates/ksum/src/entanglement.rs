//! Negativity, the PPT test, W-state closed forms, and the
//! negativity-based certified lower bound on distance to separability.

use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::qsys::{dephase_site, partial_trace, partial_transpose, Bipartition, DensityMatrix};
use crate::{Error, Result};

/// Negativity of a state across a cut, together with the negative part of
/// the partial-transpose spectrum it came from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NegativityResult {
    pub negativity: f64,
    pub negative_eigenvalues: Vec<f64>,
    pub cut: Bipartition,
}

/// Why a state is separable across a cut, with the numerical residual of
/// the check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparabilityCertificate {
    pub kind: CertificateKind,
    pub cut: Bipartition,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Block-diagonal in a single site's computational basis, hence a
    /// classical mixture across that cut.
    BlockDiagonal,
    /// Positive partial transpose on a 2x2 cut, where PPT implies
    /// separability.
    PptTwoQubit,
    /// Entrywise equal to the tensor product of its marginals.
    Product,
}

impl std::fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CertificateKind::BlockDiagonal => "block-diagonal",
            CertificateKind::PptTwoQubit => "ppt-two-qubit",
            CertificateKind::Product => "product",
        };
        f.write_str(s)
    }
}

/// Eigenvalues above this are treated as solver noise around zero, not as
/// genuine negative parts of a partial-transpose spectrum.
const NEGATIVE_EIGENVALUE_FLOOR: f64 = -1e-13;

/// Negativity: the absolute sum of negative eigenvalues of the partial
/// transpose, equal to `(|rho^Gamma|_1 - 1)/2` for unit-trace input. Both
/// routes are computed and must agree to 1e-10.
pub fn negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<NegativityResult> {
    let pt = partial_transpose(rho, cut)?;
    let spec = hermitian_eig(&pt, 1e-8)?;
    let negative: Vec<f64> = spec
        .eigenvalues
        .iter()
        .copied()
        .filter(|&l| l < NEGATIVE_EIGENVALUE_FLOOR)
        .collect();
    let neg_sum: f64 = -negative.iter().sum::<f64>();
    let one_norm: f64 = spec.eigenvalues.iter().map(|l| l.abs()).sum();
    let via_norm = (one_norm - 1.0) / 2.0;
    if (neg_sum - via_norm).abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "negativity routes disagree: {neg_sum} vs {via_norm}"
        )));
    }
    Ok(NegativityResult {
        negativity: neg_sum,
        negative_eigenvalues: negative,
        cut: cut.clone(),
    })
}

/// Positive partial transpose within `tol`. Necessary for separability on
/// every cut; sufficient on 2x2 and 2x3 cuts.
pub fn is_ppt(rho: &DensityMatrix, cut: &Bipartition, tol: f64) -> Result<bool> {
    let pt = partial_transpose(rho, cut)?;
    let spec = hermitian_eig(&pt, 1e-8)?;
    Ok(spec.min_eigenvalue() >= -tol)
}

/// Closed-form negativity of the reduced W state `rho_k` across a
/// (j | k-j) cut:
///
/// ```text
/// N(n, k, j) = sqrt(((n-k)/2n)^2 + j(k-j)/n^2) - (n-k)/2n
/// ```
///
/// This is the negative branch of the 2x2 block of the partial-transpose
/// spectrum; the other blocks contribute j/n and (k-j)/n, both nonnegative.
pub fn w_negativity(n: usize, k: usize, j: usize) -> Result<f64> {
    if !(1 <= j && j < k && k <= n) {
        return Err(Error::Validation(format!(
            "w_negativity needs 1 <= j < k <= n, got n={n}, k={k}, j={j}"
        )));
    }
    let nf = n as f64;
    let c = (n - k) as f64 / (2.0 * nf);
    let x = (j * (k - j)) as f64 / (nf * nf);
    Ok((c * c + x).sqrt() - c)
}

/// Minimum of [`w_negativity`] over the cut size `1 <= j <= k/2`. The
/// negativity is monotone in `j(k-j)`, so the minimum sits at `j = 1`;
/// the enumeration keeps that statement checked rather than assumed.
pub fn w_negativity_min_cut(n: usize, k: usize) -> Result<f64> {
    if !(2 <= k && k <= n) {
        return Err(Error::Validation(format!(
            "w_negativity_min_cut needs 2 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut best = f64::INFINITY;
    for j in 1..=(k / 2) {
        best = best.min(w_negativity(n, k, j)?);
    }
    Ok(best)
}

/// Certified lower bound on the trace-norm distance from a state with
/// negativity `neg` across a cut with ambient side dimensions
/// `(dim_a, dim_b)` to the separable states of that cut:
///
/// ```text
/// inf_{sigma separable} |rho - sigma|_tr >= neg / min(dim_a, dim_b)
/// ```
///
/// following from `|X^Gamma|_1 <= d |X|_1` and `|sigma^Gamma|_1 = 1` for
/// separable sigma. The ambient dimension is used, never a
/// support-restricted one: the nearest separable state need not share the
/// support of rho, so anything smaller would not be certified.
pub fn neg_distance_lb(neg: f64, dim_a: usize, dim_b: usize) -> f64 {
    debug_assert!(neg >= -1e-12);
    neg.max(0.0) / dim_a.min(dim_b) as f64
}

/// Issue a [`CertificateKind::BlockDiagonal`] certificate when the state is
/// (numerically) invariant under dephasing `site`, i.e. block-diagonal in
/// that site's computational basis. A block-diagonal state across a
/// single-site cut is a classical mixture `sum_z p_z |z><z| (x) rho_z`,
/// hence separable across ({site}, rest).
pub fn dephasing_separability_certificate(
    rho: &DensityMatrix,
    site: usize,
    tol: f64,
) -> Result<Option<SeparabilityCertificate>> {
    if rho.n_sites() < 2 {
        return Err(Error::Validation(
            "dephasing certificate needs at least two sites".into(),
        ));
    }
    let dephased = dephase_site(rho, site)?;
    let residual = rho.matrix().max_abs_diff(dephased.matrix());
    if residual <= tol {
        Ok(Some(SeparabilityCertificate {
            kind: CertificateKind::BlockDiagonal,
            cut: Bipartition::complement(rho.n_sites(), vec![site])?,
            residual,
        }))
    } else {
        Ok(None)
    }
}

/// Like [`dephasing_separability_certificate`], but for qubit sites the
/// block-diagonalizing basis is detected instead of fixed: tracing a shared
/// neighbor can leave a boundary qubit dephased in a rotated basis (an
/// end-of-chain cluster qubit comes out X-diagonal, for example), and the
/// state is then still a classical mixture across the single-site cut.
///
/// Write `rho = (I (x) T_I + X (x) T_X + Y (x) T_Y + Z (x) T_Z)/2` on the
/// site. It is block-diagonal in the basis of `n.sigma` exactly when the
/// coefficient operators point along the single direction `n`, so the
/// candidate direction is the top eigenvector of their 3x3 Gram matrix.
/// The certificate is only issued after rotating and re-checking the
/// off-diagonal blocks, so a wrong candidate fails closed.
pub fn classical_site_certificate(
    rho: &DensityMatrix,
    site: usize,
    tol: f64,
) -> Result<Option<SeparabilityCertificate>> {
    if let Some(cert) = dephasing_separability_certificate(rho, site, tol)? {
        return Ok(Some(cert));
    }
    if rho.layout().dims()[site] != 2 {
        return Ok(None);
    }
    let n_sites = rho.n_sites();
    let perm: Vec<usize> = std::iter::once(site)
        .chain((0..n_sites).filter(|&s| s != site))
        .collect();
    let fronted = crate::qsys::permute_sites(rho, &perm)?;
    let h = fronted.dim() / 2;
    let block = |a: usize, b: usize| -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(h, h);
        for r in 0..h {
            for c in 0..h {
                m.set(r, c, fronted.matrix().get(a * h + r, b * h + c));
            }
        }
        m
    };
    let b01 = block(0, 1);
    let b10 = block(1, 0);
    let i = num_complex::Complex64::new(0.0, 1.0);
    let t_ops = [
        b01.add(&b10)?,                                   // X coefficient
        b01.scale(i).add(&b10.scale(-i))?.hermitized(),   // Y coefficient
        block(0, 0).sub(&block(1, 1))?,                   // Z coefficient
    ];
    let mut gram = ComplexMatrix::zeros(3, 3);
    for a in 0..3 {
        for b in 0..3 {
            let inner = t_ops[a].matmul(&t_ops[b])?.trace().re;
            gram.set(a, b, num_complex::Complex64::new(inner, 0.0));
        }
    }
    let direction = {
        let spec = hermitian_eig(&gram.hermitized(), 1e-8)?;
        let top: Vec<num_complex::Complex64> =
            (0..3).map(|r| spec.eigenvectors.get(r, 0)).collect();
        // The Gram matrix is real symmetric, so the eigenvector is real up
        // to a global phase; strip it.
        let lead = top
            .iter()
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
            .copied()
            .unwrap();
        if lead.norm() < 1e-12 {
            return Ok(None);
        }
        let phase = lead / lead.norm();
        let n: Vec<f64> = top.iter().map(|c| (c / phase).re).collect();
        let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Ok(None);
        }
        [n[0] / norm, n[1] / norm, n[2] / norm]
    };
    // Eigenbasis of n.sigma.
    let n_sigma = ComplexMatrix::new(
        2,
        2,
        vec![
            num_complex::Complex64::new(direction[2], 0.0),
            num_complex::Complex64::new(direction[0], -direction[1]),
            num_complex::Complex64::new(direction[0], direction[1]),
            num_complex::Complex64::new(-direction[2], 0.0),
        ],
    )?;
    let u = hermitian_eig(&n_sigma, 1e-10)?.eigenvectors;
    // Off-diagonal block in the rotated basis: sum_{c,d} conj(U_c0) U_d1 B_cd.
    let mut off = ComplexMatrix::zeros(h, h);
    for c in 0..2 {
        for d in 0..2 {
            let coeff = u.get(c, 0).conj() * u.get(d, 1);
            off = off.add(&block(c, d).scale(coeff))?;
        }
    }
    let residual = off.max_abs();
    if residual <= tol {
        Ok(Some(SeparabilityCertificate {
            kind: CertificateKind::BlockDiagonal,
            cut: Bipartition::complement(n_sites, vec![site])?,
            residual,
        }))
    } else {
        Ok(None)
    }
}

/// Issue a [`CertificateKind::Product`] certificate when the state equals
/// the tensor product of its marginals across the cut, within `tol` in
/// Frobenius norm.
pub fn product_separability_certificate(
    rho: &DensityMatrix,
    cut: &Bipartition,
    tol: f64,
) -> Result<Option<SeparabilityCertificate>> {
    cut.validate_for(rho.layout())?;
    let rho_a = partial_trace(rho, cut.a_sites())?;
    let rho_b = partial_trace(rho, cut.b_sites())?;
    let product = crate::linalg::tensor_product(rho_a.matrix(), rho_b.matrix());
    // The tensor product lists A sites then B sites; bring rho to the same
    // order before comparing.
    let perm: Vec<usize> = cut
        .a_sites()
        .iter()
        .chain(cut.b_sites())
        .copied()
        .collect();
    let reordered = crate::qsys::permute_sites(rho, &perm)?;
    let residual = {
        let diff = reordered.matrix().sub(&product)?;
        diff.frobenius_norm()
    };
    if residual <= tol {
        Ok(Some(SeparabilityCertificate {
            kind: CertificateKind::Product,
            cut: cut.clone(),
            residual,
        }))
    } else {
        Ok(None)
    }
}

/// Issue a [`CertificateKind::PptTwoQubit`] certificate: on a qubit-qubit
/// cut, a positive partial transpose implies separability.
pub fn ppt_two_qubit_certificate(
    rho: &DensityMatrix,
    cut: &Bipartition,
    tol: f64,
) -> Result<Option<SeparabilityCertificate>> {
    cut.validate_for(rho.layout())?;
    if cut.side_dims(rho.layout()) != (2, 2) {
        return Ok(None);
    }
    let pt = partial_transpose(rho, cut)?;
    let spec = hermitian_eig(&pt, 1e-8)?;
    let min = spec.min_eigenvalue();
    if min >= -tol {
        Ok(Some(SeparabilityCertificate {
            kind: CertificateKind::PptTwoQubit,
            cut: cut.clone(),
            residual: (-min).max(0.0),
        }))
    } else {
        Ok(None)
    }
}

/// Brute-force negativity of the reduced W state, used as the oracle the
/// closed form is checked against.
pub fn w_negativity_brute_force(n: usize, k: usize, j: usize) -> Result<f64> {
    let w = crate::qsys::w_state(n)?;
    let keep: Vec<usize> = (0..k).collect();
    let rho = partial_trace(&w, &keep)?;
    let cut = Bipartition::first_j(k, j)?;
    Ok(negativity(&rho, &cut)?.negativity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor_product;
    use crate::qsys::{
        bell_pair, cluster_state, w_reduced, werner, SystemLayout,
    };
    use crate::gridcount::Graph;

    #[test]
    fn negativity_product_state_zero() {
        let prod = DensityMatrix::new(
            tensor_product(werner(0.4).unwrap().matrix(), bell_pair().matrix()),
            SystemLayout::new(vec![4, 4]).unwrap(),
        )
        .unwrap();
        let cut = Bipartition::first_j(2, 1).unwrap();
        let r = negativity(&prod, &cut).unwrap();
        assert!(r.negativity.abs() < 1e-12);
        assert!(r.negative_eigenvalues.is_empty());
    }

    #[test]
    fn negativity_bell_half() {
        let cut = Bipartition::first_j(2, 1).unwrap();
        let r = negativity(&bell_pair(), &cut).unwrap();
        assert!((r.negativity - 0.5).abs() < 1e-12);
        assert_eq!(r.negative_eigenvalues.len(), 1);
    }

    #[test]
    fn negativity_w32() {
        let rho = w_reduced(3, 2).unwrap();
        let cut = Bipartition::first_j(2, 1).unwrap();
        let r = negativity(&rho, &cut).unwrap();
        let expect = (5.0_f64.sqrt() - 1.0) / 6.0;
        assert!((r.negativity - expect).abs() < 1e-12);
    }

    #[test]
    fn negativity_symmetric_under_side_swap() {
        let rho = w_reduced(4, 3).unwrap();
        let cut = Bipartition::first_j(3, 1).unwrap();
        let a = negativity(&rho, &cut).unwrap().negativity;
        let b = negativity(&rho, &cut.swapped()).unwrap().negativity;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn ppt_werner_threshold() {
        let cut = Bipartition::first_j(2, 1).unwrap();
        assert!(is_ppt(&werner(1.0 / 3.0).unwrap(), &cut, 1e-10).unwrap());
        assert!(!is_ppt(&werner(1.0 / 3.0 + 0.01).unwrap(), &cut, 1e-10).unwrap());
    }

    #[test]
    fn w_negativity_closed_form_vs_brute_force() {
        // Small grid here; the full n <= 7 sweep is an acceptance criterion.
        for (n, k, j, expect) in [
            (2, 2, 1, 0.5),
            (3, 2, 1, (5.0_f64.sqrt() - 1.0) / 6.0),
            (4, 4, 2, 0.5),
        ] {
            let closed = w_negativity(n, k, j).unwrap();
            assert!((closed - expect).abs() < 1e-12, "closed ({n},{k},{j})");
            let brute = w_negativity_brute_force(n, k, j).unwrap();
            assert!((closed - brute).abs() < 1e-10, "brute ({n},{k},{j})");
        }
        assert!(w_negativity(3, 2, 2).is_err());
    }

    #[test]
    fn w_negativity_min_cut_at_j_one() {
        assert!(
            (w_negativity_min_cut(6, 4).unwrap() - w_negativity(6, 4, 1).unwrap()).abs()
                < 1e-15
        );
        for n in 2..=12usize {
            for k in 2..=n {
                let min = w_negativity_min_cut(n, k).unwrap();
                assert!(
                    (min - w_negativity(n, k, 1).unwrap()).abs() < 1e-15,
                    "argmin not at j=1 for n={n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn neg_distance_lb_values() {
        assert_eq!(neg_distance_lb(0.0, 2, 2), 0.0);
        assert!((neg_distance_lb(0.5, 2, 2) - 0.25).abs() < 1e-15);
        assert!((neg_distance_lb(0.5, 2, 8) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn dephasing_certificate_cases() {
        // Boundary qubit of a cluster-state marginal is dephased.
        let path = cluster_state(&Graph::path(4)).unwrap();
        let marginal = partial_trace(&path, &[0, 1, 2]).unwrap();
        let cert = dephasing_separability_certificate(&marginal, 2, 1e-10)
            .unwrap()
            .expect("boundary qubit should certify");
        assert_eq!(cert.kind, CertificateKind::BlockDiagonal);
        assert_eq!(cert.cut.a_sites(), &[2]);

        // Bell state: no certificate on either site.
        for site in 0..2 {
            assert!(dephasing_separability_certificate(&bell_pair(), site, 1e-10)
                .unwrap()
                .is_none());
        }

        // Diagonal states certify at every site.
        let diag = dephase_site(&dephase_site(&bell_pair(), 0).unwrap(), 1).unwrap();
        for site in 0..2 {
            assert!(dephasing_separability_certificate(&diag, site, 1e-12)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn classical_site_certificate_detects_rotated_basis() {
        // Tracing the shared neighbor (qubit 2) of a 4-path cluster leaves
        // the end qubit 3 dephased in the X basis: the reduced state on
        // {0,1,3} is a two-term mixture with |+><+| and |-><-| on qubit 3.
        let path = cluster_state(&Graph::path(4)).unwrap();
        let reduced = partial_trace(&path, &[0, 1, 3]).unwrap();
        // Computational-basis check alone does not fire at any site...
        for site in 0..3 {
            assert!(dephasing_separability_certificate(&reduced, site, 1e-9)
                .unwrap()
                .is_none());
        }
        // ...but the detected-basis certificate does, at the end qubit.
        let cert = classical_site_certificate(&reduced, 2, 1e-9)
            .unwrap()
            .expect("qubit 3 of the subset is X-diagonal");
        assert_eq!(cert.kind, CertificateKind::BlockDiagonal);
        assert!(cert.residual <= 1e-12);

        // Entangled states still refuse a certificate on every site.
        for site in 0..2 {
            assert!(classical_site_certificate(&bell_pair(), site, 1e-9)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn product_certificate_cases() {
        let prod = DensityMatrix::new(
            tensor_product(bell_pair().matrix(), werner(0.2).unwrap().matrix()),
            SystemLayout::new(vec![2, 2, 2, 2]).unwrap(),
        )
        .unwrap();
        let cut = Bipartition::new(vec![0, 1], vec![2, 3]).unwrap();
        assert!(product_separability_certificate(&prod, &cut, 1e-10)
            .unwrap()
            .is_some());
        let cross = Bipartition::new(vec![0, 2], vec![1, 3]).unwrap();
        assert!(product_separability_certificate(&prod, &cross, 1e-10)
            .unwrap()
            .is_none());
    }

    #[test]
    fn ppt_certificate_only_on_qubit_pairs() {
        let cut = Bipartition::first_j(2, 1).unwrap();
        assert!(ppt_two_qubit_certificate(&werner(0.2).unwrap(), &cut, 1e-10)
            .unwrap()
            .is_some());
        assert!(ppt_two_qubit_certificate(&bell_pair(), &cut, 1e-10)
            .unwrap()
            .is_none());
        let big = DensityMatrix::new(
            tensor_product(werner(0.0).unwrap().matrix(), werner(0.0).unwrap().matrix()),
            SystemLayout::new(vec![4, 4]).unwrap(),
        )
        .unwrap();
        assert!(ppt_two_qubit_certificate(&big, &cut, 1e-10)
            .unwrap()
            .is_none());
    }

    #[test]
    fn werner_negativity_formula_over_grid() {
        let cut = Bipartition::first_j(2, 1).unwrap();
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let got = negativity(&werner(p).unwrap(), &cut).unwrap().negativity;
            let expect = ((3.0 * p - 1.0) / 4.0).max(0.0);
            assert!((got - expect).abs() < 1e-12, "p={p}");
        }
    }
}
