//! Multipartite structure: site layouts, partial trace, partial transpose,
//! dephasing, coarse-graining, and constructors for every state family the
//! toolkit works with.
//!
//! Index convention: site 0 is the most significant digit of a global index
//! (matching `tensor_product`, whose left factor is major). Partial traces
//! keep the original relative site order, which fixes all downstream basis
//! conventions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gridcount::{grid_graph, Graph};
use crate::linalg::{tensor_product, ComplexMatrix, C_ZERO};
use crate::{Error, Result};

/// Ordered list of site dimensions; the tensor factorization that all
/// partial operations refer to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemLayout {
    dims: Vec<usize>,
}

impl SystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Validation("layout needs at least one site".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::Validation(format!(
                "site dimensions must be at least 2, got {d}"
            )));
        }
        Ok(Self { dims })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Right-to-left strides: global index = sum(digit[i] * stride[i]).
    fn strides(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut s = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    fn decode(&self, mut index: usize, strides: &[usize], digits: &mut [usize]) {
        for (i, &s) in strides.iter().enumerate() {
            digits[i] = index / s;
            index %= s;
        }
    }
}

/// Density matrix with its tensor factorization.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    layout: SystemLayout,
}

/// Trace-normalization tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

impl DensityMatrix {
    /// Checks shape, layout consistency, Hermiticity, and unit trace.
    /// Positivity is not verified here (it costs an eigensolve); callers
    /// that need it use [`DensityMatrix::min_eigenvalue`].
    pub fn new(matrix: ComplexMatrix, layout: SystemLayout) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() != layout.total_dim() {
            return Err(Error::Dimension(format!(
                "matrix dimension {} does not match layout product {}",
                matrix.rows(),
                layout.total_dim()
            )));
        }
        matrix.check_hermitian(1e-9 * matrix.max_abs().max(1.0))?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Validation(format!(
                "density matrix trace {tr} is not 1 within {TRACE_TOL:e}"
            )));
        }
        Ok(Self { matrix, layout })
    }

    fn new_unchecked(matrix: ComplexMatrix, layout: SystemLayout) -> Self {
        debug_assert_eq!(matrix.rows(), layout.total_dim());
        Self { matrix, layout }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn n_sites(&self) -> usize {
        self.layout.n_sites()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let spec = crate::linalg::hermitian_eig(&self.matrix, 1e-8)?;
        Ok(spec.min_eigenvalue())
    }

    /// Relabel sites so that every site becomes a chain of qubits.
    /// Only valid when every site dimension is a power of two; the matrix
    /// is untouched, this is pure index bookkeeping.
    pub fn refine_to_qubits(&self) -> Option<DensityMatrix> {
        let mut dims = Vec::new();
        for &d in self.layout.dims() {
            if !d.is_power_of_two() {
                return None;
            }
            dims.extend(std::iter::repeat_n(2, d.trailing_zeros() as usize));
        }
        Some(DensityMatrix::new_unchecked(
            self.matrix.clone(),
            SystemLayout::new(dims).ok()?,
        ))
    }

    /// Qubit index ranges of each original site after [`Self::refine_to_qubits`].
    pub fn qubit_ranges(&self) -> Option<Vec<std::ops::Range<usize>>> {
        let mut ranges = Vec::new();
        let mut at = 0;
        for &d in self.layout.dims() {
            if !d.is_power_of_two() {
                return None;
            }
            let nu = d.trailing_zeros() as usize;
            ranges.push(at..at + nu);
            at += nu;
        }
        Some(ranges)
    }
}

/// A split of the sites into two nonempty halves (A, B).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    a_sites: Vec<usize>,
    b_sites: Vec<usize>,
}

impl Bipartition {
    pub fn new(mut a_sites: Vec<usize>, mut b_sites: Vec<usize>) -> Result<Self> {
        a_sites.sort_unstable();
        b_sites.sort_unstable();
        if a_sites.is_empty() || b_sites.is_empty() {
            return Err(Error::Validation(
                "both sides of a bipartition must be nonempty".into(),
            ));
        }
        if a_sites.windows(2).any(|w| w[0] == w[1])
            || b_sites.windows(2).any(|w| w[0] == w[1])
            || a_sites.iter().any(|s| b_sites.contains(s))
        {
            return Err(Error::Validation(
                "bipartition sides must be disjoint site sets".into(),
            ));
        }
        Ok(Self { a_sites, b_sites })
    }

    /// Split `0..n_sites` into `a_sites` and its complement.
    pub fn complement(n_sites: usize, a_sites: Vec<usize>) -> Result<Self> {
        let b: Vec<usize> = (0..n_sites).filter(|s| !a_sites.contains(s)).collect();
        Self::new(a_sites, b)
    }

    /// The (first j | rest) cut of an n-site system.
    pub fn first_j(n_sites: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= n_sites {
            return Err(Error::Validation(format!(
                "cut at j={j} invalid for {n_sites} sites"
            )));
        }
        Self::new((0..j).collect(), (j..n_sites).collect())
    }

    pub fn a_sites(&self) -> &[usize] {
        &self.a_sites
    }

    pub fn b_sites(&self) -> &[usize] {
        &self.b_sites
    }

    pub fn swapped(&self) -> Self {
        Self {
            a_sites: self.b_sites.clone(),
            b_sites: self.a_sites.clone(),
        }
    }

    pub fn validate_for(&self, layout: &SystemLayout) -> Result<()> {
        let n = layout.n_sites();
        if self.a_sites.len() + self.b_sites.len() != n
            || self.a_sites.iter().chain(&self.b_sites).any(|&s| s >= n)
        {
            return Err(Error::Validation(format!(
                "bipartition {:?} | {:?} does not cover the {n}-site layout",
                self.a_sites, self.b_sites
            )));
        }
        Ok(())
    }

    /// Product of site dimensions on each side.
    pub fn side_dims(&self, layout: &SystemLayout) -> (usize, usize) {
        let dim = |sites: &[usize]| sites.iter().map(|&s| layout.dims()[s]).product();
        (dim(&self.a_sites), dim(&self.b_sites))
    }
}

/// Reduced state on `keep` (original site order preserved).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_sites();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::Validation("cannot keep an empty site set".into()));
    }
    if keep.iter().any(|&s| s >= n) {
        return Err(Error::Validation(format!(
            "keep set {keep:?} references sites beyond {n}"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let dims = rho.layout().dims();
    let strides = rho.layout().strides();

    let keep_dims: Vec<usize> = keep.iter().map(|&s| dims[s]).collect();
    let keep_layout = SystemLayout::new(keep_dims.clone())?;
    let d_keep: usize = keep_dims.iter().product();
    let d_traced: usize = traced.iter().map(|&s| dims[s]).product();

    // Offset of each kept/traced digit assignment in the global index.
    let offsets = |sites: &[usize], count: usize| -> Vec<usize> {
        let mut out = vec![0usize; count];
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut rem = idx;
            let mut offset = 0;
            for &s in sites.iter().rev() {
                let digit = rem % dims[s];
                rem /= dims[s];
                offset += digit * strides[s];
            }
            *slot = offset;
        }
        out
    };
    let keep_offsets = offsets(&keep, d_keep);
    let traced_offsets = offsets(&traced, d_traced);

    let mut out = ComplexMatrix::zeros(d_keep, d_keep);
    for (rk, &ro) in keep_offsets.iter().enumerate() {
        for (ck, &co) in keep_offsets.iter().enumerate() {
            let mut acc = C_ZERO;
            for &to in &traced_offsets {
                acc += rho.matrix().get(ro + to, co + to);
            }
            out.set(rk, ck, acc);
        }
    }
    Ok(DensityMatrix::new_unchecked(out, keep_layout))
}

/// Partial transpose over the B side of the cut. An involution that
/// preserves Hermiticity and trace; positivity of the result is exactly the
/// PPT property.
pub fn partial_transpose(rho: &DensityMatrix, cut: &Bipartition) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.layout(), cut)
}

/// Partial transpose of a raw matrix under a given layout; used by the
/// solver on iterates that are not normalized states.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    layout: &SystemLayout,
    cut: &Bipartition,
) -> Result<ComplexMatrix> {
    cut.validate_for(layout)?;
    if m.rows() != layout.total_dim() || !m.is_square() {
        return Err(Error::Dimension(format!(
            "matrix {}x{} does not match layout dimension {}",
            m.rows(),
            m.cols(),
            layout.total_dim()
        )));
    }
    let n = layout.n_sites();
    let d = layout.total_dim();
    let strides = layout.strides();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut rd = vec![0usize; n];
    let mut cd = vec![0usize; n];
    for r in 0..d {
        layout.decode(r, &strides, &mut rd);
        for c in 0..d {
            layout.decode(c, &strides, &mut cd);
            let mut tr = 0usize;
            let mut tc = 0usize;
            for s in 0..n {
                let (dr, dc) = if cut.b_sites().contains(&s) {
                    (cd[s], rd[s])
                } else {
                    (rd[s], cd[s])
                };
                tr += dr * strides[s];
                tc += dc * strides[s];
            }
            out.set(tr, tc, m.get(r, c));
        }
    }
    Ok(out)
}

/// Zero every block that is off-diagonal in the computational basis of
/// `site`. Models tracing out a neighbor that was entangled through a
/// controlled-phase, and is idempotent.
pub fn dephase_site(rho: &DensityMatrix, site: usize) -> Result<DensityMatrix> {
    let layout = rho.layout();
    if site >= layout.n_sites() {
        return Err(Error::Validation(format!(
            "site {site} out of range for {} sites",
            layout.n_sites()
        )));
    }
    let strides = layout.strides();
    let d = layout.total_dim();
    let mut out = rho.matrix().clone();
    let site_dim = layout.dims()[site];
    let digit_of = |idx: usize| (idx / strides[site]) % site_dim;
    for r in 0..d {
        for c in 0..d {
            if digit_of(r) != digit_of(c) {
                out.set(r, c, C_ZERO);
            }
        }
    }
    Ok(DensityMatrix::new_unchecked(out, layout.clone()))
}

/// Reorder sites: position `k` of the result holds the old site `perm[k]`.
pub fn permute_sites(rho: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let n = layout.n_sites();
    let mut check: Vec<usize> = perm.to_vec();
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(Error::Validation(format!(
            "{perm:?} is not a permutation of 0..{n}"
        )));
    }
    let new_layout = SystemLayout::new(perm.iter().map(|&s| layout.dims()[s]).collect())?;
    let old_strides = layout.strides();
    let new_strides = new_layout.strides();
    let d = layout.total_dim();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut digits = vec![0usize; n];
    // old index for each new index, then one pass over the matrix
    let mut old_of_new = vec![0usize; d];
    for (new_idx, slot) in old_of_new.iter_mut().enumerate() {
        new_layout.decode(new_idx, &new_strides, &mut digits);
        let mut old = 0;
        for k in 0..n {
            old += digits[k] * old_strides[perm[k]];
        }
        *slot = old;
    }
    for r in 0..d {
        for c in 0..d {
            out.set(r, c, rho.matrix().get(old_of_new[r], old_of_new[c]));
        }
    }
    Ok(DensityMatrix::new_unchecked(out, new_layout))
}

/// Coarse-grain sites into qudits: `groups` lists the site blocks in their
/// output order. Entries are permuted so each block is contiguous, then the
/// block becomes a single site whose dimension is the product of its parts.
pub fn regroup(rho: &DensityMatrix, groups: &[Vec<usize>]) -> Result<DensityMatrix> {
    let n = rho.n_sites();
    let mut flattened: Vec<usize> = groups.iter().flatten().copied().collect();
    let perm = flattened.clone();
    flattened.sort_unstable();
    if flattened != (0..n).collect::<Vec<_>>() {
        return Err(Error::Validation(format!(
            "groups {groups:?} do not partition the {n} sites"
        )));
    }
    if groups.iter().any(|g| g.is_empty()) {
        return Err(Error::Validation("empty group in regrouping".into()));
    }
    let permuted = permute_sites(rho, &perm)?;
    let mut dims = Vec::with_capacity(groups.len());
    let mut at = 0;
    for g in groups {
        let d: usize = permuted.layout().dims()[at..at + g.len()].iter().product();
        dims.push(d);
        at += g.len();
    }
    Ok(DensityMatrix::new_unchecked(
        permuted.matrix,
        SystemLayout::new(dims)?,
    ))
}

fn pure_state(amplitudes: Vec<Complex64>, layout: SystemLayout) -> Result<DensityMatrix> {
    let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::Numerical(format!(
            "state vector norm^2 = {norm_sq} is not 1"
        )));
    }
    Ok(DensityMatrix::new_unchecked(
        ComplexMatrix::outer(&amplitudes),
        layout,
    ))
}

/// The projector onto `(|00> + |11>)/sqrt(2)`.
pub fn bell_pair() -> DensityMatrix {
    werner(1.0).expect("p=1 is in range")
}

/// `p * Bell + (1-p) * I/4` on two qubits. Separable exactly when
/// `p <= 1/3`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Validation(format!(
            "Werner parameter p={p} outside [0, 1]"
        )));
    }
    let r = 0.5 * p;
    let m = 0.25 * (1.0 - p);
    let mut out = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        out.set(i, i, Complex64::new(m, 0.0));
    }
    for &(i, j) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
        out.set(i, j, out.get(i, j) + Complex64::new(r, 0.0));
    }
    Ok(DensityMatrix::new_unchecked(out, SystemLayout::qubits(2)?))
}

/// Dense-matrix budget: nothing in scope exceeds 256 = 2^8 dimensions.
pub const MAX_DENSE_QUBITS: usize = 8;

fn check_qubit_budget(n: usize, what: &str) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Capacity(format!(
            "{what} needs {n} qubits; the dense budget is {MAX_DENSE_QUBITS} \
             (256x256 matrices)"
        )));
    }
    Ok(())
}

/// The W state `|W_n> = n^{-1/2} sum_k |0..010..0>` as a projector.
pub fn w_state(n: usize) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::Validation("W state needs at least one qubit".into()));
    }
    check_qubit_budget(n, "w_state")?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut v = vec![C_ZERO; 1 << n];
    for site in 0..n {
        v[1 << (n - 1 - site)] = amp;
    }
    pure_state(v, SystemLayout::qubits(n)?)
}

/// Reduced W state in closed form:
/// `rho_k = ((n-k)/n) |0^k><0^k| + (k/n) |W_k><W_k|`.
/// Must agree with tracing `n - k` qubits out of `w_state(n)`.
pub fn w_reduced(n: usize, k: usize) -> Result<DensityMatrix> {
    if k == 0 || k > n {
        return Err(Error::Validation(format!(
            "w_reduced needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    check_qubit_budget(k, "w_reduced")?;
    let wk = w_state(k)?;
    let mut m = wk.matrix().scale(Complex64::new(k as f64 / n as f64, 0.0));
    let vac = (n - k) as f64 / n as f64;
    m.set(0, 0, m.get(0, 0) + Complex64::new(vac, 0.0));
    Ok(DensityMatrix::new_unchecked(m, SystemLayout::qubits(k)?))
}

/// The reduced W state written in the 4-dimensional invariant subspace
/// basis `{ |0,0>, |0,W>, |W,0>, |W,W> }` of a (j | k-j) cut, as a 2x2-site
/// state:
///
/// ```text
/// diag(1 - k/n, j/n, (k-j)/n, 0),   off-diagonal sqrt(j(k-j))/n
/// ```
///
/// between the two middle basis vectors. All spectral quantities (and in
/// particular the partial-transpose spectrum) match the full 2^k
/// representation.
pub fn w_reduced_compact(n: usize, k: usize, j: usize) -> Result<DensityMatrix> {
    if !(1 <= j && j < k && k <= n) {
        return Err(Error::Validation(format!(
            "w_reduced_compact needs 1 <= j < k <= n, got n={n}, k={k}, j={j}"
        )));
    }
    let nf = n as f64;
    let cross = ((j * (k - j)) as f64).sqrt() / nf;
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, Complex64::new(1.0 - k as f64 / nf, 0.0));
    m.set(1, 1, Complex64::new(j as f64 / nf, 0.0));
    m.set(2, 2, Complex64::new((k - j) as f64 / nf, 0.0));
    m.set(1, 2, Complex64::new(cross, 0.0));
    m.set(2, 1, Complex64::new(cross, 0.0));
    Ok(DensityMatrix::new_unchecked(m, SystemLayout::qubits(2)?))
}

/// Graph state: `|+>^n` with a controlled-Z across every edge.
pub fn cluster_state(graph: &Graph) -> Result<DensityMatrix> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::Validation("cluster state needs vertices".into()));
    }
    check_qubit_budget(n, "cluster_state")?;
    let amp = 1.0 / ((1usize << n) as f64).sqrt();
    let bit = |x: usize, v: usize| (x >> (n - 1 - v)) & 1;
    let v: Vec<Complex64> = (0..1usize << n)
        .map(|x| {
            let phases: usize = graph
                .edges()
                .iter()
                .filter(|&&(a, b)| bit(x, a) == 1 && bit(x, b) == 1)
                .count();
            Complex64::new(if phases.is_multiple_of(2) { amp } else { -amp }, 0.0)
        })
        .collect();
    pure_state(v, SystemLayout::qubits(n)?)
}

/// One Werner pair per grid edge, with each pair's qubits placed at the
/// edge's endpoints, then coarse-grained so every vertex is a single qudit
/// of dimension `2^degree`. Edge and within-vertex qubit order is the
/// row-major edge order; the spectra consumed downstream are invariant
/// under that choice.
pub fn grid_pair_state(rows: usize, cols: usize, p: f64) -> Result<DensityMatrix> {
    let graph = grid_graph(rows, cols)?;
    let edges = graph.edges();
    if edges.is_empty() {
        return Err(Error::Validation(
            "grid has no edges; need at least 1x2".into(),
        ));
    }
    let qubits = 2 * edges.len();
    if qubits > MAX_DENSE_QUBITS {
        return Err(Error::Capacity(format!(
            "{rows}x{cols} grid carries {qubits} qubits; the dense-matrix \
             budget is {MAX_DENSE_QUBITS} (use the certified bound path for \
             larger grids)"
        )));
    }
    let pair = werner(p)?;
    let mut m = pair.matrix().clone();
    for _ in 1..edges.len() {
        m = tensor_product(&m, pair.matrix());
    }
    let product = DensityMatrix::new_unchecked(m, SystemLayout::qubits(qubits)?);

    // Qubit 2e sits at edge e's first endpoint, 2e+1 at its second; group
    // qubits by vertex.
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); graph.vertex_count()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        groups[a].push(2 * e);
        groups[b].push(2 * e + 1);
    }
    regroup(&product, &groups)
}

/// `(|0^n> + e^{i phi} |1^n>)/sqrt(2)` as a projector.
pub fn phase_cat(n: usize, phi: f64) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::Validation("cat state needs at least one qubit".into()));
    }
    check_qubit_budget(n, "phase_cat")?;
    let d = 1usize << n;
    let mut v = vec![C_ZERO; d];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    v[0] = Complex64::new(r, 0.0);
    v[d - 1] = Complex64::from_polar(r, phi);
    pure_state(v, SystemLayout::qubits(n)?)
}
