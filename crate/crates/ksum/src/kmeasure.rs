//! Assembly of the subset-summed measure: per-subset biseparability
//! distance bounds, exhaustive subset enumeration, the symmetry-reduced
//! W-state evaluation, and the certified grid bound `K >= N * delta`.
//!
//! ```text
//! Delta(rho_S) = min over bipartitions A|A^c of S of
//!                inf_{sigma separable across A|A^c} |rho_S - sigma|_tr
//! K(rho)       = sum over subsets S with |S| >= 2 of Delta(rho_S)
//! ```
//!
//! Subsets of size below two contribute exactly zero. Summation follows
//! ascending mask order, so reports are bit-reproducible regardless of how
//! the per-subset work is scheduled.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{
    classical_site_certificate, neg_distance_lb, ppt_two_qubit_certificate,
    product_separability_certificate, w_negativity, SeparabilityCertificate,
};
use crate::gridcount::{comb_lower_bound, count_connected_subsets, grid_graph, is_connected_subset};
use crate::qsys::{grid_pair_state, partial_trace, werner, Bipartition, DensityMatrix};
use crate::sepdist::{ppt_distance, BoundInterval, LowerCert, SolverConfig, UpperCert};
use crate::{Error, Result};

/// Bitmask over the sites of a state; bit i = site i.
pub type SubsetMask = u32;

pub fn mask_sites(mask: SubsetMask) -> Vec<usize> {
    (0..32).filter(|&b| mask >> b & 1 == 1).collect()
}

/// Numerical tolerance for the separability certificates that short-circuit
/// a Delta evaluation to (0, 0).
const CERTIFICATE_TOL: f64 = 1e-9;

/// Caps applied to the solver when it runs on a two-qubit reduction inside
/// a larger cut; the reduced problems converge in far fewer iterations.
const REDUCTION_MAX_ITERATIONS: usize = 400;
const REDUCTION_DYKSTRA_ROUNDS: usize = 30;

/// Result of a Delta evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaBounds {
    pub interval: BoundInterval,
    /// Present when some bipartition certified separability outright.
    pub certificate: Option<SeparabilityCertificate>,
    /// Number of bipartitions enumerated.
    pub bipartitions: usize,
}

fn bipartitions_of(n_sites: usize) -> Vec<Bipartition> {
    // Site n-1 stays on the B side, which enumerates each unordered split
    // exactly once.
    let mut cuts = Vec::with_capacity((1usize << (n_sites - 1)) - 1);
    for a_bits in 1u32..(1 << (n_sites - 1)) {
        let a: Vec<usize> = (0..n_sites - 1).filter(|&s| a_bits >> s & 1 == 1).collect();
        let b: Vec<usize> = (0..n_sites).filter(|s| !a.contains(s)).collect();
        cuts.push(Bipartition::new(a, b).expect("enumerated cut is valid"));
    }
    cuts
}

fn reduction_cfg(cfg: &SolverConfig) -> SolverConfig {
    SolverConfig {
        max_iterations: cfg.max_iterations.min(REDUCTION_MAX_ITERATIONS),
        dykstra_rounds: cfg.dykstra_rounds.min(REDUCTION_DYKSTRA_ROUNDS),
        ..cfg.clone()
    }
}

/// Strongest certified lower bound for one cut: the solver's own bound
/// (negativity, plus the dual witness on two-qubit cuts), improved by
/// reductions onto qubit pairs straddling the cut. Tracing down to a pair
/// (a in A, b in B) is CPTP and maps states separable across A|B to states
/// separable across a|b, so any certified bound for the pair bounds the
/// original cut from below.
fn cut_lower_enhancement(
    rho: &DensityMatrix,
    cut: &Bipartition,
    cfg: &SolverConfig,
) -> Result<Option<(f64, LowerCert)>> {
    if cfg.negativity_lower_only || cut.side_dims(rho.layout()) == (2, 2) {
        return Ok(None);
    }
    let Some(refined) = rho.refine_to_qubits() else {
        return Ok(None);
    };
    let ranges = rho.qubit_ranges().expect("refinement implies ranges");
    let qubits_of = |sites: &[usize]| -> Vec<usize> {
        sites.iter().flat_map(|&s| ranges[s].clone()).collect()
    };
    let a_qubits = qubits_of(cut.a_sites());
    let b_qubits = qubits_of(cut.b_sites());
    let sub_cfg = reduction_cfg(cfg);
    let mut best: Option<(f64, LowerCert)> = None;
    for &qa in &a_qubits {
        for &qb in &b_qubits {
            let pair = partial_trace(&refined, &[qa, qb])?;
            let pair_cut = Bipartition::first_j(2, 1)?;
            let sub = ppt_distance(&pair, &pair_cut, &sub_cfg)?;
            let value = sub.bounds.lower;
            if best.as_ref().map_or(value > 0.0, |(b, _)| value > *b) {
                best = Some((
                    value,
                    LowerCert::PairReduction {
                        qubit_a: qa,
                        qubit_b: qb,
                    },
                ));
            }
        }
    }
    Ok(best)
}

/// Certified bounds on `Delta(rho_S)`: enumerate every bipartition, take
/// the minimum of the per-cut bounds. Short-circuits to (0, 0) as soon as
/// any bipartition carries a separability certificate (product structure,
/// single-site block-diagonality, or PPT on a qubit pair).
pub fn delta_bounds(rho: &DensityMatrix, cfg: &SolverConfig) -> Result<DeltaBounds> {
    let n = rho.n_sites();
    if n < 2 {
        return Err(Error::Validation(format!(
            "Delta needs at least two sites, got {n}"
        )));
    }
    let cuts = bipartitions_of(n);

    for cut in &cuts {
        if let Some(cert) = product_separability_certificate(rho, cut, CERTIFICATE_TOL)? {
            return Ok(DeltaBounds {
                interval: BoundInterval::certified_zero(cert.kind),
                certificate: Some(cert),
                bipartitions: cuts.len(),
            });
        }
        let mut singleton_sides = Vec::new();
        if cut.a_sites().len() == 1 {
            singleton_sides.push(cut.a_sites()[0]);
        }
        if cut.b_sites().len() == 1 {
            singleton_sides.push(cut.b_sites()[0]);
        }
        for site in singleton_sides {
            if let Some(cert) = classical_site_certificate(rho, site, CERTIFICATE_TOL)? {
                return Ok(DeltaBounds {
                    interval: BoundInterval::certified_zero(cert.kind),
                    certificate: Some(cert),
                    bipartitions: cuts.len(),
                });
            }
        }
        if let Some(cert) = ppt_two_qubit_certificate(rho, cut, 1e-10)? {
            return Ok(DeltaBounds {
                interval: BoundInterval::certified_zero(cert.kind),
                certificate: Some(cert),
                bipartitions: cuts.len(),
            });
        }
    }

    let per_cut: Vec<(f64, LowerCert, f64, UpperCert)> = cuts
        .par_iter()
        .map(|cut| -> Result<(f64, LowerCert, f64, UpperCert)> {
            let solved = ppt_distance(rho, cut, cfg)?;
            let mut lower = solved.bounds.lower;
            let mut lower_cert = solved.bounds.lower_certificate.clone();
            if let Some((value, cert)) = cut_lower_enhancement(rho, cut, cfg)? {
                if value > lower {
                    lower = value;
                    lower_cert = cert;
                }
            }
            Ok((
                lower,
                lower_cert,
                solved.bounds.upper,
                solved.bounds.upper_certificate.clone(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let (mut lower, mut lower_cert) = (f64::INFINITY, LowerCert::Trivial);
    let (mut upper, mut upper_cert) = (f64::INFINITY, UpperCert::FeasiblePoint);
    for (lo, lo_cert, up, up_cert) in per_cut {
        if lo < lower {
            lower = lo;
            lower_cert = lo_cert;
        }
        if up < upper {
            upper = up;
            upper_cert = up_cert;
        }
    }
    let converged = upper - lower <= cfg.target_gap;
    Ok(DeltaBounds {
        interval: BoundInterval {
            lower,
            upper,
            converged,
            lower_certificate: lower_cert,
            upper_certificate: upper_cert,
        },
        certificate: None,
        bipartitions: cuts.len(),
    })
}

/// One evaluated subset in a [`KReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubsetEntry {
    pub mask: SubsetMask,
    pub sites: Vec<usize>,
    pub interval: BoundInterval,
    pub bipartitions: usize,
}

/// Exhaustive K evaluation: per-subset Delta bounds plus the aggregated
/// sums and enumeration metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KReport {
    pub n_sites: usize,
    /// Subsets that went to the solver, ascending mask order.
    pub per_subset: Vec<SubsetEntry>,
    pub k_lower: f64,
    pub k_upper: f64,
    /// Subsets certified Delta = 0 without solving.
    pub skipped_zero: usize,
    pub converged: bool,
}

/// Site budget for the exhaustive evaluator.
pub const K_MEASURE_MAX_SITES: usize = 8;

/// Sum Delta over every subset of at least two sites. Subset evaluations
/// run in parallel; the reduction walks masks in ascending order, so the
/// report does not depend on scheduling.
pub fn k_measure(rho: &DensityMatrix, cfg: &SolverConfig) -> Result<KReport> {
    let n = rho.n_sites();
    if n > K_MEASURE_MAX_SITES {
        return Err(Error::Capacity(format!(
            "exhaustive K supports at most {K_MEASURE_MAX_SITES} sites, got {n}; \
             use the structured evaluators (k_w_lower, k_grid_lower) instead"
        )));
    }
    let masks: Vec<SubsetMask> = (1u32..(1 << n)).filter(|m| m.count_ones() >= 2).collect();
    let evaluated: Vec<(SubsetMask, DeltaBounds)> = masks
        .par_iter()
        .map(|&mask| -> Result<(SubsetMask, DeltaBounds)> {
            let sites = mask_sites(mask);
            let reduced = partial_trace(rho, &sites)?;
            Ok((mask, delta_bounds(&reduced, cfg)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut per_subset = Vec::new();
    let mut k_lower = 0.0;
    let mut k_upper = 0.0;
    let mut skipped_zero = 0;
    let mut converged = true;
    for (mask, db) in evaluated {
        k_lower += db.interval.lower;
        k_upper += db.interval.upper;
        if db.certificate.is_some() {
            skipped_zero += 1;
        } else {
            converged &= db.interval.converged;
            per_subset.push(SubsetEntry {
                mask,
                sites: mask_sites(mask),
                interval: db.interval,
                bipartitions: db.bipartitions,
            });
        }
    }
    Ok(KReport {
        n_sites: n,
        per_subset,
        k_lower,
        k_upper,
        skipped_zero,
        converged,
    })
}

/// Per-k term of the symmetry-reduced W-state lower bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WLowerTerm {
    pub k: usize,
    #[serde(with = "biguint_string")]
    pub binomial: BigUint,
    /// Certified Delta lower bound for any size-k subset.
    pub delta_lb: f64,
    /// Cut size attaining it.
    pub j_star: usize,
    pub term: f64,
}

/// Certified lower bound on `K(|W_n><W_n|)` from the permutation symmetry
/// of the W state: every size-k subset reduces to the same state, so the
/// sum collapses to `sum_k C(n,k) * Delta_lb(k)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WLowerBound {
    pub n: usize,
    pub per_k: Vec<WLowerTerm>,
    pub total: f64,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::from_str(&s).map_err(D::Error::custom)
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `sum_{k=2}^{n} C(n,k) * min_j N(n,k,j) / 2^min(j, k-j)`, with exact
/// integer binomials. Every term is a certified Delta lower bound for the
/// size-k subsets, so the total is a certified lower bound on K.
///
/// The minimizing cut is the balanced one: the negativity itself is
/// smallest at j = 1, but the dimension divisor `2^j` grows faster than
/// the negativity does, so the enumeration over j is essential.
pub fn k_w_lower(n: usize) -> Result<WLowerBound> {
    if n < 2 {
        return Err(Error::Validation(format!("k_w_lower needs n >= 2, got {n}")));
    }
    if n > 60 {
        return Err(Error::Capacity(format!(
            "k_w_lower supports n <= 60 (cut dimensions overflow beyond), got {n}"
        )));
    }
    let mut per_k = Vec::with_capacity(n - 1);
    let mut total = 0.0;
    for k in 2..=n {
        let mut delta_lb = f64::INFINITY;
        let mut j_star = 1;
        for j in 1..=(k / 2) {
            let bound = neg_distance_lb(w_negativity(n, k, j)?, 1 << j, 1 << (k - j));
            if bound < delta_lb {
                delta_lb = bound;
                j_star = j;
            }
        }
        let binom = binomial(n, k);
        let term = binom.to_f64().unwrap_or(f64::INFINITY) * delta_lb;
        total += term;
        per_k.push(WLowerTerm {
            k,
            binomial: binom,
            delta_lb,
            j_star,
            term,
        });
    }
    Ok(WLowerBound { n, per_k, total })
}

/// Both sides of the algebraic identity
/// `sum_{k=2}^{n} C(n,k) * k/(8n) = (2^n - 2)/16` in exact rational
/// arithmetic. The identity holds regardless of whether `k/(8n)` is a
/// valid per-subset bound; see [`k_w_lower`] for the certified route.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WSumIdentity {
    pub n: usize,
    /// `sum_{k=2}^{n} C(n,k) * k/(8n)` as an exact fraction string.
    pub binomial_sum: String,
    /// `(2^n - 2)/16` as an exact fraction string.
    pub closed_form: String,
    pub value: f64,
    pub sides_equal: bool,
}

/// Evaluate the identity exactly.
pub fn w_sum_identity(n: usize) -> Result<WSumIdentity> {
    if n < 2 {
        return Err(Error::Validation(format!(
            "w_sum_identity needs n >= 2, got {n}"
        )));
    }
    let mut lhs = BigRational::from_integer(BigInt::from(0));
    for k in 2..=n {
        let b = BigRational::from_integer(BigInt::from(binomial(n, k)));
        let frac = BigRational::new(BigInt::from(k), BigInt::from(8 * n));
        lhs += b * frac;
    }
    let rhs = BigRational::new(
        BigInt::from(BigUint::from(1u32) << n) - BigInt::from(2),
        BigInt::from(16),
    );
    Ok(WSumIdentity {
        n,
        binomial_sum: lhs.to_string(),
        closed_form: rhs.to_string(),
        value: lhs.to_f64().unwrap_or(f64::NAN),
        sides_equal: lhs == rhs,
    })
}

/// Where the connected-subset count in a [`GridBound`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountSource {
    Exact,
    CombBound,
}

/// The certified grid bound `K >= N * delta` with its breakdown.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridBound {
    pub rows: usize,
    pub cols: usize,
    pub p: f64,
    #[serde(with = "biguint_string")]
    pub connected_count: BigUint,
    pub count_source: CountSource,
    /// Certified lower bound on the edge-state separability distance.
    pub delta: f64,
    pub delta_certificate: LowerCert,
    pub k_lower: f64,
}

/// `K(grid state) >= N * delta`: every connected subset S of at least two
/// vertices has `Delta(rho_S) >= delta`, because any bipartition of a
/// connected S is crossed by an edge, the partial trace down to that edge
/// is contractive and maps separable states to separable states, and the
/// edge state sits at certified distance `delta` from separability.
/// Disconnected subsets contribute zero, so `N` counts connected subsets
/// only. Falls back to the comb bound for `N` when the grid is too large
/// to enumerate.
pub fn k_grid_lower(rows: usize, cols: usize, p: f64, cfg: &SolverConfig) -> Result<GridBound> {
    let graph = grid_graph(rows, cols)?;
    if graph.edges().is_empty() {
        return Err(Error::Validation("grid has no edges; need at least 1x2".into()));
    }
    let edge_cut = Bipartition::first_j(2, 1)?;
    let edge = ppt_distance(&werner(p)?, &edge_cut, cfg)?;
    let delta = edge.bounds.lower;

    let (connected_count, count_source) = match count_connected_subsets(&graph, 2) {
        Ok(n) => (n, CountSource::Exact),
        Err(Error::Capacity(_)) => (comb_lower_bound(rows, cols)?, CountSource::CombBound),
        Err(e) => return Err(e),
    };
    let k_lower = connected_count.to_f64().unwrap_or(f64::INFINITY) * delta;
    Ok(GridBound {
        rows,
        cols,
        p,
        connected_count,
        count_source,
        delta,
        delta_certificate: edge.bounds.lower_certificate,
        k_lower,
    })
}

/// One subset line of a [`GridVerifyReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridVerifyEntry {
    pub mask: SubsetMask,
    pub sites: Vec<usize>,
    pub connected: bool,
    pub certified_zero: bool,
    pub lower: f64,
    pub upper: f64,
}

/// Empirical check of the grid theorem on a materialized instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridVerifyReport {
    pub rows: usize,
    pub cols: usize,
    pub p: f64,
    pub delta: f64,
    pub entries: Vec<GridVerifyEntry>,
    /// Every connected subset has Delta lower bound >= delta - 1e-3.
    pub connected_pass: bool,
    /// Every disconnected subset is certified (0, 0).
    pub disconnected_pass: bool,
}

/// Tolerance for the connected-subset check in [`k_grid_verify_small`].
pub const GRID_VERIFY_SLACK: f64 = 1e-3;

/// Materialize the grid state and check, subset by subset, that connected
/// subsets have Delta >= delta - 1e-3 while disconnected subsets certify
/// to zero. Dense-budget bound: the 2x2 grid.
pub fn k_grid_verify_small(
    rows: usize,
    cols: usize,
    p: f64,
    cfg: &SolverConfig,
) -> Result<GridVerifyReport> {
    let rho = grid_pair_state(rows, cols, p)?;
    let graph = grid_graph(rows, cols)?;
    let edge_cut = Bipartition::first_j(2, 1)?;
    let delta = ppt_distance(&werner(p)?, &edge_cut, cfg)?.bounds.lower;

    let n = graph.vertex_count();
    let masks: Vec<SubsetMask> = (1u32..(1 << n)).filter(|m| m.count_ones() >= 2).collect();
    let entries: Vec<GridVerifyEntry> = masks
        .par_iter()
        .map(|&mask| -> Result<GridVerifyEntry> {
            let sites = mask_sites(mask);
            let reduced = partial_trace(&rho, &sites)?;
            let db = delta_bounds(&reduced, cfg)?;
            Ok(GridVerifyEntry {
                mask,
                sites,
                connected: is_connected_subset(&graph, mask)?,
                certified_zero: db.certificate.is_some(),
                lower: db.interval.lower,
                upper: db.interval.upper,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let connected_pass = entries
        .iter()
        .filter(|e| e.connected)
        .all(|e| e.lower >= delta - GRID_VERIFY_SLACK);
    let disconnected_pass = entries
        .iter()
        .filter(|e| !e.connected)
        .all(|e| e.certified_zero && e.lower == 0.0 && e.upper == 0.0);
    Ok(GridVerifyReport {
        rows,
        cols,
        p,
        delta,
        entries,
        connected_pass,
        disconnected_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::CertificateKind;
    use crate::linalg::tensor_product;
    use crate::qsys::{bell_pair, regroup, w_reduced, w_state, SystemLayout};

    fn quick_cfg() -> SolverConfig {
        SolverConfig {
            max_iterations: 60,
            dykstra_rounds: 15,
            ..Default::default()
        }
    }

    #[test]
    fn delta_product_certified_zero() {
        let prod = DensityMatrix::new(
            tensor_product(bell_pair().matrix(), bell_pair().matrix()),
            SystemLayout::new(vec![4, 4]).unwrap(),
        )
        .unwrap();
        let db = delta_bounds(&prod, &quick_cfg()).unwrap();
        assert_eq!(db.interval.lower, 0.0);
        assert_eq!(db.interval.upper, 0.0);
        assert_eq!(db.certificate.unwrap().kind, CertificateKind::Product);
    }

    #[test]
    fn delta_bell_pair_half() {
        let db = delta_bounds(&bell_pair(), &SolverConfig::default()).unwrap();
        assert!(db.certificate.is_none());
        assert!(db.interval.lower >= 0.5 - 1e-3, "lower {}", db.interval.lower);
        assert!(db.interval.upper <= 0.5 + 1e-3, "upper {}", db.interval.upper);
        assert_eq!(db.bipartitions, 1);
    }

    #[test]
    fn delta_w32_bracketed() {
        let db = delta_bounds(&w_reduced(3, 2).unwrap(), &SolverConfig::default()).unwrap();
        let neg_lb = (5.0_f64.sqrt() - 1.0) / 12.0; // 0.10300...
        assert!(db.interval.lower >= neg_lb - 1e-9);
        assert!(db.interval.lower <= db.interval.upper + 1e-12);
    }

    #[test]
    fn delta_rejects_single_site() {
        let single = regroup(&bell_pair(), &[vec![0, 1]]).unwrap();
        assert!(delta_bounds(&single, &quick_cfg()).is_err());
    }

    #[test]
    fn k_measure_two_bell_pairs() {
        let rho = DensityMatrix::new(
            tensor_product(bell_pair().matrix(), bell_pair().matrix()),
            SystemLayout::qubits(4).unwrap(),
        )
        .unwrap();
        let report = k_measure(&rho, &SolverConfig::default()).unwrap();
        assert_eq!(report.n_sites, 4);
        assert_eq!(report.per_subset.len(), 2);
        assert_eq!(report.skipped_zero, 9);
        assert!(report.k_lower >= 0.99 && report.k_upper <= 1.01);
        let masks: Vec<u32> = report.per_subset.iter().map(|e| e.mask).collect();
        assert_eq!(masks, vec![0b0011, 0b1100]);
    }

    #[test]
    fn k_measure_single_site_is_zero() {
        let single = regroup(&bell_pair(), &[vec![0, 1]]).unwrap();
        let report = k_measure(&single, &quick_cfg()).unwrap();
        assert!(report.per_subset.is_empty());
        assert_eq!(report.skipped_zero, 0);
        assert_eq!(report.k_lower, 0.0);
        assert_eq!(report.k_upper, 0.0);
    }

    #[test]
    fn k_measure_w4_permutation_symmetry() {
        let cfg = quick_cfg();
        let report = k_measure(&w_state(4).unwrap(), &cfg).unwrap();
        // Delta depends only on subset size.
        for size in 2..=4usize {
            let group: Vec<&SubsetEntry> = report
                .per_subset
                .iter()
                .filter(|e| e.sites.len() == size)
                .collect();
            for e in &group {
                assert!(
                    (e.interval.lower - group[0].interval.lower).abs() < 1e-6,
                    "size {size}"
                );
            }
        }
    }

    #[test]
    fn k_measure_rejects_too_many_sites() {
        let rho = w_state(8).unwrap();
        let big = DensityMatrix::new(
            tensor_product(rho.matrix(), &crate::linalg::ComplexMatrix::identity(2).scale(
                num_complex::Complex64::new(0.5, 0.0),
            )),
            SystemLayout::qubits(9).unwrap(),
        );
        // 9 qubits exceeds both the dense budget and the site budget; the
        // construction itself stays within matrix limits here.
        assert!(big.is_err() || k_measure(&big.unwrap(), &quick_cfg()).is_err());
    }

    #[test]
    fn k_w_lower_values() {
        let r2 = k_w_lower(2).unwrap();
        assert!((r2.total - 0.25).abs() < 1e-15);
        assert_eq!(r2.per_k.len(), 1);
        assert_eq!(r2.per_k[0].j_star, 1);

        // Balanced cuts take over once the dimension divisor matters.
        let r8 = k_w_lower(8).unwrap();
        let k8: Vec<usize> = r8.per_k.iter().map(|t| t.j_star).collect();
        assert_eq!(k8, vec![1, 1, 2, 2, 3, 3, 4]);
        assert!(k_w_lower(1).is_err());
    }

    #[test]
    fn w_sum_identity_exact() {
        let r2 = w_sum_identity(2).unwrap();
        assert_eq!(r2.binomial_sum, "1/8");
        assert_eq!(r2.closed_form, "1/8");
        assert!(r2.sides_equal);
        let r5 = w_sum_identity(5).unwrap();
        assert_eq!(r5.closed_form, "15/8");
        assert!(r5.sides_equal);
        for n in 2..=20 {
            assert!(w_sum_identity(n).unwrap().sides_equal, "n={n}");
        }
    }

    #[test]
    fn k_grid_lower_chain_and_square() {
        let cfg = SolverConfig::default();
        let chain = k_grid_lower(1, 2, 1.0, &cfg).unwrap();
        assert_eq!(chain.connected_count, BigUint::from(1u32));
        assert!((chain.k_lower - 0.5).abs() < 1e-2);

        let square = k_grid_lower(2, 2, 1.0, &cfg).unwrap();
        assert_eq!(square.connected_count, BigUint::from(9u32));
        assert_eq!(square.count_source, CountSource::Exact);
        assert!((square.k_lower - 4.5).abs() < 1e-2);

        let separable = k_grid_lower(2, 2, 0.25, &cfg).unwrap();
        assert_eq!(separable.k_lower, 0.0);
    }

    #[test]
    fn k_grid_lower_chain_is_polynomial() {
        // Contiguous runs only: N = m(m-1)/2, so the bound grows
        // quadratically in the chain length.
        let cfg = SolverConfig::default();
        for m in 2..=6usize {
            let bound = k_grid_lower(1, m, 1.0, &cfg).unwrap();
            assert_eq!(bound.connected_count, BigUint::from((m * (m - 1) / 2) as u64));
            let expect = (m * (m - 1) / 2) as f64 * bound.delta;
            assert!((bound.k_lower - expect).abs() < 1e-9, "1x{m}");
        }
    }

    #[test]
    fn k_grid_lower_falls_back_to_comb() {
        let cfg = SolverConfig::default();
        // 4x8 = 32 vertices exceeds the enumeration budget; the comb has
        // teeth at columns {1,4,7}, so free = 3*5 = 15 and N >= 2^15.
        let big = k_grid_lower(4, 8, 1.0, &cfg).unwrap();
        assert_eq!(big.count_source, CountSource::CombBound);
        assert_eq!(big.connected_count, BigUint::from(1u32 << 15));
        assert!((big.k_lower - 16384.0).abs() < 1.0);
    }

    #[test]
    fn grid_verify_chain() {
        let cfg = quick_cfg();
        let report = k_grid_verify_small(1, 3, 1.0, &cfg).unwrap();
        assert!(report.connected_pass);
        assert!(report.disconnected_pass);
        assert_eq!(report.entries.len(), 4);
        let disconnected: Vec<&GridVerifyEntry> =
            report.entries.iter().filter(|e| !e.connected).collect();
        assert_eq!(disconnected.len(), 1);
        assert_eq!(disconnected[0].sites, vec![0, 2]);
    }

    #[test]
    fn grid_verify_fully_mixed_edges() {
        // p = 0 gives maximally mixed pairs: every subset is a product, so
        // everything certifies to zero and delta itself is zero.
        let report = k_grid_verify_small(2, 2, 0.0, &quick_cfg()).unwrap();
        assert_eq!(report.delta, 0.0);
        assert!(report.entries.iter().all(|e| e.certified_zero));
        assert!(report.connected_pass && report.disconnected_pass);
    }
}
