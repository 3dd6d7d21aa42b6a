//! K for uncoarse-grained Bell pairs: linear growth.
//!
//! With every qubit its own site, the only subsets with nonzero Delta are
//! the pairs themselves: any other subset has a bipartition that splits
//! cleanly into a product, so K = (number of pairs) / 2. Robust
//! entanglement alone is not enough for a large K; the coarse-grained grid
//! construction is what makes the count of contributing subsets explode.
//!
//! Run with: cargo run --release -p ksum --example bell_pairs_measure

use ksum::kmeasure::k_measure;
use ksum::linalg::tensor_product;
use ksum::qsys::{bell_pair, DensityMatrix, SystemLayout};
use ksum::sepdist::SolverConfig;

fn main() {
    let cfg = SolverConfig::default();
    for pairs in 1..=3usize {
        let bell = bell_pair();
        let mut m = bell.matrix().clone();
        for _ in 1..pairs {
            m = tensor_product(&m, bell.matrix());
        }
        let rho =
            DensityMatrix::new(m, SystemLayout::qubits(2 * pairs).unwrap()).unwrap();
        let report = k_measure(&rho, &cfg).unwrap();
        println!(
            "{pairs} pair(s), {} sites: K in [{:.6}, {:.6}], {} contributing subsets, {} certified zero",
            report.n_sites,
            report.k_lower,
            report.k_upper,
            report.per_subset.len(),
            report.skipped_zero
        );
        for entry in &report.per_subset {
            println!(
                "    sites {:?}: Delta in [{:.6}, {:.6}]",
                entry.sites, entry.interval.lower, entry.interval.upper
            );
        }
    }
}
