//! Certified trace-norm distance to separability for the Werner family.
//!
//! `werner(p) = p |Bell><Bell| + (1-p) I/4` crosses the separability
//! threshold at p = 1/3; beyond it the true distance is (3p-1)/4. On a
//! two-qubit cut PPT equals separability, so the solver's interval should
//! pinch that line: the upper bound comes from an explicit feasible state,
//! the lower bound from a dual witness whose product-state overlap is
//! estimated by alternating ascent.
//!
//! Run with: cargo run --release -p ksum --example separability_distance

use ksum::qsys::{werner, Bipartition};
use ksum::sepdist::{ppt_distance, SolverConfig};

fn main() {
    let cfg = SolverConfig::default();
    let cut = Bipartition::first_j(2, 1).unwrap();
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>6} {:>6}",
        "p", "lower", "upper", "(3p-1)/4", "iters", "conv"
    );
    for i in 0..=12 {
        let p = i as f64 / 12.0;
        let result = ppt_distance(&werner(p).unwrap(), &cut, &cfg).unwrap();
        let exact = ((3.0 * p - 1.0) / 4.0).max(0.0);
        println!(
            "{p:>6.3} {:>14.9} {:>14.9} {exact:>14.9} {:>6} {:>6}",
            result.bounds.lower, result.bounds.upper, result.iterations,
            result.bounds.converged
        );
    }
}
