//! Growth of the certified lower bound on K for W states.
//!
//! The W state is permutation symmetric, so the sum over subsets collapses
//! to a sum over subset sizes with binomial weights. The certified bound
//! grows by a factor of about 1.65 per added qubit at these sizes; the
//! closed-form reference sum `(2^n - 2)/16`, which assumes a per-subset
//! bound of k/(8n), is printed alongside for comparison.
//!
//! Run with: cargo run --release -p ksum --example w_measure_growth

use ksum::kmeasure::{k_w_lower, w_sum_identity};

fn main() {
    println!(
        "{:>3} {:>16} {:>8} {:>16} {:>12}",
        "n", "k_w_lower", "ratio", "closed form", "exact"
    );
    let mut prev = None;
    for n in 2..=12usize {
        let bound = k_w_lower(n).unwrap();
        let identity = w_sum_identity(n).unwrap();
        let ratio = prev
            .map(|p: f64| format!("{:.4}", bound.total / p))
            .unwrap_or_else(|| "-".into());
        println!(
            "{n:>3} {:>16.9} {ratio:>8} {:>16.9} {:>12}",
            bound.total, identity.value, identity.closed_form
        );
        prev = Some(bound.total);
    }

    println!("\nper-k breakdown for n = 8 (j* = minimizing cut size):");
    println!("{:>3} {:>10} {:>4} {:>16} {:>16}", "k", "C(8,k)", "j*", "delta_lb", "term");
    for t in k_w_lower(8).unwrap().per_k {
        println!(
            "{:>3} {:>10} {:>4} {:>16.10} {:>16.10}",
            t.k, t.binomial, t.j_star, t.delta_lb, t.term
        );
    }
}
