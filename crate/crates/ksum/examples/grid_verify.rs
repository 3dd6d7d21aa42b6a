//! Empirical check of the grid bound on a materialized 2x2 instance.
//!
//! The largest grid whose state fits the dense budget (8 qubits, 256
//! dimensions) is 2x2. Every one of its 9 connected vertex subsets must
//! carry a certified Delta lower bound of at least delta, and both
//! diagonal pairs must certify to zero as products. The solver budget is
//! deliberately small: the lower bounds come from qubit-pair reductions
//! and certificates, not from descent iterations.
//!
//! Run with: cargo run --release -p ksum --example grid_verify

use ksum::kmeasure::k_grid_verify_small;
use ksum::sepdist::SolverConfig;

fn main() {
    let cfg = SolverConfig {
        max_iterations: 2,
        dykstra_rounds: 3,
        ..Default::default()
    };
    for p in [1.0, 0.5] {
        let report = k_grid_verify_small(2, 2, p, &cfg).unwrap();
        println!(
            "2x2 grid at p = {p}: delta = {:.6}, connected pass = {}, disconnected pass = {}",
            report.delta, report.connected_pass, report.disconnected_pass
        );
        for e in &report.entries {
            let tag = if e.connected { "connected" } else { "split" };
            if e.certified_zero {
                println!("  {:<12} {:9}  certified Delta = 0", format!("{:?}", e.sites), tag);
            } else {
                println!(
                    "  {:<12} {:9}  Delta in [{:.6}, {:.6}]",
                    format!("{:?}", e.sites),
                    tag,
                    e.lower,
                    e.upper
                );
            }
        }
        println!();
    }
}
