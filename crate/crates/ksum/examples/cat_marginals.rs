//! Phase cat states: the phase is invisible to every proper marginal.
//!
//! For `(|0..0> + e^{i phi} |1..1>)/sqrt(2)` on n qubits, every (n-1)-qubit
//! reduction is the same classical mixture whatever phi is; only the full
//! state depends on the phase. States like this are the measure-zero
//! exception to marginals determining a pure state.
//!
//! Run with: cargo run --release -p ksum --example cat_marginals

use ksum::linalg::trace_norm;
use ksum::qsys::{partial_trace, phase_cat};

fn main() {
    let n = 5;
    let reference = phase_cat(n, 0.0).unwrap();
    println!("cat state on {n} qubits, distances relative to phi = 0\n");
    println!("{:>10} {:>24} {:>20}", "phi", "max marginal distance", "full distance");
    for phi in [
        0.0,
        std::f64::consts::FRAC_PI_4,
        std::f64::consts::FRAC_PI_2,
        2.0,
        std::f64::consts::PI,
    ] {
        let rho = phase_cat(n, phi).unwrap();
        let mut max_marginal = 0.0_f64;
        for drop in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&s| s != drop).collect();
            let a = partial_trace(&rho, &keep).unwrap();
            let b = partial_trace(&reference, &keep).unwrap();
            let dist = trace_norm(&a.matrix().sub(b.matrix()).unwrap()).unwrap();
            max_marginal = max_marginal.max(dist);
        }
        let full = trace_norm(&rho.matrix().sub(reference.matrix()).unwrap()).unwrap();
        println!("{phi:>10.6} {max_marginal:>24.2e} {full:>20.6}");
    }
}
