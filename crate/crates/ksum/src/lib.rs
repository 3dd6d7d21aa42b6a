//! Certified bounds on the subset-summed entanglement measure
//!
//! ```text
//! K(rho) = sum over subsets S of Delta(rho_S),
//! Delta(rho_S) = min over bipartitions A|A^c of S of the trace-norm
//!                distance from rho_S to the states separable across A|A^c.
//! ```
//!
//! The crate provides:
//!
//! - [`linalg`]: a dense complex-Hermitian kernel (Jacobi eigensolver,
//!   trace norm, PSD projection, Kronecker products),
//! - [`qsys`]: multipartite layouts, partial trace / partial transpose /
//!   dephasing / coarse-graining, and constructors for the state families
//!   of interest (Bell and Werner pairs, W states, cluster states,
//!   grids of entangled pairs, phase cat states),
//! - [`entanglement`]: negativity, the PPT test, W-state closed forms and
//!   the negativity-based lower bound on distance to separability,
//! - [`sepdist`]: a first-order solver for certified two-sided bounds on
//!   the trace-norm distance to the PPT set across a fixed cut,
//! - [`kmeasure`]: assembly of Delta and K with subset enumeration,
//!   separability certificates, and symmetry-reduced W-state evaluation,
//! - [`gridcount`]: grid graphs, exact connected-subset counting, and the
//!   comb construction that lower-bounds the count,
//! - [`cli`]: the `ksum` command-line front end emitting JSON/CSV reports.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod cli;
pub mod entanglement;
pub mod gridcount;
pub mod kmeasure;
pub mod linalg;
pub mod qsys;
pub mod sepdist;

mod error;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use qsys::{Bipartition, DensityMatrix, SystemLayout};
pub use sepdist::{BoundInterval, SolverConfig};
