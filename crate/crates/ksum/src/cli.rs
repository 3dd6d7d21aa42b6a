//! Command-line front end: every headline quantity as a deterministic
//! JSON (default) or CSV report on stdout.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 solver non-convergence
//! (the report is still emitted with `converged: false`).

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::entanglement::{w_negativity, w_negativity_min_cut};
use crate::gridcount::{comb_spec, count_connected_subsets, grid_graph};
use crate::kmeasure::{k_grid_lower, k_measure, k_w_lower, w_sum_identity};
use crate::linalg::{tensor_product, trace_norm, ComplexMatrix};
use crate::qsys::{
    bell_pair, cluster_state, grid_pair_state, partial_trace, phase_cat, w_state, werner,
    Bipartition, DensityMatrix, SystemLayout,
};
use crate::sepdist::{ppt_distance, SolverConfig};
use crate::{Error, Result};

/// What a CLI invocation produced; the binary prints and exits with these.
#[derive(Debug)]
pub struct CliOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "ksum",
    version,
    about = "Certified bounds on the subset-summed entanglement measure K",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format (csv is available for the tabular reports)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Subgradient iteration budget
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Stop once upper - lower falls below this gap
    #[arg(long)]
    target_gap: Option<f64>,
    /// Base step size (diminishing as step/sqrt(iter))
    #[arg(long)]
    step_size: Option<f64>,
    /// Alternating-projection rounds per feasibility restoration
    #[arg(long)]
    dykstra_rounds: Option<usize>,
    /// Seed for the witness-search random restarts
    #[arg(long)]
    seed: Option<u64>,
    /// Certify lower bounds through the negativity route only
    #[arg(long)]
    negativity_lower_only: bool,
}

impl SolverArgs {
    fn build(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        if let Some(v) = self.max_iterations {
            cfg.max_iterations = v;
        }
        if let Some(v) = self.target_gap {
            cfg.target_gap = v;
        }
        if let Some(v) = self.step_size {
            cfg.step_size = v;
        }
        if let Some(v) = self.dykstra_rounds {
            cfg.dykstra_rounds = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg.negativity_lower_only = self.negativity_lower_only;
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NamedState {
    /// W state on n qubits
    W,
    /// Cluster state on a path of n qubits
    ClusterPath,
    /// Tensor product of Bell pairs, one site per qubit
    BellPairs,
    /// Grid of Werner pairs coarse-grained to one qudit per vertex
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwoQubitState {
    Bell,
    Werner,
    Product,
    Mixed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form negativity of reduced W states across (j | k-j) cuts
    Wneg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Certified lower bound on K(W_n) next to the closed-form reference sum
    Wk {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exhaustive K evaluation for a named state
    Kmeasure {
        #[arg(long, value_enum)]
        state: NamedState,
        /// Qubit count for w / cluster-path
        #[arg(long)]
        n: Option<usize>,
        /// Pair count for bell-pairs
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Werner parameter for grid edges
        #[arg(long)]
        p: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Certified grid bound: connected-subset count times edge distance
    Gridk {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exact connected-subset count plus the comb lower bound
    Count {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Trace-norm distance to the PPT set for a named two-qubit state
    Sepdist {
        #[arg(long, value_enum)]
        state: TwoQubitState,
        /// Werner parameter (required for --state werner)
        #[arg(long)]
        p: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Phase sensitivity of the cat state: marginals vs the full state
    Catphase {
        #[arg(long)]
        n: usize,
        /// Comma-separated phase list, e.g. 0,0.785,3.14159
        #[arg(long, value_delimiter = ',')]
        phi: Vec<f64>,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Round to 12 significant digits; reports print nothing finer.
fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap_or(0.0);
                if let Some(r) = serde_json::Number::from_f64(round_sig12(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json_report<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))?;
    round_floats(&mut v);
    serde_json::to_string_pretty(&v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))
}

fn big_to_json(v: &num_bigint::BigUint) -> Value {
    use num_traits::ToPrimitive;
    match v.to_u64() {
        Some(u) => json!(u),
        None => json!(v.to_string()),
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = header.join(",") + "\n";
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn fmt_f64(x: f64) -> String {
    format!("{}", round_sig12(x))
}

/// Run the CLI against an explicit argument vector (argv[0] included) and
/// capture the outcome instead of exiting. The binary is a thin wrapper
/// around this, which keeps every code path testable in-process.
pub fn run<I, S>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors" with success status.
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                CliOutcome {
                    exit_code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, exit_code)) => CliOutcome {
            exit_code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let code = match e {
                Error::Numerical(_) => 3,
                _ => 2,
            };
            CliOutcome {
                exit_code: code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<(String, i32)> {
    match cmd {
        Command::Wneg { n, k, j, format } => run_wneg(n, k, j, format.format),
        Command::Wk { n, format } => run_wk(n, format.format),
        Command::Kmeasure {
            state,
            n,
            pairs,
            rows,
            cols,
            p,
            solver,
            format,
        } => run_kmeasure(state, n, pairs, rows, cols, p, &solver.build(), format.format),
        Command::Gridk {
            rows,
            cols,
            p,
            solver,
            format,
        } => run_gridk(rows, cols, p, &solver.build(), format.format),
        Command::Count {
            rows,
            cols,
            min_size,
            format,
        } => run_count(rows, cols, min_size, format.format),
        Command::Sepdist {
            state,
            p,
            solver,
            format,
        } => run_sepdist(state, p, &solver.build(), format.format),
        Command::Catphase { n, phi, format } => run_catphase(n, &phi, format.format),
    }
}

fn require_json(format: Format, what: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::Validation(format!(
            "{what} has no tabular form; use --format json"
        )));
    }
    Ok(())
}

fn run_wneg(n: usize, k: Option<usize>, j: Option<usize>, format: Format) -> Result<(String, i32)> {
    if n < 2 {
        return Err(Error::Validation("wneg needs --n >= 2".into()));
    }
    if let (Some(k), Some(j)) = (k, j) {
        let value = w_negativity(n, k, j)?;
        require_json(format, "a single wneg entry")?;
        let report = json!({
            "n": n, "k": k, "j": j,
            "negativity": value,
            "min_cut_negativity": w_negativity_min_cut(n, k)?,
        });
        return Ok((to_json_report(&report)?, 0));
    }
    let mut entries = Vec::new();
    for kk in k.map(|k| k..=k).unwrap_or(2..=n) {
        if !(2..=n).contains(&kk) {
            return Err(Error::Validation(format!("--k {kk} outside 2..={n}")));
        }
        for jj in j.map(|j| j..=j).unwrap_or(1..=kk / 2) {
            if !(1..kk).contains(&jj) {
                return Err(Error::Validation(format!("--j {jj} outside 1..{kk}")));
            }
            entries.push((kk, jj, w_negativity(n, kk, jj)?));
        }
    }
    match format {
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|&(k, j, v)| json!({"k": k, "j": j, "negativity": v}))
                .collect();
            Ok((to_json_report(&json!({"n": n, "entries": rows}))?, 0))
        }
        Format::Csv => {
            let rows = entries
                .iter()
                .map(|&(k, j, v)| {
                    vec![n.to_string(), k.to_string(), j.to_string(), fmt_f64(v)]
                })
                .collect();
            Ok((csv_table(&["n", "k", "j", "negativity"], rows), 0))
        }
    }
}

fn run_wk(n: usize, format: Format) -> Result<(String, i32)> {
    let bound = k_w_lower(n)?;
    let identity = w_sum_identity(n)?;
    match format {
        Format::Json => {
            let per_k: Vec<Value> = bound
                .per_k
                .iter()
                .map(|t| {
                    json!({
                        "k": t.k,
                        "binomial": big_to_json(&t.binomial),
                        "delta_lb": t.delta_lb,
                        "j_star": t.j_star,
                        "term": t.term,
                    })
                })
                .collect();
            let report = json!({
                "n": n,
                "k_w_lower": bound.total,
                "closed_form": identity.value,
                "closed_form_exact": identity.closed_form,
                "closed_form_note":
                    "reference sum assuming a per-subset bound of k/(8n); \
                     k_w_lower is the certified route",
                "per_k": per_k,
            });
            Ok((to_json_report(&report)?, 0))
        }
        Format::Csv => {
            let rows = bound
                .per_k
                .iter()
                .map(|t| {
                    vec![
                        t.k.to_string(),
                        t.binomial.to_string(),
                        fmt_f64(t.delta_lb),
                        t.j_star.to_string(),
                        fmt_f64(t.term),
                    ]
                })
                .collect();
            Ok((
                csv_table(&["k", "binomial", "delta_lb", "j_star", "term"], rows),
                0,
            ))
        }
    }
}

fn build_named_state(
    state: NamedState,
    n: Option<usize>,
    pairs: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    p: Option<f64>,
) -> Result<DensityMatrix> {
    let need = |opt: Option<usize>, flag: &str| {
        opt.ok_or_else(|| Error::Validation(format!("--{flag} is required for this state")))
    };
    match state {
        NamedState::W => w_state(need(n, "n")?),
        NamedState::ClusterPath => {
            cluster_state(&crate::gridcount::Graph::path(need(n, "n")?))
        }
        NamedState::BellPairs => {
            let pairs = need(pairs, "pairs")?;
            if pairs == 0 || pairs > 4 {
                return Err(Error::Validation(
                    "--pairs must be between 1 and 4 (dense budget)".into(),
                ));
            }
            let bell = bell_pair();
            let mut m = bell.matrix().clone();
            for _ in 1..pairs {
                m = tensor_product(&m, bell.matrix());
            }
            DensityMatrix::new(m, SystemLayout::qubits(2 * pairs)?)
        }
        NamedState::Grid => grid_pair_state(
            need(rows, "rows")?,
            need(cols, "cols")?,
            p.ok_or_else(|| Error::Validation("--p is required for grid".into()))?,
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_kmeasure(
    state: NamedState,
    n: Option<usize>,
    pairs: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    p: Option<f64>,
    cfg: &SolverConfig,
    format: Format,
) -> Result<(String, i32)> {
    require_json(format, "the K report")?;
    let rho = build_named_state(state, n, pairs, rows, cols, p)?;
    let report = k_measure(&rho, cfg)?;
    let code = if report.converged { 0 } else { 3 };
    Ok((to_json_report(&report)?, code))
}

fn run_gridk(
    rows: usize,
    cols: usize,
    p: f64,
    cfg: &SolverConfig,
    format: Format,
) -> Result<(String, i32)> {
    let bound = k_grid_lower(rows, cols, p, cfg)?;
    match format {
        Format::Json => {
            let report = json!({
                "rows": bound.rows,
                "cols": bound.cols,
                "p": bound.p,
                "N": big_to_json(&bound.connected_count),
                "count_source": match bound.count_source {
                    crate::kmeasure::CountSource::Exact => "exact",
                    crate::kmeasure::CountSource::CombBound => "comb-bound",
                },
                "delta": bound.delta,
                "delta_certificate": serde_json::to_value(&bound.delta_certificate)
                    .unwrap_or(Value::Null),
                "k_lower": bound.k_lower,
            });
            Ok((to_json_report(&report)?, 0))
        }
        Format::Csv => {
            let row = vec![
                bound.rows.to_string(),
                bound.cols.to_string(),
                fmt_f64(bound.p),
                bound.connected_count.to_string(),
                fmt_f64(bound.delta),
                fmt_f64(bound.k_lower),
            ];
            Ok((
                csv_table(&["rows", "cols", "p", "N", "delta", "k_lower"], vec![row]),
                0,
            ))
        }
    }
}

fn run_count(rows: usize, cols: usize, min_size: usize, format: Format) -> Result<(String, i32)> {
    let graph = grid_graph(rows, cols)?;
    let exact = match count_connected_subsets(&graph, min_size) {
        Ok(v) => Some(v),
        Err(Error::Capacity(_)) => None,
        Err(e) => return Err(e),
    };
    // The comb is defined for rows >= 2, cols >= 3 in either orientation.
    let comb = comb_spec(rows, cols)
        .or_else(|_| comb_spec(cols, rows))
        .ok();
    let comb_bound = comb
        .as_ref()
        .map(|c| num_bigint::BigUint::from(1u32) << c.free.len());
    match format {
        Format::Json => {
            let report = json!({
                "rows": rows,
                "cols": cols,
                "min_size": min_size,
                "vertices": rows * cols,
                "exact": exact.as_ref().map(big_to_json),
                "comb_lower_bound": comb_bound.as_ref().map(big_to_json),
                "comb_free_count": comb.as_ref().map(|c| c.free.len()),
                "comb_teeth": comb.as_ref().map(|c| c.teeth.clone()),
            });
            Ok((to_json_report(&report)?, 0))
        }
        Format::Csv => {
            let row = vec![
                rows.to_string(),
                cols.to_string(),
                min_size.to_string(),
                exact.map(|v| v.to_string()).unwrap_or_default(),
                comb_bound.map(|v| v.to_string()).unwrap_or_default(),
            ];
            Ok((
                csv_table(
                    &["rows", "cols", "min_size", "exact", "comb_lower_bound"],
                    vec![row],
                ),
                0,
            ))
        }
    }
}

fn run_sepdist(
    state: TwoQubitState,
    p: Option<f64>,
    cfg: &SolverConfig,
    format: Format,
) -> Result<(String, i32)> {
    require_json(format, "the distance report")?;
    let (name, rho) = match state {
        TwoQubitState::Bell => ("bell".to_string(), bell_pair()),
        TwoQubitState::Werner => {
            let p = p.ok_or_else(|| Error::Validation("--p is required for werner".into()))?;
            (format!("werner({p})"), werner(p)?)
        }
        TwoQubitState::Product => {
            let m = tensor_product(
                &ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
                &ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap(),
            );
            (
                "product".to_string(),
                DensityMatrix::new(m, SystemLayout::qubits(2)?)?,
            )
        }
        TwoQubitState::Mixed => ("mixed".to_string(), werner(0.0)?),
    };
    let cut = Bipartition::first_j(2, 1)?;
    let result = ppt_distance(&rho, &cut, cfg)?;
    let report = json!({
        "state": name,
        "lower": result.bounds.lower,
        "upper": result.bounds.upper,
        "converged": result.bounds.converged,
        "lower_certificate": serde_json::to_value(&result.bounds.lower_certificate)
            .unwrap_or(Value::Null),
        "upper_certificate": serde_json::to_value(&result.bounds.upper_certificate)
            .unwrap_or(Value::Null),
        "iterations": result.iterations,
    });
    let code = if result.bounds.converged { 0 } else { 3 };
    Ok((to_json_report(&report)?, code))
}

fn run_catphase(n: usize, phis: &[f64], format: Format) -> Result<(String, i32)> {
    require_json(format, "the marginal report")?;
    if phis.is_empty() {
        return Err(Error::Validation("catphase needs at least one --phi".into()));
    }
    if n < 2 {
        return Err(Error::Validation("catphase needs --n >= 2".into()));
    }
    let reference = phase_cat(n, 0.0)?;
    let marginals_of = |rho: &DensityMatrix| -> Result<Vec<DensityMatrix>> {
        (0..n)
            .map(|drop| {
                let keep: Vec<usize> = (0..n).filter(|&s| s != drop).collect();
                partial_trace(rho, &keep)
            })
            .collect()
    };
    let ref_marginals = marginals_of(&reference)?;
    let mut entries = Vec::new();
    for &phi in phis {
        let rho = phase_cat(n, phi)?;
        let marginals = marginals_of(&rho)?;
        let mut max_marginal = 0.0_f64;
        for (a, b) in marginals.iter().zip(&ref_marginals) {
            let d = trace_norm(&a.matrix().sub(b.matrix())?)?;
            max_marginal = max_marginal.max(d);
        }
        let full = trace_norm(&rho.matrix().sub(reference.matrix())?)?;
        entries.push(json!({
            "phi": phi,
            "max_marginal_distance": max_marginal,
            "full_state_distance": full,
        }));
    }
    let report = json!({
        "n": n,
        "marginal_size": n - 1,
        "reference_phi": 0.0,
        "entries": entries,
    });
    Ok((to_json_report(&report)?, 0))
}
