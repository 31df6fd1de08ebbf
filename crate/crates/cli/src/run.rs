use std::path::{Path, PathBuf};

use alpha_hs::coordinates::{EulerianState, LagrangianState};
use alpha_hs::evolution::{solve_lagrangian, SolverRegistry};
use alpha_hs::pwl::union_breakpoints;
use alpha_hs::transform::to_eulerian;
use serde::Serialize;

use crate::failure::Failure;
use crate::output::{check_times, ensure_dir, write_csv, Format};
use crate::scenario::{self, Scenario};

/// Label samples and time samples of the characteristics trace.
pub const TRACE_LABELS: usize = 201;
pub const TRACE_TIMES: usize = 401;

pub struct RunOptions<'a> {
    pub scenario: &'a Path,
    pub times: &'a [f64],
    pub out: &'a Path,
    pub alpha_override: Option<f64>,
    pub format: Format,
    pub solver: &'a str,
}

#[derive(Serialize)]
struct TraceRow {
    xi: f64,
    t: f64,
    y: f64,
    #[serde(rename = "U")]
    u: f64,
}

#[derive(Serialize)]
struct EnergyRow {
    t: f64,
    mu_total: f64,
    nu_total: f64,
    events: usize,
}

#[derive(Serialize)]
struct LagrangianRow {
    xi: f64,
    y: f64,
    #[serde(rename = "U")]
    u: f64,
    #[serde(rename = "H")]
    h: f64,
    #[serde(rename = "V")]
    v: f64,
}

#[derive(Serialize)]
struct EulerianRow {
    x: f64,
    u: f64,
    mu_below: f64,
    mu_upto: f64,
    nu_below: f64,
    nu_upto: f64,
}

pub fn load_initial(path: &Path, alpha_override: Option<f64>) -> Result<LagrangianState, Failure> {
    scenario::load(&scenario::read(path)?, alpha_override)?.into_lagrangian()
}

/// `n` equally spaced points covering `[lo, hi]`.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn trace_labels(x: &LagrangianState) -> Vec<f64> {
    let grid = x.grid();
    let (lo, hi) = match (grid.first(), grid.last()) {
        (Some(&a), Some(&b)) => (a - 1.0, b + 1.0),
        _ => (-1.0, 1.0),
    };
    linspace(lo, hi, TRACE_LABELS)
}

fn lagrangian_rows(x: &LagrangianState) -> Vec<LagrangianRow> {
    x.grid()
        .into_iter()
        .map(|xi| {
            let [y, u, h, v] = x.eval(xi);
            LagrangianRow { xi, y, u, h, v }
        })
        .collect()
}

fn eulerian_rows(e: &EulerianState) -> Vec<EulerianRow> {
    let atoms: Vec<f64> = e.nu.atoms().iter().map(|a| a.0).collect();
    union_breakpoints(&[&e.grid(), &atoms])
        .into_iter()
        .map(|x| EulerianRow {
            x,
            u: e.u.eval(x),
            mu_below: e.mu.cumulative(x),
            mu_upto: e.mu.cumulative_closed(x),
            nu_below: e.nu.cumulative(x),
            nu_upto: e.nu.cumulative_closed(x),
        })
        .collect()
}

pub fn run(opts: &RunOptions) -> Result<String, Failure> {
    let x0 = load_initial(opts.scenario, opts.alpha_override)?;
    let times = check_times(opts.times)?;
    let registry = SolverRegistry::default();
    let solver = registry.get(opts.solver).map_err(Failure::invalid)?;
    let horizon = *times.last().unwrap();
    let exact = solve_lagrangian(&x0, horizon).map_err(Failure::internal)?;
    let states = solver.solve_at(&x0, &times).map_err(Failure::internal)?;
    ensure_dir(opts.out)?;

    let file = |name: String| -> PathBuf { opts.out.join(name) };
    let mut energy = Vec::with_capacity(times.len());
    for (k, (&t, x)) in times.iter().zip(&states).enumerate() {
        let e = to_eulerian(x).map_err(Failure::internal)?;
        Scenario::from_lagrangian(x, Some(t)).write(&file(format!("lagrangian_{k:03}.json")))?;
        Scenario::from_eulerian(&e, Some(t)).write(&file(format!("eulerian_{k:03}.json")))?;
        if opts.format == Format::Csv {
            write_csv(&file(format!("lagrangian_{k:03}.csv")), lagrangian_rows(x))?;
            write_csv(&file(format!("eulerian_{k:03}.csv")), eulerian_rows(&e))?;
        }
        energy.push(EnergyRow { t, mu_total: e.mu.total(), nu_total: e.nu.total(), events: exact.events_until(t) });
    }

    let dense = linspace(0.0, horizon, TRACE_TIMES);
    let labels = trace_labels(&x0);
    let trace = solver.solve_at(&x0, &dense).map_err(Failure::internal)?;
    let rows = dense.iter().zip(&trace).flat_map(|(&t, x)| {
        labels.iter().map(move |&xi| TraceRow { xi, t, y: x.y.eval(xi), u: x.u.eval(xi) })
    });
    write_csv(&file("characteristics.csv".into()), rows)?;

    let mut summary = format!("solver {}, alpha {}, {} events up to t = {horizon}\n", solver.name(), x0.alpha, exact.events().len());
    for r in &energy {
        summary += &format!("t = {:<8} mu(R) = {:.12}  nu(R) = {:.12}  events = {}\n", r.t, r.mu_total, r.nu_total, r.events);
    }
    write_csv(&file("energy.csv".into()), energy)?;
    Ok(summary)
}
