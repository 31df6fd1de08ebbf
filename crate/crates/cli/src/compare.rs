use std::fs;
use std::path::Path;

use alpha_hs::coordinates::{tau_profile, Relabelling};
use alpha_hs::evolution::SolverRegistry;
use alpha_hs::metrics::{dd_bracket, df_bracket, metric_terms_at, MetricTerms};
use alpha_hs::pwl::PwLinear;
use alpha_hs::transform::to_eulerian;
use serde::Serialize;

use crate::failure::Failure;
use crate::output::{check_times, write_csv, write_json, Format};
use crate::run::load_initial;

/// Absolute slack on the growth checks.
const GROWTH_SLACK: f64 = 1e-9;

pub struct CompareOptions<'a> {
    pub scenarios: [&'a Path; 2],
    pub times: &'a [f64],
    pub out: &'a Path,
    pub alpha_override: Option<f64>,
    pub format: Format,
    pub solver: &'a str,
    pub candidates: Option<&'a Path>,
}

#[derive(Serialize)]
pub struct CompareRow {
    pub t: f64,
    pub d: f64,
    pub terms: MetricTerms,
    pub df_lower: f64,
    pub df_upper: f64,
    pub df_witness: String,
    pub dd_lower: f64,
    pub dd_upper: f64,
    pub dd_witness: String,
    /// `d(t) ≤ e^t d(0)`.
    pub d_growth_ok: bool,
    /// Lower bound at `t` within `e^{3t/2}` of the upper bound at 0, for
    /// both `d_F` and `d_D`.
    pub bracket_growth_ok: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    alpha: f64,
    solver: &'a str,
    scenarios: [String; 2],
    rows: &'a [CompareRow],
}

/// Flat CSV form; `MetricTerms` does not flatten through the csv writer.
#[derive(Serialize)]
struct CsvRow<'a> {
    t: f64,
    d: f64,
    sup_y: f64,
    sup_u: f64,
    l2_y_xi: f64,
    l2_u_xi: f64,
    sup_h: f64,
    l1_g: f64,
    l2_g: f64,
    df_lower: f64,
    df_upper: f64,
    df_witness: &'a str,
    dd_lower: f64,
    dd_upper: f64,
    dd_witness: &'a str,
    d_growth_ok: bool,
    bracket_growth_ok: bool,
}

impl<'a> From<&'a CompareRow> for CsvRow<'a> {
    fn from(r: &'a CompareRow) -> Self {
        let m = &r.terms;
        CsvRow {
            t: r.t,
            d: r.d,
            sup_y: m.sup_y,
            sup_u: m.sup_u,
            l2_y_xi: m.l2_y_xi,
            l2_u_xi: m.l2_u_xi,
            sup_h: m.sup_h,
            l1_g: m.l1_g,
            l2_g: m.l2_g,
            df_lower: r.df_lower,
            df_upper: r.df_upper,
            df_witness: &r.df_witness,
            dd_lower: r.dd_lower,
            dd_upper: r.dd_upper,
            dd_witness: &r.dd_witness,
            d_growth_ok: r.d_growth_ok,
            bracket_growth_ok: r.bracket_growth_ok,
        }
    }
}

/// Relabellings from a JSON array of piecewise-linear maps.
pub fn read_candidates(path: &Path) -> Result<Vec<Relabelling>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let maps: Vec<PwLinear> =
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    maps.into_iter().map(|f| Relabelling::new(f).map_err(Failure::invalid)).collect()
}

pub fn compare(opts: &CompareOptions) -> Result<(Vec<CompareRow>, String), Failure> {
    let xa = load_initial(opts.scenarios[0], opts.alpha_override)?;
    let xb = load_initial(opts.scenarios[1], opts.alpha_override)?;
    if xa.alpha != xb.alpha {
        return Err(Failure::Invalid(format!("scenarios have different alpha ({} and {})", xa.alpha, xb.alpha)));
    }
    let candidates = match opts.candidates {
        Some(p) => read_candidates(p)?,
        None => Vec::new(),
    };
    let mut times = check_times(opts.times)?;
    if times[0] != 0.0 {
        times.insert(0, 0.0);
    }
    let registry = SolverRegistry::default();
    let solver = registry.get(opts.solver).map_err(Failure::invalid)?;
    let sa = solver.solve_at(&xa, &times).map_err(Failure::internal)?;
    let sb = solver.solve_at(&xb, &times).map_err(Failure::internal)?;
    let (ta, tb) = (tau_profile(&xa), tau_profile(&xb));

    let mut rows: Vec<CompareRow> = Vec::with_capacity(times.len());
    for ((&t, a), b) in times.iter().zip(&sa).zip(&sb) {
        let terms = metric_terms_at(a, b, &ta, &tb, t).map_err(Failure::internal)?;
        let df = df_bracket(a, b, &candidates).map_err(Failure::internal)?;
        let (ea, eb) = (to_eulerian(a).map_err(Failure::internal)?, to_eulerian(b).map_err(Failure::internal)?);
        let dd = dd_bracket(&ea, &eb, &[]).map_err(Failure::internal)?;
        let d = terms.total();
        let (d_growth_ok, bracket_growth_ok) = match rows.first() {
            Some(r0) => (
                d <= t.exp() * r0.d + GROWTH_SLACK,
                df.lower <= (1.5 * t).exp() * r0.df_upper + GROWTH_SLACK
                    && dd.lower <= (1.5 * t).exp() * r0.dd_upper + GROWTH_SLACK,
            ),
            None => (true, true),
        };
        rows.push(CompareRow {
            t,
            d,
            terms,
            df_lower: df.lower,
            df_upper: df.upper,
            df_witness: df.witness,
            dd_lower: dd.lower,
            dd_upper: dd.upper,
            dd_witness: dd.witness,
            d_growth_ok,
            bracket_growth_ok,
        });
    }

    match opts.format {
        Format::Json => {
            let report = Report {
                alpha: xa.alpha,
                solver: solver.name(),
                scenarios: opts.scenarios.map(|p| p.display().to_string()),
                rows: &rows,
            };
            write_json(opts.out, &report)?;
        }
        Format::Csv => write_csv(opts.out, rows.iter().map(CsvRow::from))?,
    }

    let mut summary = format!("{:>8} {:>14} {:>14} {:>14} {:>6}\n", "t", "d", "d_F lower", "d_F upper", "ok");
    for r in &rows {
        let ok = if r.d_growth_ok && r.bracket_growth_ok { "yes" } else { "NO" };
        summary += &format!("{:>8} {:>14.9} {:>14.9} {:>14.9} {:>6}\n", r.t, r.d, r.df_lower, r.df_upper, ok);
    }
    Ok((rows, summary))
}
