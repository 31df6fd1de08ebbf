use std::path::Path;

use alpha_hs::coordinates::{relabel, tau_profile, EulerianState, LagrangianState};
use alpha_hs::evolution::solve_lagrangian;
use alpha_hs::metrics::metric_d_at;
use alpha_hs::random::{random_alpha, random_eulerian, random_lagrangian, random_relabelling};
use alpha_hs::transform::to_lagrangian;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::failure::Failure;
use crate::output::{check_times, write_csv, write_json, Format};

const GROWTH_SLACK: f64 = 1e-9;

pub struct StabilityOptions<'a> {
    pub seed: u64,
    pub pairs: usize,
    pub times: &'a [f64],
    pub out: Option<&'a Path>,
    pub format: Format,
}

#[derive(Serialize)]
pub struct StabilityRow {
    pub pair: usize,
    pub alpha: f64,
    pub kind: &'static str,
    pub t: f64,
    pub d0: f64,
    pub d: f64,
    pub bound: f64,
    pub ok: bool,
}

/// One pair per seed. Independent draws rarely share breaking times, so
/// two of three kinds are built to: one state under two labellings, and a
/// state beside a slightly amplified copy.
fn draw_pair(seed: u64) -> (f64, &'static str, LagrangianState, LagrangianState) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let alpha = random_alpha(&mut r);
    match r.gen_range(0..3) {
        0 => {
            let a = random_lagrangian(&mut r, alpha);
            (alpha, "independent", a, random_lagrangian(&mut r, alpha))
        }
        1 => {
            let x = to_lagrangian(&random_eulerian(&mut r, alpha)).expect("generated data is consistent");
            let (f, g) = (random_relabelling(&mut r), random_relabelling(&mut r));
            (alpha, "relabelled", relabel(&x, &f), relabel(&x, &g))
        }
        _ => {
            let y = random_eulerian(&mut r, alpha);
            let c = 1.0 + r.gen_range(0.001..0.05);
            let z = EulerianState::new(y.u.scale(c), y.mu.scaled(c * c).expect("c > 0"), y.nu.scaled(c * c).expect("c > 0"), alpha)
                .expect("alpha in range");
            let f = random_relabelling(&mut r);
            let lift = |e: &EulerianState| to_lagrangian(e).expect("generated data is consistent");
            (alpha, "amplified", relabel(&lift(&y), &f), relabel(&lift(&z), &f))
        }
    }
}

pub fn stability(opts: &StabilityOptions) -> Result<(Vec<StabilityRow>, String), Failure> {
    if opts.pairs == 0 {
        return Err(Failure::Invalid("--pairs must be positive".into()));
    }
    let times = check_times(opts.times)?;
    let horizon = *times.last().unwrap();
    let mut rows = Vec::with_capacity(opts.pairs * times.len());
    for pair in 0..opts.pairs {
        let (alpha, kind, a, b) = draw_pair(opts.seed.wrapping_add(pair as u64));
        let (ta, tb) = (solve_lagrangian(&a, horizon).map_err(Failure::internal)?, solve_lagrangian(&b, horizon).map_err(Failure::internal)?);
        let (pa, pb) = (tau_profile(&a), tau_profile(&b));
        let d0 = metric_d_at(&a, &b, &pa, &pb, 0.0).map_err(Failure::internal)?;
        for &t in &times {
            let (xa, xb) = (ta.state_at(t).map_err(Failure::internal)?, tb.state_at(t).map_err(Failure::internal)?);
            let d = metric_d_at(&xa, &xb, &pa, &pb, t).map_err(Failure::internal)?;
            let bound = t.exp() * d0;
            rows.push(StabilityRow { pair, alpha, kind, t, d0, d, bound, ok: d <= bound + GROWTH_SLACK });
        }
    }

    if let Some(out) = opts.out {
        match opts.format {
            Format::Json => write_json(out, &rows)?,
            Format::Csv => write_csv(out, &rows)?,
        }
    }

    let mut summary = String::new();
    for &t in &times {
        let at: Vec<&StabilityRow> = rows.iter().filter(|r| r.t == t).collect();
        let bad = at.iter().filter(|r| !r.ok).count();
        let worst = at.iter().map(|r| if r.d0 > 0.0 { r.d / r.bound } else { 0.0 }).fold(0.0, f64::max);
        let verdict = if bad == 0 { "PASS" } else { "FAIL" };
        summary += &format!("t = {t}: {verdict} ({bad} of {} pairs exceed e^t d(0); worst d(t)/(e^t d(0)) = {worst:.6})\n", at.len());
    }
    Ok((rows, summary))
}
