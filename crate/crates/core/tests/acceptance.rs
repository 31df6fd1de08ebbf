//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use alpha_hs::coordinates::{pi_normalize, relabel, tau_profile, LagrangianState, Relabelling};
use alpha_hs::evolution::{reference_integrate_many, solve_lagrangian, Trajectory};
use alpha_hs::metrics::{dd_bracket, df_bracket, dm_bracket, g_function_at, j_upper, metric_d, metric_d_at, state_norm, ReducedState};
use alpha_hs::pwl::{constant_norms, sup_distance, union_breakpoints, PwLinear};
use alpha_hs::random::{random_eulerian, random_evolved, random_lagrangian, random_relabelling, ALPHAS};
use alpha_hs::reference_cases::{build_example, ExampleId};
use alpha_hs::transform::{to_eulerian, to_lagrangian};
use common::{golden_deviation, random_pair, straddling_times, GOLDEN_TIMES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const PAIRS: u64 = 120;
const CHECK_TIMES: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 5.0];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ramp_relabelling() -> Relabelling {
    Relabelling::new(PwLinear::with_tails(vec![0.0, 1.0], vec![0.0, 2.0], 1.0, 1.0).unwrap()).unwrap()
}

fn golden_two_ramps() -> Check {
    let start = Instant::now();
    let ex = build_example(ExampleId::TwoRamps, None).map_err(err)?;
    let (worst, n) = golden_deviation(&ex, &GOLDEN_TIMES);
    ensure(worst <= 1e-12, || format!("deviation {worst:e} over {n} points"))?;
    let traj = solve_lagrangian(&ex.lagrangian, 3.0).map_err(err)?;
    for t in GOLDEN_TIMES {
        let e = to_eulerian(&traj.state_at(t).map_err(err)?).map_err(err)?;
        let want_mu = if t < 2.0 { 2.0 } else { 4.0 / 3.0 };
        ensure((e.mu.total() - want_mu).abs() <= 1e-12, || format!("μ(ℝ) = {} at t = {t}", e.mu.total()))?;
        ensure((e.nu.total() - 2.0).abs() <= 1e-12, || format!("ν(ℝ) = {} at t = {t}", e.nu.total()))?;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!("{n} points, worst deviation {worst:.1e}, {:.0} ms", elapsed * 1e3))
}

fn golden_ramp() -> Check {
    let x = build_example(ExampleId::RampIdentityLabel, None).map_err(err)?.lagrangian;
    let xh = build_example(ExampleId::RampNormalizedLabel, None).map_err(err)?.lagrangian;
    let (ta, tb) = (solve_lagrangian(&x, 1.99).map_err(err)?, solve_lagrangian(&xh, 1.99).map_err(err)?);
    let mut worst: f64 = 0.0;
    for t in [0.0, 0.5, 1.0, 1.5, 1.9, 1.99] {
        let ua = to_eulerian(&ta.state_at(t).map_err(err)?).map_err(err)?.u;
        let ub = to_eulerian(&tb.state_at(t).map_err(err)?).map_err(err)?.u;
        for k in 0..1000 {
            let p = -2.0 + 6.0 * k as f64 / 999.0;
            worst = worst.max((ua.eval(p) - ub.eval(p)).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("u differs by {worst:e}"))?;
    let j = j_upper(&x, &xh, &[ramp_relabelling(), ramp_relabelling().inverse()]).map_err(err)?;
    ensure(j == 0.0, || format!("J with the ramp relabelling is {j}"))?;
    let br = df_bracket(&x, &xh, &[ramp_relabelling()]).map_err(err)?;
    ensure(br.lower == 0.0 && br.upper == 0.0, || format!("d_F bracket [{}, {}]", br.lower, br.upper))?;
    let d0 = metric_d(&x, &xh).map_err(err)?;
    ensure(d0 > 0.0, || "d(0) vanishes".into())?;
    Ok(format!("u sup-diff {worst:.1e}, J = 0 with the ramp relabelling, d_F ∈ [0, 0], d(0) = {d0:.6}"))
}

fn golden_concentration() -> Check {
    // α = 1: a unit atom of ν rides on top of μ.
    let full = build_example(ExampleId::RampWithConcentration, Some(1.0)).map_err(err)?;
    let traj = solve_lagrangian(&full.lagrangian, 1.9).map_err(err)?;
    for t in [0.5, 1.0, 1.5, 1.9] {
        let e = to_eulerian(&traj.state_at(t).map_err(err)?).map_err(err)?;
        let excess: Vec<(f64, f64)> =
            e.nu.atoms().iter().map(|&(p, m)| (p, m - e.mu.atom_at(p))).filter(|a| a.1 > 1e-12).collect();
        ensure(excess.len() == 1, || format!("excess atoms {excess:?} at t = {t}"))?;
        let (p, m) = excess[0];
        ensure((p - (2.0 + t * t / 8.0)).abs() <= 1e-12 && (m - 1.0).abs() <= 1e-12, || {
            format!("excess atom ({p}, {m}) at t = {t}")
        })?;
        let nu_ac = e.nu.ac_cumulative();
        let mu_ac = e.mu.ac_cumulative();
        let gap = sup_distance(nu_ac, mu_ac).map_err(err)?;
        ensure(gap <= 1e-12, || format!("ν_ac − μ_ac = {gap:e} at t = {t}"))?;
    }

    // α = 1/2: the atom spreads into a fan.
    let a = 0.5;
    let half = build_example(ExampleId::RampWithConcentration, Some(a)).map_err(err)?;
    let traj = solve_lagrangian(&half.lagrangian, 1.9).map_err(err)?;
    let mut worst: f64 = 0.0;
    for t in [0.5, 1.0, 1.9] {
        let e = to_eulerian(&traj.state_at(t).map_err(err)?).map_err(err)?;
        let (lo, hi) = (2.0 + a * t * t / 8.0, 2.0 + (2.0 - a) * t * t / 8.0);
        let want = 4.0 * a / ((1.0 - a) * t * t);
        let (nd, md) = (e.nu.density(), e.mu.density());
        for k in 1..=40 {
            let p = lo + (hi - lo) * k as f64 / 40.0;
            let p = if k == 40 { hi - 1e-9 } else { p };
            worst = worst.max(((nd.eval(p) - md.eval(p)) - want).abs() / want);
        }
    }
    ensure(worst <= 1e-12, || format!("fan density deviation {worst:e}"))?;

    let ramp = build_example(ExampleId::RampNormalizedLabel, None).map_err(err)?;
    let (ya, yb) = (ReducedState::of(&ramp.eulerian), ReducedState::of(&full.eulerian));
    let dm = dm_bracket(&ya, &yb, 1.0, None, &[]).map_err(err)?;
    ensure(dm.lower == 0.0 && dm.upper == 0.0, || format!("d_M bracket [{}, {}]", dm.lower, dm.upper))?;
    let dd = dd_bracket(&ramp.eulerian, &full.eulerian, &[]).map_err(err)?;
    ensure(dd.lower > 0.0, || format!("d_D lower bound {}", dd.lower))?;
    Ok(format!("atom exact, fan deviation {worst:.1e}, d_M ∈ [0, 0], d_D ≥ {:.4}", dd.lower))
}

fn trajectories(seed: u64, horizon: f64) -> Result<(Trajectory, Trajectory), String> {
    let (a, b) = random_pair(seed);
    Ok((solve_lagrangian(&a, horizon).map_err(err)?, solve_lagrangian(&b, horizon).map_err(err)?))
}

fn lipschitz_in_time() -> Check {
    let start = Instant::now();
    let mut max_pieces = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..PAIRS {
        let (ta, tb) = trajectories(seed, 5.0)?;
        max_pieces = max_pieces.max(ta.grid().len().max(tb.grid().len()) + 1);
        let (pa, pb) = (tau_profile(ta.initial()), tau_profile(tb.initial()));
        let d0 = metric_d(ta.initial(), tb.initial()).map_err(err)?;
        for t in CHECK_TIMES {
            let d = metric_d_at(&ta.state_at(t).map_err(err)?, &tb.state_at(t).map_err(err)?, &pa, &pb, t).map_err(err)?;
            let bound = t.exp() * d0;
            if bound > 0.0 {
                worst = worst.max(d / bound);
            }
            ensure(d <= bound + 1e-9, || format!("seed {seed}, t = {t}: d = {d}, d(0) = {d0}"))?;
        }
    }
    ensure(max_pieces <= 20, || format!("{max_pieces} pieces"))?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 30.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!("{PAIRS} pairs, ≤ {max_pieces} pieces, max d(t) / (e^t d(0)) = {worst:.4}, {:.0} ms", elapsed * 1e3))
}

fn g_monotone() -> Check {
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..PAIRS {
        let (ta, tb) = trajectories(seed, 5.0)?;
        let events: Vec<f64> = ta.events().iter().chain(tb.events()).map(|e| e.time).collect();
        let times = straddling_times(&events, 5.0, 1e-7);
        let (pa, pb) = (tau_profile(ta.initial()), tau_profile(tb.initial()));
        let mut prev: Option<(f64, f64)> = None;
        for &t in &times {
            let (xa, xb) = (ta.state_at(t).map_err(err)?, tb.state_at(t).map_err(err)?);
            let g = constant_norms(&g_function_at(&xa, &xb, &pa, &pb, t));
            if let Some((l1, l2)) = prev {
                let drop = (l1 - g.l1).min(l2 - g.l2);
                worst = worst.min(drop);
                ensure(drop >= -1e-12, || format!("seed {seed}: ‖G‖ rises by {:e} at t = {t}", -drop))?;
                checked += 1;
            }
            prev = Some((g.l1, g.l2));
        }
    }
    Ok(format!("{checked} consecutive comparisons, smallest drop {worst:.1e}"))
}

fn oracle_equivalence() -> Check {
    let times: Vec<f64> = (1..=12).map(|k| k as f64 * 0.25).collect();
    let mut states = vec![build_example(ExampleId::TwoRamps, None).map_err(err)?.lagrangian];
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for i in 0..20 {
        states.push(random_lagrangian(&mut rng, ALPHAS[i % 4]));
    }
    let mut worst: f64 = 0.0;
    for (i, x0) in states.iter().enumerate() {
        let traj = solve_lagrangian(x0, 3.0).map_err(err)?;
        let approx = reference_integrate_many(x0, &times, 1e-4).map_err(err)?;
        for (&t, r) in times.iter().zip(&approx) {
            let e = traj.state_at(t).map_err(err)?;
            let grid = union_breakpoints(&[&e.grid(), &r.grid()]);
            for &xi in &grid {
                let (p, q) = (e.eval(xi), r.eval(xi));
                for c in 0..4 {
                    worst = worst.max((p[c] - q[c]).abs());
                }
            }
            ensure(worst <= 1e-6, || format!("state {i}, t = {t}: deviation {worst:e}"))?;
        }
    }
    Ok(format!("{} states, worst deviation {worst:.1e}", states.len()))
}

fn round_trips() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let mut worst_ml: f64 = 0.0;
    for i in 0..50 {
        let y = random_eulerian(&mut rng, ALPHAS[i % 4]);
        let back = to_eulerian(&to_lagrangian(&y).map_err(err)?).map_err(err)?;
        let mut dev = sup_distance(&y.u, &back.u).map_err(err)?;
        dev = dev.max(sup_distance(y.mu.ac_cumulative(), back.mu.ac_cumulative()).map_err(err)?);
        dev = dev.max(sup_distance(y.nu.ac_cumulative(), back.nu.ac_cumulative()).map_err(err)?);
        for (m, n) in [(&y.mu, &back.mu), (&y.nu, &back.nu)] {
            ensure(m.atoms().len() == n.atoms().len(), || format!("state {i}: atoms {:?} vs {:?}", m.atoms(), n.atoms()))?;
            for (a, b) in m.atoms().iter().zip(n.atoms()) {
                dev = dev.max((a.0 - b.0).abs()).max((a.1 - b.1).abs());
            }
        }
        worst_ml = worst_ml.max(dev);
        ensure(dev <= 1e-12, || format!("M∘L: state {i} deviates by {dev:e}"))?;
    }

    let mut worst_lm: f64 = 0.0;
    for i in 0..50 {
        let x = if i % 2 == 0 {
            random_lagrangian(&mut rng, ALPHAS[i % 4])
        } else {
            random_evolved(&mut rng, ALPHAS[i % 4], 3.0)
        };
        let lm = to_lagrangian(&to_eulerian(&x).map_err(err)?).map_err(err)?;
        let dev = state_norm(&lm, &pi_normalize(&x).map_err(err)?);
        worst_lm = worst_lm.max(dev);
        ensure(dev <= 1e-10, || format!("L∘M: state {i} deviates by {dev:e}"))?;
    }

    let x = random_lagrangian(&mut rng, 0.5);
    let base = to_eulerian(&x).map_err(err)?;
    for j in 0..20 {
        let moved = to_eulerian(&relabel(&x, &random_relabelling(&mut rng))).map_err(err)?;
        let dev = sup_distance(&base.u, &moved.u)
            .map_err(err)?
            .max(sup_distance(base.mu.ac_cumulative(), moved.mu.ac_cumulative()).map_err(err)?)
            .max(sup_distance(base.nu.ac_cumulative(), moved.nu.ac_cumulative()).map_err(err)?)
            .max((base.mu.total() - moved.mu.total()).abs())
            .max((base.nu.total() - moved.nu.total()).abs());
        ensure(dev <= 1e-10, || format!("relabelling {j} changes M by {dev:e}"))?;
    }
    Ok(format!("M∘L {worst_ml:.1e}, L∘M vs Π {worst_lm:.1e}, 20 relabellings invariant"))
}

fn energy_balance() -> Check {
    let mut events = 0;
    let mut worst: f64 = 0.0;
    let mut check = |x0: &LagrangianState, label: &str| -> Result<(), String> {
        let traj = solve_lagrangian(x0, 5.0).map_err(err)?;
        let nu0 = to_eulerian(x0).map_err(err)?.nu.total();
        for t in [1.0, 2.5, 5.0] {
            let nu = to_eulerian(&traj.state_at(t).map_err(err)?).map_err(err)?.nu.total();
            ensure((nu - nu0).abs() <= 1e-12, || format!("{label}: ν(ℝ) moves from {nu0} to {nu} at t = {t}"))?;
        }
        for ev in traj.events() {
            let before = traj.state_before(ev.time).map_err(err)?;
            let after = traj.state_at(ev.time).map_err(err)?;
            let drop = to_eulerian(&before).map_err(err)?.mu.total() - to_eulerian(&after).map_err(err)?.mu.total();
            let held: f64 = ev.segments.iter().map(|&(a, b)| before.v.eval(b) - before.v.eval(a)).sum();
            let want = x0.alpha * held;
            let dev = (drop - want).abs().max((ev.dissipated_energy - want).abs());
            worst = worst.max(dev);
            ensure(dev <= 1e-12, || format!("{label}: event at {} drops {drop}, expected {want}", ev.time))?;
            events += 1;
        }
        Ok(())
    };
    check(&build_example(ExampleId::TwoRamps, None).map_err(err)?.lagrangian, "two ramps")?;
    for seed in 0..PAIRS {
        let (a, b) = random_pair(seed);
        check(&a, &format!("seed {seed} A"))?;
        check(&b, &format!("seed {seed} B"))?;
    }
    Ok(format!("{events} events, worst imbalance {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("golden reproduction of the two-ramp example", golden_two_ramps),
        ("golden reproduction of the single-ramp labellings", golden_ramp),
        ("golden reproduction of the concentrated-energy ramp", golden_concentration),
        ("d(t) ≤ e^t d(0) on random pairs", lipschitz_in_time),
        ("‖G‖₁, ‖G‖₂ non-increasing across events", g_monotone),
        ("exact solver matches RK4 reference", oracle_equivalence),
        ("transform round trips", round_trips),
        ("energy conservation and dissipation balance", energy_balance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
