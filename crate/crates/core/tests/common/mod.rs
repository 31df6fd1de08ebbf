#![allow(dead_code)]

use alpha_hs::coordinates::{EulerianState, LagrangianState};
use alpha_hs::evolution::solve_lagrangian;
use alpha_hs::reference_cases::{Field, WorkedExample};
use alpha_hs::transform::to_eulerian;

pub const GOLDEN_TIMES: [f64; 7] = [0.0, 0.5, 1.0, 1.9, 2.0, 2.5, 3.0];

/// 50 interior sample points of `(lo, hi]`; infinite ends are cut to a span of 4.
pub fn branch_samples(lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => (lo, hi),
        (true, false) => (lo, lo + 4.0),
        (false, true) => (hi - 4.0, hi),
        (false, false) => (-2.0, 2.0),
    };
    if b <= a {
        return vec![];
    }
    (0..50).map(|k| a + (k as f64 + 0.5) / 50.0 * (b - a)).collect()
}

/// Simulated value of a tabulated field.
pub fn simulated(x: &LagrangianState, e: &EulerianState, field: Field, point: f64) -> f64 {
    match field {
        Field::Y => x.y.eval(point),
        Field::U => x.u.eval(point),
        Field::H => x.h.eval(point),
        Field::V => x.v.eval(point),
        Field::SmallU => e.u.eval(point),
        Field::MuCumulative => e.mu.cumulative(point),
        Field::NuCumulative => e.nu.cumulative(point),
        Field::MuTotal => e.mu.total(),
        Field::NuTotal => e.nu.total(),
        Field::MuDensity => e.mu.density().eval(point),
        Field::FanDensity => e.nu.density().eval(point) - e.mu.density().eval(point),
        Field::NuExcessAtom => {
            let excess: Vec<(f64, f64)> = e
                .nu
                .atoms()
                .iter()
                .map(|&(p, m)| (p, m - e.mu.atom_at(p)))
                .filter(|a| a.1 > 1e-12)
                .collect();
            assert_eq!(excess.len(), 1, "expected a single excess atom, got {excess:?}");
            assert!((excess[0].1 - 1.0).abs() < 1e-12, "excess atom mass {}", excess[0].1);
            excess[0].0
        }
    }
}

/// Largest relative deviation between simulation and every tabulated
/// branch covering one of `times`, with the number of points compared.
pub fn golden_deviation(ex: &WorkedExample, times: &[f64]) -> (f64, usize) {
    let horizon = times.iter().copied().fold(0.0, f64::max);
    let traj = solve_lagrangian(&ex.lagrangian, horizon).expect("example data is valid");
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &t in times {
        let x = traj.state_at(t).unwrap();
        let e = to_eulerian(&x).unwrap();
        for field in ex.fields() {
            for br in ex.branches(field) {
                if !br.times.contains(t) {
                    continue;
                }
                let (lo, hi) = br.domain(t, ex.alpha);
                for p in branch_samples(lo, hi) {
                    let want = br.eval(p, t, ex.alpha);
                    let got = simulated(&x, &e, field, p);
                    let dev = (got - want).abs() / (1.0 + want.abs());
                    if dev > worst {
                        worst = dev;
                    }
                    if dev > 1e-12 {
                        eprintln!("{} {field:?} t={t} p={p}: got {got}, want {want}", ex.id);
                    }
                    count += 1;
                }
            }
        }
    }
    (worst, count)
}

/// The seeded corpus of state pairs shared by the property suites. `α`
/// cycles through all tested values; pairs are independent, two labellings
/// of one Eulerian state, or a state and a slightly amplified copy.
pub fn random_pair(seed: u64) -> (LagrangianState, LagrangianState) {
    use alpha_hs::coordinates::relabel;
    use alpha_hs::random::{random_eulerian, random_lagrangian, random_relabelling, ALPHAS};
    use alpha_hs::transform::to_lagrangian;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let alpha = ALPHAS[(seed % ALPHAS.len() as u64) as usize];
    match seed % 3 {
        0 => (random_lagrangian(&mut rng, alpha), random_lagrangian(&mut rng, alpha)),
        1 => {
            let x = to_lagrangian(&random_eulerian(&mut rng, alpha)).unwrap();
            (relabel(&x, &random_relabelling(&mut rng)), relabel(&x, &random_relabelling(&mut rng)))
        }
        _ => {
            let y = random_eulerian(&mut rng, alpha);
            let c = 1.0 + rng.gen_range(0.001..0.05);
            let z = EulerianState::new(y.u.scale(c), y.mu.scaled(c * c).unwrap(), y.nu.scaled(c * c).unwrap(), alpha).unwrap();
            let f = random_relabelling(&mut rng);
            (relabel(&to_lagrangian(&y).unwrap(), &f), relabel(&to_lagrangian(&z).unwrap(), &f))
        }
    }
}

/// Times just before and after every event of either trajectory, plus the
/// ends of `[0, horizon]`, sorted.
pub fn straddling_times(events: &[f64], horizon: f64, eps: f64) -> Vec<f64> {
    let mut ts = vec![0.0, horizon];
    for &te in events {
        ts.push((te - eps).max(0.0));
        ts.push((te + eps).min(horizon));
    }
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup();
    ts
}
