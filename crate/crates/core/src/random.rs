//! Seeded generators of valid states for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coordinates::{relabel, EulerianState, LagrangianState, Relabelling};
use crate::evolution::solve_lagrangian;
use crate::pwl::{CumulativeMeasure, PwConstant, PwLinear};
use crate::transform::to_lagrangian;

pub const ALPHAS: [f64; 4] = [0.0, 1.0 / 3.0, 0.5, 1.0];

pub fn random_alpha<R: Rng>(rng: &mut R) -> f64 {
    *ALPHAS.choose(rng).unwrap()
}

/// Sorted points in `[lo, hi]` at least `gap` apart.
fn spread_points<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    loop {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        xs.sort_by(|a, b| a.total_cmp(b));
        if xs.windows(2).all(|w| w[1] - w[0] >= gap) {
            return xs;
        }
    }
}

/// Eulerian data with 2 to 6 breakpoints of `u` in `[-3, 3]`, values in
/// `[-1, 1]`, up to two atoms, and `ν` drawn among the admissible choices.
pub fn random_eulerian<R: Rng>(rng: &mut R, alpha: f64) -> EulerianState {
    let n = rng.gen_range(2..=6);
    let xs = spread_points(rng, n, -3.0, 3.0, 0.05);
    let us: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let u = PwLinear::new(xs.clone(), us).expect("sorted finite nodes");

    let slopes = u.piece_slopes();
    let mut mu_vals = vec![0.0];
    let mut nu_vals = vec![0.0];
    for &s in &slopes {
        let m = s * s;
        mu_vals.push(m);
        let boost = alpha < 1.0 && s > 0.0 && rng.gen_bool(0.5);
        nu_vals.push(if boost { m / (1.0 - alpha) } else { m });
    }
    mu_vals.push(0.0);
    nu_vals.push(0.0);

    let mut mu_atoms = Vec::new();
    let mut nu_atoms = Vec::new();
    let k = rng.gen_range(0..=2);
    for x in spread_points(rng, k, -3.0, 3.0, 0.05) {
        let m = rng.gen_range(0.1..=1.0);
        if alpha == 1.0 {
            nu_atoms.push((x, m));
        } else if u.slope_at(x) > 0.0 && rng.gen_bool(0.5) {
            mu_atoms.push((x, m));
            nu_atoms.push((x, m / (1.0 - alpha)));
        } else {
            mu_atoms.push((x, m));
            nu_atoms.push((x, m));
        }
    }
    let density = |vals: Vec<f64>| PwConstant::new(xs.clone(), vals).expect("one value per piece");
    let mu = CumulativeMeasure::from_density(&density(mu_vals), mu_atoms).expect("non-negative density");
    let nu = CumulativeMeasure::from_density(&density(nu_vals), nu_atoms).expect("non-negative density");
    EulerianState::new(u, mu, nu, alpha).expect("alpha in range")
}

/// A relabelling with 1 to 4 breakpoints in `[-4, 4]` and slopes in `[0.3, 3]`.
pub fn random_relabelling<R: Rng>(rng: &mut R) -> Relabelling {
    let n = rng.gen_range(1..=4);
    let xs = spread_points(rng, n, -4.0, 4.0, 0.05);
    let mut ys = vec![rng.gen_range(-0.5..=0.5) + xs[0]];
    for w in xs.windows(2) {
        let s = rng.gen_range(0.3..=3.0);
        ys.push(ys.last().unwrap() + s * (w[1] - w[0]));
    }
    Relabelling::new(PwLinear::with_tails(xs, ys, 1.0, 1.0).expect("sorted finite nodes")).expect("increasing")
}

/// `L(Y) • f` for random `Y` and `f`: a valid, generally unnormalized state.
pub fn random_lagrangian<R: Rng>(rng: &mut R, alpha: f64) -> LagrangianState {
    let x = to_lagrangian(&random_eulerian(rng, alpha)).expect("generated data is consistent");
    relabel(&x, &random_relabelling(rng))
}

/// A random state evolved for a random time in `[0, t_max]`.
pub fn random_evolved<R: Rng>(rng: &mut R, alpha: f64, t_max: f64) -> LagrangianState {
    let x = random_lagrangian(rng, alpha);
    let t = rng.gen_range(0.0..=t_max);
    solve_lagrangian(&x, t).and_then(|tr| tr.state_at(t)).expect("generated state is valid")
}
