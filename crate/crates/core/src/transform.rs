//! The maps between Eulerian and Lagrangian coordinates.

use crate::coordinates::{validation_snap_ratio, EulerianState, LagrangianState};
use crate::error::{Error, Result};
use crate::pwl::{generalized_inverse, pushforward, union_breakpoints, PwConstant, PwLinear, FUSE_TOL};

/// `L`: Eulerian data to its normalized Lagrangian representative.
pub fn to_lagrangian(e: &EulerianState) -> Result<LagrangianState> {
    let base = PwLinear::identity().add(e.nu.ac_cumulative());
    let y = generalized_inverse(&base, e.nu.atoms())?;
    let u = e.u.compose(&y)?;
    let h = PwLinear::identity().sub(&y);

    // Images of μ-breakpoints in label space.
    let mu_labels: Vec<f64> = e.mu.breakpoints().iter().map(|&x| x + e.nu.cumulative(x)).collect();
    let grid = union_breakpoints(&[y.breakpoints(), u.breakpoints(), &mu_labels]);
    let mu_d = e.mu.density();
    let nu_d = e.nu.density();

    let mut vs = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    vs.push(0.0);
    for i in 1..grid.len() {
        let (a, b) = (grid[i - 1], grid[i]);
        let (ya, yb) = (y.eval(a), y.eval(b));
        let hx = 1.0 - (yb - ya) / (b - a);
        let r = if yb - ya <= FUSE_TOL {
            let n = e.nu.atom_at(ya);
            if n <= 0.0 {
                return Err(Error::InconsistentData(format!("flat label interval at x = {ya} without a ν atom")));
            }
            snap(e.mu.atom_at(ya), n, e.alpha, ya)?
        } else {
            let x = y.eval(0.5 * (a + b));
            let nd = nu_d.eval(x);
            if nd <= 0.0 {
                0.0
            } else {
                snap(mu_d.eval(x), nd, e.alpha, x)?
            }
        };
        acc += r * hx * (b - a);
        vs.push(acc);
    }
    let v = PwLinear::new(grid, vs)?.simplified();
    LagrangianState::new(y, u, h, v, e.alpha)
}

/// `dμ/dν` for masses or densities `m ≤ n`, snapped to `1` or `1 − α`.
/// Compared in absolute terms so that rounding-level `n` reads as a ratio of 1.
fn snap(m: f64, n: f64, alpha: f64, x: f64) -> Result<f64> {
    let tol = 1e-9 * n + 1e-12;
    if (m - n).abs() <= tol {
        return Ok(1.0);
    }
    validation_snap_ratio(m / n, alpha)
        .filter(|_| (m - (1.0 - alpha) * n).abs() <= tol)
        .ok_or_else(|| Error::InconsistentData(format!("dμ/dν = {} at x = {x} is neither 1 nor 1 - α", m / n)))
}

/// `M`: Lagrangian data to Eulerian data.
pub fn to_eulerian(x: &LagrangianState) -> Result<EulerianState> {
    let grid = x.grid();
    let mut xs: Vec<f64> = Vec::with_capacity(grid.len());
    let mut us: Vec<f64> = Vec::with_capacity(grid.len());
    for &xi in &grid {
        let (p, q) = (x.y.eval(xi), x.u.eval(xi));
        if let Some(&last) = xs.last() {
            if p - last <= FUSE_TOL {
                let prev = *us.last().unwrap();
                if (q - prev).abs() > 1e-10 {
                    return Err(Error::InvariantViolation(format!(
                        "U varies from {prev} to {q} where y is flat at {p}"
                    )));
                }
                continue;
            }
        }
        xs.push(p);
        us.push(q);
    }
    let u = PwLinear::new(xs, us)?.simplified();
    let v_d = density(&x.v);
    let h_d = density(&x.h);
    let mu = pushforward(&v_d, &x.y)?;
    let nu = pushforward(&h_d, &x.y)?;
    EulerianState::new(u, mu, nu, x.alpha)
}

/// Derivative with negative rounding noise clipped to zero.
fn density(f: &PwLinear) -> PwConstant {
    f.derivative().map(|v| if v < 0.0 && v > -1e-12 { 0.0 } else { v })
}
