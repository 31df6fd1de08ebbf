//! Fixed-step fourth-order Runge–Kutta integration of the Lagrangian system,
//! kept independent of the event-driven solver for cross-checks.

use crate::coordinates::LagrangianState;
use crate::error::{Error, Result};
use crate::pwl::PwLinear;

struct Stepper {
    grid: Vec<f64>,
    alpha: f64,
    /// Breaking time of each interior piece.
    tau: Vec<f64>,
    dropped: Vec<bool>,
    vslope: Vec<f64>,
    y: Vec<f64>,
    u: Vec<f64>,
    t: f64,
}

impl Stepper {
    fn new(x0: &LagrangianState) -> Self {
        let grid = x0.grid();
        let n = grid.len();
        let mut tau = Vec::with_capacity(n);
        let mut vslope = Vec::with_capacity(n);
        for k in 0..n.saturating_sub(1) {
            let (a, b) = (grid[k], grid[k + 1]);
            let len = b - a;
            let yx = (x0.y.eval(b) - x0.y.eval(a)) / len;
            let ux = (x0.u.eval(b) - x0.u.eval(a)) / len;
            // Slopes at rounding level mark a piece that has already collapsed.
            let collapsed = yx.abs() <= 1e-12 && ux.abs() <= 1e-12;
            tau.push(if collapsed {
                0.0
            } else if ux < 0.0 {
                -2.0 * yx / ux
            } else {
                f64::INFINITY
            });
            vslope.push((x0.v.eval(b) - x0.v.eval(a)) / len);
        }
        Stepper {
            alpha: x0.alpha,
            dropped: vec![false; tau.len()],
            tau,
            vslope,
            y: grid.iter().map(|&g| x0.y.eval(g)).collect(),
            u: grid.iter().map(|&g| x0.u.eval(g)).collect(),
            grid,
            t: 0.0,
        }
    }

    /// `V` at every node and `V_∞`.
    fn energy(&self) -> (Vec<f64>, f64) {
        let mut v = vec![0.0; self.grid.len()];
        for k in 1..self.grid.len() {
            v[k] = v[k - 1] + self.vslope[k - 1] * (self.grid[k] - self.grid[k - 1]);
        }
        let inf = v.last().copied().unwrap_or(0.0);
        (v, inf)
    }

    fn apply_drops(&mut self) {
        for k in 0..self.tau.len() {
            if !self.dropped[k] && self.tau[k] > 0.0 && self.tau[k] <= self.t {
                self.vslope[k] *= 1.0 - self.alpha;
                self.dropped[k] = true;
            }
        }
    }

    /// One RK4 step of length `h` with the energy held fixed over the step.
    fn rk4(&mut self, h: f64) {
        let (v, inf) = self.energy();
        let acc: Vec<f64> = v.iter().map(|vj| 0.5 * vj - 0.25 * inf).collect();
        for j in 0..self.y.len() {
            let f = |_y: f64, u: f64| (u, acc[j]);
            let (y0, u0) = (self.y[j], self.u[j]);
            let k1 = f(y0, u0);
            let k2 = f(y0 + 0.5 * h * k1.0, u0 + 0.5 * h * k1.1);
            let k3 = f(y0 + 0.5 * h * k2.0, u0 + 0.5 * h * k2.1);
            let k4 = f(y0 + h * k3.0, u0 + h * k3.1);
            self.y[j] = y0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            self.u[j] = u0 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        self.t += h;
    }

    /// Advances to `t`, splitting steps at breaking times.
    fn advance_to(&mut self, t: f64, dt: f64) {
        self.apply_drops();
        while self.t < t {
            let next_tau = self
                .tau
                .iter()
                .zip(&self.dropped)
                .filter(|(&tk, &d)| !d && tk > self.t)
                .map(|(&tk, _)| tk)
                .fold(f64::INFINITY, f64::min);
            let h = dt.min(t - self.t).min(next_tau - self.t);
            self.rk4(h);
            if next_tau.is_finite() && (self.t - next_tau).abs() <= 1e-15 * (1.0 + next_tau) {
                self.t = next_tau;
            }
            self.apply_drops();
        }
    }

    fn state(&self, x0: &LagrangianState) -> LagrangianState {
        let (v, _) = self.energy();
        let g = self.grid.clone();
        LagrangianState {
            alpha: self.alpha,
            y: PwLinear::with_tails(g.clone(), self.y.clone(), 1.0, 1.0).expect("finite nodes"),
            u: PwLinear::new(g.clone(), self.u.clone()).expect("finite nodes"),
            h: x0.h.clone(),
            v: PwLinear::new(g, v).expect("finite nodes"),
        }
    }
}

/// Integrates from `x0` to time `t` with steps of at most `dt`.
pub fn reference_integrate(x0: &LagrangianState, t: f64, dt: f64) -> Result<LagrangianState> {
    Ok(reference_integrate_many(x0, &[t], dt)?.pop().unwrap())
}

/// States at each of the sorted `times`, from a single integration pass.
pub fn reference_integrate_many(x0: &LagrangianState, times: &[f64], dt: f64) -> Result<Vec<LagrangianState>> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("step {dt} must be positive")));
    }
    if times.iter().any(|&t| !(t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("times must be sorted and non-negative".into()));
    }
    let mut st = Stepper::new(x0);
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if t == 0.0 {
            out.push(x0.clone());
            continue;
        }
        st.advance_to(t, dt);
        out.push(st.state(x0));
    }
    Ok(out)
}
