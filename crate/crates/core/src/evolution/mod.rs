//! Exact event-driven evolution of Lagrangian states.
//!
//! Between breaking events every label moves by `y_t = U`,
//! `U_t = V/2 − V_∞/4` with `V` frozen, so node values are polynomials in
//! time. At an event the energy density of the breaking pieces drops by the
//! factor `1 − α` and `V`, `V_∞` are rebuilt.

mod reference;
mod registry;

pub use reference::{reference_integrate, reference_integrate_many};
pub use registry::{ExactSolver, LagrangianSolver, Rk4Solver, SolverRegistry};

use crate::coordinates::{EulerianState, LagrangianState};
use crate::error::{Error, Result};
use crate::pwl::PwLinear;
use crate::transform::{to_eulerian, to_lagrangian};

/// Breaking times closer than this form one event.
pub const EVENT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct BreakingEvent {
    pub time: f64,
    /// Maximal label intervals that break at this time.
    pub segments: Vec<(f64, f64)>,
    /// `α` times the energy held by the segments just before the event.
    pub dissipated_energy: f64,
}

/// Node values at the start of a window. `V` is constant on the window.
#[derive(Clone, Debug)]
struct Window {
    start: f64,
    y: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    v_inf: f64,
}

impl Window {
    /// `(y, U)` at every node, time `t` inside the window.
    fn advance(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let s = t - self.start;
        let mut ys = Vec::with_capacity(self.y.len());
        let mut us = Vec::with_capacity(self.y.len());
        for j in 0..self.y.len() {
            let a = 0.5 * self.v[j] - 0.25 * self.v_inf;
            us.push(self.u[j] + a * s);
            ys.push(self.y[j] + self.u[j] * s + 0.5 * a * s * s);
        }
        (ys, us)
    }
}

/// Closed-form solution of the Lagrangian system from a given initial state.
#[derive(Clone, Debug)]
pub struct Trajectory {
    initial: LagrangianState,
    horizon: f64,
    grid: Vec<f64>,
    windows: Vec<Window>,
    events: Vec<BreakingEvent>,
}

fn cumulative(grid: &[f64], slopes: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..grid.len() {
        acc += slopes[i - 1] * (grid[i] - grid[i - 1]);
        out.push(acc);
    }
    out
}

/// Groups sorted breaking times into events; each group is represented by
/// its smallest member.
pub(crate) fn cluster_times(mut taus: Vec<f64>) -> Vec<f64> {
    taus.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<f64> = Vec::new();
    let mut anchor = f64::NEG_INFINITY;
    for t in taus {
        if t - anchor >= EVENT_TOL {
            out.push(t);
            anchor = t;
        }
    }
    out
}

/// Solves the Lagrangian system on `[0, horizon]`.
pub fn solve_lagrangian(x0: &LagrangianState, horizon: f64) -> Result<Trajectory> {
    if !(horizon >= 0.0) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} must be non-negative")));
    }
    let report = crate::coordinates::validate_lagrangian(x0, false);
    if !report.is_valid() {
        return Err(Error::InvalidState(report.to_string()));
    }
    let s = x0.slopes();
    let grid = s.grid.clone();
    let n = grid.len();
    // Interior piece k spans nodes k and k + 1 and has slope index k + 1.
    let taus: Vec<f64> = (0..n.saturating_sub(1)).map(|k| s.tau(k + 1)).collect();
    let mut vslopes: Vec<f64> = (0..n.saturating_sub(1)).map(|k| s.v[k + 1]).collect();

    let vs = cumulative(&grid, &vslopes);
    let first = Window {
        start: 0.0,
        y: x0.y.values_on(&grid),
        u: x0.u.values_on(&grid),
        v_inf: *vs.last().unwrap(),
        v: vs,
    };
    let mut windows = vec![first];
    let mut events = Vec::new();

    let times = cluster_times(taus.iter().copied().filter(|&t| t > 0.0 && t.is_finite()).collect());
    for te in times.into_iter().filter(|&t| t <= horizon + EVENT_TOL) {
        let prev = windows.last().unwrap();
        let (mut ys, mut us) = prev.advance(te);
        let broken: Vec<bool> = taus.iter().map(|&t| t >= te && t - te < EVENT_TOL).collect();
        let mut segments = Vec::new();
        let mut dissipated = 0.0;
        let mut k = 0;
        while k < broken.len() {
            if !broken[k] {
                k += 1;
                continue;
            }
            let start = k;
            while k < broken.len() && broken[k] {
                dissipated += x0.alpha * vslopes[k] * (grid[k + 1] - grid[k]);
                vslopes[k] *= 1.0 - x0.alpha;
                k += 1;
            }
            // Broken pieces have y_ξ = U_ξ = 0.
            for j in start + 1..=k {
                ys[j] = ys[start];
                us[j] = us[start];
            }
            segments.push((grid[start], grid[k]));
        }
        let vs = cumulative(&grid, &vslopes);
        windows.push(Window { start: te, y: ys, u: us, v_inf: *vs.last().unwrap(), v: vs });
        events.push(BreakingEvent { time: te, segments, dissipated_energy: dissipated });
    }
    Ok(Trajectory { initial: x0.clone(), horizon, grid, windows, events })
}

impl Trajectory {
    pub fn initial(&self) -> &LagrangianState {
        &self.initial
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn events(&self) -> &[BreakingEvent] {
        &self.events
    }

    /// Label grid on which node values are tracked.
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0) || t > self.horizon + 1e-12 {
            return Err(Error::TimeOutOfRange { t, horizon: self.horizon });
        }
        Ok(())
    }

    fn build(&self, w: &Window, t: f64) -> LagrangianState {
        let (ys, us) = w.advance(t);
        let g = self.grid.clone();
        let y = PwLinear::with_tails(g.clone(), ys, 1.0, 1.0).expect("finite nodes").simplified();
        let u = PwLinear::new(g.clone(), us).expect("finite nodes").simplified();
        let v = PwLinear::new(g, w.v.clone()).expect("finite nodes").simplified();
        LagrangianState { alpha: self.initial.alpha, y, u, h: self.initial.h.clone(), v }
    }

    /// The state at time `t`; at an event time this is the post-event state.
    pub fn state_at(&self, t: f64) -> Result<LagrangianState> {
        self.check_time(t)?;
        if t == 0.0 {
            return Ok(self.initial.clone());
        }
        let w = self.windows.iter().rev().find(|w| w.start <= t).unwrap();
        Ok(self.build(w, t))
    }

    /// The left limit at time `t > 0`: identical to [`Self::state_at`] except at
    /// event times, where it is the state just before the energy drop.
    pub fn state_before(&self, t: f64) -> Result<LagrangianState> {
        self.check_time(t)?;
        if t == 0.0 {
            return Ok(self.initial.clone());
        }
        let w = self.windows.iter().rev().find(|w| w.start < t).unwrap();
        Ok(self.build(w, t))
    }

    /// `V_∞` in effect at time `t`.
    pub fn v_infinity_at(&self, t: f64) -> f64 {
        self.windows.iter().rev().find(|w| w.start <= t).map_or(self.windows[0].v_inf, |w| w.v_inf)
    }

    /// Number of events with time `≤ t`.
    pub fn events_until(&self, t: f64) -> usize {
        self.events.iter().take_while(|e| e.time <= t).count()
    }
}

/// `M ∘ S_t ∘ L`.
pub fn solve_eulerian(y0: &EulerianState, t: f64) -> Result<EulerianState> {
    if !(t >= 0.0) {
        return Err(Error::TimeOutOfRange { t, horizon: f64::INFINITY });
    }
    let x0 = to_lagrangian(y0)?;
    let traj = solve_lagrangian(&x0, t)?;
    to_eulerian(&traj.state_at(t)?)
}
