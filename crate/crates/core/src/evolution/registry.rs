use super::{reference_integrate_many, solve_lagrangian};
use crate::coordinates::LagrangianState;
use crate::error::{Error, Result};

/// A method producing Lagrangian states at requested times.
pub trait LagrangianSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// States at each of the sorted, non-negative `times`.
    fn solve_at(&self, x0: &LagrangianState, times: &[f64]) -> Result<Vec<LagrangianState>>;
}

/// The event-driven closed-form solver.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactSolver;

impl LagrangianSolver for ExactSolver {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn solve_at(&self, x0: &LagrangianState, times: &[f64]) -> Result<Vec<LagrangianState>> {
        let horizon = times.iter().copied().fold(0.0, f64::max);
        let traj = solve_lagrangian(x0, horizon)?;
        times.iter().map(|&t| traj.state_at(t)).collect()
    }
}

/// Fixed-step Runge–Kutta time stepping.
#[derive(Clone, Copy, Debug)]
pub struct Rk4Solver {
    pub dt: f64,
}

impl Default for Rk4Solver {
    fn default() -> Self {
        Rk4Solver { dt: 1e-4 }
    }
}

impl LagrangianSolver for Rk4Solver {
    fn name(&self) -> &'static str {
        "rk4"
    }

    fn solve_at(&self, x0: &LagrangianState, times: &[f64]) -> Result<Vec<LagrangianState>> {
        reference_integrate_many(x0, times, self.dt)
    }
}

/// Solvers selectable by name.
pub struct SolverRegistry {
    solvers: Vec<Box<dyn LagrangianSolver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        SolverRegistry { solvers: vec![Box::new(ExactSolver), Box::new(Rk4Solver::default())] }
    }
}

impl SolverRegistry {
    pub fn register(&mut self, solver: Box<dyn LagrangianSolver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn get(&self, name: &str) -> Result<&dyn LagrangianSolver> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }
}
