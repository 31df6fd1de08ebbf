//! Eulerian and Lagrangian states, membership checks, breaking times and
//! the relabelling group.

mod group;
mod validation;

pub use group::{pi_normalize, relabel, Relabelling};
pub(crate) use validation::snap_ratio as validation_snap_ratio;
pub use validation::{validate_eulerian, validate_lagrangian, Clause, ValidationReport, Violation};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pwl::{union_breakpoints, CumulativeMeasure, PwConstant, PwLinear};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} is outside [0, 1]")));
    }
    Ok(())
}

/// Eulerian data `(u, μ, ν)` with dissipation parameter `α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerianState {
    pub alpha: f64,
    pub u: PwLinear,
    pub mu: CumulativeMeasure,
    pub nu: CumulativeMeasure,
}

impl EulerianState {
    pub fn new(u: PwLinear, mu: CumulativeMeasure, nu: CumulativeMeasure, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(EulerianState { alpha, u, mu, nu })
    }

    pub fn zero(alpha: f64) -> Result<Self> {
        Self::new(PwLinear::constant(0.0), CumulativeMeasure::zero(), CumulativeMeasure::zero(), alpha)
    }

    /// Union of the breakpoints of `u`, `μ` and `ν`, atoms included.
    pub fn grid(&self) -> Vec<f64> {
        union_breakpoints(&[self.u.breakpoints(), &self.mu.breakpoints(), &self.nu.breakpoints()])
    }
}

/// Lagrangian data `(y, U, H, V)` over the label line with parameter `α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LagrangianState {
    pub alpha: f64,
    pub y: PwLinear,
    #[serde(rename = "U")]
    pub u: PwLinear,
    #[serde(rename = "H")]
    pub h: PwLinear,
    #[serde(rename = "V")]
    pub v: PwLinear,
}

/// Per-piece slopes of the four components on a common grid. Index 0 is the
/// left tail and index `grid.len()` the right tail.
#[derive(Clone, Debug, PartialEq)]
pub struct PieceSlopes {
    pub grid: Vec<f64>,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub h: Vec<f64>,
    pub v: Vec<f64>,
}

impl PieceSlopes {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// `V_ξ / H_ξ`, taken as 1 where `H_ξ = 0`.
    pub fn kappa(&self, i: usize) -> f64 {
        if self.h[i] > 0.0 {
            self.v[i] / self.h[i]
        } else {
            1.0
        }
    }

    pub fn tau(&self, i: usize) -> f64 {
        breaking_time(self.y[i], self.u[i])
    }
}

impl LagrangianState {
    pub fn new(y: PwLinear, u: PwLinear, h: PwLinear, v: PwLinear, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(LagrangianState { alpha, y, u, h, v })
    }

    /// `(id, 0, 0, 0)`.
    pub fn zero(alpha: f64) -> Result<Self> {
        let z = PwLinear::constant(0.0);
        Self::new(PwLinear::identity(), z.clone(), z.clone(), z, alpha)
    }

    pub fn grid(&self) -> Vec<f64> {
        union_breakpoints(&[
            self.y.breakpoints(),
            self.u.breakpoints(),
            self.h.breakpoints(),
            self.v.breakpoints(),
        ])
    }

    pub fn slopes(&self) -> PieceSlopes {
        self.slopes_on(self.grid())
    }

    /// Slopes on a grid refining this state's breakpoints.
    pub fn slopes_on(&self, grid: Vec<f64>) -> PieceSlopes {
        PieceSlopes {
            y: self.y.slopes_on(&grid),
            u: self.u.slopes_on(&grid),
            h: self.h.slopes_on(&grid),
            v: self.v.slopes_on(&grid),
            grid,
        }
    }

    /// `V(+∞)`, the total Lagrangian energy.
    pub fn v_infinity(&self) -> f64 {
        *self.v.values().last().unwrap()
    }

    /// `H(+∞)`.
    pub fn h_infinity(&self) -> f64 {
        *self.h.values().last().unwrap()
    }

    /// Evaluates all four components at `ξ`.
    pub fn eval(&self, xi: f64) -> [f64; 4] {
        [self.y.eval(xi), self.u.eval(xi), self.h.eval(xi), self.v.eval(xi)]
    }
}

/// Slopes below this in magnitude on both `y` and `U` mark a piece that has
/// already broken; their ratio is rounding noise.
pub const BROKEN_TOL: f64 = 1e-12;

/// Breaking time of a piece with slopes `y_ξ`, `U_ξ`: zero when both vanish,
/// `-2 y_ξ / U_ξ` when `U_ξ < 0`, infinite otherwise.
pub fn breaking_time(y_xi: f64, u_xi: f64) -> f64 {
    if y_xi.abs() <= BROKEN_TOL && u_xi.abs() <= BROKEN_TOL {
        0.0
    } else if u_xi < 0.0 {
        -2.0 * y_xi / u_xi
    } else {
        f64::INFINITY
    }
}

/// Breaking time per piece of the state's grid.
pub fn tau_profile(x: &LagrangianState) -> PwConstant {
    let s = x.slopes();
    let vals = (0..s.len()).map(|i| s.tau(i)).collect();
    PwConstant::from_grid(&s.grid, vals)
}
