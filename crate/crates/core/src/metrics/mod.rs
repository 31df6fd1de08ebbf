//! The Lipschitz metric on Lagrangian states and brackets for the quotient
//! distances built on top of it.
//!
//! All quantities are evaluated in closed form on the union of both states'
//! breakpoints. The `_at` variants take breaking-time profiles measured from
//! time zero together with the current time. The plain variants read the
//! breaking times from the states themselves: a piece with `U_ξ < 0` breaks
//! after the further delay `-2 y_ξ / U_ξ`, so "`t < τ₁ = τ₂ < ∞`" becomes
//! "`0 < τ₁ = τ₂ < ∞`" for the remaining delays.

mod bracket;
mod sets;

pub use bracket::{dd_bracket, df_bracket, dm_bracket, j_upper, MetricBracket, ReducedState};
pub use sets::IntervalSet;

use serde::Serialize;

use crate::coordinates::{breaking_time, tau_profile, LagrangianState, PieceSlopes};
use crate::error::{Error, Result};
use crate::pwl::{constant_distance, constant_norms, linear_distance, piece_midpoint, sup_distance, union_breakpoints, PwConstant};

/// Breaking times closer than this count as equal.
pub const TAU_TOL: f64 = 1e-9;

/// `U_ξ` above this counts as non-negative; absorbs rounding on flat pieces.
const SLOPE_TOL: f64 = 1e-13;

/// The decomposition of the label line used by `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPartition {
    pub t: f64,
    /// `{U₁_ξ ≥ 0}`.
    pub a1: IntervalSet,
    /// `{U₂_ξ ≥ 0}`.
    pub a2: IntervalSet,
    pub a12: IntervalSet,
    /// Labels where both states break at the same time, still ahead.
    pub b12: IntervalSet,
    pub omega: IntervalSet,
}

impl OmegaPartition {
    pub fn complement(&self) -> IntervalSet {
        self.omega.complement()
    }
}

fn same_future_time(t: f64, tau1: f64, tau2: f64) -> bool {
    tau1.is_finite() && tau2.is_finite() && t < tau1 && t < tau2 && (tau1 - tau2).abs() < TAU_TOL
}

fn check_alpha(x1: &LagrangianState, x2: &LagrangianState) -> Result<()> {
    if x1.alpha != x2.alpha {
        return Err(Error::IncompatibleStates(format!("alpha {} vs {}", x1.alpha, x2.alpha)));
    }
    Ok(())
}

/// The sets `A₁, A₂, A₁₂, B₁₂, Ω₁₂` at time `t`, with `tau1`, `tau2` the
/// breaking-time profiles measured from time zero.
pub fn omega_partition(
    x1: &LagrangianState,
    x2: &LagrangianState,
    tau1: &PwConstant,
    tau2: &PwConstant,
    t: f64,
) -> OmegaPartition {
    let grid = union_breakpoints(&[&x1.grid(), &x2.grid(), tau1.breakpoints(), tau2.breakpoints()]);
    let (mut a1, mut a2, mut b12) = (vec![], vec![], vec![]);
    for i in 0..=grid.len() {
        let m = piece_midpoint(&grid, i);
        a1.push(x1.u.slope_at(m) >= -SLOPE_TOL);
        a2.push(x2.u.slope_at(m) >= -SLOPE_TOL);
        b12.push(same_future_time(t, tau1.eval(m), tau2.eval(m)));
    }
    let a12: Vec<bool> = a1.iter().zip(&a2).map(|(&p, &q)| p && q).collect();
    let omega: Vec<bool> = a12.iter().zip(&b12).map(|(&p, &q)| p || q).collect();
    OmegaPartition {
        t,
        a1: IntervalSet::from_flags(&grid, &a1),
        a2: IntervalSet::from_flags(&grid, &a2),
        a12: IntervalSet::from_flags(&grid, &a12),
        b12: IntervalSet::from_flags(&grid, &b12),
        omega: IntervalSet::from_flags(&grid, &omega),
    }
}

/// [`omega_partition`] for two states at a common time, with breaking times
/// read from the states.
pub fn current_partition(x1: &LagrangianState, x2: &LagrangianState) -> OmegaPartition {
    omega_partition(x1, x2, &tau_profile(x1), &tau_profile(x2), 0.0)
}

/// `G₁₂` on a grid refining both states, with `in_omega(i, m)` deciding
/// whether piece `i` with interior point `m` lies in `Ω₁₂`.
fn g_on(
    x1: &LagrangianState,
    x2: &LagrangianState,
    extra: &[&[f64]],
    in_omega: impl Fn(&PieceSlopes, &PieceSlopes, usize, f64) -> bool,
) -> PwConstant {
    let (g1, g2) = (x1.grid(), x2.grid());
    let mut lists: Vec<&[f64]> = vec![&g1, &g2];
    lists.extend_from_slice(extra);
    let grid = union_breakpoints(&lists);
    let (s1, s2) = (x1.slopes_on(grid.clone()), x2.slopes_on(grid.clone()));
    let vals = (0..s1.len())
        .map(|i| {
            let (p, q) = (s1.v[i], s2.v[i]);
            if in_omega(&s1, &s2, i, piece_midpoint(&grid, i)) {
                (p - q).abs()
            } else {
                p.max(q)
            }
        })
        .collect();
    PwConstant::from_grid(&grid, vals)
}

fn in_a12(s1: &PieceSlopes, s2: &PieceSlopes, i: usize) -> bool {
    s1.u[i] >= -SLOPE_TOL && s2.u[i] >= -SLOPE_TOL
}

/// `G₁₂`: `|V₁_ξ − V₂_ξ|` on `Ω₁₂` and `max(V₁_ξ, V₂_ξ)` off it, for two
/// states at a common time, with breaking times read from the states.
///
/// Just before a breaking time the remaining delay is computed from
/// vanishing slopes and loses accuracy; along a trajectory prefer
/// [`g_function_at`].
pub fn g_function(x1: &LagrangianState, x2: &LagrangianState) -> PwConstant {
    g_on(x1, x2, &[], |s1, s2, i, _| {
        in_a12(s1, s2, i) || same_future_time(0.0, breaking_time(s1.y[i], s1.u[i]), breaking_time(s2.y[i], s2.u[i]))
    })
}

/// `G₁₂` for states at time `t` whose breaking-time profiles, measured from
/// time zero, are `tau1` and `tau2`.
pub fn g_function_at(
    x1: &LagrangianState,
    x2: &LagrangianState,
    tau1: &PwConstant,
    tau2: &PwConstant,
    t: f64,
) -> PwConstant {
    g_on(x1, x2, &[tau1.breakpoints(), tau2.breakpoints()], |s1, s2, i, m| {
        in_a12(s1, s2, i) || same_future_time(t, tau1.eval(m), tau2.eval(m))
    })
}

/// The seven terms of `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricTerms {
    pub sup_y: f64,
    pub sup_u: f64,
    pub l2_y_xi: f64,
    pub l2_u_xi: f64,
    pub sup_h: f64,
    pub l1_g: f64,
    pub l2_g: f64,
}

impl MetricTerms {
    pub fn total(&self) -> f64 {
        self.sup_y + self.sup_u + self.l2_y_xi + self.l2_u_xi + self.sup_h + self.l1_g + self.l2_g
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::IncompatibleStates(format!("{name} is infinite")))
    }
}

fn terms_with_g(x1: &LagrangianState, x2: &LagrangianState, g: &PwConstant) -> Result<MetricTerms> {
    check_alpha(x1, x2)?;
    let sup = |name: &str, f, g| sup_distance(f, g).map_err(|e| Error::IncompatibleStates(format!("{name}: {e}")));
    let g = constant_norms(g);
    Ok(MetricTerms {
        sup_y: sup("y", &x1.y, &x2.y)?,
        sup_u: sup("U", &x1.u, &x2.u)?,
        l2_y_xi: finite("‖y₁_ξ − y₂_ξ‖₂", constant_distance(&x1.y.derivative(), &x2.y.derivative()).l2)?,
        l2_u_xi: finite("‖U₁_ξ − U₂_ξ‖₂", constant_distance(&x1.u.derivative(), &x2.u.derivative()).l2)?,
        sup_h: sup("H", &x1.h, &x2.h)?,
        l1_g: finite("‖G‖₁", g.l1)?,
        l2_g: finite("‖G‖₂", g.l2)?,
    })
}

/// Term-by-term `d(X₁, X₂)` for two states at a common time, with `G` as
/// in [`g_function`].
pub fn metric_terms(x1: &LagrangianState, x2: &LagrangianState) -> Result<MetricTerms> {
    terms_with_g(x1, x2, &g_function(x1, x2))
}

/// Term-by-term `d` with `G` as in [`g_function_at`].
pub fn metric_terms_at(
    x1: &LagrangianState,
    x2: &LagrangianState,
    tau1: &PwConstant,
    tau2: &PwConstant,
    t: f64,
) -> Result<MetricTerms> {
    terms_with_g(x1, x2, &g_function_at(x1, x2, tau1, tau2, t))
}

/// `d(X₁, X₂)` for two states at a common time.
pub fn metric_d(x1: &LagrangianState, x2: &LagrangianState) -> Result<f64> {
    Ok(metric_terms(x1, x2)?.total())
}

/// `d(X₁, X₂)` with `G` as in [`g_function_at`].
pub fn metric_d_at(
    x1: &LagrangianState,
    x2: &LagrangianState,
    tau1: &PwConstant,
    tau2: &PwConstant,
    t: f64,
) -> Result<f64> {
    Ok(metric_terms_at(x1, x2, tau1, tau2, t)?.total())
}

/// `‖X_A − X_B‖`: the sum of the sup distances of the four components.
/// Infinite when some pair of tails has different slopes.
pub fn state_norm(xa: &LagrangianState, xb: &LagrangianState) -> f64 {
    linear_distance(&xa.y, &xb.y).sup
        + linear_distance(&xa.u, &xb.u).sup
        + linear_distance(&xa.h, &xb.h).sup
        + linear_distance(&xa.v, &xb.v).sup
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwl::PwLinear;
    use crate::reference_cases::{build_example, ExampleId};

    fn ramp_pair() -> (LagrangianState, LagrangianState) {
        let a = build_example(ExampleId::RampIdentityLabel, None).unwrap().lagrangian;
        let b = build_example(ExampleId::RampNormalizedLabel, None).unwrap().lagrangian;
        (a, b)
    }

    #[test]
    fn identical_states_are_at_distance_zero() {
        let (a, _) = ramp_pair();
        assert_eq!(metric_d(&a, &a).unwrap(), 0.0);
        assert_eq!(state_norm(&a, &a), 0.0);
        let p = current_partition(&a, &a);
        assert!(p.complement().is_empty());
        assert!(g_function(&a, &a).values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn ramp_labellings_split_on_the_unmatched_ramp() {
        let (a, b) = ramp_pair();
        let p = current_partition(&a, &b);
        assert_eq!(p.complement().intervals(), &[(1.0, 2.0)]);
        assert_eq!(p.b12.intervals(), &[(0.0, 1.0)]);
        // V_ξ is 1 on (0,1) for X and 1/2 on (0,2) for X̂.
        let g = g_function(&a, &b);
        assert_eq!(g.eval(0.5), 0.5);
        assert_eq!(g.eval(1.5), 0.5);
        assert!(metric_d(&a, &b).unwrap() > 0.0);
    }

    #[test]
    fn explicit_times_shift_the_future_condition() {
        let (a, b) = ramp_pair();
        let (ta, tb) = (tau_profile(&a), tau_profile(&b));
        assert_eq!(omega_partition(&a, &b, &ta, &tb, 1.0).b12.intervals(), &[(0.0, 1.0)]);
        assert!(omega_partition(&a, &b, &ta, &tb, 2.0).b12.is_empty());
        assert_eq!(g_function_at(&a, &b, &ta, &tb, 0.0), g_function(&a, &b));
        // Once the shared breaking time has passed, (0,1) leaves Ω.
        assert_eq!(g_function_at(&a, &b, &ta, &tb, 2.0).eval(0.5), 1.0);
    }

    #[test]
    fn terms_add_up() {
        let (a, b) = ramp_pair();
        let t = metric_terms(&a, &b).unwrap();
        // U differs by at most 1/2 (at ξ = 1); H by at most 1/2.
        assert!((t.sup_u - 0.5).abs() < 1e-15);
        assert!((t.sup_h - 0.5).abs() < 1e-15);
        assert!((t.total() - metric_d(&a, &b).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn mismatched_tails_are_incompatible() {
        let (a, mut b) = ramp_pair();
        b.u = PwLinear::with_tails(vec![0.0], vec![0.0], 0.0, 1.0).unwrap();
        assert!(matches!(metric_d(&a, &b), Err(Error::IncompatibleStates(_))));
    }
}
