use std::fmt;

use super::{EulerianState, LagrangianState};
use crate::pwl::{piece_bounds, piece_midpoint};

const TOL: f64 = 1e-9;

/// A membership condition of the Eulerian or Lagrangian state sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    UTails,
    MuLeNu,
    MuAcIsUx2,
    NuAcIsMu,
    RatioDichotomy,
    RatioOneWhereDecreasing,
    YxiNonneg,
    HxiNonneg,
    Coercive,
    EnergyIdentity,
    VBetweenZeroAndH,
    AlphaOneDichotomy,
    KappaDichotomy,
    KappaOneWhereDecreasing,
    Asymptotics,
    Normalized,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::UTails => "u has constant tails",
            Clause::MuLeNu => "μ ≤ ν",
            Clause::MuAcIsUx2 => "μ_ac = u_x² dx",
            Clause::NuAcIsMu => "ν_ac = μ",
            Clause::RatioDichotomy => "dμ/dν ∈ {1, 1−α}",
            Clause::RatioOneWhereDecreasing => "dμ/dν = 1 where u_x < 0",
            Clause::YxiNonneg => "y_ξ ≥ 0",
            Clause::HxiNonneg => "H_ξ ≥ 0",
            Clause::Coercive => "y_ξ + H_ξ ≥ c > 0",
            Clause::EnergyIdentity => "y_ξ V_ξ = U_ξ²",
            Clause::VBetweenZeroAndH => "0 ≤ V_ξ ≤ H_ξ",
            Clause::AlphaOneDichotomy => "α = 1: V_ξ = 0 where y_ξ = 0, V_ξ = H_ξ where y_ξ > 0",
            Clause::KappaDichotomy => "κ ∈ {1−α, 1}",
            Clause::KappaOneWhereDecreasing => "κ = 1 where U_ξ < 0",
            Clause::Asymptotics => "asymptotics",
            Clause::Normalized => "y + H = id",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A violated clause with the interval where it fails.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub clause: Clause,
    pub interval: (f64, f64),
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Smallest `y_ξ + H_ξ` over the pieces (Lagrangian reports only).
    pub coercivity: Option<f64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    fn push(&mut self, clause: Clause, interval: (f64, f64), detail: String) {
        self.violations.push(Violation { clause, interval, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "PASS");
        }
        writeln!(f, "FAIL ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  [{}] on ({}, {}): {}", v.clause, v.interval.0, v.interval.1, v.detail)?;
        }
        Ok(())
    }
}

fn near(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= TOL * (1.0 + scale)
}

/// Snaps `r` to `1` or `1 − α`, or returns `None`.
pub(crate) fn snap_ratio(r: f64, alpha: f64) -> Option<f64> {
    if near(r, 1.0, 0.0) {
        Some(1.0)
    } else if near(r, 1.0 - alpha, 0.0) {
        Some(1.0 - alpha)
    } else {
        None
    }
}

pub fn validate_eulerian(y: &EulerianState) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let alpha = y.alpha;
    if y.u.left_slope() != 0.0 || y.u.right_slope() != 0.0 {
        rep.push(Clause::UTails, (f64::NEG_INFINITY, f64::INFINITY), "u has a sloped tail".into());
    }
    let grid = y.grid();
    let mu_d = y.mu.density();
    let nu_d = y.nu.density();
    for i in 1..grid.len() {
        let iv = piece_bounds(&grid, i);
        let m = piece_midpoint(&grid, i);
        let ux = y.u.slope_at(m);
        let (md, nd) = (mu_d.eval(m), nu_d.eval(m));
        let scale = md.max(nd);
        if md > nd + TOL * (1.0 + scale) {
            rep.push(Clause::MuLeNu, iv, format!("μ density {md} exceeds ν density {nd}"));
        }
        if !near(md, ux * ux, ux * ux) {
            rep.push(Clause::MuAcIsUx2, iv, format!("μ density {md} but u_x² = {}", ux * ux));
        }
        if alpha == 1.0 {
            if !near(nd, md, scale) {
                rep.push(Clause::NuAcIsMu, iv, format!("ν density {nd} differs from μ density {md}"));
            }
        } else if nd > TOL {
            match snap_ratio(md / nd, alpha) {
                None => rep.push(Clause::RatioDichotomy, iv, format!("ratio {}", md / nd)),
                Some(r) if ux < 0.0 && r != 1.0 => {
                    rep.push(Clause::RatioOneWhereDecreasing, iv, format!("ratio {r} with u_x = {ux}"))
                }
                _ => {}
            }
        }
    }
    for &(x, m) in y.mu.atoms() {
        let n = y.nu.atom_at(x);
        if m > n + TOL * (1.0 + n) {
            rep.push(Clause::MuLeNu, (x, x), format!("μ atom {m} exceeds ν atom {n}"));
        }
        if alpha == 1.0 {
            rep.push(Clause::NuAcIsMu, (x, x), format!("μ carries an atom of mass {m}"));
        }
    }
    if alpha < 1.0 {
        for &(x, n) in y.nu.atoms() {
            let m = y.mu.atom_at(x);
            match snap_ratio(m / n, alpha) {
                None => rep.push(Clause::RatioDichotomy, (x, x), format!("atom ratio {}", m / n)),
                Some(r) if r != 1.0 && strictly_decreasing_at(y, x) => rep.push(
                    Clause::RatioOneWhereDecreasing,
                    (x, x),
                    format!("atom ratio {r} inside a decreasing piece of u"),
                ),
                _ => {}
            }
        }
    }
    rep
}

fn strictly_decreasing_at(y: &EulerianState, x: f64) -> bool {
    !y.u.breakpoints().iter().any(|&b| (b - x).abs() <= crate::pwl::FUSE_TOL) && y.u.slope_at(x) < 0.0
}

/// Checks membership in the Lagrangian state set, and with `require_normalized`
/// also `y + H = id` at every breakpoint.
pub fn validate_lagrangian(x: &LagrangianState, require_normalized: bool) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let alpha = x.alpha;
    let s = x.slopes();
    let whole = (f64::NEG_INFINITY, f64::INFINITY);

    let asym = [
        ("y left slope", x.y.left_slope(), 1.0),
        ("y right slope", x.y.right_slope(), 1.0),
        ("U left slope", x.u.left_slope(), 0.0),
        ("U right slope", x.u.right_slope(), 0.0),
        ("H left slope", x.h.left_slope(), 0.0),
        ("H right slope", x.h.right_slope(), 0.0),
        ("V left slope", x.v.left_slope(), 0.0),
        ("V right slope", x.v.right_slope(), 0.0),
        ("H(-inf)", x.h.values()[0], 0.0),
        ("V(-inf)", x.v.values()[0], 0.0),
    ];
    for (what, got, want) in asym {
        if (got - want).abs() > 1e-12 {
            rep.push(Clause::Asymptotics, whole, format!("{what} is {got}, expected {want}"));
        }
    }

    let mut c = f64::INFINITY;
    for i in 0..s.len() {
        let iv = piece_bounds(&s.grid, i);
        let (yx, ux, hx, vx) = (s.y[i], s.u[i], s.h[i], s.v[i]);
        let scale = yx.abs().max(hx.abs()).max(vx.abs()).max(ux.abs());
        if yx < -TOL * (1.0 + scale) {
            rep.push(Clause::YxiNonneg, iv, format!("y_ξ = {yx}"));
        }
        if hx < -TOL * (1.0 + scale) {
            rep.push(Clause::HxiNonneg, iv, format!("H_ξ = {hx}"));
        }
        c = c.min(yx + hx);
        if !near(yx * vx, ux * ux, yx.abs() * vx.abs() + ux * ux) {
            rep.push(Clause::EnergyIdentity, iv, format!("y_ξ V_ξ = {} but U_ξ² = {}", yx * vx, ux * ux));
        }
        if vx < -TOL * (1.0 + scale) || vx > hx + TOL * (1.0 + scale) {
            rep.push(Clause::VBetweenZeroAndH, iv, format!("V_ξ = {vx}, H_ξ = {hx}"));
        }
        if alpha == 1.0 {
            let v_zero = vx.abs() <= TOL * (1.0 + scale);
            let v_full = near(vx, hx, scale);
            if (yx.abs() <= 1e-14 && !v_zero) || (!v_zero && !v_full) {
                rep.push(Clause::AlphaOneDichotomy, iv, format!("y_ξ = {yx}, V_ξ = {vx}, H_ξ = {hx}"));
            }
        } else if hx > TOL * (1.0 + scale) {
            // Compared in absolute terms: κ itself is ill-conditioned when H_ξ is tiny.
            let full = near(vx, hx, scale);
            if !full && !near(vx, (1.0 - alpha) * hx, scale) {
                rep.push(Clause::KappaDichotomy, iv, format!("κ = {}", vx / hx));
            } else if !full && ux < -TOL * (1.0 + scale) {
                rep.push(Clause::KappaOneWhereDecreasing, iv, format!("κ = {} with U_ξ = {ux}", vx / hx));
            }
        }
    }
    rep.coercivity = Some(c);
    if c <= 1e-12 {
        rep.push(Clause::Coercive, whole, format!("min (y_ξ + H_ξ) = {c}"));
    }

    if require_normalized {
        for &xi in &s.grid {
            let g = x.y.eval(xi) + x.h.eval(xi);
            if (g - xi).abs() > 1e-12 * (1.0 + xi.abs()) {
                rep.push(Clause::Normalized, (xi, xi), format!("y + H = {g} at ξ = {xi}"));
            }
        }
    }
    rep
}
