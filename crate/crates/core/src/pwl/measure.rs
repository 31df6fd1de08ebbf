use serde::{Deserialize, Serialize};

use super::{union_breakpoints, PwConstant, PwLinear, FUSE_TOL};
use crate::error::{Error, Result};

/// A finite positive Borel measure on ℝ with a piecewise-constant density
/// and finitely many atoms.
///
/// The absolutely continuous part is stored through its cumulative
/// distribution, a non-decreasing piecewise-linear function vanishing at −∞.
/// Atoms are kept sorted with strictly positive masses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct CumulativeMeasure {
    ac: PwLinear,
    atoms: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    #[serde(default)]
    atoms: Vec<(f64, f64)>,
}

impl TryFrom<MeasureRepr> for CumulativeMeasure {
    type Error = Error;

    fn try_from(r: MeasureRepr) -> Result<Self> {
        let ac = if r.breakpoints.is_empty() && r.values.is_empty() {
            PwLinear::constant(0.0)
        } else {
            PwLinear::new(r.breakpoints, r.values)?
        };
        CumulativeMeasure::new(ac, r.atoms)
    }
}

impl From<CumulativeMeasure> for MeasureRepr {
    fn from(m: CumulativeMeasure) -> Self {
        let zero = m.ac.values().iter().all(|&v| v == 0.0);
        let (breakpoints, values) = if zero {
            (vec![], vec![])
        } else {
            (m.ac.breakpoints().to_vec(), m.ac.values().to_vec())
        };
        MeasureRepr { breakpoints, values, atoms: m.atoms }
    }
}

impl CumulativeMeasure {
    pub fn new(ac: PwLinear, mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if ac.left_slope() != 0.0 || ac.right_slope() != 0.0 {
            return Err(Error::InvalidData("cumulative distribution must have constant tails".into()));
        }
        if ac.values()[0].abs() > 1e-12 {
            return Err(Error::InvalidData(format!(
                "cumulative distribution must vanish at -inf, got {}",
                ac.values()[0]
            )));
        }
        if !ac.is_nondecreasing() {
            return Err(Error::NotMonotone("cumulative distribution".into()));
        }
        if atoms.iter().any(|&(x, m)| !x.is_finite() || !m.is_finite() || m < 0.0) {
            return Err(Error::InvalidData("atoms need finite locations and non-negative masses".into()));
        }
        atoms.retain(|&(_, m)| m > 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (x, m) in atoms {
            match merged.last_mut() {
                Some(last) if x - last.0 <= FUSE_TOL => last.1 += m,
                _ => merged.push((x, m)),
            }
        }
        Ok(CumulativeMeasure { ac: ac.simplified(), atoms: merged })
    }

    pub fn zero() -> Self {
        CumulativeMeasure { ac: PwLinear::constant(0.0), atoms: vec![] }
    }

    pub fn from_density(density: &PwConstant, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if density.values().iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidData("negative density".into()));
        }
        if !density.has_zero_tails() {
            return Err(Error::NotIntegrable("density with nonzero tail".into()));
        }
        Self::new(density.antiderivative(0.0), atoms)
    }

    /// Cumulative distribution of the absolutely continuous part.
    pub fn ac_cumulative(&self) -> &PwLinear {
        &self.ac
    }

    pub fn density(&self) -> PwConstant {
        self.ac.derivative()
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn has_atoms(&self) -> bool {
        !self.atoms.is_empty()
    }

    /// Breakpoints of the density together with atom locations.
    pub fn breakpoints(&self) -> Vec<f64> {
        let at: Vec<f64> = self.atoms.iter().map(|a| a.0).collect();
        if self.ac_total() == 0.0 {
            return at;
        }
        union_breakpoints(&[self.ac.breakpoints(), &at])
    }

    /// `μ((−∞, x))`.
    pub fn cumulative(&self, x: f64) -> f64 {
        self.ac.eval(x) + self.atoms.iter().take_while(|a| a.0 < x).map(|a| a.1).sum::<f64>()
    }

    /// `μ((−∞, x])`.
    pub fn cumulative_closed(&self, x: f64) -> f64 {
        self.ac.eval(x) + self.atoms.iter().take_while(|a| a.0 <= x).map(|a| a.1).sum::<f64>()
    }

    pub fn ac_total(&self) -> f64 {
        *self.ac.values().last().unwrap()
    }

    pub fn atom_total(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn total(&self) -> f64 {
        self.ac_total() + self.atom_total()
    }

    /// Mass of the atom at `x`, zero if there is none.
    pub fn atom_at(&self, x: f64) -> f64 {
        self.atoms.iter().find(|a| (a.0 - x).abs() <= FUSE_TOL).map_or(0.0, |a| a.1)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.ac.scale(c), self.atoms.iter().map(|&(x, m)| (x, c * m)).collect())
    }
}

/// Generalized inverse of `x ↦ base(x) + Σ_{p<x} m_p` for a strictly
/// increasing `base` and jumps `(p, m_p)`: continuous, non-decreasing, and
/// flat with value `p` on `[base(p) + Σ_{q<p} m_q, … + m_p]`.
pub fn generalized_inverse(base: &PwLinear, jumps: &[(f64, f64)]) -> Result<PwLinear> {
    if base.left_slope() <= 0.0 || base.right_slope() <= 0.0 || base.values().windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NotMonotone("base of a generalized inverse must be strictly increasing".into()));
    }
    let at: Vec<f64> = jumps.iter().map(|j| j.0).collect();
    let grid = union_breakpoints(&[base.breakpoints(), &at]);
    let mut nodes = Vec::with_capacity(grid.len() + jumps.len());
    let mut acc = 0.0;
    let mut j = 0;
    for &x in &grid {
        let s = base.eval(x) + acc;
        nodes.push((s, x));
        let mut m = 0.0;
        while j < jumps.len() && jumps[j].0 <= x + FUSE_TOL {
            m += jumps[j].1;
            j += 1;
        }
        if m > 0.0 {
            nodes.push((s + m, x));
            acc += m;
        }
    }
    Ok(PwLinear::from_nodes(nodes, 1.0 / base.left_slope(), 1.0 / base.right_slope())?.simplified())
}

/// Push-forward of `density · dξ` under a non-decreasing `y`, up to
/// decreases of at most [`FUSE_TOL`]. Pieces
/// collapsed by `y` become atoms.
pub fn pushforward(density: &PwConstant, y: &PwLinear) -> Result<CumulativeMeasure> {
    if !density.has_zero_tails() {
        return Err(Error::NotIntegrable("density with nonzero tail".into()));
    }
    // Rounding-level decreases occur where y has just collapsed a piece.
    let falls = y.values().windows(2).any(|w| w[1] < w[0] - FUSE_TOL);
    if falls || y.left_slope() < 0.0 || y.right_slope() < 0.0 {
        return Err(Error::NotMonotone("push-forward map".into()));
    }
    if density.values().iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidData("negative density".into()));
    }
    let grid = union_breakpoints(&[density.breakpoints(), y.breakpoints()]);
    let vals = density.values_on(&grid);
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    let mut atoms = Vec::new();
    let mut acc = 0.0;
    for i in 1..grid.len() {
        let d = vals[i];
        if d == 0.0 {
            continue;
        }
        let mass = d * (grid[i] - grid[i - 1]);
        let (ya, yb) = (y.eval(grid[i - 1]), y.eval(grid[i]));
        if yb - ya <= FUSE_TOL {
            atoms.push((ya, mass));
        } else {
            nodes.push((ya, acc));
            acc += mass;
            nodes.push((yb, acc));
        }
    }
    let ac = if nodes.is_empty() {
        PwLinear::constant(0.0)
    } else {
        PwLinear::from_nodes(nodes, 0.0, 0.0)?
    };
    CumulativeMeasure::new(ac, atoms)
}
