use serde::{Deserialize, Serialize};

use super::{piece_bounds, piece_index, piece_midpoint, union_breakpoints, PwLinear};
use crate::error::{Error, Result};

/// A piecewise-constant function: `values[0]` on the left tail,
/// `values[i]` on `[breakpoints[i-1], breakpoints[i])`, and the last value on
/// the right tail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PwConstantRepr", into = "PwConstantRepr")]
pub struct PwConstant {
    xs: Vec<f64>,
    vals: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PwConstantRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<PwConstantRepr> for PwConstant {
    type Error = Error;

    fn try_from(r: PwConstantRepr) -> Result<Self> {
        PwConstant::new(r.breakpoints, r.values)
    }
}

impl From<PwConstant> for PwConstantRepr {
    fn from(f: PwConstant) -> Self {
        PwConstantRepr { breakpoints: f.xs, values: f.vals }
    }
}

impl PwConstant {
    pub fn new(xs: Vec<f64>, vals: Vec<f64>) -> Result<Self> {
        if vals.len() != xs.len() + 1 {
            return Err(Error::InvalidData(format!(
                "{} breakpoints need {} values, got {}",
                xs.len(),
                xs.len() + 1,
                vals.len()
            )));
        }
        // Infinite piece values are allowed (breaking-time profiles).
        if xs.iter().any(|v| !v.is_finite()) || vals.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidData("non-finite breakpoint or NaN value".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidData("breakpoints not strictly increasing".into()));
        }
        Ok(PwConstant { xs, vals })
    }

    pub fn zero() -> Self {
        PwConstant { xs: vec![], vals: vec![0.0] }
    }

    /// `c` on `[a, b)`, zero elsewhere.
    pub fn indicator(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![0.0, c, 0.0])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.vals
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.vals[piece_index(&self.xs, x)]
    }

    /// Value on each piece of a grid refining these breakpoints.
    pub fn values_on(&self, grid: &[f64]) -> Vec<f64> {
        (0..=grid.len()).map(|i| self.eval(piece_midpoint(grid, i))).collect()
    }

    /// Rebuilds from per-piece values on `grid`, merging equal neighbours.
    pub(crate) fn from_grid(grid: &[f64], vals: Vec<f64>) -> Self {
        debug_assert_eq!(vals.len(), grid.len() + 1);
        let mut xs = Vec::with_capacity(grid.len());
        let mut out = vec![vals[0]];
        for (i, &x) in grid.iter().enumerate() {
            if vals[i + 1] != *out.last().unwrap() {
                xs.push(x);
                out.push(vals[i + 1]);
            }
        }
        PwConstant { xs, vals: out }
    }

    pub fn combine(&self, other: &PwConstant, op: impl Fn(f64, f64) -> f64) -> PwConstant {
        let grid = union_breakpoints(&[&self.xs, &other.xs]);
        let a = self.values_on(&grid);
        let b = other.values_on(&grid);
        let vals = a.iter().zip(&b).map(|(&p, &q)| op(p, q)).collect();
        Self::from_grid(&grid, vals)
    }

    pub fn map(&self, op: impl Fn(f64) -> f64) -> PwConstant {
        Self::from_grid(&self.xs, self.vals.iter().map(|&v| op(v)).collect())
    }

    pub fn has_zero_tails(&self) -> bool {
        self.vals[0] == 0.0 && *self.vals.last().unwrap() == 0.0
    }

    /// `x ↦ base + ∫_{x₀}^x f` with `x₀` the first breakpoint. When the left
    /// tail vanishes this is `base + ∫_{-∞}^x f`; otherwise the left tail is affine.
    pub fn antiderivative(&self, base: f64) -> PwLinear {
        if self.xs.is_empty() {
            return PwLinear::with_tails(vec![0.0], vec![base], self.vals[0], self.vals[0]).expect("finite");
        }
        let mut ys = Vec::with_capacity(self.xs.len());
        let mut acc = base;
        ys.push(acc);
        for i in 1..self.xs.len() {
            acc += self.vals[i] * (self.xs[i] - self.xs[i - 1]);
            ys.push(acc);
        }
        PwLinear::with_tails(self.xs.clone(), ys, self.vals[0], *self.vals.last().unwrap()).expect("finite")
    }

    /// `∫_ℝ f`. Requires zero tails.
    pub fn integral(&self) -> Result<f64> {
        if !self.has_zero_tails() {
            return Err(Error::NotIntegrable("nonzero tail".into()));
        }
        Ok((1..self.xs.len()).map(|i| self.vals[i] * (self.xs[i] - self.xs[i - 1])).sum())
    }

    /// Pieces as `(lo, hi, value)` with infinite tails.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.vals.len()).map(move |i| {
            let (lo, hi) = piece_bounds(&self.xs, i);
            (lo, hi, self.vals[i])
        })
    }
}
