use serde::{Deserialize, Serialize};

use super::{fuse_sorted, piece_index, piece_midpoint, union_breakpoints, PwConstant, FUSE_TOL};
use crate::error::{Error, Result};

/// A continuous piecewise-linear function of one real variable.
///
/// Between consecutive breakpoints the function interpolates the stored
/// values; outside the breakpoint hull it continues affinely with the stored
/// tail slopes. Data in Eulerian coordinates uses zero tail slopes (constant
/// asymptotes); characteristics `y` and relabellings use slope one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PwLinearRepr", into = "PwLinearRepr")]
pub struct PwLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
    left_slope: f64,
    right_slope: f64,
}

#[derive(Serialize, Deserialize)]
struct PwLinearRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    left_slope: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    right_slope: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl TryFrom<PwLinearRepr> for PwLinear {
    type Error = Error;

    fn try_from(r: PwLinearRepr) -> Result<Self> {
        PwLinear::with_tails(r.breakpoints, r.values, r.left_slope, r.right_slope)
    }
}

impl From<PwLinear> for PwLinearRepr {
    fn from(f: PwLinear) -> Self {
        PwLinearRepr {
            breakpoints: f.xs,
            values: f.ys,
            left_slope: f.left_slope,
            right_slope: f.right_slope,
        }
    }
}

impl PwLinear {
    /// Function with constant tails through the given nodes.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        Self::with_tails(xs, ys, 0.0, 0.0)
    }

    pub fn with_tails(xs: Vec<f64>, ys: Vec<f64>, left_slope: f64, right_slope: f64) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidData("at least one breakpoint is required".into()));
        }
        if xs.len() != ys.len() {
            return Err(Error::InvalidData(format!(
                "{} breakpoints but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) || !left_slope.is_finite() || !right_slope.is_finite() {
            return Err(Error::InvalidData("non-finite entry".into()));
        }
        if let Some(w) = xs.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidData(format!(
                "breakpoints not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(PwLinear { xs, ys, left_slope, right_slope })
    }

    /// Builds a function from sorted nodes, fusing abscissae closer than
    /// [`FUSE_TOL`]. Of a fused group the first abscissa and the last value
    /// are kept.
    pub(crate) fn from_nodes(nodes: Vec<(f64, f64)>, left_slope: f64, right_slope: f64) -> Result<Self> {
        let mut xs: Vec<f64> = Vec::with_capacity(nodes.len());
        let mut ys: Vec<f64> = Vec::with_capacity(nodes.len());
        for (x, y) in nodes {
            match xs.last() {
                Some(&last) if x < last - FUSE_TOL => {
                    return Err(Error::InvalidData(format!("nodes out of order: {x} after {last}")));
                }
                Some(&last) if x - last <= FUSE_TOL => {
                    *ys.last_mut().unwrap() = y;
                }
                _ => {
                    xs.push(x);
                    ys.push(y);
                }
            }
        }
        Self::with_tails(xs, ys, left_slope, right_slope)
    }

    pub fn constant(c: f64) -> Self {
        PwLinear { xs: vec![0.0], ys: vec![c], left_slope: 0.0, right_slope: 0.0 }
    }

    pub fn identity() -> Self {
        PwLinear { xs: vec![0.0], ys: vec![0.0], left_slope: 1.0, right_slope: 1.0 }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    pub fn left_slope(&self) -> f64 {
        self.left_slope
    }

    pub fn right_slope(&self) -> f64 {
        self.right_slope
    }

    /// Limit at −∞, when the left tail is constant.
    pub fn left_limit(&self) -> Option<f64> {
        (self.left_slope == 0.0).then(|| self.ys[0])
    }

    /// Limit at +∞, when the right tail is constant.
    pub fn right_limit(&self) -> Option<f64> {
        (self.right_slope == 0.0).then(|| *self.ys.last().unwrap())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0] + self.left_slope * (x - self.xs[0]);
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1] + self.right_slope * (x - self.xs[n - 1]);
        }
        let k = piece_index(&self.xs, x) - 1;
        if x == self.xs[k] {
            return self.ys[k];
        }
        let w = (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        self.ys[k] + (self.ys[k + 1] - self.ys[k]) * w
    }

    /// Slopes of the interior pieces (one fewer than breakpoints).
    pub fn piece_slopes(&self) -> Vec<f64> {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect()
    }

    /// Slope of the piece containing `x`; breakpoints take the slope on their right.
    pub fn slope_at(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = piece_index(&self.xs, x);
        if i == 0 {
            self.left_slope
        } else if i == n {
            self.right_slope
        } else {
            (self.ys[i] - self.ys[i - 1]) / (self.xs[i] - self.xs[i - 1])
        }
    }

    /// Slope on each piece of `grid` (tails included), where `grid` refines
    /// this function's breakpoints.
    pub fn slopes_on(&self, grid: &[f64]) -> Vec<f64> {
        let n = grid.len();
        (0..=n)
            .map(|i| {
                if i == 0 {
                    self.left_slope
                } else if i == n {
                    self.right_slope
                } else {
                    self.slope_at(piece_midpoint(grid, i))
                }
            })
            .collect()
    }

    pub fn values_on(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&x| self.eval(x)).collect()
    }

    pub fn derivative(&self) -> PwConstant {
        let mut vals = Vec::with_capacity(self.xs.len() + 1);
        vals.push(self.left_slope);
        vals.extend(self.piece_slopes());
        vals.push(self.right_slope);
        PwConstant::new(self.xs.clone(), vals).expect("derivative of a valid function")
    }

    fn zip_with(&self, other: &PwLinear, op: impl Fn(f64, f64) -> f64) -> PwLinear {
        let grid = union_breakpoints(&[&self.xs, &other.xs]);
        let ys = grid.iter().map(|&x| op(self.eval(x), other.eval(x))).collect();
        PwLinear {
            xs: grid,
            ys,
            left_slope: op(self.left_slope, other.left_slope),
            right_slope: op(self.right_slope, other.right_slope),
        }
        .simplified()
    }

    pub fn add(&self, other: &PwLinear) -> PwLinear {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PwLinear) -> PwLinear {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> PwLinear {
        PwLinear {
            xs: self.xs.clone(),
            ys: self.ys.iter().map(|y| c * y).collect(),
            left_slope: c * self.left_slope,
            right_slope: c * self.right_slope,
        }
    }

    /// Smallest slope over all pieces, tails included.
    pub fn min_slope(&self) -> f64 {
        self.piece_slopes()
            .into_iter()
            .fold(self.left_slope.min(self.right_slope), f64::min)
    }

    pub fn max_slope(&self) -> f64 {
        self.piece_slopes()
            .into_iter()
            .fold(self.left_slope.max(self.right_slope), f64::max)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.left_slope >= 0.0 && self.right_slope >= 0.0 && self.ys.windows(2).all(|w| w[1] >= w[0])
    }

    /// Points where `self` crosses level `b` strictly inside a rising piece or tail.
    fn strict_preimage(&self, b: f64) -> Option<f64> {
        let n = self.xs.len();
        let k = self.ys.partition_point(|&v| v < b);
        if k == 0 {
            (b < self.ys[0] && self.left_slope > 0.0).then(|| self.xs[0] - (self.ys[0] - b) / self.left_slope)
        } else if k == n {
            (self.right_slope > 0.0).then(|| self.xs[n - 1] + (b - self.ys[n - 1]) / self.right_slope)
        } else if b < self.ys[k] {
            let w = (b - self.ys[k - 1]) / (self.ys[k] - self.ys[k - 1]);
            Some(self.xs[k - 1] + w * (self.xs[k] - self.xs[k - 1]))
        } else {
            None
        }
    }

    /// The composition `self ∘ inner` for a non-decreasing `inner`.
    pub fn compose(&self, inner: &PwLinear) -> Result<PwLinear> {
        if !inner.is_nondecreasing() {
            return Err(Error::NotMonotone("inner function of a composition".into()));
        }
        let mut grid: Vec<f64> = inner.xs.clone();
        grid.extend(self.xs.iter().filter_map(|&b| inner.strict_preimage(b)));
        grid.sort_by(|a, b| a.total_cmp(b));
        fuse_sorted(&mut grid);
        let ys = grid.iter().map(|&x| self.eval(inner.eval(x))).collect();
        let left = if inner.left_slope > 0.0 { self.left_slope * inner.left_slope } else { 0.0 };
        let right = if inner.right_slope > 0.0 { self.right_slope * inner.right_slope } else { 0.0 };
        Ok(PwLinear { xs: grid, ys, left_slope: left, right_slope: right }.simplified())
    }

    /// Inverse of a strictly increasing function.
    pub fn inverse(&self) -> Result<PwLinear> {
        if self.left_slope <= 0.0 || self.right_slope <= 0.0 || self.ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NotMonotone("only strictly increasing functions are invertible".into()));
        }
        let nodes = self.ys.iter().copied().zip(self.xs.iter().copied()).collect();
        Ok(PwLinear::from_nodes(nodes, 1.0 / self.left_slope, 1.0 / self.right_slope)?.simplified())
    }

    /// Removes breakpoints across which the function is affine.
    pub fn simplified(&self) -> PwLinear {
        let scale = 1.0 + self.ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
        let tol = 1e-14 * scale;
        let mut xs: Vec<f64> = Vec::with_capacity(self.xs.len());
        let mut ys: Vec<f64> = Vec::with_capacity(self.ys.len());
        for (&x, &y) in self.xs.iter().zip(&self.ys) {
            while xs.len() >= 2 {
                let k = xs.len();
                let (x0, y0, x1, y1) = (xs[k - 2], ys[k - 2], xs[k - 1], ys[k - 1]);
                let interp = y0 + (y - y0) * (x1 - x0) / (x - x0);
                if (interp - y1).abs() <= tol {
                    xs.pop();
                    ys.pop();
                } else {
                    break;
                }
            }
            xs.push(x);
            ys.push(y);
        }
        // Tails absorb end pieces with the same slope.
        while xs.len() >= 2 {
            let extrapolated = ys[1] - self.left_slope * (xs[1] - xs[0]);
            if (extrapolated - ys[0]).abs() <= tol {
                xs.remove(0);
                ys.remove(0);
            } else {
                break;
            }
        }
        while xs.len() >= 2 {
            let k = xs.len();
            let extrapolated = ys[k - 2] + self.right_slope * (xs[k - 1] - xs[k - 2]);
            if (extrapolated - ys[k - 1]).abs() <= tol {
                xs.pop();
                ys.pop();
            } else {
                break;
            }
        }
        PwLinear { xs, ys, left_slope: self.left_slope, right_slope: self.right_slope }
    }
}
