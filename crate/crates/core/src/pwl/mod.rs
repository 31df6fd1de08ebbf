//! Exact arithmetic on piecewise-linear functions, piecewise-constant
//! densities and cumulative measures with atoms.
//!
//! Every function carries finitely many breakpoints. Integrals and norms are
//! evaluated with closed-form polynomial formulas on the common breakpoint
//! refinement, so the only error source is floating-point rounding.

mod constant;
mod linear;
mod measure;
mod norms;

pub use constant::PwConstant;
pub use linear::PwLinear;
pub use measure::{generalized_inverse, pushforward, CumulativeMeasure};
pub use norms::{constant_distance, constant_norms, linear_distance, linear_norms, sup_distance, Norms};

/// Breakpoints closer than this are treated as one.
pub const FUSE_TOL: f64 = 1e-13;

/// Sorted union of several sorted breakpoint lists, with near-duplicates fused.
pub fn union_breakpoints(lists: &[&[f64]]) -> Vec<f64> {
    let mut all: Vec<f64> = lists.iter().flat_map(|l| l.iter().copied()).collect();
    all.sort_by(|a, b| a.total_cmp(b));
    fuse_sorted(&mut all);
    all
}

pub(crate) fn fuse_sorted(xs: &mut Vec<f64>) {
    xs.dedup_by(|b, a| (*b - *a).abs() <= FUSE_TOL);
}

/// Index of the grid piece containing `x`: 0 is the left tail, `grid.len()`
/// the right tail. Breakpoints belong to the piece on their right.
pub fn piece_index(grid: &[f64], x: f64) -> usize {
    grid.partition_point(|&b| b <= x)
}

/// Representative interior point of piece `i` of `grid`.
pub fn piece_midpoint(grid: &[f64], i: usize) -> f64 {
    let n = grid.len();
    if n == 0 {
        0.0
    } else if i == 0 {
        grid[0] - 1.0
    } else if i == n {
        grid[n - 1] + 1.0
    } else {
        0.5 * (grid[i - 1] + grid[i])
    }
}

/// The ξ-extent of piece `i` of `grid`, with infinite tails.
pub fn piece_bounds(grid: &[f64], i: usize) -> (f64, f64) {
    let lo = if i == 0 { f64::NEG_INFINITY } else { grid[i - 1] };
    let hi = if i == grid.len() { f64::INFINITY } else { grid[i] };
    (lo, hi)
}
