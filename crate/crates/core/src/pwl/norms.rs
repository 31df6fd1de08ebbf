use super::{union_breakpoints, PwConstant, PwLinear};
use crate::error::{Error, Result};

/// Sup, L¹ and L² norms of a single function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norms {
    pub sup: f64,
    pub l1: f64,
    pub l2: f64,
}

/// `∫_a^b |ℓ|` for the affine ℓ with ℓ(a) = f0, ℓ(b) = f1.
fn abs_integral(len: f64, f0: f64, f1: f64) -> f64 {
    if f0 * f1 >= 0.0 {
        0.5 * len * (f0.abs() + f1.abs())
    } else {
        0.5 * len * (f0 * f0 + f1 * f1) / (f0.abs() + f1.abs())
    }
}

/// `∫_a^b ℓ²` for the affine ℓ with ℓ(a) = f0, ℓ(b) = f1.
fn sq_integral(len: f64, f0: f64, f1: f64) -> f64 {
    len * (f0 * f0 + f0 * f1 + f1 * f1) / 3.0
}

/// Norms of a piecewise-linear function. The L¹ and L² norms are infinite
/// unless both tails vanish identically; the sup norm is infinite for a
/// non-constant tail.
pub fn linear_norms(f: &PwLinear) -> Norms {
    let xs = f.breakpoints();
    let ys = f.values();
    let n = xs.len();
    let unbounded = f.left_slope() != 0.0 || f.right_slope() != 0.0;
    let sup = if unbounded { f64::INFINITY } else { ys.iter().fold(0.0f64, |m, y| m.max(y.abs())) };
    if unbounded || ys[0] != 0.0 || ys[n - 1] != 0.0 {
        return Norms { sup, l1: f64::INFINITY, l2: f64::INFINITY };
    }
    let mut l1 = 0.0;
    let mut sq = 0.0;
    for i in 1..n {
        let len = xs[i] - xs[i - 1];
        l1 += abs_integral(len, ys[i - 1], ys[i]);
        sq += sq_integral(len, ys[i - 1], ys[i]);
    }
    Norms { sup, l1, l2: sq.sqrt() }
}

pub fn constant_norms(f: &PwConstant) -> Norms {
    let sup = f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !f.has_zero_tails() {
        return Norms { sup, l1: f64::INFINITY, l2: f64::INFINITY };
    }
    let mut l1 = 0.0;
    let mut sq = 0.0;
    for (lo, hi, v) in f.pieces() {
        if v != 0.0 {
            l1 += (hi - lo) * v.abs();
            sq += (hi - lo) * v * v;
        }
    }
    Norms { sup, l1, l2: sq.sqrt() }
}

/// Norms of `f - g`.
pub fn linear_distance(f: &PwLinear, g: &PwLinear) -> Norms {
    linear_norms(&f.sub(g))
}

/// Norms of `f - g`.
pub fn constant_distance(f: &PwConstant, g: &PwConstant) -> Norms {
    constant_norms(&f.combine(g, |a, b| a - b))
}

/// `sup |f - g|`, finite only when the tail slopes agree.
pub fn sup_distance(f: &PwLinear, g: &PwLinear) -> Result<f64> {
    if f.left_slope() != g.left_slope() || f.right_slope() != g.right_slope() {
        if (f.left_slope() - g.left_slope()).abs() > 1e-12 || (f.right_slope() - g.right_slope()).abs() > 1e-12 {
            return Err(Error::InfiniteNorm("tail slopes differ".into()));
        }
    }
    let grid = union_breakpoints(&[f.breakpoints(), g.breakpoints()]);
    Ok(grid.iter().fold(0.0f64, |m, &x| m.max((f.eval(x) - g.eval(x)).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_norms() {
        let f = PwLinear::new(vec![-1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]).unwrap();
        let n = linear_norms(&f);
        assert_eq!(n.sup, 1.0);
        assert!((n.l1 - 1.0).abs() < 1e-15);
        assert!((n.l2 - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sign_change_l1() {
        let f = PwLinear::new(vec![0.0, 2.0], vec![-1.0, 1.0]).unwrap();
        assert!(linear_norms(&f).l1.is_infinite());
        let g = PwLinear::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, -1.0, 1.0, 0.0]).unwrap();
        assert!((linear_norms(&g).l1 - 1.5).abs() < 1e-15);
    }

    #[test]
    fn constant_norms_of_indicator() {
        let f = PwConstant::indicator(0.0, 4.0, -0.5).unwrap();
        let n = constant_norms(&f);
        assert_eq!(n.l1, 2.0);
        assert_eq!(n.l2, 1.0);
        assert_eq!(n.sup, 0.5);
    }

    #[test]
    fn sup_distance_requires_matching_tails() {
        assert!(sup_distance(&PwLinear::identity(), &PwLinear::constant(0.0)).is_err());
        let d = sup_distance(&PwLinear::identity(), &PwLinear::identity().add(&PwLinear::constant(0.25))).unwrap();
        assert_eq!(d, 0.25);
    }
}
