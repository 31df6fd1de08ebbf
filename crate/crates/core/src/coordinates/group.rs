use super::LagrangianState;
use crate::error::{Error, Result};
use crate::pwl::PwLinear;

/// A strictly increasing piecewise-linear homeomorphism of ℝ with unit
/// tail slopes.
#[derive(Clone, Debug, PartialEq)]
pub struct Relabelling(PwLinear);

impl Relabelling {
    pub fn new(f: PwLinear) -> Result<Self> {
        if (f.left_slope() - 1.0).abs() > 1e-12 || (f.right_slope() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidRelabelling("tails must have slope 1".into()));
        }
        if let Some(s) = f.piece_slopes().into_iter().find(|&s| s <= 0.0) {
            return Err(Error::InvalidRelabelling(format!("piece with slope {s}")));
        }
        let f = PwLinear::with_tails(f.breakpoints().to_vec(), f.values().to_vec(), 1.0, 1.0)?;
        Ok(Relabelling(f))
    }

    pub fn identity() -> Self {
        Relabelling(PwLinear::identity())
    }

    pub fn as_fn(&self) -> &PwLinear {
        &self.0
    }

    pub fn eval(&self, xi: f64) -> f64 {
        self.0.eval(xi)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Relabelling) -> Relabelling {
        Relabelling(self.0.compose(&g.0).expect("relabellings are increasing"))
    }

    pub fn inverse(&self) -> Relabelling {
        Relabelling(self.0.inverse().expect("relabellings are invertible"))
    }

    /// Largest slope.
    pub fn max_slope(&self) -> f64 {
        self.0.max_slope()
    }
}

/// `X • f = (y∘f, U∘f, H∘f, V∘f)`.
pub fn relabel(x: &LagrangianState, f: &Relabelling) -> LagrangianState {
    let c = |g: &PwLinear| g.compose(f.as_fn()).expect("relabellings are increasing");
    LagrangianState { alpha: x.alpha, y: c(&x.y), u: c(&x.u), h: c(&x.h), v: c(&x.v) }
}

/// The representative `X • (y + H)⁻¹` with `y + H = id`.
pub fn pi_normalize(x: &LagrangianState) -> Result<LagrangianState> {
    let g = x.y.add(&x.h);
    let min = g.min_slope();
    if min <= 1e-12 {
        return Err(Error::InvalidState(format!("y + H has minimal slope {min}")));
    }
    let g = Relabelling::new(g).map_err(|e| Error::InvalidState(e.to_string()))?;
    Ok(relabel(x, &g.inverse()))
}
