//! Two-sided bounds for the quotient distances, which are infima over
//! relabellings, chains of states and admissible `ν`.

use serde::{Deserialize, Serialize};

use super::{check_alpha, metric_d, state_norm};
use crate::coordinates::{pi_normalize, relabel, validate_eulerian, EulerianState, LagrangianState, Relabelling};
use crate::error::{Error, Result};
use crate::pwl::{piece_midpoint, union_breakpoints, CumulativeMeasure, PwConstant, PwLinear};
use crate::transform::to_lagrangian;

/// Eligible parts beyond which only the two extreme `ν` choices are tried.
const MAX_PARTS: usize = 12;

/// Lower and upper bounds for a distance, with a description of what
/// realizes the upper bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricBracket {
    pub lower: f64,
    pub upper: f64,
    pub witness: String,
}

struct Search {
    value: f64,
    forward: usize,
    backward: usize,
}

/// Best `f` for `d(X_A, X_B • f)` and best `g` for `d(X_A • g, X_B)` over
/// `family`.
fn search(xa: &LagrangianState, xb: &LagrangianState, family: &[Relabelling]) -> Result<Search> {
    let mut fwd = (f64::INFINITY, 0);
    let mut bwd = (f64::INFINITY, 0);
    for (i, f) in family.iter().enumerate() {
        let d = metric_d(xa, &relabel(xb, f))?;
        if d < fwd.0 {
            fwd = (d, i);
        }
        let d = metric_d(&relabel(xa, f), xb)?;
        if d < bwd.0 {
            bwd = (d, i);
        }
    }
    Ok(Search { value: fwd.0 + bwd.0, forward: fwd.1, backward: bwd.1 })
}

/// Upper bound for `J(X_A, X_B)`: the best sum over the identity and
/// `candidates`.
pub fn j_upper(xa: &LagrangianState, xb: &LagrangianState, candidates: &[Relabelling]) -> Result<f64> {
    check_alpha(xa, xb)?;
    let mut family = vec![Relabelling::identity()];
    family.extend(candidates.iter().cloned());
    Ok(search(xa, xb, &family)?.value)
}

fn label_map(x: &LagrangianState) -> Result<Relabelling> {
    Relabelling::new(x.y.add(&x.h)).map_err(|e| Error::InvalidState(format!("y + H: {e}")))
}

/// Bracket for `d_F(X_A, X_B)`. A candidate `f` relates the given states,
/// `X_B • f ≈ X_A`; it is transported to the normalized representatives and
/// tried together with its inverse. The label maps `(y+H)⁻¹` that relate the
/// given states to their normalized forms are built into the transport, so
/// the bracket depends on the states only through `Π X_A`, `Π X_B` and the
/// candidates.
pub fn df_bracket(xa: &LagrangianState, xb: &LagrangianState, candidates: &[Relabelling]) -> Result<MetricBracket> {
    check_alpha(xa, xb)?;
    let (pa, pb) = (label_map(xa)?, label_map(xb)?);
    let (na, nb) = (pi_normalize(xa)?, pi_normalize(xb)?);
    let pa_inv = pa.inverse();

    let mut names = vec!["identity".to_string()];
    let mut family = vec![Relabelling::identity()];
    for (i, f) in candidates.iter().enumerate() {
        let k = pb.compose(f).compose(&pa_inv);
        names.push(format!("inverse of candidate {i}"));
        family.push(k.inverse());
        names.push(format!("candidate {i}"));
        family.push(k);
    }

    let s = search(&na, &nb, &family)?;
    let two_d = 2.0 * metric_d(&na, &nb)?;
    let (upper, witness) = if two_d < s.value {
        (two_d, "identity on both sides".to_string())
    } else {
        (s.value, format!("f = {}, g = {}", names[s.forward], names[s.backward]))
    };
    Ok(MetricBracket { lower: 0.4 * state_norm(&na, &nb), upper, witness })
}

/// Bracket for `d_D(Y₁, Y₂)`, the `d_F` distance of the Lagrangian images.
pub fn dd_bracket(y1: &EulerianState, y2: &EulerianState, candidates: &[Relabelling]) -> Result<MetricBracket> {
    df_bracket(&to_lagrangian(y1)?, &to_lagrangian(y2)?, candidates)
}

/// Eulerian data without the dissipation measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    pub u: PwLinear,
    pub mu: CumulativeMeasure,
}

impl ReducedState {
    pub fn of(y: &EulerianState) -> Self {
        ReducedState { u: y.u.clone(), mu: y.mu.clone() }
    }

    fn check(&self, alpha: f64, bound: f64) -> Result<()> {
        if alpha == 1.0 && self.mu.has_atoms() {
            return Err(Error::InvalidState("μ has an atom while α = 1".into()));
        }
        let mass = self.mu.total();
        if mass > bound + 1e-12 * (1.0 + bound) {
            return Err(Error::MassBound { mass, bound });
        }
        let rep = validate_eulerian(&EulerianState::new(self.u.clone(), self.mu.clone(), self.mu.clone(), alpha)?);
        if !rep.is_valid() {
            return Err(Error::InvalidState(rep.to_string()));
        }
        Ok(())
    }

    /// Pieces of the density grid where `ν` may exceed `μ`, and the number
    /// of atoms.
    fn eligible(&self) -> (Vec<f64>, Vec<usize>, usize) {
        let grid = union_breakpoints(&[self.u.breakpoints(), &self.mu.breakpoints()]);
        let d = self.mu.density();
        let pieces =
            (1..grid.len()).filter(|&i| d.eval(piece_midpoint(&grid, i)) > 0.0 && self.u.slope_at(piece_midpoint(&grid, i)) > 0.0).collect();
        (grid, pieces, self.mu.atoms().len())
    }

    /// The admissible `ν` with `dν = dμ / (1 − α)` on the chosen parts and
    /// `dν = dμ` elsewhere. Bit `k < pieces.len()` selects a piece, the
    /// following bits select atoms.
    fn with_nu(&self, alpha: f64, grid: &[f64], pieces: &[usize], mask: u64) -> Result<EulerianState> {
        let s = 1.0 / (1.0 - alpha);
        let d = self.mu.density();
        let mut vals = d.values_on(grid);
        for (k, &i) in pieces.iter().enumerate() {
            if mask >> k & 1 == 1 {
                vals[i] *= s;
            }
        }
        let atoms = self
            .mu
            .atoms()
            .iter()
            .enumerate()
            .map(|(j, &(x, m))| if mask >> (pieces.len() + j) & 1 == 1 { (x, m * s) } else { (x, m) })
            .collect();
        let nu = CumulativeMeasure::from_density(&PwConstant::new(grid.to_vec(), vals)?, atoms)?;
        EulerianState::new(self.u.clone(), self.mu.clone(), nu, alpha)
    }

    /// Lagrangian images of the `ν` candidates, each with its mask.
    fn candidates(&self, alpha: f64, exhaustive: bool) -> Result<Vec<(u64, LagrangianState)>> {
        let (grid, pieces, atoms) = self.eligible();
        let parts = pieces.len() + atoms;
        let masks: Vec<u64> = if alpha <= 0.0 || alpha >= 1.0 || parts == 0 {
            vec![0]
        } else if exhaustive {
            (0..1u64 << parts).collect()
        } else {
            vec![0, (1u64 << parts.min(63)) - 1]
        };
        masks.into_iter().map(|m| Ok((m, to_lagrangian(&self.with_nu(alpha, &grid, &pieces, m)?)?))).collect()
    }

    fn parts(&self, alpha: f64) -> usize {
        if alpha <= 0.0 || alpha >= 1.0 {
            return 0;
        }
        let (_, pieces, atoms) = self.eligible();
        pieces.len() + atoms
    }

    fn tails(&self) -> (f64, f64) {
        let v = self.u.values();
        (self.u.left_limit().unwrap_or(v[0]), self.u.right_limit().unwrap_or(v[v.len() - 1]))
    }
}

/// Bracket for `d_M(Ŷ_A, Ŷ_B)` over states with `μ(ℝ) ≤ mass_bound`
/// (default: the larger of the two totals).
///
/// The upper bound is the best `d_D` upper bound over pairs of admissible
/// `ν`. Because a chain may re-choose `ν` at every intermediate state, only
/// quantities fixed by `(u, μ)` survive along it; the lower bound uses the
/// tail values of `u` and the total energy, both controlled by `‖·‖`.
pub fn dm_bracket(
    a: &ReducedState,
    b: &ReducedState,
    alpha: f64,
    mass_bound: Option<f64>,
    candidates: &[Relabelling],
) -> Result<MetricBracket> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} is outside [0, 1]")));
    }
    let bound = mass_bound.unwrap_or(a.mu.total().max(b.mu.total()));
    a.check(alpha, bound)?;
    b.check(alpha, bound)?;

    let exhaustive = a.parts(alpha) + b.parts(alpha) <= MAX_PARTS;
    let ca = a.candidates(alpha, exhaustive)?;
    let cb = b.candidates(alpha, exhaustive)?;
    let mut best: Option<MetricBracket> = None;
    for (ma, xa) in &ca {
        for (mb, xb) in &cb {
            let br = df_bracket(xa, xb, candidates)?;
            if best.as_ref().is_none_or(|c| br.upper < c.upper) {
                best = Some(MetricBracket {
                    witness: format!("ν_A choice {ma:#b}, ν_B choice {mb:#b}; {}", br.witness),
                    ..br
                });
            }
        }
    }
    let best = best.expect("at least one candidate per side");

    let ((la, ra), (lb, rb)) = (a.tails(), b.tails());
    let lower = 0.4 * ((la - lb).abs().max((ra - rb).abs()) + (a.mu.total() - b.mu.total()).abs());
    Ok(MetricBracket { lower, upper: best.upper, witness: best.witness })
}
