//! Closed-form worked solutions used as golden references.
//!
//! Each example carries its initial data in both coordinate systems and a
//! set of branch tables: piecewise formulas in `(point, t)` valid on a
//! half-open spatial interval `lo < point ≤ hi` and a time span. Queries
//! outside every tabulated branch fail instead of extrapolating.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coordinates::{EulerianState, LagrangianState};
use crate::error::{Error, Result};
use crate::pwl::{CumulativeMeasure, PwConstant, PwLinear};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExampleId {
    /// Single decreasing ramp, identity labelling.
    RampIdentityLabel,
    /// Single decreasing ramp, normalized labelling.
    RampNormalizedLabel,
    /// Single ramp plus an initial concentration at `x = 2`.
    RampWithConcentration,
    /// Two ramps with `α = 1/3`, breaking once at `t = 2`.
    TwoRamps,
}

impl ExampleId {
    pub const ALL: [ExampleId; 4] = [
        ExampleId::RampIdentityLabel,
        ExampleId::RampNormalizedLabel,
        ExampleId::RampWithConcentration,
        ExampleId::TwoRamps,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleId::RampIdentityLabel => "ex_3_4_id_label",
            ExampleId::RampNormalizedLabel => "ex_3_4_L_label",
            ExampleId::RampWithConcentration => "ex_4_2",
            ExampleId::TwoRamps => "appendix_A1",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

/// Quantities with tabulated closed forms. Label-space fields take `ξ`,
/// physical-space fields take `x`; totals ignore the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Y,
    U,
    H,
    V,
    SmallU,
    MuCumulative,
    NuCumulative,
    MuTotal,
    NuTotal,
    MuDensity,
    /// Density of `ν − μ` on the rarefaction fan.
    FanDensity,
    /// Location of the unit atom of `ν − μ` when `α = 1`.
    NuExcessAtom,
}

impl Field {
    pub fn is_label_field(self) -> bool {
        matches!(self, Field::Y | Field::U | Field::H | Field::V)
    }
}

/// A time interval with optional endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeSpan {
    pub lo: f64,
    pub lo_closed: bool,
    pub hi: f64,
    pub hi_closed: bool,
}

impl TimeSpan {
    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = if self.hi_closed { t <= self.hi } else { t < self.hi };
        above && below
    }
}

const fn span(lo: f64, lo_closed: bool, hi: f64, hi_closed: bool) -> TimeSpan {
    TimeSpan { lo, lo_closed, hi, hi_closed }
}

const INF: f64 = f64::INFINITY;
const ALL_T: TimeSpan = span(0.0, true, INF, false);
const BEFORE_2: TimeSpan = span(0.0, true, 2.0, false);
const FROM_2: TimeSpan = span(2.0, true, INF, false);
const AT_2: TimeSpan = span(2.0, true, 2.0, true);
const AFTER_2: TimeSpan = span(2.0, false, INF, false);
const AT_0: TimeSpan = span(0.0, true, 0.0, true);
const OPEN_0_2: TimeSpan = span(0.0, false, 2.0, false);

type Formula = fn(f64, f64, f64) -> f64;

/// A branch endpoint, fixed or moving with `(t, α)`.
#[derive(Clone, Copy)]
enum Edge {
    At(f64),
    Moving(fn(f64, f64) -> f64),
}

impl Edge {
    fn at(self, t: f64, alpha: f64) -> f64 {
        match self {
            Edge::At(v) => v,
            Edge::Moving(f) => f(t, alpha),
        }
    }
}

use Edge::{At, Moving};

/// One tabulated case: `formula(point, t, α)` for `lo(t, α) < point ≤ hi(t, α)`.
#[derive(Clone, Copy)]
pub struct Branch {
    pub times: TimeSpan,
    lo: Edge,
    hi: Edge,
    formula: Formula,
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Branch").field("times", &self.times).finish_non_exhaustive()
    }
}

impl Branch {
    pub fn domain(&self, t: f64, alpha: f64) -> (f64, f64) {
        (self.lo.at(t, alpha), self.hi.at(t, alpha))
    }

    pub fn eval(&self, point: f64, t: f64, alpha: f64) -> f64 {
        (self.formula)(point, t, alpha)
    }

    pub fn covers(&self, point: f64, t: f64, alpha: f64) -> bool {
        let (lo, hi) = self.domain(t, alpha);
        self.times.contains(t) && lo < point && point <= hi
    }
}

fn b(times: TimeSpan, lo: Edge, hi: Edge, formula: Formula) -> Branch {
    Branch { times, lo, hi, formula }
}

#[derive(Clone, Debug)]
pub struct WorkedExample {
    pub id: ExampleId,
    pub alpha: f64,
    pub eulerian: EulerianState,
    /// Printed initial Lagrangian data.
    pub lagrangian: LagrangianState,
    tables: BTreeMap<Field, Vec<Branch>>,
}

impl WorkedExample {
    pub fn fields(&self) -> impl Iterator<Item = Field> + '_ {
        self.tables.keys().copied()
    }

    pub fn branches(&self, field: Field) -> &[Branch] {
        self.tables.get(&field).map_or(&[], |v| v.as_slice())
    }

    /// Evaluates the tabulated formula for `field` at `(point, t)`.
    pub fn reference_eval(&self, field: Field, point: f64, t: f64) -> Result<f64> {
        self.branches(field)
            .iter()
            .find(|br| br.covers(point, t, self.alpha))
            .map(|br| br.eval(point, t, self.alpha))
            .ok_or_else(|| {
                Error::OutOfCoverage(format!("{} has no {field:?} branch at point {point}, t = {t}", self.id))
            })
    }
}

/// Builds a worked example; only the concentration example accepts an `α`.
pub fn build_example(id: ExampleId, alpha_override: Option<f64>) -> Result<WorkedExample> {
    if let Some(a) = alpha_override {
        if id != ExampleId::RampWithConcentration {
            return Err(Error::InvalidParameter(format!("{id} has a fixed alpha")));
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidParameter(format!("alpha = {a} is outside [0, 1]")));
        }
    }
    Ok(match id {
        ExampleId::RampIdentityLabel => ramp_identity(),
        ExampleId::RampNormalizedLabel => ramp_normalized(),
        ExampleId::RampWithConcentration => concentration(alpha_override.unwrap_or(0.5)),
        ExampleId::TwoRamps => two_ramps(),
    })
}

fn lin(xs: &[f64], ys: &[f64]) -> PwLinear {
    PwLinear::new(xs.to_vec(), ys.to_vec()).expect("tabulated data")
}

fn lin1(xs: &[f64], ys: &[f64]) -> PwLinear {
    PwLinear::with_tails(xs.to_vec(), ys.to_vec(), 1.0, 1.0).expect("tabulated data")
}

fn density(xs: &[f64], vals: &[f64], atoms: Vec<(f64, f64)>) -> CumulativeMeasure {
    CumulativeMeasure::from_density(&PwConstant::new(xs.to_vec(), vals.to_vec()).expect("tabulated data"), atoms)
        .expect("tabulated data")
}

fn ramp_u0() -> PwLinear {
    lin(&[0.0, 1.0], &[1.0, 0.0])
}

fn ramp_eulerian(alpha: f64) -> EulerianState {
    let m = density(&[0.0, 1.0], &[0.0, 1.0, 0.0], vec![]);
    EulerianState::new(ramp_u0(), m.clone(), m, alpha).expect("alpha in range")
}

/// `u(x, t)` of the single ramp for `t < 2`, shared by both labellings.
fn ramp_small_u() -> Vec<Branch> {
    vec![
        b(BEFORE_2, At(-INF), Moving(|t, _| t - t * t / 8.0), |_, t, _| 1.0 - t / 4.0),
        b(BEFORE_2, Moving(|t, _| t - t * t / 8.0), Moving(|t, _| 1.0 + t * t / 8.0), |x, t, _| (-4.0 - t + 4.0 * x) / (2.0 * (t - 2.0))),
        b(BEFORE_2, Moving(|t, _| 1.0 + t * t / 8.0), At(INF), |_, t, _| t / 4.0),
    ]
}

fn ramp_identity() -> WorkedExample {
    let alpha = 1.0;
    let v = lin(&[0.0, 1.0], &[0.0, 1.0]);
    let lagrangian = LagrangianState::new(PwLinear::identity(), ramp_u0(), v.clone(), v, alpha).expect("alpha in range");
    let v_table = vec![
        b(BEFORE_2, At(-INF), At(0.0), |_, _, _| 0.0),
        b(BEFORE_2, At(0.0), At(1.0), |xi, _, _| xi),
        b(BEFORE_2, At(1.0), At(INF), |_, _, _| 1.0),
    ];
    let mut tables = BTreeMap::new();
    tables.insert(Field::H, v_table.clone());
    tables.insert(Field::V, v_table);
    tables.insert(
        Field::U,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |_, t, _| 1.0 - t / 4.0),
            b(BEFORE_2, At(0.0), At(1.0), |xi, t, _| 1.0 - t / 4.0 + (t - 2.0) / 2.0 * xi),
            b(BEFORE_2, At(1.0), At(INF), |_, t, _| t / 4.0),
        ],
    );
    tables.insert(
        Field::Y,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |xi, t, _| t - t * t / 8.0 + xi),
            b(BEFORE_2, At(0.0), At(1.0), |xi, t, _| t - t * t / 8.0 + (t - 2.0) * (t - 2.0) / 4.0 * xi),
            b(BEFORE_2, At(1.0), At(INF), |xi, t, _| t * t / 8.0 + xi),
        ],
    );
    tables.insert(Field::SmallU, ramp_small_u());
    WorkedExample { id: ExampleId::RampIdentityLabel, alpha, eulerian: ramp_eulerian(alpha), lagrangian, tables }
}

fn ramp_normalized() -> WorkedExample {
    let alpha = 1.0;
    let v = lin(&[0.0, 2.0], &[0.0, 1.0]);
    let lagrangian = LagrangianState::new(lin1(&[0.0, 2.0], &[0.0, 1.0]), lin(&[0.0, 2.0], &[1.0, 0.0]), v.clone(), v, alpha)
        .expect("alpha in range");
    let v_table = vec![
        b(BEFORE_2, At(-INF), At(0.0), |_, _, _| 0.0),
        b(BEFORE_2, At(0.0), At(2.0), |xi, _, _| xi / 2.0),
        b(BEFORE_2, At(2.0), At(INF), |_, _, _| 1.0),
    ];
    let mut tables = BTreeMap::new();
    tables.insert(Field::H, v_table.clone());
    tables.insert(Field::V, v_table);
    tables.insert(
        Field::U,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |_, t, _| 1.0 - t / 4.0),
            b(BEFORE_2, At(0.0), At(2.0), |xi, t, _| 1.0 - t / 4.0 + (t - 2.0) / 4.0 * xi),
            b(BEFORE_2, At(2.0), At(INF), |_, t, _| t / 4.0),
        ],
    );
    tables.insert(
        Field::Y,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |xi, t, _| t - t * t / 8.0 + xi),
            b(BEFORE_2, At(0.0), At(2.0), |xi, t, _| t - t * t / 8.0 + (t - 2.0) * (t - 2.0) / 8.0 * xi),
            b(BEFORE_2, At(2.0), At(INF), |xi, t, _| -1.0 + t * t / 8.0 + xi),
        ],
    );
    tables.insert(Field::SmallU, ramp_small_u());
    WorkedExample { id: ExampleId::RampNormalizedLabel, alpha, eulerian: ramp_eulerian(alpha), lagrangian, tables }
}

fn fan_lo(t: f64, a: f64) -> f64 {
    2.0 + a * t * t / 8.0
}
fn fan_hi(t: f64, a: f64) -> f64 {
    2.0 + (2.0 - a) * t * t / 8.0
}
fn ramp_lo(t: f64, a: f64) -> f64 {
    t - (2.0 - a) * t * t / 8.0
}
fn ramp_hi(t: f64, a: f64) -> f64 {
    1.0 + a * t * t / 8.0
}

fn concentration(alpha: f64) -> WorkedExample {
    let nu = density(&[0.0, 1.0], &[0.0, 1.0, 0.0], vec![(2.0, 1.0)]);
    let mu = density(&[0.0, 1.0], &[0.0, 1.0, 0.0], vec![(2.0, 1.0 - alpha)]);
    let eulerian = EulerianState::new(ramp_u0(), mu, nu, alpha).expect("alpha in range");
    let grid = [0.0, 2.0, 3.0, 4.0];
    let lagrangian = LagrangianState::new(
        lin1(&grid, &[0.0, 1.0, 2.0, 2.0]),
        lin(&[0.0, 2.0], &[1.0, 0.0]),
        lin(&grid, &[0.0, 1.0, 1.0, 2.0]),
        lin(&grid, &[0.0, 1.0, 1.0, 2.0 - alpha]),
        alpha,
    )
    .expect("alpha in range");

    let mut tables = BTreeMap::new();
    tables.insert(
        Field::H,
        vec![
            b(ALL_T, At(-INF), At(0.0), |_, _, _| 0.0),
            b(ALL_T, At(0.0), At(2.0), |xi, _, _| xi / 2.0),
            b(ALL_T, At(2.0), At(3.0), |_, _, _| 1.0),
            b(ALL_T, At(3.0), At(4.0), |xi, _, _| -2.0 + xi),
            b(ALL_T, At(4.0), At(INF), |_, _, _| 2.0),
        ],
    );
    tables.insert(
        Field::V,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |_, _, _| 0.0),
            b(BEFORE_2, At(0.0), At(2.0), |xi, _, _| xi / 2.0),
            b(BEFORE_2, At(2.0), At(3.0), |_, _, _| 1.0),
            b(BEFORE_2, At(3.0), At(4.0), |xi, _, a| -2.0 + 3.0 * a + (1.0 - a) * xi),
            b(BEFORE_2, At(4.0), At(INF), |_, _, a| 2.0 - a),
        ],
    );
    tables.insert(
        Field::U,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |_, t, a| 1.0 - (2.0 - a) * t / 4.0),
            b(BEFORE_2, At(0.0), At(2.0), |xi, t, a| 1.0 - (2.0 - a) * t / 4.0 + (t - 2.0) * xi / 4.0),
            b(BEFORE_2, At(2.0), At(3.0), |_, t, a| a * t / 4.0),
            b(BEFORE_2, At(3.0), At(4.0), |xi, t, a| -(6.0 - 7.0 * a) * t / 4.0 + (1.0 - a) * t * xi / 2.0),
            b(BEFORE_2, At(4.0), At(INF), |_, t, a| (2.0 - a) * t / 4.0),
        ],
    );
    tables.insert(
        Field::Y,
        vec![
            b(BEFORE_2, At(-INF), At(0.0), |xi, t, a| t - (2.0 - a) * t * t / 8.0 + xi),
            b(BEFORE_2, At(0.0), At(2.0), |xi, t, a| {
                t - (2.0 - a) * t * t / 8.0 + (t - 2.0) * (t - 2.0) * xi / 8.0
            }),
            b(BEFORE_2, At(2.0), At(3.0), |xi, t, a| -1.0 + a * t * t / 8.0 + xi),
            b(BEFORE_2, At(3.0), At(4.0), |xi, t, a| {
                2.0 - (6.0 - 7.0 * a) * t * t / 8.0 + (1.0 - a) * t * t * xi / 4.0
            }),
            b(BEFORE_2, At(4.0), At(INF), |xi, t, a| -2.0 + (2.0 - a) * t * t / 8.0 + xi),
        ],
    );
    tables.insert(
        Field::SmallU,
        vec![
            b(AT_0, At(-INF), At(0.0), |_, _, _| 1.0),
            b(AT_0, At(0.0), At(1.0), |x, _, _| 1.0 - x),
            b(AT_0, At(1.0), At(INF), |_, _, _| 0.0),
            b(OPEN_0_2, At(-INF), Moving(ramp_lo), |_, t, a| 1.0 - (2.0 - a) * t / 4.0),
            b(OPEN_0_2, Moving(ramp_lo), Moving(ramp_hi), |x, t, a| (-4.0 - a * t + 4.0 * x) / (2.0 * (t - 2.0))),
            b(OPEN_0_2, Moving(ramp_hi), Moving(fan_lo), |_, t, a| a * t / 4.0),
            b(OPEN_0_2, Moving(fan_lo), Moving(fan_hi), |x, t, _| (2.0 * x - 4.0) / t),
            b(OPEN_0_2, Moving(fan_hi), At(INF), |_, t, a| (2.0 - a) * t / 4.0),
        ],
    );
    tables.insert(
        Field::MuDensity,
        vec![
            b(OPEN_0_2, At(-INF), Moving(ramp_lo), |_, _, _| 0.0),
            b(OPEN_0_2, Moving(ramp_lo), Moving(ramp_hi), |_, t, _| 4.0 / ((t - 2.0) * (t - 2.0))),
            b(OPEN_0_2, Moving(ramp_hi), Moving(fan_lo), |_, _, _| 0.0),
            b(OPEN_0_2, Moving(fan_lo), Moving(fan_hi), |_, t, _| 4.0 / (t * t)),
            b(OPEN_0_2, Moving(fan_hi), At(INF), |_, _, _| 0.0),
        ],
    );
    if alpha < 1.0 {
        tables.insert(
            Field::FanDensity,
            vec![
                b(OPEN_0_2, At(-INF), Moving(fan_lo), |_, _, _| 0.0),
                b(OPEN_0_2, Moving(fan_lo), Moving(fan_hi), |_, t, a| 4.0 * a / ((1.0 - a) * t * t)),
                b(OPEN_0_2, Moving(fan_hi), At(INF), |_, _, _| 0.0),
            ],
        );
    } else {
        tables.insert(Field::NuExcessAtom, vec![b(OPEN_0_2, At(-INF), At(INF), |_, t, _| 2.0 + t * t / 8.0)]);
    }
    WorkedExample { id: ExampleId::RampWithConcentration, alpha, eulerian, lagrangian, tables }
}

fn left_edge_before(t: f64, _: f64) -> f64 {
    -2.0 + t - t * t / 4.0
}
fn right_edge_before(t: f64, _: f64) -> f64 {
    2.0 - t + t * t / 4.0
}
fn left_edge_after(t: f64, _: f64) -> f64 {
    -5.0 / 3.0 + 2.0 * t / 3.0 - t * t / 6.0
}
fn right_edge_after(t: f64, _: f64) -> f64 {
    5.0 / 3.0 - 2.0 * t / 3.0 + t * t / 6.0
}

fn two_ramps() -> WorkedExample {
    let alpha = 1.0 / 3.0;
    let u0 = lin(&[-2.0, -1.0, 1.0, 2.0], &[1.0, 0.0, 0.0, -1.0]);
    let m = density(&[-2.0, -1.0, 1.0, 2.0], &[0.0, 1.0, 0.0, 1.0, 0.0], vec![]);
    let eulerian = EulerianState::new(u0, m.clone(), m, alpha).expect("alpha in range");
    let grid = [-2.0, 0.0, 2.0, 4.0];
    let hv = lin(&grid, &[0.0, 1.0, 1.0, 2.0]);
    let lagrangian = LagrangianState::new(
        lin1(&grid, &[-2.0, -1.0, 1.0, 2.0]),
        lin(&grid, &[1.0, 0.0, 0.0, -1.0]),
        hv.clone(),
        hv,
        alpha,
    )
    .expect("alpha in range");

    let pieces = [(-INF, -2.0), (-2.0, 0.0), (0.0, 2.0), (2.0, 4.0), (4.0, INF)];
    let table = |times: TimeSpan, fs: [Formula; 5]| -> Vec<Branch> {
        pieces.iter().zip(fs).map(|(&(lo, hi), f)| b(times, At(lo), At(hi), f)).collect()
    };

    let mut tables = BTreeMap::new();
    let h_formulas: [Formula; 5] = [|_, _, _| 0.0, |xi, _, _| 1.0 + xi / 2.0, |_, _, _| 1.0, |xi, _, _| xi / 2.0, |_, _, _| 2.0];
    tables.insert(Field::H, table(ALL_T, h_formulas));
    let mut v = table(BEFORE_2, h_formulas);
    v.extend(table(
        FROM_2,
        [|_, _, _| 0.0, |xi, _, _| 2.0 / 3.0 + xi / 3.0, |_, _, _| 2.0 / 3.0, |xi, _, _| xi / 3.0, |_, _, _| 4.0 / 3.0],
    ));
    tables.insert(Field::V, v);

    let mut y = table(
        BEFORE_2,
        [
            |xi, t, _| t - t * t / 4.0 + xi,
            |xi, t, _| -1.0 + (t - 2.0) * (t - 2.0) / 8.0 * xi,
            |xi, _, _| -1.0 + xi,
            |xi, t, _| t - t * t / 4.0 + (t - 2.0) * (t - 2.0) / 8.0 * xi,
            |xi, t, _| -2.0 - t + t * t / 4.0 + xi,
        ],
    );
    y.extend(table(
        FROM_2,
        [
            |xi, t, _| 1.0 / 3.0 + 2.0 * t / 3.0 - t * t / 6.0 + xi,
            |xi, t, _| -1.0 + (t - 2.0) * (t - 2.0) / 12.0 * xi,
            |xi, _, _| -1.0 + xi,
            |xi, t, _| 1.0 / 3.0 + 2.0 * t / 3.0 - t * t / 6.0 + (t - 2.0) * (t - 2.0) / 12.0 * xi,
            |xi, t, _| -7.0 / 3.0 - 2.0 * t / 3.0 + t * t / 6.0 + xi,
        ],
    ));
    tables.insert(Field::Y, y);

    let mut u = table(
        BEFORE_2,
        [
            |_, t, _| 1.0 - t / 2.0,
            |xi, t, _| (t - 2.0) / 4.0 * xi,
            |_, _, _| 0.0,
            |xi, t, _| 1.0 - t / 2.0 + (t - 2.0) / 4.0 * xi,
            |_, t, _| -1.0 + t / 2.0,
        ],
    );
    u.extend(table(
        FROM_2,
        [
            |_, t, _| 2.0 / 3.0 - t / 3.0,
            |xi, t, _| (t - 2.0) / 6.0 * xi,
            |_, _, _| 0.0,
            |xi, t, _| 2.0 / 3.0 - t / 3.0 + (t - 2.0) / 6.0 * xi,
            |_, t, _| -2.0 / 3.0 + t / 3.0,
        ],
    ));
    tables.insert(Field::U, u);

    tables.insert(
        Field::SmallU,
        vec![
            b(BEFORE_2, At(-INF), Moving(left_edge_before), |_, t, _| 1.0 - t / 2.0),
            b(BEFORE_2, Moving(left_edge_before), At(-1.0), |x, t, _| (2.0 + 2.0 * x) / (t - 2.0)),
            b(BEFORE_2, At(-1.0), At(1.0), |_, _, _| 0.0),
            b(BEFORE_2, At(1.0), Moving(right_edge_before), |x, t, _| (-2.0 + 2.0 * x) / (t - 2.0)),
            b(BEFORE_2, Moving(right_edge_before), At(INF), |_, t, _| -1.0 + t / 2.0),
            b(AT_2, At(-INF), At(INF), |_, _, _| 0.0),
            b(AFTER_2, At(-INF), Moving(left_edge_after), |_, t, _| 2.0 / 3.0 - t / 3.0),
            b(AFTER_2, Moving(left_edge_after), At(-1.0), |x, t, _| (2.0 + 2.0 * x) / (t - 2.0)),
            b(AFTER_2, At(-1.0), At(1.0), |_, _, _| 0.0),
            b(AFTER_2, At(1.0), Moving(right_edge_after), |x, t, _| (-2.0 + 2.0 * x) / (t - 2.0)),
            b(AFTER_2, Moving(right_edge_after), At(INF), |_, t, _| -2.0 / 3.0 + t / 3.0),
        ],
    );

    let before = || -> Vec<Branch> {
        vec![
            b(BEFORE_2, At(-INF), Moving(left_edge_before), |_, _, _| 0.0),
            b(BEFORE_2, Moving(left_edge_before), At(-1.0), |x, t, _| 1.0 + (4.0 + 4.0 * x) / ((t - 2.0) * (t - 2.0))),
            b(BEFORE_2, At(-1.0), At(1.0), |_, _, _| 1.0),
            b(BEFORE_2, At(1.0), Moving(right_edge_before), |x, t, _| 1.0 + (-4.0 + 4.0 * x) / ((t - 2.0) * (t - 2.0))),
            b(BEFORE_2, Moving(right_edge_before), At(INF), |_, _, _| 2.0),
        ]
    };
    let mut mu = before();
    mu.extend([
        b(AT_2, At(-INF), At(-1.0), |_, _, _| 0.0),
        b(AT_2, At(-1.0), At(1.0), |_, _, _| 2.0 / 3.0),
        b(AT_2, At(1.0), At(INF), |_, _, _| 4.0 / 3.0),
        b(AFTER_2, At(-INF), Moving(left_edge_after), |_, _, _| 0.0),
        b(AFTER_2, Moving(left_edge_after), At(-1.0), |x, t, _| 2.0 / 3.0 + (4.0 + 4.0 * x) / ((t - 2.0) * (t - 2.0))),
        b(AFTER_2, At(-1.0), At(1.0), |_, _, _| 2.0 / 3.0),
        b(AFTER_2, At(1.0), Moving(right_edge_after), |x, t, _| 2.0 / 3.0 + (-4.0 + 4.0 * x) / ((t - 2.0) * (t - 2.0))),
        b(AFTER_2, Moving(right_edge_after), At(INF), |_, _, _| 4.0 / 3.0),
    ]);
    tables.insert(Field::MuCumulative, mu);

    let mut nu = before();
    nu.extend([
        b(AT_2, At(-INF), At(-1.0), |_, _, _| 0.0),
        b(AT_2, At(-1.0), At(1.0), |_, _, _| 1.0),
        b(AT_2, At(1.0), At(INF), |_, _, _| 2.0),
        b(AFTER_2, At(-INF), Moving(left_edge_after), |_, _, _| 0.0),
        b(AFTER_2, Moving(left_edge_after), At(-1.0), |x, t, _| 1.0 + (6.0 + 6.0 * x) / ((t - 2.0) * (t - 2.0))),
        b(AFTER_2, At(-1.0), At(1.0), |_, _, _| 1.0),
        b(AFTER_2, At(1.0), Moving(right_edge_after), |x, t, _| 1.0 + (-6.0 + 6.0 * x) / ((t - 2.0) * (t - 2.0))),
        b(AFTER_2, Moving(right_edge_after), At(INF), |_, _, _| 2.0),
    ]);
    tables.insert(Field::NuCumulative, nu);

    tables.insert(
        Field::MuTotal,
        vec![b(BEFORE_2, At(-INF), At(INF), |_, _, _| 2.0), b(FROM_2, At(-INF), At(INF), |_, _, _| 4.0 / 3.0)],
    );
    tables.insert(Field::NuTotal, vec![b(ALL_T, At(-INF), At(INF), |_, _, _| 2.0)]);

    WorkedExample { id: ExampleId::TwoRamps, alpha, eulerian, lagrangian, tables }
}
