//! Scenario and snapshot files.
//!
//! A scenario names an initial state in one of three forms. Snapshots written
//! by `run` use the same layout with the time attached, so any snapshot can
//! be fed back in as a scenario.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use alpha_hs::coordinates::{validate_eulerian, validate_lagrangian, EulerianState, LagrangianState, ValidationReport};
use alpha_hs::pwl::{CumulativeMeasure, PwLinear};
use alpha_hs::reference_cases::{build_example, ExampleId};
use alpha_hs::transform::to_lagrangian;
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    /// Required for explicit data; optional for worked examples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Time the state was taken at. Informational; evolution restarts at 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub initial: Initial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Initial {
    Eulerian {
        u: PwLinear,
        mu: CumulativeMeasure,
        nu: CumulativeMeasure,
    },
    Lagrangian {
        y: PwLinear,
        #[serde(rename = "U")]
        u: PwLinear,
        #[serde(rename = "H")]
        h: PwLinear,
        #[serde(rename = "V")]
        v: PwLinear,
    },
    PaperExample {
        id: String,
    },
}

impl Scenario {
    pub fn from_eulerian(e: &EulerianState, t: Option<f64>) -> Self {
        Scenario {
            alpha: Some(e.alpha),
            t,
            initial: Initial::Eulerian { u: e.u.clone(), mu: e.mu.clone(), nu: e.nu.clone() },
        }
    }

    pub fn from_lagrangian(x: &LagrangianState, t: Option<f64>) -> Self {
        Scenario {
            alpha: Some(x.alpha),
            t,
            initial: Initial::Lagrangian { y: x.y.clone(), u: x.u.clone(), h: x.h.clone(), v: x.v.clone() },
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(self).expect("scenario serializes");
        fs::write(path, text).map_err(|e| Failure::io(path, e))
    }
}

pub fn read(path: &Path) -> Result<Scenario, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// A scenario turned into states, with the reports of every check applied.
pub struct Loaded {
    pub lagrangian: Option<LagrangianState>,
    pub reports: Vec<(&'static str, ValidationReport)>,
}

impl Loaded {
    pub fn is_valid(&self) -> bool {
        self.reports.iter().all(|(_, r)| r.is_valid())
    }

    /// The Lagrangian initial state, or a validation failure listing every
    /// violated clause.
    pub fn into_lagrangian(self) -> Result<LagrangianState, Failure> {
        if !self.is_valid() {
            return Err(Failure::Validation(self.describe()));
        }
        self.lagrangian.ok_or_else(|| Failure::Internal("valid scenario without a Lagrangian form".into()))
    }

    pub fn describe(&self) -> String {
        self.reports.iter().map(|(name, r)| format!("{name}: {r}")).collect::<Vec<_>>().join("")
    }
}

fn alpha_of(s: &Scenario, alpha_override: Option<f64>) -> Result<f64, Failure> {
    let a = alpha_override
        .or(s.alpha)
        .ok_or_else(|| Failure::Invalid("explicit initial data needs an `alpha`".into()))?;
    if !(0.0..=1.0).contains(&a) {
        return Err(Failure::Invalid(format!("alpha = {a} is outside [0, 1]")));
    }
    Ok(a)
}

/// Builds and checks the states of a scenario. Malformed data is `Invalid`;
/// well-formed data outside the state sets comes back with failing reports.
pub fn load(s: &Scenario, alpha_override: Option<f64>) -> Result<Loaded, Failure> {
    match &s.initial {
        Initial::Eulerian { u, mu, nu } => {
            let alpha = alpha_of(s, alpha_override)?;
            let e = EulerianState::new(u.clone(), mu.clone(), nu.clone(), alpha).map_err(Failure::invalid)?;
            let report = validate_eulerian(&e);
            let lagrangian = if report.is_valid() { Some(to_lagrangian(&e).map_err(Failure::invalid)?) } else { None };
            Ok(Loaded { lagrangian, reports: vec![("eulerian", report)] })
        }
        Initial::Lagrangian { y, u, h, v } => {
            let alpha = alpha_of(s, alpha_override)?;
            let x = LagrangianState::new(y.clone(), u.clone(), h.clone(), v.clone(), alpha).map_err(Failure::invalid)?;
            let report = validate_lagrangian(&x, false);
            Ok(Loaded { lagrangian: Some(x), reports: vec![("lagrangian", report)] })
        }
        Initial::PaperExample { id } => {
            let id = ExampleId::from_str(id).map_err(Failure::invalid)?;
            let natural = build_example(id, None).map_err(Failure::invalid)?.alpha;
            // Only a differing α counts as an override, so fixed-α examples
            // accept their own value.
            let requested = alpha_override.or(s.alpha).filter(|&a| a != natural);
            let ex = build_example(id, requested).map_err(Failure::invalid)?;
            let reports = vec![
                ("eulerian", validate_eulerian(&ex.eulerian)),
                ("lagrangian", validate_lagrangian(&ex.lagrangian, false)),
            ];
            Ok(Loaded { lagrangian: Some(ex.lagrangian), reports })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_reference_parses() {
        let s: Scenario = serde_json::from_str(r#"{"initial": {"kind": "paper_example", "id": "appendix_A1"}}"#).unwrap();
        let l = load(&s, None).unwrap();
        assert!(l.is_valid());
        assert_eq!(l.lagrangian.unwrap().alpha, 1.0 / 3.0);
    }

    #[test]
    fn fixed_alpha_examples_reject_a_different_alpha() {
        let s: Scenario =
            serde_json::from_str(r#"{"alpha": 0.5, "initial": {"kind": "paper_example", "id": "appendix_A1"}}"#).unwrap();
        assert!(matches!(load(&s, None), Err(Failure::Invalid(_))));
    }

    #[test]
    fn explicit_data_requires_alpha() {
        let s: Scenario = serde_json::from_str(
            r#"{"initial": {"kind": "eulerian", "u": {"breakpoints": [0], "values": [0]},
                "mu": {"breakpoints": [], "values": []}, "nu": {"breakpoints": [], "values": []}}}"#,
        )
        .unwrap_or_else(|e| panic!("{e}"));
        assert!(matches!(load(&s, None), Err(Failure::Invalid(_))));
    }

    #[test]
    fn snapshots_round_trip() {
        let x = build_example(ExampleId::TwoRamps, None).unwrap().lagrangian;
        let s = Scenario::from_lagrangian(&x, Some(1.5));
        let back: Scenario = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back.t, Some(1.5));
        assert_eq!(load(&back, None).unwrap().lagrangian.unwrap(), x);
    }
}
