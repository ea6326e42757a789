//! Verification checks turning identities and limits into pass/fail reports.

use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub mod bases;
pub mod elliptic;
pub mod interbasis;
pub mod limits;
pub mod rng;

pub use bases::{check_degeneracy, check_ode_residual, check_orthonormality, check_spectrum_identity, OrthoBasis};
pub use interbasis::{check_method_agreement, check_reconstruction, check_unitarity};
pub use limits::{check_limits, LimitCheck};
pub use rng::Lcg;

/// Outcome of one check. `passed` is exactly `max_error <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: Map<String, Value>,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: f64,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, parameters: Value, max_error: f64, tolerance: f64) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        CheckReport {
            check_name: check_name.into(),
            parameters,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
            runtime_ms: 0.0,
        }
    }
}

/// Runs `f` and stamps the elapsed wall time on the report it returns.
pub(crate) fn timed(f: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

/// Knobs shared by the suites.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SuiteOptions {
    /// Relative shift applied to the energy in ODE-residual and spectrum checks
    /// (zero in normal runs; a nonzero value must make the suite fail).
    pub perturb_energy: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Bases,
    Interbasis,
    Elliptic,
    Limits,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "bases" => Suite::Bases,
            "interbasis" => Suite::Interbasis,
            "elliptic" => Suite::Elliptic,
            "limits" => Suite::Limits,
            other => return Err(Error::Usage(format!("unknown suite `{other}`"))),
        })
    }
}

/// Runs the default checks of a suite in a fixed order.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    Ok(match suite {
        Suite::Bases => bases::default_suite(opts)?,
        Suite::Interbasis => interbasis::default_suite()?,
        Suite::Elliptic => elliptic::default_suite()?,
        Suite::Limits => limits::default_suite()?,
        Suite::All => {
            let mut v = bases::default_suite(opts)?;
            v.extend(interbasis::default_suite()?);
            v.extend(elliptic::default_suite()?);
            v.extend(limits::default_suite()?);
            v
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn passed_follows_tolerance() {
        let r = CheckReport::new("x", json!({"n": 1}), 1e-9, 1e-8);
        assert!(r.passed);
        assert!(!CheckReport::new("x", Value::Null, 2e-8, 1e-8).passed);
        assert!(!CheckReport::new("x", Value::Null, f64::NAN, 1e-8).passed);
    }

    #[test]
    fn suite_names() {
        assert_eq!("limits".parse::<Suite>().unwrap(), Suite::Limits);
        assert!(matches!("everything".parse::<Suite>(), Err(Error::Usage(_))));
    }
}
