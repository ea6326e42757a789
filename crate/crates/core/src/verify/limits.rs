//! Convergence toward the flat-space and free-motion limits.
//!
//! A limit check evaluates an error at every point of a schedule and folds
//! three requirements into one score: the final error is below the kind's
//! tolerance, errors shrink along the schedule (a factor-3 rise is tolerated,
//! and pairs already below `TREND_FLOOR` are ignored) and, for kinds with a
//! known rate, the per-decade improvement stays in the stated window. Each
//! requirement maps to a ratio that is at most 1 when satisfied. The report
//! carries the largest ratio against tolerance 1 and the raw errors in its
//! parameters.

use std::str::FromStr;

use serde_json::json;

use super::{timed, CheckReport};
use crate::bases::limits::{limit_reference, LimitKind, LimitQN};
use crate::bases::params::{energy, OscillatorParams};
use crate::bases::qn::{CylindricalQN, SphericalQN};
use crate::bases::wave::{cyl_k, cyl_phi, quasiradial_z};
use crate::error::{domain, Error, Result};
use crate::interbasis::{w_limit, w_via_4f3, WLimitKind};

const MONOTONE_SLACK: f64 = 3.0;
const TREND_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitCheck {
    /// `E_N → ħω(N + 3/2)` as `R` grows; schedule in `R`.
    FlatEnergy,
    /// `W` against its Clebsch–Gordan flat form; schedule in `ν`.
    FlatW,
    /// `W` against its Racah free-motion form; schedule in `ν`, descending to 0.
    FreeW,
    /// Basis functions against the flat oscillator; schedule in `R`.
    FlatBasis,
    /// Basis functions against free motion on the sphere; schedule in `ν`, descending to 0.
    FreeBasis,
}

impl FromStr for LimitCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "flat_energy" => LimitCheck::FlatEnergy,
            "flat_w" => LimitCheck::FlatW,
            "free_w" => LimitCheck::FreeW,
            "flat_basis" => LimitCheck::FlatBasis,
            "free_basis" => LimitCheck::FreeBasis,
            other => return Err(Error::Usage(format!("unknown limit check `{other}`"))),
        })
    }
}

impl LimitCheck {
    pub fn name(self) -> &'static str {
        match self {
            LimitCheck::FlatEnergy => "flat_energy",
            LimitCheck::FlatW => "flat_w",
            LimitCheck::FreeW => "free_w",
            LimitCheck::FlatBasis => "flat_basis",
            LimitCheck::FreeBasis => "free_basis",
        }
    }

    /// Tolerance on the error at the last schedule point.
    pub fn tolerance(self) -> f64 {
        match self {
            LimitCheck::FlatEnergy => 1e-3,
            LimitCheck::FlatW => 5e-3,
            LimitCheck::FreeW | LimitCheck::FreeBasis => 1e-10,
            LimitCheck::FlatBasis => 1e-3,
        }
    }

    /// Admissible window for the per-decade error ratio, if the rate is known.
    pub fn rate_window(self) -> Option<(f64, f64)> {
        match self {
            LimitCheck::FlatEnergy => Some((100.0 / 3.0, 300.0)),
            LimitCheck::FlatW => Some((3.0, 30.0)),
            _ => None,
        }
    }

    pub fn default_schedule(self) -> Vec<f64> {
        match self {
            LimitCheck::FlatEnergy => vec![1e2, 1e3],
            LimitCheck::FlatW => vec![1e4, 1e5, 1e6],
            LimitCheck::FreeW | LimitCheck::FreeBasis => vec![1e-2, 1e-4, 0.0],
            LimitCheck::FlatBasis => vec![1e1, 1e2, 1e3],
        }
    }

    /// Free kinds approach ν = 0 from above, all others grow.
    fn descending(self) -> bool {
        matches!(self, LimitCheck::FreeW | LimitCheck::FreeBasis)
    }
}

const FLAT_W_N_MAX: u32 = 6;
const FREE_W_N_MAX: u32 = 8;
const FLAT_ENERGY_N_MAX: u32 = 10;
const BASIS_N_MAX: u32 = 4;
const BASIS_GRID: usize = 41;

fn each_pair(n_max: u32, mut f: impl FnMut(u32, u32, i32, u32) -> Result<()>) -> Result<()> {
    for n in 0..=n_max {
        for m in -(n as i32)..=(n as i32) {
            let am = m.unsigned_abs();
            for l in (am..=n).filter(|l| (n - l) % 2 == 0) {
                for n3 in (0..=n - am).filter(|k| (n - am - k) % 2 == 0) {
                    f(n, l, m, n3)?;
                }
            }
        }
    }
    Ok(())
}

fn w_error(kind: WLimitKind, n_max: u32, nu: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    each_pair(n_max, |n, l, m, n3| {
        worst = worst.max((w_via_4f3(n, l, m, n3, nu)? - w_limit(kind, n, l, m, n3)?).abs());
        Ok(())
    })?;
    Ok(worst)
}

fn flat_energy_error(r: f64) -> Result<f64> {
    let p = OscillatorParams::new(r, 1.0, 1.0, 1.0)?;
    let mut worst: f64 = 0.0;
    for n in 0..=FLAT_ENERGY_N_MAX {
        let flat = p.hbar() * p.omega() * (n as f64 + 1.5);
        worst = worst.max((energy(n, &p) - flat).abs() / flat);
    }
    Ok(worst)
}

fn grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..BASIS_GRID).map(move |i| lo + (hi - lo) * i as f64 / (BASIS_GRID - 1) as f64)
}

/// Rescaled sphere functions against the flat oscillator with `λ = 1` on
/// `r, ρ ∈ [0, 5]` and `z ∈ [−5, 5]`.
fn flat_basis_error(r: f64) -> Result<f64> {
    let p = OscillatorParams::new(r, 1.0, 1.0, 1.0)?;
    let nu = p.nu();
    let mut worst: f64 = 0.0;
    for n in 0..=BASIS_N_MAX {
        for l in (n % 2..=n).step_by(2) {
            let q = SphericalQN::new(n, l, 0)?;
            for x in grid(0.0, 5.0) {
                let sphere = r.powf(-1.5) * quasiradial_z(&q, nu, x / r);
                let flat = limit_reference(LimitKind::FlatRadial, &LimitQN::Spherical(q), &p, x)?;
                worst = worst.max((sphere - flat).abs());
            }
        }
        for am in 0..=n {
            for n3 in (0..=n - am).filter(|k| (n - am - k) % 2 == 0) {
                let q = CylindricalQN::new(n, am as i32, n3)?;
                for x in grid(0.0, 5.0) {
                    let sphere = cyl_phi(&q, nu, x / r) / r;
                    let flat = limit_reference(LimitKind::FlatCylRho, &LimitQN::Cylindrical(q), &p, x)?;
                    worst = worst.max((sphere - flat).abs());
                }
                for x in grid(-5.0, 5.0) {
                    let sphere = cyl_k(n3, nu, x / r) / r.sqrt();
                    let flat = limit_reference(LimitKind::FlatCylZ, &LimitQN::Cylindrical(q), &p, x)?;
                    worst = worst.max((sphere - flat).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Sphere functions at `ν` against their free-motion forms.
fn free_basis_error(nu: f64) -> Result<f64> {
    let p = OscillatorParams::from_nu(nu)?;
    let mut worst: f64 = 0.0;
    let (lo, hi) = (0.0, std::f64::consts::FRAC_PI_2);
    for n in 0..=BASIS_N_MAX {
        for l in (n % 2..=n).step_by(2) {
            let q = SphericalQN::new(n, l, 0)?;
            for x in grid(lo, hi) {
                let free = limit_reference(LimitKind::FreeZ, &LimitQN::Spherical(q), &p, x)?;
                worst = worst.max((quasiradial_z(&q, nu, x) - free).abs());
            }
        }
        for am in 0..=n {
            for n3 in (0..=n - am).filter(|k| (n - am - k) % 2 == 0) {
                let q = CylindricalQN::new(n, am as i32, n3)?;
                for x in grid(lo, hi) {
                    let free = std::f64::consts::SQRT_2
                        * limit_reference(LimitKind::FreePhi, &LimitQN::Cylindrical(q), &p, x)?;
                    worst = worst.max((cyl_phi(&q, nu, x) - free).abs());
                }
                let sign = if n3 % 2 == 0 { 1.0 } else { -1.0 };
                for x in grid(-hi, hi) {
                    let free = sign * limit_reference(LimitKind::FreeK, &LimitQN::Cylindrical(q), &p, x)?;
                    worst = worst.max((cyl_k(n3, nu, x) - free).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn limit_error(kind: LimitCheck, x: f64) -> Result<f64> {
    match kind {
        LimitCheck::FlatEnergy => flat_energy_error(x),
        LimitCheck::FlatW => w_error(WLimitKind::FlatCg, FLAT_W_N_MAX, x),
        LimitCheck::FreeW => w_error(WLimitKind::FreeRacah, FREE_W_N_MAX, x),
        LimitCheck::FlatBasis => flat_basis_error(x),
        LimitCheck::FreeBasis => free_basis_error(x),
    }
}

/// Largest requirement ratio (see the module docs); at most 1 when all hold.
fn trend_score(kind: LimitCheck, schedule: &[f64], errors: &[f64]) -> (f64, Vec<f64>) {
    let mut score: f64 = 0.0;
    let mut rates = Vec::new();
    for i in 1..errors.len() {
        let (prev, cur) = (errors[i - 1], errors[i]);
        if prev.max(cur) < TREND_FLOOR {
            continue;
        }
        score = score.max(cur / (MONOTONE_SLACK * prev.max(TREND_FLOOR)));
        if let Some((lo, hi)) = kind.rate_window() {
            let decades = (schedule[i] / schedule[i - 1]).log10();
            let rate = (prev / cur).powf(1.0 / decades);
            rates.push(rate);
            score = score.max(lo / rate).max(rate / hi);
        }
    }
    (score, rates)
}

/// Runs one limit along `schedule` and scores it.
pub fn check_limits(kind: LimitCheck, schedule: &[f64]) -> Result<CheckReport> {
    if schedule.is_empty() {
        return Err(Error::Usage("limit schedule is empty".into()));
    }
    let ordered = schedule.windows(2).all(|w| if kind.descending() { w[0] > w[1] } else { w[0] < w[1] });
    if !ordered {
        return Err(domain!("schedule for {} must move strictly toward the limit", kind.name()));
    }
    if kind.rate_window().is_some() && schedule.iter().any(|&x| x <= 0.0) {
        return Err(domain!("schedule for {} must be positive", kind.name()));
    }
    timed(|| {
        let errors = schedule.iter().map(|&x| limit_error(kind, x)).collect::<Result<Vec<f64>>>()?;
        let last = *errors.last().expect("schedule is nonempty");
        let (trend, rates) = trend_score(kind, schedule, &errors);
        let tol = kind.tolerance();
        let score = (last / tol).max(trend);
        let mut params = json!({
            "kind": kind.name(),
            "schedule": schedule,
            "errors": errors,
            "final_error": last,
            "final_tolerance": tol,
            "monotone_slack": MONOTONE_SLACK,
        });
        if let Some((lo, hi)) = kind.rate_window() {
            params["rates_per_decade"] = json!(rates);
            params["rate_window"] = json!([lo, hi]);
        }
        Ok(CheckReport::new(format!("limit_{}", kind.name()), params, score, 1.0))
    })
}

pub(crate) fn default_suite() -> Result<Vec<CheckReport>> {
    [LimitCheck::FlatEnergy, LimitCheck::FlatW, LimitCheck::FreeW, LimitCheck::FlatBasis, LimitCheck::FreeBasis]
        .into_iter()
        .map(|k| check_limits(k, &k.default_schedule()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_order() {
        assert_eq!("free_w".parse::<LimitCheck>().unwrap(), LimitCheck::FreeW);
        assert!(check_limits(LimitCheck::FlatW, &[1e5, 1e4]).is_err());
        assert!(check_limits(LimitCheck::FreeW, &[0.0, 1e-2]).is_err());
        assert!(check_limits(LimitCheck::FlatEnergy, &[]).is_err());
    }

    #[test]
    fn trend_scoring() {
        let (s, _) = trend_score(LimitCheck::FreeW, &[1e-2, 1e-4, 0.0], &[1e-2, 1e-4, 1e-15]);
        assert!(s <= 1.0);
        let (s, _) = trend_score(LimitCheck::FreeW, &[1e-2, 1e-4], &[1e-3, 1e-2]);
        assert!(s > 1.0);
        let (s, r) = trend_score(LimitCheck::FlatW, &[1e4, 1e5], &[1e-2, 1e-3]);
        assert!((r[0] - 10.0).abs() < 1e-12 && s <= 1.0);
        let (s, _) = trend_score(LimitCheck::FlatW, &[1e4, 1e5], &[1e-2, 5e-3]);
        assert!(s > 1.0);
    }

    #[test]
    fn free_w_at_zero() {
        let r = check_limits(LimitCheck::FreeW, &[0.0]).unwrap();
        assert!(r.parameters["final_error"].as_f64().unwrap() < 1e-10);
    }

    #[test]
    fn flat_energy_shrinks_like_inverse_square() {
        let r = check_limits(LimitCheck::FlatEnergy, &[1e2, 1e3]).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
