//! Closed-form flat-space and free-motion limits of the basis functions.

use std::f64::consts::{FRAC_PI_2, PI};
use std::str::FromStr;

use super::params::OscillatorParams;
use super::qn::{CylindricalQN, SphericalQN};
use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma;
use crate::specfun::poly::{gegenbauer, hermite, jacobi_p, laguerre};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    /// Flat radial function `R_{Nl}(r)`, unit norm with weight `r²`.
    FlatRadial,
    /// Flat cylindrical radial factor, unit norm with weight `ρ`.
    FlatCylRho,
    /// Flat oscillator factor along `z`, unit norm.
    FlatCylZ,
    /// ν → 0 quasiradial function through Gegenbauer polynomials.
    FreeZ,
    /// ν → 0 limit of `K_{n₃}`.
    FreeK,
    /// ν → 0 limit of `Φ`.
    FreePhi,
}

impl FromStr for LimitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "flat_radial" => LimitKind::FlatRadial,
            "flat_cyl_rho" => LimitKind::FlatCylRho,
            "flat_cyl_z" => LimitKind::FlatCylZ,
            "free_z" => LimitKind::FreeZ,
            "free_k" => LimitKind::FreeK,
            "free_phi" => LimitKind::FreePhi,
            other => return Err(Error::Usage(format!("unknown limit kind `{other}`"))),
        })
    }
}

/// Quantum numbers accepted by [`limit_reference`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitQN {
    Spherical(SphericalQN),
    Cylindrical(CylindricalQN),
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive gamma argument")
}

/// Evaluates a limiting closed form at `coordinate` (`r`, `ρ`, `z`, `χ`, `φ₂`
/// or `α` depending on the kind). Flat forms use `λ = μω/ħ` from `params`.
pub fn limit_reference(kind: LimitKind, qn: &LimitQN, params: &OscillatorParams, coordinate: f64) -> Result<f64> {
    let lambda = params.lambda();
    let x = coordinate;
    match (kind, qn) {
        (LimitKind::FlatRadial, LimitQN::Spherical(q)) => {
            let n = q.n_r();
            let l = q.l as f64;
            let t = lambda * x * x;
            let ln_c = 0.5 * (2f64.ln() + 1.5 * lambda.ln() + lg(n as f64 + 1.0) - lg(n as f64 + l + 1.5));
            Ok((ln_c - 0.5 * t).exp() * (lambda.sqrt() * x).powi(q.l as i32) * laguerre(n, l + 0.5, t))
        }
        (LimitKind::FlatCylRho, LimitQN::Cylindrical(q)) => {
            let n = q.n_rho();
            let am = q.m.unsigned_abs();
            let t = lambda * x * x;
            let ln_c = 0.5 * ((2.0 * lambda).ln() + lg(n as f64 + 1.0) - lg((n + am) as f64 + 1.0));
            Ok((ln_c - 0.5 * t).exp() * (lambda.sqrt() * x).powi(am as i32) * laguerre(n, am as f64, t))
        }
        (LimitKind::FlatCylZ, LimitQN::Cylindrical(q)) => {
            let n3 = q.n3;
            let ln_c = 0.25 * (lambda / PI).ln() - 0.5 * (n3 as f64 * 2f64.ln() + lg(n3 as f64 + 1.0));
            Ok((ln_c - 0.5 * lambda * x * x).exp() * hermite(n3, lambda.sqrt() * x))
        }
        (LimitKind::FreeZ, LimitQN::Spherical(q)) => {
            let j = q.n as f64 + 1.0;
            let l = q.l as f64;
            let ln_c = (l + 1.0) * 2f64.ln() + lg(l + 1.0) - 0.5 * PI.ln()
                + 0.5 * ((j + 1.0).ln() + lg(j - l + 1.0) - lg(j + l + 2.0));
            Ok(ln_c.exp() * x.sin().powi(q.l as i32) * gegenbauer(q.n + 1 - q.l, l + 1.0, x.cos()))
        }
        (LimitKind::FreeK, LimitQN::Cylindrical(q)) => {
            let n3 = q.n3 as f64;
            Ok((2.0 / PI).sqrt() * ((n3 + 1.0) * (x + FRAC_PI_2)).sin())
        }
        (LimitKind::FreePhi, LimitQN::Cylindrical(q)) => {
            let n = q.n as f64;
            let am = q.m.unsigned_abs() as f64;
            let n3 = q.n3 as f64;
            let ln_c = 0.5
                * ((n + 2.0).ln() + lg((n - n3 - am) / 2.0 + 1.0) + lg((n + n3 + am) / 2.0 + 2.0)
                    - lg((n - am + n3) / 2.0 + 2.0)
                    - lg((n + am - n3) / 2.0 + 1.0));
            Ok(ln_c.exp()
                * x.sin().powf(am)
                * x.cos().powf(n3 + 1.0)
                * jacobi_p(q.n_rho(), am, n3 + 1.0, (2.0 * x).cos()))
        }
        (kind, qn) => Err(Error::Usage(format!("limit {kind:?} is not defined for {qn:?}"))),
    }
}
