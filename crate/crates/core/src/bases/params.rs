//! Physical constants of the oscillator and the derived parameter ν.

use crate::error::{Error, Result};

/// Curvature radius, mass, frequency and Planck constant of one problem.
///
/// ν is stored alongside the physical constants so that a value supplied
/// directly (see [`OscillatorParams::from_nu`]) is kept exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorParams {
    r: f64,
    mass: f64,
    omega: f64,
    hbar: f64,
    nu: f64,
}

fn nu_from_constants(r: f64, mass: f64, omega: f64, hbar: f64) -> f64 {
    // ν = (sqrt(1 + 4x²) - 1)/2 = 2x² / (sqrt(1 + 4x²) + 1), x = μωR²/ħ
    let x = mass * omega * r * r / hbar;
    2.0 * x * x / ((1.0 + 4.0 * x * x).sqrt() + 1.0)
}

impl OscillatorParams {
    pub fn new(r: f64, mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        if !(r > 0.0 && mass > 0.0 && hbar > 0.0 && omega >= 0.0)
            || ![r, mass, omega, hbar].iter().all(|x| x.is_finite())
        {
            return Err(Error::Domain(format!(
                "need R > 0, mass > 0, hbar > 0, omega >= 0 (got R={r}, mass={mass}, omega={omega}, hbar={hbar})"
            )));
        }
        Ok(OscillatorParams { r, mass, omega, hbar, nu: nu_from_constants(r, mass, omega, hbar) })
    }

    /// Dimensionless mode: `R = μ = ħ = 1` and `ω = sqrt(ν(ν+1))`, with ν kept exactly.
    pub fn from_nu(nu: f64) -> Result<Self> {
        Self::with_nu(nu, 1.0, 1.0, 1.0)
    }

    /// Given ν at fixed `R`, `μ`, `ħ`; `ω = ħ sqrt(ν(ν+1)) / (μR²)` and ν is kept exactly.
    pub fn with_nu(nu: f64, r: f64, mass: f64, hbar: f64) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::Domain(format!("ν must be finite and nonnegative, got {nu}")));
        }
        let mut p = Self::new(r, mass, 0.0, hbar)?;
        p.omega = hbar * (nu * (nu + 1.0)).sqrt() / (mass * r * r);
        p.nu = nu;
        Ok(p)
    }

    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Flat-space density `λ = μω/ħ`.
    pub fn lambda(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }
}

/// `ν = ½ sqrt(1 + 4μ²ω²R⁴/ħ²) − ½`, evaluated from the physical constants.
pub fn nu_of(params: &OscillatorParams) -> f64 {
    nu_from_constants(params.r, params.mass, params.omega, params.hbar)
}

/// `E_N = ħ²/(2μR²) [(N+1)(N+3) + 2ν(N + 3/2)]`.
pub fn energy(n: u32, params: &OscillatorParams) -> f64 {
    let nf = n as f64;
    let scale = params.hbar * params.hbar / (2.0 * params.mass * params.r * params.r);
    scale * ((nf + 1.0) * (nf + 3.0) + 2.0 * params.nu * (nf + 1.5))
}

/// Degeneracy `(N+1)(N+2)/2` of level `N`.
pub fn degeneracy(n: u32) -> u64 {
    let n = n as u64;
    (n + 1) * (n + 2) / 2
}
