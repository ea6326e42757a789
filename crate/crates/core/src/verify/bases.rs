//! Orthonormality, quasiradial equation and spectrum checks.

use std::f64::consts::{FRAC_PI_2, PI};
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::json;

use super::{timed, CheckReport, SuiteOptions};
use crate::bases::coords::SpherePoint;
use crate::bases::params::{degeneracy, energy, OscillatorParams};
use crate::bases::qn::{CylindricalQN, SphericalQN};
use crate::bases::wave::{cyl_k, cyl_phi, quasiradial_z, wavefunction, BasisState};
use crate::error::{domain, Error, Result};
use crate::specfun::quad::GaussRule;

const GRAM_NODES: usize = 400;
const FD_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthoBasis {
    SphericalZ,
    CylPhi,
    CylK,
    /// Full spherical and cylindrical wavefunctions on the hemisphere.
    Full3d,
}

impl FromStr for OrthoBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "spherical_z" => OrthoBasis::SphericalZ,
            "cyl_phi" => OrthoBasis::CylPhi,
            "cyl_k" => OrthoBasis::CylK,
            "full_3d" => OrthoBasis::Full3d,
            other => return Err(Error::Usage(format!("unknown basis `{other}`"))),
        })
    }
}

impl OrthoBasis {
    fn name(self) -> &'static str {
        match self {
            OrthoBasis::SphericalZ => "spherical_z",
            OrthoBasis::CylPhi => "cyl_phi",
            OrthoBasis::CylK => "cyl_k",
            OrthoBasis::Full3d => "full_3d",
        }
    }
}

/// `max |G − I|` for real functions sampled at quadrature nodes.
fn gram_defect(samples: &[Vec<f64>], weights: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..samples.len() {
        for j in 0..=i {
            let g: f64 = samples[i].iter().zip(&samples[j]).zip(weights).map(|((a, b), w)| a * b * w).sum();
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - e).abs());
        }
    }
    worst
}

fn complex_gram_defect(samples: &[Vec<Complex64>], weights: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..samples.len() {
        for j in 0..=i {
            let g: Complex64 =
                samples[i].iter().zip(&samples[j]).zip(weights).map(|((a, b), w)| a.conj() * b * *w).sum();
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - e).norm());
        }
    }
    worst
}

fn orthonormality_defect(basis: OrthoBasis, max_index: u32, nu: f64) -> Result<f64> {
    let rule = GaussRule::shared(GRAM_NODES)?;
    let mut worst: f64 = 0.0;
    match basis {
        OrthoBasis::SphericalZ => {
            let (x, w) = rule.mapped(0.0, FRAC_PI_2);
            let wt: Vec<f64> = x.iter().zip(&w).map(|(t, wi)| wi * t.sin().powi(2)).collect();
            for l in 0..=max_index {
                let samples: Vec<Vec<f64>> = (l..=max_index)
                    .step_by(2)
                    .map(|n| {
                        let qn = SphericalQN::new(n, l, 0).expect("valid by construction");
                        x.iter().map(|&t| quasiradial_z(&qn, nu, t)).collect()
                    })
                    .collect();
                worst = worst.max(gram_defect(&samples, &wt));
            }
        }
        OrthoBasis::CylPhi => {
            let (x, w) = rule.mapped(0.0, FRAC_PI_2);
            let wt: Vec<f64> = x.iter().zip(&w).map(|(t, wi)| wi * t.sin() * t.cos()).collect();
            for am in 0..=max_index {
                for n3 in 0..=max_index - am {
                    let samples: Vec<Vec<f64>> = (am + n3..=max_index)
                        .step_by(2)
                        .map(|n| {
                            let qn = CylindricalQN::new(n, am as i32, n3).expect("valid by construction");
                            x.iter().map(|&t| cyl_phi(&qn, nu, t)).collect()
                        })
                        .collect();
                    worst = worst.max(gram_defect(&samples, &wt));
                }
            }
        }
        OrthoBasis::CylK => {
            let (x, w) = rule.mapped(-FRAC_PI_2, FRAC_PI_2);
            let samples: Vec<Vec<f64>> =
                (0..=max_index).map(|n3| x.iter().map(|&t| cyl_k(n3, nu, t)).collect()).collect();
            worst = gram_defect(&samples, &w);
        }
        OrthoBasis::Full3d => {
            worst = full_3d_defect(max_index, nu)?;
        }
    }
    Ok(worst)
}

/// Gram matrices of both full bases for `N ≤ max_index`, by a tensor rule
/// (Gauss in the two polar angles, equally spaced in the azimuth).
fn full_3d_defect(max_index: u32, nu: f64) -> Result<f64> {
    let params = OscillatorParams::from_nu(nu)?;
    let n_polar = (2 * max_index as usize + 24).max(32);
    let n_azimuth = 4 * max_index as usize + 4;
    let rule = GaussRule::shared(n_polar)?;
    let (xa, wa) = rule.mapped(0.0, FRAC_PI_2);
    let (xt, wt) = rule.mapped(0.0, PI);
    let (xp, wp) = rule.mapped(-FRAC_PI_2, FRAC_PI_2);
    let dphi = 2.0 * PI / n_azimuth as f64;

    let mut sph_pts = Vec::new();
    let mut cyl_pts = Vec::new();
    let mut sph_w = Vec::new();
    let mut cyl_w = Vec::new();
    for (i, &a) in xa.iter().enumerate() {
        for k in 0..n_azimuth {
            let az = k as f64 * dphi;
            for (j, &t) in xt.iter().enumerate() {
                sph_pts.push(SpherePoint::Spherical { chi: a, theta: t, phi: az });
                sph_w.push(wa[i] * wt[j] * dphi * a.sin().powi(2) * t.sin());
            }
            for (j, &p2) in xp.iter().enumerate() {
                cyl_pts.push(SpherePoint::Cylindrical { alpha: a, phi1: az, phi2: p2 });
                cyl_w.push(wa[i] * wp[j] * dphi * a.sin() * a.cos());
            }
        }
    }
    let mut sph_states = Vec::new();
    let mut cyl_states = Vec::new();
    for n in 0..=max_index {
        sph_states.extend(SphericalQN::enumerate(n).into_iter().map(BasisState::Spherical));
        cyl_states.extend(CylindricalQN::enumerate(n).into_iter().map(BasisState::Cylindrical));
    }
    let sample = |states: &[BasisState], pts: &[SpherePoint]| -> Result<Vec<Vec<Complex64>>> {
        states.iter().map(|s| pts.iter().map(|p| wavefunction(s, &params, p)).collect()).collect()
    };
    let a = complex_gram_defect(&sample(&sph_states, &sph_pts)?, &sph_w);
    let b = complex_gram_defect(&sample(&cyl_states, &cyl_pts)?, &cyl_w);
    Ok(a.max(b))
}

/// Gram-matrix deviation from the identity for one family of basis functions.
pub fn check_orthonormality(basis: OrthoBasis, max_index: u32, nu: f64) -> Result<CheckReport> {
    if max_index > 24 {
        return Err(domain!("orthonormality checks support max_index ≤ 24, got {max_index}"));
    }
    let tol = if basis == OrthoBasis::Full3d { 1e-7 } else { 1e-8 };
    timed(|| {
        let err = orthonormality_defect(basis, max_index, nu)?;
        Ok(CheckReport::new(
            format!("orthonormality_{}", basis.name()),
            json!({"basis": basis.name(), "max_index": max_index, "nu": nu}),
            err,
            tol,
        ))
    })
}

fn five_point_second(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

/// Maximum residual of `f'' + [𝓔 − l(l+1)/sin²χ − ν(ν+1)/cos²χ] f = 0` for
/// `f = Z sin χ` on an interior grid, relative to the largest term on the grid.
/// `𝓔` is rebuilt from the energy level, shifted by `perturb` (relative).
pub fn ode_residual(n: u32, l: u32, nu: f64, gridpoints: usize, perturb: f64) -> Result<f64> {
    if gridpoints < 32 {
        return Err(domain!("need at least 32 grid points, got {gridpoints}"));
    }
    let qn = SphericalQN::new(n, l, 0)?;
    let p = OscillatorParams::from_nu(nu)?;
    let e = energy(n, &p) * (1.0 + perturb);
    let x = p.mass() * p.omega() * p.r() * p.r() / p.hbar();
    let cal_e = 2.0 * p.mass() * p.r() * p.r() * e / (p.hbar() * p.hbar()) + x * x + 1.0;
    let f = |chi: f64| quasiradial_z(&qn, nu, chi) * chi.sin();
    let (lo, hi) = (0.05, FRAC_PI_2 - 0.05);
    let lf = l as f64;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..gridpoints {
        let chi = lo + (hi - lo) * i as f64 / (gridpoints - 1) as f64;
        let fx = f(chi);
        let d2 = five_point_second(&f, chi, FD_STEP);
        let pot = lf * (lf + 1.0) / chi.sin().powi(2) + nu * (nu + 1.0) / chi.cos().powi(2);
        worst = worst.max((d2 + (cal_e - pot) * fx).abs());
        scale = scale.max(d2.abs()).max((cal_e * fx).abs()).max((pot * fx).abs());
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

pub fn check_ode_residual(n: u32, l: u32, nu: f64, gridpoints: usize, perturb: f64) -> Result<CheckReport> {
    timed(|| {
        let err = ode_residual(n, l, nu, gridpoints, perturb)?;
        let mut params = json!({"N": n, "l": l, "nu": nu, "gridpoints": gridpoints});
        if perturb != 0.0 {
            params["perturb_energy"] = json!(perturb);
        }
        Ok(CheckReport::new("ode_residual", params, err, 1e-6))
    })
}

/// Largest relative deviation of `2μR²E/ħ² + ν² + ν + 1` from `(N + ν + 2)²`.
pub fn check_spectrum_identity(n_max: u32, nu_list: &[f64], perturb: f64) -> Result<CheckReport> {
    timed(|| {
        let mut worst: f64 = 0.0;
        for &nu in nu_list {
            let p = OscillatorParams::from_nu(nu)?;
            for n in 0..=n_max {
                let e = energy(n, &p) * (1.0 + perturb);
                let lhs = 2.0 * p.mass() * p.r() * p.r() * e / (p.hbar() * p.hbar()) + nu * nu + nu + 1.0;
                let rhs = (n as f64 + nu + 2.0).powi(2);
                worst = worst.max((lhs - rhs).abs() / rhs);
            }
        }
        let mut params = json!({"N_max": n_max, "nu": nu_list});
        if perturb != 0.0 {
            params["perturb_energy"] = json!(perturb);
        }
        Ok(CheckReport::new("spectrum_identity", params, worst, 1e-12))
    })
}

/// Counts the states of both separable bases at each level against `(N+1)(N+2)/2`.
pub fn check_degeneracy(n_max: u32) -> Result<CheckReport> {
    timed(|| {
        let mut worst: f64 = 0.0;
        for n in 0..=n_max {
            let d = degeneracy(n) as f64;
            let s = SphericalQN::enumerate(n).len() as f64;
            let c = CylindricalQN::enumerate(n).len() as f64;
            worst = worst.max((s - d).abs()).max((c - d).abs());
        }
        Ok(CheckReport::new("degeneracy", json!({"N_max": n_max}), worst, 0.0))
    })
}

pub(crate) fn default_suite(opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &nu in &[0.0, 1.0, 25.0, 50.0] {
        for basis in [OrthoBasis::SphericalZ, OrthoBasis::CylPhi, OrthoBasis::CylK] {
            out.push(check_orthonormality(basis, 16, nu)?);
        }
    }
    out.push(check_orthonormality(OrthoBasis::Full3d, 4, 1.0)?);
    for &nu in &[0.0, 0.618, 1.0, 3.7] {
        let mut worst = CheckReport::new("ode_residual", json!({}), 0.0, 1e-6);
        let mut runtime = 0.0;
        for n in 0..=8u32 {
            for l in (n % 2..=n).step_by(2) {
                let r = check_ode_residual(n, l, nu, 64, opts.perturb_energy)?;
                runtime += r.runtime_ms;
                if r.max_error >= worst.max_error {
                    worst = r;
                }
            }
        }
        let mut params = json!({"N_max": 8, "nu": nu, "gridpoints": 64, "worst_N": worst.parameters["N"], "worst_l": worst.parameters["l"]});
        if opts.perturb_energy != 0.0 {
            params["perturb_energy"] = json!(opts.perturb_energy);
        }
        let mut r = CheckReport::new("ode_residual", params, worst.max_error, 1e-6);
        r.runtime_ms = runtime;
        out.push(r);
    }
    out.push(check_spectrum_identity(30, &[0.0, 0.618, 1.0, 3.7, 25.0, 1e3], opts.perturb_energy)?);
    out.push(check_degeneracy(30)?);
    Ok(out)
}
