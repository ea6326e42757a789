//! Spherical and cylindrical oscillator wavefunctions on the upper hemisphere.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::coords::{CoordSystem, SpherePoint};
use super::params::OscillatorParams;
use super::qn::{CylindricalQN, SphericalQN};
use crate::error::Result;
use crate::specfun::gamma::log_gamma;
use crate::specfun::harmonic::spherical_harmonic;
use crate::specfun::poly::jacobi_p;

fn ln_pow(x: f64, p: f64) -> Option<f64> {
    if p == 0.0 {
        Some(0.0)
    } else if x <= 0.0 {
        None
    } else {
        Some(p * x.ln())
    }
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("gamma argument is positive for valid quantum numbers")
}

/// Log of the normalization constant of `Z_{Nl}^ν`.
fn ln_norm_z(qn: &SphericalQN, nu: f64) -> f64 {
    let (n, l) = (qn.n as f64, qn.l as f64);
    let nr = qn.n_r() as f64;
    0.5 * ((2.0 * (n + nu + 2.0)).ln() + lg(nr + 1.0) + lg((n + l) / 2.0 + nu + 2.0)
        - lg((n + l + 3.0) / 2.0)
        - lg((n - l + 3.0) / 2.0 + nu))
}

/// Quasiradial function `Z_{Nl}^ν(χ)`, orthonormal on `[0, π/2]` with weight `sin²χ`.
pub fn quasiradial_z(qn: &SphericalQN, nu: f64, chi: f64) -> f64 {
    let (s, c) = chi.sin_cos();
    let c = if chi == FRAC_PI_2 { 0.0 } else { c };
    let l = qn.l as f64;
    let (Some(ls), Some(lc)) = (ln_pow(s, l), ln_pow(c, nu + 1.0)) else { return 0.0 };
    let p = jacobi_p(qn.n_r(), l + 0.5, nu + 0.5, (2.0 * chi).cos());
    (ln_norm_z(qn, nu) + ls + lc).exp() * p
}

fn ln_norm_phi(qn: &CylindricalQN, nu: f64) -> f64 {
    let n = qn.n as f64;
    let am = qn.m.unsigned_abs() as f64;
    let n3 = qn.n3 as f64;
    0.5 * ((2.0 * (n + nu + 2.0)).ln() + lg(qn.n_rho() as f64 + 1.0) + lg((n + am + n3) / 2.0 + nu + 2.0)
        - lg((n + am - n3) / 2.0 + 1.0)
        - lg((n - am + n3) / 2.0 + nu + 2.0))
}

/// `Φ_{N|m|n₃}^ν(α)`, normalised with weight `sin α cos α` on `[0, π/2]`.
pub fn cyl_phi(qn: &CylindricalQN, nu: f64, alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let c = if alpha == FRAC_PI_2 { 0.0 } else { c };
    let am = qn.m.unsigned_abs() as f64;
    let n3 = qn.n3 as f64;
    let (Some(ls), Some(lc)) = (ln_pow(s, am), ln_pow(c, n3 + nu + 1.0)) else { return 0.0 };
    let p = jacobi_p(qn.n_rho(), am, n3 + nu + 1.0, (2.0 * alpha).cos());
    (ln_norm_phi(qn, nu) + ls + lc).exp() * p
}

fn ln_norm_k(n3: u32, nu: f64) -> f64 {
    let n3f = n3 as f64;
    0.5 * ((n3f + nu + 1.0).ln() + lg(n3f + 1.0) + lg(n3f + 2.0 * nu + 2.0))
        - (nu + 0.5) * 2f64.ln()
        - lg(n3f + nu + 1.5)
}

/// `K_{n₃}^ν(φ₂)`, normalised on `[−π/2, π/2]` with unit weight.
pub fn cyl_k(n3: u32, nu: f64, phi2: f64) -> f64 {
    let c = if phi2.abs() == FRAC_PI_2 { 0.0 } else { phi2.cos() };
    let Some(lc) = ln_pow(c, nu + 1.0) else { return 0.0 };
    let p = jacobi_p(n3, nu + 0.5, nu + 0.5, phi2.sin());
    (ln_norm_k(n3, nu) + lc).exp() * p
}

/// A basis state of either separable basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BasisState {
    Spherical(SphericalQN),
    Cylindrical(CylindricalQN),
}

/// Full wavefunction including `1/sqrt(R³)` and the angular factors.
pub fn wavefunction(state: &BasisState, params: &OscillatorParams, point: &SpherePoint) -> Result<Complex64> {
    let nu = params.nu();
    let inv = params.r().powf(-1.5);
    match state {
        BasisState::Spherical(qn) => {
            let SpherePoint::Spherical { chi, theta, phi } = point.to_system(CoordSystem::Spherical)? else {
                unreachable!()
            };
            let y = spherical_harmonic(qn.l, qn.m, theta, phi)?;
            Ok(y * (inv * quasiradial_z(qn, nu, chi)))
        }
        BasisState::Cylindrical(qn) => {
            let SpherePoint::Cylindrical { alpha, phi1, phi2 } = point.to_system(CoordSystem::Cylindrical)? else {
                unreachable!()
            };
            let amp = inv * cyl_phi(qn, nu, alpha) * cyl_k(qn.n3, nu, phi2) / (2.0 * PI).sqrt();
            Ok(Complex64::from_polar(1.0, qn.m as f64 * phi1) * amp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::GaussRule;
    use approx::assert_relative_eq;

    fn gram_max_defect(funcs: &[Box<dyn Fn(f64) -> f64>], a: f64, b: f64, weight: impl Fn(f64) -> f64) -> f64 {
        let rule = GaussRule::shared(400).unwrap();
        let (x, w) = rule.mapped(a, b);
        let vals: Vec<Vec<f64>> = funcs.iter().map(|f| x.iter().map(|&t| f(t)).collect()).collect();
        let wt: Vec<f64> = x.iter().zip(&w).map(|(&t, &wi)| wi * weight(t)).collect();
        let mut worst: f64 = 0.0;
        for i in 0..funcs.len() {
            for j in 0..=i {
                let g: f64 = (0..x.len()).map(|k| vals[i][k] * vals[j][k] * wt[k]).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - e).abs());
            }
        }
        worst
    }

    #[test]
    fn boundary_zeros() {
        let qn = SphericalQN::new(3, 1, 0).unwrap();
        assert_eq!(quasiradial_z(&qn, 1.0, 0.0), 0.0);
        assert_eq!(quasiradial_z(&qn, 1.0, FRAC_PI_2), 0.0);
        let cq = CylindricalQN::new(3, 1, 0).unwrap();
        assert_eq!(cyl_phi(&cq, 0.5, 0.0), 0.0);
        assert_eq!(cyl_phi(&cq, 0.5, FRAC_PI_2), 0.0);
        assert_eq!(cyl_k(2, 0.5, FRAC_PI_2), 0.0);
    }

    #[test]
    fn k_examples() {
        assert_relative_eq!(cyl_k(0, 0.0, 0.0), (2.0 / PI).sqrt(), epsilon = 1e-15);
        let (a, b) = (cyl_k(3, 1.2, -0.4), cyl_k(3, 1.2, 0.4));
        assert!((a + b).abs() < 1e-15);
    }

    #[test]
    fn unit_norms() {
        let rule = GaussRule::shared(200).unwrap();
        let z = SphericalQN::new(0, 0, 0).unwrap();
        let nz = rule.integrate(0.0, FRAC_PI_2, |x| quasiradial_z(&z, 1.0, x).powi(2) * x.sin().powi(2));
        assert!((nz - 1.0).abs() < 1e-10);
        let c = CylindricalQN::new(2, 0, 0).unwrap();
        let np = rule.integrate(0.0, FRAC_PI_2, |x| cyl_phi(&c, 0.5, x).powi(2) * x.sin() * x.cos());
        assert!((np - 1.0).abs() < 1e-10);
        let nk = rule.integrate(-FRAC_PI_2, FRAC_PI_2, |x| cyl_k(2, 2.0, x).powi(2));
        assert!((nk - 1.0).abs() < 1e-10);
    }

    #[test]
    fn z_orthonormal_fixed_l() {
        for &nu in &[0.0, 0.618, 7.5] {
            for l in 0..4u32 {
                let funcs: Vec<Box<dyn Fn(f64) -> f64>> = (l..=16)
                    .step_by(2)
                    .map(|n| {
                        let qn = SphericalQN::new(n, l, 0).unwrap();
                        Box::new(move |x: f64| quasiradial_z(&qn, nu, x)) as Box<dyn Fn(f64) -> f64>
                    })
                    .collect();
                let d = gram_max_defect(&funcs, 0.0, FRAC_PI_2, |x| x.sin().powi(2));
                assert!(d < 1e-10, "ν={nu} l={l}: {d}");
            }
        }
    }

    #[test]
    fn k_orthonormal() {
        for &nu in &[0.0, 1.0, 25.0] {
            let funcs: Vec<Box<dyn Fn(f64) -> f64>> =
                (0..=16u32).map(|n3| Box::new(move |x: f64| cyl_k(n3, nu, x)) as Box<dyn Fn(f64) -> f64>).collect();
            let d = gram_max_defect(&funcs, -FRAC_PI_2, FRAC_PI_2, |_| 1.0);
            assert!(d < 1e-10, "ν={nu}: {d}");
        }
    }

    #[test]
    fn spherical_ground_state_is_isotropic() {
        let params = OscillatorParams::from_nu(1.0).unwrap();
        let st = BasisState::Spherical(SphericalQN::new(0, 0, 0).unwrap());
        let a = wavefunction(&st, &params, &SpherePoint::Spherical { chi: 0.4, theta: 0.1, phi: 0.2 }).unwrap();
        let b = wavefunction(&st, &params, &SpherePoint::Spherical { chi: 0.4, theta: 2.9, phi: 5.0 }).unwrap();
        assert_relative_eq!(a.re, b.re, epsilon = 1e-15);
        assert_eq!(a.im, 0.0);
    }

    #[test]
    fn cylindrical_odd_state_vanishes_on_plane() {
        let params = OscillatorParams::from_nu(0.7).unwrap();
        let st = BasisState::Cylindrical(CylindricalQN::new(1, 0, 1).unwrap());
        let v = wavefunction(&st, &params, &SpherePoint::Cylindrical { alpha: 0.6, phi1: 1.0, phi2: 0.0 }).unwrap();
        assert_eq!(v.norm(), 0.0);
    }
}
