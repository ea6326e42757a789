//! Points on the upper hemisphere in spherical, cylindrical, elliptic and
//! ambient coordinates.
//!
//! Ambient coordinates `(q₀, q₁, q₂, q₃)` satisfy `q₀² + q₁² + q₂² + q₃² = R²`
//! with `q₀ ≥ 0` on the upper hemisphere; the equator `q₀ = 0` is where the
//! oscillator potential is singular.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::params::OscillatorParams;
use crate::error::{domain, Error, Result};
use crate::specfun::elliptic_fn::{complete_elliptic_k, elliptic_f, jacobi_elliptic};

const RANGE_TOL: f64 = 1e-12;

/// Target system for coordinate conversion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoordSystem {
    Spherical,
    Cylindrical,
    /// Oblate elliptic coordinates with modulus `k ∈ (0, 1)`.
    Elliptic {
        k: f64,
    },
    Ambient,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    /// `χ ∈ [0, π/2]`, `ϑ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    Spherical { chi: f64, theta: f64, phi: f64 },
    /// `α ∈ [0, π/2]`, `φ₁ ∈ [0, 2π)`, `φ₂ ∈ [−π/2, π/2]`.
    Cylindrical { alpha: f64, phi1: f64, phi2: f64 },
    /// `μ ∈ [0, K]`, `ν ∈ [0, 2K′]`, `φ ∈ [0, 2π)`, modulus `k`.
    Elliptic { mu: f64, nu: f64, phi: f64, k: f64 },
    /// `[q₀, q₁, q₂, q₃]`.
    Ambient { q: [f64; 4] },
}

fn check_range(name: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if !(x >= lo - RANGE_TOL && x <= hi + RANGE_TOL) {
        return Err(domain!("{name} = {x} outside [{lo}, {hi}]"));
    }
    Ok(())
}

fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

fn check_modulus(k: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return Err(domain!("elliptic modulus must lie in (0, 1), got {k}"));
    }
    Ok(())
}

fn complementary(k: f64) -> f64 {
    ((1.0 - k) * (1.0 + k)).sqrt()
}

impl SpherePoint {
    pub fn system(&self) -> CoordSystem {
        match *self {
            SpherePoint::Spherical { .. } => CoordSystem::Spherical,
            SpherePoint::Cylindrical { .. } => CoordSystem::Cylindrical,
            SpherePoint::Elliptic { k, .. } => CoordSystem::Elliptic { k },
            SpherePoint::Ambient { .. } => CoordSystem::Ambient,
        }
    }

    /// Checks the declared coordinate ranges (upper hemisphere).
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpherePoint::Spherical { chi, theta, phi } => {
                check_range("χ", chi, 0.0, FRAC_PI_2)?;
                check_range("ϑ", theta, 0.0, PI)?;
                check_range("φ", phi, 0.0, TAU)
            }
            SpherePoint::Cylindrical { alpha, phi1, phi2 } => {
                check_range("α", alpha, 0.0, FRAC_PI_2)?;
                check_range("φ₁", phi1, 0.0, TAU)?;
                check_range("φ₂", phi2, -FRAC_PI_2, FRAC_PI_2)
            }
            SpherePoint::Elliptic { mu, nu, phi, k } => {
                check_modulus(k)?;
                check_range("μ", mu, 0.0, complete_elliptic_k(k)?)?;
                check_range("ν", nu, 0.0, 2.0 * complete_elliptic_k(complementary(k))?)?;
                check_range("φ", phi, 0.0, TAU)
            }
            SpherePoint::Ambient { q } => {
                if q.iter().any(|x| !x.is_finite()) {
                    return Err(domain!("ambient point {q:?} is not finite"));
                }
                if q[0] < 0.0 {
                    return Err(domain!("q₀ = {} < 0 lies on the lower hemisphere", q[0]));
                }
                Ok(())
            }
        }
    }

    /// Ambient coordinates on the sphere of radius `r`.
    pub fn to_ambient(&self, r: f64) -> Result<[f64; 4]> {
        self.validate()?;
        Ok(match *self {
            SpherePoint::Spherical { chi, theta, phi } => {
                let (sc, cc) = chi.sin_cos();
                let (st, ct) = theta.sin_cos();
                let (sp, cp) = phi.sin_cos();
                [r * cc, r * sc * st * cp, r * sc * st * sp, r * sc * ct]
            }
            SpherePoint::Cylindrical { alpha, phi1, phi2 } => {
                let (sa, ca) = alpha.sin_cos();
                let (s1, c1) = phi1.sin_cos();
                let (s2, c2) = phi2.sin_cos();
                [r * ca * c2, r * sa * c1, r * sa * s1, r * ca * s2]
            }
            SpherePoint::Elliptic { mu, nu, phi, k } => {
                let (snm, cnm, dnm) = jacobi_elliptic(mu, k);
                let (snn, cnn, dnn) = jacobi_elliptic(nu, complementary(k));
                let (sp, cp) = phi.sin_cos();
                [r * dnm * snn, r * snm * dnn * cp, r * snm * dnn * sp, r * cnm * cnn]
            }
            SpherePoint::Ambient { q } => {
                let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
                q.map(|x| x * r / norm)
            }
        })
    }

    /// Converts an ambient point (any radius) to the target system.
    pub fn from_ambient(q: [f64; 4], target: CoordSystem) -> Result<SpherePoint> {
        SpherePoint::Ambient { q }.validate()?;
        let r = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r == 0.0 {
            return Err(domain!("ambient point at the origin"));
        }
        let [q0, q1, q2, q3] = q;
        let rho12 = q1.hypot(q2);
        let point = match target {
            CoordSystem::Ambient => SpherePoint::Ambient { q },
            CoordSystem::Spherical => SpherePoint::Spherical {
                chi: rho12.hypot(q3).atan2(q0),
                theta: rho12.atan2(q3),
                phi: wrap_angle(q2.atan2(q1)),
            },
            CoordSystem::Cylindrical => SpherePoint::Cylindrical {
                alpha: rho12.atan2(q0.hypot(q3)),
                phi1: wrap_angle(q2.atan2(q1)),
                phi2: q3.atan2(q0),
            },
            CoordSystem::Elliptic { k } => {
                check_modulus(k)?;
                let kp = complementary(k);
                let rho2 = (rho12 / r).powi(2);
                let p0 = (q0 / r).powi(2);
                // t = sn²(ν, k′) is the smaller root of k′²t² − S t + q̂₀² = 0
                let s_coef = 1.0 - k * k * rho2 + kp * kp * p0;
                let disc = (s_coef * s_coef - 4.0 * kp * kp * p0).max(0.0);
                let t = (2.0 * p0 / (s_coef + disc.sqrt())).clamp(0.0, 1.0);
                let s = (rho2 / (1.0 - kp * kp * t)).clamp(0.0, 1.0);
                let mu = elliptic_f(s.sqrt().asin(), k);
                let nu0 = elliptic_f(t.sqrt().asin(), kp);
                let nu = if q3 < 0.0 { 2.0 * complete_elliptic_k(kp)? - nu0 } else { nu0 };
                SpherePoint::Elliptic { mu, nu, phi: wrap_angle(q2.atan2(q1)), k }
            }
        };
        Ok(point)
    }

    /// Re-expresses the point in another system.
    pub fn to_system(&self, target: CoordSystem) -> Result<SpherePoint> {
        if self.system() == target {
            self.validate()?;
            return Ok(*self);
        }
        SpherePoint::from_ambient(self.to_ambient(1.0)?, target)
    }
}

/// Oscillator potential at a hemisphere point, computed with the formula native
/// to the point's coordinate system.
pub fn potential(point: &SpherePoint, params: &OscillatorParams) -> Result<f64> {
    point.validate()?;
    let r = params.r();
    let scale = 0.5 * params.mass() * params.omega() * params.omega() * r * r;
    let singular = || Error::Singular(format!("potential is singular on the equator ({point:?})"));
    let v = match *point {
        SpherePoint::Spherical { chi, .. } => {
            let c = chi.cos();
            if c <= RANGE_TOL {
                return Err(singular());
            }
            scale * chi.tan().powi(2)
        }
        SpherePoint::Cylindrical { alpha, phi2, .. } => {
            let c = alpha.cos() * phi2.cos();
            if c <= RANGE_TOL {
                return Err(singular());
            }
            scale * (1.0 / (c * c) - 1.0)
        }
        SpherePoint::Elliptic { mu, nu, k, .. } => {
            let dn_mu = jacobi_elliptic(mu, k).2;
            let sn_nu = jacobi_elliptic(nu, complementary(k)).0;
            let c = dn_mu * sn_nu;
            if c.abs() <= RANGE_TOL {
                return Err(singular());
            }
            scale * (1.0 / (c * c) - 1.0)
        }
        SpherePoint::Ambient { q } => {
            let rr = q.iter().map(|x| x * x).sum::<f64>();
            let q2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
            // scale to the physical radius before using μω²q²/(2(1 − q²/R²))
            let q2 = q2 * r * r / rr;
            let denom = 1.0 - q2 / (r * r);
            if denom <= RANGE_TOL {
                return Err(singular());
            }
            0.5 * params.mass() * params.omega() * params.omega() * q2 / denom
        }
    };
    Ok(v)
}
