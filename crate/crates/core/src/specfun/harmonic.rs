//! Spherical harmonics with the Condon–Shortley phase.

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Orthonormalised associated Legendre function
/// `sqrt((2l+1)/4π · (l-m)!/(l+m)!) P_l^m(x)` for `0 ≤ m ≤ l`, Condon–Shortley phase included.
pub fn normalized_legendre(l: u32, m: u32, x: f64) -> f64 {
    debug_assert!(m <= l);
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 0.5 / std::f64::consts::PI.sqrt();
    for k in 1..=m {
        let k = k as f64;
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = (2.0 * m as f64 + 3.0).sqrt() * x * pmm;
    let mf = m as f64;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Y_lm(θ, φ)`, normalised to one over the unit sphere.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(domain!("|m| = {} exceeds l = {l}", m.abs()));
    }
    let am = m.unsigned_abs();
    let p = normalized_legendre(l, am, theta.cos());
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        Ok(y)
    } else {
        // Y_{l,-m} = (-1)^m conj(Y_{lm})
        let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
        Ok(y.conj() * sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::GaussRule;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn constant_mode() {
        let y = spherical_harmonic(0, 0, 1.3, -0.4).unwrap();
        assert_relative_eq!(y.re, 0.2820947917738781, epsilon = 1e-15);
        assert_eq!(y.im, 0.0);
    }

    #[test]
    fn dipole_mode() {
        for &t in &[0.0, 0.4, 1.9, PI] {
            let y = spherical_harmonic(1, 0, t, 2.0).unwrap();
            assert_relative_eq!(y.re, (3.0 / (4.0 * PI)).sqrt() * t.cos(), epsilon = 1e-15);
        }
        // Condon–Shortley: Y_11 = -sqrt(3/8π) sinθ e^{iφ}
        let y = spherical_harmonic(1, 1, 0.7, 0.3).unwrap();
        let expected = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * 0.7f64.sin(), 0.3);
        assert_relative_eq!(y.re, expected.re, epsilon = 1e-15);
        assert_relative_eq!(y.im, expected.im, epsilon = 1e-15);
    }

    #[test]
    fn addition_theorem() {
        let l = 2;
        let total: f64 = (-2..=2).map(|m| spherical_harmonic(l, m, 0.7, 1.1).unwrap().norm_sqr()).sum();
        assert_relative_eq!(total, 5.0 / (4.0 * PI), epsilon = 1e-14);
    }

    #[test]
    fn rejects_m_above_l() {
        assert!(spherical_harmonic(2, 3, 0.1, 0.1).is_err());
        assert!(spherical_harmonic(2, -3, 0.1, 0.1).is_err());
    }

    #[test]
    fn legendre_orthonormal_in_theta() {
        let rule = GaussRule::shared(40).unwrap();
        for m in 0..4u32 {
            for l1 in m..8 {
                for l2 in m..8 {
                    let v = rule
                        .integrate(-1.0, 1.0, |x| normalized_legendre(l1, m, x) * normalized_legendre(l2, m, x))
                        * 2.0
                        * PI;
                    let expected = if l1 == l2 { 1.0 } else { 0.0 };
                    assert!((v - expected).abs() < 1e-13, "l1={l1} l2={l2} m={m} v={v}");
                }
            }
        }
    }
}
