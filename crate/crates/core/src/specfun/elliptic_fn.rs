//! Jacobi elliptic functions and elliptic integrals of the first kind.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};

const AGM_STOP: f64 = 1e-12;

/// `(sn, cn, dn)` of `u` with modulus `k ∈ [0, 1]`.
///
/// Uses the arithmetic-geometric mean scale (descending Landen) and exact
/// circular / hyperbolic branches at the endpoints.
pub fn jacobi_elliptic(u: f64, k: f64) -> (f64, f64, f64) {
    debug_assert!((0.0..=1.0).contains(&k));
    if k == 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    if k == 1.0 {
        let sech = 1.0 / u.cosh();
        return (u.tanh(), sech, sech);
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut a = vec![1.0];
    let mut c = vec![k];
    let mut b = kp;
    while c.last().unwrap().abs() > AGM_STOP * 1e-4 && a.len() < 64 {
        let an = *a.last().unwrap();
        a.push(0.5 * (an + b));
        c.push(0.5 * (an - b));
        b = (an * b).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // k'² + k²cn² is a sum of nonnegative terms, accurate near the quarter period
    let dn = (kp * kp + k * k * cn * cn).sqrt();
    (sn, cn, dn)
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral `K(k) = π / (2 AGM(1, k'))`.
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k.abs()) {
        return Err(domain!("K(k) requires 0 ≤ k < 1, got {k}"));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(FRAC_PI_2 / agm(1.0, kp))
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication.
pub fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    for _ in 0..100 {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mean = (x + y + z) / 3.0;
        let dev = (mean - x).abs().max((mean - y).abs()).max((mean - z).abs());
        if dev < 1e-4 * mean {
            break;
        }
    }
    let mean = (x + y + z) / 3.0;
    let dx = 1.0 - x / mean;
    let dy = 1.0 - y / mean;
    let dz = -dx - dy;
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / mean.sqrt()
}

/// Incomplete integral `F(φ, k)` for `φ ∈ [0, π/2]`.
pub fn elliptic_f(phi: f64, k: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::GaussRule;
    use approx::assert_relative_eq;

    #[test]
    fn origin_and_degenerate_moduli() {
        for &k in &[0.0, 0.3, 0.99, 1.0] {
            assert_eq!(jacobi_elliptic(0.0, k), (0.0, 1.0, 1.0));
        }
        let (s, c, d) = jacobi_elliptic(0.8, 0.0);
        assert_eq!((s, c, d), (0.8f64.sin(), 0.8f64.cos(), 1.0));
        let (s, c, d) = jacobi_elliptic(0.8, 1.0);
        assert_relative_eq!(s, 0.8f64.tanh(), epsilon = 1e-16);
        assert_relative_eq!(c, 1.0 / 0.8f64.cosh(), epsilon = 1e-16);
        assert_relative_eq!(d, c, epsilon = 1e-16);
    }

    #[test]
    fn identities_hold() {
        for &k in &[0.0, 0.3, 0.8, 0.99, 1.0] {
            for i in 0..=200 {
                let u = -5.0 + 0.05 * i as f64;
                let (s, c, d) = jacobi_elliptic(u, k);
                assert!((s * s + c * c - 1.0).abs() < 1e-13, "k={k} u={u}");
                assert!((d * d + k * k * s * s - 1.0).abs() < 1e-13, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn quarter_period_and_small_k_limit() {
        for &k in &[0.3, 0.8, 0.99] {
            let kk = complete_elliptic_k(k).unwrap();
            let (s, c, d) = jacobi_elliptic(kk, k);
            assert_relative_eq!(s, 1.0, epsilon = 1e-13);
            assert!(c.abs() < 1e-7);
            assert_relative_eq!(d, (1.0 - k * k).sqrt(), epsilon = 1e-12);
        }
        // sn(u, k) ≈ sin u − k²/4 (u − sin u cos u) cos u
        let (u, k): (f64, f64) = (0.9, 1e-3);
        let approx = u.sin() - 0.25 * k * k * (u - u.sin() * u.cos()) * u.cos();
        assert!((jacobi_elliptic(u, k).0 - approx).abs() < 1e-12);
    }

    #[test]
    fn complete_integral_against_quadrature() {
        assert_relative_eq!(complete_elliptic_k(0.0).unwrap(), FRAC_PI_2, epsilon = 1e-16);
        let rule = GaussRule::shared(200).unwrap();
        for &k in &[0.5, 0.9] {
            let q = rule.integrate(0.0, FRAC_PI_2, |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt());
            assert!((complete_elliptic_k(k).unwrap() - q).abs() < 1e-12, "k={k}");
        }
        assert!(complete_elliptic_k(1.0).is_err());
        assert!(complete_elliptic_k(1.5).is_err());
    }

    #[test]
    fn incomplete_integral_inverts_sn() {
        for &k in &[0.0, 0.4, 0.95] {
            let kk = complete_elliptic_k(k).unwrap();
            assert_relative_eq!(elliptic_f(FRAC_PI_2, k), kk, max_relative = 1e-14);
            for i in 1..10 {
                let u = kk * i as f64 / 10.0;
                let am = jacobi_elliptic(u, k).0.asin();
                assert_relative_eq!(elliptic_f(am, k), u, max_relative = 1e-13);
            }
        }
    }
}
