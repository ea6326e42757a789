//! Consistency of the two tridiagonal forms of the elliptic problem.

use serde_json::json;

use super::rng::Lcg;
use super::{timed, CheckReport};
use crate::elliptic::ops::{d33_block, l2_block, l2_eigenvalues, OperatorMethod};
use crate::elliptic::solve::{
    cylindrical_recurrence_residual, match_solutions, solve_cylindrical_form, solve_spherical_form,
    spherical_recurrence_residual, EllipticParams,
};
use crate::error::{Error, Result};
use crate::interbasis::{w_block, Method};
use crate::specfun::elliptic_fn::{complete_elliptic_k, jacobi_elliptic};

pub const ELLIPTIC_A: [f64; 4] = [-0.5, 0.25, 1.0, 4.0];
pub const ELLIPTIC_NU: [f64; 3] = [0.0, 1.0, 3.7];
const SMALL_A: f64 = 1e-12;

/// Per-block measurements at one `(N, m, ν, a)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EllipticDefects {
    /// Largest `|λ_sph − λ_cyl| / max(1, |λ|)`.
    pub spectra: f64,
    /// Largest `|U − WᵀT|` after sign alignment; infinite if pairing failed.
    pub transform: f64,
    /// Largest relative residual of either three-term recurrence.
    pub recurrence: f64,
}

pub fn elliptic_defects(n: u32, m: i32, nu: f64, params: &EllipticParams) -> Result<EllipticDefects> {
    let sph = solve_spherical_form(n, m, nu, params)?;
    let cyl = solve_cylindrical_form(n, m, nu, params)?;
    let spectra = sph
        .iter()
        .zip(&cyl)
        .map(|(s, c)| (s.lambda_q - c.lambda_q).abs() / s.lambda_q.abs().max(1.0))
        .fold(0.0, f64::max);
    let w = w_block(n, m, nu, Method::F43)?;
    let matched = match match_solutions(&sph, &cyl, &w) {
        Ok(v) => v,
        Err(Error::Consistency(_)) => {
            return Ok(EllipticDefects { spectra, transform: f64::INFINITY, recurrence: f64::INFINITY })
        }
        Err(e) => return Err(e),
    };
    let wt = w.entries.transpose();
    let mut transform: f64 = 0.0;
    let mut recurrence: f64 = 0.0;
    for sol in &matched {
        let pred = &wt * nalgebra::DVector::from_column_slice(&sol.t);
        transform = sol.u.iter().zip(pred.iter()).fold(transform, |acc, (u, p)| acc.max((u - p).abs()));
        if params.a() != 0.0 {
            recurrence = recurrence.max(spherical_recurrence_residual(n, m, nu, params, sol)?);
        }
        recurrence = recurrence.max(cylindrical_recurrence_residual(n, m, nu, params, sol)?);
    }
    Ok(EllipticDefects { spectra, transform, recurrence })
}

fn each_block(n_max: u32, mut f: impl FnMut(u32, i32) -> Result<()>) -> Result<()> {
    for n in 0..=n_max {
        for m in -(n as i32)..=(n as i32) {
            f(n, m)?;
        }
    }
    Ok(())
}

/// Spectra, transformation and recurrence reports over all blocks `N ≤ n_max`.
pub fn check_elliptic_consistency(n_max: u32, nu: f64, a: f64, r: f64) -> Result<Vec<CheckReport>> {
    let start = std::time::Instant::now();
    let params = EllipticParams::from_a(a, r)?;
    let mut worst = EllipticDefects::default();
    each_block(n_max, |n, m| {
        let d = elliptic_defects(n, m, nu, &params)?;
        worst.spectra = worst.spectra.max(d.spectra);
        worst.transform = worst.transform.max(d.transform);
        worst.recurrence = worst.recurrence.max(d.recurrence);
        Ok(())
    })?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let p = json!({"N_max": n_max, "nu": nu, "a": a, "R": r});
    let mut out = vec![
        CheckReport::new("elliptic_spectra", p.clone(), worst.spectra, 1e-9),
        CheckReport::new("elliptic_transform", p.clone(), worst.transform, 1e-8),
        CheckReport::new("elliptic_recurrence", p, worst.recurrence, 1e-10),
    ];
    out[0].runtime_ms = ms;
    Ok(out)
}

/// At tiny `a` both forms reproduce `l(l+1)`.
pub fn check_small_a(n_max: u32, nu: f64) -> Result<CheckReport> {
    timed(|| {
        let params = EllipticParams::from_a(SMALL_A, 1.0)?;
        let mut worst: f64 = 0.0;
        each_block(n_max, |n, m| {
            let exact = l2_eigenvalues(n, m);
            let sph = solve_spherical_form(n, m, nu, &params)?;
            let cyl = solve_cylindrical_form(n, m, nu, &params)?;
            for ((e, s), c) in exact.iter().zip(&sph).zip(&cyl) {
                let scale = e.max(1.0);
                worst = worst.max((s.lambda_q - e).abs() / scale).max((c.lambda_q - e).abs() / scale);
            }
            Ok(())
        })?;
        Ok(CheckReport::new("elliptic_small_a", json!({"N_max": n_max, "nu": nu, "a": SMALL_A}), worst, 1e-9))
    })
}

/// Closed recurrence coefficients against the congruence oracle.
pub fn check_closed_operators(n_max: u32, nu: f64) -> Result<CheckReport> {
    timed(|| {
        let mut worst: f64 = 0.0;
        each_block(n_max, |n, m| {
            let pairs = [
                (d33_block(n, m, nu, OperatorMethod::Closed)?, d33_block(n, m, nu, OperatorMethod::Oracle)?),
                (l2_block(n, m, nu, OperatorMethod::Closed)?, l2_block(n, m, nu, OperatorMethod::Oracle)?),
            ];
            for (c, o) in &pairs {
                let scale = o.diag.iter().chain(&o.offdiag).fold(1.0f64, |s, x| s.max(x.abs()));
                worst = worst.max(c.max_difference(o) / scale);
            }
            Ok(())
        })?;
        Ok(CheckReport::new("elliptic_closed_operators", json!({"N_max": n_max, "nu": nu}), worst, 1e-9))
    })
}

/// `sn² + cn² = 1`, `dn² + k² sn² = 1` at random `(u, k)` and
/// `sn(K) = 1`, `cn(K) = 0`, `dn(K) = k'` at the quarter period.
pub fn check_jacobi_identities(samples: usize, seed: u64) -> Result<CheckReport> {
    timed(|| {
        let mut rng = Lcg::new(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let u = rng.uniform(-6.0, 6.0);
            let k = rng.uniform(0.0, 0.99);
            let (sn, cn, dn) = jacobi_elliptic(u, k);
            worst = worst.max((sn * sn + cn * cn - 1.0).abs()).max((dn * dn + k * k * sn * sn - 1.0).abs());
            let kk = complete_elliptic_k(k)?;
            let (s, c, d) = jacobi_elliptic(kk, k);
            let kp = ((1.0 - k) * (1.0 + k)).sqrt();
            worst = worst.max((s - 1.0).abs()).max(c.abs()).max((d - kp).abs());
        }
        Ok(CheckReport::new("jacobi_elliptic_identities", json!({"samples": samples, "seed": seed}), worst, 1e-13))
    })
}

pub(crate) fn default_suite() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &nu in &ELLIPTIC_NU {
        for &a in &ELLIPTIC_A {
            out.extend(check_elliptic_consistency(12, nu, a, 1.0)?);
        }
        out.push(check_small_a(12, nu)?);
        out.push(check_closed_operators(12, nu)?);
    }
    out.push(check_jacobi_identities(500, 11)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_consistency_grid() {
        for r in check_elliptic_consistency(5, 1.0, 0.25, 1.0).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn tiny_a_and_operators() {
        assert!(check_small_a(6, 2.0).unwrap().passed);
        assert!(check_closed_operators(6, 0.5).unwrap().passed);
    }

    #[test]
    fn jacobi_identities() {
        assert!(check_jacobi_identities(100, 5).unwrap().passed);
    }
}
