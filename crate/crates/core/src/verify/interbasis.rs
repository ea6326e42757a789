//! Unitarity, cross-method agreement, reconstruction and kernel identities.

use num_complex::Complex64;
use serde_json::json;

use super::rng::Lcg;
use super::{timed, CheckReport};
use crate::bases::coords::SpherePoint;
use crate::bases::params::OscillatorParams;
use crate::bases::qn::{CylindricalQN, SphericalQN};
use crate::bases::wave::{wavefunction, BasisState};
use crate::error::{domain, Result};
use crate::interbasis::{w_block, Method};
use crate::specfun::angular::{racah_recurrence_coefficients, racah_recurrence_terms};
use crate::specfun::hyp::saalschutz_pair;

pub const UNITARITY_NU: [f64; 5] = [0.0, 0.5, 1.0, 3.7, 25.0];
pub const RECONSTRUCTION_SEED: u64 = 20260;

fn each_block(n_max: u32, mut f: impl FnMut(u32, i32) -> Result<()>) -> Result<()> {
    for n in 0..=n_max {
        for m in -(n as i32)..=(n as i32) {
            f(n, m)?;
        }
    }
    Ok(())
}

/// `max |WᵀW − I|` over every block with `N ≤ n_max`.
pub fn check_unitarity(n_max: u32, nu: f64) -> Result<CheckReport> {
    timed(|| {
        let mut worst: f64 = 0.0;
        each_block(n_max, |n, m| {
            worst = worst.max(w_block(n, m, nu, Method::F43)?.unitarity_defect());
            Ok(())
        })?;
        Ok(CheckReport::new("unitarity", json!({"N_max": n_max, "nu": nu, "method": "f43"}), worst, 1e-10))
    })
}

/// Largest entrywise spread among the three evaluators of `W`.
pub fn check_method_agreement(n_max: u32, nu: f64) -> Result<CheckReport> {
    timed(|| {
        let mut worst: f64 = 0.0;
        each_block(n_max, |n, m| {
            let f = w_block(n, m, nu, Method::F43)?;
            let r = w_block(n, m, nu, Method::Racah)?;
            let q = w_block(n, m, nu, Method::Quadrature)?;
            worst = worst.max(f.max_difference(&r)).max(f.max_difference(&q)).max(r.max_difference(&q));
            Ok(())
        })?;
        Ok(CheckReport::new("method_agreement", json!({"N_max": n_max, "nu": nu}), worst, 1e-9))
    })
}

/// Expands every spherical state of the block in cylindrical states (and back)
/// at `npoints` pseudo-random hemisphere points. The error is relative to
/// `max(1, |Ψ|)` so large-ν peaks do not dominate.
pub fn check_reconstruction(n: u32, m: i32, nu: f64, npoints: usize, seed: u64) -> Result<CheckReport> {
    if n > 10 {
        return Err(domain!("reconstruction checks support N ≤ 10, got {n}"));
    }
    timed(|| {
        let err = reconstruction_error(n, m, nu, npoints, seed)?;
        Ok(CheckReport::new(
            "reconstruction",
            json!({"N": n, "m": m, "nu": nu, "npoints": npoints, "seed": seed}),
            err,
            1e-8,
        ))
    })
}

fn reconstruction_error(n: u32, m: i32, nu: f64, npoints: usize, seed: u64) -> Result<f64> {
    let w = w_block(n, m, nu, Method::F43)?;
    let params = OscillatorParams::from_nu(nu)?;
    let mut rng = Lcg::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..npoints {
        let p: SpherePoint = rng.hemisphere_point();
        let sph = w
            .l_index
            .iter()
            .map(|&l| wavefunction(&BasisState::Spherical(SphericalQN::new(n, l, m)?), &params, &p))
            .collect::<Result<Vec<Complex64>>>()?;
        let cyl = w
            .n3_index
            .iter()
            .map(|&k| wavefunction(&BasisState::Cylindrical(CylindricalQN::new(n, m, k)?), &params, &p))
            .collect::<Result<Vec<Complex64>>>()?;
        for i in 0..w.dim() {
            let fwd: Complex64 = (0..w.dim()).map(|j| cyl[j] * w.entries[(i, j)]).sum();
            let back: Complex64 = (0..w.dim()).map(|j| sph[j] * w.entries[(j, i)]).sum();
            worst = worst
                .max((sph[i] - fwd).norm() / sph[i].norm().max(1.0))
                .max((cyl[i] - back).norm() / cyl[i].norm().max(1.0));
        }
    }
    Ok(worst)
}

/// Absolute term sum over the value of a terminating series at unit argument.
fn series_condition(n: u64, num: &[f64], den: &[f64]) -> f64 {
    let mut term = 1.0f64;
    let (mut total, mut abs_total) = (1.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) / (kf + 1.0);
        term *= num.iter().map(|x| x + kf).product::<f64>();
        term /= den.iter().map(|x| x + kf).product::<f64>();
        total += term;
        abs_total += term.abs();
    }
    abs_total / total.abs()
}

/// Both sides of the Saalschütz transformation at `samples` random balanced
/// parameter sets. Sets where either series is dominated by cancellation
/// (absolute term sum over 100× the value) or that come near a denominator
/// pole are redrawn.
pub fn check_saalschutz(samples: usize, seed: u64) -> Result<CheckReport> {
    timed(|| {
        let mut rng = Lcg::new(seed);
        let near_pole = |x: f64| x < 0.5 && (x - x.round()).abs() < 1e-3;
        let mut worst: f64 = 0.0;
        let mut accepted = 0;
        let mut drawn = 0;
        while accepted < samples {
            drawn += 1;
            if drawn > 100 * samples.max(1) {
                return Err(domain!("could not draw {samples} admissible Saalschütz sets"));
            }
            let n = 1 + (rng.next_u64() >> 40) % 7;
            let mut x = [0.0; 5];
            for v in x.iter_mut() {
                *v = rng.uniform(0.3, 6.0);
            }
            let [b, c, d, e, f] = x;
            let g = -(n as f64) + b + c + d + 1.0 - e - f;
            if near_pole(g) || g.abs() < 1e-3 || near_pole(b - f - n as f64 + 1.0) || near_pole(b - g - n as f64 + 1.0)
            {
                continue;
            }
            let nf = n as f64;
            if series_condition(n, &[b, c, d], &[e, f, g]) > 1e2
                || series_condition(n, &[b, e - c, e - d], &[e, b - f - nf + 1.0, b - g - nf + 1.0]) > 1e2
            {
                continue;
            }
            let (lhs, rhs) = saalschutz_pair(n, b, c, d, e, f, g)?;
            accepted += 1;
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
        }
        Ok(CheckReport::new("saalschutz", json!({"samples": samples, "seed": seed, "drawn": drawn}), worst, 1e-12))
    })
}

/// Three-term recurrence of `W(a b l d; c f)` in `c` at every admissible
/// integer point with all momenta in `0..=max`. The residual is measured
/// against the largest term, or against the largest coefficient times the
/// natural size `1/sqrt((2c+1)(2f+1))` of `W` when the row is all roundoff.
pub fn check_racah_recurrence(max: u32) -> Result<CheckReport> {
    timed(|| {
        let mut worst: f64 = 0.0;
        let mut count = 0u64;
        let r = 0..=max;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        for l in r.clone() {
                            for f in r.clone() {
                                let (af, bf, cf, df, lf, ff) =
                                    (a as f64, b as f64, c as f64, d as f64, l as f64, f as f64);
                                let Ok(t) = racah_recurrence_terms(af, bf, cf, df, lf, ff) else {
                                    continue;
                                };
                                let (bc, bcm, ac) = racah_recurrence_coefficients(af, bf, cf, df, lf, ff)?;
                                let coef =
                                    (cf * bc).abs().max(((cf + 1.0) * bcm).abs()).max(((2.0 * cf + 1.0) * ac).abs());
                                let natural = coef / ((2.0 * cf + 1.0) * (2.0 * ff + 1.0)).sqrt();
                                let scale = t.iter().fold(natural, |s, x| s.max(x.abs()));
                                if scale == 0.0 {
                                    continue;
                                }
                                count += 1;
                                worst = worst.max(t.iter().sum::<f64>().abs() / scale);
                            }
                        }
                    }
                }
            }
        }
        Ok(CheckReport::new("racah_recurrence", json!({"max_momentum": max, "points": count}), worst, 1e-11))
    })
}

pub(crate) fn default_suite() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &nu in &UNITARITY_NU {
        out.push(check_unitarity(12, nu)?);
    }
    for &nu in &UNITARITY_NU {
        out.push(check_method_agreement(12, nu)?);
    }
    for &nu in &[0.0, 2.0, 3.7] {
        let start = std::time::Instant::now();
        let mut worst: f64 = 0.0;
        each_block(8, |n, m| {
            worst = worst.max(reconstruction_error(n, m, nu, 100, RECONSTRUCTION_SEED)?);
            Ok(())
        })?;
        let mut r = CheckReport::new(
            "reconstruction",
            json!({"N_max": 8, "nu": nu, "npoints": 100, "seed": RECONSTRUCTION_SEED}),
            worst,
            1e-8,
        );
        r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        out.push(r);
    }
    out.push(check_saalschutz(200, RECONSTRUCTION_SEED)?);
    out.push(check_racah_recurrence(4)?);
    Ok(out)
}
