//! Single spherical↔cylindrical transition coefficients `W_{Nlm}^{n₃}(ν)`.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::bases::qn::{CylindricalQN, SphericalQN};
use crate::error::{Error, Result};
use crate::specfun::angular::{racah_w, RacahArguments};
use crate::specfun::gamma::LogValue;
use crate::specfun::hyp::{hyp_terminating_regularized, TerminatingSeriesSpec};
use crate::specfun::poly::jacobi_p;
use crate::specfun::quad::integrate_adaptive;

/// Node count used by the quadrature route when nothing else is requested.
pub const DEFAULT_QUAD_NODES: usize = 200;
/// Upper limit of the node doubling.
pub const MAX_QUAD_NODES: usize = 1600;
const QUAD_TOL: f64 = 1e-11;

/// Initial node count: `OSC_SPHERE_QUAD_NODES` if set, otherwise 200.
pub fn quadrature_nodes() -> Result<usize> {
    match std::env::var("OSC_SPHERE_QUAD_NODES") {
        Err(_) => Ok(DEFAULT_QUAD_NODES),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Usage(format!("OSC_SPHERE_QUAD_NODES must be a positive integer, got `{v}`"))),
        },
    }
}

pub(crate) fn check_pair(n: u32, l: u32, m: i32, n3: u32) -> Result<()> {
    SphericalQN::new(n, l, m)?;
    CylindricalQN::new(n, m, n3)?;
    Ok(())
}

fn azimuthal_sign(m: i32) -> i8 {
    // (−1)^{(m+|m|)/2}: −1 for odd positive m
    if m > 0 && m % 2 != 0 {
        -1
    } else {
        1
    }
}

fn g(x: f64) -> Result<LogValue> {
    LogValue::gamma(x)
}

/// `W` from the closed `4F3(1)` form. The two denominators
/// `(l±|m|−n₃)/2 + 1` can be nonpositive integers; their `1/Γ` is folded
/// into the series terms.
pub fn w_via_4f3(n: u32, l: u32, m: i32, n3: u32, nu: f64) -> Result<f64> {
    check_pair(n, l, m, n3)?;
    let (nf, lf, n3f) = (n as f64, l as f64, n3 as f64);
    let am = m.unsigned_abs() as f64;
    let mut pre = LogValue::exp(0.5 * PI.ln() - (lf + nu + 1.0) * LN_2);
    pre.sign = azimuthal_sign(m);
    let outer = LogValue::from_f64((2.0 * lf + 1.0) * (n3f + nu + 1.0)) * g(lf + am + 1.0)? * g(lf - am + 1.0)?;
    let radicand = g((nf + lf) / 2.0 + nu + 2.0)?
        * g((nf - lf + 3.0) / 2.0 + nu)?
        * g(n3f + 2.0 * nu + 2.0)?
        * g((nf - am - n3f) / 2.0 + 1.0)?
        * g((nf + am - n3f) / 2.0 + 1.0)?
        / (g((nf + lf + 3.0) / 2.0)?
            * g((nf - lf) / 2.0 + 1.0)?
            * g((nf - am + n3f) / 2.0 + nu + 2.0)?
            * g((nf + am + n3f) / 2.0 + nu + 2.0)?
            * g(n3f + 1.0)?);
    let pre = pre * outer.sqrt()? * radicand.sqrt()? / g(nu + 1.5)?;
    let spec = TerminatingSeriesSpec::new(
        vec![-n3f / 2.0, -(n3f - 1.0) / 2.0, -(nf - lf) / 2.0, (nf + lf) / 2.0 + nu + 2.0],
        vec![nu + 1.5, (lf + am - n3f) / 2.0 + 1.0, (lf - am - n3f) / 2.0 + 1.0],
    )?;
    Ok(hyp_terminating_regularized(&spec, &[1, 2])?.times(pre))
}

/// Racah arguments `(a, b, e, d, c, f)` for the real-argument representation.
pub fn racah_arguments(n: u32, l: u32, m: i32, n3: u32, nu: f64) -> Result<RacahArguments> {
    let (nf, lf, n3f) = (n as f64, l as f64, n3 as f64);
    let am = m.unsigned_abs() as f64;
    let a = (nf + am) / 4.0;
    let b = (nf - am - 1.0) / 4.0;
    let c = (2.0 * lf - 1.0) / 4.0;
    let d = (nf - am) / 4.0 + nu / 2.0 + 0.25;
    let e = (nf + am) / 4.0 + nu / 2.0;
    let f = n3f / 2.0 + nu / 2.0;
    RacahArguments::new(a, b, e, d, c, f)
}

/// `W = (−1)^{(N−l)/2 + (m+|m|)/2} sqrt((l+½)(n₃+ν+1)) W(abed; cf)`.
pub fn w_via_racah(n: u32, l: u32, m: i32, n3: u32, nu: f64) -> Result<f64> {
    check_pair(n, l, m, n3)?;
    let args = racah_arguments(n, l, m, n3, nu)?;
    let mut sign = azimuthal_sign(m) as f64;
    if ((n - l) / 2) % 2 == 1 {
        sign = -sign;
    }
    Ok(sign * ((l as f64 + 0.5) * (n3 as f64 + nu + 1.0)).sqrt() * racah_w(&args)?)
}

/// Prefactor multiplying the `φ₂` integral, from matching the `α → 0`
/// behaviour of both bases against the orthonormal `K_{n₃}`.
fn overlap_prefactor(n: u32, l: u32, m: i32, n3: u32, nu: f64) -> Result<LogValue> {
    let (nf, lf, n3f) = (n as f64, l as f64, n3 as f64);
    let am = m.unsigned_abs() as f64;
    let nrho = (nf - am - n3f) / 2.0;
    let ck2 = LogValue::from_f64(n3f + nu + 1.0) * g(n3f + 1.0)? * g(n3f + 2.0 * nu + 2.0)?
        / (LogValue::exp((2.0 * nu + 1.0) * LN_2) * g(n3f + nu + 1.5)? * g(n3f + nu + 1.5)?);
    let cz2 = LogValue::from_f64(2.0 * (nf + nu + 2.0)) * g((nf - lf) / 2.0 + 1.0)? * g((nf + lf) / 2.0 + nu + 2.0)?
        / (g((nf + lf + 3.0) / 2.0)? * g((nf - lf + 3.0) / 2.0 + nu)?);
    let cphi2 = LogValue::from_f64(2.0 * (nf + nu + 2.0)) * g(nrho + 1.0)? * g((nf + am + n3f) / 2.0 + nu + 2.0)?
        / (g(nrho + am + 1.0)? * g((nf - am + n3f) / 2.0 + nu + 2.0)?);
    let ang2 = LogValue::from_f64(2.0 * lf + 1.0) * g(lf + am + 1.0)? / (LogValue::from_f64(2.0) * g(lf - am + 1.0)?);
    let mut pre =
        (ck2 * cz2 * ang2 / cphi2).sqrt()? * g(nrho + 1.0)? / (g(nrho + am + 1.0)? * LogValue::exp(am * LN_2));
    pre.sign *= azimuthal_sign(m);
    Ok(pre)
}

/// The `φ₂` integral
/// `∫ (sin φ₂)^{l−|m|} (cos φ₂)^{2ν+2} P_{(N−l)/2}^{(l+½, ν+½)}(cos 2φ₂) P_{n₃}^{(ν+½, ν+½)}(sin φ₂) dφ₂`
/// over `[−π/2, π/2]`, evaluated as twice the half-range integral when the
/// integrand is even and as zero when it is odd.
pub fn overlap_integral(n: u32, l: u32, m: i32, n3: u32, nu: f64, nodes: usize) -> Result<f64> {
    let am = m.unsigned_abs();
    if (l - am + n3) % 2 == 1 {
        return Ok(0.0);
    }
    let nr = (n - l) / 2;
    let lm = (l - am) as i32;
    let f = |x: f64| {
        let (s, c) = x.sin_cos();
        let cpow = if c <= 0.0 { 0.0 } else { ((2.0 * nu + 2.0) * c.ln()).exp() };
        s.powi(lm)
            * cpow
            * jacobi_p(nr, l as f64 + 0.5, nu + 0.5, (2.0 * x).cos())
            * jacobi_p(n3, nu + 0.5, nu + 0.5, s)
    };
    Ok(2.0 * integrate_adaptive(0.0, FRAC_PI_2, nodes, MAX_QUAD_NODES.max(nodes), QUAD_TOL, f)?)
}

/// `W` from the overlap integral, starting at `nodes` Gauss–Legendre points
/// and doubling until two estimates agree.
pub fn overlap_oracle(n: u32, l: u32, m: i32, n3: u32, nu: f64, nodes: usize) -> Result<f64> {
    check_pair(n, l, m, n3)?;
    if nodes < 64 {
        return Err(Error::Usage(format!("quadrature needs at least 64 nodes, got {nodes}")));
    }
    let a = overlap_integral(n, l, m, n3, nu, nodes)?;
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(overlap_prefactor(n, l, m, n3, nu)?.to_f64() * a)
}
