//! Flat-space (`ν → ∞`) and free-motion (`ν = 0`) forms of `W`.

use std::str::FromStr;

use super::coeffs::check_pair;
use crate::error::{Error, Result};
use crate::specfun::angular::{clebsch_gordan, racah_w, RacahArguments};
use crate::specfun::gamma::{ln_double_factorial, LogValue};
use crate::specfun::hyp::{hyp_terminating_regularized, TerminatingSeriesSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WLimitKind {
    /// Flat-space limit through a terminating `3F2(1)`.
    Flat3F2,
    /// Flat-space limit as a Clebsch–Gordan coefficient with quarter-integer momenta.
    FlatCg,
    /// Free motion on the sphere as a Racah coefficient.
    FreeRacah,
}

impl FromStr for WLimitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "flat_3f2" => WLimitKind::Flat3F2,
            "flat_cg" => WLimitKind::FlatCg,
            "free_racah" => WLimitKind::FreeRacah,
            other => return Err(Error::Usage(format!("unknown interbasis limit `{other}`"))),
        })
    }
}

fn azimuthal_sign(m: i32) -> f64 {
    if m > 0 && m % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

fn dfact(n: i64) -> Result<LogValue> {
    Ok(LogValue::exp(ln_double_factorial(n)?))
}

fn flat_3f2(n: u32, l: u32, m: i32, n3: u32) -> Result<f64> {
    let (ni, li, n3i) = (n as i64, l as i64, n3 as i64);
    let am = m.unsigned_abs() as i64;
    let radicand = dfact(ni - am - n3i)? * dfact(ni + am - n3i)?
        / (dfact(ni + li + 1)? * dfact(ni - li)? * LogValue::gamma(n3 as f64 + 1.0)?);
    let ang = LogValue::from_f64(2.0 * l as f64 + 1.0)
        * LogValue::gamma((li + am) as f64 + 1.0)?
        * LogValue::gamma((li - am) as f64 + 1.0)?;
    let mut pre = radicand.sqrt()? * ang.sqrt()? / LogValue::exp((li - n3i) as f64 * std::f64::consts::LN_2);
    pre.sign = azimuthal_sign(m) as i8;
    let (lf, n3f, af) = (l as f64, n3 as f64, am as f64);
    let spec = TerminatingSeriesSpec::new(
        vec![-n3f / 2.0, -(n3f - 1.0) / 2.0, -(n as f64 - lf) / 2.0],
        vec![(lf + af - n3f) / 2.0 + 1.0, (lf - af - n3f) / 2.0 + 1.0],
    )?;
    Ok(hyp_terminating_regularized(&spec, &[0, 1])?.times(pre))
}

fn flat_cg(n: u32, l: u32, m: i32, n3: u32) -> Result<f64> {
    let (nf, lf, n3f) = (n as f64, l as f64, n3 as f64);
    let am = m.unsigned_abs() as f64;
    let cg = clebsch_gordan(
        (nf + am) / 4.0,
        (nf + am - 2.0 * n3f) / 4.0,
        (nf - am - 1.0) / 4.0,
        (2.0 * n3f - nf + am - 1.0) / 4.0,
        (2.0 * lf - 1.0) / 4.0,
        (2.0 * am - 1.0) / 4.0,
    )?;
    Ok(azimuthal_sign(m) * cg)
}

fn free_racah(n: u32, l: u32, m: i32, n3: u32) -> Result<f64> {
    let j = n as f64 + 1.0;
    let m2 = n3 as f64 + 1.0;
    let am = m.unsigned_abs() as f64;
    let lf = l as f64;
    let a = (j + am - 1.0) / 4.0;
    let b = (j - am - 2.0) / 4.0;
    let c = (2.0 * lf - 1.0) / 4.0;
    let d = (j - am) / 4.0;
    let e = (j + am - 1.0) / 4.0;
    let f = (m2 - 1.0) / 2.0;
    let w = racah_w(&RacahArguments::new(a, b, e, d, c, f)?)?;
    // (J − l − 1)/2 = (N − l)/2
    let mut sign = azimuthal_sign(m);
    if ((n - l) / 2) % 2 == 1 {
        sign = -sign;
    }
    Ok(sign * ((lf + 0.5) * m2).sqrt() * w)
}

/// Closed-form limit of `W_{Nlm}^{n₃}`.
pub fn w_limit(kind: WLimitKind, n: u32, l: u32, m: i32, n3: u32) -> Result<f64> {
    check_pair(n, l, m, n3)?;
    match kind {
        WLimitKind::Flat3F2 => flat_3f2(n, l, m, n3),
        WLimitKind::FlatCg => flat_cg(n, l, m, n3),
        WLimitKind::FreeRacah => free_racah(n, l, m, n3),
    }
}
