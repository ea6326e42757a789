//! Gamma-function machinery in log space.
//!
//! Every Γ-ratio prefactor in the crate is accumulated as a [`LogValue`]
//! (sign plus logarithm of the magnitude) and exponentiated once at the end.

use std::ops::{Div, Mul};

use crate::error::{domain, Result};

/// Tolerance used to decide whether a real number is a nonpositive integer.
pub const INTEGER_TOL: f64 = 1e-9;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain!("log_gamma requires x > 0, got {x}"));
    }
    Ok(libm::lgamma_r(x).0)
}

/// Returns `Some(n)` when `x` is the nonpositive integer `-n` (within [`INTEGER_TOL`]).
pub fn nonpositive_integer(x: f64) -> Option<u64> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= INTEGER_TOL {
        Some((-r) as u64)
    } else {
        None
    }
}

/// Returns `Some(n)` when `x` is the nonnegative integer `n` (within [`INTEGER_TOL`]).
pub fn nonnegative_integer(x: f64) -> Option<u64> {
    let r = x.round();
    if r >= 0.0 && (x - r).abs() <= INTEGER_TOL {
        Some(r as u64)
    } else {
        None
    }
}

/// A real number stored as `sign · exp(ln_abs)`; `sign == 0` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: i8,
}

impl LogValue {
    pub const ONE: LogValue = LogValue { ln_abs: 0.0, sign: 1 };
    pub const ZERO: LogValue = LogValue { ln_abs: f64::NEG_INFINITY, sign: 0 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogValue { ln_abs: x.abs().ln(), sign: if x > 0.0 { 1 } else { -1 } }
        }
    }

    /// `Γ(x)` for any real `x` that is not a pole.
    pub fn gamma(x: f64) -> Result<Self> {
        if nonpositive_integer(x).is_some() {
            return Err(domain!("gamma pole at {x}"));
        }
        let (ln_abs, s) = libm::lgamma_r(x);
        Ok(LogValue { ln_abs, sign: if s < 0 { -1 } else { 1 } })
    }

    /// `1/Γ(x)`, which is an entire function: zero at the poles of Γ.
    pub fn rgamma(x: f64) -> Self {
        if nonpositive_integer(x).is_some() {
            return Self::ZERO;
        }
        let (ln_abs, s) = libm::lgamma_r(x);
        LogValue { ln_abs: -ln_abs, sign: if s < 0 { -1 } else { 1 } }
    }

    /// `x!` as `Γ(x + 1)`, requiring a positive gamma argument.
    pub fn factorial(x: f64) -> Result<Self> {
        if !(x + 1.0 > 0.0) {
            return Err(domain!("factorial of {x} has nonpositive gamma argument"));
        }
        Self::gamma(x + 1.0)
    }

    /// Pochhammer symbol `(a)_k`.
    pub fn pochhammer(a: f64, k: u64) -> Self {
        let mut acc = Self::ONE;
        for j in 0..k {
            acc = acc * Self::from_f64(a + j as f64);
        }
        acc
    }

    /// `2^x` and similar positive powers.
    pub fn exp(ln: f64) -> Self {
        LogValue { ln_abs: ln, sign: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Square root; a negative radicand is a domain error.
    pub fn sqrt(self) -> Result<Self> {
        match self.sign {
            0 => Ok(Self::ZERO),
            1 => Ok(LogValue { ln_abs: 0.5 * self.ln_abs, sign: 1 }),
            _ => Err(domain!("square root of a negative Γ-ratio")),
        }
    }

    pub fn powi(self, n: i32) -> Self {
        if self.sign == 0 {
            return if n == 0 { Self::ONE } else { Self::ZERO };
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        LogValue { ln_abs: self.ln_abs * n as f64, sign }
    }

    pub fn neg(self) -> Self {
        LogValue { ln_abs: self.ln_abs, sign: -self.sign }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * self.ln_abs.exp(),
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        LogValue { ln_abs: self.ln_abs + rhs.ln_abs, sign: self.sign * rhs.sign }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    /// Division by a zero `LogValue` yields an infinite magnitude; callers
    /// only divide by values they have checked to be nonzero.
    fn div(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if rhs.sign == 0 { self.sign } else { self.sign * rhs.sign };
        LogValue { ln_abs: self.ln_abs - rhs.ln_abs, sign }
    }
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A sum of [`LogValue`] terms, rescaled by the largest magnitude before
/// being added, so that terms far outside the `f64` range still combine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledSum {
    /// Sum of the terms divided by `exp(ln_scale)`.
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl ScaledSum {
    pub fn from_terms(terms: &[LogValue]) -> Self {
        let ln_scale = terms.iter().filter(|t| !t.is_zero()).map(|t| t.ln_abs).fold(f64::NEG_INFINITY, f64::max);
        if ln_scale == f64::NEG_INFINITY {
            return ScaledSum { mantissa: 0.0, ln_scale: 0.0 };
        }
        let mut acc = CompensatedSum::new();
        for t in terms.iter().filter(|t| !t.is_zero()) {
            acc.add(t.sign as f64 * (t.ln_abs - ln_scale).exp());
        }
        ScaledSum { mantissa: acc.value(), ln_scale }
    }

    /// Multiplies by a prefactor and returns the plain value.
    pub fn times(self, prefactor: LogValue) -> f64 {
        if prefactor.is_zero() || self.mantissa == 0.0 {
            return 0.0;
        }
        prefactor.sign as f64 * self.mantissa * (prefactor.ln_abs + self.ln_scale).exp()
    }

    pub fn value(self) -> f64 {
        self.times(LogValue::ONE)
    }
}

/// `ln n!!` for `n ≥ -1`.
pub fn ln_double_factorial(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(domain!("double factorial of {n}"));
    }
    if n <= 0 {
        return Ok(0.0);
    }
    let half = n as f64 / 2.0;
    let mut v = half * std::f64::consts::LN_2 + libm::lgamma_r(half + 1.0).0;
    if n % 2 == 1 {
        v += 0.5 * (2.0 / std::f64::consts::PI).ln();
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_gamma_examples() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.5723649429247001, max_relative = 1e-15);
        let fact9: f64 = (1..=9).map(|k| (k as f64).ln()).sum();
        assert_relative_eq!(log_gamma(10.0).unwrap(), fact9, max_relative = 1e-14);
        assert_relative_eq!(log_gamma(10.0).unwrap(), 12.801827480081469, max_relative = 1e-14);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn log_gamma_matches_recurrence_over_range() {
        // ln Γ(x+1) - ln Γ(x) = ln x, checked across the documented range.
        let mut x = 1e-3;
        while x < 1e6 {
            let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
            let scale = log_gamma(x).unwrap().abs().max(log_gamma(x + 1.0).unwrap().abs()).max(1.0);
            assert!((lhs - x.ln()).abs() <= 4e-15 * scale, "x = {x}");
            x *= 1.37;
        }
    }

    #[test]
    fn log_gamma_large_argument_matches_stirling() {
        for &x in &[1e3, 1e4, 1e5, 1e6] {
            let stirling = (x - 0.5) * f64::ln(x) - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
                - 1.0 / (360.0 * x * x * x);
            assert_relative_eq!(log_gamma(x).unwrap(), stirling, max_relative = 1e-14);
        }
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles() {
        assert!(LogValue::rgamma(0.0).is_zero());
        assert!(LogValue::rgamma(-3.0).is_zero());
        assert_relative_eq!(
            LogValue::rgamma(-0.5).to_f64(),
            -1.0 / (2.0 * std::f64::consts::PI.sqrt()),
            max_relative = 1e-14
        );
        assert!(LogValue::gamma(-2.0).is_err());
    }

    #[test]
    fn pochhammer_and_sums() {
        assert_relative_eq!(LogValue::pochhammer(3.0, 4).to_f64(), 3.0 * 4.0 * 5.0 * 6.0);
        assert!(LogValue::pochhammer(-2.0, 3).is_zero());
        assert_eq!(LogValue::pochhammer(-2.0, 2).to_f64(), 2.0);
        let s = ScaledSum::from_terms(&[LogValue::exp(800.0), LogValue::exp(800.0).neg(), LogValue::exp(799.0)]);
        assert_relative_eq!(s.mantissa, (-1.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(s.times(LogValue::exp(-800.0)), (-1.0f64).exp(), max_relative = 1e-13);
    }

    #[test]
    fn double_factorials() {
        assert_relative_eq!(ln_double_factorial(7).unwrap().exp(), 105.0, max_relative = 1e-14);
        assert_relative_eq!(ln_double_factorial(8).unwrap().exp(), 384.0, max_relative = 1e-14);
        assert_eq!(ln_double_factorial(-1).unwrap(), 0.0);
        assert!(ln_double_factorial(-2).is_err());
    }
}
