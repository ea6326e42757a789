//! Terminating generalized hypergeometric series at unit argument.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use super::gamma::{nonpositive_integer, CompensatedSum, LogValue, ScaledSum};
use crate::error::{domain, Error, Result};

/// Parameters of `pFq(a; b; 1)` with `p = q + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TerminatingSeriesSpec {
    numerators: Vec<f64>,
    denominators: Vec<f64>,
    degree: u64,
}

impl TerminatingSeriesSpec {
    /// Validates shape and termination. Denominators are checked when the
    /// series is evaluated, since the regularized path admits poles.
    pub fn new(numerators: Vec<f64>, denominators: Vec<f64>) -> Result<Self> {
        if numerators.is_empty() || numerators.len() != denominators.len() + 1 {
            return Err(Error::Usage(format!(
                "expected p = q + 1 parameters, got {} numerators and {} denominators",
                numerators.len(),
                denominators.len()
            )));
        }
        let degree = numerators
            .iter()
            .filter_map(|&a| nonpositive_integer(a))
            .min()
            .ok_or_else(|| domain!("series with numerators {numerators:?} does not terminate"))?;
        Ok(TerminatingSeriesSpec { numerators, denominators, degree })
    }

    pub fn numerators(&self) -> &[f64] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[f64] {
        &self.denominators
    }

    /// Index of the last nonzero term.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    fn check_denominator(&self, b: f64) -> Result<()> {
        if let Some(m) = nonpositive_integer(b) {
            if m < self.degree {
                return Err(domain!(
                    "denominator {b} reaches zero before the series terminates at k = {}",
                    self.degree
                ));
            }
        }
        Ok(())
    }
}

/// Plain evaluation of `Σ_{k≤n} Π(a_i)_k / (Π(b_j)_k k!)` with compensated summation.
pub fn hyp_terminating(spec: &TerminatingSeriesSpec) -> Result<f64> {
    for &b in &spec.denominators {
        spec.check_denominator(b)?;
    }
    let mut term = 1.0;
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 0..spec.degree {
        let kf = k as f64;
        let num: f64 = spec.numerators.iter().map(|a| a + kf).product();
        let den: f64 = spec.denominators.iter().map(|b| b + kf).product::<f64>() * (kf + 1.0);
        term *= num / den;
        acc.add(term);
    }
    Ok(acc.value())
}

/// Regularized evaluation: the denominators listed in `regularized` carry
/// their `1/Γ(b_j)` prefactor folded into every term, giving
///
/// `Σ_k Π(a_i)_k / (Π_{j∉reg}(b_j)_k k!) · Π_{j∈reg} 1/Γ(b_j + k)`.
///
/// Those denominators may be nonpositive integers: `1/Γ` vanishes there and
/// the compensating series terms are kept intact instead of forming `0·∞`.
pub fn hyp_terminating_regularized(spec: &TerminatingSeriesSpec, regularized: &[usize]) -> Result<ScaledSum> {
    if let Some(&bad) = regularized.iter().find(|&&j| j >= spec.denominators.len()) {
        return Err(Error::Usage(format!("no denominator with index {bad}")));
    }
    for (j, &b) in spec.denominators.iter().enumerate() {
        if !regularized.contains(&j) {
            spec.check_denominator(b)?;
        }
    }
    let mut terms = Vec::with_capacity(spec.degree as usize + 1);
    let mut ratio = LogValue::ONE;
    for k in 0..=spec.degree {
        if k > 0 {
            let kf = (k - 1) as f64;
            for &a in &spec.numerators {
                ratio = ratio * LogValue::from_f64(a + kf);
            }
            for (j, &b) in spec.denominators.iter().enumerate() {
                if !regularized.contains(&j) {
                    ratio = ratio / LogValue::from_f64(b + kf);
                }
            }
            ratio = ratio / LogValue::from_f64(kf + 1.0);
        }
        let mut term = ratio;
        for &j in regularized {
            term = term * LogValue::rgamma(spec.denominators[j] + k as f64);
        }
        terms.push(term);
    }
    Ok(ScaledSum::from_terms(&terms))
}

/// Exact rational evaluation; every `f64` parameter is converted to the
/// rational number it represents exactly. Returns the exact sum.
pub fn hyp_terminating_exact(spec: &TerminatingSeriesSpec) -> Result<BigRational> {
    for &b in &spec.denominators {
        spec.check_denominator(b)?;
    }
    let to_rat = |x: f64| BigRational::from_float(x).ok_or_else(|| domain!("parameter {x} is not finite"));
    let nums = spec.numerators.iter().map(|&a| to_rat(a)).collect::<Result<Vec<_>>>()?;
    let dens = spec.denominators.iter().map(|&b| to_rat(b)).collect::<Result<Vec<_>>>()?;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..spec.degree {
        let kr = BigRational::from_integer(BigInt::from(k));
        for a in &nums {
            term *= a + &kr;
        }
        for b in &dens {
            let d = b + &kr;
            if d.is_zero() {
                return Err(domain!("zero denominator at k = {k}"));
            }
            term /= d;
        }
        term /= BigRational::from_integer(BigInt::from(k + 1));
        sum += &term;
    }
    Ok(sum)
}

/// Convenience: the exact value rounded to `f64`.
pub fn hyp_terminating_exact_f64(spec: &TerminatingSeriesSpec) -> Result<f64> {
    let v = hyp_terminating_exact(spec)?;
    v.to_f64().ok_or_else(|| domain!("exact value not representable"))
}

/// Both sides of the Saalschütz transformation of a balanced `4F3(1)`:
///
/// `4F3(-n,b,c,d; e,f,g) = (f-b)_n (g-b)_n / ((f)_n (g)_n) · 4F3(-n,b,e-c,e-d; e, b-f-n+1, b-g-n+1)`,
///
/// valid for balanced parameters `e + f + g = 1 - n + b + c + d`. Returns `(lhs, rhs)`.
pub fn saalschutz_pair(n: u64, b: f64, c: f64, d: f64, e: f64, f: f64, g: f64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let balance = e + f + g - (-nf + b + c + d + 1.0);
    if balance.abs() > 1e-9 * (1.0 + b.abs() + c.abs() + d.abs() + e.abs() + f.abs() + g.abs()) {
        return Err(domain!("parameters are not Saalschützian (defect {balance})"));
    }
    let lhs = hyp_terminating(&TerminatingSeriesSpec::new(vec![-nf, b, c, d], vec![e, f, g])?)?;
    let pre = (LogValue::pochhammer(f - b, n) * LogValue::pochhammer(g - b, n)
        / (LogValue::pochhammer(f, n) * LogValue::pochhammer(g, n)))
    .to_f64();
    let rhs = hyp_terminating(&TerminatingSeriesSpec::new(
        vec![-nf, b, e - c, e - d],
        vec![e, b - f - nf + 1.0, b - g - nf + 1.0],
    )?)?;
    Ok((lhs, pre * rhs))
}
