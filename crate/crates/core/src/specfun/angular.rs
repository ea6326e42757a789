//! Angular-momentum recoupling at real arguments: triangle coefficients,
//! Racah coefficients through a terminating `4F3(1)`, Clebsch–Gordan
//! coefficients and the three-term Racah recurrence.

use super::gamma::{nonnegative_integer, LogValue, ScaledSum, INTEGER_TOL};
use super::hyp::{hyp_terminating_regularized, TerminatingSeriesSpec};
use crate::error::{domain, Result};

fn triangle_delta_log(a: f64, b: f64, c: f64) -> Result<LogValue> {
    let args = [a + b - c + 1.0, a - b + c + 1.0, b + c - a + 1.0, a + b + c + 2.0];
    if let Some(bad) = args.iter().find(|&&x| !(x > 0.0)) {
        return Err(domain!("Δ({a}, {b}, {c}) has nonpositive gamma argument {bad}"));
    }
    let num = LogValue::gamma(args[0])? * LogValue::gamma(args[1])? * LogValue::gamma(args[2])?;
    (num / LogValue::gamma(args[3])?).sqrt()
}

/// `Δ(abc) = sqrt(Γ(a+b-c+1) Γ(a-b+c+1) Γ(b+c-a+1) / Γ(a+b+c+2))`.
pub fn triangle_delta(a: f64, b: f64, c: f64) -> Result<f64> {
    Ok(triangle_delta_log(a, b, c)?.to_f64())
}

/// Arguments of the Racah coefficient `W(a b e d; c f)`.
///
/// The coefficient couples the triads `(a b c)`, `(c d e)`, `(a e f)` and
/// `(b d f)`; construction fails unless all four triangle coefficients have
/// positive gamma arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RacahArguments {
    pub a: f64,
    pub b: f64,
    pub e: f64,
    pub d: f64,
    pub c: f64,
    pub f: f64,
}

impl RacahArguments {
    pub fn new(a: f64, b: f64, e: f64, d: f64, c: f64, f: f64) -> Result<Self> {
        triangle_delta_log(a, b, c)?;
        triangle_delta_log(c, d, e)?;
        triangle_delta_log(a, e, f)?;
        triangle_delta_log(b, d, f)?;
        Ok(RacahArguments { a, b, e, d, c, f })
    }
}

/// Racah coefficient from its `4F3(1)` representation.
///
/// Factorials are read as `Γ(x + 1)`. The two factorials whose arguments can
/// reach negative integers for real-valued arguments are folded into the
/// series terms (regularized summation), so that `1/Γ` poles cancel term by term.
pub fn racah_w(args: &RacahArguments) -> Result<f64> {
    let RacahArguments { a, b, e, d, c, f } = *args;
    let deltas = triangle_delta_log(a, b, c)?
        * triangle_delta_log(c, d, e)?
        * triangle_delta_log(a, e, f)?
        * triangle_delta_log(b, d, f)?;
    let prefactor = deltas
        * LogValue::gamma(a + b + d + e + 2.0)?
        * LogValue::rgamma(a + b - c + 1.0)
        * LogValue::rgamma(d + e - c + 1.0)
        * LogValue::rgamma(a - f + e + 1.0)
        * LogValue::rgamma(b - f + d + 1.0);
    let spec = TerminatingSeriesSpec::new(
        vec![-a - b + c, -b - d + f, -a - e + f, c - d - e],
        vec![-a - b - d - e - 1.0, -a + c - d + f + 1.0, -b + c - e + f + 1.0],
    )?;
    let series: ScaledSum = hyp_terminating_regularized(&spec, &[1, 2])?;
    Ok(series.times(prefactor))
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6} = (-1)^{j1+j2+j4+j5} W(j1 j2 j5 j4; j3 j6)`.
///
/// Requires `j1 + j2 + j4 + j5` to be an integer so that the phase is real.
pub fn wigner_6j(j1: f64, j2: f64, j3: f64, j4: f64, j5: f64, j6: f64) -> Result<f64> {
    let phase_arg = j1 + j2 + j4 + j5;
    let p = phase_arg.round();
    if (phase_arg - p).abs() > INTEGER_TOL {
        return Err(domain!("6j phase exponent {phase_arg} is not an integer"));
    }
    let w = racah_w(&RacahArguments::new(j1, j2, j5, j4, j3, j6)?)?;
    Ok(if (p as i64).rem_euclid(2) == 0 { w } else { -w })
}

fn is_half_integer(x: f64) -> bool {
    let t = 2.0 * x;
    (t - t.round()).abs() <= INTEGER_TOL
}

/// Clebsch–Gordan coefficient `C^{cγ}_{aα; bβ}` (Condon–Shortley) from the
/// Racah single-sum formula with factorials read as `Γ(x + 1)`.
///
/// For conventional (half-)integer momenta the selection rules return zero;
/// for general real arguments the formula is evaluated as long as the sum
/// terminates and the square-root radicand is positive.
pub fn clebsch_gordan(a: f64, alpha: f64, b: f64, beta: f64, c: f64, gamma: f64) -> Result<f64> {
    if (alpha + beta - gamma).abs() > INTEGER_TOL {
        return Ok(0.0);
    }
    let conventional = [a, alpha, b, beta, c, gamma].iter().all(|&x| is_half_integer(x));
    if conventional {
        let integral = |x: f64| nonnegative_integer(x).is_some();
        if alpha.abs() > a + INTEGER_TOL
            || beta.abs() > b + INTEGER_TOL
            || gamma.abs() > c + INTEGER_TOL
            || !integral(a + b - c)
            || !integral(a - b + c)
            || !integral(b + c - a)
            || !integral(a - alpha)
            || !integral(b - beta)
            || !integral(c - gamma)
        {
            return Ok(0.0);
        }
    }
    let radicand = LogValue::from_f64(2.0 * c + 1.0)
        * LogValue::factorial(a + b - c)?
        * LogValue::factorial(a - b + c)?
        * LogValue::factorial(-a + b + c)?
        / LogValue::factorial(a + b + c + 1.0)?
        * LogValue::factorial(a + alpha)?
        * LogValue::factorial(a - alpha)?
        * LogValue::factorial(b + beta)?
        * LogValue::factorial(b - beta)?
        * LogValue::factorial(c + gamma)?
        * LogValue::factorial(c - gamma)?;
    let prefactor = radicand.sqrt()?;
    let zmax = [a + b - c, a - alpha, b + beta]
        .iter()
        .filter_map(|&x| nonnegative_integer(x))
        .min()
        .ok_or_else(|| domain!("Clebsch–Gordan sum does not terminate"))?;
    let mut terms = Vec::with_capacity(zmax as usize + 1);
    for z in 0..=zmax {
        let zf = z as f64;
        let mut t = LogValue::rgamma(zf + 1.0)
            * LogValue::rgamma(a + b - c - zf + 1.0)
            * LogValue::rgamma(a - alpha - zf + 1.0)
            * LogValue::rgamma(b + beta - zf + 1.0)
            * LogValue::rgamma(c - b + alpha + zf + 1.0)
            * LogValue::rgamma(c - a - beta + zf + 1.0);
        if z % 2 == 1 {
            t = t.neg();
        }
        terms.push(t);
    }
    Ok(ScaledSum::from_terms(&terms).times(prefactor))
}

/// Coefficients of the three-term recurrence in `c` for `{a b c; d l f}`,
/// returned as `(B_c, B_{c-1}, A_c)`.
pub fn racah_recurrence_coefficients(a: f64, b: f64, c: f64, d: f64, l: f64, f: f64) -> Result<(f64, f64, f64)> {
    let b_coef = |c: f64| -> Result<f64> {
        let sq = (a + b + c + 2.0)
            * (-a + b + c + 1.0)
            * (a - b + c + 1.0)
            * (a + b - c)
            * (d - l + c + 1.0)
            * (d + l - c)
            * (d + l + c + 2.0)
            * (-d + l + c + 1.0);
        if sq < -1e-9 * (1.0 + (a + b + c + d + l).abs()).powi(8) {
            return Err(domain!("recurrence coefficient B_{c} has negative radicand {sq}"));
        }
        Ok(sq.max(0.0).sqrt())
    };
    let j = |x: f64| x * (x + 1.0);
    let a_c = (j(a) - j(b)) * (j(d) - j(l)) + j(c) * (j(a) + j(b) + j(d) + j(l) - j(c)) - 2.0 * j(c) * j(f);
    Ok((b_coef(c)?, b_coef(c - 1.0)?, a_c))
}

/// The three terms `c·B_c·W(c+1)`, `(c+1)·B_{c-1}·W(c-1)` and `(2c+1)·A_c·W(c)`,
/// with `W(x) = W(a b l d; x f)`. A neighbour outside the triangle domain is
/// admitted only when its coefficient vanishes.
pub fn racah_recurrence_terms(a: f64, b: f64, c: f64, d: f64, l: f64, f: f64) -> Result<[f64; 3]> {
    let (b_c, b_cm1, a_c) = racah_recurrence_coefficients(a, b, c, d, l, f)?;
    let neighbour = |cc: f64, coef: f64| -> Result<f64> {
        match RacahArguments::new(a, b, l, d, cc, f) {
            Ok(args) => racah_w(&args),
            Err(_) if coef.abs() <= 1e-12 => Ok(0.0),
            Err(e) => Err(e),
        }
    };
    let w0 = racah_w(&RacahArguments::new(a, b, l, d, c, f)?)?;
    let up = if b_c == 0.0 { 0.0 } else { c * b_c * neighbour(c + 1.0, b_c)? };
    let down = if b_cm1 == 0.0 { 0.0 } else { (c + 1.0) * b_cm1 * neighbour(c - 1.0, b_cm1)? };
    Ok([up, down, (2.0 * c + 1.0) * a_c * w0])
}

/// Residual of the three-term Racah recurrence; zero for an exact `racah_w`.
pub fn racah_recurrence_residual(a: f64, b: f64, c: f64, d: f64, l: f64, f: f64) -> Result<f64> {
    Ok(racah_recurrence_terms(a, b, c, d, l, f)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Racah's single-sum formula for W(abcd; ef) at integer/half-integer momenta,
    /// written independently of the 4F3 route.
    fn racah_sum_oracle(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Option<f64> {
        let fact = |x: f64| -> Option<f64> {
            if x < -1e-9 {
                return None;
            }
            Some((1..=(x.round() as u64)).map(|k| k as f64).product())
        };
        let tri = |x: f64, y: f64, z: f64| -> Option<f64> {
            Some((fact(x + y - z)? * fact(x - y + z)? * fact(-x + y + z)? / fact(x + y + z + 1.0)?).sqrt())
        };
        let pre = tri(a, b, e)? * tri(c, d, e)? * tri(a, c, f)? * tri(b, d, f)?;
        let lo = [a + b + e, c + d + e, a + c + f, b + d + f].iter().cloned().fold(f64::MIN, f64::max);
        let hi = [a + b + c + d, a + d + e + f, b + c + e + f].iter().cloned().fold(f64::MAX, f64::min);
        let mut sum = 0.0;
        let mut z = lo;
        while z <= hi + 1e-9 {
            let den = fact(z - a - b - e)?
                * fact(z - c - d - e)?
                * fact(z - a - c - f)?
                * fact(z - b - d - f)?
                * fact(a + b + c + d - z)?
                * fact(a + d + e + f - z)?
                * fact(b + c + e + f - z)?;
            let sign = if ((z + a + b + c + d).round() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            sum += sign * fact(z + 1.0)? / den;
            z += 1.0;
        }
        Some(pre * sum)
    }

    #[test]
    fn triangle_examples() {
        assert_relative_eq!(triangle_delta(0.0, 0.0, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(triangle_delta(1.0, 1.0, 1.0).unwrap(), (1.0f64 / 24.0).sqrt(), epsilon = 1e-15);
        assert_relative_eq!(triangle_delta(1.0, 0.0, 1.0).unwrap(), (1.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert!(triangle_delta(3.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn racah_one_zero_argument() {
        // {1 1 0; 1 1 0} = 1/3 up to phase, W(abed; cf) = W(1 1 1 1; 0 0)
        let w = racah_w(&RacahArguments::new(1.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_relative_eq!(w.abs(), 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(wigner_6j(1.0, 1.0, 0.0, 1.0, 1.0, 0.0).unwrap().abs(), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn stretched_case_is_single_term() {
        // a + b = c: first numerator vanishes and W equals its prefactor product.
        let (a, b, e, d, c, f) = (1.0, 1.5, 2.0, 1.5, 2.5, 1.0);
        let args = RacahArguments::new(a, b, e, d, c, f).unwrap();
        let pre = triangle_delta(a, b, c).unwrap()
            * triangle_delta(c, d, e).unwrap()
            * triangle_delta(a, e, f).unwrap()
            * triangle_delta(b, d, f).unwrap()
            * LogValue::gamma(a + b + d + e + 2.0).unwrap().to_f64()
            / (LogValue::gamma(d + e - c + 1.0).unwrap()
                * LogValue::gamma(a - f + e + 1.0).unwrap()
                * LogValue::gamma(b - f + d + 1.0).unwrap()
                * LogValue::gamma(c - a - d + f + 1.0).unwrap()
                * LogValue::gamma(c - b - e + f + 1.0).unwrap())
            .to_f64();
        assert_relative_eq!(racah_w(&args).unwrap(), pre, max_relative = 1e-13);
    }

    #[test]
    fn racah_matches_single_sum_formula() {
        let vals: Vec<f64> = (0..=6).map(|k| k as f64 * 0.5).collect();
        let mut checked = 0;
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for &d in &vals {
                        for &e in &vals {
                            for &f in &vals[..5] {
                                // W(a b e d; c f) in 4F3 form vs W(a b e d; c f) in sum form
                                let Ok(args) = RacahArguments::new(a, b, e, d, c, f) else { continue };
                                let Some(oracle) = racah_sum_oracle(a, b, e, d, c, f) else { continue };
                                // integer triangle sums
                                if [a + b + c, c + d + e, a + e + f, b + d + f]
                                    .iter()
                                    .any(|x| (x - x.round()).abs() > 1e-9)
                                {
                                    continue;
                                }
                                let w = racah_w(&args).unwrap();
                                assert!(
                                    (w - oracle).abs() < 1e-12,
                                    "W({a} {b} {e} {d}; {c} {f}) = {w}, oracle {oracle}"
                                );
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 1000, "only {checked} cases");
    }

    #[test]
    fn known_6j_values() {
        // {1/2 1/2 1; 1/2 1/2 0} = 1/2 ; {1 1 1; 1 1 1} = 1/6 ; {2 2 2; 2 2 2} = -3/70
        assert_relative_eq!(wigner_6j(0.5, 0.5, 1.0, 0.5, 0.5, 0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(wigner_6j(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(wigner_6j(2.0, 2.0, 2.0, 2.0, 2.0, 2.0).unwrap(), -3.0 / 70.0, epsilon = 1e-15);
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_relative_eq!(clebsch_gordan(1.5, 0.5, 0.0, 0.0, 1.5, 0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0.0, 0.0).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            clebsch_gordan(0.5, -0.5, 0.5, 0.5, 0.0, 0.0).unwrap(),
            -std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        // <1 1; 1 -1 | 2 0> = 1/sqrt(6)
        assert_relative_eq!(
            clebsch_gordan(1.0, 1.0, 1.0, -1.0, 2.0, 0.0).unwrap(),
            (1.0f64 / 6.0).sqrt(),
            epsilon = 1e-15
        );
        // selection rules
        assert_eq!(clebsch_gordan(1.0, 1.0, 1.0, 1.0, 2.0, 0.0).unwrap(), 0.0);
        assert_eq!(clebsch_gordan(1.0, 0.0, 1.0, 0.0, 3.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn clebsch_gordan_orthogonality() {
        for &(a, b) in &[(1.0f64, 1.0f64), (1.5, 0.5), (2.0, 1.5)] {
            let mut c = (a - b).abs();
            while c <= a + b + 1e-9 {
                for &cp in &[c] {
                    let mut g = -c;
                    while g <= c + 1e-9 {
                        let mut total = 0.0;
                        let mut al = -a;
                        while al <= a + 1e-9 {
                            let be = g - al;
                            if be.abs() <= b + 1e-9 {
                                total += clebsch_gordan(a, al, b, be, c, g).unwrap()
                                    * clebsch_gordan(a, al, b, be, cp, g).unwrap();
                            }
                            al += 1.0;
                        }
                        assert!((total - 1.0).abs() < 1e-13, "a={a} b={b} c={c} g={g}: {total}");
                        g += 1.0;
                    }
                }
                c += 1.0;
            }
        }
        // the spec's case a = b = 1, c = 2, γ = 0
        let total: f64 =
            (-1..=1).map(|al| clebsch_gordan(1.0, al as f64, 1.0, -al as f64, 2.0, 0.0).unwrap().powi(2)).sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn recurrence_integer_example() {
        let r = racah_recurrence_residual(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(r.abs() < 1e-12, "{r}");
    }

    #[test]
    fn recurrence_boundary_term_vanishes() {
        // c = |a - b| makes B_{c-1} vanish while W(c-1) is outside the domain.
        let (a, b, d, l, f) = (2.0, 1.0, 1.5, 1.5, 1.5);
        let c = 1.0;
        let (_, b_cm1, _) = racah_recurrence_coefficients(a, b, c, d, l, f).unwrap();
        assert_eq!(b_cm1, 0.0);
        assert!(RacahArguments::new(a, b, l, d, c - 1.0, f).is_err());
        assert!(racah_recurrence_residual(a, b, c, d, l, f).unwrap().abs() < 1e-12);
    }

    #[test]
    fn recurrence_detects_perturbation() {
        let terms = racah_recurrence_terms(2.0, 2.0, 2.0, 2.0, 1.0, 2.0).unwrap();
        assert!(terms.iter().sum::<f64>().abs() < 1e-12);
        let perturbed = terms[0] * 1.01 + terms[1] + terms[2];
        assert!(perturbed.abs() > 1e-4, "{perturbed}");
    }
}
