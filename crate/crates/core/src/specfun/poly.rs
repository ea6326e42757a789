//! Classical orthogonal polynomials evaluated by forward three-term recurrence.

use std::str::FromStr;

use crate::error::{Error, Result};

/// Jacobi polynomial `P_n^{(α,β)}(x)`.
pub fn jacobi_p(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut prev = 1.0;
    let mut cur = (alpha + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Families handled by [`classical_poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyKind {
    Gegenbauer,
    Laguerre,
    Hermite,
}

impl FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gegenbauer" => Ok(PolyKind::Gegenbauer),
            "laguerre" => Ok(PolyKind::Laguerre),
            "hermite" => Ok(PolyKind::Hermite),
            other => Err(Error::Usage(format!("unknown polynomial kind `{other}`"))),
        }
    }
}

/// Gegenbauer `C_n^λ(x)`, generalized Laguerre `L_n^α(x)` or physicists'
/// Hermite `H_n(x)`; `param` is ignored for Hermite.
pub fn classical_poly(kind: PolyKind, n: u32, param: f64, x: f64) -> f64 {
    match kind {
        PolyKind::Gegenbauer => gegenbauer(n, param, x),
        PolyKind::Laguerre => laguerre(n, param, x),
        PolyKind::Hermite => hermite(n, x),
    }
}

pub fn gegenbauer(n: u32, lambda: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for k in 2..=n {
        let k = k as f64;
        let next = (2.0 * x * (k + lambda - 1.0) * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0 + alpha - x) * cur - (k - 1.0 + alpha) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn hermite(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 2..=n {
        let next = 2.0 * x * cur - 2.0 * (k - 1) as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre `P_n(x)` together with its derivative.
pub(crate) fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::log_gamma;
    use approx::assert_relative_eq;

    fn binomial(top: f64, n: u32) -> f64 {
        (log_gamma(top + 1.0).unwrap() - log_gamma(n as f64 + 1.0).unwrap() - log_gamma(top - n as f64 + 1.0).unwrap())
            .exp()
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_p(0, 3.2, -0.7, 0.1), 1.0);
        assert_relative_eq!(jacobi_p(1, 1.0, 1.0, 0.5), 1.0, epsilon = 1e-15);
        assert_relative_eq!(jacobi_p(2, 0.0, 0.0, 1.0), 1.0, epsilon = 1e-15);
        // Legendre P_3 at 0.3
        assert_relative_eq!(jacobi_p(3, 0.0, 0.0, 0.3), 0.5 * (5.0 * 0.027 - 0.9), epsilon = 1e-15);
    }

    #[test]
    fn jacobi_value_at_one_is_binomial() {
        for &a in &[-0.4, 0.0, 0.5, 3.0, 17.5] {
            for &b in &[-0.4, 0.0, 0.5, 3.0, 17.5] {
                for n in 0..=60 {
                    let v = jacobi_p(n, a, b, 1.0);
                    let expected = binomial(n as f64 + a, n);
                    assert!(((v - expected) / expected).abs() < 1e-10, "n={n} a={a} b={b}: {v} vs {expected}");
                }
            }
        }
    }

    #[test]
    fn jacobi_symmetry() {
        // P_n^{(α,β)}(-x) = (-1)^n P_n^{(β,α)}(x)
        for n in 0..12 {
            let lhs = jacobi_p(n, 0.5, 2.25, -0.37);
            let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi_p(n, 2.25, 0.5, 0.37);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12, epsilon = 1e-14);
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_poly(PolyKind::Gegenbauer, 0, 1.0, 0.3), 1.0);
        assert_relative_eq!(classical_poly(PolyKind::Laguerre, 1, 0.0, 2.0), -1.0);
        assert_relative_eq!(classical_poly(PolyKind::Hermite, 2, f64::NAN, 1.0), 2.0);
        assert_relative_eq!(hermite(3, 0.7), 8.0 * 0.343 - 12.0 * 0.7, epsilon = 1e-14);
        assert_relative_eq!(laguerre(2, 0.5, 1.3), 0.5 * (1.69 - 2.0 * 2.5 * 1.3 + 1.5 * 2.5), epsilon = 1e-14);
        assert_relative_eq!(gegenbauer(2, 1.5, 0.4), 2.0 * 1.5 * 2.5 * 0.16 - 1.5, epsilon = 1e-14);
    }

    #[test]
    fn unknown_kind_is_usage_error() {
        assert!(matches!("chebyshev".parse::<PolyKind>(), Err(Error::Usage(_))));
        assert_eq!("Hermite".parse::<PolyKind>().unwrap(), PolyKind::Hermite);
    }

    #[test]
    fn gegenbauer_odd_jacobi_connection() {
        // x P_m^{(λ-1/2, 1/2)}(2x²-1) = Γ(λ)Γ(m+3/2)/(Γ(λ+m+1)Γ(1/2)) C_{2m+1}^λ(x)
        let lambda: f64 = 2.0;
        let x: f64 = 0.61;
        for m in 0..6u32 {
            let lhs = x * jacobi_p(m, lambda - 0.5, 0.5, 2.0 * x * x - 1.0);
            let c = (log_gamma(lambda).unwrap() + log_gamma(m as f64 + 1.5).unwrap()
                - log_gamma(lambda + m as f64 + 1.0).unwrap()
                - log_gamma(0.5).unwrap())
            .exp();
            assert_relative_eq!(lhs, c * gegenbauer(2 * m + 1, lambda, x), max_relative = 1e-12);
        }
    }
}
