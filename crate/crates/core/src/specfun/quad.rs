//! Gauss–Legendre quadrature.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::poly::legendre_with_derivative;
use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    fn compute(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            if n % 2 == 1 && i == half - 1 {
                x = 0.0;
                dp = legendre_with_derivative(n, 0.0).1;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// Shared, cached rule with `n` points on `[-1, 1]`.
    pub fn shared(n: usize) -> Result<Arc<GaussRule>> {
        if n == 0 {
            return Err(Error::Usage("Gauss–Legendre rule needs at least one node".into()));
        }
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("quadrature cache poisoned");
        Ok(guard.entry(n).or_insert_with(|| Arc::new(GaussRule::compute(n))).clone())
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = super::gamma::CompensatedSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        acc.value() * half
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        (self.nodes.iter().map(|x| mid + half * x).collect(), self.weights.iter().map(|w| w * half).collect())
    }
}

/// `npoints` Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(npoints: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a < b) {
        return Err(Error::Usage(format!("interval [{a}, {b}] is empty")));
    }
    Ok(GaussRule::shared(npoints)?.mapped(a, b))
}

/// Integrates `f` over `[a, b]`, doubling the node count from `initial` until
/// two successive estimates agree to `tol` (absolute, relative to the larger
/// of 1 and the estimate) or `max_nodes` is reached.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    initial: usize,
    max_nodes: usize,
    tol: f64,
    mut f: F,
) -> Result<f64> {
    let mut n = initial.max(1);
    let mut prev = GaussRule::shared(n)?.integrate(a, b, &mut f);
    while n < max_nodes {
        n = (2 * n).min(max_nodes);
        let cur = GaussRule::shared(n)?.integrate(a, b, &mut f);
        if (cur - prev).abs() <= tol * cur.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}
