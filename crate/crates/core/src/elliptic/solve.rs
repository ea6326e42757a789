//! Elliptic separation constants and expansion coefficients.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::eigen::tql2;
use super::ops::{b_tilde, c_tilde, d33_block, d33_eigenvalues, l2_block, l2_eigenvalues, OperatorMethod};
use crate::bases::coords::SpherePoint;
use crate::bases::params::OscillatorParams;
use crate::bases::qn::{l_stride, n3_stride, CylindricalQN, SphericalQN};
use crate::bases::wave::{wavefunction, BasisState};
use crate::error::{domain, Error, Result};
use crate::interbasis::InterbasisBlock;

/// Relative tolerance for pairing eigenvalues of the two representations.
pub const PAIRING_TOL: f64 = 1e-8;
/// Entrywise tolerance for `U = ±WᵀT`.
pub const MATCH_TOL: f64 = 1e-8;

/// Parameters of `ℑ = L² − aR²D₃₃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipticParams {
    a: f64,
    k: f64,
    r: f64,
}

impl EllipticParams {
    /// Any `a ≥ −1`; `k` follows from `k² = a/(1+a)` (oblate) or `k² = −a` (prolate).
    pub fn from_a(a: f64, r: f64) -> Result<Self> {
        if !(a.is_finite() && a >= -1.0) {
            return Err(domain!("a must be finite and ≥ −1, got {a}"));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(domain!("R must be positive, got {r}"));
        }
        let k = if a >= 0.0 { (a / (1.0 + a)).sqrt() } else { (-a).sqrt() };
        Ok(Self { a, k, r })
    }

    /// Oblate system with modulus `k ∈ [0, 1)`.
    pub fn oblate(k: f64, r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) {
            return Err(domain!("oblate modulus must lie in [0, 1), got {k}"));
        }
        let mut p = Self::from_a(k * k / (1.0 - k * k), r)?;
        p.k = k;
        Ok(p)
    }

    /// Prolate system with modulus `k ∈ [0, 1]`, `a = −k²`.
    pub fn prolate(k: f64, r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(domain!("prolate modulus must lie in [0, 1], got {k}"));
        }
        let mut p = Self::from_a(-k * k, r)?;
        p.k = k;
        Ok(p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn is_oblate(&self) -> bool {
        self.a >= 0.0
    }

    /// `aR²`.
    pub fn coupling(&self) -> f64 {
        self.a * self.r * self.r
    }
}

/// One eigenpair of `ℑ`. `t` runs over the `l` stride, `u` over the `n₃` stride;
/// either may be empty before [`match_solutions`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EllipticSolution {
    pub q: usize,
    pub lambda_q: f64,
    pub t: Vec<f64>,
    pub u: Vec<f64>,
}

fn check(n: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > n {
        return Err(domain!("|m| = {} exceeds N = {n}", m.unsigned_abs()));
    }
    Ok(())
}

/// Eigenpairs of `diag(l(l+1)) − aR² D₃₃` over the `l` stride.
pub fn solve_spherical_form(n: u32, m: i32, nu: f64, params: &EllipticParams) -> Result<Vec<EllipticSolution>> {
    check(n, m)?;
    let ls = l2_eigenvalues(n, m);
    if params.a == 0.0 {
        let dim = ls.len();
        return Ok(ls
            .iter()
            .enumerate()
            .map(|(q, &lam)| {
                let mut t = vec![0.0; dim];
                t[q] = 1.0;
                EllipticSolution { q, lambda_q: lam, t, u: vec![] }
            })
            .collect());
    }
    let op = d33_block(n, m, nu, OperatorMethod::Oracle)?.scaled_plus(-params.coupling(), &ls);
    let es = tql2(&op.diag, &op.offdiag)?;
    Ok(es
        .values
        .into_iter()
        .zip(es.vectors)
        .enumerate()
        .map(|(q, (lambda_q, t))| EllipticSolution { q, lambda_q, t, u: vec![] })
        .collect())
}

/// Eigenpairs of `L² − aR² diag((n₃+ν+1)²)` over the `n₃` stride.
pub fn solve_cylindrical_form(n: u32, m: i32, nu: f64, params: &EllipticParams) -> Result<Vec<EllipticSolution>> {
    check(n, m)?;
    let op = l2_block(n, m, nu, OperatorMethod::Oracle)?.shifted(params.coupling(), &d33_eigenvalues(n, m, nu));
    let es = tql2(&op.diag, &op.offdiag)?;
    Ok(es
        .values
        .into_iter()
        .zip(es.vectors)
        .enumerate()
        .map(|(q, (lambda_q, u))| EllipticSolution { q, lambda_q, t: vec![], u })
        .collect())
}

fn clusters(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Pairs the two representations through `U = WᵀT`.
///
/// Nondegenerate pairs get the cylindrical vector's sign aligned with
/// `WᵀT`. Inside a degenerate cluster the cylindrical eigenvectors are only
/// defined up to rotation, so `U` becomes the projection of `WᵀT` onto
/// their span.
pub fn match_solutions(
    sph: &[EllipticSolution],
    cyl: &[EllipticSolution],
    w: &InterbasisBlock,
) -> Result<Vec<EllipticSolution>> {
    if sph.len() != cyl.len() || sph.len() != w.dim() {
        return Err(Error::Consistency(format!(
            "cannot pair {} spherical with {} cylindrical solutions for a {}-dimensional block",
            sph.len(),
            cyl.len(),
            w.dim()
        )));
    }
    let scale = sph.iter().chain(cyl).fold(1.0f64, |s, x| s.max(x.lambda_q.abs()));
    let tol = PAIRING_TOL * scale;
    for (s, c) in sph.iter().zip(cyl) {
        if (s.lambda_q - c.lambda_q).abs() > tol {
            return Err(Error::Consistency(format!(
                "eigenvalue {} has no partner: spherical {} vs cylindrical {}",
                s.q, s.lambda_q, c.lambda_q
            )));
        }
    }
    let wt = w.entries.transpose();
    let lams: Vec<f64> = sph.iter().map(|s| s.lambda_q).collect();
    let mut out = Vec::with_capacity(sph.len());
    for range in clusters(&lams, tol) {
        let basis = DMatrix::from_columns(
            &cyl[range.clone()].iter().map(|c| DVector::from_column_slice(&c.u)).collect::<Vec<_>>(),
        );
        for i in range.clone() {
            let pred = &wt * DVector::from_column_slice(&sph[i].t);
            let u = if range.len() == 1 {
                let c = DVector::from_column_slice(&cyl[i].u);
                if c.dot(&pred) < 0.0 {
                    -c
                } else {
                    c
                }
            } else {
                &basis * (basis.transpose() * &pred)
            };
            let dev = (&u - &pred).abs().max();
            if dev > MATCH_TOL {
                return Err(Error::Consistency(format!("solution {i}: |U − WᵀT| = {dev:e} exceeds {MATCH_TOL:e}")));
            }
            out.push(EllipticSolution {
                q: i,
                lambda_q: sph[i].lambda_q,
                t: sph[i].t.clone(),
                u: u.iter().copied().collect(),
            });
        }
    }
    Ok(out)
}

/// Solves both forms and pairs them.
pub fn solve_matched(
    n: u32,
    m: i32,
    nu: f64,
    params: &EllipticParams,
    w: &InterbasisBlock,
) -> Result<Vec<EllipticSolution>> {
    let sph = solve_spherical_form(n, m, nu, params)?;
    let cyl = solve_cylindrical_form(n, m, nu, params)?;
    match_solutions(&sph, &cyl, w)
}

fn max_abs(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Largest row residual of the `l`-recurrence with closed coefficients,
/// relative to the largest single term over all rows.
pub fn spherical_recurrence_residual(
    n: u32,
    m: i32,
    nu: f64,
    params: &EllipticParams,
    sol: &EllipticSolution,
) -> Result<f64> {
    if params.a == 0.0 {
        return Err(domain!("the l-recurrence divides by a; a = 0 is the diagonal case"));
    }
    let d = d33_block(n, m, nu, OperatorMethod::Closed)?;
    let ls = l_stride(n, m);
    let t = &sol.t;
    let g = params.coupling();
    let mut worst: f64 = 0.0;
    let mut biggest: f64 = 0.0;
    for i in 0..ls.len() {
        let l = ls[i] as f64;
        let mut terms = vec![l * (l + 1.0) / g * t[i], -sol.lambda_q / g * t[i], -d.diag[i] * t[i]];
        if i > 0 {
            terms.push(-d.offdiag[i - 1] * t[i - 1]);
        }
        if i + 1 < ls.len() {
            terms.push(-d.offdiag[i] * t[i + 1]);
        }
        worst = worst.max(terms.iter().sum::<f64>().abs());
        biggest = biggest.max(max_abs(terms));
    }
    Ok(if biggest == 0.0 { 0.0 } else { worst / biggest })
}

/// The same for the `n₃`-recurrence.
pub fn cylindrical_recurrence_residual(
    n: u32,
    m: i32,
    nu: f64,
    params: &EllipticParams,
    sol: &EllipticSolution,
) -> Result<f64> {
    let ks = n3_stride(n, m);
    let u = &sol.u;
    if u.len() != ks.len() {
        return Err(Error::Consistency("solution has no cylindrical coefficients".into()));
    }
    let g = params.coupling();
    let mut worst: f64 = 0.0;
    let mut biggest: f64 = 0.0;
    for i in 0..ks.len() {
        let k = ks[i];
        let d = (k as f64 + nu + 1.0).powi(2);
        let mut terms = vec![c_tilde(n, m, nu, k) * u[i], -sol.lambda_q * u[i], -g * d * u[i]];
        if i > 0 {
            terms.push(b_tilde(n, m, nu, ks[i - 1]) * u[i - 1]);
        }
        if i + 1 < ks.len() {
            terms.push(b_tilde(n, m, nu, k) * u[i + 1]);
        }
        worst = worst.max(terms.iter().sum::<f64>().abs());
        biggest = biggest.max(max_abs(terms));
    }
    Ok(if biggest == 0.0 { 0.0 } else { worst / biggest })
}

/// Evaluates a matched solution through both expansions and returns the
/// spherical-form value after checking that the two agree.
pub fn elliptic_wavefunction(
    sol: &EllipticSolution,
    n: u32,
    m: i32,
    params: &OscillatorParams,
    point: &SpherePoint,
) -> Result<Complex64> {
    let ls = l_stride(n, m);
    let ks = n3_stride(n, m);
    if sol.t.len() != ls.len() || sol.u.len() != ks.len() {
        return Err(Error::Consistency("elliptic solution is not matched".into()));
    }
    let mut via_t = Complex64::new(0.0, 0.0);
    for (&l, &c) in ls.iter().zip(&sol.t) {
        via_t += wavefunction(&BasisState::Spherical(SphericalQN::new(n, l, m)?), params, point)? * c;
    }
    let mut via_u = Complex64::new(0.0, 0.0);
    for (&k, &c) in ks.iter().zip(&sol.u) {
        via_u += wavefunction(&BasisState::Cylindrical(CylindricalQN::new(n, m, k)?), params, point)? * c;
    }
    let tol = MATCH_TOL * via_t.norm().max(params.r().powf(-1.5));
    if (via_t - via_u).norm() > tol {
        return Err(Error::Consistency(format!("expansions disagree: {via_t} vs {via_u}")));
    }
    Ok(via_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interbasis::{w_block, Method};
    use nalgebra::SymmetricEigen;

    fn spectrum(s: &[EllipticSolution]) -> Vec<f64> {
        s.iter().map(|x| x.lambda_q).collect()
    }

    #[test]
    fn params_relations() {
        let p = EllipticParams::oblate(0.6, 1.0).unwrap();
        assert!((p.a() - 0.36 / 0.64).abs() < 1e-15);
        let q = EllipticParams::from_a(p.a(), 1.0).unwrap();
        assert!((q.k() - 0.6).abs() < 1e-15 && q.is_oblate());
        let pr = EllipticParams::prolate(0.5, 2.0).unwrap();
        assert_eq!(pr.a(), -0.25);
        assert!(!pr.is_oblate());
        assert!(EllipticParams::from_a(-1.5, 1.0).is_err());
        assert!(EllipticParams::oblate(1.0, 1.0).is_err());
    }

    #[test]
    fn one_dimensional_cases() {
        let p = EllipticParams::from_a(1.0, 1.0).unwrap();
        let s = solve_spherical_form(2, 2, 1.0, &p).unwrap();
        assert!((s[0].lambda_q - 2.0).abs() < 1e-12);
        let c = solve_cylindrical_form(2, -2, 1.0, &p).unwrap();
        assert!((c[0].lambda_q - 2.0).abs() < 1e-12);
        let w = w_block(2, 2, 1.0, Method::F43).unwrap();
        let mt = match_solutions(&s, &solve_cylindrical_form(2, 2, 1.0, &p).unwrap(), &w).unwrap();
        assert!((mt[0].t[0] - 1.0).abs() < 1e-15 && (mt[0].u[0].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectra_coincide_and_match_dense() {
        for &a in &[-1.0, -0.5, 0.25, 1.0, 4.0] {
            let p = EllipticParams::from_a(a, 1.0).unwrap();
            for n in 0..=12u32 {
                for m in -(n as i32)..=(n as i32) {
                    let s = spectrum(&solve_spherical_form(n, m, 0.618, &p).unwrap());
                    let c = spectrum(&solve_cylindrical_form(n, m, 0.618, &p).unwrap());
                    for (x, y) in s.iter().zip(&c) {
                        assert!((x - y).abs() < 1e-9 * x.abs().max(1.0), "a={a} N={n} m={m}");
                    }
                }
            }
            let op = d33_block(4, 0, 0.618, OperatorMethod::Oracle).unwrap().scaled_plus(-a, &l2_eigenvalues(4, 0));
            let mut dense: Vec<f64> = SymmetricEigen::new(op.to_dense()).eigenvalues.iter().copied().collect();
            dense.sort_by(f64::total_cmp);
            let s = spectrum(&solve_spherical_form(4, 0, 0.618, &p).unwrap());
            for (x, y) in s.iter().zip(&dense) {
                assert!((x - y).abs() < 1e-11 * y.abs().max(1.0));
            }
        }
    }

    #[test]
    fn trivial_a_limit() {
        let p0 = EllipticParams::from_a(0.0, 1.0).unwrap();
        let s = solve_spherical_form(6, 0, 2.0, &p0).unwrap();
        assert_eq!(spectrum(&s), vec![0.0, 6.0, 20.0, 42.0]);
        let w = w_block(6, 0, 2.0, Method::F43).unwrap();
        let mt = match_solutions(&s, &solve_cylindrical_form(6, 0, 2.0, &p0).unwrap(), &w).unwrap();
        for (i, sol) in mt.iter().enumerate() {
            for (j, &u) in sol.u.iter().enumerate() {
                assert!((u - w.entries[(i, j)]).abs() < 1e-10);
            }
        }
        let small = EllipticParams::from_a(1e-9, 1.0).unwrap();
        let s = solve_spherical_form(6, 0, 2.0, &small).unwrap();
        for (sol, l) in s.iter().zip([0.0, 2.0, 4.0, 6.0]) {
            assert!((sol.lambda_q - l * (l + 1.0)).abs() < 1e-6);
            assert!((sol.t.iter().map(|x| x.abs()).fold(0.0, f64::max) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn first_order_in_a() {
        let (n, m, nu) = (7u32, 1i32, 1.3);
        let d = d33_block(n, m, nu, OperatorMethod::Oracle).unwrap();
        let h = 1e-6;
        let up = solve_spherical_form(n, m, nu, &EllipticParams::from_a(h, 1.5).unwrap()).unwrap();
        let dn = solve_spherical_form(n, m, nu, &EllipticParams::from_a(-h, 1.5).unwrap()).unwrap();
        for i in 0..d.dim() {
            let slope = (up[i].lambda_q - dn[i].lambda_q) / (2.0 * h);
            assert!((slope + 1.5 * 1.5 * d.diag[i]).abs() < 1e-4, "{i}: {slope}");
        }
    }

    #[test]
    fn full_pipeline() {
        let p = EllipticParams::from_a(1.0, 1.0).unwrap();
        let w = w_block(6, 0, 2.0, Method::F43).unwrap();
        let mt = solve_matched(6, 0, 2.0, &p, &w).unwrap();
        for sol in &mt {
            let pred = w.entries.transpose() * DVector::from_column_slice(&sol.t);
            for (x, y) in sol.u.iter().zip(pred.iter()) {
                assert!((x - y).abs() < 1e-8);
            }
            assert!((sol.t.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            assert!((sol.u.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(spherical_recurrence_residual(6, 0, 2.0, &p, sol).unwrap() < 1e-10);
            assert!(cylindrical_recurrence_residual(6, 0, 2.0, &p, sol).unwrap() < 1e-10);
        }
    }

    #[test]
    fn degenerate_cluster_uses_projection() {
        // a fabricated 2×2 block with a repeated eigenvalue
        let w = InterbasisBlock {
            n: 1,
            m: 0,
            nu: 0.0,
            l_index: vec![0, 2],
            n3_index: vec![0, 2],
            entries: DMatrix::from_row_slice(2, 2, &[0.6, 0.8, -0.8, 0.6]),
        };
        let sph = vec![
            EllipticSolution { q: 0, lambda_q: 1.0, t: vec![1.0, 0.0], u: vec![] },
            EllipticSolution { q: 1, lambda_q: 1.0, t: vec![0.0, 1.0], u: vec![] },
        ];
        let cyl = vec![
            EllipticSolution { q: 0, lambda_q: 1.0, t: vec![], u: vec![1.0, 0.0] },
            EllipticSolution { q: 1, lambda_q: 1.0, t: vec![], u: vec![0.0, 1.0] },
        ];
        let mt = match_solutions(&sph, &cyl, &w).unwrap();
        assert!((mt[0].u[0] - 0.6).abs() < 1e-15 && (mt[0].u[1] - 0.8).abs() < 1e-15);
        let bad = vec![cyl[0].clone(), EllipticSolution { lambda_q: 2.0, ..cyl[1].clone() }];
        assert!(matches!(match_solutions(&sph, &bad, &w), Err(Error::Consistency(_))));
    }

    #[test]
    fn dual_expansion_wavefunction() {
        let (n, m, nu) = (4u32, 1i32, 1.0);
        let op = OscillatorParams::from_nu(nu).unwrap();
        let p = EllipticParams::from_a(0.5, 1.0).unwrap();
        let w = w_block(n, m, nu, Method::F43).unwrap();
        let mt = solve_matched(n, m, nu, &p, &w).unwrap();
        let mut rng = crate::verify::Lcg::new(12345);
        for _ in 0..50 {
            let pt = rng.hemisphere_point();
            for sol in &mt {
                elliptic_wavefunction(sol, n, m, &op, &pt).unwrap();
            }
        }
        let pole = SpherePoint::Spherical { chi: 0.7, theta: 0.0, phi: 0.0 };
        for sol in &mt {
            assert!(elliptic_wavefunction(sol, n, m, &op, &pole).unwrap().norm() < 1e-14);
        }
        let single = solve_matched(2, 2, nu, &p, &w_block(2, 2, nu, Method::F43).unwrap()).unwrap();
        let pt = SpherePoint::Spherical { chi: 0.5, theta: 1.0, phi: 0.3 };
        let direct = wavefunction(&BasisState::Spherical(SphericalQN::new(2, 2, 2).unwrap()), &op, &pt).unwrap();
        assert!((elliptic_wavefunction(&single[0], 2, 2, &op, &pt).unwrap() - direct).norm() < 1e-14);
    }
}
