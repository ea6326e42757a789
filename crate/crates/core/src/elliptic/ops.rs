//! Tridiagonal representations of `D₃₃` over the `l` stride and of `L²`
//! over the `n₃` stride.

use std::str::FromStr;

use nalgebra::DMatrix;

use crate::bases::qn::{l_stride, n3_stride};
use crate::error::{domain, Error, Result};
use crate::interbasis::{w_block, InterbasisBlock, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorMethod {
    /// Congruence through the interbasis block.
    Oracle,
    /// Closed recurrence coefficients.
    Closed,
}

impl FromStr for OperatorMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(OperatorMethod::Oracle),
            "closed" => Ok(OperatorMethod::Closed),
            other => Err(Error::Usage(format!("unknown operator method `{other}`"))),
        }
    }
}

/// Symmetric tridiagonal matrix over a step-2 index stride.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalOperator {
    pub index_set: Vec<u32>,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(index_set: Vec<u32>, diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.len() != index_set.len() || offdiag.len() + 1 != diag.len().max(1) {
            return Err(Error::Consistency(format!(
                "tridiagonal shape mismatch: {} indices, {} diagonal, {} off-diagonal",
                index_set.len(),
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(Self { index_set, diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &b) in self.offdiag.iter().enumerate() {
            m[(i, i + 1)] = b;
            m[(i + 1, i)] = b;
        }
        m
    }

    /// `self − s·diag(values)`.
    pub fn shifted(&self, s: f64, values: &[f64]) -> TridiagonalOperator {
        let diag = self.diag.iter().zip(values).map(|(d, v)| d - s * v).collect();
        TridiagonalOperator { index_set: self.index_set.clone(), diag, offdiag: self.offdiag.clone() }
    }

    /// `s·self + diag(values)`.
    pub fn scaled_plus(&self, s: f64, values: &[f64]) -> TridiagonalOperator {
        let diag = self.diag.iter().zip(values).map(|(d, v)| s * d + v).collect();
        let offdiag = self.offdiag.iter().map(|b| s * b).collect();
        TridiagonalOperator { index_set: self.index_set.clone(), diag, offdiag }
    }

    /// Largest entrywise difference to another operator on the same stride.
    pub fn max_difference(&self, other: &TridiagonalOperator) -> f64 {
        let d = self.diag.iter().zip(&other.diag).map(|(a, b)| (a - b).abs());
        let o = self.offdiag.iter().zip(&other.offdiag).map(|(a, b)| (a - b).abs());
        d.chain(o).fold(0.0, f64::max)
    }
}

fn check(n: u32, m: i32, nu: f64) -> Result<()> {
    if m.unsigned_abs() > n {
        return Err(domain!("|m| = {} exceeds N = {n}", m.unsigned_abs()));
    }
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(domain!("ν must be finite and nonnegative, got {nu}"));
    }
    Ok(())
}

/// `(n₃ + ν + 1)²` over the `n₃` stride.
pub fn d33_eigenvalues(n: u32, m: i32, nu: f64) -> Vec<f64> {
    n3_stride(n, m).iter().map(|&k| (k as f64 + nu + 1.0).powi(2)).collect()
}

/// `l(l + 1)` over the `l` stride.
pub fn l2_eigenvalues(n: u32, m: i32) -> Vec<f64> {
    l_stride(n, m).iter().map(|&l| (l as f64) * (l as f64 + 1.0)).collect()
}

/// Dense `W diag(values) Wᵀ` (rows over `l`) and `Wᵀ diag(values) W` (rows over `n₃`).
fn congruence(w: &InterbasisBlock, values: &[f64], over_l: bool) -> DMatrix<f64> {
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values));
    let e = &w.entries;
    if over_l {
        e * d * e.transpose()
    } else {
        e.transpose() * d * e
    }
}

fn from_dense(index_set: Vec<u32>, a: &DMatrix<f64>) -> TridiagonalOperator {
    let n = index_set.len();
    let diag = (0..n).map(|i| a[(i, i)]).collect();
    // symmetrize the numerically tiny asymmetry of the product
    let offdiag = (0..n.saturating_sub(1)).map(|i| 0.5 * (a[(i, i + 1)] + a[(i + 1, i)])).collect();
    TridiagonalOperator { index_set, diag, offdiag }
}

/// Dense congruence of `D₃₃` through the interbasis block, before
/// truncation to three diagonals.
pub fn d33_dense(n: u32, m: i32, nu: f64) -> Result<DMatrix<f64>> {
    check(n, m, nu)?;
    let w = w_block(n, m, nu, Method::F43)?;
    Ok(congruence(&w, &d33_eigenvalues(n, m, nu), true))
}

/// Dense congruence of `L²` over the `n₃` stride.
pub fn l2_dense(n: u32, m: i32, nu: f64) -> Result<DMatrix<f64>> {
    check(n, m, nu)?;
    let w = w_block(n, m, nu, Method::F43)?;
    Ok(congruence(&w, &l2_eigenvalues(n, m), false))
}

/// Recurrence coefficient `B_l` coupling `l` and `l + 2`.
pub fn b_l(n: u32, m: i32, nu: f64, l: u32) -> f64 {
    let (nf, lf) = (n as f64, l as f64);
    let am = m.unsigned_abs() as f64;
    let r = (lf - am + 1.0)
        * (lf - am + 2.0)
        * (lf + am + 1.0)
        * (lf + am + 2.0)
        * (nf + lf + 3.0)
        * (nf - lf)
        * (nf + lf + 2.0 * nu + 4.0)
        * (nf - lf + 2.0 * nu + 1.0);
    r.max(0.0).sqrt() / 16.0
}

/// Diagonal recurrence coefficient `C_l`.
pub fn c_l(n: u32, m: i32, nu: f64, l: u32) -> f64 {
    let (nf, lf) = (n as f64, l as f64);
    let m2 = (m as f64).powi(2);
    let q = (2.0 * lf - 1.0) * (2.0 * lf + 3.0);
    (4.0 * (nf + 1.0) * (nf + 3.0) + 2.0 * (2.0 * m2 - 1.0) + 4.0 * nu * (2.0 * nf + 2.0 * nu + 5.0)
        - q
        - (4.0 * m2 - 1.0) * (2.0 * nf + 3.0) * (2.0 * nf + 5.0 + 4.0 * nu) / q)
        / 8.0
}

/// `B̃_{n₃}` coupling `n₃` and `n₃ + 2`.
pub fn b_tilde(n: u32, m: i32, nu: f64, n3: u32) -> f64 {
    let (nf, k) = (n as f64, n3 as f64);
    let am = m.unsigned_abs() as f64;
    let num = (k + 2.0 * nu + 2.0) * (k + 2.0) * (k + 1.0) * (k + 2.0 * nu + 3.0) * (nf + am + k + 2.0 * nu + 4.0);
    let den = (k + nu + 1.0) * (k + nu + 2.0).powi(2) * (k + nu + 3.0);
    let rest = (nf + am - k) * (nf - am - k) * (nf - am + k + 2.0 * nu + 4.0);
    (num / den * rest).max(0.0).sqrt() / 4.0
}

/// Diagonal `C̃_{n₃}`.
pub fn c_tilde(n: u32, m: i32, nu: f64, n3: u32) -> f64 {
    let (nf, k) = (n as f64, n3 as f64);
    let am = m.unsigned_abs() as f64;
    let s = (k + nu) * (k + nu + 2.0);
    // at n₃ = 0 the factor ν/(n₃+ν) is cancelled by hand so ν → 0 stays continuous
    let ratio = if n3 == 0 { (nu + 1.0) / (nu + 2.0) } else { nu * (nu + 1.0) / s };
    let tail = ratio * (nf + am + nu + 2.0) * (nf - am + nu + 2.0);
    ((nf + 2.0).powi(2) + nu * (2.0 * nf + 2.0 * nu + 5.0) + (am * am - 2.0) - s - tail) / 2.0
}

/// `(D₃₃)_{ll'}` over the `l` stride.
pub fn d33_block(n: u32, m: i32, nu: f64, method: OperatorMethod) -> Result<TridiagonalOperator> {
    check(n, m, nu)?;
    let ls = l_stride(n, m);
    match method {
        OperatorMethod::Oracle => Ok(from_dense(ls, &d33_dense(n, m, nu)?)),
        OperatorMethod::Closed => {
            let diag = ls.iter().map(|&l| c_l(n, m, nu, l)).collect();
            let offdiag = ls
                .windows(2)
                .map(|p| {
                    let l = p[0] as f64;
                    -16.0 * b_l(n, m, nu, p[0]) / ((2.0 * l + 3.0) * ((2.0 * l + 1.0) * (2.0 * l + 5.0)).sqrt())
                })
                .collect();
            TridiagonalOperator::new(ls, diag, offdiag)
        }
    }
}

/// `(L²)_{n₃n₃'}` over the `n₃` stride.
pub fn l2_block(n: u32, m: i32, nu: f64, method: OperatorMethod) -> Result<TridiagonalOperator> {
    check(n, m, nu)?;
    let ks = n3_stride(n, m);
    match method {
        OperatorMethod::Oracle => Ok(from_dense(ks, &l2_dense(n, m, nu)?)),
        OperatorMethod::Closed => {
            let diag = ks.iter().map(|&k| c_tilde(n, m, nu, k)).collect();
            let offdiag = ks.windows(2).map(|p| b_tilde(n, m, nu, p[0])).collect();
            TridiagonalOperator::new(ks, diag, offdiag)
        }
    }
}
