//! Dense `W` blocks over one parity class at fixed `(N, m, ν)`.

use std::str::FromStr;

use nalgebra::DMatrix;
use serde::Serialize;

use super::coeffs::{overlap_oracle, quadrature_nodes, w_via_4f3, w_via_racah};
use crate::bases::qn::{l_stride, n3_stride};
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    F43,
    Racah,
    Quadrature,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "f43" => Method::F43,
            "racah" => Method::Racah,
            "quadrature" => Method::Quadrature,
            other => return Err(Error::Usage(format!("unknown method `{other}` (expected f43, racah or quadrature)"))),
        })
    }
}

/// `entries[(i, j)] = W_{N l_i m}^{n3_j}(ν)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterbasisBlock {
    pub n: u32,
    pub m: i32,
    pub nu: f64,
    pub l_index: Vec<u32>,
    pub n3_index: Vec<u32>,
    pub entries: DMatrix<f64>,
}

impl InterbasisBlock {
    pub fn dim(&self) -> usize {
        self.l_index.len()
    }

    /// `max(|WᵀW − I|, |WWᵀ − I|)` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        let id = DMatrix::<f64>::identity(self.dim(), self.dim());
        let w = &self.entries;
        let a = (w.transpose() * w - &id).abs().max();
        let b = (w * w.transpose() - &id).abs().max();
        a.max(b)
    }

    /// Largest entrywise difference to another block of the same shape.
    pub fn max_difference(&self, other: &InterbasisBlock) -> f64 {
        (&self.entries - &other.entries).abs().max()
    }

    /// Row index of `l`, if present.
    pub fn l_position(&self, l: u32) -> Option<usize> {
        self.l_index.iter().position(|&x| x == l)
    }

    pub fn n3_position(&self, n3: u32) -> Option<usize> {
        self.n3_index.iter().position(|&x| x == n3)
    }
}

/// Builds the full parity-matched block with the chosen evaluator.
pub fn w_block(n: u32, m: i32, nu: f64, method: Method) -> Result<InterbasisBlock> {
    if m.unsigned_abs() > n {
        return Err(domain!("|m| = {} exceeds N = {n}", m.unsigned_abs()));
    }
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(domain!("ν must be finite and nonnegative, got {nu}"));
    }
    let l_index = l_stride(n, m);
    let n3_index = n3_stride(n, m);
    debug_assert_eq!(l_index.len(), n3_index.len());
    let nodes = if method == Method::Quadrature { quadrature_nodes()? } else { 0 };
    let mut entries = DMatrix::zeros(l_index.len(), n3_index.len());
    for (i, &l) in l_index.iter().enumerate() {
        for (j, &n3) in n3_index.iter().enumerate() {
            entries[(i, j)] = match method {
                Method::F43 => w_via_4f3(n, l, m, n3, nu)?,
                Method::Racah => w_via_racah(n, l, m, n3, nu)?,
                Method::Quadrature => overlap_oracle(n, l, m, n3, nu, nodes)?,
            };
        }
    }
    Ok(InterbasisBlock { n, m, nu, l_index, n3_index, entries })
}
