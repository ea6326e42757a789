//! Symmetric tridiagonal eigenproblem by implicit-shift QL.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order and the matching orthonormal
/// eigenvectors (`vectors[j]` belongs to `values[j]`). Each vector is
/// signed so that its first nonnegligible component is positive.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Diagonalizes the symmetric tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `offdiag` (`offdiag[i]` couples `i` and `i + 1`).
pub fn tql2(diag: &[f64], offdiag: &[f64]) -> Result<Eigensystem> {
    let n = diag.len();
    if n == 0 {
        return Ok(Eigensystem { values: vec![], vectors: vec![] });
    }
    if offdiag.len() + 1 != n {
        return Err(Error::Consistency(format!("off-diagonal length {} for dimension {n}", offdiag.len())));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = offdiag.to_vec();
    e.push(0.0);
    // z[row][col], columns are eigenvectors
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::Consistency(format!("QL iteration did not converge for eigenvalue {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let t = row[i + 1];
                    row[i + 1] = s * row[i] + c * t;
                    row[i] = c * row[i] - s * t;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&j| d[j]).collect();
    let vectors = order
        .iter()
        .map(|&j| {
            let mut v: Vec<f64> = z.iter().map(|row| row[j]).collect();
            fix_sign(&mut v);
            v
        })
        .collect();
    Ok(Eigensystem { values, vectors })
}

/// Makes the first component above `1e-12` in magnitude positive.
pub fn fix_sign(v: &mut [f64]) {
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
