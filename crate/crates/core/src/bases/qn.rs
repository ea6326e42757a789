//! Quantum-number triples of the spherical and cylindrical bases.

use crate::error::{Error, Result};

/// `(N, l, m)` with `N − l` even and nonnegative, `|m| ≤ l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SphericalQN {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl SphericalQN {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if l > n || (n - l) % 2 != 0 {
            return Err(Error::Domain(format!("N − l must be even and nonnegative (N={n}, l={l})")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(SphericalQN { n, l, m })
    }

    /// Radial quantum number `n_r = (N − l)/2`.
    pub fn n_r(&self) -> u32 {
        (self.n - self.l) / 2
    }

    /// All states of level `N`, ordered by `l` then `m`.
    pub fn enumerate(n: u32) -> Vec<SphericalQN> {
        let mut out = Vec::new();
        for l in (n % 2..=n).step_by(2) {
            for m in -(l as i32)..=(l as i32) {
                out.push(SphericalQN { n, l, m });
            }
        }
        out
    }
}

/// `(N, m, n₃)` with `N − |m| − n₃` even and nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CylindricalQN {
    pub n: u32,
    pub m: i32,
    pub n3: u32,
}

impl CylindricalQN {
    pub fn new(n: u32, m: i32, n3: u32) -> Result<Self> {
        let am = m.unsigned_abs();
        if am + n3 > n || (n - am - n3) % 2 != 0 {
            return Err(Error::Domain(format!("N − |m| − n₃ must be even and nonnegative (N={n}, m={m}, n₃={n3})")));
        }
        Ok(CylindricalQN { n, m, n3 })
    }

    /// `n = (N − |m| − n₃)/2`.
    pub fn n_rho(&self) -> u32 {
        (self.n - self.m.unsigned_abs() - self.n3) / 2
    }

    /// All states of level `N`, ordered by `m` then `n₃`.
    pub fn enumerate(n: u32) -> Vec<CylindricalQN> {
        let mut out = Vec::new();
        for m in -(n as i32)..=(n as i32) {
            let am = m.unsigned_abs();
            for n3 in ((n - am) % 2..=n - am).step_by(2) {
                out.push(CylindricalQN { n, m, n3 });
            }
        }
        out
    }
}

/// `l`-values coupled to a fixed `(N, m)`: `|m| ≤ l ≤ N`, `N − l` even.
pub fn l_stride(n: u32, m: i32) -> Vec<u32> {
    let am = m.unsigned_abs();
    if am > n {
        return Vec::new();
    }
    let start = if (n - am) % 2 == 0 { am } else { am + 1 };
    (start..=n).step_by(2).collect()
}

/// `n₃`-values coupled to a fixed `(N, m)`: `N − |m| − n₃` even.
pub fn n3_stride(n: u32, m: i32) -> Vec<u32> {
    let am = m.unsigned_abs();
    if am > n {
        return Vec::new();
    }
    ((n - am) % 2..=n - am).step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::params::degeneracy;

    #[test]
    fn validation() {
        assert!(SphericalQN::new(3, 1, 1).is_ok());
        assert!(SphericalQN::new(3, 2, 0).is_err());
        assert!(SphericalQN::new(2, 4, 0).is_err());
        assert!(SphericalQN::new(2, 2, -3).is_err());
        assert!(CylindricalQN::new(3, -1, 2).is_ok());
        assert!(CylindricalQN::new(3, -1, 1).is_err());
        assert!(CylindricalQN::new(1, 2, 0).is_err());
        assert_eq!(SphericalQN::new(6, 2, 0).unwrap().n_r(), 2);
        assert_eq!(CylindricalQN::new(6, 2, 0).unwrap().n_rho(), 2);
    }

    #[test]
    fn counts_match_degeneracy() {
        for n in 0..=30 {
            assert_eq!(SphericalQN::enumerate(n).len() as u64, degeneracy(n));
            assert_eq!(CylindricalQN::enumerate(n).len() as u64, degeneracy(n));
            for q in SphericalQN::enumerate(n) {
                assert!(SphericalQN::new(q.n, q.l, q.m).is_ok());
            }
            for q in CylindricalQN::enumerate(n) {
                assert!(CylindricalQN::new(q.n, q.m, q.n3).is_ok());
            }
        }
    }

    #[test]
    fn strides_have_equal_length() {
        for n in 0..=12 {
            for m in -(n as i32)..=(n as i32) {
                assert_eq!(l_stride(n, m).len(), n3_stride(n, m).len());
            }
        }
        assert_eq!(l_stride(2, 0), vec![0, 2]);
        assert_eq!(n3_stride(2, 0), vec![0, 2]);
        assert_eq!(l_stride(5, 2), vec![3, 5]);
        assert_eq!(n3_stride(5, 2), vec![1, 3]);
    }
}
