//! Seeded point generator shared by every randomized check.
//!
//! 64-bit linear congruential generator
//! `s ← 6364136223846793005·s + 1442695040888963407 (mod 2⁶⁴)` starting from
//! `s = seed`; each draw advances once and returns `(s >> 11) / 2⁵³` in
//! `[0, 1)`. The constants are Knuth's MMIX multiplier and increment, so the
//! sequence is easy to reproduce in any language.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::bases::coords::SpherePoint;

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MULTIPLIER).wrapping_add(LCG_INCREMENT);
        self.state
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// A point of the open upper hemisphere, drawn in spherical coordinates
    /// with `χ`, `θ`, `φ` uniform in their ranges (as three consecutive draws).
    pub fn hemisphere_point(&mut self) -> SpherePoint {
        let chi = self.uniform(0.0, FRAC_PI_2);
        let theta = self.uniform(0.0, PI);
        let phi = self.uniform(0.0, 2.0 * PI);
        SpherePoint::Spherical { chi, theta, phi }
    }
}
