//! Oscillator parameters, quantum numbers, hemisphere coordinates and the
//! spherical and cylindrical bases.

pub mod coords;
pub mod limits;
pub mod params;
pub mod qn;
pub mod wave;

pub use coords::{potential, CoordSystem, SpherePoint};
pub use limits::{limit_reference, LimitKind, LimitQN};
pub use params::{degeneracy, energy, nu_of, OscillatorParams};
pub use qn::{l_stride, n3_stride, CylindricalQN, SphericalQN};
pub use wave::{cyl_k, cyl_phi, quasiradial_z, wavefunction, BasisState};
