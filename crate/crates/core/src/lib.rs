//! Quantum isotropic oscillator on the three-dimensional sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: gamma machinery, orthogonal polynomials, terminating
//!   hypergeometric series, Racah and Clebsch–Gordan coefficients, Jacobi
//!   elliptic functions and Gauss–Legendre rules.
//! * [`bases`]: oscillator parameters, quantum numbers, coordinates on the
//!   hemisphere and the spherical and cylindrical wavefunctions.
//! * [`interbasis`]: the orthogonal spherical↔cylindrical transition blocks,
//!   computed by three independent routes.
//! * [`elliptic`]: elliptic bases as tridiagonal spectral problems over the
//!   spherical and cylindrical bases.
//! * [`verify`]: pass/fail checks used by the test-suite and the CLI.
//! * [`cli`]: command implementations behind the `osc-sphere` binary.

pub mod bases;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod interbasis;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
