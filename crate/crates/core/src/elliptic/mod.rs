//! Elliptic bases as expansions over the spherical and cylindrical bases.

pub mod eigen;
pub mod ops;
pub mod solve;

pub use eigen::{tql2, Eigensystem};
pub use ops::{d33_block, l2_block, OperatorMethod, TridiagonalOperator};
pub use solve::{
    cylindrical_recurrence_residual, elliptic_wavefunction, match_solutions, solve_cylindrical_form, solve_matched,
    solve_spherical_form, spherical_recurrence_residual, EllipticParams, EllipticSolution,
};
