//! Transition coefficients between the spherical and cylindrical bases.

pub mod block;
pub mod coeffs;
pub mod limits;

pub use block::{w_block, InterbasisBlock, Method};
pub use coeffs::{overlap_oracle, quadrature_nodes, w_via_4f3, w_via_racah};
pub use limits::{w_limit, WLimitKind};
