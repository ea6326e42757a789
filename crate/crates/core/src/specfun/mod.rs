//! Special-function kernel.

pub mod angular;
pub mod elliptic_fn;
pub mod gamma;
pub mod harmonic;
pub mod hyp;
pub mod poly;
pub mod quad;

pub use angular::{clebsch_gordan, racah_recurrence_residual, racah_w, triangle_delta, wigner_6j, RacahArguments};
pub use elliptic_fn::{complete_elliptic_k, elliptic_f, jacobi_elliptic};
pub use gamma::{log_gamma, LogValue};
pub use harmonic::spherical_harmonic;
pub use hyp::{hyp_terminating, hyp_terminating_regularized, TerminatingSeriesSpec};
pub use poly::{classical_poly, jacobi_p, PolyKind};
pub use quad::{gauss_legendre, GaussRule};
