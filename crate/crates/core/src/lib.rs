//! Numerical bounds for the monotone-delta problem of band-limited
//! functions, Sonin lids, and sharp derivative-weighted inequalities in
//! the Paley–Wiener space.

pub mod dd;
pub mod eigen;
pub mod error;
pub mod lids;
pub mod monotone_l2;
pub mod monotone_poly;
pub mod poly;
pub mod quad;
pub mod represent;
pub mod sharp_ineq;
pub mod specfun;

pub use eigen::{EigenPair, SymMatrix};
pub use error::{Error, Result};
pub use lids::{bessel_lid_ratio, minimize_alpha, SoninLid};
pub use monotone_l2::{extremizer_zeros, solve_l2, L2Solution};
pub use monotone_poly::{certify_d2_exact, solve_poly, MonotoneSolution};
pub use poly::{PolyCoeffs, Rational};
pub use quad::QuadResult;
pub use represent::MonotoneProfile;
pub use sharp_ineq::{sharp_constant, PWFunction, WeightPoly};
pub use specfun::{BandFunction, FourierProfile};

/// Version string stamped into emitted records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
