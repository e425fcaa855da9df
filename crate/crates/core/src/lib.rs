//! Quaternionic spherical harmonics on S^{4n-1}, the zonal kernels of the
//! joint spectral decomposition of the Laplace-Beltrami operator and the
//! distinguished sub-Laplacian, and the weighted Plancherel machinery built
//! on top of them.
//!
//! The crate keeps two computation regimes strictly apart:
//!
//! * every structural identity (dimensions, eigenvalue relations, closed
//!   kernel forms, multiplication recurrences, orthogonality) is verified in
//!   exact rational arithmetic against independently computed brute-force
//!   oracles;
//! * asymptotic estimates (Plancherel scaling, ball volumes, resolvent
//!   bounds) are checked numerically at desk scale with seeded Monte Carlo
//!   and closed-form spectral sums.

pub mod scalar;
pub mod quat;
pub mod poly;
pub mod ops;
pub mod linalg;
pub mod cbasis;
pub mod special;
pub mod harmonic;
pub mod zonal;
pub mod multiplier;
pub mod report;
pub mod verify;

pub use poly::{Poly, PolyError, C64};
pub use quat::{HPoint, Quaternion, SpherePoint};
pub use scalar::{CRat, Rat};
pub use harmonic::{EigenData, HarmonicSpaceBasis, SpectralIndex};
pub use zonal::{KernelPoly, RecurrenceCoeffs, ZonalClosedForm};
pub use multiplier::MultiplierFn;
