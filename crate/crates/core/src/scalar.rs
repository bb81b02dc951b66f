//! Real scalar types usable by the dense state-vector oracle.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point type backing complex amplitudes.
///
/// The associated tolerances are absolute (or relative, for ranks) bounds
/// used as defaults by the dense routines; they scale with the precision of
/// the type.
pub trait Scalar: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync {
    /// Amplitudes with modulus at or below this count as zero.
    const SUPPORT_TOL: f64;
    /// Max entry-wise deviation of a reduction from `I / d` that still
    /// counts as maximally mixed.
    const MIXED_TOL: f64;
    /// Singular values below `RANK_TOL * sigma_max` are dropped.
    const RANK_TOL: f64;
    /// `|<a|b>| >= 1 - OVERLAP_TOL` counts as equal up to global phase.
    const OVERLAP_TOL: f64;
    /// Residual bound for `S|psi> = |psi>` checks.
    const EIGEN_TOL: f64;

    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }
}

impl Scalar for f64 {
    const SUPPORT_TOL: f64 = 1e-9;
    const MIXED_TOL: f64 = 1e-8;
    const RANK_TOL: f64 = 1e-8;
    const OVERLAP_TOL: f64 = 1e-8;
    const EIGEN_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const SUPPORT_TOL: f64 = 1e-5;
    const MIXED_TOL: f64 = 1e-4;
    const RANK_TOL: f64 = 1e-4;
    const OVERLAP_TOL: f64 = 1e-4;
    const EIGEN_TOL: f64 = 1e-4;
}
