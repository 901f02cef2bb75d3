//! Scalar abstraction: every part of the engine is generic over the real
//! field backing amplitudes, frequencies, and times.
//!
//! `f64` is the working precision for all quoted tolerances; `f32` is
//! supported with proportionally looser bounds.

use nalgebra::RealField;
use simba::scalar::SubsetOf;

/// Real scalar type for the simulation core.
///
/// Tolerances are associated constants (given as `f64`, converted on use) so
/// that validity checks scale with the precision of the chosen type.
pub trait Scalar: RealField + Copy + SubsetOf<f64> + Send + Sync + 'static {
    /// Unit-norm deviation allowed when a state is constructed.
    const STATE_NORM_TOL: f64;
    /// Norm drift allowed over a full propagation run.
    const RUN_NORM_TOL: f64;
    /// Singular values below `RANK_TOL * g_c` count as zero (dark modes).
    const RANK_TOL: f64;
    /// Polariton pairs closer than `DEGENERACY_TOL * g_c` count as degenerate.
    const DEGENERACY_TOL: f64;
    /// Allowed value mismatch at schedule segment joins.
    const JOIN_TOL: f64;
}

impl Scalar for f64 {
    const STATE_NORM_TOL: f64 = 1e-12;
    const RUN_NORM_TOL: f64 = 1e-10;
    const RANK_TOL: f64 = 1e-10;
    const DEGENERACY_TOL: f64 = 1e-9;
    const JOIN_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const STATE_NORM_TOL: f64 = 1e-5;
    const RUN_NORM_TOL: f64 = 1e-3;
    const RANK_TOL: f64 = 1e-5;
    const DEGENERACY_TOL: f64 = 1e-4;
    const JOIN_TOL: f64 = 1e-4;
}

/// Convert an `f64` literal into the working scalar.
#[inline]
pub fn real<T: Scalar>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Widen a working scalar to `f64` (exact for `f32` and `f64`).
#[inline]
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    nalgebra::convert(x)
}

/// `|z|^2` for a complex amplitude over any `Scalar`.
#[inline]
pub fn abs2<T: Scalar>(z: nalgebra::Complex<T>) -> T {
    z.re * z.re + z.im * z.im
}

/// `|z|` for a complex amplitude over any `Scalar`.
#[inline]
pub fn cmod<T: Scalar>(z: nalgebra::Complex<T>) -> T {
    abs2(z).sqrt()
}
