//! Numerical thresholds shared across the crate.

/// Hermiticity tolerance, max-entry norm of `H - H^dagger`.
pub const HERMITIAN: f64 = 1e-9;
/// Eigenvalues in `[-PSD, 0)` are clamped to zero; anything below is an error.
pub const PSD: f64 = 1e-9;
/// Principal minors below `-MINOR` fail the Sylvester test.
pub const MINOR: f64 = 1e-8;
/// A concurrence at or below this value counts as zero.
pub const ZERO_CONCURRENCE: f64 = 1e-8;
/// A concurrence above this value is an entanglement witness.
pub const WITNESS: f64 = 1e-6;
/// Second Schmidt coefficient below this marks a product state.
pub const PRODUCT_STATE: f64 = 1e-9;
/// Eigenvalues of a density matrix below this count as zero when detecting rank.
pub const RANK: f64 = 1e-9;
/// Below this the closed-form conjugation falls back to `J2 (x) J4`.
pub const ETA_ZERO: f64 = 1e-12;
/// Tolerance for structural pattern checks on canonical forms.
pub const PATTERN: f64 = 1e-8;
