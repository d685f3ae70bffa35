//! Default tolerances.
//!
//! All geometry here is projective, so thresholds are relative: residuals are
//! divided by the coefficient norms of the inputs before comparison.

/// Relative threshold for nullity, purity, incidence and degeneracy tests.
pub const GEOMETRIC: f64 = 1e-9;

/// Band inside which a point-pair plane is classified as tangent.
pub const TANGENT: f64 = 1e-7;

/// Multiply-determined lattice vertices closer than this are silently accepted.
pub const CONSISTENCY_SOFT: f64 = 1e-8;

/// Multiply-determined lattice vertices farther apart than this abort a fill.
pub const CONSISTENCY_HARD: f64 = 1e-5;

/// Threshold on the normalized asymmetry of the two edge-sphere orderings.
pub const EDGE_SYMMETRY: f64 = 1e-8;

/// Relative threshold used when testing whether a multivector is a unit versor.
pub const UNIT: f64 = 1e-9;

/// Threshold on the scaled Maurer-Cartan residual, and on the mismatch between
/// a recovered edge sphere and the one implied by integrated frames.
pub const MAURER_CARTAN: f64 = 1e-8;

/// Relative smallest singular value below which four points count as
/// concircular when an edge sphere is recovered from them.
pub const CONCIRCULAR: f64 = 1e-8;
