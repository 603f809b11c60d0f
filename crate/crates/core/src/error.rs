//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors reported by geometry, curve, and lift operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HolonomyError {
    /// A complex matrix passed to the real embedding was not square.
    #[error("complex matrix must be square to embed, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    /// Vector or group-element dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Group-element coordinates violate the pseudo-sphere constraint
    /// w1^2 + w2^2 - w3^2 - w4^2 = 1 beyond tolerance.
    #[error("pseudo-sphere constraint violated: |w1^2+w2^2-w3^2-w4^2 - 1| = {residual:e}")]
    ConstraintViolation { residual: f64 },

    /// Two tangent vectors were paired at different base points.
    #[error("tangent vectors are based at different group elements")]
    TangentBaseMismatch,

    /// The two vectors supposed to span a plane are (numerically) dependent.
    #[error("plane spanning vectors are linearly dependent (residual norm {residual:e})")]
    DegeneratePlane { residual: f64 },

    /// A plane failed the totally-geodesic criterion for the complex
    /// hyperbolic base: |Im<v,w>| = {imaginary_pairing} is neither 0
    /// (totally real) nor 1 (complex line), and the triple bracket
    /// [[u,u'],u] leaves span{u,u'}.
    #[error(
        "plane is not totally geodesic in the complex hyperbolic base: \
         |Im<v,w>| = {imaginary_pairing:.6} is neither 0 (totally real) nor 1 (complex line), \
         and the bracket-closure test [[u,u'],u] in span{{u,u'}} fails"
    )]
    NotTotallyGeodesic { imaginary_pairing: f64 },

    /// Curve construction rejected invalid data (negative radius, too few
    /// vertices, self-intersection, ...).
    #[error("invalid curve: {reason}")]
    InvalidCurve { reason: String },

    /// A sampled curve does not close up.
    #[error("curve is not closed: endpoint gap {gap:e} exceeds 1e-12")]
    NonClosedCurve { gap: f64 },

    /// A hyperbolic-chart operation met a sample with x < 0.
    #[error("chart coordinate x must be nonnegative, found min x = {min_x}")]
    NegativeChartX { min_x: f64 },

    /// Zero-length curve where a flat-model construction needs length > 0.
    #[error("curve has zero length")]
    ZeroLengthCurve,

    /// Lift integration failed (non-finite values or horizontality residual
    /// above 1e-5 even after step halving).
    #[error("lift integration failed: {reason}")]
    IntegrationFailure { reason: String },
}
