//! Holonomy displacements of horizontal lifts of closed curves, in two
//! settings: the circle bundle over the complex hyperbolic line (realized on
//! SU(1,1) in real quaternion-style coordinates) and the line bundle given
//! by the central extension of the complex Heisenberg groups over C^n.
//!
//! In both settings the holonomy displacement of a piecewise smooth simple
//! closed curve on a totally geodesic surface is proportional to the signed
//! area it encloses; the proportionality coefficient is 1/2 for complex
//! lines in the hyperbolic base, 0 for totally real planes, and
//! e = 4 Im<v,w> for a plane spanned by the orthonormal pair (v, w) in C^n.
//! The crate measures displacements by integrating horizontal lifts (both
//! from the solved fiber equations and through a generic metric-based
//! corrector), computes enclosed areas by Green-theorem quadrature, and
//! reports measured-versus-predicted residuals.

pub mod curve;
pub mod error;
pub mod heisenberg;
pub mod lift;
pub mod matrix;
pub mod plane;
pub mod su11;

pub use curve::{
    curve_length, euclidean_area, hyperbolic_area, ChartCurve, CurveMetrics, CurveSample,
    MetricKind, Orientation,
};
pub use error::HolonomyError;
pub use heisenberg::{heis_bracket, HeisenbergAlgebra, HeisenbergElement, HeisenbergTangent};
pub use lift::{
    flat_model, holonomy, holonomy_with_trace, lift_generic, lift_heisenberg_closed_form,
    lift_su11_closed_form, reduce_angle, FlatModel, HolonomyReport, LiftMethod, LiftPoints,
    LiftTrace, CONSISTENCY_TOL,
};
pub use matrix::{embed_complex, ComplexMatrix, ComplexVector, RealMatrix};
pub use plane::{
    classify_plane, equivariance_check, project_su11, triple_bracket, BundleDescriptor, BundleKind,
    Ch1Point, PlaneClass, PlaneTag, SurfacePlane,
};
pub use su11::{product_chain, su11_bracket, Su11Algebra, Su11Element, Su11Tangent};
