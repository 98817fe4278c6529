//! Conversion kernel between ANCF bicubic surface elements and Bezier /
//! B-spline patches of degrees up to 3 x 3.
//!
//! The crate is organized as:
//! - [`types`]: surface and element containers with validation
//! - [`basis`]: Bernstein, beam shape, and B-spline span basis evaluation
//! - [`bezier`]: Bezier net <-> element conversion and degree handling
//! - [`bspline`]: per-span B-spline conversion, knot insertion, decomposition
//! - [`io`]: the JSON interchange format

pub mod basis;
pub mod bezier;
pub mod bspline;
pub mod error;
pub mod io;
pub mod matrix;
pub mod point;
pub mod types;

pub use error::{Error, Result};
pub use matrix::{Mat16, SLOTS};
pub use point::Point3;
pub use types::{
    AncfSurfaceElement, BSplineSurface, BezierSurface, ConversionMatrix, CornerU, CornerV,
    KnotSpan, MatrixKind, MatrixMeta, NodalSlot, Validate, Violation, MAX_DEGREE,
};

pub use basis::{
    ancf_eval, beam_shape, beam_shape_deriv, bezier_eval, cox_de_boor,
    span_basis, span_endpoint_values, span_endpoint_window,
};
pub use bezier::{
    ancf_to_bezier, ancf_to_bezier_tol, bezier_to_ancf, degree_elevate, dependency_residuals_3x2,
    detect_optimal_degrees, general_t, general_t_inv, GEOMETRIC_TOL,
};
pub use bspline::{
    ancf_to_bspline_span, bspline_eval, bspline_eval_on_span, bspline_to_ancf, decompose_to_bezier,
    extract_span_points, insert_knot, list_spans, psi_matrix, Direction, SpanDims,
};
pub use io::{SurfaceFile, TaggedPatch};
