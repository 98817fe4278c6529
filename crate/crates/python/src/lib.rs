//! Python bindings: the main surface types and conversion operations,
//! with points exposed as plain (x, y, z) tuples.

use ancf_bridge_core::basis::{ancf_eval, bezier_eval};
use ancf_bridge_core::bezier::{
    ancf_to_bezier_tol, bezier_to_ancf, degree_elevate, dependency_residuals_3x2,
    detect_optimal_degrees, GEOMETRIC_TOL,
};
use ancf_bridge_core::bspline::{
    bspline_eval, bspline_to_ancf, decompose_to_bezier, insert_knot, list_spans, Direction,
    SpanDims,
};
use ancf_bridge_core::{
    AncfSurfaceElement, BSplineSurface, BezierSurface, Error, Point3, SurfaceFile,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Triple = (f64, f64, f64);

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_point(t: Triple) -> Point3 {
    Point3::new(t.0, t.1, t.2)
}

fn from_point(p: Point3) -> Triple {
    (p.x, p.y, p.z)
}

fn net_in(rows: Vec<Vec<Triple>>) -> Vec<Vec<Point3>> {
    rows.into_iter().map(|r| r.into_iter().map(to_point).collect()).collect()
}

fn net_out(rows: &[Vec<Point3>]) -> Vec<Vec<Triple>> {
    rows.iter().map(|r| r.iter().map(|p| from_point(*p)).collect()).collect()
}

#[pyclass(name = "BezierSurface", skip_from_py_object)]
#[derive(Clone)]
struct PyBezierSurface {
    inner: BezierSurface,
}

#[pymethods]
impl PyBezierSurface {
    #[new]
    fn new(degree_u: usize, degree_v: usize, control_points: Vec<Vec<Triple>>) -> PyResult<Self> {
        BezierSurface::new(degree_u, degree_v, net_in(control_points))
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn degree_u(&self) -> usize {
        self.inner.degree_u
    }

    #[getter]
    fn degree_v(&self) -> usize {
        self.inner.degree_v
    }

    #[getter]
    fn control_points(&self) -> Vec<Vec<Triple>> {
        net_out(&self.inner.net)
    }

    fn eval(&self, u: f64, v: f64) -> PyResult<Triple> {
        bezier_eval(&self.inner, u, v).map(from_point).map_err(err)
    }

    /// Raise the degrees by (du, dv) without changing the surface.
    fn elevate(&self, du: usize, dv: usize) -> PyResult<Self> {
        degree_elevate(&self.inner, du, dv).map(|inner| Self { inner }).map_err(err)
    }

    /// Convert to an ANCF element with dimensions a x b.
    #[pyo3(signature = (a = 1.0, b = 1.0))]
    fn to_ancf(&self, a: f64, b: f64) -> PyResult<PyAncfElement> {
        bezier_to_ancf(&self.inner, a, b).map(|inner| PyAncfElement { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        SurfaceFile::from_bezier(&self.inner).to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = SurfaceFile::parse(text).and_then(|f| f.to_bezier()).map_err(err)?;
        Ok(Self { inner })
    }

    fn __repr__(&self) -> String {
        format!("BezierSurface(degrees=({}, {}))", self.inner.degree_u, self.inner.degree_v)
    }
}

#[pyclass(name = "BSplineSurface", skip_from_py_object)]
#[derive(Clone)]
struct PyBSplineSurface {
    inner: BSplineSurface,
}

#[pymethods]
impl PyBSplineSurface {
    #[new]
    fn new(
        degree_u: usize,
        degree_v: usize,
        knots_u: Vec<f64>,
        knots_v: Vec<f64>,
        control_points: Vec<Vec<Triple>>,
    ) -> PyResult<Self> {
        BSplineSurface::new(degree_u, degree_v, knots_u, knots_v, net_in(control_points))
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn degree_u(&self) -> usize {
        self.inner.degree_u
    }

    #[getter]
    fn degree_v(&self) -> usize {
        self.inner.degree_v
    }

    #[getter]
    fn knots_u(&self) -> Vec<f64> {
        self.inner.knots_u.clone()
    }

    #[getter]
    fn knots_v(&self) -> Vec<f64> {
        self.inner.knots_v.clone()
    }

    #[getter]
    fn control_points(&self) -> Vec<Vec<Triple>> {
        net_out(&self.inner.net)
    }

    fn eval(&self, u: f64, v: f64) -> PyResult<Triple> {
        bspline_eval(&self.inner, u, v).map(from_point).map_err(err)
    }

    /// Knot spans with positive area, as (e, f) index pairs.
    fn spans(&self) -> PyResult<Vec<(usize, usize)>> {
        list_spans(&self.inner).map(|s| s.iter().map(|s| (s.e, s.f)).collect()).map_err(err)
    }

    /// Insert one knot ("u" or "v" direction); geometry is unchanged.
    fn insert_knot(&self, direction: &str, value: f64) -> PyResult<Self> {
        let direction = match direction {
            "u" => Direction::U,
            "v" => Direction::V,
            other => return Err(PyValueError::new_err(format!("direction must be 'u' or 'v', got {other:?}"))),
        };
        insert_knot(&self.inner, direction, value).map(|inner| Self { inner }).map_err(err)
    }

    /// Split into Bezier patches, one per span, tagged with (e, f).
    fn decompose(&self) -> PyResult<Vec<((usize, usize), PyBezierSurface)>> {
        decompose_to_bezier(&self.inner)
            .map(|patches| {
                patches
                    .into_iter()
                    .map(|(span, inner)| ((span.e, span.f), PyBezierSurface { inner }))
                    .collect()
            })
            .map_err(err)
    }

    /// Convert every span to an ANCF element. Without explicit dimensions
    /// each element takes its span's parametric size.
    #[pyo3(signature = (a = None, b = None))]
    fn to_ancf(&self, a: Option<f64>, b: Option<f64>) -> PyResult<Vec<((usize, usize), PyAncfElement)>> {
        let dims = match (a, b) {
            (Some(a), Some(b)) => SpanDims::Fixed { a, b },
            (None, None) => SpanDims::SpanLength,
            _ => return Err(PyValueError::new_err("give both a and b, or neither")),
        };
        bspline_to_ancf(&self.inner, dims)
            .map(|pairs| {
                pairs
                    .into_iter()
                    .map(|(span, inner)| ((span.e, span.f), PyAncfElement { inner }))
                    .collect()
            })
            .map_err(err)
    }

    fn to_json(&self) -> String {
        SurfaceFile::from_bspline(&self.inner).to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = SurfaceFile::parse(text).and_then(|f| f.to_bspline()).map_err(err)?;
        Ok(Self { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "BSplineSurface(degrees=({}, {}), net={}x{})",
            self.inner.degree_u,
            self.inner.degree_v,
            self.inner.net.len(),
            self.inner.net[0].len()
        )
    }
}

#[pyclass(name = "AncfElement", skip_from_py_object)]
#[derive(Clone)]
struct PyAncfElement {
    inner: AncfSurfaceElement,
}

#[pymethods]
impl PyAncfElement {
    #[new]
    fn new(a: f64, b: f64, nodes: Vec<Triple>) -> PyResult<Self> {
        if nodes.len() != 16 {
            return Err(PyValueError::new_err(format!("expected 16 nodes, got {}", nodes.len())));
        }
        let mut slots = [Point3::ZERO; 16];
        for (slot, t) in slots.iter_mut().zip(nodes) {
            *slot = to_point(t);
        }
        AncfSurfaceElement::new(a, b, slots).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }

    #[getter]
    fn nodes(&self) -> Vec<Triple> {
        self.inner.nodes.iter().map(|p| from_point(*p)).collect()
    }

    fn eval(&self, x: f64, y: f64) -> PyResult<Triple> {
        ancf_eval(&self.inner, x, y).map(from_point).map_err(err)
    }

    /// Convert back to a Bezier net of the requested degrees.
    #[pyo3(signature = (degree_u = 3, degree_v = 3, tol = GEOMETRIC_TOL))]
    fn to_bezier(&self, degree_u: usize, degree_v: usize, tol: f64) -> PyResult<PyBezierSurface> {
        ancf_to_bezier_tol(&self.inner, degree_u, degree_v, tol)
            .map(|inner| PyBezierSurface { inner })
            .map_err(err)
    }

    /// The lowest representable degrees plus the residual for every
    /// candidate pair.
    #[pyo3(signature = (tol = GEOMETRIC_TOL))]
    fn optimal_degrees(
        &self,
        tol: f64,
    ) -> PyResult<((usize, usize), Vec<((usize, usize), f64)>)> {
        detect_optimal_degrees(&self.inner, tol).map_err(err)
    }

    /// Residuals of the four nodal dependency relations a 3x2 element
    /// satisfies; near zero iff the element came from a 3x2 net.
    fn dependency_residuals(&self) -> [f64; 4] {
        dependency_residuals_3x2(&self.inner)
    }

    fn to_json(&self) -> String {
        SurfaceFile::from_ancf(&self.inner).to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = SurfaceFile::parse(text).and_then(|f| f.to_ancf()).map_err(err)?;
        Ok(Self { inner })
    }

    fn __repr__(&self) -> String {
        format!("AncfElement(a={}, b={})", self.inner.a, self.inner.b)
    }
}

#[pymodule]
fn ancf_bridge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBezierSurface>()?;
    m.add_class::<PyBSplineSurface>()?;
    m.add_class::<PyAncfElement>()?;
    m.add("GEOMETRIC_TOL", GEOMETRIC_TOL)?;
    Ok(())
}
