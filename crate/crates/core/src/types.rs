//! Domain value types shared by every conversion, with validation and the
//! canonical nodal slot ordering.

use serde::{Deserialize, Serialize};

use crate::matrix::{Mat16, SLOTS};
use crate::point::Point3;

pub const MAX_DEGREE: usize = 3;

/// One corner of the rectangular parameter domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerU {
    Left,  // x = 0
    Right, // x = a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerV {
    Left,  // y = 0
    Right, // y = b
}

/// Identifies one of the 16 nodal slots by corner and derivative order.
/// `du`/`dv` are the x- and y-derivative orders, each 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodalSlot {
    pub corner_u: CornerU,
    pub corner_v: CornerV,
    pub du: u8,
    pub dv: u8,
}

impl NodalSlot {
    /// Index into the canonical nodal vector.
    ///
    /// Ordering: v-corner groups of four (v-left value derivative group,
    /// v-left dv group, v-right value group, v-right dv group), and within
    /// each group the u conditions cycle (left value, left du, right value,
    /// right du).
    pub fn index(&self) -> usize {
        let group = match (self.corner_v, self.dv) {
            (CornerV::Left, 0) => 0,
            (CornerV::Left, _) => 1,
            (CornerV::Right, 0) => 2,
            (CornerV::Right, _) => 3,
        };
        let pos = match (self.corner_u, self.du) {
            (CornerU::Left, 0) => 0,
            (CornerU::Left, _) => 1,
            (CornerU::Right, 0) => 2,
            (CornerU::Right, _) => 3,
        };
        group * 4 + pos
    }

    /// All 16 slots in canonical order.
    pub fn all() -> [NodalSlot; SLOTS] {
        let mut out = [NodalSlot {
            corner_u: CornerU::Left,
            corner_v: CornerV::Left,
            du: 0,
            dv: 0,
        }; SLOTS];
        let groups = [
            (CornerV::Left, 0u8),
            (CornerV::Left, 1),
            (CornerV::Right, 0),
            (CornerV::Right, 1),
        ];
        let positions = [
            (CornerU::Left, 0u8),
            (CornerU::Left, 1),
            (CornerU::Right, 0),
            (CornerU::Right, 1),
        ];
        for (g, &(cv, dv)) in groups.iter().enumerate() {
            for (p, &(cu, du)) in positions.iter().enumerate() {
                out[g * 4 + p] = NodalSlot { corner_u: cu, corner_v: cv, du, dv };
            }
        }
        out
    }
}

/// A single invariant violation, as data rather than a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Human-readable path to the offending field, e.g. `knots_u`.
    pub path: String,
    pub message: String,
}

impl Violation {
    fn new(path: &str, message: impl Into<String>) -> Self {
        Violation { path: path.to_string(), message: message.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

pub trait Validate {
    fn validate(&self) -> Vec<Violation>;

    fn check(&self) -> crate::Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msg = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
            Err(crate::Error::Validation(msg))
        }
    }
}

/// Tensor-product Bernstein surface over the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BezierSurface {
    pub degree_u: usize,
    pub degree_v: usize,
    /// Control net, `net[i][j]` for i = 0..=degree_u, j = 0..=degree_v.
    pub net: Vec<Vec<Point3>>,
}

impl BezierSurface {
    pub fn new(degree_u: usize, degree_v: usize, net: Vec<Vec<Point3>>) -> crate::Result<Self> {
        let s = BezierSurface { degree_u, degree_v, net };
        s.check()?;
        Ok(s)
    }
}

impl Validate for BezierSurface {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, d) in [("degree_u", self.degree_u), ("degree_v", self.degree_v)] {
            if d < 1 || d > MAX_DEGREE {
                out.push(Violation::new(name, format!("degree must be in 1..=3, got {d}")));
            }
        }
        if self.net.len() != self.degree_u + 1 {
            out.push(Violation::new(
                "net",
                format!("expected {} rows, got {}", self.degree_u + 1, self.net.len()),
            ));
        }
        for (i, row) in self.net.iter().enumerate() {
            if row.len() != self.degree_v + 1 {
                out.push(Violation::new(
                    "net",
                    format!("row {i}: expected {} points, got {}", self.degree_v + 1, row.len()),
                ));
            }
            for (j, p) in row.iter().enumerate() {
                if !p.is_finite() {
                    out.push(Violation::new("net", format!("net[{i}][{j}] is not finite")));
                }
            }
        }
        out
    }
}

/// Piecewise tensor-product polynomial surface over two knot vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BSplineSurface {
    pub degree_u: usize,
    pub degree_v: usize,
    pub knots_u: Vec<f64>,
    pub knots_v: Vec<f64>,
    /// Control net, `net[i][j]`; knots_u.len() == net.len() + degree_u + 1.
    pub net: Vec<Vec<Point3>>,
}

impl BSplineSurface {
    pub fn new(
        degree_u: usize,
        degree_v: usize,
        knots_u: Vec<f64>,
        knots_v: Vec<f64>,
        net: Vec<Vec<Point3>>,
    ) -> crate::Result<Self> {
        let s = BSplineSurface { degree_u, degree_v, knots_u, knots_v, net };
        s.check()?;
        Ok(s)
    }

    /// Valid parameter range in u: [knots_u[k], knots_u[ctrl_count]].
    pub fn domain_u(&self) -> (f64, f64) {
        let n = self.net.len();
        (self.knots_u[self.degree_u], self.knots_u[n])
    }

    pub fn domain_v(&self) -> (f64, f64) {
        let n = self.net[0].len();
        (self.knots_v[self.degree_v], self.knots_v[n])
    }
}

fn validate_knots(path: &str, knots: &[f64], expected_len: usize, out: &mut Vec<Violation>) {
    if knots.len() != expected_len {
        out.push(Violation::new(
            path,
            format!("expected {} knots, got {}", expected_len, knots.len()),
        ));
    }
    if knots.iter().any(|k| !k.is_finite()) {
        out.push(Violation::new(path, "contains non-finite knot"));
    }
    if knots.windows(2).any(|w| w[0] > w[1]) {
        out.push(Violation::new(path, format!("{path} not non-decreasing")));
    }
}

impl Validate for BSplineSurface {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, d) in [("degree_u", self.degree_u), ("degree_v", self.degree_v)] {
            if d < 1 || d > MAX_DEGREE {
                out.push(Violation::new(name, format!("degree must be in 1..=3, got {d}")));
            }
        }
        if self.net.is_empty() || self.net[0].is_empty() {
            out.push(Violation::new("net", "empty control net"));
            return out;
        }
        let rows = self.net.len();
        let cols = self.net[0].len();
        if rows <= self.degree_u {
            out.push(Violation::new("net", "need at least degree_u+1 control rows"));
        }
        if cols <= self.degree_v {
            out.push(Violation::new("net", "need at least degree_v+1 control columns"));
        }
        for (i, row) in self.net.iter().enumerate() {
            if row.len() != cols {
                out.push(Violation::new("net", format!("row {i} is ragged")));
            }
            for (j, p) in row.iter().enumerate() {
                if !p.is_finite() {
                    out.push(Violation::new("net", format!("net[{i}][{j}] is not finite")));
                }
            }
        }
        validate_knots("knots_u", &self.knots_u, rows + self.degree_u + 1, &mut out);
        validate_knots("knots_v", &self.knots_v, cols + self.degree_v + 1, &mut out);
        out
    }
}

/// A non-degenerate knot interval pair: the unit of per-patch conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotSpan {
    /// Index e with knots_u[e] < knots_u[e+1].
    pub e: usize,
    /// Index f with knots_v[f] < knots_v[f+1].
    pub f: usize,
}

/// The 48-DOF bicubic Hermite element: dimensions (a, b) and 16 nodal slots
/// in canonical order (see [`NodalSlot::index`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AncfSurfaceElement {
    pub a: f64,
    pub b: f64,
    pub nodes: [Point3; SLOTS],
}

impl AncfSurfaceElement {
    pub fn new(a: f64, b: f64, nodes: [Point3; SLOTS]) -> crate::Result<Self> {
        let e = AncfSurfaceElement { a, b, nodes };
        e.check()?;
        Ok(e)
    }

    pub fn node(&self, slot: NodalSlot) -> Point3 {
        self.nodes[slot.index()]
    }

    pub fn set_node(&mut self, slot: NodalSlot, p: Point3) {
        self.nodes[slot.index()] = p;
    }
}

impl Validate for AncfSurfaceElement {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !(self.a > 0.0) {
            out.push(Violation::new("a", "a must be positive"));
        }
        if !(self.b > 0.0) {
            out.push(Violation::new("b", "b must be positive"));
        }
        for (i, p) in self.nodes.iter().enumerate() {
            if !p.is_finite() {
                out.push(Violation::new("nodes", format!("nodes[{i}] is not finite")));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    BezierForward,
    BezierInverse,
    BSplineForward,
    BSplineInverse,
}

/// Degrees and geometry used to assemble a conversion matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixMeta {
    Bezier { m: usize, n: usize, a: f64, b: f64 },
    BSpline { degrees: (usize, usize), span: KnotSpan, a: f64, b: f64 },
}

/// A 16x16 scalar conversion matrix with provenance metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionMatrix {
    pub entries: Mat16,
    pub kind: MatrixKind,
    pub meta: MatrixMeta,
}

impl ConversionMatrix {
    pub fn apply(&self, v: &[Point3; SLOTS]) -> [Point3; SLOTS] {
        self.entries.apply(v)
    }

    /// Bezier-kind matrices carry no coupling between the v-left and v-right
    /// slot halves.
    pub fn is_block_diagonal(&self) -> bool {
        for i in 0..8 {
            for j in 8..16 {
                if self.entries.rows[i][j] != 0.0 || self.entries.rows[j][i] != 0.0 {
                    return false;
                }
            }
        }
        true
    }
}

impl Validate for ConversionMatrix {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.entries.determinant().abs() == 0.0 {
            out.push(Violation::new("entries", "matrix is singular"));
        }
        if matches!(self.kind, MatrixKind::BezierForward | MatrixKind::BezierInverse)
            && !self.is_block_diagonal()
        {
            out.push(Violation::new("entries", "bezier matrix must be block-diagonal"));
        }
        out
    }
}
