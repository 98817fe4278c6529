//! JSON interchange format for surfaces and converted patches.
//!
//! Control nets are nested arrays of [x, y, z], row-major in u then v; knot
//! vectors are flat arrays including repeats. Every document carries a "type"
//! tag so files are self-describing.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::types::{AncfSurfaceElement, BSplineSurface, BezierSurface, KnotSpan, Validate};

/// One converted element tagged with the knot span it came from and the
/// parameter rectangle it covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedPatch {
    pub span: KnotSpan,
    pub u_range: [f64; 2],
    pub v_range: [f64; 2],
    pub a: f64,
    pub b: f64,
    pub nodes: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SurfaceFile {
    #[serde(rename = "bezier_surface")]
    Bezier { degree_u: usize, degree_v: usize, control_points: Vec<Vec<[f64; 3]>> },
    #[serde(rename = "bspline_surface")]
    BSpline {
        degree_u: usize,
        degree_v: usize,
        knots_u: Vec<f64>,
        knots_v: Vec<f64>,
        control_points: Vec<Vec<[f64; 3]>>,
    },
    #[serde(rename = "ancf_patch")]
    Ancf { a: f64, b: f64, nodes: Vec<[f64; 3]> },
    #[serde(rename = "ancf_patch_list")]
    AncfList { patches: Vec<TaggedPatch> },
}

fn net_from_arrays(rows: &[Vec<[f64; 3]>]) -> Vec<Vec<Point3>> {
    rows.iter().map(|r| r.iter().map(|&p| Point3::from(p)).collect()).collect()
}

fn net_to_arrays(rows: &[Vec<Point3>]) -> Vec<Vec<[f64; 3]>> {
    rows.iter().map(|r| r.iter().map(|p| [p.x, p.y, p.z]).collect()).collect()
}

fn nodes_from_arrays(nodes: &[[f64; 3]]) -> Result<[Point3; 16]> {
    if nodes.len() != 16 {
        return Err(Error::Validation(format!("expected 16 nodes, got {}", nodes.len())));
    }
    let mut out = [Point3::ZERO; 16];
    for (slot, p) in out.iter_mut().zip(nodes) {
        *slot = Point3::from(*p);
    }
    Ok(out)
}

fn nodes_to_arrays(nodes: &[Point3; 16]) -> Vec<[f64; 3]> {
    nodes.iter().map(|p| [p.x, p.y, p.z]).collect()
}

impl SurfaceFile {
    pub fn from_bezier(s: &BezierSurface) -> Self {
        SurfaceFile::Bezier {
            degree_u: s.degree_u,
            degree_v: s.degree_v,
            control_points: net_to_arrays(&s.net),
        }
    }

    pub fn from_bspline(s: &BSplineSurface) -> Self {
        SurfaceFile::BSpline {
            degree_u: s.degree_u,
            degree_v: s.degree_v,
            knots_u: s.knots_u.clone(),
            knots_v: s.knots_v.clone(),
            control_points: net_to_arrays(&s.net),
        }
    }

    pub fn from_ancf(e: &AncfSurfaceElement) -> Self {
        SurfaceFile::Ancf { a: e.a, b: e.b, nodes: nodes_to_arrays(&e.nodes) }
    }

    /// Tag each element with its source span and parameter rectangle.
    pub fn from_ancf_list(
        source: &BSplineSurface,
        pairs: &[(KnotSpan, AncfSurfaceElement)],
    ) -> Self {
        let patches = pairs
            .iter()
            .map(|(span, e)| TaggedPatch {
                span: *span,
                u_range: [source.knots_u[span.e], source.knots_u[span.e + 1]],
                v_range: [source.knots_v[span.f], source.knots_v[span.f + 1]],
                a: e.a,
                b: e.b,
                nodes: nodes_to_arrays(&e.nodes),
            })
            .collect();
        SurfaceFile::AncfList { patches }
    }

    pub fn to_bezier(&self) -> Result<BezierSurface> {
        match self {
            SurfaceFile::Bezier { degree_u, degree_v, control_points } => {
                let s = BezierSurface {
                    degree_u: *degree_u,
                    degree_v: *degree_v,
                    net: net_from_arrays(control_points),
                };
                s.check()?;
                Ok(s)
            }
            _ => Err(Error::Validation("file does not hold a Bezier surface".into())),
        }
    }

    pub fn to_bspline(&self) -> Result<BSplineSurface> {
        match self {
            SurfaceFile::BSpline { degree_u, degree_v, knots_u, knots_v, control_points } => {
                let s = BSplineSurface {
                    degree_u: *degree_u,
                    degree_v: *degree_v,
                    knots_u: knots_u.clone(),
                    knots_v: knots_v.clone(),
                    net: net_from_arrays(control_points),
                };
                s.check()?;
                Ok(s)
            }
            _ => Err(Error::Validation("file does not hold a B-spline surface".into())),
        }
    }

    pub fn to_ancf(&self) -> Result<AncfSurfaceElement> {
        match self {
            SurfaceFile::Ancf { a, b, nodes } => {
                let e = AncfSurfaceElement { a: *a, b: *b, nodes: nodes_from_arrays(nodes)? };
                e.check()?;
                Ok(e)
            }
            _ => Err(Error::Validation("file does not hold an element".into())),
        }
    }

    pub fn to_ancf_list(&self) -> Result<Vec<(TaggedPatch, AncfSurfaceElement)>> {
        match self {
            SurfaceFile::AncfList { patches } => patches
                .iter()
                .map(|p| {
                    let e = AncfSurfaceElement { a: p.a, b: p.b, nodes: nodes_from_arrays(&p.nodes)? };
                    e.check()?;
                    Ok((p.clone(), e))
                })
                .collect(),
            _ => Err(Error::Validation("file does not hold an element list".into())),
        }
    }

    /// Validate whatever payload the document carries.
    pub fn validate_payload(&self) -> Result<()> {
        match self {
            SurfaceFile::Bezier { .. } => self.to_bezier().map(|_| ()),
            SurfaceFile::BSpline { .. } => self.to_bspline().map(|_| ()),
            SurfaceFile::Ancf { .. } => self.to_ancf().map(|_| ()),
            SurfaceFile::AncfList { .. } => self.to_ancf_list().map(|_| ()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: SurfaceFile =
            serde_json::from_str(text).map_err(|e| Error::Validation(format!("bad JSON: {e}")))?;
        file.validate_payload()?;
        Ok(file)
    }

    /// Canonical serialized form; parse(to_json(x)) == x.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("surface files always serialize");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Atomic write: temp file in the same directory, then rename.
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let tmp = dir.join(format!(
            ".{}.tmp",
            path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "surface".into())
        ));
        fs::write(&tmp, self.to_json())
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", tmp.display())))?;
        fs::rename(&tmp, path)
            .map_err(|e| Error::Validation(format!("cannot rename onto {}: {e}", path.display())))?;
        Ok(())
    }
}
