//! Uniform sampling view: any surface file becomes a list of patches, each
//! evaluable on the unit square of its own parameter rectangle. Comparing two
//! files patch by patch on normalized coordinates is then the
//! reparameterization between representations.

use std::rc::Rc;

use ancf_bridge_core::basis::{ancf_eval, bezier_eval};
use ancf_bridge_core::bspline::{bspline_eval_on_span, list_spans};
use ancf_bridge_core::{Error, Point3, Result, SurfaceFile};

pub struct Patch {
    pub u_range: [f64; 2],
    pub v_range: [f64; 2],
    eval: Box<dyn Fn(f64, f64) -> Point3>,
}

impl Patch {
    /// Evaluate at normalized coordinates (s, t) in the unit square.
    pub fn at(&self, s: f64, t: f64) -> Point3 {
        (self.eval)(s, t)
    }
}

pub fn patches(file: &SurfaceFile) -> Result<Vec<Patch>> {
    match file {
        SurfaceFile::Bezier { .. } => {
            let surface = file.to_bezier()?;
            Ok(vec![Patch {
                u_range: [0.0, 1.0],
                v_range: [0.0, 1.0],
                eval: Box::new(move |s, t| bezier_eval(&surface, s, t).expect("unit square")),
            }])
        }
        SurfaceFile::BSpline { .. } => {
            let surface = Rc::new(file.to_bspline()?);
            list_spans(&surface)?
                .into_iter()
                .map(|span| {
                    let surface = Rc::clone(&surface);
                    Ok(Patch {
                        u_range: [surface.knots_u[span.e], surface.knots_u[span.e + 1]],
                        v_range: [surface.knots_v[span.f], surface.knots_v[span.f + 1]],
                        eval: Box::new(move |s, t| {
                            bspline_eval_on_span(&surface, &span, s, t).expect("unit square")
                        }),
                    })
                })
                .collect()
        }
        SurfaceFile::Ancf { .. } => {
            let element = file.to_ancf()?;
            let (a, b) = (element.a, element.b);
            Ok(vec![Patch {
                u_range: [0.0, a],
                v_range: [0.0, b],
                eval: Box::new(move |s, t| {
                    ancf_eval(&element, s * a, t * b).expect("inside element")
                }),
            }])
        }
        SurfaceFile::AncfList { .. } => file
            .to_ancf_list()?
            .into_iter()
            .map(|(tag, element)| {
                let (a, b) = (element.a, element.b);
                Ok(Patch {
                    u_range: tag.u_range,
                    v_range: tag.v_range,
                    eval: Box::new(move |s, t| {
                        ancf_eval(&element, s * a, t * b).expect("inside element")
                    }),
                })
            })
            .collect(),
    }
}

/// Max pointwise deviation between corresponding patches on an n x n grid.
pub fn compare(left: &[Patch], right: &[Patch], n: usize) -> Result<f64> {
    if left.len() != right.len() {
        return Err(Error::Validation(format!(
            "patch counts differ: {} vs {}",
            left.len(),
            right.len()
        )));
    }
    if n < 2 {
        return Err(Error::domain(format!("grid must be at least 2, got {n}")));
    }
    let mut worst: f64 = 0.0;
    for (l, r) in left.iter().zip(right) {
        for i in 0..n {
            for j in 0..n {
                let s = i as f64 / (n - 1) as f64;
                let t = j as f64 / (n - 1) as f64;
                worst = worst.max((l.at(s, t) - r.at(s, t)).norm_inf());
            }
        }
    }
    Ok(worst)
}
