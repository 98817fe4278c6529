//! Shared fixtures and generators for the integration suites.
// each suite uses its own subset of these helpers
#![allow(dead_code)]

use ancf_bridge_core::basis::{ancf_eval, bezier_eval};
use ancf_bridge_core::bspline::bspline_eval_on_span;
use ancf_bridge_core::{AncfSurfaceElement, BSplineSurface, BezierSurface, KnotSpan, Point3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_point(rng: &mut StdRng) -> Point3 {
    Point3::new(
        rng.random_range(-10.0..10.0),
        rng.random_range(-10.0..10.0),
        rng.random_range(-10.0..10.0),
    )
}

pub fn rand_net(rng: &mut StdRng, m: usize, n: usize) -> Vec<Vec<Point3>> {
    (0..=m).map(|_| (0..=n).map(|_| rand_point(rng)).collect()).collect()
}

pub fn rand_dims(rng: &mut StdRng) -> (f64, f64) {
    (rng.random_range(0.1..10.0), rng.random_range(0.1..10.0))
}

pub fn rand_bezier(rng: &mut StdRng, m: usize, n: usize) -> BezierSurface {
    BezierSurface { degree_u: m, degree_v: n, net: rand_net(rng, m, n) }
}

pub fn rand_element(rng: &mut StdRng) -> AncfSurfaceElement {
    let (a, b) = rand_dims(rng);
    let mut nodes = [Point3::ZERO; 16];
    for slot in nodes.iter_mut() {
        *slot = rand_point(rng);
    }
    AncfSurfaceElement { a, b, nodes }
}

/// Clamped knot vector on [0, 1] with random interior knots of multiplicity
/// at most `degree` (so the surface stays continuous).
pub fn rand_clamped_knots(rng: &mut StdRng, degree: usize, nctrl: usize) -> Vec<f64> {
    let interior = nctrl - degree - 1;
    let mut pool: Vec<f64> = (1..16).map(|i| i as f64 / 16.0).collect();
    let mut vals: Vec<f64> = Vec::with_capacity(interior);
    while vals.len() < interior {
        let v = pool.remove(rng.random_range(0..pool.len()));
        let mult = 1 + rng.random_range(0..degree.min(interior - vals.len()));
        vals.extend(std::iter::repeat(v).take(mult));
    }
    vals.sort_by(f64::total_cmp);
    let mut knots = vec![0.0; degree + 1];
    knots.extend(vals);
    knots.extend(vec![1.0; degree + 1]);
    knots
}

pub fn rand_clamped_surface(rng: &mut StdRng, k: usize, l: usize) -> BSplineSurface {
    let nu = k + 1 + rng.random_range(0..3);
    let nv = l + 1 + rng.random_range(0..3);
    BSplineSurface {
        degree_u: k,
        degree_v: l,
        knots_u: rand_clamped_knots(rng, k, nu),
        knots_v: rand_clamped_knots(rng, l, nv),
        net: rand_net(rng, nu - 1, nv - 1),
    }
}

/// The three-span bicubic surface used throughout: one u span, interior v
/// knots at 0.4 and 0.7.
pub fn three_span_fixture() -> BSplineSurface {
    BSplineSurface {
        degree_u: 3,
        degree_v: 3,
        knots_u: vec![0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0],
        knots_v: vec![0.0, 0.0, 0.0, 0.0, 0.4, 0.7, 1.0, 1.0, 1.0, 1.0],
        net: (0..4)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        Point3::new(
                            0.5 * i as f64,
                            0.3 * j as f64,
                            (0.8 * i as f64 + 0.5 * j as f64).sin(),
                        )
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Max deviation between a Bezier surface and an element over an n x n grid.
pub fn bezier_grid_deviation(surface: &BezierSurface, element: &AncfSurfaceElement, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let u = i as f64 / (n - 1) as f64;
            let v = j as f64 / (n - 1) as f64;
            let p = bezier_eval(surface, u, v).unwrap();
            let q = ancf_eval(element, u * element.a, v * element.b).unwrap();
            worst = worst.max((p - q).norm_inf());
        }
    }
    worst
}

/// Max deviation between one span of a B-spline and an element over an
/// n x n grid in the span's unit square.
pub fn span_grid_deviation(
    surface: &BSplineSurface,
    span: &KnotSpan,
    element: &AncfSurfaceElement,
    n: usize,
) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s = i as f64 / (n - 1) as f64;
            let t = j as f64 / (n - 1) as f64;
            let p = bspline_eval_on_span(surface, span, s, t).unwrap();
            let q = ancf_eval(element, s * element.a, t * element.b).unwrap();
            worst = worst.max((p - q).norm_inf());
        }
    }
    worst
}
