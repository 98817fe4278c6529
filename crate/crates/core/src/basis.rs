//! Basis evaluation: Bernstein rows, Hermite matrices, beam shape functions,
//! the recursive B-spline basis (the oracle), and the non-recursive span
//! bases with their knot-endpoint values.

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::types::{AncfSurfaceElement, BezierSurface, MAX_DEGREE};

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

fn check_degree(d: usize) -> Result<()> {
    if d < 1 || d > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(())
}

fn check_unit(name: &str, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("{name} = {t} outside [0, 1]")));
    }
    Ok(())
}

/// Bernstein row `[B_{0,m}(u), ..., B_{m,m}(u)]`.
pub fn bernstein_row(m: usize, u: f64) -> Result<Vec<f64>> {
    check_degree(m)?;
    check_unit("u", u)?;
    Ok((0..=m)
        .map(|i| binomial(m, i) * u.powi(i as i32) * (1.0 - u).powi((m - i) as i32))
        .collect())
}

/// Derivative row `[B'_{0,m}(u), ..., B'_{m,m}(u)]`.
pub fn bernstein_row_deriv(m: usize, u: f64) -> Result<Vec<f64>> {
    check_degree(m)?;
    check_unit("u", u)?;
    let lower = |i: i64| -> f64 {
        if i < 0 || i as usize > m - 1 {
            0.0
        } else {
            let i = i as usize;
            binomial(m - 1, i) * u.powi(i as i32) * (1.0 - u).powi((m - 1 - i) as i32)
        }
    };
    Ok((0..=m as i64).map(|i| m as f64 * (lower(i - 1) - lower(i))).collect())
}

/// Lower-triangular matrix M_m with `m_ij = (-1)^(i+j) C(m,i) C(i,j)`.
/// The power-basis row `[1, u, .., u^m]` times M_m equals `bernstein_row(m, u)`.
pub fn hermite_matrix(m: usize) -> Result<Vec<Vec<f64>>> {
    check_degree(m)?;
    Ok((0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| {
                    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * binomial(m, i) * binomial(i, j)
                })
                .collect()
        })
        .collect())
}

/// Evaluate a Bezier surface at `(u, v)` in the unit square.
pub fn bezier_eval(surface: &BezierSurface, u: f64, v: f64) -> Result<Point3> {
    let bu = bernstein_row(surface.degree_u, u)?;
    let bv = bernstein_row(surface.degree_v, v)?;
    let mut acc = Point3::ZERO;
    for (i, wu) in bu.iter().enumerate() {
        for (j, wv) in bv.iter().enumerate() {
            acc = acc + surface.net[i][j] * (wu * wv);
        }
    }
    Ok(acc)
}

/// Cubic Hermite beam function s_index (index 1..=4) at parameter `omega`
/// on an interval of length `l`.
pub fn beam_shape(index: usize, omega: f64, l: f64) -> Result<f64> {
    if l <= 0.0 {
        return Err(Error::domain(format!("interval length l = {l} must be positive")));
    }
    if !(0.0..=l).contains(&omega) {
        return Err(Error::domain(format!("omega = {omega} outside [0, {l}]")));
    }
    let lam = omega / l;
    let lam2 = lam * lam;
    let lam3 = lam2 * lam;
    match index {
        1 => Ok(1.0 - 3.0 * lam2 + 2.0 * lam3),
        2 => Ok(l * (lam - 2.0 * lam2 + lam3)),
        3 => Ok(3.0 * lam2 - 2.0 * lam3),
        4 => Ok(l * (lam3 - lam2)),
        _ => Err(Error::domain(format!("beam function index {index} outside 1..=4"))),
    }
}

/// d(s_index)/d(omega).
pub fn beam_shape_deriv(index: usize, omega: f64, l: f64) -> Result<f64> {
    if l <= 0.0 {
        return Err(Error::domain(format!("interval length l = {l} must be positive")));
    }
    if !(0.0..=l).contains(&omega) {
        return Err(Error::domain(format!("omega = {omega} outside [0, {l}]")));
    }
    let lam = omega / l;
    let lam2 = lam * lam;
    match index {
        1 => Ok((6.0 * lam2 - 6.0 * lam) / l),
        2 => Ok(1.0 - 4.0 * lam + 3.0 * lam2),
        3 => Ok((6.0 * lam - 6.0 * lam2) / l),
        4 => Ok(3.0 * lam2 - 2.0 * lam),
        _ => Err(Error::domain(format!("beam function index {index} outside 1..=4"))),
    }
}

/// Beam function indices paired with each nodal slot: within each v group the
/// u functions cycle (s1, s2, s3, s4); the v function advances per group.
fn slot_beam_indices(slot: usize) -> (usize, usize) {
    (slot % 4 + 1, slot / 4 + 1)
}

/// Evaluate the element's displacement field at physical `(x, y)` in
/// `[0, a] x [0, b]`.
pub fn ancf_eval(element: &AncfSurfaceElement, x: f64, y: f64) -> Result<Point3> {
    let mut acc = Point3::ZERO;
    for (slot, node) in element.nodes.iter().enumerate() {
        let (iu, iv) = slot_beam_indices(slot);
        let w = beam_shape(iu, x, element.a)? * beam_shape(iv, y, element.b)?;
        acc = acc + *node * w;
    }
    Ok(acc)
}

fn check_basis_index(knots: &[f64], i: usize, degree: usize) -> Result<()> {
    if i + degree + 1 >= knots.len() {
        return Err(Error::domain(format!(
            "basis index {i} out of range for degree {degree} with {} knots",
            knots.len()
        )));
    }
    Ok(())
}

/// Recursive Cox-de Boor basis value B_{i,degree}(u).
///
/// Degree-0 bases are indicators of `[knots[i], knots[i+1])`, except the
/// interval ending at the final knot which is closed on the right.
pub fn cox_de_boor(knots: &[f64], i: usize, degree: usize, u: f64) -> Result<f64> {
    check_basis_index(knots, i, degree)?;
    if degree == 0 {
        let last = *knots.last().unwrap();
        let hit = if u == last {
            knots[i] < knots[i + 1] && knots[i + 1] == last && u >= knots[i]
        } else {
            knots[i] <= u && u < knots[i + 1]
        };
        return Ok(if hit { 1.0 } else { 0.0 });
    }
    let frac = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    let left = frac(u - knots[i], knots[i + degree] - knots[i])
        * cox_de_boor(knots, i, degree - 1, u)?;
    let right = frac(knots[i + degree + 1] - u, knots[i + degree + 1] - knots[i + 1])
        * cox_de_boor(knots, i + 1, degree - 1, u)?;
    Ok(left + right)
}

/// Cox-de Boor value pinned to one span: the degree-0 base case is the
/// indicator of `i == span`. This evaluates the polynomial piece active on
/// `[knots[span], knots[span+1]]`, including one-sided limits at its ends.
pub fn cox_de_boor_in_span(knots: &[f64], i: usize, degree: usize, span: usize, u: f64) -> Result<f64> {
    check_basis_index(knots, i, degree)?;
    if degree == 0 {
        return Ok(if i == span { 1.0 } else { 0.0 });
    }
    let frac = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    let left = frac(u - knots[i], knots[i + degree] - knots[i])
        * cox_de_boor_in_span(knots, i, degree - 1, span, u)?;
    let right = frac(knots[i + degree + 1] - u, knots[i + degree + 1] - knots[i + 1])
        * cox_de_boor_in_span(knots, i + 1, degree - 1, span, u)?;
    Ok(left + right)
}

/// Analytic derivative of the span-pinned basis.
pub fn cox_de_boor_deriv_in_span(
    knots: &[f64],
    i: usize,
    degree: usize,
    span: usize,
    u: f64,
) -> Result<f64> {
    check_basis_index(knots, i, degree)?;
    if degree == 0 {
        return Ok(0.0);
    }
    let frac = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    let left = frac(degree as f64, knots[i + degree] - knots[i])
        * cox_de_boor_in_span(knots, i, degree - 1, span, u)?;
    let right = frac(degree as f64, knots[i + degree + 1] - knots[i + 1])
        * cox_de_boor_in_span(knots, i + 1, degree - 1, span, u)?;
    Ok(left - right)
}

/// Knot-difference helpers around a span index, with signed offsets.
struct SpanFrame<'a> {
    knots: &'a [f64],
    alpha: usize,
}

impl<'a> SpanFrame<'a> {
    fn new(knots: &'a [f64], span: usize, degree: usize) -> Result<Self> {
        if span + 1 >= knots.len() {
            return Err(Error::domain(format!("span index {span} out of range")));
        }
        if !(knots[span] < knots[span + 1]) {
            return Err(Error::domain(format!(
                "degenerate span: knots[{span}] = knots[{}] = {}",
                span + 1,
                knots[span]
            )));
        }
        // The F/G/H quantities reach from alpha-(degree-1) to alpha+degree.
        let lo = span as isize - (degree as isize - 1);
        let hi = span as isize + degree as isize;
        if lo < 0 || hi as usize >= knots.len() {
            return Err(Error::domain(format!(
                "span {span} lacks the neighbor knots required at degree {degree}"
            )));
        }
        Ok(SpanFrame { knots, alpha: span })
    }

    fn knot(&self, off: isize) -> f64 {
        self.knots[(self.alpha as isize + off) as usize]
    }

    fn f(&self, beta: isize, lambda: f64) -> f64 {
        self.knot(beta) - lambda
    }

    fn g(&self, gamma: isize, lambda: f64) -> f64 {
        lambda - self.knot(gamma)
    }

    fn h(&self, beta: isize, gamma: isize) -> f64 {
        self.knot(beta) - self.knot(gamma)
    }
}

/// The `degree + 1` basis values that are nonzero on the span, evaluated in
/// non-recursive closed form and ordered by ascending basis index
/// `span-degree ..= span`.
pub fn span_basis(knots: &[f64], span: usize, degree: usize, lambda: f64) -> Result<Vec<f64>> {
    check_degree(degree)?;
    let fr = SpanFrame::new(knots, span, degree)?;
    if lambda < fr.knot(0) || lambda > fr.knot(1) {
        return Err(Error::domain(format!(
            "lambda = {lambda} outside span [{}, {}]",
            fr.knot(0),
            fr.knot(1)
        )));
    }
    let f = |b| fr.f(b, lambda);
    let g = |c| fr.g(c, lambda);
    let h = |b, c| fr.h(b, c);
    Ok(match degree {
        1 => vec![f(1) / h(1, 0), g(0) / h(1, 0)],
        2 => vec![
            f(1) * f(1) / (h(1, -1) * h(1, 0)),
            f(1) * g(-1) / (h(1, 0) * h(1, -1)) + f(2) * g(0) / (h(2, 0) * h(1, 0)),
            g(0) * g(0) / (h(2, 0) * h(1, 0)),
        ],
        _ => {
            let d1 = h(1, -2) * h(1, -1) * h(1, 0);
            let d2 = h(2, -1) * h(1, -1) * h(1, 0);
            let d3 = h(2, -1) * h(2, 0) * h(1, 0);
            let d4 = h(3, 0) * h(2, 0) * h(1, 0);
            vec![
                f(1) * f(1) * f(1) / d1,
                f(1) * f(1) * g(-2) / d1 + f(1) * f(2) * g(-1) / d2 + f(2) * f(2) * g(0) / d3,
                f(1) * g(-1) * g(-1) / d2 + f(2) * g(0) * g(-1) / d3 + f(3) * g(0) * g(0) / d4,
                g(0) * g(0) * g(0) / d4,
            ]
        }
    })
}

/// Values and derivatives of every span-active basis at both span knots,
/// with full `degree + 1` windows (vanishing entries included as zeros).
#[derive(Debug, Clone, PartialEq)]
pub struct SpanEndpointWindow {
    pub degree: usize,
    pub left_values: Vec<f64>,
    pub left_derivs: Vec<f64>,
    pub right_values: Vec<f64>,
    pub right_derivs: Vec<f64>,
}

/// Closed-form endpoint values of the non-recursive bases.
pub fn span_endpoint_window(knots: &[f64], span: usize, degree: usize) -> Result<SpanEndpointWindow> {
    check_degree(degree)?;
    let fr = SpanFrame::new(knots, span, degree)?;
    let h = |b, c| fr.h(b, c);
    let (lv, ld, rv, rd) = match degree {
        1 => (
            vec![1.0, 0.0],
            vec![-1.0 / h(1, 0), 1.0 / h(1, 0)],
            vec![0.0, 1.0],
            vec![-1.0 / h(1, 0), 1.0 / h(1, 0)],
        ),
        2 => (
            vec![h(1, 0) / h(1, -1), h(0, -1) / h(1, -1), 0.0],
            vec![-2.0 / h(1, -1), 2.0 / h(1, -1), 0.0],
            vec![0.0, h(2, 1) / h(2, 0), h(1, 0) / h(2, 0)],
            vec![0.0, -2.0 / h(2, 0), 2.0 / h(2, 0)],
        ),
        _ => {
            let theta3 = h(1, 0) * h(1, 0) / (h(1, -2) * h(1, -1));
            let theta2 = h(0, -2) * h(1, 0) / (h(1, -2) * h(1, -1))
                + h(0, -1) * h(2, 0) / (h(2, -1) * h(1, -1));
            let theta1 = h(0, -1) * h(0, -1) / (h(2, -1) * h(1, -1));
            let theta_d3 = -3.0 * h(1, 0) / (h(1, -2) * h(1, -1));
            let theta_d2 = (h(1, 0) - 2.0 * h(0, -2)) / (h(1, -2) * h(1, -1))
                + (h(-1, 0) + 2.0 * h(2, 0)) / (h(2, -1) * h(1, -1));
            let theta_d1 = 3.0 * h(0, -1) / (h(2, -1) * h(1, -1));
            let phi2 = h(2, 1) * h(2, 1) / (h(2, -1) * h(2, 0));
            let phi1 = h(1, -1) * h(2, 1) / (h(2, -1) * h(2, 0))
                + h(3, 1) * h(1, 0) / (h(3, 0) * h(2, 0));
            let phi0 = h(1, 0) * h(1, 0) / (h(3, 0) * h(2, 0));
            let phi_d2 = -3.0 * h(2, 1) / (h(2, -1) * h(2, 0));
            let phi_d1 = (h(2, 1) - 2.0 * h(1, -1)) / (h(2, -1) * h(2, 0))
                + (2.0 * h(3, 1) - h(1, 0)) / (h(3, 0) * h(2, 0));
            let phi_d0 = 3.0 * h(1, 0) / (h(3, 0) * h(2, 0));
            (
                vec![theta3, theta2, theta1, 0.0],
                vec![theta_d3, theta_d2, theta_d1, 0.0],
                vec![0.0, phi2, phi1, phi0],
                vec![0.0, phi_d2, phi_d1, phi_d0],
            )
        }
    };
    Ok(SpanEndpointWindow {
        degree,
        left_values: lv,
        left_derivs: ld,
        right_values: rv,
        right_derivs: rd,
    })
}

/// Endpoint basis values with the basis vanishing at each end omitted, so
/// every list has `degree` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanBasisValues {
    pub degree: usize,
    pub at_left: Vec<f64>,
    pub at_right: Vec<f64>,
    pub d_at_left: Vec<f64>,
    pub d_at_right: Vec<f64>,
}

pub fn span_endpoint_values(knots: &[f64], span: usize, degree: usize) -> Result<SpanBasisValues> {
    let w = span_endpoint_window(knots, span, degree)?;
    Ok(SpanBasisValues {
        degree,
        at_left: w.left_values[..degree].to_vec(),
        d_at_left: w.left_derivs[..degree].to_vec(),
        at_right: w.right_values[1..].to_vec(),
        d_at_right: w.right_derivs[1..].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point3;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn bernstein_endpoints_and_midpoint() {
        assert_eq!(bernstein_row(3, 0.0).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        // binomial expansion of C(3,i) u^i (1-u)^(3-i) at u = 1/2
        let row = bernstein_row(3, 0.5).unwrap();
        for (got, want) in row.iter().zip([0.125, 0.375, 0.375, 0.125]) {
            assert_close(*got, want, 1e-15);
        }
        assert!(bernstein_row(3, 1.5).is_err());
    }

    #[test]
    fn bernstein_partition_of_unity() {
        for m in 1..=3 {
            for i in 0..=20 {
                let u = i as f64 / 20.0;
                let row = bernstein_row(m, u).unwrap();
                assert!(row.iter().all(|&b| b >= 0.0));
                assert_close(row.iter().sum::<f64>(), 1.0, 1e-14);
            }
        }
    }

    #[test]
    fn hermite_matrix_frozen_values() {
        assert_eq!(hermite_matrix(1).unwrap(), vec![vec![1.0, 0.0], vec![-1.0, 1.0]]);
        assert_eq!(
            hermite_matrix(3).unwrap(),
            vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![-3.0, 3.0, 0.0, 0.0],
                vec![3.0, -6.0, 3.0, 0.0],
                vec![-1.0, 3.0, -3.0, 1.0],
            ]
        );
    }

    #[test]
    fn power_basis_times_hermite_is_bernstein() {
        for m in 1..=3usize {
            let mm = hermite_matrix(m).unwrap();
            for s in 0..=10 {
                let u = s as f64 / 10.0;
                let row = bernstein_row(m, u).unwrap();
                for j in 0..=m {
                    let val: f64 = (0..=m).map(|i| u.powi(i as i32) * mm[i][j]).sum();
                    assert_close(val, row[j], 1e-12);
                }
            }
        }
    }

    #[test]
    fn bezier_eval_corners_and_linear_precision() {
        let net: Vec<Vec<Point3>> = (0..4)
            .map(|i| (0..4).map(|j| Point3::new(i as f64 / 3.0, j as f64 / 3.0, 0.0)).collect())
            .collect();
        let s = BezierSurface { degree_u: 3, degree_v: 3, net };
        assert_eq!(bezier_eval(&s, 0.0, 0.0).unwrap(), s.net[0][0]);
        assert_eq!(bezier_eval(&s, 1.0, 1.0).unwrap(), s.net[3][3]);
        let p = bezier_eval(&s, 0.3, 0.7).unwrap();
        assert_close(p.x, 0.3, 1e-14);
        assert_close(p.y, 0.7, 1e-14);
    }

    #[test]
    fn beam_shape_endpoint_values() {
        let l = 2.5;
        assert_close(beam_shape(1, 0.0, l).unwrap(), 1.0, 0.0);
        assert_close(beam_shape(1, l, l).unwrap(), 0.0, 1e-15);
        // d(s2)/d(omega) at omega = 0 is 1
        assert_close(beam_shape_deriv(2, 0.0, l).unwrap(), 1.0, 0.0);
        // s4 slope at the far end is 1
        assert_close(beam_shape_deriv(4, l, l).unwrap(), 1.0, 1e-15);
        for s in 0..=10 {
            let w = l * s as f64 / 10.0;
            let sum = beam_shape(1, w, l).unwrap() + beam_shape(3, w, l).unwrap();
            assert_close(sum, 1.0, 1e-14);
        }
        assert!(beam_shape(1, 0.5, -1.0).is_err());
    }

    #[test]
    fn ancf_eval_corner_interpolation() {
        let mut nodes = [Point3::ZERO; 16];
        for (i, n) in nodes.iter_mut().enumerate() {
            *n = Point3::new(i as f64, -(i as f64), 0.5 * i as f64);
        }
        let el = AncfSurfaceElement { a: 1.5, b: 0.8, nodes };
        assert_eq!(ancf_eval(&el, 0.0, 0.0).unwrap(), nodes[0]);
        assert_eq!(ancf_eval(&el, el.a, el.b).unwrap(), nodes[10]);
    }

    #[test]
    fn ancf_eval_gradient_slots_match_finite_differences() {
        let mut nodes = [Point3::ZERO; 16];
        for (i, n) in nodes.iter_mut().enumerate() {
            *n = Point3::new((i as f64).sin(), (i as f64).cos(), 0.3 * i as f64);
        }
        let el = AncfSurfaceElement { a: 2.0, b: 1.2, nodes };
        let h = 1e-6 * el.a;
        let dx = (ancf_eval(&el, h, 0.0).unwrap() - ancf_eval(&el, 0.0, 0.0).unwrap()) / h;
        assert!((dx - nodes[1]).norm_inf() / nodes[1].norm_inf().max(1.0) < 1e-5);
        let hb = 1e-6 * el.b;
        let dy = (ancf_eval(&el, 0.0, hb).unwrap() - ancf_eval(&el, 0.0, 0.0).unwrap()) / hb;
        assert!((dy - nodes[4]).norm_inf() / nodes[4].norm_inf().max(1.0) < 1e-5);
    }

    #[test]
    fn cox_de_boor_degree0_indicator() {
        let knots = [0.0, 1.0, 2.0, 3.0];
        assert_eq!(cox_de_boor(&knots, 1, 0, 1.5).unwrap(), 1.0);
        assert_eq!(cox_de_boor(&knots, 1, 0, 2.0).unwrap(), 0.0);
        assert_eq!(cox_de_boor(&knots, 0, 0, 0.0).unwrap(), 1.0);
        // closed on the right only at the final knot
        assert_eq!(cox_de_boor(&knots, 2, 0, 3.0).unwrap(), 1.0);
        assert!(cox_de_boor(&knots, 3, 0, 1.0).is_err());
    }

    #[test]
    fn clamped_cubic_first_basis_is_one_minus_u_cubed() {
        let knots = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0];
        for s in 0..=10 {
            let u = s as f64 / 10.0;
            let want = (1.0 - u).powi(3); // hand expansion of the recursion
            assert_close(cox_de_boor(&knots, 0, 3, u).unwrap(), want, 1e-14);
        }
    }

    #[test]
    fn uniform_cubic_values_at_interior_knot() {
        let knots: Vec<f64> = (0..12).map(|i| i as f64).collect();
        // the three nonzero cubic bases at knot 5 take (1/6, 2/3, 1/6)
        assert_close(cox_de_boor(&knots, 2, 3, 5.0).unwrap(), 1.0 / 6.0, 1e-14);
        assert_close(cox_de_boor(&knots, 3, 3, 5.0).unwrap(), 2.0 / 3.0, 1e-14);
        assert_close(cox_de_boor(&knots, 4, 3, 5.0).unwrap(), 1.0 / 6.0, 1e-14);
    }

    #[test]
    fn span_basis_examples() {
        // clamped cubic, left end of the single span
        let clamped = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0];
        let vals = span_basis(&clamped, 3, 3, 0.0).unwrap();
        for (got, want) in vals.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert_close(*got, want, 1e-15);
        }
        // uniform cubic at the left knot
        let uniform: Vec<f64> = (0..12).map(|i| i as f64).collect();
        let vals = span_basis(&uniform, 5, 3, 5.0).unwrap();
        for (got, want) in vals.iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 0.0]) {
            assert_close(*got, want, 1e-14);
        }
        assert!(span_basis(&clamped, 2, 3, 0.0).is_err()); // degenerate span
    }

    #[test]
    fn span_endpoint_values_uniform_and_clamped() {
        let uniform: Vec<f64> = (0..12).map(|i| i as f64).collect();
        let v = span_endpoint_values(&uniform, 5, 3).unwrap();
        for (got, want) in v.at_left.iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
            assert_close(*got, want, 1e-14);
        }
        for (got, want) in v.d_at_left.iter().zip([-0.5, 0.0, 0.5]) {
            assert_close(*got, want, 1e-14);
        }

        let span = 2.5;
        let clamped = [0.0, 0.0, 0.0, 0.0, span, span, span, span];
        let v = span_endpoint_values(&clamped, 3, 3).unwrap();
        for (got, want) in v.at_left.iter().zip([1.0, 0.0, 0.0]) {
            assert_close(*got, want, 1e-15);
        }
        for (got, want) in v.at_right.iter().zip([0.0, 0.0, 1.0]) {
            assert_close(*got, want, 1e-15);
        }
        for (got, want) in v.d_at_left.iter().zip([-3.0 / span, 3.0 / span, 0.0]) {
            assert_close(*got, want, 1e-14);
        }

        let quad: Vec<f64> = (0..8).map(|i| 2.0 * i as f64).collect();
        let v = span_endpoint_values(&quad, 3, 2).unwrap();
        for (got, want) in v.at_left.iter().zip([0.5, 0.5]) {
            assert_close(*got, want, 1e-14);
        }
        for (got, want) in v.d_at_left.iter().zip([-0.5, 0.5]) {
            assert_close(*got, want, 1e-14);
        }
    }
}
