//! Bezier <-> ANCF conversion: the general transformation matrix pair, slot
//! packing for all degree pairs, optimal-degree detection, and degree
//! elevation (the oracle path for the padded layouts).

use crate::error::{Error, Result};
use crate::matrix::{Mat16, SLOTS};
use crate::point::Point3;
use crate::types::{
    AncfSurfaceElement, BezierSurface, ConversionMatrix, MatrixKind, MatrixMeta, Validate,
    MAX_DEGREE,
};

/// Default geometric tolerance for round-trip residual checks.
pub const GEOMETRIC_TOL: f64 = 1e-9;

fn check_degrees(m: usize, n: usize) -> Result<()> {
    for d in [m, n] {
        if d < 1 || d > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(d));
        }
    }
    Ok(())
}

fn check_dims(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(format!("element dimensions must be positive, got ({a}, {b})")));
    }
    Ok(())
}

/// Net indices feeding the four slot positions of one corner group:
/// (value at 0, slope at 0, value at 1, slope at 1).
fn corner_indices(degree: usize) -> [usize; 4] {
    [0, 1, degree, degree - 1]
}

/// Net index pair feeding each of the 16 packed slots.
///
/// For 3x3 this is a pure permutation of the net; for lower degrees some net
/// points are used twice (the duplication layout that keeps the fixed 16x16
/// matrix applicable at every degree pair).
pub fn slot_layout(m: usize, n: usize) -> Result<[(usize, usize); SLOTS]> {
    check_degrees(m, n)?;
    let ucol = corner_indices(m);
    let vcol = corner_indices(n);
    let mut out = [(0usize, 0usize); SLOTS];
    for g in 0..4 {
        for p in 0..4 {
            out[g * 4 + p] = (ucol[p], vcol[g]);
        }
    }
    Ok(out)
}

/// Pack a control net into the 16-slot vector the transformation matrix acts on.
pub fn pack_slots(surface: &BezierSurface) -> Result<[Point3; SLOTS]> {
    let layout = slot_layout(surface.degree_u, surface.degree_v)?;
    let mut out = [Point3::ZERO; SLOTS];
    for (s, &(i, j)) in layout.iter().enumerate() {
        out[s] = surface.net[i][j];
    }
    Ok(out)
}

fn half_block(m: usize, n: usize, a: f64, b: f64, v_sign: f64) -> [[f64; 8]; 8] {
    let mu = m as f64 / a;
    let nv = v_sign * n as f64 / b;
    let mn = v_sign * (m * n) as f64 / (a * b);
    let mut r = [[0.0; 8]; 8];
    r[0][0] = 1.0;
    r[1][0] = -mu;
    r[1][1] = mu;
    r[2][2] = 1.0;
    r[3][2] = mu;
    r[3][3] = -mu;
    r[4][0] = -nv;
    r[4][4] = nv;
    r[5][0] = mn;
    r[5][1] = -mn;
    r[5][4] = -mn;
    r[5][5] = mn;
    r[6][2] = -nv;
    r[6][6] = nv;
    r[7][2] = -mn;
    r[7][3] = mn;
    r[7][6] = mn;
    r[7][7] = -mn;
    r
}

fn half_block_inv(m: usize, n: usize, a: f64, b: f64, v_sign: f64) -> [[f64; 8]; 8] {
    let am = a / m as f64;
    let bn = v_sign * b / n as f64;
    let ab = v_sign * (a * b) / (m * n) as f64;
    let mut r = [[0.0; 8]; 8];
    r[0][0] = 1.0;
    r[1][0] = 1.0;
    r[1][1] = am;
    r[2][2] = 1.0;
    r[3][2] = 1.0;
    r[3][3] = -am;
    r[4][0] = 1.0;
    r[4][4] = bn;
    r[5][0] = 1.0;
    r[5][1] = am;
    r[5][4] = bn;
    r[5][5] = ab;
    r[6][2] = 1.0;
    r[6][6] = bn;
    r[7][2] = 1.0;
    r[7][3] = -am;
    r[7][6] = bn;
    r[7][7] = -ab;
    r
}

fn block_diag(top: [[f64; 8]; 8], bottom: [[f64; 8]; 8]) -> Mat16 {
    let mut m = Mat16::zero();
    for i in 0..8 {
        for j in 0..8 {
            m.rows[i][j] = top[i][j];
            m.rows[8 + i][8 + j] = bottom[i][j];
        }
    }
    m
}

/// The general forward transformation: packed control slots -> nodal vector.
pub fn general_t(m: usize, n: usize, a: f64, b: f64) -> Result<ConversionMatrix> {
    check_degrees(m, n)?;
    check_dims(a, b)?;
    let entries = block_diag(half_block(m, n, a, b, 1.0), half_block(m, n, a, b, -1.0));
    Ok(ConversionMatrix {
        entries,
        kind: MatrixKind::BezierForward,
        meta: MatrixMeta::Bezier { m, n, a, b },
    })
}

/// Closed-form inverse: nodal vector -> packed control slots.
pub fn general_t_inv(m: usize, n: usize, a: f64, b: f64) -> Result<ConversionMatrix> {
    check_degrees(m, n)?;
    check_dims(a, b)?;
    let entries = block_diag(half_block_inv(m, n, a, b, 1.0), half_block_inv(m, n, a, b, -1.0));
    Ok(ConversionMatrix {
        entries,
        kind: MatrixKind::BezierInverse,
        meta: MatrixMeta::Bezier { m, n, a, b },
    })
}

/// Convert a Bezier surface to the ANCF element of dimensions (a, b) that
/// traces the same geometry under the reparameterization (x, y) = (a u, b v).
pub fn bezier_to_ancf(surface: &BezierSurface, a: f64, b: f64) -> Result<AncfSurfaceElement> {
    surface.check()?;
    let t = general_t(surface.degree_u, surface.degree_v, a, b)?;
    let nodes = t.apply(&pack_slots(surface)?);
    Ok(AncfSurfaceElement { a, b, nodes })
}

/// Unpack the 16 slots into an (m+1) x (n+1) net, averaging the duplicated
/// occurrences; the second value is the worst disagreement among duplicates.
fn unpack_slots(slots: &[Point3; SLOTS], m: usize, n: usize) -> Result<(Vec<Vec<Point3>>, f64)> {
    let layout = slot_layout(m, n)?;
    let mut sums = vec![vec![Point3::ZERO; n + 1]; m + 1];
    let mut counts = vec![vec![0usize; n + 1]; m + 1];
    for (s, &(i, j)) in layout.iter().enumerate() {
        sums[i][j] = sums[i][j] + slots[s];
        counts[i][j] += 1;
    }
    let net: Vec<Vec<Point3>> = sums
        .iter()
        .zip(&counts)
        .map(|(row, crow)| {
            row.iter().zip(crow).map(|(p, &c)| *p / c as f64).collect()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (s, &(i, j)) in layout.iter().enumerate() {
        worst = worst.max((slots[s] - net[i][j]).norm_inf());
    }
    Ok((net, worst))
}

/// Inverse conversion candidate with its round-trip residual: the maximum
/// slot deviation after packing the candidate net back through the forward map.
pub fn ancf_to_bezier_residual(
    element: &AncfSurfaceElement,
    m: usize,
    n: usize,
) -> Result<(BezierSurface, f64)> {
    element.check()?;
    let t_inv = general_t_inv(m, n, element.a, element.b)?;
    let slots = t_inv.apply(&element.nodes);
    let (net, _) = unpack_slots(&slots, m, n)?;
    let candidate = BezierSurface { degree_u: m, degree_v: n, net };
    let back = bezier_to_ancf(&candidate, element.a, element.b)?;
    let residual = element
        .nodes
        .iter()
        .zip(&back.nodes)
        .map(|(x, y)| (*x - *y).norm_inf())
        .fold(0.0, f64::max);
    Ok((candidate, residual))
}

/// Convert an ANCF element to a Bezier surface of degrees (m, n).
///
/// For (m, n) below (3, 3) the element must carry geometry the lower degrees
/// can represent; otherwise the worst round-trip residual is reported.
pub fn ancf_to_bezier(element: &AncfSurfaceElement, m: usize, n: usize) -> Result<BezierSurface> {
    ancf_to_bezier_tol(element, m, n, GEOMETRIC_TOL)
}

pub fn ancf_to_bezier_tol(
    element: &AncfSurfaceElement,
    m: usize,
    n: usize,
    tol: f64,
) -> Result<BezierSurface> {
    let (surface, residual) = ancf_to_bezier_residual(element, m, n)?;
    if residual > tol {
        return Err(Error::DegreeTooLow { m, n, residual });
    }
    Ok(surface)
}

/// Candidate degree pairs in ascending total order, ties by lower m first.
fn degree_candidates() -> Vec<(usize, usize)> {
    let mut c: Vec<(usize, usize)> = (1..=MAX_DEGREE)
        .flat_map(|m| (1..=MAX_DEGREE).map(move |n| (m, n)))
        .collect();
    c.sort_by_key(|&(m, n)| (m + n, m));
    c
}

/// Residuals for every candidate degree pair, plus the smallest pair whose
/// round trip stays within `tol`. (3, 3) is exact, so detection always succeeds.
pub fn detect_optimal_degrees(
    element: &AncfSurfaceElement,
    tol: f64,
) -> Result<((usize, usize), Vec<((usize, usize), f64)>)> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    element.check()?;
    let mut report = Vec::new();
    let mut best = None;
    for (m, n) in degree_candidates() {
        let (_, residual) = ancf_to_bezier_residual(element, m, n)?;
        report.push(((m, n), residual));
        if best.is_none() && residual <= tol {
            best = Some((m, n));
        }
    }
    Ok((best.expect("(3,3) round trip is exact"), report))
}

fn elevate_rows(net: &[Vec<Point3>]) -> Vec<Vec<Point3>> {
    // convex-combination elevation along u: degree m -> m + 1
    let m = net.len() - 1;
    let mut out = Vec::with_capacity(m + 2);
    out.push(net[0].clone());
    for i in 1..=m {
        let w = i as f64 / (m + 1) as f64;
        let row: Vec<Point3> = net[i - 1]
            .iter()
            .zip(&net[i])
            .map(|(lo, hi)| *lo * w + *hi * (1.0 - w))
            .collect();
        out.push(row);
    }
    out.push(net[m].clone());
    out
}

fn transpose(net: &[Vec<Point3>]) -> Vec<Vec<Point3>> {
    (0..net[0].len()).map(|j| net.iter().map(|row| row[j]).collect()).collect()
}

/// Raise the degrees by (dm, dn) without changing the geometry.
pub fn degree_elevate(surface: &BezierSurface, dm: usize, dn: usize) -> Result<BezierSurface> {
    surface.check()?;
    if surface.degree_u + dm > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(surface.degree_u + dm));
    }
    if surface.degree_v + dn > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(surface.degree_v + dn));
    }
    let mut net = surface.net.clone();
    for _ in 0..dm {
        net = elevate_rows(&net);
    }
    if dn > 0 {
        net = transpose(&net);
        for _ in 0..dn {
            net = elevate_rows(&net);
        }
        net = transpose(&net);
    }
    Ok(BezierSurface {
        degree_u: surface.degree_u + dm,
        degree_v: surface.degree_v + dn,
        net,
    })
}

/// Residuals of the four nodal dependency relations satisfied by every
/// element whose v-geometry is quadratic (a 3x2 conversion source).
pub fn dependency_residuals_3x2(element: &AncfSurfaceElement) -> [f64; 4] {
    let e = &element.nodes;
    let b = element.b;
    let two_b = 2.0 / b;
    // slot names follow the canonical ordering; see NodalSlot::index
    let r00_00 = e[0];
    let r00_10 = e[1];
    let ra0_00 = e[2];
    let ra0_10 = e[3];
    let r00_01 = e[4];
    let r00_11 = e[5];
    let ra0_01 = e[6];
    let ra0_11 = e[7];
    let r0b_00 = e[8];
    let r0b_10 = e[9];
    let rab_00 = e[10];
    let rab_10 = e[11];
    let r0b_01 = e[12];
    let r0b_11 = e[13];
    let rab_01 = e[14];
    let rab_11 = e[15];
    [
        (r0b_01 - (r0b_00 * two_b - r00_00 * two_b - r00_01)).norm_inf(),
        (rab_01 - (rab_00 * two_b - ra0_00 * two_b - ra0_01)).norm_inf(),
        (r0b_11 - (r0b_10 * two_b - r00_10 * two_b - r00_11)).norm_inf(),
        (rab_11 - (rab_10 * two_b - ra0_10 * two_b - ra0_11)).norm_inf(),
    ]
}
