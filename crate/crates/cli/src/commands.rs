use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use ancf_bridge_core::bezier::{ancf_to_bezier_tol, bezier_to_ancf, detect_optimal_degrees, general_t};
use ancf_bridge_core::bspline::{bspline_to_ancf, decompose_to_bezier, psi_matrix, SpanDims};
use ancf_bridge_core::{BSplineSurface, BezierSurface, Error, Result, SurfaceFile};

use crate::sampler;
use crate::{SampleFormat, TargetKind};

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DegreeTooLow { .. } => 3,
        _ => 2,
    }
}

/// Wrap a Bezier surface as a clamped single-span B-spline on [0, 1]^2.
fn bezier_as_bspline(surface: &BezierSurface) -> BSplineSurface {
    let clamped = |degree: usize| {
        let mut k = vec![0.0; degree + 1];
        k.extend(vec![1.0; degree + 1]);
        k
    };
    BSplineSurface {
        degree_u: surface.degree_u,
        degree_v: surface.degree_v,
        knots_u: clamped(surface.degree_u),
        knots_v: clamped(surface.degree_v),
        net: surface.net.clone(),
    }
}

pub fn convert(
    input: &Path,
    target: TargetKind,
    degrees: Option<&[usize]>,
    a: Option<f64>,
    b: Option<f64>,
    tol: f64,
    out: &Path,
) -> Result<u8> {
    let file = SurfaceFile::load(input)?;
    let converted = match (&file, target) {
        (SurfaceFile::Bezier { .. }, TargetKind::Ancf) => {
            let surface = file.to_bezier()?;
            let (a, b) = (a.unwrap_or(1.0), b.unwrap_or(1.0));
            let matrix = general_t(surface.degree_u, surface.degree_v, a, b)?;
            println!("conversion matrix condition estimate: {:.3e}", matrix.entries.condition_estimate());
            SurfaceFile::from_ancf(&bezier_to_ancf(&surface, a, b)?)
        }
        (SurfaceFile::BSpline { .. }, TargetKind::Ancf) => {
            let surface = file.to_bspline()?;
            let dims = match (a, b) {
                (Some(a), Some(b)) => SpanDims::Fixed { a, b },
                _ => SpanDims::SpanLength,
            };
            let pairs = bspline_to_ancf(&surface, dims)?;
            let mut worst_cond: f64 = 0.0;
            for (span, element) in &pairs {
                let psi = psi_matrix(
                    &surface.knots_u,
                    &surface.knots_v,
                    span,
                    (surface.degree_u, surface.degree_v),
                    element.a,
                    element.b,
                )?;
                worst_cond = worst_cond.max(psi.entries.condition_estimate());
            }
            println!("conversion matrix condition estimate: {worst_cond:.3e} (worst span)");
            SurfaceFile::from_ancf_list(&surface, &pairs)
        }
        (SurfaceFile::Ancf { .. }, TargetKind::Bezier) => {
            let element = file.to_ancf()?;
            let (m, n) = match degrees {
                Some([m, n]) => (*m, *n),
                Some(_) => return Err(Error::Validation("--degrees takes exactly two values".into())),
                None => (3, 3),
            };
            let matrix = general_t(m, n, element.a, element.b)?;
            println!("conversion matrix condition estimate: {:.3e}", matrix.entries.condition_estimate());
            let surface = ancf_to_bezier_tol(&element, m, n, tol)?;
            if (m, n) != (3, 3) {
                let (_, residual) =
                    ancf_bridge_core::bezier::ancf_to_bezier_residual(&element, m, n)?;
                println!("degree reduction residual: {residual:.3e}");
            }
            SurfaceFile::from_bezier(&surface)
        }
        (SurfaceFile::BSpline { .. }, TargetKind::Bezier) => {
            let surface = file.to_bspline()?;
            let patches = decompose_to_bezier(&surface)?;
            match patches.len() {
                1 => SurfaceFile::from_bezier(&patches[0].1),
                k => {
                    return Err(Error::Validation(format!(
                        "spline has {k} spans; a single Bezier file cannot hold them, use --target ancf"
                    )))
                }
            }
        }
        (SurfaceFile::Bezier { .. }, TargetKind::Bspline) => {
            SurfaceFile::from_bspline(&bezier_as_bspline(&file.to_bezier()?))
        }
        (SurfaceFile::Ancf { .. }, TargetKind::Bspline) => {
            let element = file.to_ancf()?;
            let surface = ancf_to_bezier_tol(&element, 3, 3, tol)?;
            SurfaceFile::from_bspline(&bezier_as_bspline(&surface))
        }
        (SurfaceFile::Bezier { .. }, TargetKind::Bezier)
        | (SurfaceFile::BSpline { .. }, TargetKind::Bspline)
        | (SurfaceFile::Ancf { .. } | SurfaceFile::AncfList { .. }, TargetKind::Ancf) => file.clone(),
        (SurfaceFile::AncfList { .. }, _) => {
            return Err(Error::Validation(
                "an element list only converts back to itself; convert individual elements instead".into(),
            ))
        }
    };
    converted.save(out)?;
    println!("wrote {}", out.display());
    Ok(0)
}

pub fn verify(left: &Path, right: &Path, grid: usize, tol: f64) -> Result<u8> {
    let lf = SurfaceFile::load(left)?;
    let rf = SurfaceFile::load(right)?;
    let lp = sampler::patches(&lf)?;
    let rp = sampler::patches(&rf)?;
    let deviation = sampler::compare(&lp, &rp, grid)?;
    let pass = deviation <= tol;
    println!("patches:       {}", lp.len());
    println!("grid:          {grid}x{grid} per patch");
    println!("tolerance:     {tol:.3e}");
    println!("max deviation: {deviation:.3e}");
    println!("verdict:       {}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { 0 } else { 1 })
}

pub fn reduce(input: &Path, tol: f64, out: &Path) -> Result<u8> {
    let element = SurfaceFile::load(input)?.to_ancf()?;
    let ((m, n), table) = detect_optimal_degrees(&element, tol)?;
    println!("degrees  residual");
    for ((cm, cn), residual) in &table {
        let marker = if (*cm, *cn) == (m, n) { "  <- optimal" } else { "" };
        println!("({cm}, {cn})   {residual:.3e}{marker}");
    }
    let surface = ancf_to_bezier_tol(&element, m, n, tol)?;
    SurfaceFile::from_bezier(&surface).save(out)?;
    println!("optimal degrees: ({m}, {n})");
    println!("wrote {}", out.display());
    Ok(0)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "mesh".into())
    ));
    fs::write(&tmp, text).map_err(|e| Error::Validation(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| Error::Validation(format!("cannot rename onto {}: {e}", path.display())))?;
    Ok(())
}

pub fn sample(input: &Path, grid: usize, format: SampleFormat, out: &Path) -> Result<u8> {
    if grid < 2 {
        return Err(Error::Validation(format!("grid must be at least 2, got {grid}")));
    }
    let patches = sampler::patches(&SurfaceFile::load(input)?)?;
    let mut text = String::new();
    match format {
        SampleFormat::Obj => {
            let mut faces = String::new();
            let mut offset = 1usize; // OBJ indices are 1-based
            for patch in &patches {
                for i in 0..grid {
                    for j in 0..grid {
                        let s = i as f64 / (grid - 1) as f64;
                        let t = j as f64 / (grid - 1) as f64;
                        let p = patch.at(s, t);
                        text.push_str(&format!("v {} {} {}\n", p.x, p.y, p.z));
                    }
                }
                for i in 0..grid - 1 {
                    for j in 0..grid - 1 {
                        let v00 = offset + i * grid + j;
                        let v01 = v00 + 1;
                        let v10 = v00 + grid;
                        let v11 = v10 + 1;
                        faces.push_str(&format!("f {v00} {v10} {v11} {v01}\n"));
                    }
                }
                offset += grid * grid;
            }
            text.push_str(&faces);
        }
        SampleFormat::Csv => {
            for patch in &patches {
                for i in 0..grid {
                    for j in 0..grid {
                        let s = i as f64 / (grid - 1) as f64;
                        let t = j as f64 / (grid - 1) as f64;
                        let u = patch.u_range[0] + s * (patch.u_range[1] - patch.u_range[0]);
                        let v = patch.v_range[0] + t * (patch.v_range[1] - patch.v_range[0]);
                        let p = patch.at(s, t);
                        text.push_str(&format!("{u},{v},{},{},{}\n", p.x, p.y, p.z));
                    }
                }
            }
        }
    }
    write_text(out, &text)?;
    println!("wrote {} ({} patches, {}x{grid} grid each)", out.display(), patches.len(), grid);
    Ok(0)
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort();
    times[times.len() / 2]
}

pub fn bench(input: &Path, reps: usize) -> Result<u8> {
    if reps == 0 {
        return Err(Error::Validation("need at least one repetition".into()));
    }
    let surface = SurfaceFile::load(input)?.to_bspline()?;

    let mut direct_times = Vec::with_capacity(reps);
    let mut direct = Vec::new();
    for _ in 0..reps {
        let started = Instant::now();
        direct = bspline_to_ancf(&surface, SpanDims::SpanLength)?;
        direct_times.push(started.elapsed());
    }

    let mut oracle_times = Vec::with_capacity(reps);
    let mut oracle = Vec::new();
    for _ in 0..reps {
        let started = Instant::now();
        oracle = decompose_to_bezier(&surface)?
            .iter()
            .zip(&direct)
            .map(|((span, patch), (_, el))| Ok((*span, bezier_to_ancf(patch, el.a, el.b)?)))
            .collect::<Result<Vec<_>>>()?;
        oracle_times.push(started.elapsed());
    }

    let mut deviation: f64 = 0.0;
    for ((_, x), (_, y)) in direct.iter().zip(&oracle) {
        for (p, q) in x.nodes.iter().zip(&y.nodes) {
            deviation = deviation.max((*p - *q).norm_inf());
        }
    }

    println!("path                      median wall time");
    println!("direct span conversion    {:?}", median(direct_times));
    println!("decompose then convert    {:?}", median(oracle_times));
    println!("max slot deviation:       {deviation:.3e}");
    if deviation > 1e-9 {
        eprintln!("error: conversion paths disagree");
        return Ok(1);
    }
    Ok(0)
}
