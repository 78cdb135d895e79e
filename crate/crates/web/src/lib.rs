//! wasm bindings for the browser demo. Every export returns a JSON string;
//! failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use spheriq::conics::{classify, report, sample_conic, CylinderConic};
use spheriq::momentum::{
    feasible_intervals, reconstruct_with, MomentumProfile, ReconstructOptions, DEFAULT_GRID,
};
use spheriq::projection::{mesh_from_surface, stereo_s2};
use spheriq::sphere::UnitPoint2;
use spheriq::weingarten::{solve_cubic_weingarten, surface_of, WeingartenReport};
use wasm_bindgen::prelude::*;

type Result<T> = std::result::Result<T, String>;

fn to_json(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Stereographic images of a polyline; points at the pole split it.
fn planar(points: &[UnitPoint2]) -> Vec<Vec<[f64; 2]>> {
    let mut runs = vec![Vec::new()];
    for p in points {
        match stereo_s2(*p) {
            Ok(v) if v[0].hypot(v[1]) < 1e3 => runs.last_mut().unwrap().push(v),
            _ => runs.push(Vec::new()),
        }
    }
    runs.retain(|r| r.len() > 1);
    runs
}

/// Type, focal data and planar (stereographic) drawing of a sphere-cylinder conic.
pub fn conic_json(vertical: bool, p: f64, q: f64, samples: usize) -> Result<Value> {
    let conic = if vertical {
        CylinderConic::vertical(p, q)
    } else {
        CylinderConic::horizontal(p, q)
    }
    .map_err(|e| e.to_string())?;
    let class = classify(&conic).map_err(|e| e.to_string())?;
    let rep = report(&conic).map_err(|e| e.to_string())?;
    let mut curves = Vec::new();
    if !class.is_degenerate() {
        for mut loop_pts in sample_conic(&conic, samples.max(8)).map_err(|e| e.to_string())? {
            loop_pts.push(loop_pts[0]);
            curves.extend(planar(&loop_pts));
        }
    }
    Ok(json!({ "report": rep, "curves": curves }))
}

/// Case, moduli and a projected wireframe of the surface with `k_m = μ k_p³`.
pub fn solve_json(mu: f64, c: f64, n: usize) -> Result<Value> {
    let solved = solve_cubic_weingarten(mu, Some(c), false).map_err(|e| e.to_string())?;
    let surf = surface_of(&solved.case).map_err(|e| e.to_string())?;
    let n = n.clamp(8, 96);
    let mesh = mesh_from_surface(&surf, n, n, true).map_err(|e| e.to_string())?;
    Ok(json!({
        "report": WeingartenReport::from_solve(&solved, None),
        "vertices": mesh.vertices,
        "faces": mesh.faces,
    }))
}

/// Rebuilds the profile curve of `K(z)` on its first feasible interval.
pub fn reconstruct_json(kind: &str, a: f64, b: f64, step: f64) -> Result<Value> {
    let profile = match kind {
        "constant" => MomentumProfile::constant(a),
        "linear" => MomentumProfile::linear(a),
        "quadric" => MomentumProfile::quadric(a, b, 1.0),
        "fake" => MomentumProfile::sphero_cylindrical(a),
        other => return Err(format!("unknown profile kind {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let iv = *feasible_intervals(&profile, DEFAULT_GRID)
        .map_err(|e| e.to_string())?
        .first()
        .ok_or("empty feasible set")?;
    let opts = ReconstructOptions {
        branches: 2,
        ..ReconstructOptions::new(step.clamp(1e-4, 0.1))
    };
    let curve = reconstruct_with(&profile, &iv, &opts).map_err(|e| e.to_string())?;
    Ok(json!({
        "interval": [iv.z_lo, iv.z_hi],
        "length": curve.s.last().copied().unwrap_or(0.0),
        "points": curve.points.iter().map(|p| p.to_array()).collect::<Vec<_>>(),
        "curves": planar(&curve.points),
    }))
}

#[wasm_bindgen]
pub fn conic(vertical: bool, p: f64, q: f64, samples: usize) -> String {
    to_json(conic_json(vertical, p, q, samples))
}

#[wasm_bindgen]
pub fn solve(mu: f64, c: f64, n: usize) -> String {
    to_json(solve_json(mu, c, n))
}

#[wasm_bindgen]
pub fn reconstruct(kind: &str, a: f64, b: f64, step: f64) -> String {
    to_json(reconstruct_json(kind, a, b, step))
}
