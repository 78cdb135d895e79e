//! Stereographic projections, the quartics they produce, and mesh export.
//!
//! Projecting a spherical conic from `(0,0,1)` gives a spiric curve
//! `(x² + y²)² − 2a x² − 2b y² + 1 = 0`; projecting a rotational quadric
//! from `(0,0,0,1)` gives a Darboux cyclide
//! `λ r⁴ + L r² + q₀ + q_x x² + q_z z² = 0`.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conics::{CylinderConic, CylinderKind};
use crate::sphere::{format_float, UnitPoint2, UnitPoint3};
use crate::surfaces::{
    principal_curvatures, surface_point, PrincipalCurvatures, QuadricSpec, RotationalSurface,
    AXIS_TOL,
};
use crate::{Error, Result};

/// Points closer than this to the projection pole are rejected.
pub const POLE_TOL: f64 = 1e-9;
/// Mesh vertices with `x₄` above `1 − MESH_POLE_TOL` are culled.
pub const MESH_POLE_TOL: f64 = 1e-6;
/// Faces with smaller area are dropped.
pub const MIN_FACE_AREA: f64 = 1e-14;

pub fn stereo_s2(p: UnitPoint2) -> Result<[f64; 2]> {
    if p.z >= 1.0 - POLE_TOL {
        return Err(Error::AtPole);
    }
    let w = 1.0 - p.z;
    Ok([p.x / w, p.y / w])
}

pub fn inverse_stereo_s2(v: [f64; 2]) -> UnitPoint2 {
    let r2 = v[0] * v[0] + v[1] * v[1];
    let d = 1.0 + r2;
    UnitPoint2::from_array_unchecked([2.0 * v[0] / d, 2.0 * v[1] / d, (r2 - 1.0) / d])
}

/// Image of the tangent vector `v` at `p` under the differential of
/// [`stereo_s2`].
pub fn stereo_s2_differential(p: UnitPoint2, v: [f64; 3]) -> Result<[f64; 2]> {
    if p.z >= 1.0 - POLE_TOL {
        return Err(Error::AtPole);
    }
    let w = 1.0 - p.z;
    Ok([
        v[0] / w + p.x * v[2] / (w * w),
        v[1] / w + p.y * v[2] / (w * w),
    ])
}

pub fn stereo_s3(q: UnitPoint3) -> Result<[f64; 3]> {
    if q.x4 >= 1.0 - POLE_TOL {
        return Err(Error::AtPole);
    }
    let w = 1.0 - q.x4;
    Ok([q.x1 / w, q.x2 / w, q.x3 / w])
}

pub fn inverse_stereo_s3(v: [f64; 3]) -> UnitPoint3 {
    let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    let d = 1.0 + r2;
    UnitPoint3::from_array_unchecked([
        2.0 * v[0] / d,
        2.0 * v[1] / d,
        2.0 * v[2] / d,
        (r2 - 1.0) / d,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiricCoeffs {
    pub a: f64,
    pub b: f64,
}

/// `a = (C² + C²D² − 2D²)/(C²(1 − D²))`, `b = (1 + D²)/(1 − D²)`.
pub fn spiric_coeffs(h: &CylinderConic) -> Result<SpiricCoeffs> {
    if h.kind != CylinderKind::Horizontal {
        return Err(Error::BadParameter(
            "spiric coefficients need a horizontal cylinder".into(),
        ));
    }
    let (c2, d2) = (h.p * h.p, h.q * h.q);
    let w = 1.0 - d2;
    if w.abs() < 1e-12 {
        return Err(Error::DegenerateProjection("D = 1".into()));
    }
    Ok(SpiricCoeffs {
        a: (c2 + c2 * d2 - 2.0 * d2) / (c2 * w),
        b: (1.0 + d2) / w,
    })
}

/// Quartic residual divided by `(1 + r²)²`.
pub fn spiric_residual(k: &SpiricCoeffs, v: [f64; 2]) -> f64 {
    let (x2, y2) = (v[0] * v[0], v[1] * v[1]);
    let r2 = x2 + y2;
    (r2 * r2 - 2.0 * k.a * x2 - 2.0 * k.b * y2 + 1.0) / ((1.0 + r2) * (1.0 + r2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclideCoeffs {
    pub lam: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub q0: f64,
    pub qx2: f64,
    pub qz2: f64,
}

/// `λ = C²(D² − 1)`, `L = 2C²(D² + 1)`, `Q = C²(D² − 1) − 4D²x² − 4C²z²`.
pub fn cyclide_coeffs(spec: &QuadricSpec) -> Result<CyclideCoeffs> {
    let (Some(c2), Some(d2)) = (spec.c2, spec.d2) else {
        return Err(Error::MissingParams(
            "quadric has no horizontal (C, D) form".into(),
        ));
    };
    Ok(CyclideCoeffs {
        lam: c2 * (d2 - 1.0),
        l: 2.0 * c2 * (d2 + 1.0),
        q0: c2 * (d2 - 1.0),
        qx2: -4.0 * d2,
        qz2: -4.0 * c2,
    })
}

/// Quartic residual divided by `(1 + r²)²`.
pub fn cyclide_residual(k: &CyclideCoeffs, v: [f64; 3]) -> f64 {
    let [x, y, z] = v;
    let r2 = x * x + y * y + z * z;
    (k.lam * r2 * r2 + k.l * r2 + k.q0 + k.qx2 * x * x + k.qz2 * z * z) / ((1.0 + r2) * (1.0 + r2))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    /// Stereographic images, or `(x₁, x₂, x₃)` for unprojected meshes.
    pub vertices: Vec<[f64; 3]>,
    /// The S³ point behind each vertex.
    pub sources: Vec<UnitPoint3>,
    pub faces: Vec<[usize; 3]>,
    pub attributes: Option<Vec<PrincipalCurvatures>>,
    /// Vertices dropped near the projection pole.
    pub culled: usize,
}

fn area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let u: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let v: Vec<f64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
    let dot = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| x * y).sum::<f64>();
    let g = dot(&u, &u) * dot(&v, &v) - dot(&u, &v).powi(2);
    0.5 * g.max(0.0).sqrt()
}

impl Mesh {
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if self.faces.iter().flatten().any(|&i| i >= n) {
            return Err(Error::InvalidCurve("face index out of range".into()));
        }
        if self.vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCurve("non-finite vertex".into()));
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = HashSet::new();
        for f in &self.faces {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }
}

/// Triangulated `(s, t)` grid. Rows on the rotation axis collapse to one
/// vertex; closed profiles and the `t` circle are identified at the seam.
pub fn mesh_from_surface(
    surf: &RotationalSurface,
    ns: usize,
    nt: usize,
    project: bool,
) -> Result<Mesh> {
    if ns < 4 || nt < 4 {
        return Err(Error::BadParameter("mesh needs ns, nt >= 4".into()));
    }
    let (lo, hi) = surf.profile.domain();
    let closed = surf.profile.is_closed();
    let rows = if closed { ns } else { ns + 1 };
    let analytic = surf.profile.is_analytic();

    let mut sources = Vec::new();
    let mut attrs = Vec::new();
    let mut row_index: Vec<Vec<usize>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let s = lo + (hi - lo) * i as f64 / ns as f64;
        let on_axis = surf.profile.point(s)?.z.abs() < AXIS_TOL;
        let pc = if analytic {
            principal_curvatures(surf, s).unwrap_or(PrincipalCurvatures {
                km: f64::NAN,
                kp: f64::NAN,
            })
        } else {
            PrincipalCurvatures {
                km: f64::NAN,
                kp: f64::NAN,
            }
        };
        let count = if on_axis { 1 } else { nt };
        let mut row = Vec::with_capacity(nt);
        for j in 0..count {
            let t = -PI + 2.0 * PI * j as f64 / nt as f64;
            row.push(sources.len());
            sources.push(surface_point(surf, s, t)?);
            attrs.push(pc);
        }
        while row.len() < nt {
            row.push(row[0]);
        }
        row_index.push(row);
    }

    let mut keep = vec![true; sources.len()];
    let mut culled = 0;
    if project {
        for (k, q) in sources.iter().enumerate() {
            if q.x4 > 1.0 - MESH_POLE_TOL {
                keep[k] = false;
                culled += 1;
            }
        }
    }
    let mut remap = vec![usize::MAX; sources.len()];
    let mut vertices = Vec::new();
    let mut kept_sources = Vec::new();
    let mut kept_attrs = Vec::new();
    for (k, q) in sources.iter().enumerate() {
        if !keep[k] {
            continue;
        }
        remap[k] = vertices.len();
        vertices.push(if project {
            stereo_s3(*q)?
        } else {
            [q.x1, q.x2, q.x3]
        });
        kept_sources.push(*q);
        kept_attrs.push(attrs[k]);
    }

    let mut faces = Vec::new();
    let bands = if closed { rows } else { rows - 1 };
    for i in 0..bands {
        let (r0, r1) = (&row_index[i], &row_index[(i + 1) % rows]);
        for j in 0..nt {
            let jn = (j + 1) % nt;
            let quad = [r0[j], r0[jn], r1[jn], r1[j]];
            for tri in [[quad[0], quad[1], quad[2]], [quad[0], quad[2], quad[3]]] {
                if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                    continue;
                }
                if tri.iter().any(|&k| !keep[k]) {
                    continue;
                }
                let corners = tri.map(|k| kept_sources[remap[k]].to_array());
                let projected = tri.map(|k| vertices[remap[k]]);
                let a = if project {
                    area(&projected[0], &projected[1], &projected[2])
                } else {
                    area(&corners[0], &corners[1], &corners[2])
                };
                if a < MIN_FACE_AREA {
                    continue;
                }
                faces.push(tri.map(|k| remap[k]));
            }
        }
    }

    let mesh = Mesh {
        vertices,
        sources: kept_sources,
        faces,
        attributes: analytic.then_some(kept_attrs),
        culled,
    };
    mesh.validate()?;
    Ok(mesh)
}

/// ASCII OBJ with `v` and 1-based `f` records.
pub fn obj_string(m: &Mesh) -> String {
    let mut out = String::new();
    for v in &m.vertices {
        let _ = writeln!(
            out,
            "v {} {} {}",
            format_float(v[0]),
            format_float(v[1]),
            format_float(v[2])
        );
    }
    for f in &m.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    out
}

pub fn write_obj(m: &Mesh, path: &Path) -> Result<()> {
    fs::write(path, obj_string(m))?;
    Ok(())
}

/// Reads the `v`/`f` records of an OBJ file produced by [`obj_string`].
pub fn parse_obj(text: &str) -> Result<(Vec<[f64; 3]>, Vec<[usize; 3]>)> {
    let bad = |line: &str| Error::InvalidCurve(format!("bad OBJ record: {line}"));
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let v: Vec<f64> = parts
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                let v: [f64; 3] = v.try_into().map_err(|_| bad(line))?;
                vertices.push(v);
            }
            Some("f") => {
                let f: Vec<usize> = parts
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                let f: [usize; 3] = f.try_into().map_err(|_| bad(line))?;
                if f.contains(&0) {
                    return Err(bad(line));
                }
                faces.push(f.map(|i| i - 1));
            }
            _ => {}
        }
    }
    Ok((vertices, faces))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use super::*;
    use crate::conics::{param_horizontal, Branch, MomentumCoeffs};
    use crate::surfaces::{
        implicit_residual, make_degenerate, make_fake_paraboloid, make_quadric, quadric_surface,
        DegenerateKind,
    };

    #[test]
    fn stereographic_examples() {
        assert_eq!(
            stereo_s2(UnitPoint2::new(0.0, 0.0, -1.0).unwrap()).unwrap(),
            [0.0, 0.0]
        );
        assert_eq!(
            stereo_s2(UnitPoint2::new(1.0, 0.0, 0.0).unwrap()).unwrap(),
            [1.0, 0.0]
        );
        assert!(matches!(stereo_s2(UnitPoint2::NORTH), Err(Error::AtPole)));
        let south = UnitPoint3::new(0.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(stereo_s3(south).unwrap(), [0.0, 0.0, 0.0]);
        assert_eq!(
            stereo_s3(UnitPoint3::new(1.0, 0.0, 0.0, 0.0).unwrap()).unwrap(),
            [1.0, 0.0, 0.0]
        );
        let q = UnitPoint3::new(0.6, 0.0, 0.8, 0.0).unwrap();
        let v = stereo_s3(q).unwrap();
        assert!(((v[0] * v[0] + v[2] * v[2]).sqrt() - 1.0).abs() < 1e-15);
        assert!(matches!(
            stereo_s3(UnitPoint3::new(0.0, 0.0, 0.0, 1.0).unwrap()),
            Err(Error::AtPole)
        ));
        let back =
            inverse_stereo_s3(stereo_s3(UnitPoint3::new(0.5, 0.5, 0.5, 0.5).unwrap()).unwrap());
        assert!((back.x4 - 0.5).abs() < 1e-15 && (back.x1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn spiric_examples() {
        let h = CylinderConic::horizontal(2.0, 0.5).unwrap();
        let k = spiric_coeffs(&h).unwrap();
        assert!((k.a - 1.5).abs() < 1e-15 && (k.b - 5.0 / 3.0).abs() < 1e-15);
        for h in [h, CylinderConic::horizontal(0.8, 1.3).unwrap()] {
            let k = spiric_coeffs(&h).unwrap();
            assert!(k.a.is_finite() && k.b.is_finite());
            for i in 0..500 {
                let t = 2.0 * PI * i as f64 / 500.0;
                for br in [Branch::Plus, Branch::Minus] {
                    let Ok(p) = param_horizontal(&h, t, br) else {
                        continue;
                    };
                    let Ok(v) = stereo_s2(p) else { continue };
                    assert!(spiric_residual(&k, v).abs() < 1e-9);
                }
            }
        }
        assert!(matches!(
            spiric_coeffs(&CylinderConic::horizontal(2.0, 1.0).unwrap()),
            Err(Error::DegenerateProjection(_))
        ));
    }

    #[test]
    fn cyclide_examples() {
        let spec = crate::surfaces::QuadricSpec::from_cylinder(
            &CylinderConic::horizontal(2.0, 0.5).unwrap(),
        )
        .unwrap();
        let k = cyclide_coeffs(&spec).unwrap();
        assert_eq!(
            (k.lam, k.l, k.q0, k.qx2, k.qz2),
            (-3.0, 10.0, -3.0, -1.0, -16.0)
        );
        let surf = quadric_surface(&spec, 1.0).unwrap();
        let mesh = mesh_from_surface(&surf, 40, 40, true).unwrap();
        assert!(!mesh.vertices.is_empty());
        for v in &mesh.vertices {
            assert!(cyclide_residual(&k, *v).abs() < 1e-8);
        }
        let twin = make_quadric(MomentumCoeffs::new(0.9, 2.7))
            .unwrap()
            .swapped()
            .unwrap();
        assert!(matches!(
            cyclide_coeffs(&twin),
            Err(Error::MissingParams(_))
        ));
    }

    #[test]
    fn conformal_on_samples() {
        let p = UnitPoint2::normalized([0.3, -0.5, 0.4]).unwrap();
        let n = p.to_array();
        let u = crate::sphere::cross3(n, [0.0, 0.0, 1.0]);
        let v = crate::sphere::cross3(n, [1.0, 0.2, 0.0]);
        let angle = |a: &[f64], b: &[f64]| {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            (dot / (na * nb)).acos()
        };
        let du = stereo_s2_differential(p, u).unwrap();
        let dv = stereo_s2_differential(p, v).unwrap();
        assert!((angle(&u, &v) - angle(&du, &dv)).abs() < 1e-6);
    }

    #[test]
    fn meshes() {
        let torus = make_degenerate(DegenerateKind::StandardTorus, FRAC_PI_4).unwrap();
        let m = mesh_from_surface(&torus, 24, 32, true).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.faces.len(), 2 * 24 * 32);
        let attrs = m.attributes.as_ref().unwrap();
        assert!((attrs[0].km - 1.0).abs() < 1e-12 && (attrs[0].kp + 1.0).abs() < 1e-12);

        let umb = make_degenerate(DegenerateKind::Umbilical, 1.0).unwrap();
        let m = mesh_from_surface(&umb, 16, 16, false).unwrap();
        for v in &m.vertices {
            assert!((v[1] - 1f64.tanh()).abs() < 1e-10);
        }
        assert_eq!(m.euler_characteristic(), 2);

        let fake = make_fake_paraboloid(1.0).unwrap();
        let m = mesh_from_surface(&fake, 20, 20, false).unwrap();
        for q in &m.sources {
            assert!((q.x3 * q.x3 + q.x4 * q.x4 - 2.0 * q.x2).abs() < 1e-8);
            assert!(implicit_residual(&fake, *q).unwrap().abs() < 1e-8);
        }
        assert!(mesh_from_surface(&fake, 3, 20, false).is_err());
    }

    #[test]
    fn pole_vertices_are_culled() {
        let eq = make_degenerate(DegenerateKind::Equatorial, 0.0).unwrap();
        // The row s = π/2 at t = π/2 is the pole (0, 0, 0, 1).
        let m = mesh_from_surface(&eq, 8, 8, true).unwrap();
        assert_eq!(m.culled, 1);
        m.validate().unwrap();
        assert!(m.vertices.iter().flatten().all(|v| v.is_finite()));
    }

    #[test]
    fn obj_output() {
        assert_eq!(obj_string(&Mesh::default()), "");
        let m = Mesh {
            vertices: vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.1 + 0.2, 1.0 / 3.0, -2.5e-7],
            ],
            sources: Vec::new(),
            faces: vec![[0, 1, 2]],
            attributes: None,
            culled: 0,
        };
        let text = obj_string(&m);
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 1);
        assert!(text.contains("f 1 2 3"));
        let (v, f) = parse_obj(&text).unwrap();
        assert_eq!(v, m.vertices);
        assert_eq!(f, m.faces);
    }
}
