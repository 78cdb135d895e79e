//! Weingarten relations and the classification of rotational surfaces
//! with `k_m = μ k_p³`.
//!
//! Integrating `K′ = μK³/z³` gives `K² = z²/(μ + c z²)`. Depending on
//! `(μ, c)` the surface is a great or small sphere, a standard torus, a
//! spherical moon, or one of the rotational quadrics.

use serde::{Deserialize, Serialize};

use crate::conics::{
    momentum_coeffs_ab, momentum_coeffs_cd, region_of, ConicClass, CylinderConic, MomentumCoeffs,
};
use crate::momentum::MomentumProfile;
use crate::surfaces::{
    implicit_residual_common, make_degenerate, make_quadric, principal_curvatures, quadric_surface,
    surface_point, DegenerateKind, Family, PrincipalCurvatures, QuadricSpec, RotationalSurface,
};
use crate::{Error, Result};

/// `K′(z) − μ (K(z)/z)³`.
pub fn cubic_residual(p: &MomentumProfile, mu: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Err(Error::ZeroLatitude);
    }
    if !p.in_domain(z) {
        return Err(Error::OutOfDomain(z));
    }
    let kp = p.k(z) / z;
    Ok(p.dk(z) - mu * kp * kp * kp)
}

/// `(k_m − 2k_p³ − 3k_p)² − 4(1 + k_p²)³/(1 + a²)`.
pub fn sextic_relation(a: f64, pc: PrincipalCurvatures) -> f64 {
    let PrincipalCurvatures { km, kp } = pc;
    let lhs = km - 2.0 * kp * kp * kp - 3.0 * kp;
    lhs * lhs - 4.0 / (1.0 + a * a) * (1.0 + kp * kp).powi(3)
}

/// [`sextic_relation`] at height `z` of the fake paraboloid `x₃² + x₄² = 2a x₂`.
pub fn sextic_residual(a: f64, z: f64) -> Result<f64> {
    let p = MomentumProfile::sphero_cylindrical(a)?;
    if z == 0.0 {
        return Err(Error::ZeroLatitude);
    }
    if !p.in_domain(z) {
        return Err(Error::OutOfDomain(z));
    }
    Ok(sextic_relation(
        a,
        PrincipalCurvatures {
            km: p.dk(z),
            kp: p.k(z) / z,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuFit {
    pub mu: f64,
    pub residual_max: f64,
    pub used: usize,
}

/// Least-squares `μ` in `k_m = μ k_p³` over samples with `|k_p| > 1e−6`.
pub fn fit_mu(samples: &[PrincipalCurvatures]) -> Result<MuFit> {
    let used: Vec<_> = samples.iter().filter(|p| p.kp.abs() > 1e-6).collect();
    if used.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: used.len(),
        });
    }
    let cubes: Vec<f64> = used.iter().map(|p| p.kp.powi(3)).collect();
    let (lo, hi) = cubes
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
            (l.min(v), h.max(v))
        });
    let (klo, khi) = used
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| {
            (l.min(p.km), h.max(p.km))
        });
    if hi - lo <= 1e-12 * hi.abs().max(lo.abs()) && khi - klo > 1e-6 {
        return Err(Error::IllConditioned);
    }
    let num: f64 = used.iter().zip(&cubes).map(|(p, k3)| p.km * k3).sum();
    let den: f64 = cubes.iter().map(|k3| k3 * k3).sum();
    let mu = num / den;
    let residual_max = used
        .iter()
        .zip(&cubes)
        .map(|(p, k3)| (p.km - mu * k3).abs())
        .fold(0.0, f64::max);
    Ok(MuFit {
        mu,
        residual_max,
        used: used.len(),
    })
}

/// Roots of `X² − SX + P = 0` with `S = (μ+c+1)/c`, `P = 1/c`, as
/// `(A², B²)` with `A² ≥ B²`, together with `(S, P)`.
pub fn ab_from_moduli(mc: MomentumCoeffs) -> Result<((f64, f64), (f64, f64))> {
    let MomentumCoeffs { mu, c } = mc;
    let out = || Error::OutOfRegion { mu, c };
    if c == 0.0 {
        return Err(out());
    }
    let s = (mu + c + 1.0) / c;
    let p = 1.0 / c;
    let disc = mc.discriminant();
    if !(disc >= 0.0) {
        return Err(out());
    }
    // S² − 4P = disc / c².
    let root = disc.sqrt() / c.abs();
    let big = 0.5 * (s + s.signum() * root);
    let small = p / big;
    let (a2, b2) = if big >= small {
        (big, small)
    } else {
        (small, big)
    };
    if !(b2 > 0.0) {
        return Err(out());
    }
    Ok(((a2, b2), (s, p)))
}

/// `D²` from the positive root of `cX² + (μ−c+1)X − μ` (`+√` for `c > 0`,
/// `−√` for `c < 0`) and `C² = D²/(1 − c(1 − D²)²)`, returned as `(C², D²)`.
pub fn cd_from_moduli(mc: MomentumCoeffs) -> Result<(f64, f64)> {
    let MomentumCoeffs { mu, c } = mc;
    let out = || Error::OutOfRegion { mu, c };
    let disc = mc.discriminant();
    if c == 0.0 || !(disc >= 0.0) {
        return Err(out());
    }
    let b = mu - c + 1.0;
    let sq = disc.sqrt();
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    let (plus, minus) = if q == 0.0 {
        (0.0, 0.0)
    } else if b >= 0.0 {
        (-mu / q, q / c)
    } else {
        (q / c, -mu / q)
    };
    let d2 = if c > 0.0 { plus } else { minus };
    let w = 1.0 - d2;
    let c2 = d2 / (1.0 - c * w * w);
    if !(d2 > 0.0 && c2 > 0.0) {
        return Err(out());
    }
    Ok((c2, d2))
}

/// The cylinder conic generating the quadric with moduli `(μ, c)`: horizontal
/// for Types I and III, vertical `B < 1 < A` for Type II.
pub fn cylinder_from_moduli(mc: MomentumCoeffs) -> Result<CylinderConic> {
    let MomentumCoeffs { mu, c } = mc;
    let out = || Error::OutOfRegion { mu, c };
    let class = region_of(&mc)?;
    match class {
        ConicClass::TypeI | ConicClass::ParabolaI => {
            let (c2, d2) = cd_from_moduli(mc)?;
            if !(d2 < 1.0 && c2 > 1.0) {
                return Err(out());
            }
            CylinderConic::horizontal(c2.sqrt(), d2.sqrt())
        }
        ConicClass::TypeII | ConicClass::ParabolaII => {
            let ((a2, b2), _) = ab_from_moduli(mc)?;
            let (c2, d2) = cd_from_moduli(mc)?;
            if !(b2 < 1.0 && a2 > 1.0 && d2 < c2 && c2 < 1.0) {
                return Err(out());
            }
            CylinderConic::vertical(a2.sqrt(), b2.sqrt())
        }
        ConicClass::TypeIII => {
            let (c2, d2) = cd_from_moduli(mc)?;
            if !(c2 < 1.0 && d2 > 1.0) {
                return Err(out());
            }
            CylinderConic::horizontal(c2.sqrt(), d2.sqrt())
        }
        _ => Err(Error::BadParameter(format!(
            "(mu, c) = ({mu}, {c}) describes a degenerate circle, not a quadric"
        ))),
    }
}

/// `(μ, c)` back from `(A², B²)` or `(C², D²)`.
pub fn moduli_from_ab(a2: f64, b2: f64) -> MomentumCoeffs {
    momentum_coeffs_ab(a2, b2)
}

pub fn moduli_from_cd(c2: f64, d2: f64) -> MomentumCoeffs {
    momentum_coeffs_cd(c2, d2)
}

/// `dλ/dφ = tan φ / √(cos²φ (μ + c sin²φ) − sin²φ)` (positive branch).
pub fn dlambda_dphi_moduli(mc: MomentumCoeffs, phi: f64) -> f64 {
    let (s, co) = phi.sin_cos();
    phi.tan() / (co * co * (mc.mu + mc.c * s * s) - s * s).sqrt()
}

/// `dλ/dφ = C(1−D²) tan φ / (√(D² − sin²φ) √(C² sin²φ + D² cos²φ − C²D²))`.
pub fn dlambda_dphi_cd(c2: f64, d2: f64, phi: f64) -> f64 {
    let (s, co) = phi.sin_cos();
    let (s2, c2phi) = (s * s, co * co);
    c2.sqrt() * (1.0 - d2) * phi.tan()
        / ((d2 - s2).sqrt() * (c2 * s2 + d2 * c2phi - c2 * d2).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CubicCase {
    EquatorialSphere,
    UmbilicalSphere { delta: f64 },
    StandardTorus { phi0: f64 },
    SphericalMoon { theta: f64 },
    NonDegenerateQuadric(QuadricSpec),
}

impl CubicCase {
    pub fn name(&self) -> &'static str {
        match self {
            CubicCase::EquatorialSphere => "EquatorialSphere",
            CubicCase::UmbilicalSphere { .. } => "UmbilicalSphere",
            CubicCase::StandardTorus { .. } => "StandardTorus",
            CubicCase::SphericalMoon { .. } => "SphericalMoon",
            CubicCase::NonDegenerateQuadric(q) => match q.family {
                Family::QuadricI => "QuadricI",
                Family::QuadricIIa => "QuadricIIa",
                Family::QuadricIIb => "QuadricIIb",
                _ => "QuadricIII",
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicSolveResult {
    pub case: CubicCase,
    /// NaN (indeterminate) when classifying a totally geodesic sphere.
    pub mu: f64,
    pub c: Option<f64>,
    /// `(S, P)` of the vertical form, when it exists.
    pub sp: Option<(f64, f64)>,
}

/// Solves `k_m = μ k_p³` for a rotational surface. `z_constant` marks a
/// profile along a parallel; `c = None` marks `K ≡ 0`.
pub fn solve_cubic_weingarten(
    mu: f64,
    c: Option<f64>,
    z_constant: bool,
) -> Result<CubicSolveResult> {
    let out = || Error::OutOfRegion {
        mu,
        c: c.unwrap_or(f64::NAN),
    };
    let result = |case, sp| CubicSolveResult { case, mu, c, sp };
    if z_constant {
        if !(mu < 0.0) {
            return Err(out());
        }
        let phi0 = (-mu).powf(0.25).atan();
        return Ok(result(CubicCase::StandardTorus { phi0 }, None));
    }
    let Some(c) = c else {
        return Ok(result(CubicCase::EquatorialSphere, None));
    };
    if mu == 0.0 {
        // K² = 1/c = cos²θ.
        if !(c > 1.0) {
            return Err(out());
        }
        let theta = (1.0 / c.sqrt()).acos();
        return Ok(result(CubicCase::SphericalMoon { theta }, None));
    }
    if c == 0.0 {
        if !(mu > 0.0) {
            return Err(out());
        }
        let delta = (1.0 / mu.sqrt()).asinh();
        return Ok(result(CubicCase::UmbilicalSphere { delta }, None));
    }
    let mc = MomentumCoeffs::new(mu, c);
    let spec = make_quadric(mc)?;
    let sp = if spec.a2.is_some() {
        Some(((mu + c + 1.0) / c, 1.0 / c))
    } else {
        None
    };
    Ok(result(CubicCase::NonDegenerateQuadric(spec), sp))
}

/// The surface of a solved case (IIa piece for two-piece quadrics).
pub fn surface_of(case: &CubicCase) -> Result<RotationalSurface> {
    match *case {
        CubicCase::EquatorialSphere => make_degenerate(DegenerateKind::Equatorial, 0.0),
        CubicCase::UmbilicalSphere { delta } => make_degenerate(DegenerateKind::Umbilical, delta),
        CubicCase::StandardTorus { phi0 } => make_degenerate(DegenerateKind::StandardTorus, phi0),
        CubicCase::SphericalMoon { theta } => make_degenerate(DegenerateKind::SphericalMoon, theta),
        CubicCase::NonDegenerateQuadric(spec) => quadric_surface(&spec, 1.0),
    }
}

/// Threshold on `max |k_m − μ̂ k_p³|` for declaring a surface cubic.
pub const CUBIC_TOL: f64 = 1e-6;

/// Samples used by [`classify_theorem_main`].
pub const CLASSIFY_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    Cubic {
        result: CubicSolveResult,
        residual_max: f64,
        /// Largest common-form residual of the surface's points against
        /// the solved family.
        implicit_max: f64,
    },
    NotCubic {
        mu_fit: f64,
        residual_max: f64,
    },
}

/// Fits `μ`, recovers `c` from `K² = z²/(μ + c z²)` and solves.
pub fn classify_theorem_main(surf: &RotationalSurface) -> Result<Classification> {
    let (lo, hi) = surf.profile.domain();
    let mut curv = Vec::new();
    let mut heights = Vec::new();
    let mut points = Vec::new();
    for i in 0..CLASSIFY_SAMPLES {
        let s = lo + (hi - lo) * (i as f64 + 0.5) / CLASSIFY_SAMPLES as f64;
        match principal_curvatures(surf, s) {
            Ok(pc) => {
                let z = surf.profile.point(s)?.z;
                curv.push(pc);
                heights.push(z);
                points.push(surface_point(surf, s, 0.7 * i as f64)?);
            }
            Err(Error::ZeroLatitude) => continue,
            Err(e) => return Err(e),
        }
    }
    if curv.len() < 8 {
        return Err(Error::TooFewSamples {
            needed: 8,
            got: curv.len(),
        });
    }

    let z_constant = heights.iter().all(|z| (z - heights[0]).abs() < 1e-12);
    let flat = curv
        .iter()
        .all(|p| p.kp.abs() <= 1e-6 && p.km.abs() <= CUBIC_TOL);
    let (mu, residual_max) = if flat {
        (
            f64::NAN,
            curv.iter().map(|p| p.km.abs()).fold(0.0, f64::max),
        )
    } else {
        let fit = fit_mu(&curv)?;
        (fit.mu, fit.residual_max)
    };
    if residual_max >= CUBIC_TOL {
        return Ok(Classification::NotCubic {
            mu_fit: mu,
            residual_max,
        });
    }

    let snap = |v: f64| if v.abs() < 1e-9 { 0.0 } else { v };
    let result = if flat {
        let mut r = solve_cubic_weingarten(0.0, None, false)?;
        r.mu = f64::NAN;
        r
    } else if z_constant {
        solve_cubic_weingarten(mu, None, true)?
    } else {
        let mu = snap(mu);
        // c minimizing Σ (z²/K² − μ − c z²)² with K = z k_p.
        let (mut num, mut den) = (0.0, 0.0);
        for (p, z) in curv.iter().zip(&heights) {
            if p.kp.abs() <= 1e-6 || z.abs() < 1e-6 {
                continue;
            }
            let z2 = z * z;
            num += z2 * (1.0 / (p.kp * p.kp) - mu);
            den += z2 * z2;
        }
        solve_cubic_weingarten(mu, Some(snap(num / den)), false)?
    };

    let solved = surface_of(&result.case)?;
    let implicit_max = points
        .iter()
        .map(|q| implicit_residual_common(&solved, *q).map(f64::abs))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Classification::Cubic {
        result,
        residual_max,
        implicit_max,
    })
}

/// Flat JSON report of a solve or classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeingartenReport {
    pub case: String,
    pub mu: Option<f64>,
    pub c: Option<f64>,
    #[serde(rename = "A2")]
    pub a2: Option<f64>,
    #[serde(rename = "B2")]
    pub b2: Option<f64>,
    #[serde(rename = "C2")]
    pub c2: Option<f64>,
    #[serde(rename = "D2")]
    pub d2: Option<f64>,
    pub residual_max: Option<f64>,
}

impl WeingartenReport {
    pub fn from_solve(r: &CubicSolveResult, residual_max: Option<f64>) -> Self {
        let spec = match r.case {
            CubicCase::NonDegenerateQuadric(q) => Some(q),
            _ => None,
        };
        Self {
            case: r.case.name().to_string(),
            mu: Some(r.mu).filter(|m| m.is_finite()),
            c: r.c,
            a2: spec.and_then(|q| q.a2),
            b2: spec.and_then(|q| q.b2),
            c2: spec.and_then(|q| q.c2),
            d2: spec.and_then(|q| q.d2),
            residual_max,
        }
    }

    pub fn from_classification(c: &Classification) -> Self {
        match c {
            Classification::Cubic {
                result,
                residual_max,
                ..
            } => Self::from_solve(result, Some(*residual_max)),
            Classification::NotCubic {
                mu_fit,
                residual_max,
            } => Self {
                case: "NotCubic".into(),
                mu: Some(*mu_fit).filter(|m| m.is_finite()),
                c: None,
                a2: None,
                b2: None,
                c2: None,
                d2: None,
                residual_max: Some(*residual_max),
            },
        }
    }
}

/// `μ = −tan⁴φ₀` for the standard torus over the parallel at latitude `φ₀`.
pub fn torus_mu(phi0: f64) -> f64 {
    -phi0.tan().powi(4)
}

/// `μ = 1/sinh²δ` for the umbilical sphere `x₂ = tanh δ`.
pub fn umbilical_mu(delta: f64) -> f64 {
    1.0 / delta.sinh().powi(2)
}
