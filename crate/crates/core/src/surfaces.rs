//! Rotational surfaces in S³.
//!
//! A curve `ξ = (x, y, z)` on S² generates the surface
//! `X(s, t) = (x(s), y(s), z(s) cos t, z(s) sin t)`, invariant under the
//! rotations of the `x₃x₄`-plane. With `s` the arc length of `ξ`,
//!
//! ```text
//! I  = ds² + z² dt²,        II = κ ds² + z K dt²,
//! k_m = κ = K′(z),          k_p = K / z,
//! ```
//!
//! where `K = ẋy − xẏ` is the spherical angular momentum of the profile.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::conics::{
    classify, conic_loops, horizontal_to_vertical, momentum_coeffs, vertical_to_horizontal,
    ConicClass, ConicLoop, CylinderConic, CylinderKind, LoopAxis, MomentumCoeffs,
};
use crate::fd;
use crate::momentum::MomentumProfile;
use crate::quadrature::ArcTable;
use crate::sphere::{cross3, curves, det3, dot3, slerp, SampledCurve, UnitPoint2, UnitPoint3};
use crate::{Error, Result};

/// Below this `|z|` a point is treated as lying on the rotation axis.
pub const AXIS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Family {
    Equatorial,
    Umbilical { delta: f64 },
    StandardTorus { phi0: f64 },
    SphericalMoon { theta: f64 },
    QuadricI,
    QuadricIIa,
    QuadricIIb,
    QuadricIII,
    FakeParaboloid { a: f64 },
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalCurvatures {
    /// Along the meridians (`dt = 0`).
    pub km: f64,
    /// Along the parallels (`ds = 0`).
    pub kp: f64,
}

/// Coefficients of the first and second fundamental forms at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

type Jet = ([f64; 3], [f64; 3], [f64; 3]);

/// A periodic closed-form curve on S² in a non-arc-length parameter `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Generator {
    /// `u = ψ ∈ [−π, π)`.
    Conic(ConicLoop),
    /// The sphero-cylindrical curve `x² + (y + a)² = 1 + a²`, with
    /// `z = T sin θ`, `y = z²/2a`, `x = sgn(a) T cos θ √(z² + r)/2|a|`,
    /// `T² = 2|a|(√(a²+1) − |a|)`, `r = 2|a|(√(a²+1) + |a|)`.
    SpheroCylindrical { a: f64 },
}

impl Generator {
    fn jet(&self, u: f64) -> Jet {
        match *self {
            Generator::Conic(l) => {
                let (p, d1, d2) = l.jet(u);
                (p.to_array(), d1, d2)
            }
            Generator::SpheroCylindrical { a } => {
                let aa = a.abs();
                let root = (a * a + 1.0).sqrt();
                let t_max = (2.0 * aa * (root - aa)).sqrt();
                let r = 2.0 * aa * (root + aa);
                let (s, c) = u.sin_cos();
                let z = t_max * s;
                let z1 = t_max * c;
                let z2 = -z;
                let y = z * z / (2.0 * a);
                let y1 = z * z1 / a;
                let y2 = (z1 * z1 + z * z2) / a;
                let w = (z * z + r).sqrt();
                let w1 = z * z1 / w;
                let w2 = (z1 * z1 + z * z2 - w1 * w1) / w;
                let k = a.signum() * t_max / (2.0 * aa);
                let x = k * c * w;
                let x1 = k * (-s * w + c * w1);
                let x2 = k * (-c * w - 2.0 * s * w1 + c * w2);
                ([x, y, z], [x1, y1, z1], [x2, y2, z2])
            }
        }
    }

    fn speed(&self, u: f64) -> f64 {
        let d1 = self.jet(u).1;
        dot3(d1, d1).sqrt()
    }
}

type SpeedFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A [`Generator`] reparametrized by arc length over one period, restricted
/// to the arc-length window `[s_lo, s_hi]` (relative to `u = −π`).
#[derive(Clone)]
pub struct ArcProfile {
    generator: Generator,
    table: Arc<ArcTable<SpeedFn>>,
    s_lo: f64,
    s_hi: f64,
}

impl fmt::Debug for ArcProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArcProfile")
            .field("generator", &self.generator)
            .field("period", &self.table.total())
            .field("s_lo", &self.s_lo)
            .field("s_hi", &self.s_hi)
            .finish()
    }
}

impl ArcProfile {
    /// Arc-length table over `u ∈ [−π, π]` with window `[u_lo, u_hi]`.
    pub fn new(generator: Generator, u_lo: f64, u_hi: f64) -> Result<Self> {
        let speed: SpeedFn = Box::new(move |u| generator.speed(u));
        let table = ArcTable::new(speed, -PI, PI, 64, 1e-12)?;
        let s_lo = table.value(u_lo)?;
        let s_hi = table.value(u_hi)?;
        Ok(Self {
            generator,
            table: Arc::new(table),
            s_lo,
            s_hi,
        })
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn period(&self) -> f64 {
        self.table.total()
    }

    /// Parameter `u` at arc length `s`, wrapping around the period.
    pub fn parameter(&self, s: f64) -> Result<f64> {
        let period = self.period();
        let wrapped = s.rem_euclid(period);
        self.table.inverse(wrapped)
    }

    fn jet(&self, s: f64) -> Result<Jet> {
        let u = self.parameter(s)?;
        let (p, d1, d2) = self.generator.jet(u);
        let v2 = dot3(d1, d1);
        let v = v2.sqrt();
        let t = [d1[0] / v, d1[1] / v, d1[2] / v];
        let along = dot3(t, d2);
        let acc = [
            (d2[0] - along * t[0]) / v2,
            (d2[1] - along * t[1]) / v2,
            (d2[2] - along * t[2]) / v2,
        ];
        Ok((p, t, acc))
    }
}

/// The generating curve of a rotational surface.
#[derive(Debug, Clone)]
pub enum Profile {
    /// `ξ_φ₀(s) = (c cos(s/c), c sin(s/c), sin φ₀)`, `c = cos φ₀`.
    Parallel {
        phi0: f64,
    },
    /// `μ_θ(s) = (cos s, cos θ sin s, sin θ sin s)`, `s ∈ [0, π]`.
    GreatCircle {
        theta: f64,
    },
    /// `η_δ(s) = (cos(ch s)/ch, tanh δ, sin(ch s)/ch)`, `s ∈ [0, π/ch]`.
    SmallCircle {
        delta: f64,
    },
    Arc(ArcProfile),
    Sampled(SampledCurve),
}

impl Profile {
    /// Arc-length range covered by the surface.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Profile::Parallel { phi0 } => {
                let c = phi0.cos();
                (-PI * c, PI * c)
            }
            Profile::GreatCircle { .. } => (0.0, PI),
            Profile::SmallCircle { delta } => (0.0, PI / delta.cosh()),
            Profile::Arc(a) => (a.s_lo, a.s_hi),
            Profile::Sampled(c) => (c.s[0], *c.s.last().unwrap()),
        }
    }

    /// Whether the domain is one full period of a closed curve.
    pub fn is_closed(&self) -> bool {
        match self {
            Profile::Parallel { .. } => true,
            Profile::Arc(a) => (a.s_hi - a.s_lo - a.period()).abs() < 1e-9,
            _ => false,
        }
    }

    pub fn is_analytic(&self) -> bool {
        !matches!(self, Profile::Sampled(_))
    }

    fn check(&self, s: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        let slack = 1e-9 * (hi - lo).abs().max(1.0);
        if !(s >= lo - slack && s <= hi + slack) {
            return Err(Error::OutOfDomain(s));
        }
        Ok(())
    }

    pub fn point(&self, s: f64) -> Result<UnitPoint2> {
        self.check(s)?;
        Ok(match self {
            Profile::Sampled(c) => {
                let i = c.s.partition_point(|&v| v <= s).clamp(1, c.len() - 1);
                let (s0, s1) = (c.s[i - 1], c.s[i]);
                let w = ((s - s0) / (s1 - s0)).clamp(0.0, 1.0);
                slerp(c.points[i - 1], c.points[i], w)
            }
            _ => UnitPoint2::normalized(self.jet_unchecked(s)?.0)?,
        })
    }

    /// `(ξ, ξ′, ξ″)` in arc length. Sampled profiles use the stencils of
    /// the nearest sample.
    pub fn jet(&self, s: f64) -> Result<Jet> {
        self.check(s)?;
        self.jet_unchecked(s)
    }

    /// As [`Profile::jet`] without the domain check; closed-form profiles
    /// extend periodically.
    fn jet_unchecked(&self, s: f64) -> Result<Jet> {
        Ok(match self {
            Profile::Parallel { phi0 } => {
                let (sp, cp) = phi0.sin_cos();
                let (sn, cs) = (s / cp).sin_cos();
                (
                    [cp * cs, cp * sn, sp],
                    [-sn, cs, 0.0],
                    [-cs / cp, -sn / cp, 0.0],
                )
            }
            Profile::GreatCircle { theta } => {
                let (st, ct) = theta.sin_cos();
                let (sn, cs) = s.sin_cos();
                (
                    [cs, ct * sn, st * sn],
                    [-sn, ct * cs, st * cs],
                    [-cs, -ct * sn, -st * sn],
                )
            }
            Profile::SmallCircle { delta } => {
                let ch = delta.cosh();
                let th = delta.tanh();
                let (sn, cs) = (ch * s).sin_cos();
                (
                    [cs / ch, th, sn / ch],
                    [-sn, 0.0, cs],
                    [-ch * cs, 0.0, -ch * sn],
                )
            }
            Profile::Arc(a) => a.jet(s)?,
            Profile::Sampled(c) => {
                let i = nearest_sample(c, s);
                let (d1, d2) = c.jet(i);
                (c.points[i].to_array(), d1, d2)
            }
        })
    }
}

fn nearest_sample(c: &SampledCurve, s: f64) -> usize {
    let i = c.s.partition_point(|&v| v < s).min(c.len() - 1);
    if i > 0 && (s - c.s[i - 1]).abs() < (c.s[i] - s).abs() {
        i - 1
    } else {
        i
    }
}

/// Coefficients of the implicit equations in `x₂` and of the
/// common form in `x₁` for the non-degenerate rotational quadrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricSpec {
    pub family: Family,
    pub class: ConicClass,
    pub alpha2: f64,
    pub beta2: f64,
    pub alpha_hat2: f64,
    pub beta_hat2: f64,
    pub cylinder: CylinderConic,
    pub momentum: MomentumCoeffs,
    #[serde(rename = "A2")]
    pub a2: Option<f64>,
    #[serde(rename = "B2")]
    pub b2: Option<f64>,
    #[serde(rename = "C2")]
    pub c2: Option<f64>,
    #[serde(rename = "D2")]
    pub d2: Option<f64>,
}

impl QuadricSpec {
    /// Builds the spec of the quadric generated by a non-degenerate conic
    /// given in the cylinder form natural to its type: horizontal `D < 1 < C`
    /// (I), vertical `B < 1 < A` (IIa) or `A < 1 < B` (IIb), horizontal
    /// `C < 1 < D` (III).
    pub fn from_cylinder(conic: &CylinderConic) -> Result<Self> {
        let class = classify(conic)?;
        let momentum = momentum_coeffs(conic)?;
        let (p2, q2) = (conic.p * conic.p, conic.q * conic.q);
        let wrong = || {
            Error::BadParameter(format!(
                "{conic:?} is not in the standard cylinder form of its type"
            ))
        };
        let spec = |family, alpha2, beta2, alpha_hat2, beta_hat2, abcd: [Option<f64>; 4]| Self {
            family,
            class,
            alpha2,
            beta2,
            alpha_hat2,
            beta_hat2,
            cylinder: *conic,
            momentum,
            a2: abcd[0],
            b2: abcd[1],
            c2: abcd[2],
            d2: abcd[3],
        };
        match conic.kind {
            CylinderKind::Horizontal if conic.q < 1.0 && conic.p > 1.0 => {
                let (c2, d2) = (p2, q2);
                let v = horizontal_to_vertical(conic)?;
                let a2 = v.p * v.p;
                Ok(spec(
                    Family::QuadricI,
                    1.0 - a2,
                    d2 / (c2 - d2),
                    d2,
                    d2 / c2,
                    [Some(a2), Some(v.q * v.q), Some(c2), Some(d2)],
                ))
            }
            CylinderKind::Horizontal if conic.p < 1.0 && conic.q > 1.0 => {
                let (c2, d2) = (p2, q2);
                Ok(spec(
                    Family::QuadricIII,
                    d2 * (1.0 - c2) / (d2 - c2),
                    d2 / (d2 - c2),
                    d2,
                    d2 / c2,
                    [None, None, Some(c2), Some(d2)],
                ))
            }
            CylinderKind::Vertical if conic.q < 1.0 && conic.p > 1.0 => {
                let (a2, b2) = (p2, q2);
                let h = vertical_to_horizontal(conic)?;
                Ok(spec(
                    Family::QuadricIIa,
                    a2 - 1.0,
                    (a2 - b2) / b2,
                    1.0 - b2,
                    1.0 - b2 / a2,
                    [Some(a2), Some(b2), Some(h.p * h.p), Some(h.q * h.q)],
                ))
            }
            CylinderKind::Vertical if conic.p < 1.0 && conic.q > 1.0 => {
                let (a2, b2) = (p2, q2);
                Ok(spec(
                    Family::QuadricIIb,
                    1.0 - a2,
                    (b2 - a2) / b2,
                    b2 - 1.0,
                    b2 / a2 - 1.0,
                    [Some(a2), Some(b2), None, None],
                ))
            }
            _ => Err(wrong()),
        }
    }

    /// The two-piece quadric with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Result<Self> {
        match self.family {
            Family::QuadricIIa | Family::QuadricIIb => Self::from_cylinder(&CylinderConic {
                kind: CylinderKind::Vertical,
                p: self.cylinder.q,
                q: self.cylinder.p,
            }),
            _ => Err(Error::BadParameter(
                "only Type II quadrics have an A ↔ B twin".into(),
            )),
        }
    }
}

/// A rotational surface with its generating profile.
#[derive(Debug, Clone)]
pub struct RotationalSurface {
    pub profile: Profile,
    pub family: Family,
    pub momentum: Option<MomentumProfile>,
    pub quadric: Option<QuadricSpec>,
}

/// Serializable summary of a surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub family: Family,
    pub quadric: Option<QuadricSpec>,
    pub alpha_hat2: Option<f64>,
    pub beta_hat2: Option<f64>,
    pub s_domain: (f64, f64),
    pub closed: bool,
}

impl RotationalSurface {
    /// Generic surface over an arbitrary profile.
    pub fn generic(profile: Profile, momentum: Option<MomentumProfile>) -> Self {
        Self {
            profile,
            family: Family::Generic,
            momentum,
            quadric: None,
        }
    }

    /// Coefficients `(α̂², β̂²)` of the common form `x₃² + x₄² = α̂² − β̂² x₁²`.
    pub fn common_coeffs(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::Equatorial => Some((1.0, 1.0)),
            Family::Umbilical { delta } => Some((1.0 / delta.cosh().powi(2), 1.0)),
            Family::StandardTorus { phi0 } => Some((phi0.sin().powi(2), 0.0)),
            Family::SphericalMoon { theta } => {
                let s2 = theta.sin().powi(2);
                Some((s2, s2))
            }
            _ => self.quadric.map(|q| (q.alpha_hat2, q.beta_hat2)),
        }
    }

    pub fn descriptor(&self) -> SurfaceDescriptor {
        let common = self.common_coeffs();
        SurfaceDescriptor {
            family: self.family,
            quadric: self.quadric,
            alpha_hat2: common.map(|c| c.0),
            beta_hat2: common.map(|c| c.1),
            s_domain: self.profile.domain(),
            closed: self.profile.is_closed(),
        }
    }
}

fn rotate(p: [f64; 3], t: f64) -> [f64; 4] {
    let (st, ct) = t.sin_cos();
    [p[0], p[1], p[2] * ct, p[2] * st]
}

/// `X(s, t) = (x, y, z cos t, z sin t)`.
pub fn surface_point(surf: &RotationalSurface, s: f64, t: f64) -> Result<UnitPoint3> {
    let p = surf.profile.point(s)?;
    Ok(UnitPoint3::from_array_unchecked(rotate(p.to_array(), t)))
}

/// `E = |ξ′|²`, `F = 0`, `G = z²`, `L = det(ξ, ξ′, ξ″)`, `M = 0`,
/// `N = z(ẋy − xẏ)`.
pub fn fundamental_forms(surf: &RotationalSurface, s: f64) -> Result<FundamentalForms> {
    let (p, d1, d2) = surf.profile.jet(s)?;
    Ok(forms_from_jet(p, d1, d2))
}

fn forms_from_jet(p: [f64; 3], d1: [f64; 3], d2: [f64; 3]) -> FundamentalForms {
    let momentum = d1[0] * p[1] - p[0] * d1[1];
    FundamentalForms {
        e: dot3(d1, d1),
        f: 0.0,
        g: p[2] * p[2],
        l: det3(p, d1, d2),
        m: 0.0,
        n: p[2] * momentum,
    }
}

fn is_odd(p: &MomentumProfile) -> bool {
    match *p {
        MomentumProfile::Constant { k } => k == 0.0,
        _ => true,
    }
}

/// `k_m = K′(z)`, `k_p = K(z)/z`; at `z = 0` the parallel curvature of an odd
/// profile is its limit `K′(0)`.
pub fn principal_curvatures_analytic(p: &MomentumProfile, z: f64) -> Result<PrincipalCurvatures> {
    if !p.in_domain(z) {
        return Err(Error::OutOfDomain(z));
    }
    let km = p.dk(z);
    let kp = if z.abs() < AXIS_TOL {
        if !is_odd(p) {
            return Err(Error::ZeroLatitude);
        }
        p.dk(0.0)
    } else {
        p.k(z) / z
    };
    Ok(PrincipalCurvatures { km, kp })
}

/// Principal curvatures from the fundamental forms of the profile jet:
/// exact for closed-form profiles, stencil-based for sampled ones.
pub fn principal_curvatures(surf: &RotationalSurface, s: f64) -> Result<PrincipalCurvatures> {
    let ff = fundamental_forms(surf, s)?;
    if ff.g < AXIS_TOL * AXIS_TOL {
        return match surf.momentum {
            Some(p) if is_odd(&p) => Ok(PrincipalCurvatures {
                km: ff.l / ff.e,
                kp: p.dk(0.0),
            }),
            _ => Err(Error::ZeroLatitude),
        };
    }
    Ok(PrincipalCurvatures {
        km: ff.l / ff.e,
        kp: ff.n / ff.g,
    })
}

/// Default step of [`principal_curvatures_numeric`].
pub const NUMERIC_STEP: f64 = 1e-3;

/// Principal curvatures from finite differences of `X(s, t)` at `t = 0`:
/// `k_m = L/E`, `k_p = N/G` with the unit normal orthogonal to `X`, `X_s`,
/// `X_t`.
pub fn principal_curvatures_numeric(
    surf: &RotationalSurface,
    s: f64,
) -> Result<PrincipalCurvatures> {
    principal_curvatures_numeric_with(surf, s, NUMERIC_STEP, false)
}

/// As [`principal_curvatures_numeric`] with step `h`, optionally
/// Richardson-extrapolated over `h` and `h/2`. Sampled profiles always use
/// their sample stencils in `s`.
pub fn principal_curvatures_numeric_with(
    surf: &RotationalSurface,
    s: f64,
    h: f64,
    richardson: bool,
) -> Result<PrincipalCurvatures> {
    surf.profile.check(s)?;
    let t0 = 0.0;
    let diff = |f: &dyn Fn(f64) -> [f64; 4], x: f64| {
        if richardson {
            fd::central_richardson(f, x, h)
        } else {
            fd::central(f, x, h)
        }
    };
    let x = rotate(surf.profile.jet_unchecked(s)?.0, t0);
    let (xs, xss) = match &surf.profile {
        Profile::Sampled(c) => {
            let i = nearest_sample(c, s);
            let (d1, d2) = c.jet(i);
            (rotate(d1, t0), rotate(d2, t0))
        }
        profile => {
            let along_s = |u: f64| {
                rotate(
                    profile
                        .jet_unchecked(u)
                        .map(|j| j.0)
                        .unwrap_or([f64::NAN; 3]),
                    t0,
                )
            };
            diff(&along_s, s)
        }
    };
    let p = [x[0], x[1], x[2]];
    if p[2].abs() < AXIS_TOL {
        return Err(Error::ZeroLatitude);
    }
    let along_t = |t: f64| rotate(p, t);
    let (xt, xtt) = diff(&along_t, t0);

    let dot4 = |a: [f64; 4], b: [f64; 4]| a.iter().zip(&b).map(|(u, v)| u * v).sum::<f64>();
    let mut nu = cross4(x, xs, xt);
    let len = dot4(nu, nu).sqrt();
    if !(len > 0.0) {
        return Err(Error::ZeroLatitude);
    }
    // Orient as the rotated profile normal ξ × ξ′.
    let reference = rotate(cross3(p, [xs[0], xs[1], xs[2]]), t0);
    let sign = dot4(nu, reference).signum() / len;
    for v in &mut nu {
        *v *= sign;
    }
    let (e, g) = (dot4(xs, xs), dot4(xt, xt));
    Ok(PrincipalCurvatures {
        km: dot4(xss, nu) / e,
        kp: dot4(xtt, nu) / g,
    })
}

/// A vector orthogonal to `a`, `b`, `c` in R⁴ (cofactor expansion).
pub fn cross4(a: [f64; 4], b: [f64; 4], c: [f64; 4]) -> [f64; 4] {
    let minor = |skip: usize| {
        let pick = |v: [f64; 4]| {
            let mut out = [0.0; 3];
            let mut k = 0;
            for (i, x) in v.iter().enumerate() {
                if i != skip {
                    out[k] = *x;
                    k += 1;
                }
            }
            out
        };
        det3(pick(a), pick(b), pick(c))
    };
    [minor(0), -minor(1), minor(2), -minor(3)]
}

/// Residual of the family's implicit equation in `x₂` (or the defining
/// equation of the degenerate and fake-paraboloid families).
pub fn implicit_residual(surf: &RotationalSurface, q: UnitPoint3) -> Result<f64> {
    let [x1, x2, x3, x4] = q.to_array();
    let _ = x1;
    let z2 = x3 * x3 + x4 * x4;
    Ok(match surf.family {
        Family::Equatorial => x2,
        Family::Umbilical { delta } => x2 - delta.tanh(),
        Family::StandardTorus { phi0 } => z2 - phi0.sin().powi(2),
        Family::SphericalMoon { theta } => z2 - theta.tan().powi(2) * x2 * x2,
        Family::FakeParaboloid { a } => z2 - 2.0 * a * x2,
        Family::QuadricI => {
            let q = surf.quadric.ok_or(Error::NoImplicitForm)?;
            z2 - q.alpha2 - q.beta2 * x2 * x2
        }
        Family::QuadricIIa => {
            let q = surf.quadric.ok_or(Error::NoImplicitForm)?;
            z2 + q.alpha2 - q.beta2 * x2 * x2
        }
        Family::QuadricIIb | Family::QuadricIII => {
            let q = surf.quadric.ok_or(Error::NoImplicitForm)?;
            z2 - q.alpha2 + q.beta2 * x2 * x2
        }
        Family::Generic => return Err(Error::NoImplicitForm),
    })
}

/// Residual of the common form `x₃² + x₄² = α̂² − β̂² x₁²`
/// (`β̂² x₁² − α̂²` for the two-piece Type IIb quadrics).
pub fn implicit_residual_common(surf: &RotationalSurface, q: UnitPoint3) -> Result<f64> {
    let (ah2, bh2) = surf.common_coeffs().ok_or(Error::NoImplicitForm)?;
    let [x1, _, x3, x4] = q.to_array();
    let z2 = x3 * x3 + x4 * x4;
    Ok(match surf.family {
        Family::QuadricIIb => z2 - bh2 * x1 * x1 + ah2,
        _ => z2 - ah2 + bh2 * x1 * x1,
    })
}

/// The quadric for moduli `(μ, c)`; Type II yields the IIa form.
pub fn make_quadric(mc: MomentumCoeffs) -> Result<QuadricSpec> {
    let conic = crate::weingarten::cylinder_from_moduli(mc)?;
    QuadricSpec::from_cylinder(&conic)
}

/// The surface of a quadric spec. Two-piece families (IIa, IIb, III) have
/// congruent pieces selected by `branch = ±1`.
pub fn quadric_surface(spec: &QuadricSpec, branch: f64) -> Result<RotationalSurface> {
    let loops = conic_loops(&spec.cylinder)?;
    let chosen = if branch >= 0.0 { loops[0] } else { loops[1] };
    let (u_lo, u_hi) = match chosen.axis {
        LoopAxis::Z => (-PI, PI),
        LoopAxis::X | LoopAxis::Y => (0.0, PI),
    };
    let arc = ArcProfile::new(Generator::Conic(chosen), u_lo, u_hi)?;
    let mut surf = RotationalSurface {
        profile: Profile::Arc(arc),
        family: spec.family,
        momentum: None,
        quadric: Some(*spec),
    };
    let sign = momentum_sign(&surf)?;
    surf.momentum = Some(MomentumProfile::quadric(
        spec.momentum.mu,
        spec.momentum.c,
        sign,
    )?);
    Ok(surf)
}

/// Sign of `K/z` at an interior point of the profile.
fn momentum_sign(surf: &RotationalSurface) -> Result<f64> {
    let (lo, hi) = surf.profile.domain();
    let (p, d1, _) = surf.profile.jet(lo + 0.37 * (hi - lo))?;
    let k = d1[0] * p[1] - p[0] * d1[1];
    Ok(if k * p[2] >= 0.0 { 1.0 } else { -1.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegenerateKind {
    Equatorial,
    Umbilical,
    StandardTorus,
    SphericalMoon,
}

/// Totally geodesic sphere, umbilical spheres `x₂ = tanh δ`, standard tori
/// `x₃² + x₄² = sin²φ₀` and spherical moons `x₃² + x₄² = tan²θ x₂²`.
pub fn make_degenerate(kind: DegenerateKind, param: f64) -> Result<RotationalSurface> {
    let bad = |what: &str| Error::BadParameter(format!("{what} = {param} out of range"));
    let (profile, family, momentum) = match kind {
        DegenerateKind::Equatorial => (
            Profile::GreatCircle { theta: PI / 2.0 },
            Family::Equatorial,
            Some(MomentumProfile::Constant { k: 0.0 }),
        ),
        DegenerateKind::Umbilical => {
            if !(param >= 0.0 && param.is_finite()) {
                return Err(bad("δ"));
            }
            let family = if param == 0.0 {
                Family::Equatorial
            } else {
                Family::Umbilical { delta: param }
            };
            (
                Profile::SmallCircle { delta: param },
                family,
                Some(MomentumProfile::Linear { k0: -param.sinh() }),
            )
        }
        DegenerateKind::StandardTorus => {
            if !(param > 0.0 && param < PI / 2.0) {
                return Err(bad("φ₀"));
            }
            (
                Profile::Parallel { phi0: param },
                Family::StandardTorus { phi0: param },
                None,
            )
        }
        DegenerateKind::SphericalMoon => {
            if !(param > 0.0 && param < PI) || (param - PI / 2.0).abs() < 1e-12 {
                return Err(bad("θ"));
            }
            (
                Profile::GreatCircle { theta: param },
                Family::SphericalMoon { theta: param },
                Some(MomentumProfile::Constant { k: -param.cos() }),
            )
        }
    };
    Ok(RotationalSurface {
        profile,
        family,
        momentum,
        quadric: None,
    })
}

/// Fake paraboloid `x₃² + x₄² = 2a x₂`, generated by the z ≥ 0 half of the
/// sphero-cylindrical curve `x² + (y + a)² = 1 + a²`.
pub fn make_fake_paraboloid(a: f64) -> Result<RotationalSurface> {
    let momentum = MomentumProfile::sphero_cylindrical(a)?;
    let arc = ArcProfile::new(Generator::SpheroCylindrical { a }, 0.0, PI)?;
    Ok(RotationalSurface {
        profile: Profile::Arc(arc),
        family: Family::FakeParaboloid { a },
        momentum: Some(momentum),
        quadric: None,
    })
}

/// The `x > 0` branch (`z` increasing from `−T` to `T`) of the
/// sphero-cylindrical curve, sampled by exact arc length with spacing
/// `step` (the last gap may be shorter).
pub fn fake_paraboloid_profile(a: f64, step: f64) -> Result<SampledCurve> {
    MomentumProfile::sphero_cylindrical(a)?;
    if !(step > 0.0) {
        return Err(Error::BadParameter("step must be positive".into()));
    }
    let gen = Generator::SpheroCylindrical { a };
    let arc = ArcProfile::new(gen, -PI / 2.0, PI / 2.0)?;
    let (lo, hi) = (arc.s_lo, arc.s_hi);
    let n = ((hi - lo) / step).floor() as usize;
    let mut s = Vec::with_capacity(n + 2);
    let mut points = Vec::with_capacity(n + 2);
    for k in 0..=n {
        let sk = k as f64 * step;
        s.push(sk);
        points.push(UnitPoint2::normalized(arc.jet(lo + sk)?.0)?);
    }
    if hi - lo - n as f64 * step > 1e-9 {
        s.push(hi - lo);
        points.push(UnitPoint2::normalized(arc.jet(hi)?.0)?);
    }
    SampledCurve::new(s, points)
}

/// Surface over the parallel `ξ_φ₀`, the great circle `μ_θ` or the small
/// circle `η_δ` sampled at arc-length `step`; useful for exercising the
/// sampled-profile paths against closed forms.
pub fn sampled_circle(profile: &Profile, step: f64) -> Result<SampledCurve> {
    let (lo, hi) = profile.domain();
    let n = ((hi - lo) / step).floor() as usize + 1;
    Ok(curves::sample(
        |s| profile.point(s.min(hi)).unwrap_or(UnitPoint2::NORTH),
        lo,
        step,
        n,
    ))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use super::*;

    fn grid(surf: &RotationalSurface, n: usize) -> Vec<UnitPoint3> {
        let (lo, hi) = surf.profile.domain();
        let mut out = Vec::new();
        for i in 0..=n {
            let s = lo + (hi - lo) * i as f64 / n as f64;
            for j in 0..7 {
                let t = -PI + 2.0 * PI * j as f64 / 7.0;
                out.push(surface_point(surf, s, t).unwrap());
            }
        }
        out
    }

    #[test]
    fn points_lie_on_the_three_sphere() {
        let surfaces = [
            make_degenerate(DegenerateKind::StandardTorus, 0.4).unwrap(),
            make_degenerate(DegenerateKind::Umbilical, 1.0).unwrap(),
            make_degenerate(DegenerateKind::SphericalMoon, 1.0).unwrap(),
            quadric_surface(&make_quadric(MomentumCoeffs::new(1.0, -1.0)).unwrap(), 1.0).unwrap(),
            make_fake_paraboloid(1.0).unwrap(),
        ];
        for surf in &surfaces {
            for q in grid(surf, 40) {
                assert!((q.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equatorial_and_torus_points() {
        let eq = make_degenerate(DegenerateKind::Equatorial, 0.0).unwrap();
        for q in grid(&eq, 10) {
            assert!(q.x2.abs() < 1e-15);
        }
        let torus = make_degenerate(DegenerateKind::StandardTorus, FRAC_PI_4).unwrap();
        for q in grid(&torus, 10) {
            assert!(((q.x3 * q.x3 + q.x4 * q.x4).sqrt() - FRAC_PI_4.sin()).abs() < 1e-15);
        }
        let p = torus.profile.point(0.3).unwrap();
        let q = surface_point(&torus, 0.3, 0.0).unwrap();
        assert_eq!(q.to_array(), [p.x, p.y, p.z, 0.0]);
    }

    #[test]
    fn fundamental_forms_of_degenerate_families() {
        let phi0 = 0.6f64;
        let torus = make_degenerate(DegenerateKind::StandardTorus, phi0).unwrap();
        let ff = fundamental_forms(&torus, 0.2).unwrap();
        assert!((ff.e - 1.0).abs() < 1e-15 && (ff.g - phi0.sin().powi(2)).abs() < 1e-15);
        assert!((ff.l - phi0.tan()).abs() < 1e-14);

        let eq = make_degenerate(DegenerateKind::Equatorial, 0.0).unwrap();
        let ff = fundamental_forms(&eq, 1.0).unwrap();
        assert!(ff.l.abs() < 1e-15 && ff.n.abs() < 1e-15);

        let umb = make_degenerate(DegenerateKind::Umbilical, 1.0).unwrap();
        for s in [0.1, 0.7, 1.1] {
            let ff = fundamental_forms(&umb, s).unwrap();
            assert!((ff.l / ff.e + 1f64.sinh()).abs() < 1e-14);
            assert!((ff.n / ff.g + 1f64.sinh()).abs() < 1e-14);
        }
    }

    #[test]
    fn analytic_curvatures() {
        let (mu, c) = (1.0, -1.0);
        let p = MomentumProfile::quadric(mu, c, 1.0).unwrap();
        let z = 0.5f64;
        let pc = principal_curvatures_analytic(&p, z).unwrap();
        assert!((pc.km - mu / (c * z * z + mu).powf(1.5)).abs() < 1e-14);
        assert!((pc.kp - 1.0 / (c * z * z + mu).sqrt()).abs() < 1e-14);
        assert!((pc.km - mu * pc.kp.powi(3)).abs() < 1e-14);

        let p = MomentumProfile::linear(-0.7).unwrap();
        for z in [-0.4, 0.0, 0.3] {
            let pc = principal_curvatures_analytic(&p, z).unwrap();
            assert!((pc.km + 0.7).abs() < 1e-15 && (pc.kp + 0.7).abs() < 1e-15);
        }
        let p = MomentumProfile::constant(0.3).unwrap();
        let pc = principal_curvatures_analytic(&p, 0.5).unwrap();
        assert!(pc.km == 0.0 && (pc.kp - 0.6).abs() < 1e-15);
        assert!(matches!(
            principal_curvatures_analytic(&p, 0.0),
            Err(Error::ZeroLatitude)
        ));
    }

    #[test]
    fn numeric_curvatures_match_closed_forms() {
        let torus = make_degenerate(DegenerateKind::StandardTorus, FRAC_PI_4).unwrap();
        let pc = principal_curvatures_numeric(&torus, 0.4).unwrap();
        assert!(
            (pc.km - 1.0).abs() < 1e-6 && (pc.kp + 1.0).abs() < 1e-6,
            "{pc:?}"
        );

        let moon = make_degenerate(DegenerateKind::SphericalMoon, PI / 3.0).unwrap();
        let pc = principal_curvatures_numeric(&moon, 1.0).unwrap();
        assert!(pc.km.abs() < 1e-6);

        let spec = make_quadric(MomentumCoeffs::new(1.0, -1.0)).unwrap();
        let surf = quadric_surface(&spec, 1.0).unwrap();
        let p = surf.momentum.unwrap();
        let (lo, hi) = surf.profile.domain();
        // Find the sample where z = 0.5 by bisection along the half loop.
        let s = crate::quadrature::bisect(
            |s| surf.profile.point(s).unwrap().z < 0.5,
            lo,
            lo + 0.5 * (hi - lo),
            1e-14,
        )
        .0;
        let z = surf.profile.point(s).unwrap().z;
        assert!((z - 0.5).abs() < 1e-10);
        let exact = principal_curvatures_analytic(&p, z).unwrap();
        let num = principal_curvatures_numeric(&surf, s).unwrap();
        assert!(
            (num.km - exact.km).abs() < 1e-4 && (num.kp - exact.kp).abs() < 1e-4,
            "{num:?} {exact:?}"
        );
        let jet = principal_curvatures(&surf, s).unwrap();
        assert!((jet.km - exact.km).abs() < 1e-10 && (jet.kp - exact.kp).abs() < 1e-10);
    }

    #[test]
    fn cross4_is_orthogonal() {
        let a = [0.3, -1.0, 2.0, 0.5];
        let b = [1.0, 0.2, -0.4, 0.9];
        let c = [-0.7, 0.1, 0.3, 1.5];
        let n = cross4(a, b, c);
        for v in [a, b, c] {
            let d: f64 = v.iter().zip(&n).map(|(x, y)| x * y).sum();
            assert!(d.abs() < 1e-14);
        }
    }

    #[test]
    fn quadric_one_from_cylinder() {
        let spec =
            QuadricSpec::from_cylinder(&CylinderConic::horizontal(2.0, 0.5).unwrap()).unwrap();
        assert_eq!(spec.family, Family::QuadricI);
        assert!((spec.alpha_hat2 - 0.25).abs() < 1e-15 && (spec.beta_hat2 - 0.0625).abs() < 1e-15);
        assert!((spec.alpha_hat2 / spec.beta_hat2).sqrt() - 2.0 < 1e-14);
        assert!((spec.alpha2 - (1.0 - spec.a2.unwrap())).abs() < 1e-14);
        assert!((spec.alpha2 - 0.25 * 3.0 / 3.75).abs() < 1e-14);
        let surf = quadric_surface(&spec, 1.0).unwrap();
        for q in grid(&surf, 60) {
            let r1 = implicit_residual(&surf, q).unwrap();
            let r2 = implicit_residual_common(&surf, q).unwrap();
            assert!(r1.abs() < 1e-10 && r2.abs() < 1e-10);
        }
    }

    #[test]
    fn quadric_specs_from_moduli() {
        let spec = make_quadric(MomentumCoeffs::new(-1.5, 5.0)).unwrap();
        assert_eq!(spec.class, ConicClass::ParabolaI);
        assert!((spec.a2.unwrap() - 0.5).abs() < 1e-12 && (spec.b2.unwrap() - 0.4).abs() < 1e-12);
        assert!((spec.alpha2 - 0.5).abs() < 1e-12);

        let spec = make_quadric(MomentumCoeffs::new(0.5, 0.5)).unwrap();
        assert_eq!(spec.family, Family::QuadricIIa);
        assert_eq!(spec.class, ConicClass::ParabolaII);
        let (a2, b2) = (spec.a2.unwrap(), spec.b2.unwrap());
        assert!(
            (a2 - (2.0 + 2f64.sqrt())).abs() < 1e-12 && (b2 - (2.0 - 2f64.sqrt())).abs() < 1e-12
        );
        assert!((a2 + b2 - 4.0).abs() < 1e-12 && (2.0 * a2 * b2 - 4.0).abs() < 1e-12);
        assert!((spec.beta2 - 2.0 * spec.alpha2).abs() < 1e-12);

        let spec = make_quadric(MomentumCoeffs::new(1.0, -1.0)).unwrap();
        assert_eq!(spec.family, Family::QuadricIII);
        assert!((spec.d2.unwrap() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((spec.c2.unwrap() - 0.72361).abs() < 1e-5);
        assert!(spec.alpha_hat2 > 1.0 && spec.beta_hat2 > 1.0 && spec.alpha_hat2 < spec.beta_hat2);

        assert!(matches!(
            make_quadric(MomentumCoeffs::new(-0.5, 1.2)),
            Err(Error::OutOfRegion { .. })
        ));
    }

    #[test]
    fn every_quadric_satisfies_both_implicit_forms() {
        for (mu, c) in [
            (-1.0 / 12.0, 5.0 / 3.0),
            (0.9, 2.7),
            (0.5, 0.5),
            (1.0, -1.0),
            (2.0, -0.3),
        ] {
            let spec = make_quadric(MomentumCoeffs::new(mu, c)).unwrap();
            let mut specs = vec![spec];
            if let Ok(twin) = spec.swapped() {
                specs.push(twin);
            }
            for spec in specs {
                for branch in [1.0, -1.0] {
                    let surf = quadric_surface(&spec, branch).unwrap();
                    for q in grid(&surf, 50) {
                        let r1 = implicit_residual(&surf, q).unwrap();
                        let r2 = implicit_residual_common(&surf, q).unwrap();
                        assert!(
                            r1.abs() < 1e-10 && r2.abs() < 1e-10,
                            "{:?} {r1} {r2}",
                            spec.family
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn two_piece_quadrics_coincide_after_swapping_axes() {
        let spec = make_quadric(MomentumCoeffs::new(0.9, 2.7)).unwrap();
        let twin = spec.swapped().unwrap();
        assert_eq!(twin.family, Family::QuadricIIb);
        let a = quadric_surface(&spec, 1.0).unwrap();
        let b = quadric_surface(&twin, 1.0).unwrap();
        for q in grid(&b, 30) {
            let moved = UnitPoint3::from_array_unchecked([q.x2, q.x1, q.x3, q.x4]);
            assert!(implicit_residual(&a, moved).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_coefficient_table() {
        let delta = 0.8f64;
        let umb = make_degenerate(DegenerateKind::Umbilical, delta).unwrap();
        assert_eq!(umb.common_coeffs(), Some((1.0 / delta.cosh().powi(2), 1.0)));
        let torus = make_degenerate(DegenerateKind::StandardTorus, 0.5).unwrap();
        assert_eq!(torus.common_coeffs(), Some((0.5f64.sin().powi(2), 0.0)));
        let moon = make_degenerate(DegenerateKind::SphericalMoon, 1.2).unwrap();
        let s2 = 1.2f64.sin().powi(2);
        assert_eq!(moon.common_coeffs(), Some((s2, s2)));
        for surf in [&umb, &torus, &moon] {
            for q in grid(surf, 30) {
                assert!(implicit_residual(surf, q).unwrap().abs() < 1e-12);
                assert!(implicit_residual_common(surf, q).unwrap().abs() < 1e-12);
            }
        }
        let eq = make_degenerate(DegenerateKind::Umbilical, 0.0).unwrap();
        assert_eq!(eq.family, Family::Equatorial);
        assert_eq!(eq.common_coeffs(), Some((1.0, 1.0)));
        assert!(make_degenerate(DegenerateKind::SphericalMoon, PI / 2.0).is_err());
        assert!(make_degenerate(DegenerateKind::StandardTorus, 2.0).is_err());
        let generic = RotationalSurface::generic(Profile::GreatCircle { theta: 0.3 }, None);
        let q = surface_point(&generic, 0.5, 0.1).unwrap();
        assert!(matches!(
            implicit_residual(&generic, q),
            Err(Error::NoImplicitForm)
        ));
    }

    #[test]
    fn fake_paraboloid_profile_and_surface() {
        let c = fake_paraboloid_profile(1.0, 1e-3).unwrap();
        let mid = c
            .points
            .iter()
            .min_by(|a, b| a.z.abs().total_cmp(&b.z.abs()))
            .unwrap();
        assert!((mid.x - 1.0).abs() < 1e-3 && mid.y.abs() < 1e-6);
        for p in &c.points {
            assert!((p.x * p.x + (p.y + 1.0).powi(2) - 2.0).abs() < 1e-12);
        }
        let k = MomentumProfile::sphero_cylindrical(1.0).unwrap();
        let with = crate::sphere::momentum_from_samples(c).unwrap();
        let m = with.momentum.as_ref().unwrap();
        for i in with.interior() {
            assert!((m[i] - k.k(with.points[i].z)).abs() < 5e-5);
        }
        let surf = make_fake_paraboloid(1.0).unwrap();
        for q in grid(&surf, 40) {
            assert!(implicit_residual(&surf, q).unwrap().abs() < 1e-10);
        }
        let neg = make_fake_paraboloid(-2.0).unwrap();
        for q in grid(&neg, 40) {
            assert!(implicit_residual(&neg, q).unwrap().abs() < 1e-10);
        }
        assert!(make_fake_paraboloid(0.0).is_err());
    }

    #[test]
    fn sampled_profiles_follow_closed_forms() {
        let closed = make_degenerate(DegenerateKind::Umbilical, 1.0).unwrap();
        let samples = sampled_circle(&closed.profile, 1e-3).unwrap();
        let surf = RotationalSurface::generic(Profile::Sampled(samples.clone()), None);
        let s = samples.s[400];
        let num = principal_curvatures_numeric(&surf, s).unwrap();
        assert!(
            (num.km + 1f64.sinh()).abs() < 1e-5 && (num.kp + 1f64.sinh()).abs() < 1e-5,
            "{num:?}"
        );
        let q = surface_point(&surf, s + 3e-4, 0.2).unwrap();
        assert!((q.norm() - 1.0).abs() < 1e-12);
    }
}
