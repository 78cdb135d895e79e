//! Spherical conics in canonical position.
//!
//! A conic is described three ways:
//!
//! * as a focal locus ([`FocalConic`]): constant sum (ellipse) or absolute
//!   difference (hyperbola) of geodesic distances to two foci placed
//!   symmetrically on the equator or on the zero-meridian;
//! * by its canonical geographic equation
//!   `cos²φ (cos²λ·c_e²/c_d² + sin²λ·s_e²/s_d²) = 1`;
//! * as the intersection of S² with a vertical cylinder `x²/A² + y²/B² = 1`
//!   or a horizontal cylinder `x²/C² + z²/D² = 1` ([`CylinderConic`]).
//!
//! The spherical angular momentum of every non-degenerate conic satisfies
//! `K² = z²/(μ + c z²)`; the moduli `(μ, c)` are [`MomentumCoeffs`].

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::sphere::{geodesic_distance, GeoCoord, UnitPoint2};
use crate::{Error, Result};

/// Tolerance used for the degenerate equalities `p = q`, `p = 1`, `q = 1`.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Absolute tolerance on the parabola equalities (`A² = 1/2`, `C² = 1/2`,
/// `2μ + c = 2`, `μ + c = 1`).
pub const PARABOLA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FocalAxis {
    /// Foci `(c_e, ∓s_e, 0)`.
    FociOnEquator,
    /// Foci `(c_e, 0, ∓s_e)`.
    FociOnZeroMeridian,
}

/// A spherical conic of parameters `(d, e)`: `2d` is the distance between
/// the vertices and `2e` the focal distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalConic {
    pub d: f64,
    pub e: f64,
    pub axis: FocalAxis,
}

impl FocalConic {
    pub fn new(d: f64, e: f64, axis: FocalAxis) -> Result<Self> {
        let open = |v: f64| v > 0.0 && v < FRAC_PI_2;
        if !open(d) || !open(e) {
            return Err(Error::BadParameter(format!(
                "(d, e) = ({d}, {e}) outside (0, π/2)"
            )));
        }
        if d == e {
            return Err(Error::Degenerate("d = e is the equator".into()));
        }
        Ok(Self { d, e, axis })
    }

    pub fn is_ellipse(&self) -> bool {
        self.d > self.e
    }

    pub fn is_parabola(&self) -> bool {
        self.d < self.e && (self.d - PI / 4.0).abs() < PARABOLA_TOL
    }

    pub fn foci(&self) -> (UnitPoint2, UnitPoint2) {
        let (se, ce) = self.e.sin_cos();
        match self.axis {
            FocalAxis::FociOnEquator => (
                UnitPoint2 {
                    x: ce,
                    y: -se,
                    z: 0.0,
                },
                UnitPoint2 {
                    x: ce,
                    y: se,
                    z: 0.0,
                },
            ),
            FocalAxis::FociOnZeroMeridian => (
                UnitPoint2 {
                    x: ce,
                    y: 0.0,
                    z: -se,
                },
                UnitPoint2 {
                    x: ce,
                    y: 0.0,
                    z: se,
                },
            ),
        }
    }

    /// Squared semi-axes `(c_d²/c_e², s_d²/s_e²)` of the Cartesian form.
    pub fn cartesian_axes2(&self) -> (f64, f64) {
        let (sd, cd) = self.d.sin_cos();
        let (se, ce) = self.e.sin_cos();
        (cd * cd / (ce * ce), sd * sd / (se * se))
    }
}

/// Orientation of the cylinder axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CylinderKind {
    /// `x²/A² + y²/B² = 1`.
    Vertical,
    /// `x²/C² + z²/D² = 1`.
    Horizontal,
}

/// A spherical conic as S² ∩ elliptic cylinder. `p`, `q` are `(A, B)` for
/// [`CylinderKind::Vertical`] and `(C, D)` for [`CylinderKind::Horizontal`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderConic {
    pub kind: CylinderKind,
    pub p: f64,
    pub q: f64,
}

impl CylinderConic {
    pub fn new(kind: CylinderKind, p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0 && p.is_finite() && q.is_finite()) {
            return Err(Error::BadParameter(format!(
                "semi-axes ({p}, {q}) must be positive"
            )));
        }
        Ok(Self { kind, p, q })
    }

    pub fn vertical(a: f64, b: f64) -> Result<Self> {
        Self::new(CylinderKind::Vertical, a, b)
    }

    pub fn horizontal(c: f64, d: f64) -> Result<Self> {
        Self::new(CylinderKind::Horizontal, c, d)
    }

    /// Cylinder equation residual at `pt`.
    pub fn cylinder_residual(&self, pt: UnitPoint2) -> f64 {
        let second = match self.kind {
            CylinderKind::Vertical => pt.y,
            CylinderKind::Horizontal => pt.z,
        };
        pt.x * pt.x / (self.p * self.p) + second * second / (self.q * self.q) - 1.0
    }

    /// `1 − p²cos²t − q²sin²t`, the square of the free coordinate.
    pub fn radicand(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        1.0 - self.p * self.p * c * c - self.q * self.q * s * s
    }
}

/// Sign of the square-root coordinate in the cylinder parametrizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicClass {
    TypeI,
    TypeII,
    TypeIII,
    ParabolaI,
    ParabolaII,
    DegenerateParallel,
    DegenerateGreatCircle,
    DegenerateSmallCircle,
    Equator,
}

impl ConicClass {
    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            ConicClass::DegenerateParallel
                | ConicClass::DegenerateGreatCircle
                | ConicClass::DegenerateSmallCircle
                | ConicClass::Equator
        )
    }

    /// The essential type, merging parabolas into their families.
    pub fn base_type(self) -> Option<u8> {
        match self {
            ConicClass::TypeI | ConicClass::ParabolaI => Some(1),
            ConicClass::TypeII | ConicClass::ParabolaII => Some(2),
            ConicClass::TypeIII => Some(3),
            _ => None,
        }
    }
}

/// Coefficients of `K(z)² = z²/(μ + c z²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumCoeffs {
    pub mu: f64,
    pub c: f64,
}

impl MomentumCoeffs {
    pub fn new(mu: f64, c: f64) -> Self {
        Self { mu, c }
    }

    /// `(μ − c + 1)² + 4cμ`.
    pub fn discriminant(&self) -> f64 {
        let t = self.mu - self.c + 1.0;
        t * t + 4.0 * self.c * self.mu
    }
}

fn check_kind(conic: &CylinderConic, kind: CylinderKind) -> Result<()> {
    if conic.kind != kind {
        return Err(Error::BadParameter(format!("expected a {kind:?} cylinder")));
    }
    Ok(())
}

fn point_from_radicand(r: f64) -> Result<f64> {
    if r < -1e-12 {
        return Err(Error::OutsideSphere(r));
    }
    Ok(r.max(0.0).sqrt())
}

/// `(A cos t, B sin t, ±√(1 − A²cos²t − B²sin²t))`.
pub fn param_vertical(conic: &CylinderConic, t: f64, branch: Branch) -> Result<UnitPoint2> {
    check_kind(conic, CylinderKind::Vertical)?;
    let w = point_from_radicand(conic.radicand(t))?;
    Ok(UnitPoint2::from_array_unchecked([
        conic.p * t.cos(),
        conic.q * t.sin(),
        branch.sign() * w,
    ]))
}

/// `(C cos t, ±√(1 − C²cos²t − D²sin²t), D sin t)`.
pub fn param_horizontal(conic: &CylinderConic, t: f64, branch: Branch) -> Result<UnitPoint2> {
    check_kind(conic, CylinderKind::Horizontal)?;
    let w = point_from_radicand(conic.radicand(t))?;
    Ok(UnitPoint2::from_array_unchecked([
        conic.p * t.cos(),
        branch.sign() * w,
        conic.q * t.sin(),
    ]))
}

/// Dispatches to [`param_vertical`] or [`param_horizontal`].
pub fn param(conic: &CylinderConic, t: f64, branch: Branch) -> Result<UnitPoint2> {
    match conic.kind {
        CylinderKind::Vertical => param_vertical(conic, t, branch),
        CylinderKind::Horizontal => param_horizontal(conic, t, branch),
    }
}

/// `C² = A²(1−B²)/(A²−B²)`, `D² = 1−B²`, valid for `B < A`, `B < 1`.
pub fn vertical_to_horizontal(v: &CylinderConic) -> Result<CylinderConic> {
    check_kind(v, CylinderKind::Vertical)?;
    let (a2, b2) = (v.p * v.p, v.q * v.q);
    if !(v.q < v.p && v.q < 1.0) {
        return Err(Error::NotConvertible(format!(
            "need B < A and B < 1, got ({}, {})",
            v.p, v.q
        )));
    }
    let c2 = a2 * (1.0 - b2) / (a2 - b2);
    let d2 = 1.0 - b2;
    CylinderConic::horizontal(c2.sqrt(), d2.sqrt())
}

/// `A² = C²(1−D²)/(C²−D²)`, `B² = 1−D²`, valid for `D < C`, `D < 1`.
pub fn horizontal_to_vertical(h: &CylinderConic) -> Result<CylinderConic> {
    check_kind(h, CylinderKind::Horizontal)?;
    let (c2, d2) = (h.p * h.p, h.q * h.q);
    if !(h.q < h.p && h.q < 1.0) {
        return Err(Error::NotConvertible(format!(
            "need D < C and D < 1, got ({}, {})",
            h.p, h.q
        )));
    }
    let a2 = c2 * (1.0 - d2) / (c2 - d2);
    let b2 = 1.0 - d2;
    CylinderConic::vertical(a2.sqrt(), b2.sqrt())
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= DEGENERATE_TOL
}

/// Horizontal conic with `C < D < 1` after a quarter turn about the z-axis:
/// `C'² = 1 − C²`, `D'² = D²(1 − C²)/(D² − C²)`, landing in `C' < 1 < D'`.
fn quarter_turn_horizontal(h: &CylinderConic) -> CylinderConic {
    let (c2, d2) = (h.p * h.p, h.q * h.q);
    CylinderConic {
        kind: CylinderKind::Horizontal,
        p: (1.0 - c2).sqrt(),
        q: (d2 * (1.0 - c2) / (d2 - c2)).sqrt(),
    }
}

/// Equivalent conic in the standard orientation of its type, and the
/// rotation angle about the z-axis taking the original conic onto it.
///
/// Vertical `A < B < 1` becomes vertical `(B, A)`; horizontal `C < D < 1`
/// becomes a horizontal Type III conic. All other conics are unchanged.
pub fn standard_orientation(conic: &CylinderConic) -> Result<(CylinderConic, f64)> {
    classify(conic)?;
    let (p, q) = (conic.p, conic.q);
    Ok(match conic.kind {
        CylinderKind::Vertical if p < q && q < 1.0 => (
            CylinderConic {
                kind: CylinderKind::Vertical,
                p: q,
                q: p,
            },
            FRAC_PI_2,
        ),
        CylinderKind::Horizontal if p < q && q < 1.0 => (quarter_turn_horizontal(conic), FRAC_PI_2),
        _ => (*conic, 0.0),
    })
}

/// Classifies a cylinder conic into the three essential types, the
/// parabola sub-families, or one of the degenerate circles.
pub fn classify(conic: &CylinderConic) -> Result<ConicClass> {
    let (p, q) = (conic.p, conic.q);
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::BadParameter("semi-axes must be positive".into()));
    }
    let lo = p.min(q);
    let hi = p.max(q);
    if lo > 1.0 + DEGENERATE_TOL {
        return Err(Error::EmptyIntersection);
    }
    if near(p, q) {
        return match (conic.kind, near(p, 1.0)) {
            (_, false) if p > 1.0 => Err(Error::EmptyIntersection),
            (CylinderKind::Vertical, true) => Ok(ConicClass::Equator),
            (CylinderKind::Horizontal, true) => Ok(ConicClass::DegenerateGreatCircle),
            (CylinderKind::Vertical, false) => Ok(ConicClass::DegenerateParallel),
            (CylinderKind::Horizontal, false) => Ok(ConicClass::DegenerateSmallCircle),
        };
    }
    if near(lo, 1.0) || near(hi, 1.0) {
        // One semi-axis equals 1: a great circle when the other is shorter,
        // otherwise only two antipodal points remain.
        return if near(hi, 1.0) {
            Ok(ConicClass::DegenerateGreatCircle)
        } else {
            Err(Error::EmptyIntersection)
        };
    }
    let (p2, q2) = (p * p, q * q);
    Ok(match conic.kind {
        CylinderKind::Vertical => {
            if hi < 1.0 {
                if (hi * hi - 0.5).abs() < PARABOLA_TOL {
                    ConicClass::ParabolaI
                } else {
                    ConicClass::TypeI
                }
            } else if (p2 + q2 - 2.0 * p2 * q2).abs() < PARABOLA_TOL {
                ConicClass::ParabolaII
            } else {
                ConicClass::TypeII
            }
        }
        CylinderKind::Horizontal => {
            if q < 1.0 && p > 1.0 {
                if (p2 + q2 - 2.0 * p2 * q2).abs() < PARABOLA_TOL {
                    ConicClass::ParabolaI
                } else {
                    ConicClass::TypeI
                }
            } else if q < p && p < 1.0 {
                if (p2 - 0.5).abs() < PARABOLA_TOL {
                    ConicClass::ParabolaII
                } else {
                    ConicClass::TypeII
                }
            } else {
                // C < 1 < D directly, or C < D < 1 after a quarter turn.
                ConicClass::TypeIII
            }
        }
    })
}

fn require_non_degenerate(conic: &CylinderConic) -> Result<ConicClass> {
    let class = classify(conic)?;
    if class.is_degenerate() {
        return Err(Error::Degenerate(format!("{class:?}")));
    }
    Ok(class)
}

fn focal_from_cos(cd: f64, ce: f64, axis: FocalAxis) -> Result<FocalConic> {
    FocalConic::new(cd.clamp(-1.0, 1.0).acos(), ce.clamp(-1.0, 1.0).acos(), axis)
}

/// Focal parameters `(d, e)` and focal axis of a non-degenerate conic.
///
/// For vertical `A < B < 1` and horizontal `C < D < 1` the result describes
/// the conic after the quarter turn of [`standard_orientation`].
pub fn focal_params(conic: &CylinderConic) -> Result<FocalConic> {
    require_non_degenerate(conic)?;
    let (std, _) = standard_orientation(conic)?;
    let (p2, q2) = (std.p * std.p, std.q * std.q);
    match std.kind {
        CylinderKind::Vertical if std.p.min(std.q) < 1.0 && std.p.max(std.q) > 1.0 => {
            // Type II: x²/A² + y²/B² = 1 is already the xy Cartesian form.
            let ce = ((1.0 - q2) / (p2 - q2)).sqrt();
            focal_from_cos(std.p * ce, ce, FocalAxis::FociOnEquator)
        }
        CylinderKind::Vertical => focal_params(&vertical_to_horizontal(&std)?),
        CylinderKind::Horizontal if std.q < std.p && std.p < 1.0 => {
            focal_params(&horizontal_to_vertical(&std)?)
        }
        CylinderKind::Horizontal => {
            // Types I and III: x²/C² + z²/D² = 1 is the xz Cartesian form.
            let ce = ((1.0 - q2) / (p2 - q2)).sqrt();
            focal_from_cos(std.p * ce, ce, FocalAxis::FociOnZeroMeridian)
        }
    }
}

/// Residual `LHS − 1` of the canonical geographic equation. Conics with
/// foci on the zero-meridian are evaluated after swapping the y and z
/// coordinates.
pub fn canonical_residual(g: GeoCoord, f: &FocalConic) -> f64 {
    let g = match f.axis {
        FocalAxis::FociOnEquator => g,
        FocalAxis::FociOnZeroMeridian => {
            let p = crate::sphere::geo_to_cartesian(g);
            UnitPoint2::from_array_unchecked([p.x, p.z, p.y]).to_geo()
        }
    };
    let (a2, b2) = f.cartesian_axes2();
    let cp = g.phi.cos();
    let (sl, cl) = g.lambda.sin_cos();
    cp * cp * (cl * cl / a2 + sl * sl / b2) - 1.0
}

/// Focal-locus residual: `dist(P,F₁) + dist(P,F₂) − 2d` for ellipses,
/// `|dist(P,F₁) − dist(P,F₂)| − 2d` for hyperbolas.
///
/// The antipodal component of an ellipse is the ellipse with foci `−F₁`,
/// `−F₂`; points there are measured against those foci.
pub fn locus_residual(p: UnitPoint2, f: &FocalConic) -> f64 {
    let (f1, f2) = f.foci();
    let (l1, l2) = (geodesic_distance(p, f1), geodesic_distance(p, f2));
    if f.is_ellipse() {
        let near = l1 + l2 - 2.0 * f.d;
        let far = 2.0 * PI - l1 - l2 - 2.0 * f.d;
        if near.abs() <= far.abs() {
            near
        } else {
            far
        }
    } else {
        (l1 - l2).abs() - 2.0 * f.d
    }
}

/// `μ = (A²−1)(1−B²)/(A²B²)`, `c = 1/(A²B²)`.
pub fn momentum_coeffs_ab(a2: f64, b2: f64) -> MomentumCoeffs {
    MomentumCoeffs {
        mu: (a2 - 1.0) * (1.0 - b2) / (a2 * b2),
        c: 1.0 / (a2 * b2),
    }
}

/// `μ = D⁴(1−C²)/(C²(1−D²)²)`, `c = (C²−D²)/(C²(1−D²)²)`.
pub fn momentum_coeffs_cd(c2: f64, d2: f64) -> MomentumCoeffs {
    let w = (1.0 - d2) * (1.0 - d2);
    MomentumCoeffs {
        mu: d2 * d2 * (1.0 - c2) / (c2 * w),
        c: (c2 - d2) / (c2 * w),
    }
}

/// Momentum moduli `(μ, c)` of a non-degenerate conic.
pub fn momentum_coeffs(conic: &CylinderConic) -> Result<MomentumCoeffs> {
    require_non_degenerate(conic)?;
    let (p2, q2) = (conic.p * conic.p, conic.q * conic.q);
    Ok(match conic.kind {
        CylinderKind::Vertical => momentum_coeffs_ab(p2, q2),
        CylinderKind::Horizontal => momentum_coeffs_cd(p2, q2),
    })
}

/// Region of the `(μ, c)` plane.
pub fn region_of(mc: &MomentumCoeffs) -> Result<ConicClass> {
    let MomentumCoeffs { mu, c } = *mc;
    if !(mu.is_finite() && c.is_finite()) {
        return Err(Error::OutOfRegion { mu, c });
    }
    if mu == 0.0 && c > 1.0 {
        return Ok(ConicClass::DegenerateGreatCircle);
    }
    if c == 0.0 && mu > 0.0 {
        return Ok(ConicClass::DegenerateSmallCircle);
    }
    if mu < 0.0 && mu + c > 1.0 && mc.discriminant() > 0.0 {
        let parabola = (2.0 * mu + c - 2.0).abs() < PARABOLA_TOL && c > 4.0;
        return Ok(if parabola {
            ConicClass::ParabolaI
        } else {
            ConicClass::TypeI
        });
    }
    if mu > 0.0 && c > 0.0 {
        return Ok(if (mu + c - 1.0).abs() < PARABOLA_TOL {
            ConicClass::ParabolaII
        } else {
            ConicClass::TypeII
        });
    }
    if mu > 0.0 && c < 0.0 {
        return Ok(ConicClass::TypeIII);
    }
    Err(Error::OutOfRegion { mu, c })
}

/// Axis of the elliptic cylinder used by a [`ConicLoop`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopAxis {
    /// `(±√r, a cos ψ, b sin ψ)`.
    X,
    /// `(a cos ψ, ±√r, b sin ψ)`.
    Y,
    /// `(a cos ψ, b sin ψ, ±√r)`.
    Z,
}

/// One connected component of a non-degenerate conic, written over a
/// cylinder whose semi-axes are both below 1 so that the radicand
/// `r(ψ) = 1 − a²cos²ψ − b²sin²ψ` stays positive: a smooth closed loop in
/// `ψ ∈ [−π, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicLoop {
    pub axis: LoopAxis,
    pub a: f64,
    pub b: f64,
    pub sign: f64,
}

impl ConicLoop {
    fn assemble(&self, u: f64, v: f64, w: f64) -> [f64; 3] {
        match self.axis {
            LoopAxis::X => [w, u, v],
            LoopAxis::Y => [u, w, v],
            LoopAxis::Z => [u, v, w],
        }
    }

    pub fn point(&self, psi: f64) -> UnitPoint2 {
        self.jet(psi).0
    }

    /// Point and analytic first/second derivatives in `ψ`.
    pub fn jet(&self, psi: f64) -> (UnitPoint2, [f64; 3], [f64; 3]) {
        let (s, c) = psi.sin_cos();
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        let r = (1.0 - a2 * c * c - b2 * s * s).max(0.0);
        let r1 = (a2 - b2) * (2.0 * psi).sin();
        let r2 = 2.0 * (a2 - b2) * (2.0 * psi).cos();
        let w = self.sign * r.sqrt();
        let w1 = self.sign * r1 / (2.0 * r.sqrt());
        let w2 = self.sign * (r2 / (2.0 * r.sqrt()) - r1 * r1 / (4.0 * r * r.sqrt()));
        let p = self.assemble(self.a * c, self.b * s, w);
        let d1 = self.assemble(-self.a * s, self.b * c, w1);
        let d2 = self.assemble(-self.a * c, -self.b * s, w2);
        (UnitPoint2::from_array_unchecked(p), d1, d2)
    }
}

/// The two connected components of a non-degenerate conic as smooth loops,
/// in the conic's own coordinates (no rotation applied).
pub fn conic_loops(conic: &CylinderConic) -> Result<[ConicLoop; 2]> {
    require_non_degenerate(conic)?;
    let (p, q) = (conic.p, conic.q);
    let (p2, q2) = (p * p, q * q);
    let (axis, a, b) = match conic.kind {
        CylinderKind::Vertical if p < 1.0 && q < 1.0 => (LoopAxis::Z, p, q),
        CylinderKind::Vertical if q < 1.0 => {
            let h = vertical_to_horizontal(conic)?;
            (LoopAxis::Y, h.p, h.q)
        }
        CylinderKind::Vertical => (
            LoopAxis::X,
            ((1.0 - p2) * q2 / (q2 - p2)).sqrt(),
            (1.0 - p2).sqrt(),
        ),
        CylinderKind::Horizontal if p < 1.0 && q < 1.0 => (LoopAxis::Y, p, q),
        CylinderKind::Horizontal if q < 1.0 => {
            let v = horizontal_to_vertical(conic)?;
            (LoopAxis::Z, v.p, v.q)
        }
        CylinderKind::Horizontal => (
            LoopAxis::X,
            (1.0 - p2).sqrt(),
            ((1.0 - p2) * q2 / (q2 - p2)).sqrt(),
        ),
    };
    Ok([1.0, -1.0].map(|sign| ConicLoop { axis, a, b, sign }))
}

/// Samples both components of a conic with `n` points each.
pub fn sample_conic(conic: &CylinderConic, n: usize) -> Result<Vec<Vec<UnitPoint2>>> {
    Ok(conic_loops(conic)?
        .iter()
        .map(|l| {
            (0..n)
                .map(|k| l.point(-PI + 2.0 * PI * k as f64 / n as f64))
                .collect()
        })
        .collect())
}

/// Machine-readable conic report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConicReport {
    pub class: ConicClass,
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub mu: Option<f64>,
    pub c: Option<f64>,
}

pub fn report(conic: &CylinderConic) -> Result<ConicReport> {
    let class = classify(conic)?;
    if class.is_degenerate() {
        return Ok(ConicReport {
            class,
            d: None,
            e: None,
            mu: None,
            c: None,
        });
    }
    let f = focal_params(conic)?;
    let mc = momentum_coeffs(conic)?;
    Ok(ConicReport {
        class,
        d: Some(f.d),
        e: Some(f.e),
        mu: Some(mc.mu),
        c: Some(mc.c),
    })
}
