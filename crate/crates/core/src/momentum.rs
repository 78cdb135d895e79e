//! Spherical angular momentum profiles `K(z)` and reconstruction of the
//! generating curve by quadratures.
//!
//! A curve on S² is determined up to a rotation about the z-axis by its
//! momentum as a function of height. Arc length and longitude follow from
//!
//! ```text
//! s(z) = ∫ dz / √(1 − z² − K(z)²),     λ(s) = ∫ K(z(s)) / (z(s)² − 1) ds.
//! ```
//!
//! Both integrals are taken in the variable `θ` of `z = m + h sin θ`, where
//! `m ± h` are the ends of the feasible interval. The substitution removes
//! the inverse-square-root singularity at turning points, so the integrands
//! are smooth on `[−π/2, π/2]`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::quadrature::{bisect, integrate, ArcTable};
use crate::sphere::{curvature_from_samples, momentum_from_samples, SampledCurve, UnitPoint2};
use crate::{Error, Result};

/// Default grid for [`feasible_intervals`].
pub const DEFAULT_GRID: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MomentumProfile {
    /// `K = k`, `|k| < 1`: great circles.
    Constant { k: f64 },
    /// `K = k₀ z`: small circles.
    Linear { k0: f64 },
    /// `K = σ z / √(μ + c z²)`: spherical conics.
    Quadric { mu: f64, c: f64, sign: f64 },
    /// `K = z(z² − 2) / √(4(a² + z²) − z⁴)`: profiles of the fake paraboloids.
    SpheroCylindrical { a: f64 },
}

impl MomentumProfile {
    pub fn constant(k: f64) -> Result<Self> {
        if !(k.abs() < 1.0) {
            return Err(Error::BadParameter(format!(
                "constant momentum needs |k| < 1, got {k}"
            )));
        }
        Ok(Self::Constant { k })
    }

    pub fn linear(k0: f64) -> Result<Self> {
        if !k0.is_finite() {
            return Err(Error::BadParameter("k0 must be finite".into()));
        }
        Ok(Self::Linear { k0 })
    }

    pub fn quadric(mu: f64, c: f64, sign: f64) -> Result<Self> {
        if !(mu.is_finite() && c.is_finite()) || (sign != 1.0 && sign != -1.0) {
            return Err(Error::BadParameter(format!(
                "bad quadric profile ({mu}, {c}, {sign})"
            )));
        }
        Ok(Self::Quadric { mu, c, sign })
    }

    pub fn sphero_cylindrical(a: f64) -> Result<Self> {
        if a == 0.0 || !a.is_finite() {
            return Err(Error::BadParameter(
                "sphero-cylindrical profile needs a ≠ 0".into(),
            ));
        }
        Ok(Self::SpheroCylindrical { a })
    }

    /// Whether `K` is defined at `z`.
    pub fn in_domain(&self, z: f64) -> bool {
        match *self {
            Self::Quadric { mu, c, .. } => mu + c * z * z > 0.0,
            Self::SpheroCylindrical { a } => 4.0 * (a * a + z * z) - z.powi(4) > 0.0,
            _ => true,
        }
    }

    pub fn k(&self, z: f64) -> f64 {
        match *self {
            Self::Constant { k } => k,
            Self::Linear { k0 } => k0 * z,
            Self::Quadric { mu, c, sign } => sign * z / (mu + c * z * z).sqrt(),
            Self::SpheroCylindrical { a } => {
                z * (z * z - 2.0) / (4.0 * (a * a + z * z) - z.powi(4)).sqrt()
            }
        }
    }

    /// `K′(z)`, which equals the geodesic curvature of the curve.
    pub fn dk(&self, z: f64) -> f64 {
        match *self {
            Self::Constant { .. } => 0.0,
            Self::Linear { k0 } => k0,
            Self::Quadric { mu, c, sign } => sign * mu * (mu + c * z * z).powf(-1.5),
            Self::SpheroCylindrical { a } => {
                let z2 = z * z;
                let q = 4.0 * (a * a + z2) - z2 * z2;
                let num = (3.0 * z2 - 2.0) * q - z * (z2 - 2.0) * (4.0 * z - 2.0 * z2 * z);
                num / q.powf(1.5)
            }
        }
    }

    /// `g(z) = 1 − z² − K(z)²`; NaN outside the domain of `K`.
    pub fn g(&self, z: f64) -> f64 {
        if !self.in_domain(z) {
            return f64::NAN;
        }
        let k = self.k(z);
        1.0 - z * z - k * k
    }

    pub fn dg(&self, z: f64) -> f64 {
        -2.0 * z - 2.0 * self.k(z) * self.dk(z)
    }

    /// `K(z)²` written as `N(z)/Q(z)` with polynomial `N`, `Q`; returns
    /// `(N(z), Q(z))` and the divided differences `([N](z, w), [Q](z, w))`.
    fn k2_parts(&self, z: f64, w: f64) -> ((f64, f64), (f64, f64)) {
        match *self {
            Self::Constant { k } => ((k * k, 1.0), (0.0, 0.0)),
            Self::Linear { k0 } => ((k0 * k0 * z * z, 1.0), (k0 * k0 * (z + w), 0.0)),
            Self::Quadric { mu, c, .. } => ((z * z, mu + c * z * z), (z + w, c * (z + w))),
            Self::SpheroCylindrical { a } => {
                // N = z⁶ − 4z⁴ + 4z², Q = 4a² + 4z² − z⁴.
                let (z2, w2) = (z * z, w * w);
                let d2 = z + w;
                let d4 = d2 * (z2 + w2);
                let d6 = d2 * (z2 * z2 + z2 * w2 + w2 * w2);
                let n = z2 * (z2 - 2.0) * (z2 - 2.0);
                let q = 4.0 * (a * a + z2) - z2 * z2;
                ((n, q), (d6 - 4.0 * d4 + 4.0 * d2, 4.0 * d2 - d4))
            }
        }
    }

    /// `(K(z)² − K(w)²)/(z − w)`, evaluated without cancellation.
    pub fn k2_divided(&self, z: f64, w: f64) -> f64 {
        let ((_, qz), (dn, dq)) = self.k2_parts(z, w);
        let ((nw, qw), _) = self.k2_parts(w, z);
        (dn * qw - nw * dq) / (qz * qw)
    }

    fn feasible(&self, z: f64) -> bool {
        self.g(z) > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointKind {
    TurningPoint,
    DomainEdge,
}

/// A maximal open interval of heights where `g(z) > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleInterval {
    pub z_lo: f64,
    pub z_hi: f64,
    pub lo_kind: EndpointKind,
    pub hi_kind: EndpointKind,
}

impl FeasibleInterval {
    pub fn contains(&self, z: f64) -> bool {
        z >= self.z_lo && z <= self.z_hi
    }

    fn half_width(&self) -> f64 {
        0.5 * (self.z_hi - self.z_lo)
    }
}

/// Locates the open intervals of `(−1, 1) ∩ dom K` where `g > 0` on a
/// uniform grid of `grid_n` cells, then refines each endpoint by bisection
/// down to adjacent floats.
pub fn feasible_intervals(p: &MomentumProfile, grid_n: usize) -> Result<Vec<FeasibleInterval>> {
    if grid_n < 64 {
        return Err(Error::BadParameter(format!("grid_n = {grid_n} < 64")));
    }
    let z_at = |i: usize| -1.0 + 2.0 * i as f64 / grid_n as f64;
    let kind = |outside: f64| {
        if p.in_domain(outside) {
            EndpointKind::TurningPoint
        } else {
            EndpointKind::DomainEdge
        }
    };
    let inside = |z: f64| p.feasible(z);
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..=grid_n {
        match (start, inside(z_at(i))) {
            (None, true) => start = Some(i),
            (Some(first), false) => {
                let below = first.checked_sub(1).map(z_at);
                out.push(refine(
                    p,
                    z_at(first),
                    z_at(i - 1),
                    below,
                    Some(z_at(i)),
                    &kind,
                ));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(first) = start {
        // g(±1) = −K² ≤ 0, so a run only reaches the last node if K(1) = 0.
        let below = first.checked_sub(1).map(z_at);
        out.push(refine(p, z_at(first), 1.0, below, None, &kind));
    }
    if out.is_empty() {
        return Err(Error::NoFeasibleRegion);
    }
    Ok(out)
}

fn refine(
    p: &MomentumProfile,
    first_in: f64,
    last_in: f64,
    below: Option<f64>,
    above: Option<f64>,
    kind: &dyn Fn(f64) -> EndpointKind,
) -> FeasibleInterval {
    let inside = |z: f64| p.feasible(z);
    let (lo_in, lo_out) = match below {
        Some(out) => bisect(inside, first_in, out, 0.0),
        None => (first_in, first_in),
    };
    let (hi_in, hi_out) = match above {
        Some(out) => bisect(inside, last_in, out, 0.0),
        None => (last_in, last_in),
    };
    FeasibleInterval {
        z_lo: lo_in,
        z_hi: hi_in,
        lo_kind: kind(lo_out),
        hi_kind: kind(hi_out),
    }
}

/// Integrands in `θ` for one feasible interval, `z = m + h sin θ`.
///
/// With `δ = π/2 − |θ|` and `z_e` the nearer end, `z − z_e = ∓2h sin²(δ/2)`.
/// At a turning point `g(z) = −(z − z_e)·S(z, z_e)` with
/// `S = (z + z_e) + [K²](z, z_e)`, so `ds/dθ = cos(δ/2)·√(2h/|S|)`, which is
/// smooth and free of cancellation up to the end.
struct Substitution<'a> {
    p: &'a MomentumProfile,
    h: f64,
    ends: [(f64, EndpointKind); 2],
}

impl<'a> Substitution<'a> {
    fn new(p: &'a MomentumProfile, iv: &FeasibleInterval) -> Result<Self> {
        let h = iv.half_width();
        if !(h > 0.0) {
            return Err(Error::NoFeasibleRegion);
        }
        let sub = Self {
            p,
            h,
            ends: [(iv.z_lo, iv.lo_kind), (iv.z_hi, iv.hi_kind)],
        };
        for (ze, kind) in sub.ends {
            if kind == EndpointKind::TurningPoint && !(sub.slope(ze, ze).abs() > 1e-8) {
                return Err(Error::QuadratureFailure(format!(
                    "turning point at z = {ze} is not a simple zero of 1 − z² − K²"
                )));
            }
        }
        Ok(sub)
    }

    fn slope(&self, z: f64, ze: f64) -> f64 {
        z + ze + self.p.k2_divided(z, ze)
    }

    fn end_of(&self, theta: f64) -> (f64, f64, EndpointKind) {
        let (ze, kind) = self.ends[usize::from(theta > 0.0)];
        let sign = if theta > 0.0 { -1.0 } else { 1.0 };
        (ze, sign, kind)
    }

    fn z(&self, theta: f64) -> f64 {
        let (ze, sign, _) = self.end_of(theta);
        let half = 0.5 * (FRAC_PI_2 - theta.abs()).max(0.0);
        ze + sign * 2.0 * self.h * half.sin().powi(2)
    }

    fn theta(&self, z: f64) -> f64 {
        let (lo, hi) = (self.ends[0].0, self.ends[1].0);
        let m = 0.5 * (lo + hi);
        ((z - m) / self.h).clamp(-1.0, 1.0).asin()
    }

    fn ds_dtheta(&self, theta: f64) -> f64 {
        let (ze, _, kind) = self.end_of(theta);
        let half = 0.5 * (FRAC_PI_2 - theta.abs()).max(0.0);
        let z = self.z(theta);
        match kind {
            EndpointKind::TurningPoint => {
                half.cos() * (2.0 * self.h / self.slope(z, ze).abs()).sqrt()
            }
            EndpointKind::DomainEdge => {
                let g = self.p.g(z);
                if g > 0.0 {
                    self.h * theta.cos() / g.sqrt()
                } else {
                    0.0
                }
            }
        }
    }

    fn dlambda_dtheta(&self, theta: f64) -> f64 {
        let z = self.z(theta);
        let z2 = z * z;
        if z2 >= 1.0 {
            return 0.0;
        }
        self.p.k(z) / (z2 - 1.0) * self.ds_dtheta(theta)
    }
}

/// Signed arc length from height `z0` to `z` along a monotone branch.
pub fn arc_from_z(p: &MomentumProfile, iv: &FeasibleInterval, z0: f64, z: f64) -> Result<f64> {
    let slack = 1e-12;
    for v in [z0, z] {
        if v < iv.z_lo - slack || v > iv.z_hi + slack {
            return Err(Error::OutOfDomain(v));
        }
    }
    if z == z0 {
        return Ok(0.0);
    }
    let sub = Substitution::new(p, iv)?;
    integrate(|t| sub.ds_dtheta(t), sub.theta(z0), sub.theta(z), 1e-11)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructOptions {
    pub step: f64,
    /// Number of monotone branches to stitch at turning points.
    pub branches: usize,
    /// Starting height; the lower end of the interval when `None`.
    pub start_z: Option<f64>,
    /// Panels of the cumulative tables.
    pub panels: usize,
}

impl ReconstructOptions {
    pub fn new(step: f64) -> Self {
        Self {
            step,
            branches: 1,
            start_z: None,
            panels: 64,
        }
    }
}

/// One monotone branch from `z_lo` to `z_hi`, sampled with uniform arc-length
/// `step`, starting at longitude 0.
pub fn reconstruct(p: &MomentumProfile, iv: &FeasibleInterval, step: f64) -> Result<SampledCurve> {
    reconstruct_with(p, iv, &ReconstructOptions::new(step))
}

/// General reconstruction: `branches` monotone pieces alternately climbing
/// and descending between the turning points, beginning at `start_z`.
pub fn reconstruct_with(
    p: &MomentumProfile,
    iv: &FeasibleInterval,
    opts: &ReconstructOptions,
) -> Result<SampledCurve> {
    if !(opts.step > 0.0) || opts.branches == 0 {
        return Err(Error::BadParameter(
            "step must be positive and branches ≥ 1".into(),
        ));
    }
    let sub = Substitution::new(p, iv)?;
    let tol = 1e-11;
    let arc = ArcTable::new(
        |t| sub.ds_dtheta(t),
        -FRAC_PI_2,
        FRAC_PI_2,
        opts.panels,
        tol,
    )?;
    let lon = ArcTable::new(
        |t| sub.dlambda_dtheta(t),
        -FRAC_PI_2,
        FRAC_PI_2,
        opts.panels,
        tol,
    )?;
    let total = arc.total();
    let lon_total = lon.total();
    if !(total > 0.0) {
        return Err(Error::NoFeasibleRegion);
    }

    // Position u along the stitched path maps to (θ, λ).
    let locate = |u: f64| -> Result<(f64, f64)> {
        let j = ((u / total).floor() as usize).min(opts.branches - 1);
        let r = u - j as f64 * total;
        if j % 2 == 0 {
            let theta = arc.inverse(r)?;
            Ok((theta, j as f64 * lon_total + lon.value(theta)?))
        } else {
            let theta = arc.inverse(total - r)?;
            Ok((theta, (j + 1) as f64 * lon_total - lon.value(theta)?))
        }
    };

    let u0 = match opts.start_z {
        None => 0.0,
        Some(z0) => {
            if !iv.contains(z0) {
                return Err(Error::OutOfDomain(z0));
            }
            arc.value(sub.theta(z0))?
        }
    };
    let end = opts.branches as f64 * total;
    let (_, lambda0) = locate(u0)?;
    let count = ((end - u0) / opts.step * (1.0 + 1e-12)).floor() as usize + 1;
    let mut s = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count);
    for k in 0..count {
        let sk = k as f64 * opts.step;
        let (theta, lambda) = locate((u0 + sk).min(end))?;
        let z = sub.z(theta);
        if z.abs() >= 1.0 {
            return Err(Error::OutOfDomain(z));
        }
        let r = (1.0 - z * z).sqrt();
        let l = lambda - lambda0;
        s.push(sk);
        points.push(UnitPoint2::normalized([r * l.cos(), r * l.sin(), z])?);
    }
    SampledCurve::new(s, points)
}

/// Largest deviations of the sampled momentum and curvature from `K(z)` and
/// `K′(z)` over interior samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub max_momentum_deviation: f64,
    pub max_curvature_deviation: f64,
    pub samples: usize,
}

pub fn validate_reconstruction(
    c: &SampledCurve,
    p: &MomentumProfile,
) -> Result<ReconstructionReport> {
    validate_reconstruction_where(c, p, |_| true)
}

/// As [`validate_reconstruction`], restricted to samples whose height passes
/// `keep`.
pub fn validate_reconstruction_where<F: Fn(f64) -> bool>(
    c: &SampledCurve,
    p: &MomentumProfile,
    keep: F,
) -> Result<ReconstructionReport> {
    let c = momentum_from_samples(curvature_from_samples(c.clone())?)?;
    let kappa = c.kappa.as_ref().expect("filled above");
    let momentum = c.momentum.as_ref().expect("filled above");
    let mut report = ReconstructionReport {
        max_momentum_deviation: 0.0,
        max_curvature_deviation: 0.0,
        samples: 0,
    };
    for i in c.interior() {
        let z = c.points[i].z;
        if !keep(z) {
            continue;
        }
        report.samples += 1;
        report.max_momentum_deviation = report
            .max_momentum_deviation
            .max((momentum[i] - p.k(z)).abs());
        report.max_curvature_deviation = report
            .max_curvature_deviation
            .max((kappa[i] - p.dk(z)).abs());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::sphere::{curves, geodesic_distance};

    fn single(p: &MomentumProfile) -> FeasibleInterval {
        let ivs = feasible_intervals(p, DEFAULT_GRID).unwrap();
        assert_eq!(ivs.len(), 1);
        ivs[0]
    }

    #[test]
    fn derivatives_are_exact() {
        let profiles = [
            MomentumProfile::linear(-1.3).unwrap(),
            MomentumProfile::quadric(1.0, -1.0, 1.0).unwrap(),
            MomentumProfile::quadric(-1.0 / 12.0, 5.0 / 3.0, -1.0).unwrap(),
            MomentumProfile::sphero_cylindrical(0.7).unwrap(),
            MomentumProfile::sphero_cylindrical(-2.0).unwrap(),
        ];
        for p in profiles {
            for z in [0.3, 0.47, 0.6] {
                if !p.in_domain(z - 1e-4) {
                    continue;
                }
                let h = 1e-5;
                let fd = (p.k(z + h) - p.k(z - h)) / (2.0 * h);
                assert!((fd - p.dk(z)).abs() < 1e-7, "{p:?} at {z}");
            }
        }
    }

    #[test]
    fn divided_differences_of_k_squared() {
        let profiles = [
            MomentumProfile::constant(0.3).unwrap(),
            MomentumProfile::linear(-1.3).unwrap(),
            MomentumProfile::quadric(1.0, -1.0, 1.0).unwrap(),
            MomentumProfile::sphero_cylindrical(0.7).unwrap(),
        ];
        for p in profiles {
            let (z, w) = (0.41, 0.23);
            let direct = (p.k(z).powi(2) - p.k(w).powi(2)) / (z - w);
            assert!((p.k2_divided(z, w) - direct).abs() < 1e-12, "{p:?}");
            let limit = 2.0 * p.k(w) * p.dk(w);
            assert!((p.k2_divided(w, w) - limit).abs() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn constant_profile_interval() {
        let p = MomentumProfile::constant(-0.5).unwrap();
        let iv = single(&p);
        assert!((iv.z_hi - 0.75f64.sqrt()).abs() < 1e-13);
        assert!((iv.z_lo + 0.75f64.sqrt()).abs() < 1e-13);
        assert_eq!(iv.lo_kind, EndpointKind::TurningPoint);
        assert!(MomentumProfile::constant(1.0).is_err());
    }

    #[test]
    fn type_three_interval() {
        let p = MomentumProfile::quadric(1.0, -1.0, 1.0).unwrap();
        let iv = single(&p);
        let z_star = ((3.0 - 5f64.sqrt()) / 2.0).sqrt();
        assert!((iv.z_hi - z_star).abs() < 1e-13 && (iv.z_lo + z_star).abs() < 1e-13);
    }

    #[test]
    fn parabola_intervals_avoid_the_undefined_band() {
        let p = MomentumProfile::quadric(-1.5, 5.0, 1.0).unwrap();
        let ivs = feasible_intervals(&p, DEFAULT_GRID).unwrap();
        assert_eq!(ivs.len(), 2);
        for iv in &ivs {
            assert!(iv.z_lo.abs() > 0.3f64.sqrt() && iv.z_hi.abs() > 0.3f64.sqrt());
        }
        assert!((ivs[1].z_lo - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((ivs[1].z_hi - 0.6f64.sqrt()).abs() < 1e-12);
        assert!((ivs[0].z_lo + ivs[1].z_hi).abs() < 1e-12);
        assert!(feasible_intervals(&p, 10).is_err());
    }

    #[test]
    fn no_feasible_region() {
        // μ + c z² < 0 everywhere.
        let p = MomentumProfile::quadric(-1.0, 0.5, 1.0).unwrap();
        assert!(matches!(
            feasible_intervals(&p, 256),
            Err(Error::NoFeasibleRegion)
        ));
    }

    #[test]
    fn great_circle_arc_length() {
        let p = MomentumProfile::constant(-0.5).unwrap();
        let iv = single(&p);
        let s = arc_from_z(&p, &iv, 0.0, 0.75f64.sqrt() * 0.7f64.sin()).unwrap();
        assert!((s - 0.7).abs() < 1e-9);
        assert_eq!(arc_from_z(&p, &iv, 0.2, 0.2).unwrap(), 0.0);
        let full = arc_from_z(&p, &iv, iv.z_lo, iv.z_hi).unwrap();
        assert!((full - PI).abs() < 1e-10);
    }

    #[test]
    fn small_circle_arc_length() {
        let delta = 1.0f64;
        let ch = delta.cosh();
        let p = MomentumProfile::linear(-delta.sinh()).unwrap();
        let iv = single(&p);
        for s in [0.1, 0.5, 0.9] {
            let z = (ch * s).sin() / ch;
            assert!((arc_from_z(&p, &iv, 0.0, z).unwrap() - s).abs() < 1e-9);
        }
    }

    #[test]
    fn reconstructs_great_circle() {
        let theta = PI / 3.0;
        let p = MomentumProfile::constant(-theta.cos()).unwrap();
        let iv = single(&p);
        let c = reconstruct(&p, &iv, 1e-3).unwrap();
        // The curve starts at the lowest point, μ_θ(−π/2).
        let target = |s: f64| curves::great_circle(theta, s - PI / 2.0);
        let angle = target(0.0).to_geo().lambda - c.points[0].to_geo().lambda;
        let dev =
            c.s.iter()
                .zip(&c.points)
                .map(|(&s, q)| geodesic_distance(q.rotate_z(angle), target(s)))
                .fold(0.0, f64::max);
        assert!(dev < 1e-6, "{dev}");
        let r = validate_reconstruction(&c, &p).unwrap();
        assert!(
            r.max_momentum_deviation < 1e-5 && r.max_curvature_deviation < 1e-5,
            "{r:?}"
        );
    }

    #[test]
    fn reconstructs_small_circle() {
        let delta = 1.0f64;
        let p = MomentumProfile::linear(-delta.sinh()).unwrap();
        let iv = single(&p);
        let c = reconstruct(&p, &iv, 1e-3).unwrap();
        // Lowest point of η_δ is (0, tanh δ, −1/cosh δ).
        let angle = FRAC_PI_2 - c.points[0].to_geo().lambda;
        for q in &c.points {
            assert!((q.rotate_z(angle).y - delta.tanh()).abs() < 1e-6);
        }
        let r = validate_reconstruction(&c, &p).unwrap();
        assert!((r.max_curvature_deviation) < 1e-5, "{r:?}");
    }

    #[test]
    fn reconstructs_type_one_conic() {
        let p = MomentumProfile::quadric(-1.0 / 12.0, 5.0 / 3.0, 1.0).unwrap();
        let ivs = feasible_intervals(&p, DEFAULT_GRID).unwrap();
        let iv = ivs[1];
        assert!(
            (iv.z_lo * iv.z_lo - 0.2).abs() < 1e-12 && (iv.z_hi * iv.z_hi - 0.25).abs() < 1e-12
        );
        let c = reconstruct_with(
            &p,
            &iv,
            &ReconstructOptions {
                branches: 4,
                ..ReconstructOptions::new(1e-3)
            },
        )
        .unwrap();
        for q in &c.points {
            let r = q.x * q.x / 4.0 + q.z * q.z / 0.25 - 1.0;
            assert!(r.abs() < 1e-5, "{r}");
        }
        let r = validate_reconstruction(&c, &p).unwrap();
        assert!(
            r.max_momentum_deviation < 5e-5 && r.max_curvature_deviation < 5e-5,
            "{r:?}"
        );
    }

    #[test]
    fn reconstructs_type_three_away_from_turning_points() {
        let p = MomentumProfile::quadric(1.0, -1.0, 1.0).unwrap();
        let iv = single(&p);
        let c = reconstruct(&p, &iv, 1e-3).unwrap();
        let z_star = iv.z_hi;
        let r = validate_reconstruction_where(&c, &p, |z| z.abs() < 0.95 * z_star).unwrap();
        assert!(r.samples > 100);
        assert!(
            r.max_momentum_deviation < 5e-5 && r.max_curvature_deviation < 5e-5,
            "{r:?}"
        );
    }

    #[test]
    fn different_starts_differ_by_a_rotation() {
        let p = MomentumProfile::quadric(1.0, -1.0, -1.0).unwrap();
        let iv = single(&p);
        let step = 1e-3;
        let a = reconstruct_with(
            &p,
            &iv,
            &ReconstructOptions {
                branches: 3,
                ..ReconstructOptions::new(step)
            },
        )
        .unwrap();
        let shift = 200;
        let z0 = a.points[shift].z;
        let b = reconstruct_with(
            &p,
            &iv,
            &ReconstructOptions {
                branches: 3,
                start_z: Some(z0),
                ..ReconstructOptions::new(step)
            },
        )
        .unwrap();
        let angle = a.points[shift].to_geo().lambda - b.points[0].to_geo().lambda;
        let mut worst: f64 = 0.0;
        for k in 0..b.len().min(a.len() - shift) {
            let d = geodesic_distance(b.points[k].rotate_z(angle), a.points[k + shift]);
            worst = worst.max(d);
        }
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn monotone_inversion_roundtrip() {
        let p = MomentumProfile::sphero_cylindrical(0.8).unwrap();
        let ivs = feasible_intervals(&p, DEFAULT_GRID).unwrap();
        let iv = ivs[0];
        let c = reconstruct(&p, &iv, 1e-2).unwrap();
        for (s, q) in c.s.iter().zip(&c.points).step_by(7) {
            let back = arc_from_z(&p, &iv, iv.z_lo, q.z).unwrap();
            assert!((back - s).abs() < 1e-9, "{back} vs {s}");
        }
        for w in c.points.windows(2) {
            assert!(w[1].z > w[0].z);
        }
    }
}
