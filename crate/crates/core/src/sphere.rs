//! Points on S² and S³, geodesic distance, arc-length sampled curves on S²
//! and their differential invariants.
//!
//! The orientation convention is `N = ξ × ξ̇`, so the geodesic curvature is
//! `κ = det(ξ, ξ̇, ξ̈)` and the spherical angular momentum with respect to
//! the equator `z = 0` is `K = −⟨N, e₃⟩ = ẋy − xẏ`. Reversing the
//! orientation flips the sign of `K`; both signs describe the same curve.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::{fd, Error, Result};

/// Tolerance on the unit-norm invariant of [`UnitPoint2`] / [`UnitPoint3`].
pub const UNIT_TOL: f64 = 1e-12;

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    dot3(a, cross3(b, c))
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// A point of the unit 2-sphere in R³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitPoint2 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitPoint2 {
    pub const NORTH: UnitPoint2 = UnitPoint2 {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Checked constructor: fails unless `x² + y² + z² = 1` within
    /// [`UNIT_TOL`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::BadParameter(format!(
                "({x}, {y}, {z}) is not on the unit sphere"
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Projects a non-zero vector radially onto the sphere.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::DegenerateInput("zero vector".into()));
        }
        Ok(Self {
            x: v[0] / n,
            y: v[1] / n,
            z: v[2] / n,
        })
    }

    pub(crate) fn from_array_unchecked(v: [f64; 3]) -> Self {
        Self {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn antipode(self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Rotation by `angle` about the z-axis.
    pub fn rotate_z(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
            z: self.z,
        }
    }

    pub fn to_geo(self) -> GeoCoord {
        cartesian_to_geo(self)
    }
}

/// Geographical coordinates: longitude `lambda ∈ (−π, π]`, latitude
/// `phi ∈ [−π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoCoord {
    pub lambda: f64,
    pub phi: f64,
}

impl GeoCoord {
    pub fn new(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda > -PI && lambda <= PI) || !(-PI / 2.0..=PI / 2.0).contains(&phi) {
            return Err(Error::BadParameter(format!(
                "geographic coordinates ({lambda}, {phi}) out of range"
            )));
        }
        Ok(Self { lambda, phi })
    }
}

/// A point of the unit 3-sphere in R⁴.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitPoint3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl UnitPoint3 {
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Result<Self> {
        let n2 = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
        if !n2.is_finite() || (n2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::BadParameter(format!(
                "({x1}, {x2}, {x3}, {x4}) is not on the unit 3-sphere"
            )));
        }
        Ok(Self { x1, x2, x3, x4 })
    }

    pub(crate) fn from_array_unchecked(v: [f64; 4]) -> Self {
        Self {
            x1: v[0],
            x2: v[1],
            x3: v[2],
            x4: v[3],
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn norm(self) -> f64 {
        self.to_array().iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Great-circle distance on S², in radians, in `[0, π]`.
pub fn geodesic_distance(p: UnitPoint2, q: UnitPoint2) -> f64 {
    dot3(p.to_array(), q.to_array()).clamp(-1.0, 1.0).acos()
}

pub fn geo_to_cartesian(g: GeoCoord) -> UnitPoint2 {
    let (sl, cl) = g.lambda.sin_cos();
    let (sp, cp) = g.phi.sin_cos();
    UnitPoint2 {
        x: cp * cl,
        y: cp * sl,
        z: sp,
    }
}

pub fn cartesian_to_geo(p: UnitPoint2) -> GeoCoord {
    let mut lambda = p.y.atan2(p.x);
    if lambda <= -PI {
        lambda += 2.0 * PI;
    }
    let phi = p.z.clamp(-1.0, 1.0).asin();
    GeoCoord { lambda, phi }
}

/// Spherical linear interpolation between two non-antipodal unit points.
pub fn slerp(p: UnitPoint2, q: UnitPoint2, t: f64) -> UnitPoint2 {
    let omega = geodesic_distance(p, q);
    if omega < 1e-12 {
        let v = [
            p.x + t * (q.x - p.x),
            p.y + t * (q.y - p.y),
            p.z + t * (q.z - p.z),
        ];
        return UnitPoint2::normalized(v).unwrap_or(p);
    }
    let s = omega.sin();
    let a = ((1.0 - t) * omega).sin() / s;
    let b = (t * omega).sin() / s;
    let v = [a * p.x + b * q.x, a * p.y + b * q.y, a * p.z + b * q.z];
    UnitPoint2::normalized(v).unwrap_or(p)
}

/// A discrete curve on S² sampled by arc length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub s: Vec<f64>,
    pub points: Vec<UnitPoint2>,
    pub kappa: Option<Vec<f64>>,
    pub momentum: Option<Vec<f64>>,
}

impl SampledCurve {
    /// Builds a curve and checks the arc-length invariants.
    pub fn new(s: Vec<f64>, points: Vec<UnitPoint2>) -> Result<Self> {
        let c = Self {
            s,
            points,
            kappa: None,
            momentum: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(s: Vec<f64>, points: Vec<UnitPoint2>) -> Self {
        Self {
            s,
            points,
            kappa: None,
            momentum: None,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest gap between consecutive arc-length samples.
    pub fn max_step(&self) -> f64 {
        self.s.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Checks array lengths, unit norms, strictly increasing `s`, and the
    /// chord-speed bound `|Δξ|/Δs ∈ [1 − 10h², 1]` with `h` the largest gap.
    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        if n < 3 {
            return Err(Error::TooFewSamples { needed: 3, got: n });
        }
        if self.s.len() != n
            || self.kappa.as_ref().is_some_and(|k| k.len() != n)
            || self.momentum.as_ref().is_some_and(|k| k.len() != n)
        {
            return Err(Error::InvalidCurve("array lengths differ".into()));
        }
        for p in &self.points {
            let n2 = dot3(p.to_array(), p.to_array());
            if (n2 - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidCurve(format!(
                    "sample off the sphere: |p|² = {n2}"
                )));
            }
        }
        let h = self.max_step();
        for (i, w) in self.s.windows(2).enumerate() {
            let ds = w[1] - w[0];
            if !(ds > 0.0) {
                return Err(Error::InvalidCurve(format!(
                    "arc length not increasing at {i}"
                )));
            }
            let a = self.points[i].to_array();
            let b = self.points[i + 1].to_array();
            let chord = norm3([b[0] - a[0], b[1] - a[1], b[2] - a[2]]);
            let speed = chord / ds;
            if speed > 1.0 + 1e-9 || speed < 1.0 - 10.0 * h * h {
                return Err(Error::InvalidCurve(format!(
                    "chord speed {speed} at sample {i} violates the arc-length bound"
                )));
            }
        }
        Ok(())
    }

    fn component(&self, k: usize) -> Vec<f64> {
        self.points.iter().map(|p| p.to_array()[k]).collect()
    }

    /// Tangent `ξ̇` and acceleration `ξ̈` at sample `i` (3-point first and
    /// 5-point second derivative stencils).
    pub fn jet(&self, i: usize) -> ([f64; 3], [f64; 3]) {
        let comps = [self.component(0), self.component(1), self.component(2)];
        jet_from_components(&self.s, &comps, i)
    }

    /// Samples whose first and second derivative stencils are both
    /// centred.
    pub fn interior(&self) -> std::ops::Range<usize> {
        2..self.len().saturating_sub(2)
    }
}

fn jet_from_components(s: &[f64], comps: &[Vec<f64>; 3], i: usize) -> ([f64; 3], [f64; 3]) {
    let mut d1 = [0.0; 3];
    let mut d2 = [0.0; 3];
    for k in 0..3 {
        d1[k] = fd::first_derivative(s, &comps[k], i);
        d2[k] = fd::second_derivative(s, &comps[k], i);
    }
    (d1, d2)
}

fn require_five(c: &SampledCurve) -> Result<()> {
    if c.len() < 5 {
        return Err(Error::TooFewSamples {
            needed: 5,
            got: c.len(),
        });
    }
    Ok(())
}

/// Fills `kappa` with `det(ξ, ξ̇, ξ̈)` from finite differences.
pub fn curvature_from_samples(mut c: SampledCurve) -> Result<SampledCurve> {
    require_five(&c)?;
    let comps = [c.component(0), c.component(1), c.component(2)];
    let kappa = (0..c.len())
        .map(|i| {
            let (d1, d2) = jet_from_components(&c.s, &comps, i);
            det3(c.points[i].to_array(), d1, d2)
        })
        .collect();
    c.kappa = Some(kappa);
    Ok(c)
}

/// Fills `momentum` with `ẋy − xẏ` from finite differences.
pub fn momentum_from_samples(mut c: SampledCurve) -> Result<SampledCurve> {
    require_five(&c)?;
    let xs = c.component(0);
    let ys = c.component(1);
    let momentum = (0..c.len())
        .map(|i| {
            let dx = fd::first_derivative(&c.s, &xs, i);
            let dy = fd::first_derivative(&c.s, &ys, i);
            dx * ys[i] - xs[i] * dy
        })
        .collect();
    c.momentum = Some(momentum);
    Ok(c)
}

/// Reparametrizes a polyline on S² by cumulative geodesic chord length and
/// resamples it with a uniform step no larger than `target_step`, moving
/// along great-circle arcs between input points.
pub fn resample_by_arclength(points: &[UnitPoint2], target_step: f64) -> Result<SampledCurve> {
    if !(target_step > 0.0) {
        return Err(Error::BadParameter(format!(
            "step {target_step} must be positive"
        )));
    }
    if points.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: points.len(),
        });
    }
    let mut cumulative = Vec::with_capacity(points.len());
    cumulative.push(0.0);
    for w in points.windows(2) {
        let d = geodesic_distance(w[0], w[1]);
        cumulative.push(cumulative.last().unwrap() + d);
    }
    let total = *cumulative.last().unwrap();
    if !(total > 0.0) {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let segments = ((total / target_step) - 1e-9).ceil().max(2.0) as usize;
    let step = total / segments as f64;
    let mut s = Vec::with_capacity(segments + 1);
    let mut out = Vec::with_capacity(segments + 1);
    let mut j = 0;
    for k in 0..=segments {
        let target = if k == segments {
            total
        } else {
            k as f64 * step
        };
        while j + 2 < cumulative.len() && cumulative[j + 1] < target {
            j += 1;
        }
        let len = cumulative[j + 1] - cumulative[j];
        let t = if len > 0.0 {
            ((target - cumulative[j]) / len).clamp(0.0, 1.0)
        } else {
            0.0
        };
        s.push(target);
        out.push(slerp(points[j], points[j + 1], t));
    }
    SampledCurve::new(s, out)
}

/// Closed-form arc-length curves on S².
pub mod curves {
    use super::{SampledCurve, UnitPoint2};

    /// The parallel `z = sin φ₀`.
    pub fn parallel(phi0: f64, s: f64) -> UnitPoint2 {
        let c = phi0.cos();
        UnitPoint2 {
            x: c * (s / c).cos(),
            y: c * (s / c).sin(),
            z: phi0.sin(),
        }
    }

    /// The great circle `sin θ · y = cos θ · z`.
    pub fn great_circle(theta: f64, s: f64) -> UnitPoint2 {
        UnitPoint2 {
            x: s.cos(),
            y: theta.cos() * s.sin(),
            z: theta.sin() * s.sin(),
        }
    }

    /// The small circle `y = tanh δ`.
    pub fn small_circle(delta: f64, s: f64) -> UnitPoint2 {
        let ch = delta.cosh();
        UnitPoint2 {
            x: (ch * s).cos() / ch,
            y: delta.tanh(),
            z: (ch * s).sin() / ch,
        }
    }

    /// Samples `f` on `s = s0 + k·step`, `k = 0..n`.
    pub fn sample<F: Fn(f64) -> UnitPoint2>(f: F, s0: f64, step: f64, n: usize) -> SampledCurve {
        let s: Vec<f64> = (0..n).map(|k| s0 + k as f64 * step).collect();
        let points = s.iter().map(|&v| f(v)).collect();
        SampledCurve::new_unchecked(s, points)
    }
}

/// Shortest round-trip decimal representation (at most 17 significant
/// digits), switching to exponent notation for very large or small
/// magnitudes.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub const CSV_HEADER: &str = "s,x,y,z,kappa,momentum";

/// Writes the curve CSV: header `s,x,y,z,kappa,momentum`, empty fields
/// for invariants that have not been computed.
pub fn write_curve_csv<W: Write>(c: &SampledCurve, mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let mut line = String::new();
    for i in 0..c.len() {
        line.clear();
        let p = c.points[i];
        let _ = write!(
            line,
            "{},{},{},{},",
            format_float(c.s[i]),
            format_float(p.x),
            format_float(p.y),
            format_float(p.z)
        );
        if let Some(k) = &c.kappa {
            line.push_str(&format_float(k[i]));
        }
        line.push(',');
        if let Some(m) = &c.momentum {
            line.push_str(&format_float(m[i]));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Parses the curve CSV written by [`write_curve_csv`].
pub fn read_curve_csv<R: BufRead>(r: R) -> Result<SampledCurve> {
    let mut lines = r.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != CSV_HEADER {
        return Err(Error::InvalidCurve(format!("unexpected header {header:?}")));
    }
    let parse = |f: &str| -> Result<f64> {
        f.trim()
            .parse()
            .map_err(|_| Error::InvalidCurve(format!("bad number {f:?}")))
    };
    let (mut s, mut points, mut kappa, mut momentum) = (vec![], vec![], vec![], vec![]);
    let (mut has_k, mut has_m) = (true, true);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::InvalidCurve(format!("expected 6 fields: {line:?}")));
        }
        s.push(parse(fields[0])?);
        points.push(UnitPoint2 {
            x: parse(fields[1])?,
            y: parse(fields[2])?,
            z: parse(fields[3])?,
        });
        match fields[4].trim() {
            "" => has_k = false,
            f => kappa.push(parse(f)?),
        }
        match fields[5].trim() {
            "" => has_m = false,
            f => momentum.push(parse(f)?),
        }
    }
    Ok(SampledCurve {
        s,
        points,
        kappa: has_k.then_some(kappa),
        momentum: has_m.then_some(momentum),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    use super::curves::*;
    use super::*;

    const E1: UnitPoint2 = UnitPoint2 {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };

    #[test]
    fn distances_of_special_pairs() {
        let n = UnitPoint2::NORTH;
        assert_eq!(geodesic_distance(n, n), 0.0);
        let e2 = UnitPoint2::new(0.0, 1.0, 0.0).unwrap();
        assert!((geodesic_distance(E1, e2) - FRAC_PI_2).abs() < 1e-15);
        assert!((geodesic_distance(E1, E1.antipode()) - PI).abs() < 1e-15);
    }

    #[test]
    fn near_identical_points_do_not_produce_nan() {
        let p = UnitPoint2::normalized([1.0, 1e-9, 0.0]).unwrap();
        let d = geodesic_distance(p, p);
        assert!(d.is_finite() && d < 1e-7);
    }

    #[test]
    fn geographic_axes() {
        let c = |l, p| geo_to_cartesian(GeoCoord::new(l, p).unwrap()).to_array();
        let close = |a: [f64; 3], b: [f64; 3]| a.iter().zip(b).all(|(u, v)| (u - v).abs() < 1e-15);
        assert!(close(c(0.0, 0.0), [1.0, 0.0, 0.0]));
        assert!(close(c(FRAC_PI_2, 0.0), [0.0, 1.0, 0.0]));
        assert!(close(c(0.0, FRAC_PI_2), [0.0, 0.0, 1.0]));
        assert!(GeoCoord::new(-PI, 0.0).is_err());
        assert!(GeoCoord::new(0.0, 2.0).is_err());
    }

    #[test]
    fn unit_constructors_enforce_norm() {
        assert!(UnitPoint2::new(1.0, 1e-5, 0.0).is_err());
        assert!(UnitPoint3::new(0.5, 0.5, 0.5, 0.5).is_ok());
        assert!(UnitPoint3::new(0.5, 0.5, 0.5, 0.6).is_err());
    }

    #[test]
    fn parallel_curvature_is_tan_phi0() {
        let c = sample(|s| parallel(FRAC_PI_4, s), 0.0, 1e-3, 400);
        c.validate().unwrap();
        let c = curvature_from_samples(c).unwrap();
        for k in c.kappa.unwrap() {
            assert!((k - 1.0).abs() < 1e-5, "{k}");
        }
    }

    #[test]
    fn great_circle_is_geodesic_with_constant_momentum() {
        let c = sample(|s| great_circle(FRAC_PI_3, s), -1.0, 1e-3, 2000);
        let c = momentum_from_samples(curvature_from_samples(c).unwrap()).unwrap();
        for (k, m) in c.kappa.unwrap().iter().zip(c.momentum.unwrap()) {
            assert!(k.abs() < 1e-6);
            assert!((m + 0.5).abs() < 1e-6);
        }
        let c =
            momentum_from_samples(sample(|s| great_circle(FRAC_PI_2, s), 0.0, 1e-3, 100)).unwrap();
        assert!(c.momentum.unwrap().iter().all(|m| m.abs() < 1e-12));
    }

    #[test]
    fn small_circle_curvature_and_momentum() {
        let c = sample(|s| small_circle(1.0, s), 0.0, 1e-3, 3000);
        let c = momentum_from_samples(curvature_from_samples(c).unwrap()).unwrap();
        let sh = 1f64.sinh();
        for k in c.kappa.as_ref().unwrap() {
            assert!((k + sh).abs() < 1e-5, "{k}");
        }
        let (i, p) = c
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.z - 0.3).abs().total_cmp(&(b.1.z - 0.3).abs()))
            .unwrap();
        let m = c.momentum.as_ref().unwrap()[i];
        assert!((m + sh * p.z).abs() < 1e-5);
        assert!((p.z - 0.3).abs() < 1e-3);
        // K² + z² ≤ 1 along the sampled curve.
        for (m, p) in c.momentum.unwrap().iter().zip(&c.points) {
            assert!(m * m + p.z * p.z <= 1.0 + 1e-6);
        }
    }

    #[test]
    fn too_few_samples() {
        let c = sample(|s| great_circle(1.0, s), 0.0, 0.1, 4);
        assert!(matches!(
            curvature_from_samples(c.clone()),
            Err(Error::TooFewSamples { .. })
        ));
        assert!(momentum_from_samples(c).is_err());
    }

    #[test]
    fn resample_parallel_has_closed_form_arc_length() {
        let phi = FRAC_PI_3;
        let dl = 1e-3;
        let pts: Vec<UnitPoint2> = (0..=1000)
            .map(|k| {
                geo_to_cartesian(GeoCoord {
                    lambda: k as f64 * dl,
                    phi,
                })
            })
            .collect();
        let c = resample_by_arclength(&pts, phi.cos() * dl).unwrap();
        assert_eq!(c.len(), 1001);
        for w in c.s.windows(2) {
            assert!((w[1] - w[0] - phi.cos() * dl).abs() < 1e-9);
        }
    }

    #[test]
    fn resample_equator_arc_and_idempotence() {
        let a = UnitPoint2::new(1.0, 0.0, 0.0).unwrap();
        let b = geo_to_cartesian(GeoCoord {
            lambda: 1.0,
            phi: 0.0,
        });
        let c = resample_by_arclength(&[a, b], PI / 100.0).unwrap();
        for w in c.s.windows(2) {
            assert!((w[1] - w[0] - 1.0 / 32.0).abs() < 1e-12);
        }
        assert!(c.points.iter().all(|p| p.z.abs() < 1e-15));
        let again = resample_by_arclength(&c.points, 1.0 / 32.0).unwrap();
        assert_eq!(again.len(), c.len());
        for (p, q) in again.points.iter().zip(&c.points) {
            assert!(geodesic_distance(*p, *q) < 1e-9);
        }
    }

    #[test]
    fn resample_rejects_coincident_points() {
        assert!(matches!(
            resample_by_arclength(&[E1, E1, E1], 0.1),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn validate_rejects_non_arclength_sampling() {
        let c = sample(|s| great_circle(1.0, 2.0 * s), 0.0, 1e-2, 10);
        assert!(c.validate().is_err());
    }

    #[test]
    fn csv_roundtrip_is_bit_exact() {
        let c = sample(|s| small_circle(0.4, s), 0.0, 0.01, 12);
        let c = curvature_from_samples(c).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("s,x,y,z,kappa,momentum\n"));
        assert!(text.lines().nth(1).unwrap().ends_with(','));
        let back = read_curve_csv(&buf[..]).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn float_format_is_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-20, -2.5e300, 12345.678] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let digits = s
                .trim_start_matches('-')
                .split('e')
                .next()
                .unwrap()
                .chars()
                .filter(|c| c.is_ascii_digit())
                .collect::<String>();
            assert!(digits.trim_start_matches('0').len() <= 17);
        }
    }
}
