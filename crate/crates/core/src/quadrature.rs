//! Adaptive Gauss–Kronrod quadrature and cumulative-integral tables with
//! monotone inversion.

use crate::{Error, Result};

/// Gauss–Kronrod 7/15 nodes on [0, 1] (positive half, centre last).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the odd-indexed Kronrod nodes (plus the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Default evaluation budget of [`integrate`].
pub const MAX_EVALUATIONS: usize = 1_000_000;

/// One 15-point Kronrod panel: returns (estimate, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrates `f` over `[a, b]` to absolute accuracy `abs_tol` by globally
/// adaptive bisection of GK15 panels.
///
/// Fails with [`Error::QuadratureFailure`] on non-finite integrand values
/// or when the tolerance is not met within [`MAX_EVALUATIONS`] evaluations.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, abs_tol).map(|v| -v);
    }
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let (total, err) = panels
            .iter()
            .fold((0.0, 0.0), |(t, r), p| (t + p.2, r + p.3));
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::QuadratureFailure("non-finite integrand".into()));
        }
        if err <= abs_tol {
            return Ok(total);
        }
        if evaluations >= MAX_EVALUATIONS {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {err:e} above {abs_tol:e} after {evaluations} evaluations"
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Panel cannot be split further in floating point.
            return Ok(total);
        }
        let (v1, e1) = gk15(&f, pa, mid);
        let (v2, e2) = gk15(&f, mid, pb);
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
        evaluations += 30;
    }
}

/// Cumulative integral `F(x) = ∫_a^x f` of a non-negative integrand on
/// `[a, b]`, tabulated on uniform panels so that evaluation and inversion
/// only ever integrate within one panel.
#[derive(Debug, Clone)]
pub struct ArcTable<F> {
    f: F,
    nodes: Vec<f64>,
    cumulative: Vec<f64>,
    tol: f64,
}

impl<F: Fn(f64) -> f64> ArcTable<F> {
    pub fn new(f: F, a: f64, b: f64, panels: usize, tol: f64) -> Result<Self> {
        let panels = panels.max(1);
        let nodes: Vec<f64> = (0..=panels)
            .map(|i| a + (b - a) * i as f64 / panels as f64)
            .collect();
        let mut cumulative = Vec::with_capacity(nodes.len());
        cumulative.push(0.0);
        let panel_tol = tol / panels as f64;
        for w in nodes.windows(2) {
            let v = integrate(&f, w[0], w[1], panel_tol)?;
            cumulative.push(cumulative.last().unwrap() + v);
        }
        Ok(Self {
            f,
            nodes,
            cumulative,
            tol: panel_tol,
        })
    }

    pub fn lower(&self) -> f64 {
        self.nodes[0]
    }

    pub fn upper(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn integrand(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn panel_of(&self, x: f64) -> usize {
        let n = self.nodes.len() - 1;
        let t = (x - self.lower()) / (self.upper() - self.lower()) * n as f64;
        (t.floor().max(0.0) as usize).min(n - 1)
    }

    /// `F(x)`, for `x` clamped into the table range.
    pub fn value(&self, x: f64) -> Result<f64> {
        let x = x.clamp(self.lower(), self.upper());
        let i = self.panel_of(x);
        Ok(self.cumulative[i] + integrate(&self.f, self.nodes[i], x, self.tol)?)
    }

    /// Solves `F(x) = target` for `x`, assuming `f > 0` in the interior.
    pub fn inverse(&self, target: f64) -> Result<f64> {
        if target <= 0.0 {
            return Ok(self.lower());
        }
        if target >= self.total() {
            return Ok(self.upper());
        }
        let i = self.cumulative.partition_point(|&c| c <= target) - 1;
        let i = i.min(self.nodes.len() - 2);
        let (mut lo, mut hi) = (self.nodes[i], self.nodes[i + 1]);
        let base = self.cumulative[i];
        let (panel_lo, panel_hi) = (lo, hi);
        let mut x = lo + (hi - lo) * (target - base) / (self.cumulative[i + 1] - base);
        for _ in 0..100 {
            let fx = base + integrate(&self.f, panel_lo, x, self.tol)? - target;
            if fx.abs() <= 1e-15 * target.abs().max(1.0) {
                return Ok(x);
            }
            if fx > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let slope = (self.f)(x);
            let newton = x - fx / slope;
            x = if slope.is_finite() && slope > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 4.0 * f64::EPSILON * (panel_hi - panel_lo).abs().max(x.abs()) {
                return Ok(x);
            }
        }
        Ok(x)
    }
}

/// Locates a sign change of `f` in `[a, b]` by bisection until the bracket
/// is narrower than `tol` or cannot shrink in floating point. `inside(x)`
/// reports whether `x` belongs to the side where `a` lies.
pub fn bisect<P: Fn(f64) -> bool>(inside: P, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    for _ in 0..2000 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= tol || mid == a || mid == b {
            break;
        }
        if inside(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-13).unwrap();
        assert!((v - 8.0).abs() < 1e-13);
        let v = integrate(|x| 3.0 * x * x, 2.0, 0.0, 1e-13).unwrap();
        assert!((v + 8.0).abs() < 1e-13);
    }

    #[test]
    fn handles_mild_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} = 2, integrable but unbounded.
        let v = integrate(
            |x: f64| if x > 0.0 { x.powf(-0.5) } else { 0.0 },
            0.0,
            1.0,
            1e-8,
        );
        assert!((v.unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn reports_failure_on_nan() {
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn table_inversion_roundtrips() {
        let table = ArcTable::new(|x: f64| 1.0 + x.cos() * 0.5, 0.0, 3.0, 16, 1e-13).unwrap();
        for &x in &[0.1, 0.77, 1.5, 2.99] {
            let s = table.value(x).unwrap();
            let exact = x + 0.5 * x.sin();
            assert!((s - exact).abs() < 1e-13);
            assert!((table.inverse(s).unwrap() - x).abs() < 1e-13);
        }
    }

    #[test]
    fn bisection_reaches_adjacent_floats() {
        let (a, b) = bisect(|x| x * x < 2.0, 1.0, 2.0, 0.0);
        assert!(b - a <= 4.0 * f64::EPSILON);
        assert!((a - 2f64.sqrt()).abs() < 1e-15);
    }
}
