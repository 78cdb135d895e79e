//! Finite-difference weights on arbitrary (possibly non-uniform) stencils.

/// Weights for the derivatives of order `0..=max_order` at `x0` from
/// samples at `xs` (Fornberg's recurrence).
///
/// Returns `w` with `w[m][j]` the weight of sample `j` in the `m`-th
/// derivative.
pub fn weights(x0: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Index window of `width` consecutive samples around `i`, clamped to
/// `0..n`. Interior points get a centred window; points near the ends get
/// a one-sided window of the same width.
pub fn window(i: usize, n: usize, width: usize) -> std::ops::Range<usize> {
    debug_assert!(width <= n);
    let half = width / 2;
    let start = i.saturating_sub(half).min(n - width);
    start..start + width
}

/// First derivative at sample `i` with a 3-point stencil.
pub fn first_derivative(s: &[f64], values: &[f64], i: usize) -> f64 {
    derivative(s, values, i, 3, 1)
}

/// Second derivative at sample `i` with a 5-point stencil.
pub fn second_derivative(s: &[f64], values: &[f64], i: usize) -> f64 {
    derivative(s, values, i, 5, 2)
}

/// Derivative of order `order` at sample `i` from a `width`-point window.
pub fn derivative(s: &[f64], values: &[f64], i: usize, width: usize, order: usize) -> f64 {
    let w = window(i, s.len(), width);
    let wts = weights(s[i], &s[w.clone()], order);
    wts[order].iter().zip(&values[w]).map(|(a, b)| a * b).sum()
}

/// Central differences of a function of one variable: returns
/// `(f', f'')` at `x` with step `h`, using the 3-point first-derivative
/// and 5-point second-derivative stencils.
pub fn central<F>(f: F, x: f64, h: f64) -> ([f64; 4], [f64; 4])
where
    F: Fn(f64) -> [f64; 4],
{
    let fm2 = f(x - 2.0 * h);
    let fm1 = f(x - h);
    let f0 = f(x);
    let fp1 = f(x + h);
    let fp2 = f(x + 2.0 * h);
    let mut d1 = [0.0; 4];
    let mut d2 = [0.0; 4];
    for k in 0..4 {
        d1[k] = (fp1[k] - fm1[k]) / (2.0 * h);
        d2[k] = (-fp2[k] + 16.0 * fp1[k] - 30.0 * f0[k] + 16.0 * fm1[k] - fm2[k]) / (12.0 * h * h);
    }
    (d1, d2)
}

/// Richardson-extrapolated central differences: combines [`central`] at
/// steps `h` and `h/2` to cancel the leading error term of each stencil.
pub fn central_richardson<F>(f: F, x: f64, h: f64) -> ([f64; 4], [f64; 4])
where
    F: Fn(f64) -> [f64; 4],
{
    let (a1, a2) = central(&f, x, h);
    let (b1, b2) = central(&f, x, 0.5 * h);
    let mut d1 = [0.0; 4];
    let mut d2 = [0.0; 4];
    for k in 0..4 {
        // 3-point first derivative: O(h²); 5-point second derivative: O(h⁴).
        d1[k] = (4.0 * b1[k] - a1[k]) / 3.0;
        d2[k] = (16.0 * b2[k] - a2[k]) / 15.0;
    }
    (d1, d2)
}
