//! Quadrature and interpolation utilities.

use num_complex::Complex64;

/// Adaptive Simpson quadrature on a finite interval.
///
/// The error control compares a Simpson estimate against its two-panel
/// refinement; intervals are bisected until the Richardson error estimate is
/// below the local tolerance budget.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let err = (left + right - whole) / 15.0;
        if depth == 0 || err.abs() <= tol {
            return left + right + err;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    // Forced initial partition so narrow features cannot be missed by the
    // first coarse error estimate.
    let panels = 32;
    let mut total = 0.0;
    for k in 0..panels {
        let x0 = a + (b - a) * k as f64 / panels as f64;
        let x1 = a + (b - a) * (k + 1) as f64 / panels as f64;
        let m = 0.5 * (x0 + x1);
        let (fa, fm, fb) = (f(x0), f(m), f(x1));
        let whole = simpson(fa, fm, fb, x1 - x0);
        total += recurse(f, x0, x1, fa, fm, fb, whole, tol / panels as f64, 44);
    }
    total
}

/// Complex-valued adaptive quadrature (real and imaginary parts share the
/// refinement through a combined error estimate).
pub fn adaptive_simpson_complex(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Complex64 {
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + 4.0 * fm + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let err = (left + right - whole) / 15.0;
        if depth == 0 || err.norm() <= tol {
            return left + right + err;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let panels = 32;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let x0 = a + (b - a) * k as f64 / panels as f64;
        let x1 = a + (b - a) * (k + 1) as f64 / panels as f64;
        let m = 0.5 * (x0 + x1);
        let (fa, fm, fb) = (f(x0), f(m), f(x1));
        let whole = simpson(fa, fm, fb, x1 - x0);
        total += recurse(f, x0, x1, fa, fm, fb, whole, tol / panels as f64, 44);
    }
    total
}

/// Integrates `f` over `(-∞, b]` by splitting at unit distance from `b` and
/// mapping the tail through `s = b - 1 + (1 - τ)/τ`.
pub fn adaptive_simpson_halfline(f: &dyn Fn(f64) -> f64, b: f64, tol: f64) -> f64 {
    let near = adaptive_simpson(f, b - 1.0, b, 0.5 * tol);
    // Tail (-∞, b-1]: substitute s = b - 1 - (1-τ)/τ, τ ∈ (0, 1], ds = dτ/τ².
    let tail = adaptive_simpson(
        &|tau: f64| {
            if tau <= 0.0 {
                return 0.0;
            }
            let s = b - 1.0 - (1.0 - tau) / tau;
            f(s) / (tau * tau)
        },
        1e-13,
        1.0,
        0.5 * tol,
    );
    near + tail
}

/// Trapezoid weights for a (possibly non-uniform) strictly increasing grid.
pub fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = nodes[i + 1] - nodes[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}

/// Local cubic (4-point Lagrange) interpolation of uniformly gridded
/// samples; fourth-order accurate in the spacing. Clamps to the boundary
/// stencil outside the grid.
#[derive(Debug, Clone)]
pub struct CubicInterp {
    x0: f64,
    dx: f64,
    values: Vec<f64>,
}

impl CubicInterp {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>) -> Self {
        assert!(values.len() >= 4, "need at least four samples");
        Self { x0, dx, values }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let s = (x - self.x0) / self.dx;
        // Stencil i-1..i+2 centered on the panel containing x.
        let i0 = ((s.floor() as isize) - 1).clamp(0, n as isize - 4) as usize;
        let t = s - i0 as f64;
        let mut acc = 0.0;
        for (k, &v) in self.values[i0..i0 + 4].iter().enumerate() {
            let mut l = 1.0;
            for m in 0..4 {
                if m != k {
                    l *= (t - m as f64) / (k as f64 - m as f64);
                }
            }
            acc += v * l;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_matches_closed_forms() {
        let v = adaptive_simpson(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-11);
        let g = adaptive_simpson(&|x: f64| (-x * x).exp(), -8.0, 8.0, 1e-12);
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn halfline_tail_integration() {
        // ∫_{-∞}^{0} e^{x} dx = 1.
        let v = adaptive_simpson_halfline(&|x: f64| x.exp(), 0.0, 1e-11);
        assert!((v - 1.0).abs() < 1e-9, "got {v}");
        // ∫_{-∞}^{2} 1/(1+x²) dx = π/2 + atan(2).
        let w = adaptive_simpson_halfline(&|x: f64| 1.0 / (1.0 + x * x), 2.0, 1e-11);
        let expect = std::f64::consts::FRAC_PI_2 + 2f64.atan();
        assert!((w - expect).abs() < 1e-9, "got {w}, expect {expect}");
    }

    #[test]
    fn cubic_interp_reproduces_smooth_samples() {
        let n = 101;
        let dx = 0.1;
        let vals: Vec<f64> = (0..n).map(|i| (0.3 * (i as f64 * dx)).sin()).collect();
        let interp = CubicInterp::new(0.0, dx, vals);
        for k in 0..50 {
            let x = 0.05 + 0.19 * k as f64;
            assert!((interp.eval(x) - (0.3 * x).sin()).abs() < 1e-7);
        }
    }
}
