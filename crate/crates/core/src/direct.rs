//! Forward scattering map: sampled potential q ↦ (ρ, {λ_k, C_k}).
//!
//! The spectral ODE in the λ-plane (ε = -1) reads, column-wise,
//!
//! ```text
//! n11' =  q n21 + (i/2)|q|² n11        n12' = -2iλ n12 + q n22 + (i/2)|q|² n12
//! n21' = 2iλ n21 - λ q̄ n11 - (i/2)|q|² n21    n22' = -λ q̄ n12 - (i/2)|q|² n22
//! ```
//!
//! with n^± → I as x → ±∞. Columns are computed by implicit product
//! integration: the oscillatory kernel e^{±2iλ(x-y)} is integrated exactly
//! against piecewise-linear interpolants of the slowly varying factors,
//! which is second-order accurate and marches stably in each column's
//! region of boundedness.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{map_indexed, ExecMode};
use crate::types::{
    DiscretePair, GaugeKind, JostColumn, JostColumnKind, JostSide, PotentialSample,
    ScatteringData, UniformGrid, ValidationThresholds,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Product-integration weights for ∫_0^h e^{z(1-s/h)} f(s) ds with f linear:
/// weight of f(0) is `h(e^z(z-1)+1)/z²`, of f(h) is `h(e^z-1-z)/z²`.
fn kernel_weights(z: Complex64, h: f64) -> (Complex64, Complex64) {
    if z.norm() < 1e-4 {
        // Series to avoid cancellation.
        let wa = 0.5 + z * (1.0 / 3.0 + z * (0.125 + z / 30.0));
        let wb = 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0));
        (wa * h, wb * h)
    } else {
        let ez = z.exp();
        let z2 = z * z;
        ((ez * (z - ONE) + ONE) / z2 * h, (ez - ONE - z) / z2 * h)
    }
}

/// Solves the 2×2 system [[a,b],[c,d]] v = r.
fn solve2(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    r0: Complex64,
    r1: Complex64,
) -> Result<(Complex64, Complex64)> {
    let det = a * d - b * c;
    if det.norm() < 1e-300 {
        return Err(Error::NoConvergence("singular step matrix".into()));
    }
    Ok(((d * r0 - b * r1) / det, (a * r1 - c * r0) / det))
}

/// Jost-solution engine bound to one sampled potential.
pub struct JostEngine<'a> {
    q: &'a PotentialSample,
}

impl<'a> JostEngine<'a> {
    pub fn new(q: &'a PotentialSample) -> Result<Self> {
        if q.kind != GaugeKind::QGauge {
            return Err(Error::Param(
                "Jost solutions are defined for q-gauge samples; apply the gauge first".into(),
            ));
        }
        if q.values.len() < 8 {
            return Err(Error::Param("potential grid too short".into()));
        }
        Ok(Self { q })
    }

    fn n(&self) -> usize {
        self.q.values.len()
    }

    /// First column (n11, n21), marching from the normalization end.
    /// `from_left` marches upward from x_min (the n⁻ column).
    fn march_col1(
        &self,
        lambda: Complex64,
        from_left: bool,
    ) -> Result<Vec<(Complex64, Complex64)>> {
        let n = self.n();
        let q = &self.q.values;
        let mut out = vec![(ZERO, ZERO); n];
        let h = if from_left { self.q.dx } else { -self.q.dx };
        let z = 2.0 * I * lambda * h;
        let e = z.exp();
        let (wa, wb) = kernel_weights(z, h);

        let start = if from_left { 0 } else { n - 1 };
        out[start] = (ONE, ZERO);
        let steps: Box<dyn Iterator<Item = usize>> =
            if from_left { Box::new(0..n - 1) } else { Box::new((1..n).rev()) };
        for ia in steps {
            let ib = if from_left { ia + 1 } else { ia - 1 };
            let (qa, qb) = (q[ia], q[ib]);
            let (pa, pb) = (0.5 * I * qa.norm_sqr(), 0.5 * I * qb.norm_sqr());
            let (n11a, n21a) = out[ia];
            let f11a = qa * n21a + pa * n11a;
            let f21a = -lambda * qa.conj() * n11a - pa * n21a;
            // Implicit step: unknowns (n11b, n21b):
            //   n11b - (h/2)(q_b n21b + p_b n11b)       = n11a + (h/2) f11a
            //   n21b + wb (λ q̄_b n11b + p_b n21b)       = E n21a + wa f21a
            let r0 = n11a + 0.5 * h * f11a;
            let r1 = e * n21a + wa * f21a;
            let (n11b, n21b) = solve2(
                ONE - 0.5 * h * pb,
                -0.5 * h * qb,
                wb * lambda * qb.conj(),
                ONE + wb * pb,
                r0,
                r1,
            )?;
            if !(n11b.re.is_finite() && n11b.im.is_finite() && n21b.re.is_finite() && n21b.im.is_finite()) {
                return Err(Error::NoConvergence(format!("non-finite Jost march at λ = {lambda}")));
            }
            out[ib] = (n11b, n21b);
        }
        Ok(out)
    }

    /// Second column (n12, n22).
    fn march_col2(
        &self,
        lambda: Complex64,
        from_left: bool,
    ) -> Result<Vec<(Complex64, Complex64)>> {
        let n = self.n();
        let q = &self.q.values;
        let mut out = vec![(ZERO, ZERO); n];
        let h = if from_left { self.q.dx } else { -self.q.dx };
        let z = -2.0 * I * lambda * h;
        let e = z.exp();
        let (wa, wb) = kernel_weights(z, h);

        let start = if from_left { 0 } else { n - 1 };
        out[start] = (ZERO, ONE);
        let steps: Box<dyn Iterator<Item = usize>> =
            if from_left { Box::new(0..n - 1) } else { Box::new((1..n).rev()) };
        for ia in steps {
            let ib = if from_left { ia + 1 } else { ia - 1 };
            let (qa, qb) = (q[ia], q[ib]);
            let (pa, pb) = (0.5 * I * qa.norm_sqr(), 0.5 * I * qb.norm_sqr());
            let (n12a, n22a) = out[ia];
            let f12a = qa * n22a + pa * n12a;
            let f22a = -lambda * qa.conj() * n12a - pa * n22a;
            //   n12b - wb (q_b n22b + p_b n12b)        = E n12a + wa f12a
            //   n22b + (h/2)(λ q̄_b n12b + p_b n22b)    = n22a + (h/2) f22a
            let r0 = e * n12a + wa * f12a;
            let r1 = n22a + 0.5 * h * f22a;
            let (n12b, n22b) = solve2(
                ONE - wb * pb,
                -wb * qb,
                0.5 * h * lambda * qb.conj(),
                ONE + 0.5 * h * pb,
                r0,
                r1,
            )?;
            if !(n12b.re.is_finite() && n12b.im.is_finite() && n22b.re.is_finite() && n22b.im.is_finite()) {
                return Err(Error::NoConvergence(format!("non-finite Jost march at λ = {lambda}")));
            }
            out[ib] = (n12b, n22b);
        }
        Ok(out)
    }

    fn region_ok(side: JostSide, column: JostColumnKind, lambda: Complex64) -> bool {
        if lambda.im == 0.0 {
            return true;
        }
        // Boundedness: n⁻ col 1 and n⁺ col 2 in C⁺; the other two in C⁻.
        let upper = matches!(
            (side, column),
            (JostSide::Minus, JostColumnKind::First) | (JostSide::Plus, JostColumnKind::Second)
        );
        if upper {
            lambda.im > 0.0
        } else {
            lambda.im < 0.0
        }
    }

    /// The requested column of n^± on the full x-grid.
    pub fn column(
        &self,
        lambda: Complex64,
        side: JostSide,
        column: JostColumnKind,
    ) -> Result<JostColumn> {
        if !Self::region_ok(side, column, lambda) {
            return Err(Error::Domain(format!(
                "column {side:?}/{column:?} is unbounded at λ = {lambda}"
            )));
        }
        let from_left = side == JostSide::Minus;
        let values = match column {
            JostColumnKind::First => self.march_col1(lambda, from_left)?,
            JostColumnKind::Second => self.march_col2(lambda, from_left)?,
        };
        Ok(JostColumn { lambda, side, column, values })
    }

    /// ᾰ(λ) = n11⁻ n22⁺ - n12⁺ n21⁻ for Im λ ≥ 0, evaluated at the mid-grid
    /// node (the Wronskian is x-independent in exact arithmetic).
    pub fn breve_alpha(&self, lambda: Complex64) -> Result<Complex64> {
        if lambda.im < 0.0 {
            return Err(Error::Domain(format!("ᾰ is analytic in C+, requested λ = {lambda}")));
        }
        let c1 = self.march_col1(lambda, true)?;
        let c2 = self.march_col2(lambda, false)?;
        let m = self.n() / 2;
        let (n11m, n21m) = c1[m];
        let (n12p, n22p) = c2[m];
        Ok(n11m * n22p - n12p * n21m)
    }

    /// α and β at one real λ from the first columns of both Jost solutions,
    /// using the ε = -1 symmetry n12 = -conj(n21)/λ, n22 = conj(n11).
    pub fn alpha_beta(&self, lambda: f64) -> Result<(Complex64, Complex64)> {
        if lambda == 0.0 {
            return Err(Error::Param("λ-grid must not contain 0; use an offset grid".into()));
        }
        let lam = Complex64::new(lambda, 0.0);
        let minus = self.march_col1(lam, true)?;
        let plus = self.march_col1(lam, false)?;
        let m = self.n() / 2;
        let (n11m, n21m) = minus[m];
        let (n11p, n21p) = plus[m];
        let alpha = n11p * n11m.conj() + n21m.conj() * n21p / lambda;
        let beta = (-(n11m.conj() * n21p.conj()) + n11p.conj() * n21m.conj()) / lambda;
        Ok((alpha, beta))
    }
}

/// Entries of the transition matrix on a real λ-grid.
#[derive(Debug, Clone)]
pub struct TransmissionPair {
    pub lambda_grid: UniformGrid,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
    /// sup over the grid of | |α|² + λ|β|² - 1 |.
    pub unitarity_defect: f64,
}

impl TransmissionPair {
    /// ᾰ(λ) = conj(α(λ)) on the real axis.
    pub fn alpha_breve(&self, i: usize) -> Complex64 {
        self.alpha[i].conj()
    }
}

/// Computes α, β (and the unitarity defect) on the grid.
pub fn transmission(q: &PotentialSample, lambda_grid: UniformGrid) -> Result<TransmissionPair> {
    let engine = JostEngine::new(q)?;
    let rows = map_indexed(ExecMode::Auto, lambda_grid.n, |i| {
        engine.alpha_beta(lambda_grid.point(i))
    });
    let mut alpha = Vec::with_capacity(lambda_grid.n);
    let mut beta = Vec::with_capacity(lambda_grid.n);
    for row in rows {
        let (a, b) = row?;
        alpha.push(a);
        beta.push(b);
    }
    let unitarity_defect = (0..lambda_grid.n)
        .map(|i| (alpha[i].norm_sqr() + lambda_grid.point(i) * beta[i].norm_sqr() - 1.0).abs())
        .fold(0.0f64, f64::max);
    Ok(TransmissionPair { lambda_grid, alpha, beta, unitarity_defect })
}

/// ρ = β/α pointwise; fails when |α| dips below `alpha_min` anywhere.
pub fn reflection(tp: &TransmissionPair, alpha_min: f64) -> Result<Vec<Complex64>> {
    let mut rho = Vec::with_capacity(tp.alpha.len());
    for (i, (a, b)) in tp.alpha.iter().zip(tp.beta.iter()).enumerate() {
        if a.norm() < alpha_min {
            return Err(Error::SpectralSingularity(format!(
                "|α({:.6})| = {:.3e} below threshold {alpha_min:.1e}",
                tp.lambda_grid.point(i),
                a.norm()
            )));
        }
        rho.push(b / a);
    }
    Ok(rho)
}

/// Rectangle in C⁺ searched for zeros of ᾰ.
#[derive(Debug, Clone, Copy)]
pub struct SearchBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

/// Knobs of the eigenvalue search.
#[derive(Debug, Clone, Copy)]
pub struct EigenSearchConfig {
    /// Samples per box edge before adaptive refinement.
    pub edge_samples: usize,
    /// Maximum quadtree depth.
    pub max_depth: u32,
    /// Newton convergence target on |ᾰ|.
    pub residual_tol: f64,
    /// Zeros below this height are rejected as spectral-singularity risks.
    pub near_axis: f64,
}

impl Default for EigenSearchConfig {
    fn default() -> Self {
        Self { edge_samples: 48, max_depth: 12, residual_tol: 1e-10, near_axis: 1e-3 }
    }
}

/// Winding number of ᾰ around the box boundary by adaptive phase tracking.
fn winding_number(engine: &JostEngine<'_>, b: &SearchBox, edge_samples: usize) -> Result<i64> {
    let corners = [
        Complex64::new(b.re_min, b.im_min),
        Complex64::new(b.re_max, b.im_min),
        Complex64::new(b.re_max, b.im_max),
        Complex64::new(b.re_min, b.im_max),
    ];
    let mut total = 0.0f64;
    for e in 0..4 {
        let (z0, z1) = (corners[e], corners[(e + 1) % 4]);
        let vals = map_indexed(ExecMode::Auto, edge_samples + 1, |i| {
            let s = i as f64 / edge_samples as f64;
            engine.breve_alpha(z0 + (z1 - z0) * s)
        });
        let mut pts: Vec<(f64, Complex64)> = Vec::with_capacity(vals.len());
        for (i, v) in vals.into_iter().enumerate() {
            pts.push((i as f64 / edge_samples as f64, v?));
        }
        let mut k = 0;
        while k + 1 < pts.len() {
            let (s0, f0) = pts[k];
            let (s1, f1) = pts[k + 1];
            if f0.norm() < 1e-14 || f1.norm() < 1e-14 {
                return Err(Error::WindingMismatch("ᾰ vanishes on the search boundary".into()));
            }
            let dphi = (f1 / f0).arg();
            if dphi.abs() > std::f64::consts::FRAC_PI_2 && (s1 - s0) > 1e-6 {
                let sm = 0.5 * (s0 + s1);
                let fm = engine.breve_alpha(z0 + (z1 - z0) * sm)?;
                pts.insert(k + 1, (sm, fm));
            } else {
                total += dphi;
                k += 1;
            }
        }
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

fn newton_refine(engine: &JostEngine<'_>, start: Complex64, tol: f64) -> Result<Complex64> {
    let mut z = start;
    let fd = 1e-5;
    for _ in 0..40 {
        let f = engine.breve_alpha(z)?;
        if f.norm() < tol {
            return Ok(z);
        }
        let fp = engine.breve_alpha(z + Complex64::new(fd, 0.0))?;
        let fm = engine.breve_alpha(z - Complex64::new(fd, 0.0))?;
        let df = (fp - fm) / (2.0 * fd);
        if df.norm() < 1e-14 {
            break;
        }
        z -= f / df;
        if z.im <= 0.0 {
            z = Complex64::new(z.re, 1e-6);
        }
    }
    let f = engine.breve_alpha(z)?;
    if f.norm() < tol {
        Ok(z)
    } else {
        Err(Error::NoConvergence(format!(
            "Newton stalled near {z} with |ᾰ| = {:.3e}",
            f.norm()
        )))
    }
}

/// All zeros of ᾰ in the box, refined by Newton iteration and verified by
/// argument-principle winding counts with recursive quadtree subdivision.
pub fn find_eigenvalues(
    q: &PotentialSample,
    search: SearchBox,
    cfg: &EigenSearchConfig,
) -> Result<Vec<Complex64>> {
    let engine = JostEngine::new(q)?;
    let mut zeros: Vec<Complex64> = Vec::new();
    let expected = winding_number(&engine, &search, cfg.edge_samples)?;
    if expected < 0 {
        return Err(Error::WindingMismatch(format!(
            "negative boundary winding {expected}"
        )));
    }
    let mut stack = vec![(search, expected, 0u32)];
    while let Some((b, count, depth)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            let center = Complex64::new(0.5 * (b.re_min + b.re_max), 0.5 * (b.im_min + b.im_max));
            let z = newton_refine(&engine, center, cfg.residual_tol)?;
            if z.im < cfg.near_axis {
                return Err(Error::NearAxis(format!(
                    "zero at {z} with Im λ below {}",
                    cfg.near_axis
                )));
            }
            zeros.push(z);
            continue;
        }
        if depth >= cfg.max_depth {
            return Err(Error::WindingMismatch(format!(
                "cell at depth {depth} still winds {count}; clustered or non-simple zeros"
            )));
        }
        let rm = 0.5 * (b.re_min + b.re_max);
        let im = 0.5 * (b.im_min + b.im_max);
        let quads = [
            SearchBox { re_min: b.re_min, re_max: rm, im_min: b.im_min, im_max: im },
            SearchBox { re_min: rm, re_max: b.re_max, im_min: b.im_min, im_max: im },
            SearchBox { re_min: b.re_min, re_max: rm, im_min: im, im_max: b.im_max },
            SearchBox { re_min: rm, re_max: b.re_max, im_min: im, im_max: b.im_max },
        ];
        let mut subtotal = 0;
        for sub in quads {
            let w = winding_number(&engine, &sub, (cfg.edge_samples / 2).max(12))?;
            subtotal += w;
            stack.push((sub, w, depth + 1));
        }
        if subtotal != count {
            return Err(Error::WindingMismatch(format!(
                "subdivision winding {subtotal} != parent {count}"
            )));
        }
    }
    zeros.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    zeros.dedup_by(|a, b| (*a - *b).norm() < 1e-8);
    if zeros.len() as i64 != expected {
        return Err(Error::WindingMismatch(format!(
            "Newton found {} distinct zeros but the boundary winds {expected}",
            zeros.len()
        )));
    }
    Ok(zeros)
}

/// Discrete data attached to one eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct EigenData {
    pub lambda: Complex64,
    /// Proportionality constant of the two bounded columns at λ_k.
    pub b: Complex64,
    /// ᾰ'(λ_k) by Cauchy-integral differentiation.
    pub alpha_breve_prime: Complex64,
    /// Norming constant C_k = B_k / ᾰ'(λ_k).
    pub c: Complex64,
    /// Relative least-squares residual of the proportionality relation.
    pub residual: f64,
}

/// Extraction thresholds for [`norming_constant`].
#[derive(Debug, Clone, Copy)]
pub struct NormingConfig {
    /// Relative residual above which the zero is flagged as non-simple.
    pub residual_tol: f64,
    /// Reference columns smaller than this at a sample are skipped (0/0 guard).
    pub magnitude_floor: f64,
    /// Radius of the Cauchy circle for ᾰ'(λ_k); shrunk to stay inside C⁺.
    pub derivative_radius: f64,
    /// |ᾰ(λ_k)| accepted as "is a zero" (covers grid discretization error).
    pub zero_gate: f64,
    /// |ᾰ'(λ_k)| below this flags a (near-)non-simple zero: the derivative
    /// vanishes continuously as two eigenvalues collide.
    pub derivative_floor: f64,
    /// Undressed column entries below this are excluded from the fit. Away
    /// from the soliton core each one-sided march carries an O(h²) spurious
    /// mode of the other fundamental solution, which the exponential phase
    /// dressing then amplifies; the floor keeps only samples where the true
    /// entry dominates that mode.
    pub error_mode_floor: f64,
}

impl Default for NormingConfig {
    fn default() -> Self {
        Self {
            residual_tol: 5e-3,
            magnitude_floor: 1e-8,
            derivative_radius: 0.15,
            zero_gate: 1e-4,
            derivative_floor: 1e-3,
            error_mode_floor: 1e-4,
        }
    }
}

/// Computes B_k as the least-squares proportionality constant relating the
/// two bounded Jost columns at λ_k, then C_k = B_k / ᾰ'(λ_k).
pub fn norming_constant(
    q: &PotentialSample,
    lambda_k: Complex64,
    cfg: &NormingConfig,
) -> Result<EigenData> {
    let engine = JostEngine::new(q)?;
    let res = engine.breve_alpha(lambda_k)?;
    if res.norm() > cfg.zero_gate {
        return Err(Error::Param(format!(
            "λ = {lambda_k} is not a zero of ᾰ (|ᾰ| = {:.3e})",
            res.norm()
        )));
    }
    let minus = engine.march_col1(lambda_k, true)?;
    let plus = engine.march_col2(lambda_k, false)?;
    let n = q.values.len();

    // Relation: (n11⁻, n21⁻)(x) = B λ_k (n12⁺, n22⁺)(x) e^{2iλ_k x} over
    // interior x. Pairs are kept component-wise: both the left-hand entry
    // and the undressed reference entry must clear the error-mode floor,
    // and the dressed reference must clear the 0/0 guard.
    let mut num = ZERO;
    let mut den = 0.0f64;
    let mut pairs: Vec<(Complex64, Complex64)> = Vec::new();
    for i in (n / 8)..(7 * n / 8) {
        let x = q.x(i);
        let phase = (2.0 * I * lambda_k * x).exp();
        let (l1, l2) = minus[i];
        for (l, nref) in [(l1, plus[i].0), (l2, plus[i].1)] {
            if l.norm() < cfg.error_mode_floor || nref.norm() < cfg.error_mode_floor {
                continue;
            }
            let r = lambda_k * nref * phase;
            if r.norm() < cfg.magnitude_floor {
                continue;
            }
            num += r.conj() * l;
            den += r.norm_sqr();
            pairs.push((l, r));
        }
    }
    if den == 0.0 {
        return Err(Error::IllConditioned("no usable samples for the B_k fit".into()));
    }
    let b = num / den;
    let (mut err2, mut mag2) = (0.0f64, 0.0f64);
    for (l, r) in &pairs {
        err2 += (l - b * r).norm_sqr();
        mag2 += l.norm_sqr();
    }
    let residual = (err2 / mag2.max(1e-300)).sqrt();
    if residual > cfg.residual_tol {
        return Err(Error::IllConditioned(format!(
            "proportionality residual {residual:.3e} exceeds {:.1e}; non-simple zero?",
            cfg.residual_tol
        )));
    }

    // ᾰ'(λ_k) = (1/2πi) ∮ ᾰ(z)/(z-λ_k)² dz on a small circle; the trapezoid
    // rule on circles is spectrally accurate.
    let r = cfg.derivative_radius.min(0.5 * lambda_k.im);
    let m = 24usize;
    let vals = map_indexed(ExecMode::Auto, m, |j| {
        let phi = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        engine.breve_alpha(lambda_k + Complex64::from_polar(r, phi)).map(|v| (phi, v))
    });
    let mut deriv = ZERO;
    for v in vals {
        let (phi, f) = v?;
        deriv += f * Complex64::from_polar(1.0, -phi);
    }
    let alpha_breve_prime = deriv / (m as f64 * r);
    if alpha_breve_prime.norm() < cfg.derivative_floor {
        return Err(Error::IllConditioned(format!(
            "|ᾰ'(λ_k)| = {:.3e} below floor {:.1e}; non-simple zero",
            alpha_breve_prime.norm(),
            cfg.derivative_floor
        )));
    }
    Ok(EigenData { lambda: lambda_k, b, alpha_breve_prime, c: b / alpha_breve_prime, residual })
}

/// Configuration of the full forward map.
#[derive(Debug, Clone)]
pub struct DirectConfig {
    /// Half-width Λ of the λ-grid carrying ρ.
    pub lambda_half_width: f64,
    /// Number of λ-grid nodes.
    pub n_lambda: usize,
    /// |α| floor for forming ρ = β/α.
    pub alpha_min: f64,
    /// Eigenvalue search box; `None` derives a heuristic box from ‖q‖_{L¹}.
    pub search_box: Option<SearchBox>,
    pub search: EigenSearchConfig,
    pub norming: NormingConfig,
    pub thresholds: ValidationThresholds,
}

impl Default for DirectConfig {
    fn default() -> Self {
        Self {
            lambda_half_width: 6.0,
            n_lambda: 1024,
            alpha_min: 1e-6,
            search_box: None,
            search: EigenSearchConfig::default(),
            norming: NormingConfig::default(),
            thresholds: ValidationThresholds::default(),
        }
    }
}

/// Heuristic search box: the paper gives no quantitative eigenvalue-location
/// bound in ‖q‖, so the default half-width grows with the L¹ norm and is a
/// documented config knob.
pub fn default_search_box(q: &PotentialSample, cfg: &EigenSearchConfig) -> SearchBox {
    let l1: f64 = q.values.iter().map(|v| v.norm()).sum::<f64>() * q.dx;
    let r = (1.0 + 0.5 * l1 * l1).max(2.0);
    SearchBox { re_min: -r, re_max: r, im_min: cfg.near_axis, im_max: r }
}

/// The forward map R: q ↦ (ρ, {λ_k, C_k}), composed of transmission,
/// reflection, eigenvalue search, and norming-constant extraction.
pub fn direct_map(q: &PotentialSample, cfg: &DirectConfig) -> Result<ScatteringData> {
    if q.kind != GaugeKind::QGauge {
        return Err(Error::Param(
            "direct_map expects q-gauge data; gauge-transform u first".into(),
        ));
    }
    let grid = UniformGrid::symmetric_offset(cfg.lambda_half_width, cfg.n_lambda);
    let tp = transmission(q, grid)?;
    let rho = reflection(&tp, cfg.alpha_min)?;
    let search = cfg.search_box.unwrap_or_else(|| default_search_box(q, &cfg.search));
    let lambdas = find_eigenvalues(q, search, &cfg.search).map_err(|e| match e {
        Error::NearAxis(m) => Error::GenericityFail(format!("near-axis zero: {m}")),
        other => other,
    })?;
    let mut discrete = Vec::with_capacity(lambdas.len());
    for lam in lambdas {
        let ed = norming_constant(q, lam, &cfg.norming)?;
        discrete.push(DiscretePair { lambda: ed.lambda, c: ed.c });
    }
    let sd = ScatteringData::new(grid, rho, discrete);
    crate::types::validate_scattering_data(&sd, &cfg.thresholds).map_err(|e| match e {
        Error::SpectralSingularity(m) => Error::GenericityFail(m),
        other => other,
    })?;
    Ok(sd)
}
