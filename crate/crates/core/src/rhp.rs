//! Numerical inverse map: the Beals–Coifman singular integral equation
//! (I - C_w)ν = (1, 0) on the augmented contour Γ = ℝ ∪ {Γ_k} ∪ {Γ_k*} and
//! the reconstruction of q(x, t).
//!
//! Jump data (ε = -1), with phases e^{±2itθ}, tθ(λ) = 2λ²t + λx:
//!
//! * real line: W⁻₁₂ = ρ(λ) e^{-2itθ}, W⁺₂₁ = λ conj(ρ(λ)) e^{+2itθ};
//! * Γ_k (clockwise circle around λ_k): W⁺₂₁ = λ_k C_k e^{+2itθ(λ)}/(λ-λ_k);
//! * Γ_k* (counterclockwise around conj λ_k): W⁻₁₂ = conj(C_k) e^{-2itθ(λ)}/(λ-conj λ_k).
//!
//! Because W⁻ lives on ℝ ∪ Γ* and W⁺ on ℝ ∪ Γ, the only singular Cauchy
//! blocks are the real-line self-projections, realized as ±½I plus a
//! principal value with subtracted singularity (so C⁺ - C⁻ = I holds exactly
//! in the discretization); circle components use trapezoid nodes with exact
//! Cauchy kernels node-to-node. The system is reduced to the first
//! component ν₁ on ℝ ∪ Γ* and solved densely.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{map_indexed, ExecMode};
use crate::quad::CubicInterp;
use crate::types::{
    ContourCircle, ContourSpec, PhaseParams, PotentialSample, ScatteringData, UniformGrid,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Contour discretization knobs.
#[derive(Debug, Clone, Copy)]
pub struct ContourConfig {
    /// Real-line quadrature nodes.
    pub n_real: usize,
    /// Trapezoid nodes per circle.
    pub n_circle: usize,
    /// Blend in [0, 1) between a uniform real grid (0) and cubic clustering
    /// toward λ₀ (→1); only used when a phase hint is supplied.
    pub cluster_strength: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { n_real: 1024, n_circle: 32, cluster_strength: 0.75 }
    }
}

/// Builds the augmented contour for the given data. When `hint` is supplied
/// the real nodes are graded toward the stationary point λ₀ = -ξ/4.
pub fn build_contour(
    sd: &ScatteringData,
    cfg: &ContourConfig,
    hint: Option<PhaseParams>,
) -> Result<ContourSpec> {
    let half_width = sd.lambda_grid.x0.abs().max(sd.lambda_grid.last().abs());
    let nodes: Vec<f64> = match hint {
        Some(p) if p.lambda0.abs() < 0.9 * half_width && cfg.cluster_strength > 0.0 => {
            let g = cfg.cluster_strength;
            let n_half = cfg.n_real / 2;
            let mut v = Vec::with_capacity(2 * n_half);
            // Two graded half-intervals meeting at λ₀.
            for side in [-1.0f64, 1.0] {
                let end = if side < 0.0 { -half_width } else { half_width };
                let span = end - p.lambda0;
                for j in 0..n_half {
                    let s = (j as f64 + 0.5) / n_half as f64;
                    let stretched = (1.0 - g) * s + g * s * s * s;
                    v.push(p.lambda0 + span * stretched);
                }
            }
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        }
        _ => {
            let grid = UniformGrid::symmetric_offset(half_width, cfg.n_real);
            grid.points().collect()
        }
    };
    let weights = crate::quad::trapezoid_weights(&nodes);
    let real_nodes = nodes.into_iter().zip(weights).collect();

    let d_lambda = sd.min_pair_distance();
    let mut circles_upper = Vec::new();
    let mut circles_lower = Vec::new();
    for d in &sd.discrete {
        let radius = (d_lambda / 3.0).min(0.5 * d.lambda.im);
        if !(radius > 0.0) {
            return Err(Error::Geometry(format!("degenerate circle radius at λ = {}", d.lambda)));
        }
        circles_upper.push(make_circle(d.lambda, radius, cfg.n_circle, false));
        circles_lower.push(make_circle(d.lambda.conj(), radius, cfg.n_circle, true));
    }
    // Disjointness should already be guaranteed by validation; check anyway.
    for (i, a) in circles_upper.iter().enumerate() {
        if a.center.im - a.radius <= 0.0 {
            return Err(Error::Geometry(format!("circle at {} touches the real line", a.center)));
        }
        for b in circles_upper.iter().skip(i + 1) {
            if (a.center - b.center).norm() <= a.radius + b.radius {
                return Err(Error::Geometry(format!(
                    "circles at {} and {} intersect",
                    a.center, b.center
                )));
            }
        }
    }
    Ok(ContourSpec { real_nodes, circles_upper, circles_lower })
}

fn make_circle(center: Complex64, radius: f64, m: usize, counterclockwise: bool) -> ContourCircle {
    let dphi = 2.0 * std::f64::consts::PI / m as f64;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for j in 0..m {
        let phi = dphi * j as f64;
        let e = Complex64::from_polar(1.0, if counterclockwise { phi } else { -phi });
        nodes.push(center + radius * e);
        // dz = ± i r e^{±iφ} dφ along the oriented parametrization.
        let w = I * radius * e * dphi;
        weights.push(if counterclockwise { w } else { -w });
    }
    ContourCircle { center, radius, nodes, weights, counterclockwise }
}

/// One-sided boundary values of the Beals–Coifman unknown at the contour
/// nodes (first component on ℝ ∪ Γ*, second on ℝ ∪ Γ), plus everything
/// needed for reconstruction.
#[derive(Debug, Clone)]
pub struct BCUnknown {
    /// ν₁ at the real nodes then lower-circle nodes.
    pub nu1_lower: Vec<Complex64>,
    /// ν₂ at the real nodes then upper-circle nodes.
    pub nu2_upper: Vec<Complex64>,
    /// W⁻₁₂ at the ν₁ support nodes (with x, t phases).
    pub omega_minus: Vec<Complex64>,
    /// Quadrature weights at the ν₁ support nodes (complex on circles).
    pub weights_lower: Vec<Complex64>,
    /// Residual of the discretized (I - C_w)ν = (1,0) system.
    pub residual: f64,
}

/// Interpolates ρ off-grid (cubic on the real and imaginary parts, zero
/// outside the truncation).
pub struct RhoInterp {
    re: CubicInterp,
    im: CubicInterp,
    lo: f64,
    hi: f64,
}

impl RhoInterp {
    pub fn new(sd: &ScatteringData) -> Self {
        let (re, im): (Vec<f64>, Vec<f64>) = sd.rho.iter().map(|r| (r.re, r.im)).unzip();
        Self {
            re: CubicInterp::new(sd.lambda_grid.x0, sd.lambda_grid.dx, re),
            im: CubicInterp::new(sd.lambda_grid.x0, sd.lambda_grid.dx, im),
            lo: sd.lambda_grid.x0,
            hi: sd.lambda_grid.last(),
        }
    }

    pub fn eval(&self, lambda: f64) -> Complex64 {
        if lambda < self.lo || lambda > self.hi {
            return ZERO;
        }
        Complex64::new(self.re.eval(lambda), self.im.eval(lambda))
    }
}

/// e^{+2i(2λ²t + λx)} without overflow.
fn phase_plus(lambda: Complex64, x: f64, t: f64) -> Complex64 {
    crate::soliton::jump_phase_upper(lambda, x, t)
}

fn phase_minus(lambda: Complex64, x: f64, t: f64) -> Complex64 {
    crate::soliton::jump_phase_lower(lambda, x, t)
}

/// Principal-value quadrature matrix on the real nodes: row i approximates
/// PV ∫ f(s)/(s - s_i) ds by subtracting the singularity, with the local
/// derivative from a non-uniform three-point stencil.
fn pv_matrix(nodes: &[(f64, f64)]) -> DMatrix<Complex64> {
    let n = nodes.len();
    let mut m = DMatrix::from_element(n, n, ZERO);
    if n < 3 {
        return m;
    }
    for i in 0..n {
        let (si, wi) = nodes[i];
        // The density vanishes at the truncation endpoints (H^{2,2} decay of
        // ρ), so the endpoint logs are clamped at the grid scale.
        let up = (nodes[n - 1].0 - si).max(0.5 * wi);
        let dn = (si - nodes[0].0).max(0.5 * wi);
        let mut diag = Complex64::new(up.ln() - dn.ln(), 0.0);
        for (j, &(sj, wj)) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            let k = Complex64::new(wj / (sj - si), 0.0);
            m[(i, j)] += k;
            diag -= k;
        }
        m[(i, i)] += diag;
        // w_i · f'(s_i) for the subtracted integrand's value at s_i.
        if i > 0 && i + 1 < n {
            let (sm, sp) = (nodes[i - 1].0, nodes[i + 1].0);
            let (hm, hp) = (si - sm, sp - si);
            // Non-uniform central difference.
            let cm = -hp / (hm * (hm + hp));
            let c0 = (hp - hm) / (hm * hp);
            let cp = hm / (hp * (hm + hp));
            m[(i, i - 1)] += Complex64::new(wi * cm, 0.0);
            m[(i, i)] += Complex64::new(wi * c0, 0.0);
            m[(i, i + 1)] += Complex64::new(wi * cp, 0.0);
        } else if i == 0 {
            let h = nodes[1].0 - si;
            m[(i, 0)] += Complex64::new(-wi / h, 0.0);
            m[(i, 1)] += Complex64::new(wi / h, 0.0);
        } else {
            let h = si - nodes[i - 1].0;
            m[(i, i - 1)] += Complex64::new(-wi / h, 0.0);
            m[(i, i)] += Complex64::new(wi / h, 0.0);
        }
    }
    m
}

struct Support {
    /// Node positions: real nodes then circle nodes.
    nodes: Vec<Complex64>,
    /// Quadrature weights (real weights embedded as complex).
    weights: Vec<Complex64>,
    n_real: usize,
}

fn lower_support(contour: &ContourSpec) -> Support {
    let mut nodes: Vec<Complex64> =
        contour.real_nodes.iter().map(|&(s, _)| Complex64::new(s, 0.0)).collect();
    let mut weights: Vec<Complex64> =
        contour.real_nodes.iter().map(|&(_, w)| Complex64::new(w, 0.0)).collect();
    for c in &contour.circles_lower {
        nodes.extend_from_slice(&c.nodes);
        weights.extend_from_slice(&c.weights);
    }
    Support { nodes, weights, n_real: contour.real_nodes.len() }
}

fn upper_support(contour: &ContourSpec) -> Support {
    let mut nodes: Vec<Complex64> =
        contour.real_nodes.iter().map(|&(s, _)| Complex64::new(s, 0.0)).collect();
    let mut weights: Vec<Complex64> =
        contour.real_nodes.iter().map(|&(_, w)| Complex64::new(w, 0.0)).collect();
    for c in &contour.circles_upper {
        nodes.extend_from_slice(&c.nodes);
        weights.extend_from_slice(&c.weights);
    }
    Support { nodes, weights, n_real: contour.real_nodes.len() }
}

/// Discrete Cauchy boundary operator mapping a density on `from` to its
/// ±-boundary values at `to`. The real-real block is ±½I + PV/(2πi); every
/// other block is the plain kernel (the transform is analytic there).
fn cauchy_block(
    to: &Support,
    from: &Support,
    pv: &DMatrix<Complex64>,
    plus_side: bool,
) -> DMatrix<Complex64> {
    let (nt, nf) = (to.nodes.len(), from.nodes.len());
    let mut m = DMatrix::from_element(nt, nf, ZERO);
    let half = Complex64::new(if plus_side { 0.5 } else { -0.5 }, 0.0);
    let inv_2pii = 1.0 / (2.0 * std::f64::consts::PI * I);
    for i in 0..nt {
        let zi = to.nodes[i];
        let real_target = i < to.n_real;
        for j in 0..nf {
            if real_target && j < from.n_real {
                m[(i, j)] = inv_2pii * pv[(i, j)];
                if i == j {
                    m[(i, j)] += half;
                }
            } else {
                m[(i, j)] = inv_2pii * from.weights[j] / (from.nodes[j] - zi);
            }
        }
    }
    m
}

/// Assembles and solves the discretized Beals–Coifman equation at one (x, t).
pub fn assemble_and_solve_bc(
    sd: &ScatteringData,
    contour: &ContourSpec,
    x: f64,
    t: f64,
) -> Result<BCUnknown> {
    let rho = RhoInterp::new(sd);
    solve_bc_with_rho(sd, contour, &rho, x, t)
}

/// Like [`assemble_and_solve_bc`] but reusing an interpolant (the per-x inner
/// loop of [`inverse_map`]).
pub fn solve_bc_with_rho(
    sd: &ScatteringData,
    contour: &ContourSpec,
    rho: &RhoInterp,
    x: f64,
    t: f64,
) -> Result<BCUnknown> {
    let lower = lower_support(contour);
    let upper = upper_support(contour);
    let nl = lower.nodes.len();
    let nu = upper.nodes.len();

    // Jump densities at the support nodes.
    let mut omega_minus = vec![ZERO; nl];
    for (j, node) in lower.nodes.iter().enumerate() {
        omega_minus[j] = if j < lower.n_real {
            rho.eval(node.re) * phase_minus(*node, x, t)
        } else {
            // Locate the owning lower circle for the pole factor.
            let k = (j - lower.n_real) / contour.circles_lower[0].nodes.len();
            let c = &contour.circles_lower[k];
            let pair = sd.discrete[k];
            pair.c.conj() * phase_minus(*node, x, t) / (node - c.center)
        };
    }
    let mut omega_plus = vec![ZERO; nu];
    for (j, node) in upper.nodes.iter().enumerate() {
        omega_plus[j] = if j < upper.n_real {
            node.re * rho.eval(node.re).conj() * phase_plus(*node, x, t)
        } else {
            let k = (j - upper.n_real) / contour.circles_upper[0].nodes.len();
            let c = &contour.circles_upper[k];
            let pair = sd.discrete[k];
            c.center * pair.c * phase_plus(*node, x, t) / (node - c.center)
        };
    }

    let pv = pv_matrix(&contour.real_nodes);
    // ν₁ = 1 + K⁻ D(ω⁺) ν₂,  ν₂ = K⁺ D(ω⁻) ν₁.
    let k_minus = cauchy_block(&lower, &upper, &pv, false);
    let k_plus = cauchy_block(&upper, &lower, &pv, true);

    let mut kp_d = k_plus;
    for j in 0..nl {
        let w = omega_minus[j];
        for i in 0..nu {
            kp_d[(i, j)] *= w;
        }
    }
    let mut km_d = k_minus;
    for j in 0..nu {
        let w = omega_plus[j];
        for i in 0..nl {
            km_d[(i, j)] *= w;
        }
    }
    let a = &km_d * &kp_d;
    let mut system = DMatrix::from_element(nl, nl, ZERO);
    for i in 0..nl {
        for j in 0..nl {
            system[(i, j)] = -a[(i, j)];
        }
        system[(i, i)] += Complex64::new(1.0, 0.0);
    }
    let rhs = vec![Complex64::new(1.0, 0.0); nl];
    let nu1 = crate::linalg::solve_dense(&system, &rhs).map_err(|e| match e {
        Error::SingularSystem(m) => Error::SolverFail(m),
        other => other,
    })?;
    // Residual of the solved system.
    let mut residual = 0.0f64;
    for i in 0..nl {
        let mut acc = ZERO;
        for j in 0..nl {
            acc += system[(i, j)] * nu1[j];
        }
        residual = residual.max((acc - Complex64::new(1.0, 0.0)).norm());
    }
    let nu1_vec = nalgebra::DVector::from_column_slice(&nu1);
    let nu2 = &kp_d * &nu1_vec;

    Ok(BCUnknown {
        nu1_lower: nu1,
        nu2_upper: nu2.iter().copied().collect(),
        omega_minus,
        weights_lower: lower.weights,
        residual,
    })
}

/// Reconstructed potential at the (x, t) the unknown was solved for:
/// q = -(1/π) ∫_{ℝ∪Γ*} ν₁(s) W⁻₁₂(s) ds.
pub fn reconstruct_q(nu: &BCUnknown) -> Complex64 {
    let mut acc = ZERO;
    for ((v, w), om) in nu
        .nu1_lower
        .iter()
        .zip(nu.weights_lower.iter())
        .zip(nu.omega_minus.iter())
    {
        acc += v * om * w;
    }
    -acc / std::f64::consts::PI
}

/// Maps each x independently and assembles a q-gauge sample at time t.
pub fn inverse_map(
    sd: &ScatteringData,
    x_grid: UniformGrid,
    t: f64,
    cfg: &ContourConfig,
) -> Result<PotentialSample> {
    let contour = build_contour(sd, cfg, None)?;
    let rho = RhoInterp::new(sd);
    let results = map_indexed(ExecMode::Auto, x_grid.n, |i| {
        let x = x_grid.point(i);
        solve_bc_with_rho(sd, &contour, &rho, x, t).map(|nu| reconstruct_q(&nu))
    });
    let mut values = Vec::with_capacity(x_grid.n);
    let mut failures = Vec::new();
    let mut first_err = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => values.push(v),
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some((i, e));
                }
                failures.push(i);
                values.push(ZERO);
            }
        }
    }
    if let Some((first, error)) = first_err {
        return Err(Error::GridFailures { indices: failures, first, error: Box::new(error) });
    }
    let boundary = values[0].norm().max(values[x_grid.n - 1].norm());
    Ok(PotentialSample {
        x0: x_grid.x0,
        dx: x_grid.dx,
        kind: crate::types::GaugeKind::QGauge,
        tail_tol: boundary.max(1e-8),
        values,
    })
}
