//! Evaluators for the explicit large-time formulas: the partial transmission
//! coefficient δ, modulated norming constants, the soliton-resolution phase
//! α₀, the parabolic-cylinder local model with its β₁₂/β₂₁ coefficients, the
//! t^{-1/2} dispersive correction, and per-soliton phase shifts.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, adaptive_simpson_complex, CubicInterp};
use crate::soliton::{nsoliton_residues, NSolitonResidues};
use crate::special::{parabolic_cylinder, recip_gamma};
use crate::types::{DiscretePair, ScatteringData};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Evaluator knobs.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticsConfig {
    /// Below this time the large-t formulas are not meaningful; the CLI
    /// warns (rather than errors) for 1 < t < t_min.
    pub t_min: f64,
    /// The u-level evaluator requires |λ₀| > m_region · t^{-1/8}.
    pub m_region: f64,
    /// |ρ(λ₀)| below this flags the dispersive term as vanishing.
    pub zero_reflection_floor: f64,
    /// Absolute tolerance of the adaptive quadratures.
    pub quad_tol: f64,
}

impl Default for AsymptoticsConfig {
    fn default() -> Self {
        Self { t_min: 10.0, m_region: 0.25, zero_reflection_floor: 1e-8, quad_tol: 1e-10 }
    }
}

/// κ(λ) = -(1/2π) log(1 + λ|ρ(λ)|²) sampled on the data grid and cubically
/// interpolated off-grid; identically zero outside the truncation.
#[derive(Debug, Clone)]
pub struct KappaEval {
    interp: CubicInterp,
    lo: f64,
    hi: f64,
    sup_abs: f64,
}

impl KappaEval {
    pub fn new(sd: &ScatteringData) -> Result<Self> {
        let mut samples = Vec::with_capacity(sd.lambda_grid.n);
        let mut sup_abs = 0.0f64;
        for (i, lam) in sd.lambda_grid.points().enumerate() {
            let arg = lam * sd.rho[i].norm_sqr();
            if 1.0 + arg <= 0.0 {
                return Err(Error::SpectralSingularity(format!(
                    "1 + λ|ρ|² = {:.3e} at λ = {lam}",
                    1.0 + arg
                )));
            }
            let k = -arg.ln_1p() / (2.0 * std::f64::consts::PI);
            sup_abs = sup_abs.max(k.abs());
            samples.push(k);
        }
        Ok(Self {
            interp: CubicInterp::new(sd.lambda_grid.x0, sd.lambda_grid.dx, samples),
            lo: sd.lambda_grid.x0,
            hi: sd.lambda_grid.last(),
            sup_abs,
        })
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        if lambda < self.lo || lambda > self.hi {
            0.0
        } else {
            self.interp.eval(lambda)
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn sup_abs(&self) -> f64 {
        self.sup_abs
    }
}

/// κ at one point (convenience wrapper over [`KappaEval`]).
pub fn kappa(sd: &ScatteringData, lambda: f64) -> Result<f64> {
    Ok(KappaEval::new(sd)?.eval(lambda))
}

/// The partial transmission coefficient δ(z; λ₀) with its cached
/// sub-quantities: β(λ₀), δ₁, and ‖κ‖∞.
pub struct DeltaEval {
    pub lambda0: f64,
    kappa: KappaEval,
    /// Real phase with δ₀(λ₀) = e^{iβ(λ₀)} in the local factorization
    /// δ(z) ≈ δ₀ (z-λ₀)^{iκ(λ₀)}.
    pub beta_lambda0: f64,
    /// Large-z coefficient δ(z) = 1 + δ₁/z + O(z⁻²), δ₁ = -i ∫ κ.
    pub delta1: Complex64,
    quad_tol: f64,
}

impl DeltaEval {
    pub fn new(sd: &ScatteringData, lambda0: f64, cfg: &AsymptoticsConfig) -> Result<Self> {
        let kappa = KappaEval::new(sd)?;
        let (lo, hi) = kappa.support();
        let top = lambda0.min(hi);
        let tol = cfg.quad_tol;

        let delta1 = if top <= lo {
            Complex64::new(0.0, 0.0)
        } else {
            -I * adaptive_simpson(&|s| kappa.eval(s), lo, top, tol)
        };

        // β(λ₀) = -∫ κ'(s) log(λ₀ - s) ds, rewritten with the log endpoint
        // singularity removed by parts:
        //   -∫₀¹ [κ(λ₀-σ) - κ(λ₀)]/σ dσ - ∫₁^∞ κ(λ₀-σ)/σ dσ.
        let k0 = kappa.eval(lambda0);
        let near = adaptive_simpson(
            &|sigma| {
                if sigma <= 0.0 {
                    return 0.0;
                }
                (kappa.eval(lambda0 - sigma) - k0) / sigma
            },
            1e-12,
            1.0,
            tol,
        );
        let far_top = (lambda0 - lo).max(1.0);
        let far = adaptive_simpson(&|sigma| kappa.eval(lambda0 - sigma) / sigma, 1.0, far_top, tol);
        let beta_lambda0 = -(near + far);

        Ok(Self { lambda0, kappa, beta_lambda0, delta1, quad_tol: tol })
    }

    pub fn kappa_at(&self, lambda: f64) -> f64 {
        self.kappa.eval(lambda)
    }

    pub fn kappa_sup(&self) -> f64 {
        self.kappa.sup_abs()
    }

    /// δ(z) for z off the cut (-∞, λ₀].
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 && z.re <= self.lambda0 {
            return Err(Error::OnCut(format!(
                "z = {z} lies on (-∞, {}]; use boundary()",
                self.lambda0
            )));
        }
        let (lo, hi) = self.kappa.support();
        let top = self.lambda0.min(hi);
        if top <= lo {
            return Ok(ONE);
        }
        let integral = adaptive_simpson_complex(
            &|s| Complex64::new(self.kappa.eval(s), 0.0) / (s - z),
            lo,
            top,
            self.quad_tol,
        );
        Ok((I * integral).exp())
    }

    /// Boundary values δ±(λ) on the cut via a principal value with
    /// subtracted singularity.
    pub fn boundary(&self, lambda: f64, from_above: bool) -> Result<Complex64> {
        if lambda > self.lambda0 {
            return Err(Error::Param(format!(
                "λ = {lambda} is right of λ₀ = {}; not on the cut",
                self.lambda0
            )));
        }
        let (lo, hi) = self.kappa.support();
        let top = self.lambda0.min(hi);
        let k_at = self.kappa.eval(lambda);
        let pv = if top <= lo {
            0.0
        } else if lambda <= lo || lambda >= top {
            adaptive_simpson(&|s| self.kappa.eval(s) / (s - lambda), lo, top, self.quad_tol)
        } else {
            let sub = adaptive_simpson(
                &|s| {
                    let d = s - lambda;
                    if d.abs() < 1e-14 {
                        // Removable after subtraction; the local slope.
                        (self.kappa.eval(s + 1e-7) - self.kappa.eval(s - 1e-7)) / 2e-7
                    } else {
                        (self.kappa.eval(s) - k_at) / d
                    }
                },
                lo,
                top,
                self.quad_tol,
            );
            sub + k_at * ((top - lambda) / (lambda - lo)).ln()
        };
        let sign = if from_above { -1.0 } else { 1.0 };
        Ok(Complex64::from_polar((sign * std::f64::consts::PI * k_at).exp(), pv))
    }

    /// The jump δ₊(λ)/δ₋(λ), equal to 1 + λ|ρ(λ)|² on the cut.
    pub fn jump(&self, lambda: f64) -> Result<Complex64> {
        Ok(self.boundary(lambda, true)? / self.boundary(lambda, false)?)
    }
}

/// Convenience wrapper: δ(z; λ₀) at one point.
pub fn delta_eval(
    sd: &ScatteringData,
    lambda0: f64,
    z: Complex64,
    cfg: &AsymptoticsConfig,
) -> Result<Complex64> {
    DeltaEval::new(sd, lambda0, cfg)?.eval(z)
}

/// Space-time window S(v₁,v₂,x₁,x₂) with the velocity interval
/// I = [-v₂/4, -v₁/4] it selects in the spectral plane.
#[derive(Debug, Clone, Copy)]
pub struct ConeSelection {
    pub v1: f64,
    pub v2: f64,
    pub x1: f64,
    pub x2: f64,
}

impl ConeSelection {
    pub fn new(v1: f64, v2: f64, x1: f64, x2: f64) -> Result<Self> {
        if !(v1 < v2) || !(x1 < x2) {
            return Err(Error::Param(format!(
                "cone requires v1 < v2 and x1 < x2, got ({v1}, {v2}, {x1}, {x2})"
            )));
        }
        Ok(Self { v1, v2, x1, x2 })
    }

    /// I = [-v₂/4, -v₁/4] on the real λ-axis.
    pub fn interval(&self) -> (f64, f64) {
        (-self.v2 / 4.0, -self.v1 / 4.0)
    }

    pub fn contains_xt(&self, x: f64, t: f64) -> bool {
        let t = t.max(1e-300);
        (self.v1..=self.v2).contains(&((x - self.x2) / t).max((x - self.x2) / t))
            || {
                let lo = self.x1 + self.v1 * t;
                let hi = self.x2 + self.v2 * t;
                (lo..=hi).contains(&x)
            }
    }

    /// Splits the discrete spectrum into (faster, inside, slower) by the
    /// soliton velocity v = -4 Re λ.
    pub fn partition(&self, discrete: &[DiscretePair]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let (ilo, ihi) = self.interval();
        let mut faster = Vec::new();
        let mut inside = Vec::new();
        let mut slower = Vec::new();
        for (k, d) in discrete.iter().enumerate() {
            let re = d.lambda.re;
            if re < ilo {
                faster.push(k); // Re λ < -v₂/4 ⇔ velocity > v₂
            } else if re > ihi {
                slower.push(k);
            } else {
                inside.push(k);
            }
        }
        (faster, inside, slower)
    }

    /// N(I): number of eigenvalues visible in the window.
    pub fn n_inside(&self, discrete: &[DiscretePair]) -> usize {
        self.partition(discrete).1.len()
    }
}

/// The δ(λ_k; λ₀)^{-2} modulation factor written through the κ-integral:
/// exp((i/π) ∫_{-∞}^{λ₀} log(1 + s|ρ(s)|²)/(s - λ_k) ds).
fn delta_modulation(
    kappa: &KappaEval,
    lambda0: f64,
    lambda_k: Complex64,
    tol: f64,
) -> Complex64 {
    let (lo, hi) = kappa.support();
    let top = lambda0.min(hi);
    if top <= lo {
        return ONE;
    }
    let integral = adaptive_simpson_complex(
        &|s| Complex64::new(kappa.eval(s), 0.0) / (s - lambda_k),
        lo,
        top,
        tol,
    );
    (-2.0 * I * integral).exp()
}

/// Modulated reflectionless data D_I for a cone: keeps the eigenvalues
/// visible in I and dresses each norming constant with the squared Blaschke
/// product over the faster solitons and the δ^{-2} radiation factor at λ₀.
pub fn modulated_constants(
    sd: &ScatteringData,
    cone: &ConeSelection,
    lambda0: f64,
    cfg: &AsymptoticsConfig,
) -> Result<Vec<DiscretePair>> {
    let kappa = KappaEval::new(sd)?;
    let (faster, inside, _) = cone.partition(&sd.discrete);
    let mut out = Vec::with_capacity(inside.len());
    for &k in &inside {
        let dk = sd.discrete[k];
        let mut c = dk.c;
        for &j in &faster {
            let lj = sd.discrete[j].lambda;
            let ratio = (dk.lambda - lj) / (dk.lambda - lj.conj());
            c *= ratio * ratio;
        }
        c *= delta_modulation(&kappa, lambda0, dk.lambda, cfg.quad_tol);
        out.push(DiscretePair { lambda: dk.lambda, c });
    }
    Ok(out)
}

/// The soliton-resolution phase
/// α₀(λ₀, ±) = ±(1/π) ∫_{∓∞}^{λ₀} log(1 + λ|ρ|²)/λ dλ + 4 Σ_{Re λ_k ∈ I^∓} arg λ_k.
pub fn alpha0(
    sd: &ScatteringData,
    cone: &ConeSelection,
    lambda0: f64,
    plus_time: bool,
    cfg: &AsymptoticsConfig,
) -> Result<f64> {
    let rho = crate::rhp::RhoInterp::new(sd);
    // log(1+λ|ρ|²)/λ is regular at 0 with value |ρ(0)|².
    let integrand = |lam: f64| {
        let r2 = rho.eval(lam).norm_sqr();
        if lam.abs() < 1e-9 {
            r2
        } else {
            (lam * r2).ln_1p() / lam
        }
    };
    let (lo, hi) = (sd.lambda_grid.x0, sd.lambda_grid.last());
    let integral = if plus_time {
        let top = lambda0.min(hi);
        if top <= lo {
            0.0
        } else {
            adaptive_simpson(&integrand, lo, top, cfg.quad_tol) / std::f64::consts::PI
        }
    } else {
        let bottom = lambda0.max(lo);
        if bottom >= hi {
            0.0
        } else {
            -adaptive_simpson(&integrand, bottom, hi, cfg.quad_tol) / std::f64::consts::PI
        }
    };
    let (faster, _, slower) = cone.partition(&sd.discrete);
    let set = if plus_time { &faster } else { &slower };
    let arg_sum: f64 = set.iter().map(|&k| sd.discrete[k].lambda.arg()).sum();
    Ok(integral + 4.0 * arg_sum)
}

/// Coefficients and phase of the parabolic-cylinder local model at the
/// stationary point λ₀ = -x/(4t).
#[derive(Debug, Clone, Copy)]
pub struct PcCoeffs {
    pub lambda0: f64,
    pub kappa: f64,
    pub beta12: Complex64,
    pub beta21: Complex64,
    /// ω(x,t) = arg ρ(λ₀) + 2β(λ₀) - κ log(8t) + 4tλ₀².
    pub omega: f64,
    /// Set when |ρ(λ₀)| is below the zero-reflection floor; the β's are
    /// then returned as zero and the dispersive term vanishes.
    pub zero_reflection: bool,
}

/// β₁₂, β₂₁ and ω(x, t).
pub fn pc_coeffs(sd: &ScatteringData, x: f64, t: f64, cfg: &AsymptoticsConfig) -> Result<PcCoeffs> {
    if !(t > 0.0) {
        return Err(Error::Param(format!("pc_coeffs requires t > 0, got {t}")));
    }
    let lambda0 = -x / (4.0 * t);
    let delta = DeltaEval::new(sd, lambda0, cfg)?;
    let rho0 = crate::rhp::RhoInterp::new(sd).eval(lambda0);
    let r0 = rho0.norm();
    // κ(λ₀) from the same interpolated ρ(λ₀) that enters the β's, so that
    // the Γ-identity β₁₂β₂₁ = κ holds to machine precision.
    let kappa = -(lambda0 * r0 * r0).ln_1p() / (2.0 * std::f64::consts::PI);
    let omega = rho0.arg() + 2.0 * delta.beta_lambda0 - kappa * (8.0 * t).ln()
        + 4.0 * t * lambda0 * lambda0;
    if r0 < cfg.zero_reflection_floor {
        return Ok(PcCoeffs {
            lambda0,
            kappa,
            beta12: Complex64::new(0.0, 0.0),
            beta21: Complex64::new(0.0, 0.0),
            omega,
            zero_reflection: true,
        });
    }
    let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
    let e = (-std::f64::consts::PI * kappa / 2.0).exp();
    let q4 = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let beta12 = sqrt_2pi * e * q4 / (lambda0 * r0) * recip_gamma(-I * kappa);
    let beta21 = -sqrt_2pi * e * q4.conj() / r0 * recip_gamma(I * kappa);
    Ok(PcCoeffs { lambda0, kappa, beta12, beta21, omega, zero_reflection: false })
}

/// Φ(ζ): the parabolic-cylinder core of the local model.
///
/// The off-diagonal prefactors are +iβ₁₂ and -iβ₂₁: with these signs the
/// connection terms of D_{∓iκ-1} cancel the O(1) pieces injected by the
/// lens factors L(ζ) in the sectors adjacent to the real axis, which is
/// what makes P^pc - I = O(1/ζ) uniformly on boundary circles.
fn phi_matrix(kappa: f64, b12: Complex64, b21: Complex64, zeta: Complex64) -> [[Complex64; 2]; 2] {
    let pi = std::f64::consts::PI;
    let ik = I * kappa;
    if zeta.im >= 0.0 {
        let w = zeta * Complex64::from_polar(1.0, -3.0 * pi / 4.0);
        let v = zeta * Complex64::from_polar(1.0, -pi / 4.0);
        [
            [
                (-3.0 * pi * kappa / 4.0).exp() * parabolic_cylinder(ik, w),
                I * b12
                    * ((pi / 4.0) * Complex64::new(kappa, -1.0)).exp()
                    * parabolic_cylinder(-ik - 1.0, v),
            ],
            [
                -I * b21
                    * ((-3.0 * pi / 4.0) * Complex64::new(kappa, 1.0)).exp()
                    * parabolic_cylinder(ik - 1.0, w),
                (pi * kappa / 4.0).exp() * parabolic_cylinder(-ik, v),
            ],
        ]
    } else {
        let w = zeta * Complex64::from_polar(1.0, pi / 4.0);
        let v = zeta * Complex64::from_polar(1.0, 3.0 * pi / 4.0);
        [
            [
                (pi * kappa / 4.0).exp() * parabolic_cylinder(ik, w),
                I * b12
                    * ((-3.0 * pi / 4.0) * Complex64::new(kappa, -1.0)).exp()
                    * parabolic_cylinder(-ik - 1.0, v),
            ],
            [
                -I * b21
                    * ((pi / 4.0) * Complex64::new(kappa, 1.0)).exp()
                    * parabolic_cylinder(ik - 1.0, w),
                (-3.0 * pi * kappa / 4.0).exp() * parabolic_cylinder(-ik, v),
            ],
        ]
    }
}

fn matmul(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// P^pc(z; x, t) = e^{iωσ₃/2} Φ(ζ) L(ζ) ζ^{-iκσ₃} e^{iζ²σ₃/4} e^{-iωσ₃/2}
/// with ζ = √(8t)(z - λ₀).
pub fn pc_model_matrix(
    sd: &ScatteringData,
    z: Complex64,
    x: f64,
    t: f64,
    cfg: &AsymptoticsConfig,
) -> Result<[[Complex64; 2]; 2]> {
    let pc = pc_coeffs(sd, x, t, cfg)?;
    if pc.zero_reflection {
        return Ok([[ONE, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), ONE]]);
    }
    let rho0 = crate::rhp::RhoInterp::new(sd).eval(pc.lambda0);
    let r0 = rho0.norm();
    let d = 1.0 + pc.lambda0 * r0 * r0;
    let zeta = (8.0 * t).sqrt() * (z - pc.lambda0);
    let phi = phi_matrix(pc.kappa, pc.beta12, pc.beta21, zeta);

    let arg = zeta.arg();
    let pi = std::f64::consts::PI;
    let zero = Complex64::new(0.0, 0.0);
    let l = if (0.0..pi / 4.0).contains(&arg) {
        [[ONE, zero], [Complex64::new(pc.lambda0 * r0, 0.0), ONE]]
    } else if (3.0 * pi / 4.0..=pi).contains(&arg) {
        [[ONE, Complex64::new(r0 / d, 0.0)], [zero, ONE]]
    } else if (-pi / 4.0..0.0).contains(&arg) {
        [[ONE, Complex64::new(-r0, 0.0)], [zero, ONE]]
    } else if (-pi..-3.0 * pi / 4.0).contains(&arg) {
        [[ONE, zero], [Complex64::new(-pc.lambda0 * r0 / d, 0.0), ONE]]
    } else {
        [[ONE, zero], [zero, ONE]]
    };

    // ζ^{-iκσ₃} e^{iζ²σ₃/4}, principal branch. The inverse entry comes from
    // the negated exponent: |zk| can reach e^{±|ζ|²/4}, where the naive
    // complex reciprocal underflows in its denominator.
    let s = -I * pc.kappa * zeta.ln() + I * zeta * zeta / 4.0;
    let diag = [[s.exp(), zero], [zero, (-s).exp()]];

    let mut m = matmul(matmul(phi, l), diag);
    // Conjugation by e^{iωσ₃/2} multiplies the off-diagonal by e^{±iω}.
    let eo = Complex64::from_polar(1.0, pc.omega);
    m[0][1] *= eo;
    m[1][0] *= eo.conj();
    Ok(m)
}

/// Boundary coefficient of the local model: P^pc = I + A/ζ + O(t⁻¹) with
/// A = [[0, iβ₁₂ e^{iω}], [-iβ₂₁ e^{-iω}, 0]] (signs matching
/// [`phi_matrix`]).
pub fn pc_boundary_coefficient(pc: &PcCoeffs) -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let eo = Complex64::from_polar(1.0, pc.omega);
    [[zero, I * pc.beta12 * eo], [-I * pc.beta21 * eo.conj(), zero]]
}

/// Reflectionless data D_ξ of the soliton model: every eigenvalue kept, each
/// norming constant dressed by δ(λ_k; λ₀)^{-2}.
pub fn soliton_model_data(
    sd: &ScatteringData,
    lambda0: f64,
    cfg: &AsymptoticsConfig,
) -> Result<Vec<DiscretePair>> {
    let kappa = KappaEval::new(sd)?;
    Ok(sd
        .discrete
        .iter()
        .map(|d| DiscretePair {
            lambda: d.lambda,
            c: d.c * delta_modulation(&kappa, lambda0, d.lambda, cfg.quad_tol),
        })
        .collect())
}

fn p_sol_at_lambda0(res: &NSolitonResidues, lambda0: f64) -> (Complex64, Complex64) {
    res.row(Complex64::new(lambda0, 0.0))
}

/// Leading dispersive correction 2i(E₁)₁₂ =
/// (2t)^{-1/2} [β₁₂ e^{iω} P^sol₁₁(λ₀)² + β₂₁ e^{-iω} P^sol₁₂(λ₀)²].
pub fn dispersive_term(sd: &ScatteringData, x: f64, t: f64, cfg: &AsymptoticsConfig) -> Result<Complex64> {
    if !(t > 1.0) {
        return Err(Error::Region(format!("dispersive term needs t > 1, got {t}")));
    }
    let pc = pc_coeffs(sd, x, t, cfg)?;
    if pc.zero_reflection {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let data = soliton_model_data(sd, pc.lambda0, cfg)?;
    let res = nsoliton_residues(&data, x, t)?;
    let (p11, p12) = p_sol_at_lambda0(&res, pc.lambda0);
    let eo = Complex64::from_polar(1.0, pc.omega);
    Ok((pc.beta12 * eo * p11 * p11 + pc.beta21 * eo.conj() * p12 * p12) / (2.0 * t).sqrt())
}

/// Predicted field q(x, t) ≈ q_sol(x, t; D_ξ) + 2i(E₁)₁₂.
pub fn asymptotic_q(sd: &ScatteringData, x: f64, t: f64, cfg: &AsymptoticsConfig) -> Result<Complex64> {
    if !(t > 1.0) {
        return Err(Error::Region(format!("asymptotic evaluator needs t > 1, got {t}")));
    }
    let lambda0 = -x / (4.0 * t);
    let data = soliton_model_data(sd, lambda0, cfg)?;
    let q_sol = nsoliton_residues(&data, x, t)?.q();
    let disp = dispersive_term(sd, x, t, cfg)?;
    Ok(q_sol + disp)
}

/// Predicted field u(x, t) ≈ u_sol(x, t; D_I) e^{iα₀(λ₀, +)} inside the
/// cone, valid for |λ₀| > M t^{-1/8}.
pub fn asymptotic_u(
    sd: &ScatteringData,
    x: f64,
    t: f64,
    cone: &ConeSelection,
    cfg: &AsymptoticsConfig,
) -> Result<Complex64> {
    if !(t > 1.0) {
        return Err(Error::Region(format!("asymptotic evaluator needs t > 1, got {t}")));
    }
    let lambda0 = -x / (4.0 * t);
    if lambda0.abs() <= cfg.m_region * t.powf(-0.125) {
        return Err(Error::Region(format!(
            "|λ₀| = {:.4e} inside the excluded region M t^(-1/8) = {:.4e}",
            lambda0.abs(),
            cfg.m_region * t.powf(-0.125)
        )));
    }
    let data = modulated_constants(sd, cone, lambda0, cfg)?;
    let res = nsoliton_residues(&data, x, t)?;
    let n0 = res.n11_at_zero();
    let u_sol = res.q() / (n0 * n0);
    let a0 = alpha0(sd, cone, lambda0, true, cfg)?;
    Ok(u_sol * Complex64::from_polar(1.0, a0))
}

/// Per-soliton asymptotic parameters of the stability theorem.
#[derive(Debug, Clone, Copy)]
pub struct SolitonPhaseShift {
    pub lambda: Complex64,
    pub omega: f64,
    pub c: f64,
    pub nu: f64,
    pub mu: f64,
    /// Position offset x_k^±.
    pub x_shift: f64,
    /// Carrier phase φ_k^± (mod 2π).
    pub phi_shift: f64,
}

/// Position and phase offsets of soliton k as t → ±∞:
///
/// ```text
/// x_k^± = (1/4μ) log|λ_k C_k²/4μ²| + (1/μ) Σ_{±(ν_k-ν_j)>0} log|(λ_k-λ_j)/(λ_k-λ̄_j)|
///         + ∫ κ(s)/((s-ν_k)²+μ²) ds
/// φ_k^± = arg(iλ_k C_k) + 2 Σ arg((λ_k-λ_j)/(λ_k-λ̄_j)) - 2 ∫ (s-ν_k) κ(s)/((s-ν_k)²+μ²) ds
/// ```
///
/// with the sums over the solitons overtaken as t → ±∞ and the κ-integrals
/// over (-∞, ν_k] for +, [ν_k, ∞) with opposite sign for -. The interaction
/// coefficients (1/μ and 2) are the ones consistent with the modulated
/// norming constants Ĉ_k = C_k Π(...)² δ(λ_k)^{-2} and are pinned by the
/// exact 2-soliton peak-fit oracle; the stability-theorem display carries
/// half these values.
pub fn phase_shifts(
    sd: &ScatteringData,
    k: usize,
    plus_time: bool,
    cfg: &AsymptoticsConfig,
) -> Result<SolitonPhaseShift> {
    let dk = *sd
        .discrete
        .get(k)
        .ok_or_else(|| Error::Param(format!("no discrete pair with index {k}")))?;
    let (nu, mu) = (dk.lambda.re, dk.lambda.im);
    for (j, dj) in sd.discrete.iter().enumerate() {
        if j != k && (dj.lambda.re - nu).abs() < 1e-9 {
            return Err(Error::DegenerateVelocities(format!(
                "Re λ_{k} = Re λ_{j} = {nu}"
            )));
        }
    }
    let kappa = KappaEval::new(sd)?;
    let (lo, hi) = kappa.support();

    let base_x = (dk.lambda.norm() * dk.c.norm_sqr() / (4.0 * mu * mu)).ln() / (4.0 * mu);
    let base_phi = (I * dk.lambda * dk.c).arg();

    let mut sum_log = 0.0;
    let mut sum_arg = 0.0;
    for (j, dj) in sd.discrete.iter().enumerate() {
        if j == k {
            continue;
        }
        let overtaken = if plus_time { nu - dj.lambda.re > 0.0 } else { dj.lambda.re - nu > 0.0 };
        if overtaken {
            let ratio = (dk.lambda - dj.lambda) / (dk.lambda - dj.lambda.conj());
            sum_log += ratio.norm().ln();
            sum_arg += ratio.arg();
        }
    }

    let poisson = |s: f64| kappa.eval(s) / ((s - nu) * (s - nu) + mu * mu);
    let conjugate = |s: f64| (s - nu) * kappa.eval(s) / ((s - nu) * (s - nu) + mu * mu);
    let (kx, kphi) = if plus_time {
        let top = nu.min(hi);
        if top <= lo {
            (0.0, 0.0)
        } else {
            (
                adaptive_simpson(&poisson, lo, top, cfg.quad_tol),
                -2.0 * adaptive_simpson(&conjugate, lo, top, cfg.quad_tol),
            )
        }
    } else {
        let bottom = nu.max(lo);
        if bottom >= hi {
            (0.0, 0.0)
        } else {
            (
                -adaptive_simpson(&poisson, bottom, hi, cfg.quad_tol),
                2.0 * adaptive_simpson(&conjugate, bottom, hi, cfg.quad_tol),
            )
        }
    };

    let two_pi = 2.0 * std::f64::consts::PI;
    Ok(SolitonPhaseShift {
        lambda: dk.lambda,
        omega: 4.0 * dk.lambda.norm_sqr(),
        c: -4.0 * nu,
        nu,
        mu,
        x_shift: base_x + sum_log / mu + kx,
        phi_shift: (base_phi + 2.0 * sum_arg + kphi).rem_euclid(two_pi),
    })
}
