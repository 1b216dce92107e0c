//! Core data types, validation, and JSON serialization.
//!
//! All complex numbers serialize as two-element `[re, im]` arrays and uniform
//! grids as `{x0, dx, n}` headers, which keeps the files compact and
//! language-neutral. Every type is immutable after construction and safe to
//! share across worker threads.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serde helpers representing `Complex64` as `[re, im]`.
mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Serde helpers representing `Vec<Complex64>` as a list of `[re, im]` pairs.
mod complex_list {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Complex64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// A uniform grid described by its left endpoint, spacing, and length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl UniformGrid {
    pub fn new(x0: f64, dx: f64, n: usize) -> Self {
        Self { x0, dx, n }
    }

    /// A grid spanning `[-half_width, half_width]` with `n` points, offset by
    /// half a step so that 0 is never a node (the transition coefficients have
    /// removable 1/λ factors there).
    pub fn symmetric_offset(half_width: f64, n: usize) -> Self {
        let dx = 2.0 * half_width / n as f64;
        Self { x0: -half_width + 0.5 * dx, dx, n }
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x0 + self.dx * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.point(i))
    }

    pub fn last(&self) -> f64 {
        self.point(self.n.saturating_sub(1))
    }
}

/// Which equation's variable a sample holds: `q` (scattering gauge) or `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaugeKind {
    #[serde(rename = "q_gauge")]
    QGauge,
    #[serde(rename = "u_gauge")]
    UGauge,
}

/// A complex field sampled on a uniform truncated x-grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSample {
    pub x0: f64,
    pub dx: f64,
    pub kind: GaugeKind,
    /// Maximum modulus allowed at the two boundary samples.
    pub tail_tol: f64,
    #[serde(with = "complex_list")]
    pub values: Vec<Complex64>,
}

impl PotentialSample {
    /// Builds a sample and checks the decay and grid invariants.
    pub fn new(
        x0: f64,
        dx: f64,
        kind: GaugeKind,
        tail_tol: f64,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Param("potential sample must be non-empty".into()));
        }
        if !(dx > 0.0) {
            return Err(Error::Param(format!("grid spacing must be positive, got {dx}")));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::Param(format!("tail_tol must be positive, got {tail_tol}")));
        }
        let head = values[0].norm();
        let tail = values[values.len() - 1].norm();
        if head > tail_tol || tail > tail_tol {
            return Err(Error::Param(format!(
                "boundary samples above tail_tol={tail_tol}: |q(x0)|={head:.3e}, |q(xN)|={tail:.3e}"
            )));
        }
        Ok(Self { x0, dx, kind, tail_tol, values })
    }

    /// Samples a closed-form field on `grid`.
    pub fn from_fn(
        grid: UniformGrid,
        kind: GaugeKind,
        tail_tol: f64,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid.x0, grid.dx, kind, tail_tol, values)
    }

    pub fn grid(&self) -> UniformGrid {
        UniformGrid::new(self.x0, self.dx, self.values.len())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + self.dx * i as f64
    }

    /// Spatial reflection `u(x) ↦ u(-x)`, mapping solutions with ε = -1 to
    /// solutions with ε = +1 and vice versa.
    pub fn reflect_x(&self) -> Self {
        let n = self.values.len();
        let mut values = self.values.clone();
        values.reverse();
        Self {
            x0: -(self.x0 + self.dx * (n - 1) as f64),
            dx: self.dx,
            kind: self.kind,
            tail_tol: self.tail_tol,
            values,
        }
    }

    /// Trapezoid-rule squared L² norm.
    pub fn mass(&self) -> f64 {
        let w = |i: usize| if i == 0 || i + 1 == self.values.len() { 0.5 } else { 1.0 };
        self.dx
            * self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| w(i) * v.norm_sqr())
                .sum::<f64>()
    }
}

/// One discrete spectral pair: a simple zero of ᾰ in C⁺ and its norming
/// constant.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DiscretePair {
    #[serde(with = "complex_pair")]
    pub lambda: Complex64,
    #[serde(rename = "C", with = "complex_pair")]
    pub c: Complex64,
}

/// Scattering data: reflection coefficient samples on a real λ-grid plus the
/// discrete pairs, with the sign convention `epsilon = -1` pinned in the
/// serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScatteringData {
    pub lambda_grid: UniformGrid,
    #[serde(with = "complex_list")]
    pub rho: Vec<Complex64>,
    pub discrete: Vec<DiscretePair>,
    pub epsilon: i8,
}

impl ScatteringData {
    pub fn new(lambda_grid: UniformGrid, rho: Vec<Complex64>, discrete: Vec<DiscretePair>) -> Self {
        Self { lambda_grid, rho, discrete, epsilon: -1 }
    }

    /// Reflectionless data on a default grid.
    pub fn reflectionless(discrete: Vec<DiscretePair>) -> Self {
        let grid = UniformGrid::symmetric_offset(6.0, 64);
        let rho = vec![Complex64::new(0.0, 0.0); grid.n];
        Self::new(grid, rho, discrete)
    }

    /// `1 + λ|ρ(λ)|²` at grid node `i`.
    pub fn jump_positivity(&self, i: usize) -> f64 {
        1.0 + self.lambda_grid.point(i) * self.rho[i].norm_sqr()
    }

    /// Minimum pairwise distance over `{λ_k} ∪ {conj λ_k}`; infinite when
    /// fewer than two points.
    pub fn min_pair_distance(&self) -> f64 {
        let mut pts: Vec<Complex64> = Vec::with_capacity(2 * self.discrete.len());
        for d in &self.discrete {
            pts.push(d.lambda);
            pts.push(d.lambda.conj());
        }
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.min((pts[i] - pts[j]).norm());
            }
        }
        best
    }
}

/// Which Jost solution and which of its columns a [`JostColumn`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JostSide {
    /// Normalized at x → -∞.
    Minus,
    /// Normalized at x → +∞.
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JostColumnKind {
    First,
    Second,
}

/// One column of a Jost solution n^± on the x-grid of the potential.
#[derive(Debug, Clone)]
pub struct JostColumn {
    pub lambda: Complex64,
    pub side: JostSide,
    pub column: JostColumnKind,
    /// Pairs (row-1 entry, row-2 entry) per grid node.
    pub values: Vec<(Complex64, Complex64)>,
}

impl JostColumn {
    /// The normalization target at the marching end: (1,0) or (0,1).
    pub fn normalization(&self) -> (Complex64, Complex64) {
        match self.column {
            JostColumnKind::First => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            JostColumnKind::Second => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        }
    }
}

/// One small circle of the augmented contour.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContourCircle {
    #[serde(with = "complex_pair")]
    pub center: Complex64,
    pub radius: f64,
    /// Node positions with complex quadrature weights that already include
    /// the orientation (dz along the oriented parametrization).
    #[serde(with = "complex_list")]
    pub nodes: Vec<Complex64>,
    #[serde(with = "complex_list")]
    pub weights: Vec<Complex64>,
    /// True when the curve is traversed counterclockwise.
    pub counterclockwise: bool,
}

/// Quadrature nodes and weights on the truncated real line plus the
/// per-eigenvalue circles Γ_k (upper, clockwise) and Γ_k* (lower,
/// counterclockwise).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Real-line nodes (strictly increasing) and trapezoid weights.
    pub real_nodes: Vec<(f64, f64)>,
    /// Circles around each λ_k.
    pub circles_upper: Vec<ContourCircle>,
    /// Circles around each conj(λ_k).
    pub circles_lower: Vec<ContourCircle>,
}

/// Self-similar phase variables of the long-time analysis:
/// θ(λ, ξ) = 2λ² + λξ with stationary point λ₀ = -ξ/4.
#[derive(Debug, Clone, Copy)]
pub struct PhaseParams {
    pub xi: f64,
    pub t: f64,
    pub lambda0: f64,
}

impl PhaseParams {
    pub fn new(xi: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Param(format!("phase parameters require t > 0, got {t}")));
        }
        Ok(Self { xi, t, lambda0: -xi / 4.0 })
    }

    pub fn from_xt(x: f64, t: f64) -> Result<Self> {
        Self::new(x / t, t)
    }

    /// θ(λ, ξ) = 2λ² + λξ.
    pub fn theta(&self, lambda: Complex64) -> Complex64 {
        2.0 * lambda * lambda + lambda * self.xi
    }

    /// t·θ(λ, x/t) = 2λ²t + λx, the phase actually exponentiated.
    pub fn t_theta(&self, lambda: Complex64) -> Complex64 {
        self.t * self.theta(lambda)
    }
}

/// Thresholds used by [`validate_scattering_data`].
#[derive(Debug, Clone, Copy)]
pub struct ValidationThresholds {
    /// Lower bound demanded of `min (1 + λ|ρ|²)`. Well inside double
    /// precision but conservative for the conditioning of the downstream
    /// linear systems.
    pub c2_min: f64,
    /// Lower bound demanded of the minimum pairwise eigenvalue distance.
    pub d_lambda_min: f64,
}

impl Default for ValidationThresholds {
    fn default() -> Self {
        Self { c2_min: 1e-3, d_lambda_min: 1e-6 }
    }
}

/// Outcome of validating a [`ScatteringData`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    /// min over the grid of `1 + λ|ρ(λ)|²`.
    pub c2: f64,
    /// Minimum pairwise distance among eigenvalues and their conjugates.
    pub d_lambda: f64,
    pub pass: bool,
}

/// Checks the no-spectral-singularity bound `1 + λ|ρ|² ≥ c₂ > 0` and the
/// eigenvalue separation `d_Λ > 0`.
pub fn validate_scattering_data(
    sd: &ScatteringData,
    thresholds: &ValidationThresholds,
) -> Result<ValidationReport> {
    if sd.epsilon != -1 {
        return Err(Error::Param(format!("library fixes epsilon = -1, got {}", sd.epsilon)));
    }
    if sd.rho.len() != sd.lambda_grid.n {
        return Err(Error::Param(format!(
            "rho has {} samples but the grid has {} nodes",
            sd.rho.len(),
            sd.lambda_grid.n
        )));
    }
    let c2 = (0..sd.lambda_grid.n)
        .map(|i| sd.jump_positivity(i))
        .fold(f64::INFINITY, f64::min);
    let d_lambda = sd.min_pair_distance();

    if c2 <= thresholds.c2_min {
        return Err(Error::SpectralSingularity(format!(
            "min(1 + λ|ρ|²) = {c2:.3e} ≤ threshold {:.3e}",
            thresholds.c2_min
        )));
    }
    for d in &sd.discrete {
        if !(d.lambda.im > 0.0) {
            return Err(Error::Param(format!("eigenvalue {} not in C+", d.lambda)));
        }
        if d.c.norm() == 0.0 {
            return Err(Error::Param(format!("norming constant vanishes at λ = {}", d.lambda)));
        }
    }
    if d_lambda <= thresholds.d_lambda_min {
        return Err(Error::DegenerateSpectrum(format!(
            "min pairwise eigenvalue distance {d_lambda:.3e} ≤ threshold {:.3e}",
            thresholds.d_lambda_min
        )));
    }
    Ok(ValidationReport { c2, d_lambda, pass: true })
}

/// Serializes to the documented JSON schema.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses from the documented JSON schema with line/column diagnostics.
pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_data_passes_with_unit_c2() {
        let sd = ScatteringData::reflectionless(vec![]);
        let report = validate_scattering_data(&sd, &ValidationThresholds::default()).unwrap();
        assert_eq!(report.c2, 1.0);
        assert!(report.pass);
        assert!(report.d_lambda.is_infinite());
    }

    #[test]
    fn vanishing_jump_positivity_is_a_spectral_singularity() {
        let grid = UniformGrid::symmetric_offset(2.0, 8);
        // Choose |ρ(λ)|² = -1/λ at a λ < 0 node so 1 + λ|ρ|² = 0 there.
        let mut rho = vec![c(0.0, 0.0); grid.n];
        let i = 1;
        let lam = grid.point(i);
        assert!(lam < 0.0);
        rho[i] = c((-1.0 / lam).sqrt(), 0.0);
        let sd = ScatteringData::new(grid, rho, vec![]);
        let err = validate_scattering_data(&sd, &ValidationThresholds::default()).unwrap_err();
        assert!(matches!(err, Error::SpectralSingularity(_)));
    }

    #[test]
    fn coincident_eigenvalues_are_degenerate() {
        let sd = ScatteringData::reflectionless(vec![
            DiscretePair { lambda: c(0.0, 1.0), c: c(1.0, 0.0) },
            DiscretePair { lambda: c(1e-12, 1.0), c: c(1.0, 0.0) },
        ]);
        let err = validate_scattering_data(&sd, &ValidationThresholds::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateSpectrum(_)));
    }

    #[test]
    fn near_axis_eigenvalue_trips_the_separation_threshold() {
        // d_Λ includes conjugates, so Im λ = 4e-13 gives a pair 8e-13 apart.
        let sd = ScatteringData::reflectionless(vec![DiscretePair {
            lambda: c(0.3, 4e-13),
            c: c(1.0, 0.0),
        }]);
        let err = validate_scattering_data(&sd, &ValidationThresholds::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateSpectrum(_)));
    }

    #[test]
    fn lambda0_is_exactly_minus_xi_over_4() {
        for &xi in &[-3.0, -0.5, 0.0, 0.25, 8.0] {
            let p = PhaseParams::new(xi, 1.0).unwrap();
            assert_eq!(p.lambda0, -xi / 4.0);
        }
    }

    #[test]
    fn missing_rho_field_is_a_parse_error() {
        let text = r#"{"lambda_grid":{"x0":-1.0,"dx":0.5,"n":4},"discrete":[],"epsilon":-1}"#;
        let err = from_json::<ScatteringData>(text).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn empty_discrete_list_accepted() {
        let text = r#"{"lambda_grid":{"x0":-1.0,"dx":0.5,"n":2},
                       "rho":[[0.0,0.0],[0.1,-0.2]],"discrete":[],"epsilon":-1}"#;
        let sd: ScatteringData = from_json(text).unwrap();
        assert!(sd.discrete.is_empty());
        assert_eq!(sd.rho[1], c(0.1, -0.2));
    }

    #[test]
    fn golden_file_round_trip_is_bit_exact() {
        let sd = ScatteringData::new(
            UniformGrid::symmetric_offset(3.0, 5),
            vec![c(0.1, 0.2), c(-0.3, 0.0), c(0.0, 0.7), c(1e-17, -2.5e4), c(0.5, 0.5)],
            vec![DiscretePair { lambda: c(-0.25, 0.5), c: c(1.25, -3.5) }],
        );
        let text = to_json(&sd).unwrap();
        let back: ScatteringData = from_json(&text).unwrap();
        let again = to_json(&back).unwrap();
        assert_eq!(text, again);
        for (a, b) in sd.rho.iter().zip(back.rho.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn potential_tail_violation_rejected() {
        let grid = UniformGrid::new(-5.0, 0.1, 101);
        let err = PotentialSample::from_fn(grid, GaugeKind::QGauge, 1e-8, |_| c(1.0, 0.0))
            .unwrap_err();
        assert!(matches!(err, Error::Param(_)));
    }

    #[test]
    fn reflect_x_is_an_involution_preserving_the_grid() {
        let grid = UniformGrid::new(-4.0, 0.25, 33);
        let p = PotentialSample::from_fn(grid, GaugeKind::UGauge, 1e-3, |x| {
            c(0.05 * (-x * x).exp(), 0.02 * x * (-x * x).exp())
        })
        .unwrap();
        let r = p.reflect_x();
        assert!((r.x0 - p.x0).abs() < 1e-14);
        let rr = r.reflect_x();
        for (a, b) in p.values.iter().zip(rr.values.iter()) {
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn serialization_round_trips(
            res in proptest::collection::vec((-1.0e3f64..1e3, -1.0e3f64..1e3), 1..40),
            x0 in -10.0f64..0.0,
            dx in 1e-3f64..1.0,
        ) {
            let rho: Vec<Complex64> = res.iter().map(|&(a, b)| c(a, b)).collect();
            let sd = ScatteringData::new(UniformGrid::new(x0, dx, rho.len()), rho, vec![]);
            let text = to_json(&sd).unwrap();
            let back: ScatteringData = from_json(&text).unwrap();
            prop_assert_eq!(sd.rho.len(), back.rho.len());
            for (a, b) in sd.rho.iter().zip(back.rho.iter()) {
                prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
                prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
        }
    }
}
