use dnls_ist::asymptotics::{pc_boundary_coefficient, pc_coeffs, pc_model_matrix, AsymptoticsConfig};
use dnls_ist::types::{ScatteringData, UniformGrid};
use num_complex::Complex64;
fn main() {
    let cplx = Complex64::new;
    let grid = UniformGrid::symmetric_offset(6.0, 2400);
    let rho: Vec<Complex64> = grid.points().map(|l| cplx(0.9 * (-200.0 * (l + 1.0) * (l + 1.0)).exp(), 0.0)).collect();
    let sd = ScatteringData::new(grid, rho, vec![]);
    let cfg = AsymptoticsConfig::default();
    let radius = 0.15;
    for &t in &[100.0f64, 316.0, 1000.0, 3162.0, 10000.0] {
        let x = 4.0 * t;
        let pc = pc_coeffs(&sd, x, t, &cfg).unwrap();
        let a = pc_boundary_coefficient(&pc);
        let mut worst = 0.0f64;
        let mut worst_phi = 0.0;
        for j in 0..16 {
            let phi = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / 16.0;
            let z = pc.lambda0 + Complex64::from_polar(radius, phi);
            let zeta = (8.0 * t).sqrt() * (z - pc.lambda0);
            let m = pc_model_matrix(&sd, z, x, t, &cfg).unwrap();
            for r in 0..2 {
                for s in 0..2 {
                    let expect = if r == s { cplx(1.0, 0.0) } else { cplx(0.0, 0.0) } + a[r][s] / zeta;
                    let e = (m[r][s] - expect).norm();
                    if !e.is_finite() || e > worst { worst = e; worst_phi = phi; }
                }
            }
        }
        println!("t={t:8.0}: worst={worst:.4e} at phi={worst_phi:.3}  |zeta|={:.1}", (8.0*t).sqrt()*radius);
    }
}
