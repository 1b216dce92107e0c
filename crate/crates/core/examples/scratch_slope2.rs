use dnls_ist::asymptotics::{pc_coeffs, pc_model_matrix, AsymptoticsConfig};
use dnls_ist::special::parabolic_cylinder;
use dnls_ist::types::{ScatteringData, UniformGrid};
use num_complex::Complex64;
fn main() {
    let cplx = Complex64::new;
    let grid = UniformGrid::symmetric_offset(6.0, 2400);
    let rho: Vec<Complex64> = grid.points().map(|l| cplx(0.9 * (-200.0 * (l + 1.0) * (l + 1.0)).exp(), 0.0)).collect();
    let sd = ScatteringData::new(grid, rho, vec![]);
    let cfg = AsymptoticsConfig::default();
    let t = 10000.0;
    let x = 4.0 * t;
    let pc = pc_coeffs(&sd, x, t, &cfg).unwrap();
    let phi = 4.072;
    let z = pc.lambda0 + Complex64::from_polar(0.15, phi);
    let zeta = (8.0f64 * t).sqrt() * (z - pc.lambda0);
    println!("zeta = {zeta}, kappa = {}", pc.kappa);
    let m = pc_model_matrix(&sd, z, x, t, &cfg).unwrap();
    for r in 0..2 { for s in 0..2 { println!("m[{r}][{s}] = {}", m[r][s]); } }
    let ik = Complex64::i() * pc.kappa;
    let w = zeta * Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let v = zeta * Complex64::from_polar(1.0, 3.0 * std::f64::consts::FRAC_PI_4);
    println!("D(ik, w) = {}", parabolic_cylinder(ik, w));
    println!("D(ik-1, w) = {}", parabolic_cylinder(ik - 1.0, w));
    println!("D(-ik, v) = {}", parabolic_cylinder(-ik, v));
    println!("D(-ik-1, v) = {}", parabolic_cylinder(-ik - 1.0, v));
    let zk = (-ik * zeta.ln()).exp() * (Complex64::i() * zeta * zeta / 4.0).exp();
    println!("zk = {zk}, 1/zk = {}", 1.0 / zk);
}
