//! Dense complex linear solves shared by the soliton engine and the
//! Beals–Coifman discretization.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Solves `A x = b` by LU with partial pivoting after row equilibration.
///
/// Row equilibration keeps the soliton systems solvable in the wings of the
/// space-time cone, where residue phase factors span many orders of
/// magnitude.
pub fn solve_dense(a: &DMatrix<Complex64>, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    assert_eq!(b.len(), n);

    let mut scaled = a.clone();
    let mut rhs = nalgebra::DVector::from_column_slice(b);
    for i in 0..n {
        let row_max = (0..n).map(|j| scaled[(i, j)].norm()).fold(0.0f64, f64::max);
        if row_max == 0.0 {
            return Err(Error::SingularSystem(format!("zero row {i}")));
        }
        let s = Complex64::new(1.0 / row_max, 0.0);
        for j in 0..n {
            scaled[(i, j)] *= s;
        }
        rhs[i] *= s;
    }

    let lu = scaled.lu();
    match lu.solve(&rhs) {
        Some(x) if x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) => {
            Ok(x.iter().copied().collect())
        }
        _ => Err(Error::SingularSystem(format!("LU solve failed for {n}x{n} system"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_a_small_complex_system() {
        let a = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)]);
        let b = [c(1.0, 1.0), c(0.0, 2.0)];
        let x = solve_dense(&a, &b).unwrap();
        // Residual check.
        let r0 = a[(0, 0)] * x[0] + a[(0, 1)] * x[1] - b[0];
        let r1 = a[(1, 0)] * x[0] + a[(1, 1)] * x[1] - b[1];
        assert!(r0.norm() < 1e-14 && r1.norm() < 1e-14);
    }

    #[test]
    fn badly_scaled_rows_still_solve() {
        let s = 1e150;
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[c(s, 0.0), c(s, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        );
        let b = [c(2.0 * s, 0.0), c(0.0, 0.0)];
        let x = solve_dense(&a, &b).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn singular_system_reports() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let b = [c(1.0, 0.0), c(2.0, 0.0)];
        assert!(matches!(solve_dense(&a, &b), Err(Error::SingularSystem(_))));
    }
}
