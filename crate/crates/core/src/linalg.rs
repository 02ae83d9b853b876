//! Thin helpers over nalgebra for the symmetric factorizations used here.

use ndarray::Array2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not positive definite (Cholesky failed)")]
    NotPositiveDefinite,
    #[error("matrix has eigenvalue {0} below the PSD tolerance")]
    NegativeEigenvalue(f64),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
}

fn to_na(a: &Array2<f64>) -> nalgebra::DMatrix<f64> {
    nalgebra::DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[[i, j]])
}

fn from_na(m: &nalgebra::DMatrix<f64>) -> Array2<f64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(i, j)| m[(i, j)])
}

/// Lower-triangular Cholesky factor L with A = L Lᵀ.
pub fn cholesky_lower(a: &Array2<f64>) -> Result<Array2<f64>, LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NotSquare(a.nrows(), a.ncols()));
    }
    let chol = nalgebra::Cholesky::new(to_na(a)).ok_or(LinalgError::NotPositiveDefinite)?;
    Ok(from_na(&chol.l()))
}

/// Eigen-decomposition of a symmetric matrix: (eigenvalues, eigenvectors),
/// with A = Q diag(w) Qᵀ and eigenvector j in column j of Q.
pub fn sym_eigen(a: &Array2<f64>) -> Result<(Vec<f64>, Array2<f64>), LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NotSquare(a.nrows(), a.ncols()));
    }
    let eig = nalgebra::SymmetricEigen::new(to_na(a));
    let w: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    Ok((w, from_na(&eig.eigenvectors)))
}

/// Symmetric positive-semidefinite square root via eigen-decomposition.
///
/// Eigenvalues in `[-tol, 0)` are clamped to zero; anything below `-tol`
/// signals an invalid input.
pub fn sym_sqrt(a: &Array2<f64>, tol: f64) -> Result<Array2<f64>, LinalgError> {
    let (w, q) = sym_eigen(a)?;
    let p = a.nrows();
    for &wi in &w {
        if wi < -tol {
            return Err(LinalgError::NegativeEigenvalue(wi));
        }
    }
    let mut scaled = q.clone();
    for (j, &wj) in w.iter().enumerate() {
        let s = wj.max(0.0).sqrt();
        for i in 0..p {
            scaled[[i, j]] *= s;
        }
    }
    Ok(scaled.dot(&q.t()))
}

/// Largest eigenvalue of a symmetric PSD matrix (Lipschitz constant of g ↦ Wg).
pub fn max_eigenvalue(a: &Array2<f64>) -> Result<f64, LinalgError> {
    let (w, _) = sym_eigen(a)?;
    Ok(w.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

/// Solve A x = b for symmetric positive-definite A via Cholesky.
pub fn solve_spd(a: &Array2<f64>, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let chol = nalgebra::Cholesky::new(to_na(a)).ok_or(LinalgError::NotPositiveDefinite)?;
    let x = chol.solve(&nalgebra::DVector::from_column_slice(b));
    Ok(x.iter().copied().collect())
}

/// Max absolute entry of a matrix.
pub fn max_abs(a: &Array2<f64>) -> f64 {
    a.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::arr2;

    #[test]
    fn cholesky_recomposes() {
        let a = arr2(&[[4.0, 2.0], [2.0, 3.0]]);
        let l = cholesky_lower(&a).unwrap();
        let back = l.dot(&l.t());
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(back[[i, j]], a[[i, j]], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = arr2(&[[1.0, 2.0], [2.0, 1.0]]);
        assert!(cholesky_lower(&a).is_err());
    }

    #[test]
    fn sqrt_squares_back() {
        let a = arr2(&[[5.0, 0.5], [0.5, 5.0]]);
        let r = sym_sqrt(&a, 1e-10).unwrap();
        let back = r.dot(&r);
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(back[[i, j]], a[[i, j]], epsilon = 1e-10);
            }
        }
        // symmetric root, not triangular
        assert_abs_diff_eq!(r[[0, 1]], r[[1, 0]], epsilon = 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative() {
        let a = arr2(&[[1.0, 0.0], [0.0, -0.5]]);
        assert!(sym_sqrt(&a, 1e-10).is_err());
    }
}
