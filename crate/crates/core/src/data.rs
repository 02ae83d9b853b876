//! Synthetic designs and data containers for the two simulation settings:
//! a Gaussian AR design with heteroscedastic linear responses, and a
//! Rademacher block design with a mixture-logistic binary response.

use crate::linalg::{self, LinalgError};
use crate::loss::{sigmoid, LossFamily};
use ndarray::{Array1, Array2};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("response length {y} does not match design rows {n}")]
    LengthMismatch { y: usize, n: usize },
    #[error("logistic responses must be 0 or 1 (found {0})")]
    NotBinary(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("block covariance requires p > 5 (got {0})")]
    BlockTooSmall(usize),
    #[error("design requires at least {need} columns (got {got})")]
    TooFewColumns { need: usize, got: usize },
    #[error("coefficient length {beta} does not match design columns {p}")]
    CoefMismatch { beta: usize, p: usize },
    #[error("loading must not be identically zero")]
    ZeroLoading,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A design matrix, response vector and the loss family they are fit under.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub x: Array2<f64>,
    pub y: Array1<f64>,
    pub family: LossFamily,
}

impl Dataset {
    pub fn new(x: Array2<f64>, y: Array1<f64>, family: LossFamily) -> Result<Self, DataError> {
        if y.len() != x.nrows() {
            return Err(DataError::LengthMismatch {
                y: y.len(),
                n: x.nrows(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(DataError::NonFinite("design matrix"));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(DataError::NonFinite("response"));
        }
        if family == LossFamily::Logistic {
            if let Some(bad) = y.iter().find(|&&v| v != 0.0 && v != 1.0) {
                return Err(DataError::NotBinary(*bad));
            }
        }
        Ok(Dataset { x, y, family })
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    /// Sub-dataset with the given rows, in the given order.
    pub fn subset(&self, rows: &[usize]) -> Dataset {
        let p = self.p();
        let mut x = Array2::zeros((rows.len(), p));
        let mut y = Array1::zeros(rows.len());
        for (k, &i) in rows.iter().enumerate() {
            x.row_mut(k).assign(&self.x.row(i));
            y[k] = self.y[i];
        }
        Dataset {
            x,
            y,
            family: self.family,
        }
    }
}

/// New covariate vector ξ defining the prediction target ξᵀβ̄.
#[derive(Debug, Clone, PartialEq)]
pub struct Loading {
    pub xi: Array1<f64>,
}

impl Loading {
    pub fn new(xi: Array1<f64>) -> Result<Self, DataError> {
        if xi.iter().any(|v| !v.is_finite()) {
            return Err(DataError::NonFinite("loading"));
        }
        if xi.iter().all(|&v| v == 0.0) {
            return Err(DataError::ZeroLoading);
        }
        Ok(Loading { xi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignKind {
    /// Gaussian AR(1)-correlation design, heteroscedastic linear response.
    LmAr,
    /// Rademacher block design, mixture-logistic binary response.
    GlmRademacher,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadingKind {
    First,
    Second,
}

/// Parameters of one simulation setting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimDesign {
    pub kind: DesignKind,
    pub n: usize,
    pub p: usize,
    pub loading_kind: LoadingKind,
    /// Scale of the random dense tail of the loading.
    pub q: f64,
    /// Leading (nonzero) coefficients of the data-generating γ*.
    pub gamma_head: Vec<f64>,
}

pub const LM_GAMMA_HEAD: [f64; 5] = [4.0, 2.0, 4.0, 4.0, -2.0];
pub const GLM_GAMMA_HEAD: [f64; 5] = [0.5, 0.5, 0.5, 0.5, 0.075];

impl SimDesign {
    pub fn lm(n: usize, p: usize, loading_kind: LoadingKind, q: f64) -> Self {
        SimDesign {
            kind: DesignKind::LmAr,
            n,
            p,
            loading_kind,
            q,
            gamma_head: LM_GAMMA_HEAD.to_vec(),
        }
    }

    pub fn glm(n: usize, p: usize, loading_kind: LoadingKind, q: f64) -> Self {
        SimDesign {
            kind: DesignKind::GlmRademacher,
            n,
            p,
            loading_kind,
            q,
            gamma_head: GLM_GAMMA_HEAD.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<(), DataError> {
        if self.p <= 5 {
            return Err(DataError::BlockTooSmall(self.p));
        }
        if !self.q.is_finite() || self.q < 0.0 {
            return Err(DataError::NonFinite("tail scale q"));
        }
        Ok(())
    }

    pub fn family(&self) -> LossFamily {
        match self.kind {
            DesignKind::LmAr => LossFamily::Square,
            DesignKind::GlmRademacher => LossFamily::Logistic,
        }
    }

    /// γ* padded with zeros to length p.
    pub fn gamma_full(&self) -> Array1<f64> {
        let mut g = Array1::zeros(self.p);
        for (j, &v) in self.gamma_head.iter().enumerate() {
            g[j] = v;
        }
        g
    }

    /// Population covariance of the design.
    pub fn covariance(&self) -> Result<Array2<f64>, DataError> {
        match self.kind {
            DesignKind::LmAr => Ok(make_ar_covariance(self.p, 0.3)),
            DesignKind::GlmRademacher => make_block_covariance(self.p),
        }
    }

    /// Fixed head of the loading for this design.
    pub fn loading_head(&self) -> [f64; 5] {
        match (self.kind, self.loading_kind) {
            (DesignKind::LmAr, LoadingKind::First) => [-0.5, -0.25, 0.25, 0.5, 0.25],
            (DesignKind::LmAr, LoadingKind::Second) => [0.25, 0.25, 0.25, 0.25, 0.25],
            (DesignKind::GlmRademacher, LoadingKind::First) => [-1.15, 1.0, -1.0, 1.0, 1.0],
            (DesignKind::GlmRademacher, LoadingKind::Second) => [-1.0, 1.0, -1.0, 1.0, 3.0],
        }
    }
}

/// AR(1)-correlation covariance: entry (i,j) = base^|i-j|.
pub fn make_ar_covariance(p: usize, base: f64) -> Array2<f64> {
    assert!(p >= 1, "p must be at least 1");
    assert!((0.0..1.0).contains(&base), "base must lie in [0, 1)");
    Array2::from_shape_fn((p, p), |(i, j)| base.powi((i as i32 - j as i32).abs()))
}

/// Two-block covariance: 5·0.1^|i-j| within blocks {0..5} and {5..p}, zero
/// across blocks.
pub fn make_block_covariance(p: usize) -> Result<Array2<f64>, DataError> {
    if p <= 5 {
        return Err(DataError::BlockTooSmall(p));
    }
    Ok(Array2::from_shape_fn((p, p), |(i, j)| {
        let same_block = (i < 5) == (j < 5);
        if same_block {
            5.0 * 0.1f64.powi((i as i32 - j as i32).abs())
        } else {
            0.0
        }
    }))
}

/// n i.i.d. rows from N(0, Σ), generated as L z with L the lower Cholesky
/// factor of Σ (the Gaussian law is rotation invariant, so a triangular
/// factor is exact).
pub fn sample_gaussian_design<R: Rng>(
    n: usize,
    sigma: &Array2<f64>,
    rng: &mut R,
) -> Result<Array2<f64>, DataError> {
    let p = sigma.nrows();
    let l = linalg::cholesky_lower(sigma)?;
    let mut x = Array2::zeros((n, p));
    let mut z = vec![0.0f64; p];
    for i in 0..n {
        for zj in z.iter_mut() {
            *zj = rng.sample(StandardNormal);
        }
        // row i = L z, using the lower-triangular structure
        for r in 0..p {
            let mut acc = 0.0;
            for (c, &zc) in z.iter().enumerate().take(r + 1) {
                acc += l[[r, c]] * zc;
            }
            x[[i, r]] = acc;
        }
    }
    Ok(x)
}

/// n i.i.d. rows X = Σ^{1/2} Z with Z ±1 Rademacher and Σ^{1/2} the
/// symmetric square root (the Rademacher law is not rotation invariant, so
/// the root must match the paper's Σ^{1/2}).
pub fn sample_rademacher_design<R: Rng>(
    n: usize,
    sigma: &Array2<f64>,
    rng: &mut R,
) -> Result<Array2<f64>, DataError> {
    let p = sigma.nrows();
    let root = linalg::sym_sqrt(sigma, 1e-8 * linalg::max_abs(sigma).max(1.0))?;
    let mut x = Array2::zeros((n, p));
    let mut z = vec![0.0f64; p];
    for i in 0..n {
        for zj in z.iter_mut() {
            *zj = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        }
        for r in 0..p {
            let mut acc = 0.0;
            for (c, &zc) in z.iter().enumerate() {
                acc += root[[r, c]] * zc;
            }
            x[[i, r]] = acc;
        }
    }
    Ok(x)
}

/// Heteroscedastic linear response y = xᵀγ* + x₁²ε₁ + x₄²ε₂ with ε ~ N(0,1).
pub fn gen_lm_response<R: Rng>(
    x: &Array2<f64>,
    gamma: &Array1<f64>,
    rng: &mut R,
) -> Result<Array1<f64>, DataError> {
    if x.ncols() < 4 {
        return Err(DataError::TooFewColumns {
            need: 4,
            got: x.ncols(),
        });
    }
    if gamma.len() != x.ncols() {
        return Err(DataError::CoefMismatch {
            beta: gamma.len(),
            p: x.ncols(),
        });
    }
    let mut y = x.dot(gamma);
    for i in 0..x.nrows() {
        let e1: f64 = rng.sample(StandardNormal);
        let e2: f64 = rng.sample(StandardNormal);
        let x1 = x[[i, 0]];
        let x4 = x[[i, 3]];
        y[i] += x1 * x1 * e1 + x4 * x4 * e2;
    }
    Ok(y)
}

/// Success probability of the misspecified binary response at linear score u.
pub fn glm_mixture_prob(u: f64) -> f64 {
    0.5 * sigmoid(u - 2.0) + 0.5 * sigmoid(u + 2.0)
}

/// Binary response with P(Y=1|X) = ½σ(xᵀγ*-2) + ½σ(xᵀγ*+2).
pub fn gen_glm_response<R: Rng>(
    x: &Array2<f64>,
    gamma: &Array1<f64>,
    rng: &mut R,
) -> Result<Array1<f64>, DataError> {
    if gamma.len() != x.ncols() {
        return Err(DataError::CoefMismatch {
            beta: gamma.len(),
            p: x.ncols(),
        });
    }
    let u = x.dot(gamma);
    let mut y = Array1::zeros(x.nrows());
    for i in 0..x.nrows() {
        let prob = glm_mixture_prob(u[i]);
        y[i] = if rng.gen::<f64>() < prob { 1.0 } else { 0.0 };
    }
    Ok(y)
}

/// Loading with the design's fixed head and tail ξ̃ = q·N(0, I_{p-5}),
/// drawn once per study and reused in every replication.
pub fn gen_loading<R: Rng>(design: &SimDesign, rng: &mut R) -> Result<Loading, DataError> {
    design.validate()?;
    let mut xi = Array1::zeros(design.p);
    for (j, &h) in design.loading_head().iter().enumerate() {
        xi[j] = h;
    }
    for j in 5..design.p {
        let z: f64 = rng.sample(StandardNormal);
        xi[j] = design.q * z;
    }
    Loading::new(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;
    use approx::assert_abs_diff_eq;
    use ndarray::arr2;

    #[test]
    fn ar_covariance_matches_formula() {
        let s = make_ar_covariance(3, 0.3);
        let want = arr2(&[[1.0, 0.3, 0.09], [0.3, 1.0, 0.3], [0.09, 0.3, 1.0]]);
        for (a, b) in s.iter().zip(want.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn ar_covariance_degenerate_cases() {
        assert_eq!(make_ar_covariance(2, 0.0), Array2::eye(2));
        assert_eq!(make_ar_covariance(1, 0.3), arr2(&[[1.0]]));
    }

    #[test]
    fn ar_covariance_is_positive_definite_up_to_500() {
        for &p in &[2usize, 30, 137, 500] {
            let s = make_ar_covariance(p, 0.3);
            assert!(linalg::cholesky_lower(&s).is_ok(), "failed at p={p}");
        }
    }

    #[test]
    fn block_covariance_entries() {
        let s = make_block_covariance(6).unwrap();
        assert_abs_diff_eq!(s[[0, 0]], 5.0);
        assert_abs_diff_eq!(s[[0, 1]], 0.5);
        assert_abs_diff_eq!(s[[0, 5]], 0.0);
        assert_abs_diff_eq!(s[[5, 5]], 5.0);
        assert_abs_diff_eq!(s[[1, 0]], s[[0, 1]]);
        assert!(make_block_covariance(5).is_err());
    }

    #[test]
    fn gaussian_design_deterministic_and_sized() {
        let sigma = make_ar_covariance(4, 0.3);
        let seed = Seed::new(11);
        let a = sample_gaussian_design(20, &sigma, &mut seed.stream(0, "design")).unwrap();
        let b = sample_gaussian_design(20, &sigma, &mut seed.stream(0, "design")).unwrap();
        assert_eq!(a, b);
        let empty = sample_gaussian_design(0, &sigma, &mut seed.stream(0, "design")).unwrap();
        assert_eq!(empty.dim(), (0, 4));
    }

    #[test]
    fn rademacher_identity_gives_signs() {
        let seed = Seed::new(3);
        let x = sample_rademacher_design(50, &Array2::eye(6), &mut seed.stream(0, "d")).unwrap();
        assert!(x.iter().all(|&v| v == 1.0 || v == -1.0));
        let x4 =
            sample_rademacher_design(50, &(Array2::eye(6) * 4.0), &mut seed.stream(0, "d"))
                .unwrap();
        assert!(x4.iter().all(|&v| v == 2.0 || v == -2.0));
    }

    #[test]
    fn rademacher_rejects_indefinite() {
        let sigma = arr2(&[[1.0, 2.0], [2.0, 1.0]]);
        let seed = Seed::new(3);
        assert!(sample_rademacher_design(5, &sigma, &mut seed.stream(0, "d")).is_err());
    }

    #[test]
    fn lm_response_zero_row_gives_zero() {
        let x = Array2::zeros((3, 6));
        let gamma = Array1::zeros(6);
        let seed = Seed::new(9);
        let y = gen_lm_response(&x, &gamma, &mut seed.stream(0, "resp")).unwrap();
        assert!(y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn lm_response_deterministic() {
        let sigma = make_ar_covariance(6, 0.3);
        let seed = Seed::new(10);
        let x = sample_gaussian_design(12, &sigma, &mut seed.stream(0, "design")).unwrap();
        let gamma = SimDesign::lm(12, 6, LoadingKind::First, 0.0).gamma_full();
        let y1 = gen_lm_response(&x, &gamma, &mut seed.stream(0, "resp")).unwrap();
        let y2 = gen_lm_response(&x, &gamma, &mut seed.stream(0, "resp")).unwrap();
        assert_eq!(y1, y2);
    }

    #[test]
    fn glm_mixture_prob_limits() {
        assert_abs_diff_eq!(glm_mixture_prob(0.0), 0.5, epsilon = 1e-15);
        assert!(glm_mixture_prob(60.0) > 1.0 - 1e-12);
        assert!(glm_mixture_prob(-60.0) < 1e-12);
    }

    #[test]
    fn loading_head_and_degenerate_tail() {
        let design = SimDesign::lm(40, 9, LoadingKind::First, 0.0);
        let seed = Seed::new(5);
        let l = gen_loading(&design, &mut seed.stream(0, "loading")).unwrap();
        let head = [-0.5, -0.25, 0.25, 0.5, 0.25];
        for (j, &h) in head.iter().enumerate() {
            assert_abs_diff_eq!(l.xi[j], h);
        }
        assert!(l.xi.iter().skip(5).all(|&v| v == 0.0));
        let l2 = gen_loading(&design, &mut seed.stream(0, "loading")).unwrap();
        assert_eq!(l.xi, l2.xi);
    }

    #[test]
    fn dataset_validates_logistic_labels() {
        let x = Array2::zeros((2, 3));
        let y = ndarray::arr1(&[0.0, 2.0]);
        assert!(Dataset::new(x, y, LossFamily::Logistic).is_err());
    }
}
