//! Debiased prediction inference for high-dimensional, possibly misspecified
//! linear and generalized linear models.
//!
//! The crate provides sparse penalized regression with cross-validated
//! penalty selection, CLIME and two-stage precision-matrix estimation with
//! cross-fitting, debiased point predictions with Wald confidence intervals,
//! and a Monte-Carlo study harness with CSV/JSON reporting.

pub mod csv_io;
pub mod data;
pub mod linalg;
pub mod loss;
pub mod rng;
