//! Loss families and their derivatives in the linear predictor.
//!
//! `phi(k, a, b)` is the k-th partial derivative of the per-observation loss
//! φ(a, b) with respect to b, where a is the response and b = xᵀβ.

use serde::{Deserialize, Serialize};

/// Numerically stable log(1 + exp(b)); finite for |b| up to f64 range.
pub fn log1p_exp(b: f64) -> f64 {
    if b <= -37.0 {
        b.exp()
    } else if b <= 18.0 {
        b.exp().ln_1p()
    } else if b <= 33.3 {
        b + (-b).exp()
    } else {
        b
    }
}

/// Logistic function 1/(1 + exp(-b)).
pub fn sigmoid(b: f64) -> f64 {
    if b >= 0.0 {
        1.0 / (1.0 + (-b).exp())
    } else {
        let e = b.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossFamily {
    /// φ(a,b) = (a-b)²/2, least squares.
    Square,
    /// φ(a,b) = -ab + log(1+eᵇ), logistic regression with canonical link.
    Logistic,
}

impl LossFamily {
    /// k-th derivative of φ(a, b) in b, for k = 0, 1, 2, 3.
    pub fn phi(self, k: u8, a: f64, b: f64) -> f64 {
        match self {
            LossFamily::Square => match k {
                0 => 0.5 * (a - b) * (a - b),
                1 => b - a,
                2 => 1.0,
                3 => 0.0,
                _ => panic!("phi derivative order {k} not supported"),
            },
            LossFamily::Logistic => {
                let s = sigmoid(b);
                match k {
                    0 => -a * b + log1p_exp(b),
                    1 => s - a,
                    2 => s * (1.0 - s),
                    3 => s * (1.0 - s) * (1.0 - 2.0 * s),
                    _ => panic!("phi derivative order {k} not supported"),
                }
            }
        }
    }

    pub fn phi0(self, a: f64, b: f64) -> f64 {
        self.phi(0, a, b)
    }
    pub fn phi1(self, a: f64, b: f64) -> f64 {
        self.phi(1, a, b)
    }
    pub fn phi2(self, a: f64, b: f64) -> f64 {
        self.phi(2, a, b)
    }
    pub fn phi3(self, a: f64, b: f64) -> f64 {
        self.phi(3, a, b)
    }
}

impl std::fmt::Display for LossFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LossFamily::Square => write!(f, "square"),
            LossFamily::Logistic => write!(f, "logistic"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn square_phi1_is_b_minus_a() {
        assert_abs_diff_eq!(LossFamily::Square.phi1(2.0, 5.0), 3.0);
    }

    #[test]
    fn logistic_phi2_at_zero_is_quarter() {
        assert_abs_diff_eq!(LossFamily::Logistic.phi2(0.0, 0.0), 0.25);
    }

    #[test]
    fn logistic_phi3_at_zero_vanishes() {
        assert_abs_diff_eq!(LossFamily::Logistic.phi3(1.0, 0.0), 0.0);
    }

    #[test]
    fn logistic_phi0_finite_for_large_b() {
        for &b in &[-700.0, -30.0, 0.0, 30.0, 700.0] {
            let v = LossFamily::Logistic.phi0(1.0, b);
            assert!(v.is_finite(), "phi0 overflowed at b={b}: {v}");
            let v0 = LossFamily::Logistic.phi0(0.0, b);
            assert!(v0.is_finite());
        }
    }

    #[test]
    fn sigmoid_tails() {
        assert_abs_diff_eq!(sigmoid(0.0), 0.5);
        assert!(sigmoid(40.0) > 1.0 - 1e-15);
        assert!(sigmoid(-40.0) < 1e-15);
    }
}
