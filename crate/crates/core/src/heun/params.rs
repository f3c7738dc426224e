use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parameters of the (optionally `-sigma/x` extended) Heun equation
///
/// `y'' + (gamma/x + delta/(x-1) + epsilon/(x-c)) y'
///      + (alpha beta x - q - sigma/x) / (x (x-1) (x-c)) y = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeunParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    pub epsilon: Scalar,
    pub q: Scalar,
    pub c: Scalar,
    #[serde(default)]
    pub sigma: Scalar,
}

impl HeunParams {
    /// Parses the seven Heun parameters from rational literals; `sigma` is 0.
    pub fn parse(
        alpha: &str,
        beta: &str,
        gamma: &str,
        delta: &str,
        epsilon: &str,
        q: &str,
        c: &str,
    ) -> Result<Self> {
        Ok(HeunParams {
            alpha: alpha.parse()?,
            beta: beta.parse()?,
            gamma: gamma.parse()?,
            delta: delta.parse()?,
            epsilon: epsilon.parse()?,
            q: q.parse()?,
            c: c.parse()?,
            sigma: Scalar::zero(),
        })
    }

    pub fn with_sigma(mut self, sigma: Scalar) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_q(mut self, q: Scalar) -> Self {
        self.q = q;
        self
    }

    /// The singular points 0, 1 and c must be distinct.
    pub fn validate(&self) -> Result<()> {
        if self.c.is_zero() || self.c.is_one() {
            return Err(Error::InvalidParams(format!(
                "c = {} collides with a singular point at 0 or 1",
                self.c
            )));
        }
        Ok(())
    }

    /// `gamma + delta + epsilon`
    pub fn exponent_sum(&self) -> Scalar {
        &(&self.gamma + &self.delta) + &self.epsilon
    }

    /// `(1 + c) gamma + delta c + epsilon`
    pub fn first_order_mid(&self) -> Scalar {
        &(&(&(&Scalar::one() + &self.c) * &self.gamma) + &(&self.delta * &self.c)) + &self.epsilon
    }

    pub fn alpha_beta(&self) -> Scalar {
        &self.alpha * &self.beta
    }
}

/// Which rewriting of the equation a decomposition follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// Multiplied through by `x`; perturbation raises degree (series about 0).
    Ascending,
    /// Divided by `x`; perturbation lowers degree (polynomials from `x^n`).
    CaseI,
    /// Case I after the similarity transformation by `x^(1-gamma)`.
    CaseII,
    /// Extended equation after the transformation by `x^(1-gamma+sigma)`.
    Extended,
    /// Jacobi equation, used as the worked reference example.
    Jacobi,
}

impl Case {
    pub const POLYNOMIAL_CASES: [Case; 3] = [Case::CaseI, Case::CaseII, Case::Extended];

    pub fn as_str(self) -> &'static str {
        match self {
            Case::Ascending => "ascending",
            Case::CaseI => "case_i",
            Case::CaseII => "case_ii",
            Case::Extended => "extended",
            Case::Jacobi => "jacobi",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ascending" | "asc" => Ok(Case::Ascending),
            "i" | "case_i" | "case-i" => Ok(Case::CaseI),
            "ii" | "case_ii" | "case-ii" => Ok(Case::CaseII),
            "extended" | "ext" => Ok(Case::Extended),
            "jacobi" => Ok(Case::Jacobi),
            other => Err(Error::UnknownCase(other.to_string())),
        }
    }
}
