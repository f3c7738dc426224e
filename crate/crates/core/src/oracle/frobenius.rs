//! Frobenius coefficients read directly off the polynomial form of the
//! equation, with no operator machinery.
//!
//! Substituting `y = sum_k c_k x^(lambda+k)` into
//!
//! ```text
//! x^2 (x-1)(x-c) y'' + x [gamma (x-1)(x-c) + delta x (x-c) + epsilon x (x-1)] y'
//!     + (alpha beta x^2 - q x - sigma) y = 0
//! ```
//!
//! and collecting `x^(lambda+k)` gives the three-term recurrence
//!
//! ```text
//! [c nu (nu + gamma - 1) - sigma]                                      c_k     (nu = lambda + k)
//! - [(1+c) nu1 (nu1 - 1) + ((1+c) gamma + delta c + epsilon) nu1 + q] c_(k-1) (nu1 = nu - 1)
//! + [nu2 (nu2 - 1) + (gamma + delta + epsilon) nu2 + alpha beta]       c_(k-2) (nu2 = nu - 2)
//! = 0
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::heun::HeunParams;
use crate::scalar::Scalar;
use crate::series::OffsetSeries;

/// Coefficient multiplying `c_k` (the indicial polynomial at `nu`).
pub(crate) fn lead_factor(p: &HeunParams, nu: &Scalar) -> Scalar {
    let shifted = &(nu + &p.gamma) - &Scalar::one();
    &(&(&p.c * nu) * &shifted) - &p.sigma
}

/// Coefficient multiplying `c_(k-1)`, split as `a(nu1) - q`.
pub(crate) fn middle_factor_without_q(p: &HeunParams, nu1: &Scalar) -> Scalar {
    let one_c = &Scalar::one() + &p.c;
    let mid = &(&(&one_c * &p.gamma) + &(&p.delta * &p.c)) + &p.epsilon;
    -(&(&(&one_c * nu1) * &(nu1 - &Scalar::one())) + &(&mid * nu1))
}

/// Coefficient multiplying `c_(k-2)`.
pub(crate) fn tail_factor(p: &HeunParams, nu2: &Scalar) -> Scalar {
    let s = &(&p.gamma + &p.delta) + &p.epsilon;
    &(&(nu2 * &(nu2 - &Scalar::one())) + &(&s * nu2)) + &(&p.alpha * &p.beta)
}

/// `c_0 = 1, c_1, ..., c_N` at the exponent `lambda`.
pub fn frobenius_coefficients(p: &HeunParams, lambda: &Scalar, order: u32) -> Result<OffsetSeries> {
    let indicial = lead_factor(p, lambda);
    if !indicial.is_zero() {
        return Err(Error::PreconditionViolated(format!(
            "{lambda} is not an exponent at 0: indicial value {indicial}"
        )));
    }
    let mut c: Vec<Scalar> = vec![Scalar::one()];
    for k in 1..=order as i64 {
        let nu = lambda + &Scalar::from_int(k);
        let nu1 = &nu - &Scalar::one();
        let nu2 = &nu - &Scalar::from_int(2);
        let prev = &c[(k - 1) as usize];
        let mut rhs = -(&(&middle_factor_without_q(p, &nu1) - &p.q) * prev);
        if k >= 2 {
            rhs = &rhs - &(&tail_factor(p, &nu2) * &c[(k - 2) as usize]);
        }
        let lead = lead_factor(p, &nu);
        if lead.is_zero() {
            if rhs.is_zero() {
                c.push(Scalar::zero());
                continue;
            }
            return Err(Error::Resonance { exponent: nu });
        }
        c.push(rhs.checked_div(&lead)?);
    }
    let coeffs: BTreeMap<i64, Scalar> = c
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k as i64, v))
        .collect();
    Ok(OffsetSeries::new(lambda.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn first_coefficient_is_q_over_c_gamma() {
        let p = HeunParams::parse("1", "1", "1", "1", "1", "1", "2").unwrap();
        let y = frobenius_coefficients(&p, &r("0"), 1).unwrap();
        assert_eq!(y.coeff(1), r("1/2"));
        let p = HeunParams::parse("3", "-2", "5/3", "1/2", "4", "7/2", "-6").unwrap();
        let y = frobenius_coefficients(&p, &r("0"), 1).unwrap();
        assert_eq!(
            y.coeff(1),
            r("7/2").checked_div(&(&p.c * &p.gamma)).unwrap()
        );
    }

    #[test]
    fn constant_when_q_and_alpha_beta_vanish() {
        let p = HeunParams::parse("0", "5", "1/3", "2", "-1", "0", "7").unwrap();
        let y = frobenius_coefficients(&p, &r("0"), 20).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y.coeff(0), r("1"));
    }

    #[test]
    fn rejects_non_exponents_and_resonance() {
        let p = HeunParams::parse("1", "1", "1/2", "1", "1", "1", "2").unwrap();
        assert!(matches!(
            frobenius_coefficients(&p, &r("1"), 3),
            Err(Error::PreconditionViolated(_))
        ));
        let p = HeunParams::parse("1", "1", "-2", "1", "1", "1", "2").unwrap();
        assert_eq!(
            frobenius_coefficients(&p, &r("0"), 5),
            Err(Error::Resonance { exponent: r("3") })
        );
    }
}
