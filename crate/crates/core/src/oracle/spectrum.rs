//! Accessory-parameter spectrum for degree-`n` Heun polynomials.
//!
//! With `alpha = -n` the `x^(n+2)` equation of the Frobenius recurrence has
//! a vanishing `c_n` coefficient, so the series about 0 terminates at degree
//! `n` exactly when `c_(n+1) = 0`. Running the recurrence with `q` kept
//! symbolic turns that condition into a polynomial of degree `n + 1` in `q`
//! (the determinant of the usual tridiagonal matrix, up to a constant).

use serde::{Deserialize, Serialize};

use super::frobenius::{lead_factor, middle_factor_without_q, tail_factor};
use crate::error::{Error, Result};
use crate::heun::HeunParams;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Grid half-width for the sign-change scan.
const SIGN_SCAN_BOUND: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QSpectrum {
    pub degree: u32,
    /// Coefficients in ascending powers of `q`.
    pub char_poly: Poly,
    pub rational_roots: Vec<Scalar>,
    /// `false` when a coefficient was too large to factor and roots may be missing.
    pub root_search_complete: bool,
    /// Integer intervals on which `char_poly` changes sign.
    pub sign_changes: Vec<(i64, i64)>,
}

impl QSpectrum {
    pub fn is_root(&self, q: &Scalar) -> bool {
        self.char_poly.eval(q).is_zero()
    }
}

/// Spectrum for `alpha = -n`; the supplied `alpha` and `q` are ignored.
pub fn q_spectrum(n: u32, params: &HeunParams) -> Result<QSpectrum> {
    let p = HeunParams {
        alpha: Scalar::from_int(-(n as i64)),
        q: Scalar::zero(),
        ..params.clone()
    };
    p.validate()?;
    if !p.sigma.is_zero() {
        return Err(Error::PreconditionViolated(
            "the q-spectrum is defined for sigma = 0".into(),
        ));
    }
    let rhs = &(&p.alpha + &p.beta) + &Scalar::one();
    if p.exponent_sum() != rhs {
        return Err(Error::PreconditionViolated(format!(
            "gamma + delta + epsilon = {} but alpha + beta + 1 = {rhs} with alpha = -{n}",
            p.exponent_sum()
        )));
    }
    if let Some(g) = p.gamma.to_i64() {
        if g <= 0 && g > -(n as i64) {
            return Err(Error::PreconditionViolated(format!(
                "gamma = {g} makes the ascending recurrence resonant below degree {}",
                n + 1
            )));
        }
    }

    // c_k(q) for k = 0..=n
    let minus_q = Poly::linear(Scalar::zero(), Scalar::from_int(-1));
    let mut coeffs: Vec<Poly> = vec![Poly::constant(Scalar::one())];
    let step = |k: i64, coeffs: &[Poly]| -> Poly {
        let nu1 = Scalar::from_int(k - 1);
        let middle = &Poly::constant(middle_factor_without_q(&p, &nu1)) + &minus_q;
        let mut acc = &middle * &coeffs[(k - 1) as usize];
        if k >= 2 {
            let tail = tail_factor(&p, &Scalar::from_int(k - 2));
            acc = &acc + &coeffs[(k - 2) as usize].scale(&tail);
        }
        -&acc
    };
    for k in 1..=n as i64 {
        let lead = lead_factor(&p, &Scalar::from_int(k));
        let numer = step(k, &coeffs);
        let inv = lead.recip()?;
        coeffs.push(numer.scale(&inv));
    }
    // F(n+1) c_(n+1)(q), kept undivided so gamma = -n needs no special case
    let char_poly = step(n as i64 + 1, &coeffs);
    let (rational_roots, root_search_complete) = char_poly.rational_roots();
    let sign_changes = char_poly.sign_changes(SIGN_SCAN_BOUND);
    Ok(QSpectrum {
        degree: n,
        char_poly,
        rational_roots,
        root_search_complete,
        sign_changes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    /// Params with alpha = -n and epsilon fixed by the exponent-sum constraint.
    fn constrained(n: i64, beta: &str, gamma: &str, delta: &str, c: &str) -> HeunParams {
        let mut p = HeunParams::parse(&(-n).to_string(), beta, gamma, delta, "0", "0", c).unwrap();
        p.epsilon = &(&(&p.alpha + &p.beta) + &Scalar::one()) - &(&p.gamma + &p.delta);
        p
    }

    #[test]
    fn degree_zero_is_proportional_to_q() {
        let sp = q_spectrum(0, &constrained(0, "3", "1/2", "2", "5")).unwrap();
        assert_eq!(sp.char_poly, Poly::linear(r("0"), r("1")));
        assert_eq!(sp.rational_roots, vec![r("0")]);
        assert!(sp.root_search_complete);
    }

    #[test]
    fn degree_is_n_plus_one() {
        for n in 0..6u32 {
            let sp = q_spectrum(n, &constrained(n as i64, "7/3", "3/2", "-1/4", "-2")).unwrap();
            assert_eq!(sp.char_poly.degree(), Some(n as usize + 1));
            for root in &sp.rational_roots {
                assert!(sp.is_root(root));
            }
        }
    }

    #[test]
    fn roots_produce_polynomials() {
        // every rational eigenvalue gives a terminating Frobenius series
        // q^2 + 5q + 4 = 0 up to scale
        let p = constrained(1, "2", "1", "1", "2");
        let sp = q_spectrum(1, &p).unwrap();
        assert_eq!(sp.rational_roots, vec![r("-4"), r("-1")]);
        for q in &sp.rational_roots {
            let pq = p.clone().with_q(q.clone());
            let y = super::super::frobenius_coefficients(&pq, &r("0"), 8).unwrap();
            assert_eq!(y.max_index(), Some(1), "q = {q}: {y:?}");
        }
    }

    #[test]
    fn preconditions() {
        let mut p = constrained(1, "2", "1", "1", "2");
        p.epsilon = r("9");
        assert!(matches!(
            q_spectrum(1, &p),
            Err(Error::PreconditionViolated(_))
        ));
        let p = constrained(2, "2", "-1", "1", "2");
        assert!(matches!(
            q_spectrum(2, &p),
            Err(Error::PreconditionViolated(_))
        ));
        let p = constrained(1, "2", "1", "1", "2").with_sigma(r("1"));
        assert!(matches!(
            q_spectrum(1, &p),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
