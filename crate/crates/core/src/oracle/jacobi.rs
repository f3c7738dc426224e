//! Monic Jacobi polynomials from the classical three-term recurrence
//!
//! `p_(k+1) = (x - b_k) p_k - a_k p_(k-1)` with
//!
//! ```text
//! b_k = (beta^2 - alpha^2) / ((2k + alpha + beta)(2k + alpha + beta + 2))
//! a_k = 4k (k + alpha)(k + beta)(k + alpha + beta)
//!       / ((2k + alpha + beta)^2 (2k + alpha + beta + 1)(2k + alpha + beta - 1))
//! ```
//!
//! and the removable singularities at `k = 0, 1` written out explicitly.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn div(num: Scalar, den: Scalar, what: &str) -> Result<Scalar> {
    num.checked_div(&den)
        .map_err(|_| Error::DegenerateParameters(format!("vanishing denominator in {what}")))
}

fn diagonal_term(k: i64, alpha: &Scalar, beta: &Scalar) -> Result<Scalar> {
    let ab = alpha + beta;
    if k == 0 {
        return div(beta - alpha, &ab + &int(2), "b_0");
    }
    let s = &ab + &int(2 * k);
    let num = &(beta * beta) - &(alpha * alpha);
    div(num, &s * &(&s + &int(2)), "b_k")
}

fn off_diagonal_term(k: i64, alpha: &Scalar, beta: &Scalar) -> Result<Scalar> {
    let ab = alpha + beta;
    let one = Scalar::one();
    if k == 1 {
        // (1 + alpha + beta) cancels
        let num = &(&int(4) * &(&one + alpha)) * &(&one + beta);
        let s = &ab + &int(2);
        return div(num, &(&s * &s) * &(&ab + &int(3)), "a_1");
    }
    let kk = int(k);
    let s = &ab + &int(2 * k);
    let num = &(&(&(&int(4) * &kk) * &(&kk + alpha)) * &(&kk + beta)) * &(&kk + &ab);
    let den = &(&(&s * &s) * &(&s + &one)) * &(&s - &one);
    div(num, den, "a_k")
}

/// Coefficients (ascending powers) of the monic `P_n^(alpha, beta)`.
pub fn jacobi_reference(n: u32, alpha: &Scalar, beta: &Scalar) -> Result<Vec<Scalar>> {
    let mut prev: Vec<Scalar> = Vec::new();
    let mut cur: Vec<Scalar> = vec![Scalar::one()];
    for k in 0..n as i64 {
        let b = diagonal_term(k, alpha, beta)?;
        let a = if k == 0 {
            Scalar::zero()
        } else {
            off_diagonal_term(k, alpha, beta)?
        };
        let mut next = vec![Scalar::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &(&b * c);
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &(&a * c);
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::jacobi_operator;
    use crate::series::OffsetSeries;

    fn r(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn low_degrees() {
        assert_eq!(jacobi_reference(0, &r("2"), &r("5")).unwrap(), vec![r("1")]);
        assert_eq!(
            jacobi_reference(1, &r("3/2"), &r("3/2")).unwrap(),
            vec![r("0"), r("1")]
        );
        assert_eq!(
            jacobi_reference(1, &r("1"), &r("0")).unwrap(),
            vec![r("1/3"), r("1")]
        );
    }

    #[test]
    fn legendre_p2() {
        // monic P_2 = x^2 - 1/3
        assert_eq!(
            jacobi_reference(2, &r("0"), &r("0")).unwrap(),
            vec![r("-1/3"), r("0"), r("1")]
        );
    }

    #[test]
    fn satisfies_the_jacobi_equation() {
        for (a, b) in [("1", "0"), ("1/2", "-1/3"), ("5", "2/7"), ("-1/2", "-1/2")] {
            let (a, b) = (r(a), r(b));
            for n in 0..=10 {
                let p = jacobi_reference(n, &a, &b).unwrap();
                let res = jacobi_operator(n, &a, &b).apply(&OffsetSeries::polynomial(&p));
                assert!(res.is_zero(), "n = {n}, alpha = {a}, beta = {b}");
            }
        }
    }

    #[test]
    fn degenerate_denominators() {
        // alpha + beta = -2 kills b_0
        assert!(matches!(
            jacobi_reference(1, &r("-1"), &r("-1")),
            Err(Error::DegenerateParameters(_))
        ));
    }
}
