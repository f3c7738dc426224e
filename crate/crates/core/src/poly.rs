//! Dense univariate polynomials over [`Scalar`], lowest degree first.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{denominator_lcm, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl From<Vec<Scalar>> for Poly {
    fn from(coeffs: Vec<Scalar>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Scalar> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Poly::new(vec![a, b])
    }

    /// `x - r`
    pub fn root_factor(r: &Scalar) -> Self {
        Poly::linear(-r, Scalar::one())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, a| &(&acc * x) + a)
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Integer coefficients with gcd 1 and the same roots.
    pub fn primitive_integer_form(&self) -> Vec<BigInt> {
        let lcm = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() || g.is_one() {
            ints
        } else {
            ints.into_iter().map(|v| v / &g).collect()
        }
    }

    /// All distinct rational roots, found by testing `p / q` with `p` dividing
    /// the trailing and `q` the leading coefficient of the primitive integer
    /// form. The flag is `false` when some coefficient could not be factored
    /// completely and the candidate list may be missing entries.
    pub fn rational_roots(&self) -> (Vec<Scalar>, bool) {
        if self.is_zero() {
            return (Vec::new(), false);
        }
        let ints = self.primitive_integer_form();
        let low = ints
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(Scalar::zero());
        }
        let reduced = &ints[low..];
        if reduced.len() < 2 {
            return (roots, true);
        }
        let (Some(ps), Some(qs)) = (
            divisors(&reduced[0]),
            divisors(reduced.last().expect("len >= 2")),
        ) else {
            return (roots, false);
        };
        if ps.len().saturating_mul(qs.len()) > MAX_CANDIDATES {
            return (roots, false);
        }
        for p in &ps {
            for q in &qs {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let num = p * BigInt::from(sign);
                    if eval_homogeneous(reduced, &num, q).is_zero() {
                        roots.push(Scalar::from_bigints(num, q.clone()).expect("q > 0"));
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        (roots, true)
    }

    /// Integer intervals `[i, i + 1]` in `-bound..bound` with a strict sign change.
    pub fn sign_changes(&self, bound: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut prev = self.eval(&Scalar::from_int(-bound));
        for i in -bound..bound {
            let next = self.eval(&Scalar::from_int(i + 1));
            if !prev.is_zero() && !next.is_zero() && prev.is_negative() != next.is_negative() {
                out.push((i, i + 1));
            }
            prev = next;
        }
        out
    }
}

const MAX_CANDIDATES: usize = 1 << 20;
const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `|n|`, or `None` if `n` is zero or resists trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.abs();
    if rest.is_zero() {
        return None;
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let limit = BigInt::from(TRIAL_LIMIT);
        // a cofactor below limit^2 with no factor up to limit is prime
        if p > TRIAL_LIMIT && rest > &limit * &limit {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pow = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pow);
                pow *= &f;
            }
        }
        divs = next;
        if divs.len() > MAX_CANDIDATES {
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

/// `sum_i a_i p^i q^(d - i)`, i.e. `q^d * P(p / q)`.
fn eval_homogeneous(a: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let d = a.len() - 1;
    let mut acc = BigInt::zero();
    let mut ppow = BigInt::one();
    let qpows: Vec<BigInt> = (0..=d)
        .scan(BigInt::one(), |st, _| {
            let cur = st.clone();
            *st *= q;
            Some(cur)
        })
        .collect();
    for (i, ai) in a.iter().enumerate() {
        acc += ai * &ppow * &qpows[d - i];
        ppow *= p;
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn p(cs: &[&str]) -> Poly {
        Poly::new(cs.iter().map(|c| s(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&["1", "1"]);
        let b = p(&["-1", "1"]);
        assert_eq!(&a * &b, p(&["-1", "0", "1"]));
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &b).degree(), Some(1));
        assert_eq!(p(&["2", "0", "3"]).eval(&s("1/3")), s("7/3"));
    }

    #[test]
    fn finds_rational_roots() {
        // (3x - 2)(x + 5) x = 3x^3 + 13x^2 - 10x
        let poly = p(&["0", "-10", "13", "3"]);
        let (roots, complete) = poly.rational_roots();
        assert!(complete);
        assert_eq!(roots, vec![s("-5"), s("0"), s("2/3")]);
        // x^2 - 2 has none
        let (roots, complete) = p(&["-2", "0", "1"]).rational_roots();
        assert!(complete && roots.is_empty());
        assert_eq!(p(&["-2", "0", "1"]).sign_changes(3), vec![(-2, -1), (1, 2)]);
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        // (x - 1/2)(x + 3/4) = x^2 + x/4 - 3/8
        let poly = p(&["-3/8", "1/4", "1"]);
        assert_eq!(
            poly.primitive_integer_form(),
            vec![BigInt::from(-3), BigInt::from(2), BigInt::from(8)]
        );
        assert_eq!(poly.rational_roots().0, vec![s("-3/4"), s("1/2")]);
    }

    #[test]
    fn divisor_enumeration() {
        let d = divisors(&BigInt::from(-12)).unwrap();
        let d: Vec<i64> = d.iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        assert!(divisors(&BigInt::zero()).is_none());
        let prime = BigInt::from(1_000_003u64);
        assert_eq!(divisors(&prime).unwrap().len(), 2);
    }
}
