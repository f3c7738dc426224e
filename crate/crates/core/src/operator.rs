//! Differential operators with polynomial (Laurent) coefficients.
//!
//! A [`DiffOp`] is a finite sum of terms `coeff * x^a (d/dx)^b`. Acting on a
//! monomial `x^mu` the term produces `coeff * [mu]_b * x^(mu + a - b)` where
//! `[mu]_b` is the falling factorial, so every term is homogeneous of degree
//! `a - b` and operators act on [`OffsetSeries`] index by index.
//!
//! A [`DiagonalOp`] is a polynomial in `D = x d/dx`; it multiplies `x^mu` by
//! `F(mu)` and can therefore be inverted monomial by monomial.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::OffsetSeries;

/// `coeff * x^xpow * (d/dx)^dorder`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOpTerm {
    pub coeff: Scalar,
    pub xpow: i64,
    pub dorder: u32,
}

impl DiffOpTerm {
    pub fn new(coeff: Scalar, xpow: i64, dorder: u32) -> Self {
        DiffOpTerm {
            coeff,
            xpow,
            dorder,
        }
    }

    /// Change in exponent produced by this term.
    pub fn degree(&self) -> i64 {
        self.xpow - self.dorder as i64
    }

    /// Action on `x^mu`: `Some((factor, new_exponent))`, or `None` when the
    /// result vanishes.
    pub fn apply_to_exponent(&self, mu: &Scalar) -> Option<(Scalar, Scalar)> {
        let factor = &self.coeff * &mu.falling(self.dorder);
        if factor.is_zero() {
            None
        } else {
            Some((factor, mu + &Scalar::from_int(self.degree())))
        }
    }
}

/// Convenience free-function form of [`DiffOpTerm::apply_to_exponent`].
pub fn term_apply(term: &DiffOpTerm, mu: &Scalar) -> Option<(Scalar, Scalar)> {
    term.apply_to_exponent(mu)
}

/// Normalized sum of [`DiffOpTerm`]s: like terms merged, zeros dropped,
/// ordered by `(xpow, dorder)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<DiffOpTerm>", into = "Vec<DiffOpTerm>")]
pub struct DiffOp {
    terms: BTreeMap<(i64, u32), Scalar>,
}

impl From<Vec<DiffOpTerm>> for DiffOp {
    fn from(terms: Vec<DiffOpTerm>) -> Self {
        DiffOp::from_terms(terms)
    }
}

impl From<DiffOp> for Vec<DiffOpTerm> {
    fn from(op: DiffOp) -> Self {
        op.terms().collect()
    }
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity() -> Self {
        DiffOp::term(Scalar::one(), 0, 0)
    }

    pub fn term(coeff: Scalar, xpow: i64, dorder: u32) -> Self {
        let mut op = DiffOp::zero();
        op.add_term(coeff, xpow, dorder);
        op
    }

    pub fn from_terms(terms: impl IntoIterator<Item = DiffOpTerm>) -> Self {
        let mut op = DiffOp::zero();
        for t in terms {
            op.add_term(t.coeff, t.xpow, t.dorder);
        }
        op
    }

    pub fn add_term(&mut self, coeff: Scalar, xpow: i64, dorder: u32) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((xpow, dorder)).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&(xpow, dorder));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = DiffOpTerm> + '_ {
        self.terms
            .iter()
            .map(|(&(xpow, dorder), c)| DiffOpTerm::new(c.clone(), xpow, dorder))
    }

    pub fn coeff(&self, xpow: i64, dorder: u32) -> Scalar {
        self.terms.get(&(xpow, dorder)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct term degrees, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(|(a, b)| a - *b as i64).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn plus(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for t in other.terms() {
            out.add_term(t.coeff, t.xpow, t.dorder);
        }
        out
    }

    pub fn scaled(&self, factor: &Scalar) -> DiffOp {
        DiffOp::from_terms(
            self.terms()
                .map(|t| DiffOpTerm::new(&t.coeff * factor, t.xpow, t.dorder)),
        )
    }

    /// Applies the operator to every stored coefficient of `s`.
    pub fn apply(&self, s: &OffsetSeries) -> OffsetSeries {
        let mut out = OffsetSeries::zero_at(s.offset().clone());
        for (&k, c) in s.coeffs() {
            let mu = s.offset() + &Scalar::from_int(k);
            for t in self.terms() {
                if let Some((factor, _)) = t.apply_to_exponent(&mu) {
                    out.accumulate(k + t.degree(), &(&factor * c));
                }
            }
        }
        out
    }

    /// Splits the operator by term degree.
    pub fn grade_decompose(&self) -> BTreeMap<i64, DiffOp> {
        let mut buckets: BTreeMap<i64, DiffOp> = BTreeMap::new();
        for t in self.terms() {
            buckets
                .entry(t.degree())
                .or_default()
                .add_term(t.coeff, t.xpow, t.dorder);
        }
        buckets
    }

    /// `x^-mu . op . x^mu`, expanded with
    /// `d^b x^mu = x^mu sum_j C(b,j) [mu]_j x^-j d^(b-j)`.
    pub fn conjugate(&self, mu: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero();
        for t in self.terms() {
            let mut binom = Scalar::one();
            for j in 0..=t.dorder {
                if j > 0 {
                    binom = (&binom * &Scalar::from_int((t.dorder - j + 1) as i64))
                        .checked_div(&Scalar::from_int(j as i64))
                        .expect("j > 0");
                }
                let c = &(&t.coeff * &binom) * &mu.falling(j);
                out.add_term(c, t.xpow - j as i64, t.dorder - j);
            }
        }
        out
    }
}

pub fn op_apply(op: &DiffOp, s: &OffsetSeries) -> OffsetSeries {
    op.apply(s)
}

pub fn grade_decompose(op: &DiffOp) -> BTreeMap<i64, DiffOp> {
    op.grade_decompose()
}

pub fn conjugate(op: &DiffOp, mu: &Scalar) -> DiffOp {
    op.conjugate(mu)
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|t| {
                let mut s = format!("({})", t.coeff);
                if t.xpow != 0 {
                    s.push_str(&format!(" x^{}", t.xpow));
                }
                if t.dorder != 0 {
                    s.push_str(&format!(" d^{}", t.dorder));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `F(D) = sum_n coeffs[n] D^n`, trailing zero coefficients trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct DiagonalOp {
    coeffs: Vec<Scalar>,
}

impl From<Vec<Scalar>> for DiagonalOp {
    fn from(coeffs: Vec<Scalar>) -> Self {
        DiagonalOp::new(coeffs)
    }
}

impl From<DiagonalOp> for Vec<Scalar> {
    fn from(op: DiagonalOp) -> Self {
        op.coeffs
    }
}

impl DiagonalOp {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        DiagonalOp { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Polynomial degree in `D`; `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Scalar {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    /// `F(mu)` by Horner's rule.
    pub fn eval(&self, mu: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, a| &(&acc * mu) + a)
    }

    /// Divides each coefficient `c_k` by `F(offset + k)`.
    ///
    /// Zero coefficients sitting on a root of `F` are left alone.
    pub fn invert_apply(&self, s: &OffsetSeries) -> Result<OffsetSeries> {
        let mut out = OffsetSeries::zero_at(s.offset().clone());
        for (&k, c) in s.coeffs() {
            let mu = s.offset() + &Scalar::from_int(k);
            let f = self.eval(&mu);
            if f.is_zero() {
                return Err(Error::Resonance { exponent: mu });
            }
            out.set(k, c.checked_div(&f)?);
        }
        Ok(out)
    }

    /// Expands `D^n = sum_k S(n, k) x^k d^k` (Stirling numbers of the second kind).
    pub fn to_diff_op(&self) -> DiffOp {
        let mut op = DiffOp::zero();
        // stirling[k] holds S(n, k) for the current n
        let mut stirling: Vec<i64> = vec![1];
        for (n, a) in self.coeffs.iter().enumerate() {
            if n > 0 {
                let mut next = vec![0i64; n + 1];
                for k in 1..=n {
                    let prev = stirling.get(k).copied().unwrap_or(0);
                    next[k] = k as i64 * prev + stirling[k - 1];
                }
                stirling = next;
            }
            for (k, &s) in stirling.iter().enumerate() {
                if s != 0 {
                    op.add_term(a * &Scalar::from_int(s), k as i64, k as u32);
                }
            }
        }
        op
    }
}

pub fn diag_eval(f: &DiagonalOp, mu: &Scalar) -> Scalar {
    f.eval(mu)
}

pub fn diag_invert_apply(f: &DiagonalOp, s: &OffsetSeries) -> Result<OffsetSeries> {
    f.invert_apply(s)
}

impl fmt::Display for DiagonalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(n, a)| match n {
                0 => format!("({a})"),
                1 => format!("({a}) D"),
                _ => format!("({a}) D^{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
