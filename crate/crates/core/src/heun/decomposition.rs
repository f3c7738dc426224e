//! Splitting the Heun (and Jacobi) equations into a diagonal part `F(D)` and
//! a graded perturbation `P`, plus the constraints attached to each split.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::params::{Case, HeunParams};
use crate::error::{Error, Result};
use crate::operator::{DiagonalOp, DiffOp, DiffOpTerm};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// The original equation a decomposition was derived from; residuals are
/// always measured against it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Equation {
    Heun(HeunParams),
    Jacobi { n: u32, alpha: Scalar, beta: Scalar },
}

/// `(F(D) + P) phi = 0` where the original unknown is `x^prefactor_offset * phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Decomposition {
    pub case_tag: Case,
    pub diagonal: DiagonalOp,
    pub perturbation: DiffOp,
    pub prefactor_offset: Scalar,
    pub equation: Equation,
    pub notes: Vec<String>,
}

impl Decomposition {
    /// `F` rewritten in `x^a d^b` form plus `P`.
    pub fn full_operator(&self) -> DiffOp {
        self.diagonal.to_diff_op().plus(&self.perturbation)
    }

    pub fn perturbation_degrees(&self) -> Vec<i64> {
        self.perturbation.degrees()
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn op(terms: Vec<(Scalar, i64, u32)>) -> DiffOp {
    DiffOp::from_terms(terms.into_iter().map(|(c, a, b)| DiffOpTerm::new(c, a, b)))
}

/// The Heun equation multiplied by `x^2 (x-1) (x-c)`, assembled by expanding
/// the coefficient polynomials rather than from any transcribed form:
///
/// `x^2 (x-1)(x-c) d^2 + x [gamma (x-1)(x-c) + delta x (x-c) + epsilon x (x-1)] d
///  + x (alpha beta x - q) - sigma`.
pub fn heun_operator(p: &HeunParams) -> DiffOp {
    let x = Poly::linear(Scalar::zero(), Scalar::one());
    let x_minus_1 = Poly::root_factor(&Scalar::one());
    let x_minus_c = Poly::root_factor(&p.c);
    let cubic = &(&x * &x_minus_1) * &x_minus_c;

    let second = &x * &cubic;
    let first_inner = &(&(&x_minus_1 * &x_minus_c).scale(&p.gamma)
        + &(&x * &x_minus_c).scale(&p.delta))
        + &(&x * &x_minus_1).scale(&p.epsilon);
    let first = &x * &first_inner;
    let zeroth = &(&x * &Poly::linear(-&p.q, p.alpha_beta())) - &Poly::constant(p.sigma.clone());

    let mut out = DiffOp::zero();
    for (poly, order) in [(&second, 2u32), (&first, 1), (&zeroth, 0)] {
        for (i, coeff) in poly.coeffs().iter().enumerate() {
            out.add_term(coeff.clone(), i as i64, order);
        }
    }
    out
}

/// The equation divided by `x` once more than [`heun_operator`]'s
/// normalization, written term by term:
///
/// `x^2 d^2 + (gamma+delta+epsilon) x d + alpha beta
///  - (1+c) x d^2 - [(1+c) gamma + delta c + epsilon] d - q/x
///  + c d^2 + gamma c x^-1 d - sigma x^-2`.
pub fn case_i_operator(p: &HeunParams) -> DiffOp {
    let one_c = &Scalar::one() + &p.c;
    op(vec![
        (Scalar::one(), 2, 2),
        (p.exponent_sum(), 1, 1),
        (p.alpha_beta(), 0, 0),
        (-&one_c, 1, 2),
        (-p.first_order_mid(), 0, 1),
        (-&p.q, -1, 0),
        (p.c.clone(), 0, 2),
        (&p.gamma * &p.c, -1, 1),
        (-&p.sigma, -2, 0),
    ])
}

/// `(1 - x^2) d^2 + [beta - alpha - (alpha + beta + 2) x] d + n (n + alpha + beta + 1)`.
pub fn jacobi_operator(n: u32, alpha: &Scalar, beta: &Scalar) -> DiffOp {
    let n = s(n as i64);
    let ab = alpha + beta;
    op(vec![
        (Scalar::one(), 0, 2),
        (s(-1), 2, 2),
        (beta - alpha, 0, 1),
        (-(&ab + &s(2)), 1, 1),
        (&n * &(&(&n + &ab) + &s(1)), 0, 0),
    ])
}

/// Moves the degree-0 bucket into a polynomial in `D` using
/// `x^k d^k = D (D - 1) ... (D - k + 1)`.
pub fn split_diagonal(full: &DiffOp) -> (DiagonalOp, DiffOp) {
    let mut diag = Poly::zero();
    let mut rest = DiffOp::zero();
    for t in full.terms() {
        if t.degree() == 0 {
            let mut falling = Poly::constant(Scalar::one());
            for j in 0..t.dorder {
                falling = &falling * &Poly::root_factor(&s(j as i64));
            }
            diag = &diag + &falling.scale(&t.coeff);
        } else {
            rest.add_term(t.coeff, t.xpow, t.dorder);
        }
    }
    (DiagonalOp::new(diag.coeffs().to_vec()), rest)
}

/// Similarity shift used by the transformed cases.
pub fn case_shift(p: &HeunParams, case: Case) -> Option<Scalar> {
    match case {
        Case::CaseII => Some(&Scalar::one() - &p.gamma),
        Case::Extended => Some(&(&Scalar::one() - &p.gamma) + &p.sigma),
        _ => None,
    }
}

pub fn build_decomposition(p: &HeunParams, case: Case) -> Result<Decomposition> {
    p.validate()?;
    let equation = Equation::Heun(p.clone());
    match case {
        Case::Ascending => {
            let one_c = &Scalar::one() + &p.c;
            let diagonal = DiagonalOp::new(vec![
                -&p.sigma,
                &p.c * &(&p.gamma - &Scalar::one()),
                p.c.clone(),
            ]);
            let perturbation = op(vec![
                (-&one_c, 3, 2),
                (-p.first_order_mid(), 2, 1),
                (-&p.q, 1, 0),
                (Scalar::one(), 4, 2),
                (p.exponent_sum(), 3, 1),
                (p.alpha_beta(), 2, 0),
            ]);
            let mut notes = Vec::new();
            if !p.sigma.is_zero() {
                notes.push(format!(
                    "sigma = {} contributes -sigma to the diagonal part; indicial roots move away from 0 and 1-gamma",
                    p.sigma
                ));
            }
            Ok(Decomposition {
                case_tag: case,
                diagonal,
                perturbation,
                prefactor_offset: Scalar::zero(),
                equation,
                notes,
            })
        }
        Case::CaseI => {
            let (diagonal, perturbation) = split_diagonal(&case_i_operator(p));
            Ok(Decomposition {
                case_tag: case,
                diagonal,
                perturbation,
                prefactor_offset: Scalar::zero(),
                equation,
                notes: Vec::new(),
            })
        }
        Case::CaseII | Case::Extended => {
            let mu = case_shift(p, case).expect("transformed case");
            let conjugated = case_i_operator(p).conjugate(&mu);
            let (diagonal, perturbation) = split_diagonal(&conjugated);
            let (printed_f, printed_p) = printed_transformed(p, case);
            let mut notes = Vec::new();
            if diagonal == printed_f {
                notes.push(format!("diagonal part matches the printed {case} form"));
            } else {
                notes.push(format!(
                    "diagonal part differs from the printed {case} form: conjugated {diagonal} vs printed {printed_f}"
                ));
            }
            let gap = perturbation.plus(&printed_p.scaled(&s(-1)));
            if gap.is_zero() {
                notes.push(format!("perturbation matches the printed {case} form"));
            } else {
                notes.push(format!(
                    "perturbation has terms absent from the printed {case} form: {gap}"
                ));
            }
            let leftover = perturbation.coeff(-2, 0);
            if !leftover.is_zero() {
                notes.push(format!(
                    "x^-2 leftover {leftover} does not vanish and stays in the perturbation"
                ));
            }
            Ok(Decomposition {
                case_tag: case,
                diagonal,
                perturbation,
                prefactor_offset: mu,
                equation,
                notes,
            })
        }
        Case::Jacobi => Err(Error::InvalidParams(
            "the jacobi decomposition takes (n, alpha, beta); use jacobi_decomposition".into(),
        )),
    }
}

/// Transcription of the printed transformed operators, kept only for comparison.
fn printed_transformed(p: &HeunParams, case: Case) -> (DiagonalOp, DiffOp) {
    let sigma = if case == Case::Extended {
        p.sigma.clone()
    } else {
        Scalar::zero()
    };
    let one = Scalar::one();
    let one_c = &one + &p.c;
    let de = &p.delta + &p.epsilon;
    let shift = &(&one - &p.gamma) + &sigma;
    // [2(1 + sigma) - gamma]
    let lead = &(&s(2) * &(&one + &sigma)) - &p.gamma;
    let diagonal = DiagonalOp::new(vec![
        &(&shift * &(&sigma + &de)) + &p.alpha_beta(),
        &(&(&s(2) * &sigma) + &(&one - &p.gamma)) + &de,
        one.clone(),
    ]);
    let perturbation = op(vec![
        (-&one_c, 1, 2),
        (
            -(&(&(&lead * &one_c) + &(&p.delta * &p.c)) + &p.epsilon),
            0,
            1,
        ),
        (p.c.clone(), 0, 2),
        (&lead * &p.c, -1, 1),
    ]);
    (diagonal, perturbation)
}

pub fn jacobi_decomposition(n: u32, alpha: &Scalar, beta: &Scalar) -> Decomposition {
    let nn = s(n as i64);
    let ab1 = &(alpha + beta) + &Scalar::one();
    let diagonal = DiagonalOp::new(vec![-(&nn * &(&nn + &ab1)), ab1, Scalar::one()]);
    let perturbation = op(vec![(s(-1), 0, 2), (-(beta - alpha), 0, 1)]);
    Decomposition {
        case_tag: Case::Jacobi,
        diagonal,
        perturbation,
        prefactor_offset: Scalar::zero(),
        equation: Equation::Jacobi {
            n,
            alpha: alpha.clone(),
            beta: beta.clone(),
        },
        notes: Vec::new(),
    }
}

/// Roots of `F(lambda) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum IndicialRoots {
    /// Exact roots in ascending order; a double root appears twice.
    Rational { roots: Vec<Scalar> },
    /// `a lambda^2 + b lambda + c` with a discriminant that is not a rational square.
    Irrational {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        discriminant: Scalar,
    },
}

impl IndicialRoots {
    pub fn rational(&self) -> Result<&[Scalar]> {
        match self {
            IndicialRoots::Rational { roots } => Ok(roots),
            IndicialRoots::Irrational { a, b, c, .. } => Err(Error::IrrationalRoot(format!(
                "({a}) l^2 + ({b}) l + ({c}) has no rational roots"
            ))),
        }
    }

    /// Distinct roots that are nonnegative integers, ascending.
    pub fn nonnegative_integers(&self) -> Vec<u32> {
        let mut out: Vec<u32> = match self {
            IndicialRoots::Rational { roots } => roots
                .iter()
                .filter_map(|r| r.to_i64())
                .filter_map(|r| u32::try_from(r).ok())
                .collect(),
            IndicialRoots::Irrational { .. } => Vec::new(),
        };
        out.dedup();
        out
    }
}

pub fn indicial_roots(d: &Decomposition) -> Result<IndicialRoots> {
    roots_of_diagonal(&d.diagonal)
}

pub fn roots_of_diagonal(f: &DiagonalOp) -> Result<IndicialRoots> {
    match f.degree() {
        Some(1) => {
            let root = (-f.coeff(0)).checked_div(&f.coeff(1))?;
            Ok(IndicialRoots::Rational { roots: vec![root] })
        }
        Some(2) => {
            let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
            let disc = &(&b * &b) - &(&s(4) * &(&a * &c));
            match disc.sqrt_exact() {
                Some(root) => {
                    let two_a = &s(2) * &a;
                    let r1 = (&(-&b) - &root).checked_div(&two_a)?;
                    let r2 = (&(-&b) + &root).checked_div(&two_a)?;
                    let mut roots = vec![r1, r2];
                    roots.sort();
                    Ok(IndicialRoots::Rational { roots })
                }
                None => Ok(IndicialRoots::Irrational {
                    a,
                    b,
                    c,
                    discriminant: disc,
                }),
            }
        }
        other => Err(Error::DegreeUnsupported(other.unwrap_or(0))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub satisfied: bool,
    /// Whether the polynomial search requires this constraint.
    pub enforced: bool,
}

impl ConstraintCheck {
    fn new(name: &str, lhs: Scalar, rhs: Scalar, enforced: bool) -> Self {
        let satisfied = lhs == rhs;
        ConstraintCheck {
            name: name.to_string(),
            lhs,
            rhs,
            satisfied,
            enforced,
        }
    }
}

pub const EXPONENT_SUM: &str = "gamma+delta+epsilon=alpha+beta+1";
pub const Q_ZERO: &str = "q=0";
pub const Q_CASE_II: &str = "q=(delta*c+epsilon)*(gamma-1)";
pub const Q_EXTENDED_PRINTED: &str = "q=(1-gamma+sigma)*((1+c)*sigma+delta*c+epsilon) [printed]";
pub const Q_EXTENDED_DERIVED: &str = "q=q_required [derived by conjugation]";
pub const LEFTOVER_X_MINUS_2: &str = "x^-2 leftover=0";

/// `(1 - gamma + sigma) [(1 + c) sigma + delta c + epsilon]`, as printed for
/// the extended equation.
pub fn printed_extended_q(p: &HeunParams) -> Scalar {
    let shift = &(&Scalar::one() - &p.gamma) + &p.sigma;
    let inner = &(&(&(&Scalar::one() + &p.c) * &p.sigma) + &(&p.delta * &p.c)) + &p.epsilon;
    &shift * &inner
}

/// `(delta c + epsilon)(gamma - 1)`, as printed for Case II.
pub fn printed_case_ii_q(p: &HeunParams) -> Scalar {
    &(&(&p.delta * &p.c) + &p.epsilon) * &(&p.gamma - &Scalar::one())
}

pub fn check_constraints(p: &HeunParams, case: Case) -> Vec<ConstraintCheck> {
    let exponent_sum = || {
        ConstraintCheck::new(
            EXPONENT_SUM,
            p.exponent_sum(),
            &(&p.alpha + &p.beta) + &Scalar::one(),
            true,
        )
    };
    match case {
        Case::Ascending | Case::Jacobi => Vec::new(),
        Case::CaseI => vec![
            exponent_sum(),
            ConstraintCheck::new(Q_ZERO, p.q.clone(), Scalar::zero(), true),
        ],
        Case::CaseII => vec![
            exponent_sum(),
            ConstraintCheck::new(Q_CASE_II, p.q.clone(), printed_case_ii_q(p), true),
        ],
        Case::Extended => {
            let derived = derive_for_shift(p, &case_shift(p, case).expect("extended"));
            let leftover = derived
                .leftover_low_degree
                .get(&-2)
                .cloned()
                .unwrap_or_default();
            vec![
                ConstraintCheck::new(Q_EXTENDED_DERIVED, p.q.clone(), derived.q_required, true),
                ConstraintCheck::new(
                    Q_EXTENDED_PRINTED,
                    p.q.clone(),
                    printed_extended_q(p),
                    false,
                ),
                ConstraintCheck::new(Q_CASE_II, p.q.clone(), printed_case_ii_q(p), false),
                ConstraintCheck::new(LEFTOVER_X_MINUS_2, leftover, Scalar::zero(), false),
            ]
        }
    }
}

/// What the similarity transformation leaves behind once `q` is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QConstraint {
    /// The `q` that cancels the `x^-1` multiplication term.
    pub q_required: Scalar,
    /// Constant term of the transformed diagonal part, `F(0)`.
    pub leftover_diagonal: Scalar,
    /// Nonzero multiplication terms at negative degrees other than `x^-1`.
    #[serde(deserialize_with = "crate::series::int_keyed")]
    pub leftover_low_degree: BTreeMap<i64, Scalar>,
}

pub fn derive_q_constraint(p: &HeunParams, case: Case) -> Result<QConstraint> {
    let mu = case_shift(p, case).ok_or_else(|| {
        Error::InvalidParams(format!(
            "q constraint derivation applies to case_ii and extended, not {case}"
        ))
    })?;
    Ok(derive_for_shift(p, &mu))
}

fn derive_for_shift(p: &HeunParams, mu: &Scalar) -> QConstraint {
    // -q x^-1 commutes with x^mu, so conjugate with q = 0 and read the rest
    let base = p.clone().with_q(Scalar::zero());
    let conjugated = case_i_operator(&base).conjugate(mu);
    let q_required = conjugated.coeff(-1, 0);
    let leftover_diagonal = conjugated.coeff(0, 0);
    let leftover_low_degree = conjugated
        .terms()
        .filter(|t| t.dorder == 0 && t.xpow < -1)
        .map(|t| (t.xpow, t.coeff))
        .collect();
    QConstraint {
        q_required,
        leftover_diagonal,
        leftover_low_degree,
    }
}
