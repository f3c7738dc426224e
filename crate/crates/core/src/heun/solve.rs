//! Running the diagonal-operator iteration.
//!
//! Two routes compute the same coefficients: the literal operator iteration
//! `sum_m (-1)^m [F^-1 P]^m x^lambda` ([`iterate_ansatz`]) and the
//! degree-indexed recurrence `F(lambda + k) c_k = -[P y]_k` that resums it
//! coefficient by coefficient ([`solve_series`], [`solve_descending`]).

use serde::{Deserialize, Serialize};

use super::decomposition::{
    build_decomposition, check_constraints, heun_operator, indicial_roots, jacobi_operator,
    ConstraintCheck, Decomposition, Equation,
};
use super::params::{Case, HeunParams};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{series_combine, OffsetSeries};

/// Outcome of a polynomial (or series) construction, always carrying the
/// exact residual against the original equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionReport {
    pub case_tag: Case,
    pub lambda_used: Scalar,
    /// `y = x^prefactor_offset * series`.
    pub prefactor_offset: Scalar,
    pub series: OffsetSeries,
    pub is_polynomial: bool,
    /// Polynomial degree of `series` when `is_polynomial`.
    pub degree: Option<i64>,
    pub residual: OffsetSeries,
    pub constraints_checked: Vec<ConstraintCheck>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DescentOptions {
    /// Lowest index visited; `None` means `-(n + 16)`.
    pub k_min: Option<i64>,
}

/// `[P y]_k` for a series whose offset is the exponent origin.
fn source_at(d: &Decomposition, y: &OffsetSeries, k: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for t in d.perturbation.terms() {
        let from = k - t.degree();
        let c = y.coeff(from);
        if c.is_zero() {
            continue;
        }
        let mu = y.offset() + &Scalar::from_int(from);
        if let Some((factor, _)) = t.apply_to_exponent(&mu) {
            acc += &(&factor * &c);
        }
    }
    acc
}

fn require_root(d: &Decomposition, lambda: &Scalar) -> Result<()> {
    let f = d.diagonal.eval(lambda);
    if f.is_zero() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "F({lambda}) = {f} is not zero; {lambda} is not an indicial root"
        )))
    }
}

/// Ascending series `x^lambda (1 + c_1 x + ... + c_N x^N)`.
pub fn solve_series(d: &Decomposition, lambda: &Scalar, order: u32) -> Result<OffsetSeries> {
    require_root(d, lambda)?;
    if d.perturbation.degrees().iter().any(|&deg| deg <= 0) {
        return Err(Error::PreconditionViolated(
            "ascending series need every perturbation degree to be positive".into(),
        ));
    }
    let mut y = OffsetSeries::monomial(lambda.clone(), Scalar::one());
    for k in 1..=order as i64 {
        let source = source_at(d, &y, k);
        let mu = lambda + &Scalar::from_int(k);
        let f = d.diagonal.eval(&mu);
        if f.is_zero() {
            if source.is_zero() {
                continue;
            }
            return Err(Error::Resonance { exponent: mu });
        }
        y.set(k, (-source).checked_div(&f)?);
    }
    Ok(y)
}

/// The literal iteration `sum_m (-1)^m [F^-1 P]^m x^lambda`, each term
/// truncated to relative indices `lo..=hi`.
///
/// Stops once a term vanishes, or after `hi - lo + 1` steps (enough whenever
/// every perturbation degree has the same sign).
pub fn iterate_ansatz(
    d: &Decomposition,
    lambda: &Scalar,
    lo: i64,
    hi: i64,
) -> Result<OffsetSeries> {
    require_root(d, lambda)?;
    let mut term = OffsetSeries::monomial(lambda.clone(), Scalar::one());
    let mut sum = term.clone();
    let steps = (hi - lo + 1).max(0);
    for _ in 0..steps {
        let pushed = d.perturbation.apply(&term).truncated(lo, hi);
        if pushed.is_zero() {
            break;
        }
        term = d
            .diagonal
            .invert_apply(&pushed)?
            .scaled(&Scalar::from_int(-1));
        sum = series_combine(&sum, &term, &Scalar::one())?;
    }
    Ok(sum.truncated(lo, hi))
}

/// Applies the original equation to `candidate`.
pub fn verify_residual(params: &HeunParams, candidate: &OffsetSeries) -> OffsetSeries {
    heun_operator(params).apply(candidate)
}

fn residual_for(equation: &Equation, candidate: &OffsetSeries) -> OffsetSeries {
    match equation {
        Equation::Heun(p) => verify_residual(p, candidate),
        Equation::Jacobi { n, alpha, beta } => jacobi_operator(*n, alpha, beta).apply(candidate),
    }
}

fn constraints_for(d: &Decomposition) -> Vec<ConstraintCheck> {
    match &d.equation {
        Equation::Heun(p) => check_constraints(p, d.case_tag),
        Equation::Jacobi { .. } => Vec::new(),
    }
}

/// Descends from `x^n` towards lower powers.
///
/// Stops after as many consecutive zero coefficients as the widest band of
/// `P` (all lower coefficients then vanish), or at `k_min`.
pub fn solve_descending(d: &Decomposition, n: u32, opts: DescentOptions) -> Result<SolutionReport> {
    let top = n as i64;
    require_root(d, &Scalar::from_int(top))?;
    let degrees = d.perturbation.degrees();
    if degrees.iter().any(|&deg| deg >= 0) {
        return Err(Error::PreconditionViolated(
            "descending solutions need every perturbation degree to be negative".into(),
        ));
    }
    let band = degrees
        .iter()
        .map(|deg| deg.unsigned_abs())
        .max()
        .unwrap_or(1) as usize;
    let k_min = opts.k_min.unwrap_or(-(top + 16));

    let mut diagnostics: Vec<String> = d.notes.clone();
    let mut y = OffsetSeries::new(
        Scalar::zero(),
        std::iter::once((top, Scalar::one())).collect(),
    );
    let mut zeros = 0usize;
    let mut terminated = false;
    let mut blocked = false;
    let mut k = top - 1;
    while k >= k_min {
        let source = source_at(d, &y, k);
        let mu = Scalar::from_int(k);
        let f = d.diagonal.eval(&mu);
        let value = if f.is_zero() {
            if source.is_zero() {
                Scalar::zero()
            } else if k >= 0 {
                return Err(Error::Resonance { exponent: mu });
            } else {
                diagnostics.push(format!(
                    "descent stopped at exponent {k}: F vanishes there but the source {source} does not"
                ));
                blocked = true;
                break;
            }
        } else {
            (-source).checked_div(&f)?
        };
        if value.is_zero() {
            zeros += 1;
        } else {
            zeros = 0;
            y.set(k, value);
        }
        if zeros >= band {
            terminated = true;
            break;
        }
        k -= 1;
    }
    if !terminated && !blocked {
        diagnostics.push(format!(
            "descent reached the floor k_min = {k_min} without {band} consecutive zero coefficients"
        ));
    }

    let negative = y.min_index().is_some_and(|lo| lo < 0);
    let candidate = y.shifted(&d.prefactor_offset);
    let residual = residual_for(&d.equation, &candidate);
    let mut is_polynomial = terminated && !negative;
    if negative {
        let lo = y.min_index().expect("nonempty");
        diagnostics.push(format!(
            "the candidate does not truncate: nonzero coefficients reach index {lo}"
        ));
    }
    if is_polynomial && !residual.is_zero() {
        diagnostics.push("descent terminated but the residual is not zero".into());
        is_polynomial = false;
    }
    Ok(SolutionReport {
        case_tag: d.case_tag,
        lambda_used: Scalar::from_int(top),
        prefactor_offset: d.prefactor_offset.clone(),
        series: y.clone(),
        is_polynomial,
        degree: is_polynomial.then(|| y.max_index()).flatten(),
        residual,
        constraints_checked: constraints_for(d),
        diagnostics,
    })
}

/// Tries every nonnegative-integer indicial root of Cases I, II and the
/// extended equation, in that order, smaller root first.
pub fn find_polynomial_solutions(params: &HeunParams) -> Result<Vec<SolutionReport>> {
    Ok(find_polynomial_solutions_with_notes(params)?.0)
}

/// As [`find_polynomial_solutions`], also returning per-case notes for cases
/// that produced no candidate.
pub fn find_polynomial_solutions_with_notes(
    params: &HeunParams,
) -> Result<(Vec<SolutionReport>, Vec<String>)> {
    params.validate()?;
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    for case in Case::POLYNOMIAL_CASES {
        let d = build_decomposition(params, case)?;
        let checks = check_constraints(params, case);
        let unsatisfied: Vec<&str> = checks
            .iter()
            .filter(|c| c.enforced && !c.satisfied)
            .map(|c| c.name.as_str())
            .collect();
        let roots = match indicial_roots(&d) {
            Ok(roots) => roots,
            Err(e) => {
                notes.push(format!("{case}: {e}"));
                continue;
            }
        };
        let candidates = roots.nonnegative_integers();
        if candidates.is_empty() {
            notes.push(format!("{case}: no nonnegative integer indicial root"));
            continue;
        }
        for n in candidates {
            if !unsatisfied.is_empty() {
                let seed =
                    OffsetSeries::monomial(Scalar::from_int(n as i64), Scalar::one()).canonical();
                let mut diagnostics = d.notes.clone();
                diagnostics.push(format!(
                    "descent skipped: unsatisfied constraint(s) {}",
                    unsatisfied.join(", ")
                ));
                reports.push(SolutionReport {
                    case_tag: case,
                    lambda_used: Scalar::from_int(n as i64),
                    prefactor_offset: d.prefactor_offset.clone(),
                    residual: verify_residual(params, &seed.shifted(&d.prefactor_offset)),
                    series: seed,
                    is_polynomial: false,
                    degree: None,
                    constraints_checked: checks.clone(),
                    diagnostics,
                });
                continue;
            }
            match solve_descending(&d, n, DescentOptions::default()) {
                Ok(report) => reports.push(report),
                Err(Error::Resonance { exponent }) => {
                    let seed = OffsetSeries::monomial(Scalar::from_int(n as i64), Scalar::one())
                        .canonical();
                    let mut diagnostics = d.notes.clone();
                    diagnostics.push(format!(
                        "resonance at exponent {exponent} inside the polynomial range; no polynomial from this root"
                    ));
                    reports.push(SolutionReport {
                        case_tag: case,
                        lambda_used: Scalar::from_int(n as i64),
                        prefactor_offset: d.prefactor_offset.clone(),
                        residual: verify_residual(params, &seed.shifted(&d.prefactor_offset)),
                        series: seed,
                        is_polynomial: false,
                        degree: None,
                        constraints_checked: checks.clone(),
                        diagnostics,
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok((reports, notes))
}
