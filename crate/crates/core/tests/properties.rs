mod common;

use std::collections::BTreeMap;

use common::{case_ii_q, impose_exponent_sum, r, s};
use heun::heun::{
    build_decomposition, derive_q_constraint, find_polynomial_solutions, iterate_ansatz,
    jacobi_decomposition, solve_descending, solve_series, verify_residual, Case, DescentOptions,
    HeunParams,
};
use heun::oracle::{frobenius_coefficients, jacobi_reference, q_spectrum};
use heun::{series_combine, DiagonalOp, DiffOp, DiffOpTerm, OffsetSeries, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(n, d).unwrap())
}

fn non_integer() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("non-integer", |v| !v.is_integer())
}

fn c_value() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("c not 0 or 1", |v| !v.is_zero() && !v.is_one())
}

fn params() -> impl Strategy<Value = HeunParams> {
    (
        scalar(),
        scalar(),
        scalar(),
        scalar(),
        scalar(),
        scalar(),
        c_value(),
    )
        .prop_map(|(alpha, beta, gamma, delta, epsilon, q, c)| HeunParams {
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
            q,
            c,
            sigma: Scalar::zero(),
        })
}

fn diff_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((scalar(), -3i64..=3, 0u32..=3), 0..6).prop_map(|terms| {
        DiffOp::from_terms(terms.into_iter().map(|(c, x, d)| DiffOpTerm::new(c, x, d)))
    })
}

fn series_at(offset: Scalar) -> impl Strategy<Value = OffsetSeries> {
    prop::collection::btree_map(-4i64..=4, scalar(), 0..6)
        .prop_map(move |coeffs| OffsetSeries::new(offset.clone(), coeffs))
}

fn series() -> impl Strategy<Value = OffsetSeries> {
    scalar().prop_flat_map(series_at)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grades_partition_the_operator(op in diff_op()) {
        let pieces = op.grade_decompose();
        let mut sum = DiffOp::zero();
        for (deg, piece) in &pieces {
            prop_assert!(piece.terms().all(|t| t.degree() == *deg));
            prop_assert!(!piece.is_zero());
            sum = sum.plus(piece);
        }
        prop_assert_eq!(sum, op);
    }

    #[test]
    fn apply_is_linear(op in diff_op(), (a, b) in scalar().prop_flat_map(|o| (series_at(o.clone()), series_at(o))), k in scalar()) {
        let combined = series_combine(&a, &b, &k).unwrap();
        let lhs = op.apply(&combined);
        let rhs = series_combine(&op.apply(&a), &op.apply(&b), &k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_pieces_shift_exponents(op in diff_op(), mu in scalar()) {
        for (deg, piece) in op.grade_decompose() {
            let image = piece.apply(&OffsetSeries::monomial(mu.clone(), Scalar::one()));
            let target = &mu + &s(deg);
            prop_assert!(image.terms().all(|(e, _)| e == target));
        }
    }

    #[test]
    fn conjugation_is_a_similarity(op in diff_op(), mu in scalar(), y in series()) {
        // x^-mu O x^mu y == conj(O, mu) y
        let direct = op.apply(&y.shifted(&mu)).shifted(&-&mu);
        prop_assert_eq!(direct, op.conjugate(&mu).apply(&y));
    }

    #[test]
    fn conjugation_composes(op in diff_op(), a in scalar(), b in scalar()) {
        prop_assert_eq!(op.conjugate(&a).conjugate(&b), op.conjugate(&(&a + &b)));
        prop_assert_eq!(op.conjugate(&Scalar::zero()), op);
    }

    #[test]
    fn diagonal_inverse_undoes_diagonal(coeffs in prop::collection::vec(scalar(), 1..4), y in series()) {
        let f = DiagonalOp::new(coeffs);
        prop_assume!(y.terms().all(|(e, _)| !f.eval(&e).is_zero()));
        let image = f.to_diff_op().apply(&y);
        for (e, c) in y.terms() {
            prop_assert_eq!(image.coeff_of_exponent(&e), &f.eval(&e) * c);
        }
        prop_assert_eq!(f.invert_apply(&image).unwrap(), y);
    }

    #[test]
    fn scalar_text_round_trips(v in scalar()) {
        prop_assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v);
    }

    #[test]
    fn series_json_round_trips(y in series()) {
        let text = serde_json::to_string(&y).unwrap();
        let back: OffsetSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_agrees_with_frobenius_oracle(mut p in params(), g in non_integer(), order in 0u32..=16) {
        p.gamma = g;
        let d = build_decomposition(&p, Case::Ascending).unwrap();
        for lambda in [Scalar::zero(), &Scalar::one() - &p.gamma] {
            let ours = solve_series(&d, &lambda, order).unwrap();
            prop_assert_eq!(&ours, &frobenius_coefficients(&p, &lambda, order).unwrap());
            prop_assert_eq!(ours, iterate_ansatz(&d, &lambda, 0, order as i64).unwrap());
        }
    }

    #[test]
    fn truncation_residual_lives_past_the_order(mut p in params(), g in non_integer(), order in 0u32..=12) {
        p.gamma = g;
        let d = build_decomposition(&p, Case::Ascending).unwrap();
        let y = solve_series(&d, &Scalar::zero(), order).unwrap();
        let residual = verify_residual(&p, &y);
        let n = order as i64;
        let allowed = [n + 1, n + 2];
        prop_assert!(residual.terms().all(|(e, _)| allowed.iter().any(|a| e == s(*a))), "{:?}", residual);
    }

    #[test]
    fn polynomial_reports_are_exact(p in params()) {
        let p = impose_exponent_sum(p);
        for q in [Scalar::zero(), case_ii_q(&p)] {
            let p = p.clone().with_q(q);
            for rep in find_polynomial_solutions(&p).unwrap() {
                if rep.is_polynomial {
                    let y = rep.series.shifted(&rep.prefactor_offset);
                    prop_assert!(verify_residual(&p, &y).is_zero());
                }
            }
        }
    }

    #[test]
    fn case_ii_q_is_the_conjugation_constraint(p in params()) {
        let derived = derive_q_constraint(&p, Case::CaseII).unwrap();
        prop_assert_eq!(derived.q_required, case_ii_q(&p));
    }

    #[test]
    fn spectrum_roots_terminate_the_series(n in 0u32..=3, beta in scalar(), gamma in scalar(), delta in scalar(), c in c_value()) {
        prop_assume!(!gamma.is_integer() || gamma > Scalar::zero());
        let p = HeunParams {
            alpha: s(-(n as i64)),
            beta,
            gamma,
            delta,
            epsilon: Scalar::zero(),
            q: Scalar::zero(),
            c,
            sigma: Scalar::zero(),
        };
        let p = impose_exponent_sum(p);
        let sp = q_spectrum(n, &p).unwrap();
        prop_assert_eq!(sp.char_poly.degree(), Some(n as usize + 1));
        for q in &sp.rational_roots {
            let y = frobenius_coefficients(&p.clone().with_q(q.clone()), &Scalar::zero(), n + 6).unwrap();
            prop_assert!(y.max_index().unwrap_or(0) <= n as i64, "q = {}: {:?}", q, y);
        }
    }

    #[test]
    fn jacobi_pipeline_matches_reference(n in 0u32..=8, a in 0i64..=30, b in 0i64..=30, da in 1i64..=4, db in 1i64..=4) {
        let (alpha, beta) = (Scalar::ratio(a, da).unwrap(), Scalar::ratio(b, db).unwrap());
        let d = jacobi_decomposition(n, &alpha, &beta);
        let rep = solve_descending(&d, n, DescentOptions::default()).unwrap();
        prop_assert!(rep.is_polynomial);
        prop_assert_eq!(rep.series, OffsetSeries::polynomial(&jacobi_reference(n, &alpha, &beta).unwrap()));
    }
}

#[test]
fn worked_example_polynomial() {
    let p = HeunParams::parse("-1", "2", "0", "1", "1", "0", "2").unwrap();
    let d = build_decomposition(&p, Case::CaseI).unwrap();
    let rep = solve_descending(&d, 1, DescentOptions::default()).unwrap();
    assert!(rep.is_polynomial);
    let want: BTreeMap<i64, Scalar> = [(0, r("-3/2")), (1, s(1))].into_iter().collect();
    assert_eq!(rep.series.coeffs(), &want);
}

#[test]
fn case_ii_example_is_x() {
    let p = HeunParams::parse("-1", "2", "0", "1", "1", "-3", "2").unwrap();
    let reports = find_polynomial_solutions(&p).unwrap();
    let rep = reports
        .iter()
        .find(|r| r.case_tag == Case::CaseII && r.is_polynomial)
        .expect("case ii polynomial");
    assert_eq!(
        rep.series.shifted(&rep.prefactor_offset),
        OffsetSeries::monomial(s(1), s(1))
    );
}
