//! Heun-equation decompositions and solvers.

mod decomposition;
mod params;
mod solve;

pub use decomposition::{
    build_decomposition, case_i_operator, case_shift, check_constraints, derive_q_constraint,
    heun_operator, indicial_roots, jacobi_decomposition, jacobi_operator, printed_case_ii_q,
    printed_extended_q, roots_of_diagonal, split_diagonal, ConstraintCheck, Decomposition,
    Equation, IndicialRoots, QConstraint, EXPONENT_SUM, LEFTOVER_X_MINUS_2, Q_CASE_II,
    Q_EXTENDED_DERIVED, Q_EXTENDED_PRINTED, Q_ZERO,
};
pub use params::{Case, HeunParams};
pub use solve::{
    find_polynomial_solutions, find_polynomial_solutions_with_notes, iterate_ansatz,
    solve_descending, solve_series, verify_residual, DescentOptions, SolutionReport,
};
