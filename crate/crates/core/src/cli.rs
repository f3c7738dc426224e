//! The `heun` command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! code together with the bytes destined for stdout and stderr, so the whole
//! surface can be exercised in-process. Exit codes: 0 success, 1 usage error,
//! 2 domain error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heun::{
    build_decomposition, check_constraints, derive_q_constraint,
    find_polynomial_solutions_with_notes, indicial_roots, jacobi_decomposition, solve_descending,
    solve_series, verify_residual, Case, ConstraintCheck, Decomposition, DescentOptions,
    HeunParams, IndicialRoots, QConstraint, SolutionReport,
};
use crate::oracle::{jacobi_reference, numeric_check, q_spectrum, QSpectrum};
use crate::scalar::Scalar;
use crate::series::OffsetSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

fn parse_scalar(s: &str) -> std::result::Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

fn parse_series(s: &str) -> std::result::Result<OffsetSeries, String> {
    serde_json::from_str(s).map_err(|e| format!("invalid series JSON: {e}"))
}

#[derive(Parser, Debug)]
#[command(
    name = "heun",
    version,
    about = "Exact series and polynomial solutions of the Heun equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the (F, P) split of the equation for a case
    Decompose(CaseCmd),
    /// Ascending Frobenius series about x = 0
    Series(SeriesCmd),
    /// Descending polynomial candidate for one case
    Poly(PolyCmd),
    /// Try every polynomial case and root
    Find(FindCmd),
    /// Accessory-parameter polynomial for degree-n solutions
    Spectrum(SpectrumCmd),
    /// Substitute a candidate series into the equation
    Verify(VerifyCmd),
    /// Jacobi polynomial through the operator pipeline and the reference recurrence
    Jacobi(JacobiCmd),
    /// Evaluate the constraints attached to a case
    Constraints(CaseCmd),
    /// RK4 cross-check of a candidate on a real interval
    Eval(EvalCmd),
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    alpha: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    beta: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    gamma: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    delta: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    epsilon: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    q: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    c: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    sigma: Scalar,
}

impl ParamArgs {
    fn heun(&self) -> HeunParams {
        HeunParams {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
            delta: self.delta.clone(),
            epsilon: self.epsilon.clone(),
            q: self.q.clone(),
            c: self.c.clone(),
            sigma: self.sigma.clone(),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct CaseCmd {
    #[command(flatten)]
    params: ParamArgs,
    /// ascending | i | ii | extended | jacobi
    #[arg(long)]
    case: String,
    /// Degree (jacobi only)
    #[arg(long)]
    n: Option<u32>,
    /// Treat unsatisfied constraints as errors
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SeriesCmd {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 50)]
    order: u32,
    /// first | second | <rational exponent>; defaults to 0 when it is a root
    #[arg(long, allow_hyphen_values = true)]
    root: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct PolyCmd {
    #[command(flatten)]
    params: ParamArgs,
    /// i | ii | extended | jacobi
    #[arg(long, default_value = "i")]
    case: String,
    /// Starting exponent; defaults to the smallest nonnegative integer root
    #[arg(long)]
    n: Option<u32>,
    /// Lowest index visited by the descent
    #[arg(long, allow_hyphen_values = true)]
    k_min: Option<i64>,
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct FindCmd {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SpectrumCmd {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyCmd {
    #[command(flatten)]
    params: ParamArgs,
    /// Series JSON: {"offset": "<rational>", "coeffs": {"<k>": "<rational>"}}
    #[arg(long, value_parser = parse_series)]
    candidate: OffsetSeries,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct JacobiCmd {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    alpha: Scalar,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_scalar)]
    beta: Scalar,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct EvalCmd {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_parser = parse_series)]
    candidate: OffsetSeries,
    #[arg(long, allow_hyphen_values = true)]
    x0: f64,
    #[arg(long, allow_hyphen_values = true)]
    x1: f64,
    #[arg(long, default_value_t = 10_000)]
    steps: u32,
    #[command(flatten)]
    out: OutputArgs,
}

/// Echo of the request inside every report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RequestEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heun: Option<HeunParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_min: Option<i64>,
    #[serde(default)]
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<OffsetSeries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum CommandResult {
    #[serde(rename_all = "camelCase")]
    Decompose {
        decomposition: Decomposition,
        indicial_roots: Option<IndicialRoots>,
        constraints: Vec<ConstraintCheck>,
        q_constraint: Option<QConstraint>,
    },
    #[serde(rename_all = "camelCase")]
    Series {
        lambda_used: Scalar,
        order: u32,
        series: OffsetSeries,
        residual: OffsetSeries,
    },
    Poly(SolutionReport),
    Find {
        reports: Vec<SolutionReport>,
    },
    Spectrum(QSpectrum),
    #[serde(rename_all = "camelCase")]
    Verify {
        residual: OffsetSeries,
        is_zero: bool,
    },
    Jacobi {
        pipeline: SolutionReport,
        reference: Vec<Scalar>,
        agree: bool,
    },
    #[serde(rename_all = "camelCase")]
    Constraints {
        case_tag: Case,
        checks: Vec<ConstraintCheck>,
        q_constraint: Option<QConstraint>,
    },
    #[serde(rename_all = "camelCase")]
    Eval {
        max_deviation: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorObject {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<Scalar>,
}

impl From<&Error> for ErrorObject {
    fn from(e: &Error) -> Self {
        ErrorObject {
            kind: e.kind().to_string(),
            message: e.to_string(),
            exponent: match e {
                Error::Resonance { exponent } => Some(exponent.clone()),
                _ => None,
            },
        }
    }
}

/// Top-level JSON document written to stdout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: RequestEcho,
    pub result: Option<CommandResult>,
    pub diagnostics: Vec<String>,
    pub errors: Vec<ErrorObject>,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let (name, format, echo) = describe(&cli.command);
    let mut diagnostics = Vec::new();
    let outcome = dispatch(&cli.command, &mut diagnostics);
    let (result, errors) = match outcome {
        Ok(r) => (Some(r), Vec::new()),
        Err(e) => (None, vec![e]),
    };
    let code = if errors.is_empty() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    };
    let report = Report {
        command: name.to_string(),
        params: echo,
        result,
        diagnostics,
        errors: errors.iter().map(ErrorObject::from).collect(),
    };
    match format {
        Format::Json => {
            let mut stdout = serde_json::to_string_pretty(&report).expect("report serializes");
            stdout.push('\n');
            let stderr = report
                .diagnostics
                .iter()
                .map(|d| format!("note: {d}\n"))
                .collect();
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
        Format::Text => {
            let mut stderr = String::new();
            for e in &errors {
                let _ = writeln!(stderr, "error: {e}");
            }
            Outcome {
                code,
                stdout: render_text(&report),
                stderr,
            }
        }
    }
}

fn describe(cmd: &Command) -> (&'static str, Format, RequestEcho) {
    let base = |p: &ParamArgs| RequestEcho {
        heun: Some(p.heun()),
        ..RequestEcho::default()
    };
    match cmd {
        Command::Decompose(c) | Command::Constraints(c) => {
            let name = if matches!(cmd, Command::Decompose(_)) {
                "decompose"
            } else {
                "constraints"
            };
            let echo = RequestEcho {
                case: Some(c.case.clone()),
                n: c.n,
                strict: c.strict,
                ..base(&c.params)
            };
            (name, c.out.format, echo)
        }
        Command::Series(c) => (
            "series",
            c.out.format,
            RequestEcho {
                order: Some(c.order),
                root: c.root.clone(),
                ..base(&c.params)
            },
        ),
        Command::Poly(c) => (
            "poly",
            c.out.format,
            RequestEcho {
                case: Some(c.case.clone()),
                n: c.n,
                k_min: c.k_min,
                strict: c.strict,
                ..base(&c.params)
            },
        ),
        Command::Find(c) => ("find", c.out.format, base(&c.params)),
        Command::Spectrum(c) => (
            "spectrum",
            c.out.format,
            RequestEcho {
                n: Some(c.n),
                ..base(&c.params)
            },
        ),
        Command::Verify(c) => (
            "verify",
            c.out.format,
            RequestEcho {
                candidate: Some(c.candidate.clone()),
                ..base(&c.params)
            },
        ),
        Command::Jacobi(c) => (
            "jacobi",
            c.out.format,
            RequestEcho {
                alpha: Some(c.alpha.clone()),
                beta: Some(c.beta.clone()),
                n: Some(c.n),
                ..RequestEcho::default()
            },
        ),
        Command::Eval(c) => (
            "eval",
            c.out.format,
            RequestEcho {
                candidate: Some(c.candidate.clone()),
                interval: Some((c.x0, c.x1)),
                steps: Some(c.steps),
                ..base(&c.params)
            },
        ),
    }
}

fn enforce_strict(strict: bool, checks: &[ConstraintCheck]) -> Result<()> {
    if !strict {
        return Ok(());
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.enforced && !c.satisfied)
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::ConstraintViolation(failed.join(", ")))
    }
}

fn decomposition_for(params: &ParamArgs, case: Case, n: Option<u32>) -> Result<Decomposition> {
    match case {
        Case::Jacobi => {
            let n = n.ok_or_else(|| Error::InvalidParams("the jacobi case needs --n".into()))?;
            Ok(jacobi_decomposition(n, &params.alpha, &params.beta))
        }
        other => build_decomposition(&params.heun(), other),
    }
}

fn dispatch(cmd: &Command, diagnostics: &mut Vec<String>) -> Result<CommandResult> {
    match cmd {
        Command::Decompose(c) => {
            let case: Case = c.case.parse()?;
            let heun = c.params.heun();
            let constraints = check_constraints(&heun, case);
            enforce_strict(c.strict, &constraints)?;
            let decomposition = decomposition_for(&c.params, case, c.n)?;
            let roots = match indicial_roots(&decomposition) {
                Ok(r) => Some(r),
                Err(e) => {
                    diagnostics.push(e.to_string());
                    None
                }
            };
            diagnostics.extend(decomposition.notes.iter().cloned());
            let q_constraint = derive_q_constraint(&heun, case).ok();
            Ok(CommandResult::Decompose {
                decomposition,
                indicial_roots: roots,
                constraints,
                q_constraint,
            })
        }
        Command::Series(c) => {
            let heun = c.params.heun();
            let d = build_decomposition(&heun, Case::Ascending)?;
            diagnostics.extend(d.notes.iter().cloned());
            let lambda = match c.root.as_deref() {
                None => {
                    if d.diagonal.eval(&Scalar::zero()).is_zero() {
                        Scalar::zero()
                    } else {
                        indicial_roots(&d)?.rational()?[0].clone()
                    }
                }
                Some("first") => indicial_roots(&d)?.rational()?[0].clone(),
                Some("second") => {
                    let roots = indicial_roots(&d)?;
                    let roots = roots.rational()?;
                    roots.get(1).unwrap_or(&roots[0]).clone()
                }
                Some(value) => value.parse()?,
            };
            let series = solve_series(&d, &lambda, c.order)?;
            let residual = verify_residual(&heun, &series);
            Ok(CommandResult::Series {
                lambda_used: lambda,
                order: c.order,
                series,
                residual,
            })
        }
        Command::Poly(c) => {
            let case: Case = c.case.parse()?;
            if case == Case::Ascending {
                return Err(Error::InvalidParams(
                    "polynomial descent needs case i, ii, extended or jacobi".into(),
                ));
            }
            let d = decomposition_for(&c.params, case, c.n)?;
            let checks = match case {
                Case::Jacobi => Vec::new(),
                other => check_constraints(&c.params.heun(), other),
            };
            enforce_strict(c.strict, &checks)?;
            let n = match c.n {
                Some(n) => n,
                None => *indicial_roots(&d)?
                    .nonnegative_integers()
                    .first()
                    .ok_or_else(|| {
                        Error::PreconditionViolated(format!(
                            "{case} has no nonnegative integer indicial root"
                        ))
                    })?,
            };
            let report = solve_descending(&d, n, DescentOptions { k_min: c.k_min })?;
            Ok(CommandResult::Poly(report))
        }
        Command::Find(c) => {
            let (reports, notes) = find_polynomial_solutions_with_notes(&c.params.heun())?;
            diagnostics.extend(notes);
            Ok(CommandResult::Find { reports })
        }
        Command::Spectrum(c) => {
            let heun = c.params.heun();
            if heun.alpha != Scalar::from_int(-(c.n as i64)) {
                diagnostics.push(format!("alpha replaced by -{} for the spectrum", c.n));
            }
            Ok(CommandResult::Spectrum(q_spectrum(c.n, &heun)?))
        }
        Command::Verify(c) => {
            let residual = verify_residual(&c.params.heun(), &c.candidate);
            let is_zero = residual.is_zero();
            Ok(CommandResult::Verify { residual, is_zero })
        }
        Command::Jacobi(c) => {
            let d = jacobi_decomposition(c.n, &c.alpha, &c.beta);
            let pipeline = solve_descending(&d, c.n, DescentOptions::default())?;
            let reference = jacobi_reference(c.n, &c.alpha, &c.beta)?;
            let agree =
                pipeline.is_polynomial && pipeline.series == OffsetSeries::polynomial(&reference);
            Ok(CommandResult::Jacobi {
                pipeline,
                reference,
                agree,
            })
        }
        Command::Constraints(c) => {
            let case: Case = c.case.parse()?;
            let heun = c.params.heun();
            let checks = check_constraints(&heun, case);
            enforce_strict(c.strict, &checks)?;
            Ok(CommandResult::Constraints {
                case_tag: case,
                checks,
                q_constraint: derive_q_constraint(&heun, case).ok(),
            })
        }
        Command::Eval(c) => {
            let max_deviation =
                numeric_check(&c.params.heun(), &c.candidate, (c.x0, c.x1), c.steps)?;
            Ok(CommandResult::Eval { max_deviation })
        }
    }
}

fn series_text(s: &OffsetSeries) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.terms()
        .map(|(e, c)| format!("({c}) x^{e}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn report_text(out: &mut String, r: &SolutionReport) {
    let _ = writeln!(out, "case: {}", r.case_tag);
    let _ = writeln!(out, "lambda: {}", r.lambda_used);
    let _ = writeln!(out, "prefactor: x^{}", r.prefactor_offset);
    let _ = writeln!(out, "series: {}", series_text(&r.series));
    let _ = writeln!(out, "polynomial: {}", r.is_polynomial);
    if let Some(deg) = r.degree {
        let _ = writeln!(out, "degree: {deg}");
    }
    let _ = writeln!(out, "residual: {}", series_text(&r.residual));
    for c in &r.constraints_checked {
        constraint_text(out, c);
    }
    for d in &r.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
}

fn constraint_text(out: &mut String, c: &ConstraintCheck) {
    let _ = writeln!(
        out,
        "constraint {}: lhs {} rhs {} {}{}",
        c.name,
        c.lhs,
        c.rhs,
        if c.satisfied { "ok" } else { "unsatisfied" },
        if c.enforced { "" } else { " (reported only)" }
    );
}

fn q_constraint_text(out: &mut String, q: &QConstraint) {
    let _ = writeln!(out, "q required: {}", q.q_required);
    let _ = writeln!(out, "transformed F(0): {}", q.leftover_diagonal);
    for (deg, v) in &q.leftover_low_degree {
        let _ = writeln!(out, "leftover x^{deg}: {v}");
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let Some(result) = &report.result else {
        return out;
    };
    match result {
        CommandResult::Decompose {
            decomposition,
            indicial_roots,
            constraints,
            q_constraint,
        } => {
            let _ = writeln!(out, "case: {}", decomposition.case_tag);
            let _ = writeln!(out, "F(D) = {}", decomposition.diagonal);
            let _ = writeln!(out, "P = {}", decomposition.perturbation);
            let _ = writeln!(out, "prefactor: x^{}", decomposition.prefactor_offset);
            match indicial_roots {
                Some(IndicialRoots::Rational { roots }) => {
                    let list: Vec<String> = roots.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "indicial roots: {}", list.join(", "));
                }
                Some(IndicialRoots::Irrational { discriminant, .. }) => {
                    let _ = writeln!(
                        out,
                        "indicial roots: irrational (discriminant {discriminant})"
                    );
                }
                None => {}
            }
            for c in constraints {
                constraint_text(&mut out, c);
            }
            if let Some(q) = q_constraint {
                q_constraint_text(&mut out, q);
            }
        }
        CommandResult::Series {
            lambda_used,
            order,
            series,
            residual,
        } => {
            let _ = writeln!(out, "lambda: {lambda_used}");
            let _ = writeln!(out, "order: {order}");
            for (k, c) in series.coeffs() {
                let _ = writeln!(out, "c_{k} = {c}");
            }
            let support: Vec<String> = residual.coeffs().keys().map(ToString::to_string).collect();
            let _ = writeln!(out, "residual support: [{}]", support.join(", "));
        }
        CommandResult::Poly(r) => report_text(&mut out, r),
        CommandResult::Find { reports } => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                report_text(&mut out, r);
            }
        }
        CommandResult::Spectrum(sp) => {
            let _ = writeln!(out, "degree: {}", sp.degree);
            let coeffs: Vec<String> = sp
                .char_poly
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect();
            let _ = writeln!(
                out,
                "characteristic polynomial (ascending in q): [{}]",
                coeffs.join(", ")
            );
            let roots: Vec<String> = sp.rational_roots.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "rational roots: [{}]", roots.join(", "));
            let _ = writeln!(out, "root search complete: {}", sp.root_search_complete);
            for (a, b) in &sp.sign_changes {
                let _ = writeln!(out, "sign change in [{a}, {b}]");
            }
        }
        CommandResult::Verify { residual, is_zero } => {
            let _ = writeln!(out, "residual: {}", series_text(residual));
            let _ = writeln!(out, "solution: {is_zero}");
        }
        CommandResult::Jacobi {
            pipeline,
            reference,
            agree,
        } => {
            let _ = writeln!(out, "pipeline: {}", series_text(&pipeline.series));
            let _ = writeln!(
                out,
                "reference: {}",
                series_text(&OffsetSeries::polynomial(reference))
            );
            let _ = writeln!(out, "agree: {agree}");
        }
        CommandResult::Constraints {
            case_tag,
            checks,
            q_constraint,
        } => {
            let _ = writeln!(out, "case: {case_tag}");
            for c in checks {
                constraint_text(&mut out, c);
            }
            if let Some(q) = q_constraint {
                q_constraint_text(&mut out, q);
            }
        }
        CommandResult::Eval { max_deviation } => {
            let _ = writeln!(out, "max deviation: {max_deviation:e}");
        }
    }
    for d in &report.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}
