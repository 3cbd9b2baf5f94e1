//! Command-line harness for the courantlab suites: loads JSON
//! descriptions, runs validations and verification suites, and renders
//! deterministic JSON reports plus short human summaries.

pub mod args;
pub mod bivector;
pub mod input;
pub mod report;
pub mod suites;

use courantlab::exactlin::{vec_to_strings, Subspace};
use courantlab::liegrp::{builtin_triple, LieError};
use courantlab::quadlie::catalog::sl2;
use courantlab::quadlie::{ManinTriple, QuadraticLieAlgebra};
use courantlab::report::{Check, Report};

pub use args::{BivectorOpts, Cli, Command, Suite, VerifyOpts};
pub use report::{RunConfig, RunReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    /// Well-formed input that fails a structural requirement.
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Anchor(#[from] courantlab::anchored::AnchorError),
    #[error(transparent)]
    Lag(#[from] courantlab::lagrel::LagError),
    #[error(transparent)]
    Lin(#[from] courantlab::exactlin::LinError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Lie(LieError::UnknownContext(_)) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

/// What a command produced: the report (absent on usage errors), the text
/// for stdout, and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<RunReport>,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn from_report(report: RunReport, text: String) -> Self {
        let exit_code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
        Self {
            report: Some(report),
            text,
            exit_code,
        }
    }

    fn error(config: RunConfig, err: CliError) -> Self {
        let code = err.exit_code();
        if code == EXIT_USAGE {
            return Self {
                report: None,
                text: format!("error: {err}\n"),
                exit_code: code,
            };
        }
        let mut rep = Report::new();
        rep.push(Check::fail("error", err.to_string()));
        let report = RunReport::new(config, rep);
        let text = report.summary();
        Self {
            report: Some(report),
            text,
            exit_code: code,
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { path } => {
            let mut config = RunConfig::named("validate");
            config.input = Some(path.display().to_string());
            match validate(path) {
                Ok(rep) => {
                    let r = RunReport::new(config, rep);
                    let text = r.summary();
                    Outcome::from_report(r, text)
                }
                Err(e) => Outcome::error(config, e),
            }
        }
        Command::Verify { suite, opts } => {
            let config = RunConfig {
                command: format!("verify {}", suite.name()),
                input: None,
                ctx: opts.ctx.clone(),
                samples: opts.samples,
                seed: Some(opts.seed),
                h: Some(opts.h),
                tol: Some(opts.tol),
            };
            match suites::run_suite(*suite, opts) {
                Ok(rep) => {
                    let r = RunReport::new(config, rep);
                    let text = r.summary();
                    Outcome::from_report(r, text)
                }
                Err(e) => Outcome::error(config, e),
            }
        }
        Command::Bivector(o) => {
            let mut config = RunConfig::named("bivector");
            config.ctx = Some(o.ctx.clone());
            match bivector::run(o) {
                Ok((rep, data)) => {
                    let text = bivector::render(&data);
                    let value = serde_json::to_value(&data).expect("serializable");
                    let r = RunReport::new(config, rep).with_data(value);
                    let text = format!("{text}{}", r.summary());
                    Outcome::from_report(r, text)
                }
                Err(e) => Outcome::error(config, e),
            }
        }
        Command::Export { ctx } => match export(ctx) {
            Ok(text) => Outcome {
                report: None,
                text,
                exit_code: EXIT_PASS,
            },
            Err(e) => Outcome::error(RunConfig::named("export"), e),
        },
    }
}

/// Exact validation of an algebra file, and of its triple if present.
pub fn validate(path: &std::path::Path) -> Result<Report, CliError> {
    let file = input::read_algebra_file(path)?;
    let algebra = match QuadraticLieAlgebra::from_json(&file.algebra) {
        Ok(a) => a,
        Err(e) => {
            let mut rep = Report::new();
            rep.push(Check::fail("structure", e.to_string()));
            return Ok(rep);
        }
    };
    match &file.triple {
        None => Ok(algebra.validate().to_report()),
        Some(t) => {
            let n = algebra.dim();
            let g1 = input::subspace_from_strings(n, &t.g1)?;
            let g2 = input::subspace_from_strings(n, &t.g2)?;
            Ok(ManinTriple::new(algebra, g1, g2).validate())
        }
    }
}

fn rows(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| vec_to_strings(v)).collect()
}

/// The JSON description accepted by `validate`.
pub fn export(ctx: &str) -> Result<String, CliError> {
    let file = match ctx {
        "sl2" => input::AlgebraFile {
            algebra: sl2().to_json(),
            triple: None,
        },
        _ => {
            let name = if ctx == "sl2-double" { "sl2-triangular-triple" } else { ctx };
            let tc = builtin_triple(name, 0, 0)?;
            input::AlgebraFile {
                algebra: tc.triple.d.to_json(),
                triple: Some(input::TripleJson {
                    g1: rows(&tc.triple.g1),
                    g2: rows(&tc.triple.g2),
                }),
            }
        }
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    Ok(s)
}

/// Caps the global thread pool at `COURANTLAB_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("COURANTLAB_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("COURANTLAB_THREADS={v:?} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}
