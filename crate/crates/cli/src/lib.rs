//! Command-line front end: parses a job, builds a deterministic report and
//! renders it as JSON, text or DOT.

pub mod emit;
pub mod job;
pub mod rational;
pub mod report;

pub use emit::{emit, emit_dot, emit_json, emit_text};
pub use job::{parse_args, CliError, Format, JobSpec, Mode};
pub use rational::Rational;
pub use report::{run_report, Report, SCHEMA_VERSION};

/// Runs a parsed job and writes its output; returns the process exit code.
pub fn execute(job: &JobSpec) -> Result<(), CliError> {
    let report = run_report(job)?;
    let text = emit(&report, job.format);
    match &job.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    match &report.verification {
        Some(v) if !v.passed => {
            let failed: Vec<&str> = v.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            Err(CliError::VerifyFailed(failed.join(", ")))
        }
        _ => Ok(()),
    }
}
