use std::path::PathBuf;

use thiserror::Error;

use crate::certificates::HypothesisReport;

/// A malformed line in a certificate file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation's hypotheses do not hold for this surface or input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid surface configuration: {0}")]
    Config(String),

    #[error("{} malformed line(s) in {}:\n{}", .errors.len(), .path.display(), join_lines(.errors))]
    CertificateFile { path: PathBuf, errors: Vec<LineError> },

    /// Certificates do not cover a theorem's hypotheses; no bound is claimed.
    #[error("hypotheses of theorem {:?} fail at n = {}, mu = {}: {} row(s) unmet", .0.theorem, .0.n, .0.mu, .0.failures().count())]
    HypothesesFailed(Box<HypothesisReport>),

    /// Candidates survived every supplied certificate.
    #[error("{} candidate(s) not excluded by any certificate at n = {n}: {}", .candidates.len(), .candidates.join(", "))]
    Unresolved { n: u64, candidates: Vec<String> },

    #[error("io error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn join_lines(errors: &[LineError]) -> String {
    errors
        .iter()
        .map(|e| format!("  {e}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
