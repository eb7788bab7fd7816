//! Operator surface of the identification engine: file formats, synthetic
//! data generation, the identification and evaluation commands, and run
//! manifests for reproducibility.
//!
//! Everything here is a thin, deterministic layer over [`twin_ident_core`]:
//! commands parse inputs, call the pure core, and serialize results. Unit
//! conversions to centimeters happen only at the report boundary.

pub mod commands;
pub mod config;
pub mod episode;
pub mod exec;
pub mod manifest;
pub mod obj_io;
pub mod pgm;
pub mod report;
pub mod traj_io;

use std::process::ExitCode;

/// Exit status contract: 0 success, 1 usage/input error, 2 numeric failure.
#[derive(Debug)]
pub enum AppError {
    Usage(anyhow::Error),
    Numeric(anyhow::Error),
}

impl AppError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Usage(_) => ExitCode::from(1),
            AppError::Numeric(_) => ExitCode::from(2),
        }
    }

    pub fn message(&self) -> String {
        match self {
            AppError::Usage(e) | AppError::Numeric(e) => format!("{e:#}"),
        }
    }
}

/// Classify a core optimization error: divergence and non-finite losses are
/// numeric failures, everything else is bad input.
pub fn classify_optimize(e: twin_ident_core::optimize::OptimizeError) -> AppError {
    use twin_ident_core::dynamics::DynamicsError;
    use twin_ident_core::optimize::OptimizeError;
    match &e {
        OptimizeError::AllNonFinite => AppError::Numeric(anyhow::anyhow!("{e}")),
        OptimizeError::Dynamics(DynamicsError::NonFiniteState { .. }) => {
            AppError::Numeric(anyhow::anyhow!("{e}"))
        }
        _ => AppError::Usage(anyhow::anyhow!("{e}")),
    }
}

pub type AppResult<T> = Result<T, AppError>;

pub(crate) fn usage<E: Into<anyhow::Error>>(e: E) -> AppError {
    AppError::Usage(e.into())
}
