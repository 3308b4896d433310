use gorbit_core::catalog::CatalogError;
use gorbit_core::gocheck::GoError;
use gorbit_core::natred::NatRedError;
use gorbit_core::BuildError;
use serde::Serialize;

use crate::report::SeedField;

/// Exit 2 for bad input, 3 for failures inside a computation.
#[derive(Debug)]
pub enum Failure {
    Validation(anyhow::Error),
    Computation(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Computation(_) => 3,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Validation(e) | Failure::Computation(e) => e,
        }
    }

    pub fn computation<E: std::error::Error + Send + Sync + 'static>(e: E) -> Self {
        Failure::Computation(e.into())
    }

    pub fn from_build(e: BuildError) -> Self {
        match e {
            BuildError::UnknownSpace(_)
            | BuildError::BadParams { .. }
            | BuildError::OutOfRange { .. } => Failure::Validation(e.into()),
            _ => Failure::Computation(e.into()),
        }
    }

    pub fn from_go(e: GoError) -> Self {
        match e {
            GoError::NonPositiveEigenvalue { .. }
            | GoError::Arity(..)
            | GoError::TooFewSamples(_)
            | GoError::DimensionMismatch { .. } => Failure::Validation(e.into()),
            _ => Failure::Computation(e.into()),
        }
    }

    pub fn from_catalog(e: CatalogError) -> Self {
        match e {
            CatalogError::Build(b) => Self::from_build(b),
            CatalogError::Go(g) => Self::from_go(g),
            CatalogError::Arity { .. }
            | CatalogError::NonPositive { .. }
            | CatalogError::NotRow6(_) => Failure::Validation(e.into()),
            _ => Failure::Computation(e.into()),
        }
    }

    pub fn from_natred(e: NatRedError) -> Self {
        match e {
            NatRedError::Arity { .. }
            | NatRedError::ZeroCoefficient { .. }
            | NatRedError::NonPositive { .. }
            | NatRedError::NotBijective { .. } => Failure::Validation(e.into()),
            NatRedError::Go(g) => Self::from_go(g),
            _ => Failure::Computation(e.into()),
        }
    }
}

/// A command's result before the common report header is attached.
pub struct Outcome {
    pub schema: &'static str,
    pub seed: SeedField,
    pub body: serde_json::Value,
    pub code: u8,
}

impl Outcome {
    pub fn new<T: Serialize>(schema: &'static str, seed: SeedField, body: T, code: u8) -> Self {
        Self {
            schema,
            seed,
            body: serde_json::to_value(body).expect("report bodies serialize"),
            code,
        }
    }
}
