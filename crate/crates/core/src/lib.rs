//! Finite oriented matroids given by circuit and cocircuit signatures:
//! signed subsets, matroids from circuit families, axiom checkers, signed
//! line arrangements in 3-space and digraph certificates.

pub mod digraph;
pub mod error;
pub mod format;
pub mod generators;
pub mod matroid;
pub mod oriented;
pub mod realizations;
pub mod signed;

pub use error::{Error, Result};
pub use matroid::{Matroid, MinorSpec, ValidationOptions};
pub use oriented::{CheckOptions, CheckResult, CircuitSignature, Coverage, SignaturePair, Verdict};
pub use signed::{ElementSet, GroundSet, Sign, SignVector, SignedSubset};
