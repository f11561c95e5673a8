//! Exact operator calculus on polynomials over an admissible sequence.

pub mod config;
pub mod detect;
pub mod error;
pub mod expansion;
pub mod harness;
pub mod integration;
pub mod operator;
pub mod poly;
pub mod psi;
pub mod qcalculus;
pub mod random;
pub mod report;
pub mod scalar;
pub mod sequences;
pub mod series;
pub mod spectral;
pub mod star;
pub mod verify;

pub use error::{Error, Result};
pub use operator::{Grading, OperatorMatrix};
pub use poly::{Polynomial, SequenceTable};
pub use psi::{AdmissibleSequence, Family};
pub use scalar::Scalar;
pub use series::DeltaSeries;
