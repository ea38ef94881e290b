//! Linear difference equations of degree `k`, their companion matrices, and
//! two applications built on them: a block cipher over a labeled alphabet and
//! a matrix block code with determinant checksums.
//!
//! All arithmetic is exact ([`num_bigint`]); terms of a recurrence outgrow
//! machine words after a few dozen steps.

pub mod blockcode;
pub mod cipher;
pub mod companion;
pub mod error;
pub mod matrix;
pub mod recurrence;
pub mod representation;

pub use error::{Error, Result};
pub use matrix::{IntegerMatrix, ScaledMatrix};
pub use recurrence::{RecurrenceSpec, SequenceTable};
pub use representation::Representation;

pub use num_bigint::{BigInt, BigUint};
