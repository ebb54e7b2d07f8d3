//! Generalized hemicubic quantum CSS codes.
//!
//! Qubits sit on the `p`-faces of the Hamming cube `Q^n` quotiented by a
//! classical linear code `C = [n, k, d]` with `d >= p + 2`. The crate builds the
//! parity-check matrices, explicit logical operators and the recursive
//! filling/cofilling decoder, together with brute-force oracles used to check
//! the closed-form parameters at small sizes.
//!
//! Module map:
//!
//! - [`f2la`]: bit-packed linear algebra over F2 (rank, solve, nullspace).
//! - [`cube`]: faces and chains of the plain cube with boundary/coboundary.
//! - [`quotient`]: classical codes, canonical coset representatives, the
//!   quotient complex.
//! - [`csscode`]: parity checks, parameters and logical operators.
//! - [`filler`]: filling and cofilling algorithms with cut selection.
//! - [`decoder`]: syndrome decoding and residual classification.
//! - [`harness`]: distance ladder, soundness scans, Monte Carlo trials.
//! - [`formats`]: text formats shared by the command-line tool.

pub mod csscode;
pub mod cube;
pub mod decoder;
mod error;
pub mod f2la;
pub mod filler;
pub mod formats;
pub mod harness;
pub mod quotient;

pub use crate::csscode::{CodeInstance, LogicalSet};
pub use crate::cube::{Chain, Face, Symbol};
pub use crate::decoder::{Correction, Syndrome, Verdict};
pub use crate::error::{Error, Result};
pub use crate::f2la::{BitMatrix, BitVector, RowSpace, SparseMatrix};
pub use crate::quotient::{ClassicalCode, QuotientComplex};
