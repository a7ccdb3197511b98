//! Bloch-group boundary certificates, dilogarithm regulators, Dedekind zeta
//! special values and tame-kernel order predictions for number fields.
//!
//! The crate is organized around five subsystems:
//!
//! - [`apnum`]: arbitrary-precision real/complex arithmetic and the special
//!   functions everything else consumes (dilogarithm, Bloch–Wigner function,
//!   Hurwitz zeta at `s = 2`, Dirichlet `L(χ, 2)`).
//! - [`nfield`]: exact arithmetic in `Q[x]/(f)`, embeddings, signatures and
//!   field discriminants.
//! - [`bloch`]: formal sums in `Z[F]`, the boundary map into `F^× ∧ F^×`, and
//!   certified kernel verification.
//! - [`zeta`]: Dedekind zeta values `ζ_F(2)` with rigorous truncation bounds
//!   and the functional-equation transport to `ζ*_F(−1)`.
//! - [`lichtenbaum`]: `w₂(F)`, regulator matrices, and tame-kernel order
//!   predictions.
//!
//! The `blochk2` binary exposes all of it on the command line; see the
//! repository README.

pub mod apnum;
pub mod bloch;
pub mod cli;
pub mod corpus;
mod error;
pub mod exact;
pub mod lichtenbaum;
pub mod nfield;
pub mod report;
pub mod zeta;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
