//! Expression parsing and evaluation shared by the `adic` binary and its
//! tests.

pub mod eval;
pub mod expr;
