//! Exact arithmetic for discretely valued fields.
//!
//! The crate provides the value group of a discrete valuation, the p-adic
//! and X-adic valuations with their uniformizer calculus, finite-precision
//! models of the completions (p-adic digit expansions and truncated Laurent
//! series), finite-field arithmetic with irreducibility certificates, and
//! finite extensions of the completed fields with valuations extended
//! through norms.

pub mod error;
pub mod extension;
pub mod field;
pub mod finite_field;
pub mod laurent;
pub mod padic;
pub mod poly;
pub mod ratfunc;
pub mod valuation;
pub mod value_group;

pub use error::{Error, Result};
pub use extension::{Certificate, CompleteBase, ExtElem, ExtField, LaurentCtx, LocalFieldData, NormValue, QVal};
pub use field::{Field, PrimeField, Rationals};
pub use finite_field::{FFElem, FpPoly, Fq};
pub use laurent::LaurentSeries;
pub use padic::{PAdicCtx, PAdicNum, ValBound};
pub use poly::Poly;
pub use ratfunc::{RatFunc, RatFuncField};
pub use valuation::{PAdicValuation, Uniformizer, ValuedField, XAdicValuation};
pub use value_group::{AddVal, MultZ0, NormBase};
