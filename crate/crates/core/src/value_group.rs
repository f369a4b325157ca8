//! The value group of a discrete valuation: the multiplicative group
//! generated by `of_add(e)` for integers e, with an absorbing bottom
//! element 0 adjoined. Every valuation in this crate takes its values here.
//!
//! The translation to the additive picture sends `of_add(-a)` to a and 0 to
//! infinity; both views are provided.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An element of the value group: either the absorbing zero or `of_add(e)`.
///
/// Multiplication adds exponents and zero absorbs; the total order puts
/// zero below everything and compares exponents otherwise. Both fall out
/// of the derive thanks to variant ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MultZ0 {
    Zero,
    Exp(BigInt),
}

impl MultZ0 {
    /// `of_add(e)` for a machine-sized exponent.
    pub fn exp(e: i64) -> Self {
        MultZ0::Exp(BigInt::from(e))
    }

    /// The multiplicative unit `of_add(0)`.
    pub fn one() -> Self {
        MultZ0::Exp(BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MultZ0::Zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MultZ0::Zero, _) | (_, MultZ0::Zero) => MultZ0::Zero,
            (MultZ0::Exp(a), MultZ0::Exp(b)) => MultZ0::Exp(a + b),
        }
    }

    /// `of_add(e)^n = of_add(e*n)`; zero requires a positive exponent.
    pub fn pow(&self, n: i64) -> Result<Self> {
        match self {
            MultZ0::Zero => {
                if n > 0 {
                    Ok(MultZ0::Zero)
                } else {
                    Err(Error::ZeroPower)
                }
            }
            MultZ0::Exp(e) => Ok(MultZ0::Exp(e * BigInt::from(n))),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            MultZ0::Zero => Err(Error::ZeroInverse),
            MultZ0::Exp(e) => Ok(MultZ0::Exp(-e)),
        }
    }

    /// Translation from the additive view: finite a goes to `of_add(-a)`,
    /// infinity goes to zero.
    pub fn of_addval(a: &AddVal) -> Self {
        match a {
            AddVal::Infinity => MultZ0::Zero,
            AddVal::Fin(v) => MultZ0::Exp(-v),
        }
    }

    pub fn to_addval(&self) -> AddVal {
        match self {
            MultZ0::Zero => AddVal::Infinity,
            MultZ0::Exp(e) => AddVal::Fin(-e),
        }
    }

    /// The order-embedding into the nonnegative rationals determined by a
    /// base: zero goes to 0 and `of_add(e)` to base^e, exactly.
    pub fn to_real(&self, base: &NormBase) -> BigRational {
        match self {
            MultZ0::Zero => BigRational::zero(),
            MultZ0::Exp(e) => {
                let e = i32::try_from(e).expect("exponent fits the embedding range");
                base.base().pow(e)
            }
        }
    }
}

impl fmt::Display for MultZ0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultZ0::Zero => write!(f, "0"),
            MultZ0::Exp(e) => write!(f, "of_add({e})"),
        }
    }
}

/// The additive view of a valuation value: an integer or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AddVal {
    Infinity,
    Fin(BigInt),
}

impl AddVal {
    pub fn fin(a: i64) -> Self {
        AddVal::Fin(BigInt::from(a))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, AddVal::Infinity)
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            AddVal::Infinity => None,
            AddVal::Fin(a) => Some(a),
        }
    }
}

impl PartialOrd for AddVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AddVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AddVal::Infinity, AddVal::Infinity) => Ordering::Equal,
            (AddVal::Infinity, _) => Ordering::Greater,
            (_, AddVal::Infinity) => Ordering::Less,
            (AddVal::Fin(a), AddVal::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for AddVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AddVal::Infinity => write!(f, "infinity"),
            AddVal::Fin(a) => write!(f, "{a}"),
        }
    }
}

/// The base of the embedding into the reals. Monotone embeddings require a
/// base greater than 1; when the residue field is finite of order p^k the
/// standard base is p^k, and 6 is the default otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBase {
    base: BigRational,
}

impl NormBase {
    pub fn new(base: BigRational) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::ZeroArgument);
        }
        Ok(NormBase { base })
    }

    /// The base p^k attached to a residue field of order p^k.
    pub fn residue_field(p: u64, k: u32) -> Self {
        let base = BigRational::from_integer(BigInt::from(p)).pow(k as i32);
        NormBase { base }
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }
}

impl Default for NormBase {
    fn default() -> Self {
        NormBase { base: BigRational::from_integer(6.into()) }
    }
}

impl fmt::Display for NormBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_adds_exponents_and_zero_absorbs() {
        assert_eq!(MultZ0::exp(-1).mul(&MultZ0::exp(-2)), MultZ0::exp(-3));
        assert_eq!(MultZ0::Zero.mul(&MultZ0::exp(5)), MultZ0::Zero);
        assert_eq!(MultZ0::exp(0).mul(&MultZ0::exp(7)), MultZ0::exp(7));
    }

    #[test]
    fn order_is_total_with_zero_at_bottom() {
        assert!(MultZ0::Zero <= MultZ0::exp(-100));
        assert!(MultZ0::exp(-2) <= MultZ0::exp(-1));
        assert!(MultZ0::exp(1) > MultZ0::exp(0));
    }

    #[test]
    fn pow_scales_exponents() {
        assert_eq!(MultZ0::exp(-1).pow(5).unwrap(), MultZ0::exp(-5));
        assert_eq!(MultZ0::exp(3).pow(0).unwrap(), MultZ0::exp(0));
        assert_eq!(MultZ0::Zero.pow(2).unwrap(), MultZ0::Zero);
        assert_eq!(MultZ0::Zero.pow(0), Err(Error::ZeroPower));
        assert_eq!(MultZ0::Zero.pow(-1), Err(Error::ZeroPower));
    }

    #[test]
    fn inv_negates() {
        assert_eq!(MultZ0::exp(-2).inv().unwrap(), MultZ0::exp(2));
        assert_eq!(MultZ0::exp(0).inv().unwrap(), MultZ0::exp(0));
        assert_eq!(MultZ0::Zero.inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn addval_translation_round_trips() {
        assert_eq!(MultZ0::of_addval(&AddVal::fin(5)), MultZ0::exp(-5));
        assert_eq!(MultZ0::of_addval(&AddVal::Infinity), MultZ0::Zero);
        assert_eq!(MultZ0::exp(-1).to_addval(), AddVal::fin(1));
    }

    #[test]
    fn to_real_is_exact() {
        let two = NormBase::new(BigRational::from_integer(2.into())).unwrap();
        assert_eq!(MultZ0::exp(3).to_real(&two), BigRational::from_integer(8.into()));
        assert_eq!(
            MultZ0::exp(-2).to_real(&two),
            BigRational::new(1.into(), 4.into())
        );
        assert_eq!(MultZ0::Zero.to_real(&NormBase::default()), BigRational::zero());
    }

    #[test]
    fn display_is_stable() {
        assert_eq!(MultZ0::Zero.to_string(), "0");
        assert_eq!(MultZ0::exp(-2).to_string(), "of_add(-2)");
        assert_eq!(AddVal::Infinity.to_string(), "infinity");
    }

    #[test]
    fn default_base_is_six() {
        assert_eq!(NormBase::default().base(), &BigRational::from_integer(6.into()));
        assert_eq!(
            NormBase::residue_field(5, 2).base(),
            &BigRational::from_integer(25.into())
        );
    }
}
