//! Finite-precision arithmetic in the p-adic numbers.
//!
//! An element is either known to be congruent to `unit * p^nu` modulo
//! `p^(nu + rel)` with the unit coprime to p, or known only to be congruent
//! to 0 modulo `p^k` (with exact zero carrying an infinite-precision
//! sentinel). Addition propagates the minimum absolute precision,
//! multiplication the minimum relative precision; division by anything
//! whose valuation is not exactly known is refused rather than guessed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::is_prime_u64;
use crate::valuation::padic_val_bigint;
use crate::value_group::{AddVal, MultZ0};

/// A prime together with the default number of significant digits used when
/// embedding rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicCtx {
    p: u64,
    default_rel_prec: u32,
}

impl PAdicCtx {
    pub fn new(p: u64, default_rel_prec: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if default_rel_prec == 0 {
            return Err(Error::InsufficientPrecision);
        }
        Ok(PAdicCtx { p, default_rel_prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn default_rel_prec(&self) -> u32 {
        self.default_rel_prec
    }

    /// Exact embedding of a rational, truncated to the default relative
    /// precision. Zero embeds exactly.
    pub fn from_rat(&self, q: &BigRational) -> PAdicNum {
        if q.is_zero() {
            return PAdicNum { p: self.p, repr: Repr::Zero { prec: None } };
        }
        let vn = padic_val_bigint(self.p, q.numer()).expect("nonzero numerator");
        let vd = padic_val_bigint(self.p, q.denom()).expect("nonzero denominator");
        let nu = vn as i64 - vd as i64;
        let p_big = BigInt::from(self.p);
        let num_unit = q.numer() / p_big.pow(vn as u32);
        let den_unit = q.denom() / p_big.pow(vd as u32);
        let rel = self.default_rel_prec;
        let modulus = p_big.pow(rel);
        let den_inv = inv_mod(&den_unit, &modulus).expect("denominator unit is coprime to p");
        let unit = (num_unit * den_inv).mod_floor(&modulus);
        let unit = unit.to_biguint().expect("mod_floor is nonnegative");
        debug_assert!(!(&unit % self.p).is_zero());
        PAdicNum { p: self.p, repr: Repr::Known { nu, unit, rel } }
    }

    pub fn from_int(&self, n: i64) -> PAdicNum {
        self.from_rat(&BigRational::from_integer(n.into()))
    }

    /// Exact zero, with infinite absolute precision.
    pub fn zero(&self) -> PAdicNum {
        PAdicNum { p: self.p, repr: Repr::Zero { prec: None } }
    }

    /// An approximate zero known modulo p^k.
    pub fn zero_approx(&self, k: i64) -> PAdicNum {
        PAdicNum { p: self.p, repr: Repr::Zero { prec: Some(k) } }
    }
}

/// Precision-honest report of an additive valuation: exact, a lower bound
/// (all known digits cancelled), or exactly infinite (exact zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValBound {
    Exact(i64),
    AtLeast(i64),
    ExactlyInfinite,
}

impl ValBound {
    /// The multiplicative value when it is determined.
    pub fn to_multz0(&self) -> Option<MultZ0> {
        match self {
            ValBound::Exact(a) => Some(MultZ0::exp(-a)),
            ValBound::AtLeast(_) => None,
            ValBound::ExactlyInfinite => Some(MultZ0::Zero),
        }
    }

    pub fn to_addval(&self) -> Option<AddVal> {
        match self {
            ValBound::Exact(a) => Some(AddVal::fin(*a)),
            ValBound::AtLeast(_) => None,
            ValBound::ExactlyInfinite => Some(AddVal::Infinity),
        }
    }

    pub fn exact(&self) -> Option<i64> {
        match self {
            ValBound::Exact(a) => Some(*a),
            _ => None,
        }
    }

    /// True when the valuation is certainly at least `bound`.
    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            ValBound::Exact(a) => *a >= bound,
            ValBound::AtLeast(k) => *k >= bound,
            ValBound::ExactlyInfinite => true,
        }
    }
}

impl fmt::Display for ValBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValBound::Exact(a) => write!(f, "{a}"),
            ValBound::AtLeast(k) => write!(f, ">= {k}"),
            ValBound::ExactlyInfinite => write!(f, "infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// Congruent to 0 modulo p^prec; `None` is exact zero.
    Zero { prec: Option<i64> },
    /// Congruent to unit * p^nu modulo p^(nu + rel), 1 <= unit < p^rel,
    /// unit not divisible by p.
    Known { nu: i64, unit: BigUint, rel: u32 },
}

/// A p-adic number at finite precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicNum {
    p: u64,
    repr: Repr,
}

impl PAdicNum {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the element is determined modulo p^A. None
    /// means infinite (exact zero).
    pub fn abs_prec(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { prec } => *prec,
            Repr::Known { nu, rel, .. } => Some(nu + *rel as i64),
        }
    }

    /// The (nu, unit, rel) decomposition when the valuation is known.
    pub fn known_parts(&self) -> Option<(i64, &BigUint, u32)> {
        match &self.repr {
            Repr::Known { nu, unit, rel } => Some((*nu, unit, *rel)),
            Repr::Zero { .. } => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { prec: None })
    }

    pub fn valuation(&self) -> ValBound {
        match &self.repr {
            Repr::Zero { prec: None } => ValBound::ExactlyInfinite,
            Repr::Zero { prec: Some(k) } => ValBound::AtLeast(*k),
            Repr::Known { nu, .. } => ValBound::Exact(*nu),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let p = self.p;
        let num = match (&self.repr, &other.repr) {
            (Repr::Zero { prec: None }, _) => other.clone(),
            (_, Repr::Zero { prec: None }) => self.clone(),
            (Repr::Zero { prec: Some(k1) }, Repr::Zero { prec: Some(k2) }) => {
                PAdicNum { p, repr: Repr::Zero { prec: Some(*k1.min(k2)) } }
            }
            (Repr::Zero { prec: Some(k) }, Repr::Known { nu, unit, rel })
            | (Repr::Known { nu, unit, rel }, Repr::Zero { prec: Some(k) }) => {
                let abs = (*k).min(nu + *rel as i64);
                truncate_known(p, *nu, unit, abs)
            }
            (
                Repr::Known { nu: n1, unit: u1, rel: r1 },
                Repr::Known { nu: n2, unit: u2, rel: r2 },
            ) => {
                let abs = (n1 + *r1 as i64).min(n2 + *r2 as i64);
                let m = (*n1).min(*n2);
                let window = u32::try_from(abs - m).expect("window is positive");
                let p_big = BigUint::from(p);
                let modulus = p_big.pow(window);
                let t1 = u1 * p_big.pow(u32::try_from(n1 - m).expect("nonnegative shift"));
                let t2 = u2 * p_big.pow(u32::try_from(n2 - m).expect("nonnegative shift"));
                let s = (t1 + t2) % &modulus;
                normalize_sum(p, m, s, abs)
            }
        };
        Ok(num)
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Known { nu, unit, rel } => {
                let modulus = BigUint::from(self.p).pow(*rel);
                PAdicNum {
                    p: self.p,
                    repr: Repr::Known { nu: *nu, unit: &modulus - unit, rel: *rel },
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let p = self.p;
        let num = match (&self.repr, &other.repr) {
            (Repr::Zero { prec: None }, _) | (_, Repr::Zero { prec: None }) => {
                PAdicNum { p, repr: Repr::Zero { prec: None } }
            }
            (Repr::Zero { prec: Some(k1) }, Repr::Zero { prec: Some(k2) }) => {
                PAdicNum { p, repr: Repr::Zero { prec: Some(k1 + k2) } }
            }
            (Repr::Zero { prec: Some(k) }, Repr::Known { nu, .. })
            | (Repr::Known { nu, .. }, Repr::Zero { prec: Some(k) }) => {
                PAdicNum { p, repr: Repr::Zero { prec: Some(k + nu) } }
            }
            (
                Repr::Known { nu: n1, unit: u1, rel: r1 },
                Repr::Known { nu: n2, unit: u2, rel: r2 },
            ) => {
                let rel = (*r1).min(*r2);
                let modulus = BigUint::from(p).pow(rel);
                let unit = (u1 * u2) % &modulus;
                debug_assert!(!(&unit % p).is_zero());
                PAdicNum { p, repr: Repr::Known { nu: n1 + n2, unit, rel } }
            }
        };
        Ok(num)
    }

    /// Inversion requires an exactly known valuation: a lower bound cannot
    /// certify invertibility.
    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero { prec: None } => Err(Error::DivisionByZero),
            Repr::Zero { prec: Some(_) } => Err(Error::ZeroIndistinguishable),
            Repr::Known { nu, unit, rel } => {
                let modulus = BigInt::from(self.p).pow(*rel);
                let unit_inv = inv_mod(&BigInt::from(unit.clone()), &modulus)
                    .expect("unit is coprime to p");
                let unit = unit_inv.to_biguint().expect("inverse is reduced");
                Ok(PAdicNum { p: self.p, repr: Repr::Known { nu: -nu, unit, rel: *rel } })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// A rational congruent to the element modulo p^N, read off the digits.
    pub fn approximate(&self, n: i64) -> Result<BigRational> {
        match &self.repr {
            Repr::Zero { prec: None } => Ok(BigRational::zero()),
            Repr::Zero { prec: Some(k) } => {
                if *k >= n {
                    Ok(BigRational::zero())
                } else {
                    Err(Error::InsufficientPrecision)
                }
            }
            Repr::Known { nu, unit, rel } => {
                if nu + (*rel as i64) < n {
                    return Err(Error::InsufficientPrecision);
                }
                if n <= *nu {
                    return Ok(BigRational::zero());
                }
                let window = u32::try_from(n - nu).expect("positive window");
                let truncated = unit % BigUint::from(self.p).pow(window);
                let t = BigInt::from(truncated);
                let scale = BigInt::from(self.p).pow(nu.unsigned_abs() as u32);
                Ok(if *nu >= 0 {
                    BigRational::from_integer(t * scale)
                } else {
                    BigRational::new(t, scale)
                })
            }
        }
    }

    /// Image in the residue field: the first digit of an integral element.
    pub fn residue(&self) -> Result<u64> {
        match &self.repr {
            Repr::Zero { prec: None } => Ok(0),
            Repr::Zero { prec: Some(k) } => {
                if *k >= 1 {
                    Ok(0)
                } else {
                    Err(Error::UndecidableAtPrecision)
                }
            }
            Repr::Known { nu, unit, .. } => {
                if *nu < 0 {
                    Err(Error::NotIntegral)
                } else if *nu > 0 {
                    Ok(0)
                } else {
                    Ok(u64::try_from(&(unit % self.p)).expect("digit fits in u64"))
                }
            }
        }
    }

    /// Equality of the digits both sides can see: compares modulo p^A where
    /// A is the common absolute precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let abs = match (self.abs_prec(), other.abs_prec()) {
            (None, None) => return self.is_exact_zero() == other.is_exact_zero(),
            (None, Some(a)) | (Some(a), None) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let a = truncate_known_view(self, abs);
        let b = truncate_known_view(other, abs);
        a == b
    }
}

/// The digits of `x` visible below p^abs: None when they all vanish.
fn truncate_known_view(x: &PAdicNum, abs: i64) -> Option<(i64, BigUint)> {
    match &x.repr {
        Repr::Zero { .. } => None,
        Repr::Known { nu, unit, .. } => {
            if *nu >= abs {
                return None;
            }
            let window = u32::try_from(abs - nu).expect("positive window");
            Some((*nu, unit % BigUint::from(x.p).pow(window)))
        }
    }
}

/// Renormalizes a digit window after cancellation: factors out the p-power
/// of the sum, or reports an approximate zero if everything cancelled.
fn normalize_sum(p: u64, m: i64, s: BigUint, abs: i64) -> PAdicNum {
    if s.is_zero() {
        return PAdicNum { p, repr: Repr::Zero { prec: Some(abs) } };
    }
    let t = padic_val_bigint(p, &BigInt::from(s.clone())).expect("nonzero sum");
    let nu = m + t as i64;
    debug_assert!(nu < abs);
    let unit = s / BigUint::from(p).pow(t as u32);
    let rel = u32::try_from(abs - nu).expect("positive relative precision");
    PAdicNum { p, repr: Repr::Known { nu, unit, rel } }
}

fn truncate_known(p: u64, nu: i64, unit: &BigUint, abs: i64) -> PAdicNum {
    if abs <= nu {
        return PAdicNum { p, repr: Repr::Zero { prec: Some(abs) } };
    }
    let window = u32::try_from(abs - nu).expect("positive window");
    let unit = unit % BigUint::from(p).pow(window);
    debug_assert!(!unit.is_zero());
    PAdicNum { p, repr: Repr::Known { nu, unit, rel: window } }
}

/// Inverse of a modulo m when gcd(a, m) = 1.
fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

impl fmt::Display for PAdicNum {
    /// Canonical digit expansion, ascending, zero digits skipped:
    /// `2 + 3*5 + 5^2 + O(5^4)`. Approximate zero prints `O(p^k)` and exact
    /// zero prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { prec: None } => write!(f, "0"),
            Repr::Zero { prec: Some(k) } => write!(f, "O({}^{})", self.p, k),
            Repr::Known { nu, unit, rel } => {
                let mut digits = Vec::with_capacity(*rel as usize);
                let mut rest = unit.clone();
                let p_big = BigUint::from(self.p);
                for _ in 0..*rel {
                    let (q, r) = rest.div_rem(&p_big);
                    digits.push(u64::try_from(&r).expect("digit fits in u64"));
                    rest = q;
                }
                let mut first = true;
                for (i, d) in digits.iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let k = nu + i as i64;
                    match (k, d) {
                        (0, d) => write!(f, "{d}")?,
                        (1, 1) => write!(f, "{}", self.p)?,
                        (1, d) => write!(f, "{}*{}", d, self.p)?,
                        (k, 1) => write!(f, "{}^{}", self.p, k)?,
                        (k, d) => write!(f, "{}*{}^{}", d, self.p, k)?,
                    }
                }
                if first {
                    // unit has a nonzero low digit, so this cannot happen
                    write!(f, "0")?;
                }
                write!(f, " + O({}^{})", self.p, nu + *rel as i64)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, r: u32) -> PAdicCtx {
        PAdicCtx::new(p, r).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn from_rat_digits() {
        // 3^-1 mod 5^4 = 417 by extended Euclid: 3 * 417 = 1251 = 2*625 + 1
        let c = ctx(5, 4);
        let x = c.from_rat(&q(1, 3));
        let (nu, unit, rel) = x.known_parts().unwrap();
        assert_eq!((nu, rel), (0, 4));
        assert_eq!(unit, &BigUint::from(417u32));

        // 50 = 5^2 * 2
        let y = c.from_rat(&q(50, 1));
        let (nu, unit, _) = y.known_parts().unwrap();
        assert_eq!(nu, 2);
        assert_eq!(unit, &BigUint::from(2u32));

        assert!(c.from_rat(&BigRational::zero()).is_exact_zero());
    }

    #[test]
    fn add_and_cancellation() {
        let c = ctx(5, 4);
        let s = c.from_int(2).add(&c.from_int(3)).unwrap();
        let (nu, unit, _) = s.known_parts().unwrap();
        assert_eq!((nu, unit.clone()), (1, BigUint::one()));

        let z = c.from_int(1).add(&c.from_int(-1)).unwrap();
        assert_eq!(z.valuation(), ValBound::AtLeast(4));

        let one = c.from_rat(&q(1, 3)).add(&c.from_rat(&q(2, 3))).unwrap();
        let (nu, unit, _) = one.known_parts().unwrap();
        assert_eq!((nu, unit.clone()), (0, BigUint::one()));
    }

    #[test]
    fn mul_and_identity() {
        let c = ctx(5, 4);
        let x = c.from_int(50).mul(&c.from_rat(&q(1, 3))).unwrap();
        let (nu, unit, _) = x.known_parts().unwrap();
        // 2 * 417 mod 625 = 209
        assert_eq!((nu, unit.clone()), (2, BigUint::from(209u32)));

        let y = c.from_rat(&q(7, 3));
        assert!(y.mul(&c.from_int(1)).unwrap().agrees_with(&y));
        let one = c.from_int(5).mul(&c.from_rat(&q(1, 5))).unwrap();
        let (nu, unit, _) = one.known_parts().unwrap();
        assert_eq!((nu, unit.clone()), (0, BigUint::one()));
    }

    #[test]
    fn inversion() {
        let c = ctx(5, 4);
        let a = c.from_int(3).inv().unwrap();
        assert!(a.agrees_with(&c.from_rat(&q(1, 3))));
        let b = c.from_int(5).inv().unwrap();
        let (nu, unit, _) = b.known_parts().unwrap();
        assert_eq!((nu, unit.clone()), (-1, BigUint::one()));
        assert_eq!(c.zero_approx(10).inv(), Err(Error::ZeroIndistinguishable));
        assert_eq!(c.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuation_reporting() {
        let c = ctx(5, 4);
        assert_eq!(c.from_int(75).valuation(), ValBound::Exact(2));
        assert_eq!(c.from_rat(&q(1, 5)).valuation(), ValBound::Exact(-1));
        assert_eq!(c.zero().valuation(), ValBound::ExactlyInfinite);
        let z = c.from_int(1).sub(&c.from_int(1)).unwrap();
        assert_eq!(z.valuation(), ValBound::AtLeast(4));
    }

    #[test]
    fn approximate_density() {
        let c = ctx(5, 4);
        let x = c.from_rat(&q(1, 3));
        let a = x.approximate(2).unwrap();
        assert_eq!(a, BigRational::from_integer(17.into()));
        // v_5(1/3 - 17) = v_5(-50/3) = 2
        let v5 = crate::valuation::PAdicValuation::new(5).unwrap();
        let diff = q(1, 3) - a;
        assert_eq!(v5.additive(&diff), Some(2));

        let c20 = ctx(5, 20);
        assert_eq!(
            c20.from_int(7).approximate(10).unwrap(),
            BigRational::from_integer(7.into())
        );
        assert_eq!(c20.from_rat(&q(1, 5)).approximate(1).unwrap(), q(1, 5));
        assert_eq!(c.zero_approx(1).approximate(2), Err(Error::InsufficientPrecision));
    }

    #[test]
    fn residues() {
        let c = ctx(5, 4);
        assert_eq!(c.from_rat(&q(1, 3)).residue().unwrap(), 2);
        assert_eq!(c.from_int(10).residue().unwrap(), 0);
        assert_eq!(c.from_rat(&q(1, 5)).residue(), Err(Error::NotIntegral));
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = ctx(5, 4).from_int(1);
        let b = ctx(7, 4).from_int(1);
        assert_eq!(a.add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn display_expansion() {
        let c = ctx(5, 6);
        let one = c.from_rat(&q(1, 3)).add(&c.from_rat(&q(2, 3))).unwrap();
        assert_eq!(one.to_string(), "1 + O(5^6)");
        let c4 = ctx(5, 4);
        assert_eq!(c4.from_rat(&q(1, 3)).to_string(), "2 + 3*5 + 5^2 + 3*5^3 + O(5^4)");
        assert_eq!(c4.zero_approx(3).to_string(), "O(5^3)");
        assert_eq!(c4.zero().to_string(), "0");
        assert_eq!(c4.from_rat(&q(1, 5)).to_string(), "5^-1 + O(5^3)");
    }
}
