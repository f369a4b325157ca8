//! Truncated Laurent series over an exact coefficient field: the concrete
//! model of the completion of K(X) at the ideal (X).
//!
//! A series is either known through a finite coefficient window starting at
//! its exact order, or known only to vanish below some exponent (with exact
//! zero carrying an infinite-precision sentinel). Expanding a rational
//! function is the computable direction of the isomorphism with the
//! completion; truncating back to a rational function realizes density.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::padic::ValBound;
use crate::poly::{format_term, join_signed_terms, Poly};
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq)]
enum SRepr<E> {
    /// All coefficients below the exponent `prec` vanish; `None` is exact zero.
    Zero { prec: Option<i64> },
    /// Agrees with sum coeffs[i] * X^(order + i); coeffs[0] != 0.
    Known { order: i64, coeffs: Vec<E> },
}

/// A Laurent series known through finitely many coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<F: Field> {
    field: F,
    repr: SRepr<F::Elem>,
}

impl<F: Field> LaurentSeries<F> {
    pub fn exact_zero(field: F) -> Self {
        LaurentSeries { field, repr: SRepr::Zero { prec: None } }
    }

    pub fn zero_approx(field: F, prec: i64) -> Self {
        LaurentSeries { field, repr: SRepr::Zero { prec: Some(prec) } }
    }

    /// Builds a series from a raw window, stripping leading zeros while
    /// preserving the absolute precision `order + coeffs.len()`.
    pub fn from_window(field: F, order: i64, coeffs: Vec<F::Elem>) -> Self {
        let abs = order + coeffs.len() as i64;
        match coeffs.iter().position(|c| !field.is_zero(c)) {
            None => LaurentSeries { field, repr: SRepr::Zero { prec: Some(abs) } },
            Some(j) => LaurentSeries {
                field,
                repr: SRepr::Known { order: order + j as i64, coeffs: coeffs[j..].to_vec() },
            },
        }
    }

    /// Laurent expansion of a rational function at 0, correct through
    /// exponent abs_prec - 1 (and always including the leading coefficient).
    pub fn from_ratfunc(rf: &RatFunc<F>, abs_prec: i64) -> Self {
        let field = rf.field().clone();
        if rf.is_zero() {
            return Self::exact_zero(field);
        }
        let a = rf.num().order_at_zero().expect("nonzero numerator");
        let b = rf.den().order_at_zero().expect("nonzero denominator");
        let order = a as i64 - b as i64;
        let n0 = rf.num().shift_down(a);
        let d0 = rf.den().shift_down(b);
        let window = (abs_prec - order).max(1) as usize;
        let d0_inv = field.inv(&d0.coeff(0)).expect("unit constant term");
        let mut coeffs = Vec::with_capacity(window);
        for k in 0..window {
            let mut acc = n0.coeff(k);
            for j in 1..=k {
                let dj = d0.coeff(j);
                if field.is_zero(&dj) {
                    continue;
                }
                acc = field.sub(&acc, &field.mul(&dj, &coeffs[k - j]));
            }
            coeffs.push(field.mul(&acc, &d0_inv));
        }
        debug_assert!(!field.is_zero(&coeffs[0]));
        LaurentSeries { field, repr: SRepr::Known { order, coeffs } }
    }

    /// The series X, known through abs_prec.
    pub fn x(field: F, abs_prec: i64) -> Self {
        Self::from_ratfunc(&RatFunc::x(field), abs_prec)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, SRepr::Zero { prec: None })
    }

    /// Exact order when the leading coefficient is known.
    pub fn order(&self) -> Option<i64> {
        match &self.repr {
            SRepr::Known { order, .. } => Some(*order),
            SRepr::Zero { .. } => None,
        }
    }

    /// Absolute precision: coefficients are known below this exponent.
    /// None means every coefficient is known (exact zero).
    pub fn abs_prec(&self) -> Option<i64> {
        match &self.repr {
            SRepr::Zero { prec } => *prec,
            SRepr::Known { order, coeffs } => Some(order + coeffs.len() as i64),
        }
    }

    pub fn valuation(&self) -> ValBound {
        match &self.repr {
            SRepr::Zero { prec: None } => ValBound::ExactlyInfinite,
            SRepr::Zero { prec: Some(k) } => ValBound::AtLeast(*k),
            SRepr::Known { order, .. } => ValBound::Exact(*order),
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn coeff_in_window(&self, n: i64) -> F::Elem {
        match &self.repr {
            SRepr::Zero { .. } => self.field.zero(),
            SRepr::Known { order, coeffs } => {
                if n < *order {
                    self.field.zero()
                } else {
                    coeffs
                        .get((n - order) as usize)
                        .cloned()
                        .unwrap_or_else(|| self.field.zero())
                }
            }
        }
    }

    /// The coefficient of X^n, for n within the known precision.
    pub fn coeff(&self, n: i64) -> Result<F::Elem> {
        match self.abs_prec() {
            None => Ok(self.field.zero()),
            Some(a) if n < a => Ok(self.coeff_in_window(n)),
            Some(_) => Err(Error::InsufficientPrecision),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let out = match (&self.repr, &other.repr) {
            (SRepr::Zero { prec: None }, _) => other.clone(),
            (_, SRepr::Zero { prec: None }) => self.clone(),
            (SRepr::Zero { prec: Some(k1) }, SRepr::Zero { prec: Some(k2) }) => {
                Self::zero_approx(self.field.clone(), *k1.min(k2))
            }
            _ => {
                let abs = match (self.abs_prec(), other.abs_prec()) {
                    (Some(a), Some(b)) => a.min(b),
                    _ => unreachable!("exact zeros handled above"),
                };
                let lo = [self.order(), other.order()]
                    .into_iter()
                    .flatten()
                    .min()
                    .expect("at least one known series")
                    .min(abs);
                let coeffs = (lo..abs)
                    .map(|n| {
                        self.field
                            .add(&self.coeff_in_window(n), &other.coeff_in_window(n))
                    })
                    .collect();
                Self::from_window(self.field.clone(), lo, coeffs)
            }
        };
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            SRepr::Zero { .. } => self.clone(),
            SRepr::Known { order, coeffs } => LaurentSeries {
                field: self.field.clone(),
                repr: SRepr::Known {
                    order: *order,
                    coeffs: coeffs.iter().map(|c| self.field.neg(c)).collect(),
                },
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let out = match (&self.repr, &other.repr) {
            (SRepr::Zero { prec: None }, _) | (_, SRepr::Zero { prec: None }) => {
                Self::exact_zero(f.clone())
            }
            (SRepr::Zero { prec: Some(k1) }, SRepr::Zero { prec: Some(k2) }) => {
                Self::zero_approx(f.clone(), k1 + k2)
            }
            (SRepr::Zero { prec: Some(k) }, SRepr::Known { order, .. })
            | (SRepr::Known { order, .. }, SRepr::Zero { prec: Some(k) }) => {
                Self::zero_approx(f.clone(), k + order)
            }
            (
                SRepr::Known { order: d1, coeffs: a },
                SRepr::Known { order: d2, coeffs: b },
            ) => {
                let window = a.len().min(b.len());
                let mut coeffs = vec![f.zero(); window];
                for (i, ai) in a.iter().enumerate().take(window) {
                    if f.is_zero(ai) {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate().take(window - i) {
                        coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(ai, bj));
                    }
                }
                debug_assert!(!f.is_zero(&coeffs[0]));
                LaurentSeries {
                    field: f.clone(),
                    repr: SRepr::Known { order: d1 + d2, coeffs },
                }
            }
        };
        Ok(out)
    }

    /// Inverts the unit window by the convolution recurrence; requires an
    /// exactly known order.
    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            SRepr::Zero { prec: None } => Err(Error::DivisionByZero),
            SRepr::Zero { prec: Some(_) } => Err(Error::ZeroIndistinguishable),
            SRepr::Known { order, coeffs } => {
                let f = &self.field;
                let lead_inv = f.inv(&coeffs[0])?;
                let mut inv = Vec::with_capacity(coeffs.len());
                inv.push(lead_inv.clone());
                for k in 1..coeffs.len() {
                    let mut acc = f.zero();
                    for i in 1..=k {
                        let ai = &coeffs[i];
                        if f.is_zero(ai) {
                            continue;
                        }
                        acc = f.add(&acc, &f.mul(ai, &inv[k - i]));
                    }
                    inv.push(f.neg(&f.mul(&lead_inv, &acc)));
                }
                Ok(LaurentSeries {
                    field: f.clone(),
                    repr: SRepr::Known { order: -order, coeffs: inv },
                })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// The Laurent polynomial truncation below exponent N, as a rational
    /// function; the residual has valuation at least N.
    pub fn approximate_by_ratfunc(&self, n: i64) -> Result<RatFunc<F>> {
        let f = self.field.clone();
        match &self.repr {
            SRepr::Zero { prec: None } => Ok(RatFunc::zero(f)),
            SRepr::Zero { prec: Some(k) } => {
                if *k >= n {
                    Ok(RatFunc::zero(f))
                } else {
                    Err(Error::InsufficientPrecision)
                }
            }
            SRepr::Known { order, coeffs } => {
                if order + (coeffs.len() as i64) < n {
                    return Err(Error::InsufficientPrecision);
                }
                if n <= *order {
                    return Ok(RatFunc::zero(f));
                }
                let window = (n - order) as usize;
                let kept: Vec<F::Elem> = coeffs.iter().take(window).cloned().collect();
                let num = Poly::new(f.clone(), kept);
                if *order >= 0 {
                    let num = num.mul(&Poly::monomial(f.clone(), *order as usize));
                    Ok(RatFunc::from_poly(num))
                } else {
                    let den = Poly::monomial(f.clone(), (-order) as usize);
                    RatFunc::new(num, den)
                }
            }
        }
    }

    /// Unit-ball membership: true when the series has no negative-exponent
    /// coefficients. Undecidable when the precision window starts below 0.
    pub fn is_power_series(&self) -> Result<bool> {
        match &self.repr {
            SRepr::Zero { prec: None } => Ok(true),
            SRepr::Zero { prec: Some(k) } => {
                if *k >= 0 {
                    Ok(true)
                } else {
                    Err(Error::UndecidableAtPrecision)
                }
            }
            SRepr::Known { order, .. } => Ok(*order >= 0),
        }
    }

    /// Compares the coefficients both sides can see, i.e. below the common
    /// absolute precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        let abs = match (self.abs_prec(), other.abs_prec()) {
            (None, None) => return self.is_exact_zero() == other.is_exact_zero(),
            (None, Some(a)) | (Some(a), None) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let lo = [self.order(), other.order()]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or(abs)
            .min(abs);
        (lo..abs).all(|n| self.coeff_in_window(n) == other.coeff_in_window(n))
    }
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    /// Ascending powers with zero coefficients skipped:
    /// `X^-1 + 1 + X + O(X^5)`; approximate zero prints `O(X^k)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            SRepr::Zero { prec: None } => write!(f, "0"),
            SRepr::Zero { prec: Some(k) } => write!(f, "O(X^{k})"),
            SRepr::Known { order, coeffs } => {
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !self.field.is_zero(c))
                    .map(|(i, c)| format_term(&self.field, c, order + i as i64, "X"))
                    .collect();
                let abs = order + coeffs.len() as i64;
                write!(f, "{} + O(X^{})", join_signed_terms(&terms), abs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn rq(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rf_q(num: &[i64], den: &[i64]) -> RatFunc<Rationals> {
        RatFunc::new(
            Poly::new(Rationals, num.iter().map(|&c| rq(c)).collect()),
            Poly::new(Rationals, den.iter().map(|&c| rq(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn geometric_series_over_f2() {
        // 1/(1+X) = 1 + X + X^2 + ... in characteristic 2
        let f2 = PrimeField::new(2).unwrap();
        let rf = RatFunc::new(Poly::one(f2), Poly::new(f2, vec![1, 1])).unwrap();
        let s = LaurentSeries::from_ratfunc(&rf, 8);
        for n in 0..8 {
            assert_eq!(s.coeff(n).unwrap(), 1);
        }
        assert_eq!(s.coeff(7).unwrap(), 1);
        assert_eq!(s.coeff(8), Err(Error::InsufficientPrecision));
    }

    #[test]
    fn split_fraction() {
        // (X+1)/X = X^-1 + 1
        let s = LaurentSeries::from_ratfunc(&rf_q(&[1, 1], &[0, 1]), 6);
        assert_eq!(s.order(), Some(-1));
        assert_eq!(s.coeff(-1).unwrap(), rq(1));
        assert_eq!(s.coeff(0).unwrap(), rq(1));
        assert_eq!(s.coeff(3).unwrap(), rq(0));
    }

    #[test]
    fn geometric_series_over_q() {
        let s = LaurentSeries::from_ratfunc(&rf_q(&[1], &[1, -1]), 10);
        for n in 0..10 {
            assert_eq!(s.coeff(n).unwrap(), rq(1));
        }
    }

    #[test]
    fn telescoping_product() {
        // (1-X) * (1 + X + X^2 + ...) = 1 + O(X^r)
        let geo = LaurentSeries::from_ratfunc(&rf_q(&[1], &[1, -1]), 10);
        let lin = LaurentSeries::from_ratfunc(&rf_q(&[1, -1], &[1]), 10);
        let prod = lin.mul(&geo).unwrap();
        assert_eq!(prod.coeff(0).unwrap(), rq(1));
        for n in 1..10 {
            assert_eq!(prod.coeff(n).unwrap(), rq(0));
        }
    }

    #[test]
    fn alternating_inverse() {
        // inv(X^2 * (1+X)) = X^-2 - X^-1 + 1 - X + ...
        let s = LaurentSeries::from_ratfunc(&rf_q(&[0, 0, 1, 1], &[1]), 8);
        let inv = s.inv().unwrap();
        assert_eq!(inv.order(), Some(-2));
        assert_eq!(inv.coeff(-2).unwrap(), rq(1));
        assert_eq!(inv.coeff(-1).unwrap(), rq(-1));
        assert_eq!(inv.coeff(0).unwrap(), rq(1));
        assert_eq!(inv.coeff(1).unwrap(), rq(-1));
        assert_eq!(
            inv.to_string(),
            "X^-2 - X^-1 + 1 - X + X^2 - X^3 + O(X^4)"
        );
    }

    #[test]
    fn cancellation_gives_zero_approx() {
        let geo = LaurentSeries::from_ratfunc(&rf_q(&[1], &[1, -1]), 10);
        let diff = geo.sub(&geo).unwrap();
        assert_eq!(diff.valuation(), ValBound::AtLeast(10));
        assert_eq!(diff.to_string(), "O(X^10)");
    }

    #[test]
    fn valuations() {
        let s = LaurentSeries::from_ratfunc(&rf_q(&[0, 0, 0, 1, 0, 1], &[1]), 12);
        assert_eq!(s.valuation(), ValBound::Exact(3));
        let t = LaurentSeries::from_ratfunc(&rf_q(&[1], &[0, 0, 1]), 12);
        assert_eq!(t.valuation(), ValBound::Exact(-2));
        assert_eq!(
            LaurentSeries::exact_zero(Rationals).valuation(),
            ValBound::ExactlyInfinite
        );
    }

    #[test]
    fn density_round_trip() {
        // all-ones series starting at X^-1, truncated below 3
        let s = LaurentSeries::from_ratfunc(&rf_q(&[1], &[0, -1, 1]), 10);
        assert_eq!(s.order(), Some(-1));
        let g = s.approximate_by_ratfunc(3).unwrap();
        let back = LaurentSeries::from_ratfunc(&g, 10);
        let resid = s.sub(&back).unwrap();
        assert!(resid.valuation().at_least(3));

        let x3 = LaurentSeries::from_ratfunc(&rf_q(&[0, 0, 0, 1], &[1]), 12);
        assert_eq!(
            x3.approximate_by_ratfunc(10).unwrap(),
            rf_q(&[0, 0, 0, 1], &[1])
        );

        let geo = LaurentSeries::from_ratfunc(&rf_q(&[1], &[1, -1]), 10);
        let tr = geo.approximate_by_ratfunc(2).unwrap();
        assert_eq!(tr, rf_q(&[1, 1], &[1]));
        let resid = geo.sub(&LaurentSeries::from_ratfunc(&tr, 10)).unwrap();
        assert!(resid.valuation().at_least(2));
    }

    #[test]
    fn power_series_detection() {
        let one_x = LaurentSeries::from_ratfunc(&rf_q(&[1, 1], &[1]), 6);
        assert_eq!(one_x.is_power_series(), Ok(true));
        let xinv = LaurentSeries::from_ratfunc(&rf_q(&[1], &[0, 1]), 6);
        assert_eq!(xinv.is_power_series(), Ok(false));
        let r = LaurentSeries::from_ratfunc(&rf_q(&[0, 0, 1], &[1, 1]), 6);
        assert_eq!(r.is_power_series(), Ok(true));
        let und = LaurentSeries::zero_approx(Rationals, -1);
        assert_eq!(und.is_power_series(), Err(Error::UndecidableAtPrecision));
    }

    #[test]
    fn display_golden() {
        let f2 = PrimeField::new(2).unwrap();
        let rf = RatFunc::new(Poly::one(f2), Poly::new(f2, vec![1, 1])).unwrap();
        let s = LaurentSeries::from_ratfunc(&rf, 8);
        assert_eq!(
            s.to_string(),
            "1 + X + X^2 + X^3 + X^4 + X^5 + X^6 + X^7 + O(X^8)"
        );
    }
}
