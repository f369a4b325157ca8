//! Rational functions K(X) over an exact coefficient field, kept in
//! canonical form: monic denominator, numerator and denominator coprime,
//! zero represented as 0/1.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Builds num/den and canonicalizes. Errors when den is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::one(field) });
        }
        let g = num.gcd(&den);
        let (num, _) = num.divmod(&g)?;
        let (den, _) = den.divmod(&g)?;
        let lead_inv = field.inv(den.leading().expect("den nonzero"))?;
        Ok(RatFunc { num: num.scale(&lead_inv), den: den.make_monic() })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let field = p.field().clone();
        RatFunc { num: p, den: Poly::one(field) }
    }

    pub fn zero(field: F) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: F) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn x(field: F) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominator product is nonzero")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominator product is nonzero")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(Self::from_poly_pair(self.num.pow(e as u64), self.den.pow(e as u64)))
        } else {
            let inv = self.inv()?;
            Ok(Self::from_poly_pair(inv.num.pow((-e) as u64), inv.den.pow((-e) as u64)))
        }
    }

    fn from_poly_pair(num: Poly<F>, den: Poly<F>) -> Self {
        // num/den already coprime and den monic: powers preserve both.
        if num.is_zero() {
            let field = num.field().clone();
            return RatFunc { num, den: Poly::one(field) };
        }
        RatFunc { num, den }
    }

    /// Renders `num/den`, parenthesizing multi-term sides: `X^2/(X+1)`.
    pub fn format(&self, var: &str) -> String {
        let n = self.num.format(var);
        if self.den.is_monic() && self.den.degree() == Some(0) {
            return n;
        }
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        let d = self.den.format(var);
        let d = if self.den.term_count() > 1 { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

/// The field K(X) itself as a coefficient field, so polynomials in a second
/// variable can take rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncField<F: Field> {
    coef: F,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(coef: F) -> Self {
        RatFuncField { coef }
    }

    pub fn coef_field(&self) -> &F {
        &self.coef
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type Elem = RatFunc<F>;

    fn zero(&self) -> RatFunc<F> {
        RatFunc::zero(self.coef.clone())
    }

    fn one(&self) -> RatFunc<F> {
        RatFunc::one(self.coef.clone())
    }

    fn is_zero(&self, a: &RatFunc<F>) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.add(b)
    }

    fn neg(&self, a: &RatFunc<F>) -> RatFunc<F> {
        a.neg()
    }

    fn mul(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.mul(b)
    }

    fn inv(&self, a: &RatFunc<F>) -> Result<RatFunc<F>> {
        a.inv()
    }

    fn from_bigint(&self, n: &num_bigint::BigInt) -> RatFunc<F> {
        RatFunc::constant(self.coef.clone(), self.coef.from_bigint(n))
    }

    fn format(&self, a: &RatFunc<F>) -> String {
        a.format("X")
    }
}
