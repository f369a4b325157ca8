//! Typed evaluators for the shared expression grammar: each subcommand
//! interprets the same syntax tree in its own carrier (exact rationals,
//! rational functions, modulus polynomials, p-adic numbers, or extension
//! elements).

use std::fmt;

use adic_core::extension::{CompleteBase, ExtElem, ExtField};
use adic_core::{Error, Field, PAdicCtx, PAdicNum, Poly, RatFunc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::expr::{Expr, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    Core(Error),
    Unbound(Var),
    PolyDivision,
    PolyNegativePower,
    HugeExponent,
}

impl From<Error> for EvalError {
    fn from(e: Error) -> Self {
        EvalError::Core(e)
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Core(e) => write!(f, "{e}"),
            EvalError::Unbound(v) => {
                write!(f, "the variable {} is not available in this context", v.name())
            }
            EvalError::PolyDivision => write!(f, "cannot divide by a polynomial in x"),
            EvalError::PolyNegativePower => {
                write!(f, "cannot raise a polynomial in x to a negative power")
            }
            EvalError::HugeExponent => write!(f, "exponent out of range"),
        }
    }
}

pub fn eval_rational(e: &Expr) -> Result<BigRational, EvalError> {
    match e {
        Expr::Int(n) => Ok(BigRational::from_integer(n.clone())),
        Expr::Var(v) => Err(EvalError::Unbound(*v)),
        Expr::Neg(a) => Ok(-eval_rational(a)?),
        Expr::Add(a, b) => Ok(eval_rational(a)? + eval_rational(b)?),
        Expr::Sub(a, b) => Ok(eval_rational(a)? - eval_rational(b)?),
        Expr::Mul(a, b) => Ok(eval_rational(a)? * eval_rational(b)?),
        Expr::Div(a, b) => {
            let d = eval_rational(b)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero.into());
            }
            Ok(eval_rational(a)? / d)
        }
        Expr::Pow(a, k) => {
            let base = eval_rational(a)?;
            if base.is_zero() && *k < 0 {
                return Err(Error::DivisionByZero.into());
            }
            let k = i32::try_from(*k).map_err(|_| EvalError::HugeExponent)?;
            Ok(base.pow(k))
        }
    }
}

pub fn eval_ratfunc<F: Field>(e: &Expr, field: &F) -> Result<RatFunc<F>, EvalError> {
    match e {
        Expr::Int(n) => Ok(RatFunc::constant(field.clone(), field.from_bigint(n))),
        Expr::Var(Var::SeriesX) => Ok(RatFunc::x(field.clone())),
        Expr::Var(v) => Err(EvalError::Unbound(*v)),
        Expr::Neg(a) => Ok(eval_ratfunc(a, field)?.neg()),
        Expr::Add(a, b) => Ok(eval_ratfunc(a, field)?.add(&eval_ratfunc(b, field)?)),
        Expr::Sub(a, b) => Ok(eval_ratfunc(a, field)?.sub(&eval_ratfunc(b, field)?)),
        Expr::Mul(a, b) => Ok(eval_ratfunc(a, field)?.mul(&eval_ratfunc(b, field)?)),
        Expr::Div(a, b) => Ok(eval_ratfunc(a, field)?.div(&eval_ratfunc(b, field)?)?),
        Expr::Pow(a, k) => Ok(eval_ratfunc(a, field)?.pow(*k)?),
    }
}

/// Evaluates a modulus expression to a polynomial in x over the scalar
/// field; X (when allowed) is interpreted through `series_x`. Division is
/// restricted to scalars.
pub fn eval_poly<S: Field>(
    e: &Expr,
    scalar: &S,
    series_x: Option<&S::Elem>,
) -> Result<Poly<S>, EvalError> {
    match e {
        Expr::Int(n) => Ok(Poly::constant(scalar.clone(), scalar.from_bigint(n))),
        Expr::Var(Var::ModX) => Ok(Poly::x(scalar.clone())),
        Expr::Var(Var::SeriesX) => match series_x {
            Some(x) => Ok(Poly::constant(scalar.clone(), x.clone())),
            None => Err(EvalError::Unbound(Var::SeriesX)),
        },
        Expr::Var(v) => Err(EvalError::Unbound(*v)),
        Expr::Neg(a) => Ok(eval_poly(a, scalar, series_x)?.neg()),
        Expr::Add(a, b) => {
            Ok(eval_poly(a, scalar, series_x)?.add(&eval_poly(b, scalar, series_x)?))
        }
        Expr::Sub(a, b) => {
            Ok(eval_poly(a, scalar, series_x)?.sub(&eval_poly(b, scalar, series_x)?))
        }
        Expr::Mul(a, b) => {
            Ok(eval_poly(a, scalar, series_x)?.mul(&eval_poly(b, scalar, series_x)?))
        }
        Expr::Div(a, b) => {
            let den = eval_poly(b, scalar, series_x)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero.into());
            }
            if den.degree() != Some(0) {
                return Err(EvalError::PolyDivision);
            }
            let inv = scalar.inv(&den.coeff(0))?;
            Ok(eval_poly(a, scalar, series_x)?.scale(&inv))
        }
        Expr::Pow(a, k) => {
            let base = eval_poly(a, scalar, series_x)?;
            if *k >= 0 {
                return Ok(base.pow(*k as u64));
            }
            if base.is_zero() {
                return Err(Error::DivisionByZero.into());
            }
            if base.degree() != Some(0) {
                return Err(EvalError::PolyNegativePower);
            }
            let inv = scalar.inv(&base.coeff(0))?;
            let mut acc = scalar.one();
            for _ in 0..k.unsigned_abs() {
                acc = scalar.mul(&acc, &inv);
            }
            Ok(Poly::constant(scalar.clone(), acc))
        }
    }
}

pub fn eval_padic(e: &Expr, ctx: &PAdicCtx) -> Result<PAdicNum, EvalError> {
    match e {
        Expr::Int(n) => Ok(ctx.from_rat(&BigRational::from_integer(n.clone()))),
        Expr::Var(v) => Err(EvalError::Unbound(*v)),
        Expr::Neg(a) => Ok(eval_padic(a, ctx)?.neg()),
        Expr::Add(a, b) => Ok(eval_padic(a, ctx)?.add(&eval_padic(b, ctx)?)?),
        Expr::Sub(a, b) => Ok(eval_padic(a, ctx)?.sub(&eval_padic(b, ctx)?)?),
        Expr::Mul(a, b) => Ok(eval_padic(a, ctx)?.mul(&eval_padic(b, ctx)?)?),
        Expr::Div(a, b) => Ok(eval_padic(a, ctx)?.div(&eval_padic(b, ctx)?)?),
        Expr::Pow(a, k) => {
            let base = eval_padic(a, ctx)?;
            let base = if *k < 0 { base.inv()? } else { base };
            let mut acc = ctx.from_rat(&BigRational::from_integer(BigInt::from(1)));
            let mut b = base;
            let mut e = k.unsigned_abs();
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&b)?;
                }
                e >>= 1;
                if e > 0 {
                    b = b.mul(&b)?;
                }
            }
            Ok(acc)
        }
    }
}

pub fn eval_ext<B: CompleteBase>(
    e: &Expr,
    ext: &ExtField<B>,
    series_x: Option<&ExtElem<B>>,
) -> Result<ExtElem<B>, EvalError> {
    match e {
        Expr::Int(n) => Ok(ext.embed_rat(&BigRational::from_integer(n.clone()))?),
        Expr::Var(Var::Gen) => Ok(ext.gen()),
        Expr::Var(Var::SeriesX) => match series_x {
            Some(x) => Ok(x.clone()),
            None => Err(EvalError::Unbound(Var::SeriesX)),
        },
        Expr::Var(v) => Err(EvalError::Unbound(*v)),
        Expr::Neg(a) => Ok(ext.neg(&eval_ext(a, ext, series_x)?)),
        Expr::Add(a, b) => {
            Ok(ext.add(&eval_ext(a, ext, series_x)?, &eval_ext(b, ext, series_x)?)?)
        }
        Expr::Sub(a, b) => {
            Ok(ext.sub(&eval_ext(a, ext, series_x)?, &eval_ext(b, ext, series_x)?)?)
        }
        Expr::Mul(a, b) => {
            Ok(ext.mul(&eval_ext(a, ext, series_x)?, &eval_ext(b, ext, series_x)?)?)
        }
        Expr::Div(a, b) => {
            Ok(ext.div(&eval_ext(a, ext, series_x)?, &eval_ext(b, ext, series_x)?)?)
        }
        Expr::Pow(a, k) => Ok(ext.pow(&eval_ext(a, ext, series_x)?, *k)?),
    }
}
