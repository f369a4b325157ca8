//! Finite extensions L = K[x]/(f) of a complete discretely valued base
//! field (the p-adic numbers or Laurent series over F_p).
//!
//! Elements are coordinate vectors in the power basis 1, a, ..., a^(n-1).
//! The extended valuation is computed through norms: w(x) is the additive
//! valuation of the determinant of the multiplication-by-x matrix divided
//! by the degree. The determinant equals the constant coefficient of the
//! characteristic polynomial up to sign, which is a power of the minimal
//! polynomial, so this agrees with the minimal-polynomial formula.
//!
//! Ramification data is certificate-driven: an Eisenstein modulus gives a
//! totally ramified extension (e = n) and a residually irreducible modulus
//! an unramified one (e = 1). Without a certificate, element arithmetic
//! still works but normalized valuations are refused.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::finite_field::{is_irreducible, FFElem, FpPoly, Fq};
use crate::laurent::LaurentSeries;
use crate::padic::{PAdicCtx, PAdicNum, ValBound};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::value_group::NormBase;

/// A complete discretely valued field usable as the base of a finite
/// extension. Implemented by the p-adic context and the Laurent context
/// over a prime field; both have residue field F_p.
pub trait CompleteBase: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn residue_char(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Embedding of a rational number, at the working precision. In
    /// characteristic p this is reduction of a p-integral rational.
    #[allow(clippy::wrong_self_convention)]
    fn from_rat(&self, q: &BigRational) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn valuation(&self, a: &Self::Elem) -> ValBound;
    fn residue(&self, a: &Self::Elem) -> Result<u64>;
    fn uniformizer(&self) -> Self::Elem;
    fn uniformizer_name(&self) -> String;
    fn is_exact_zero(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.neg(b))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rat(&BigRational::from_integer(n.into()))
            .expect("integers embed into every base")
    }

    /// True when the element has no exactly-known nonzero digit, i.e. its
    /// valuation is only bounded from below.
    fn is_zero_ish(&self, a: &Self::Elem) -> bool {
        !matches!(self.valuation(a), ValBound::Exact(_))
    }
}

impl CompleteBase for PAdicCtx {
    type Elem = PAdicNum;

    fn residue_char(&self) -> u64 {
        self.p()
    }

    fn zero(&self) -> PAdicNum {
        PAdicCtx::zero(self)
    }

    fn one(&self) -> PAdicNum {
        self.from_int(1)
    }

    fn from_rat(&self, q: &BigRational) -> Result<PAdicNum> {
        Ok(PAdicCtx::from_rat(self, q))
    }

    fn add(&self, a: &PAdicNum, b: &PAdicNum) -> Result<PAdicNum> {
        a.add(b)
    }

    fn neg(&self, a: &PAdicNum) -> PAdicNum {
        a.neg()
    }

    fn mul(&self, a: &PAdicNum, b: &PAdicNum) -> Result<PAdicNum> {
        a.mul(b)
    }

    fn inv(&self, a: &PAdicNum) -> Result<PAdicNum> {
        a.inv()
    }

    fn valuation(&self, a: &PAdicNum) -> ValBound {
        a.valuation()
    }

    fn residue(&self, a: &PAdicNum) -> Result<u64> {
        a.residue()
    }

    fn uniformizer(&self) -> PAdicNum {
        self.from_int(self.p() as i64)
    }

    fn uniformizer_name(&self) -> String {
        self.p().to_string()
    }

    fn is_exact_zero(&self, a: &PAdicNum) -> bool {
        a.is_exact_zero()
    }

    fn format(&self, a: &PAdicNum) -> String {
        a.to_string()
    }
}

/// Working context for F_p((X)): the coefficient field and the absolute
/// precision used when embedding exact data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentCtx {
    field: PrimeField,
    prec: i64,
}

impl LaurentCtx {
    pub fn new(p: u64, prec: i64) -> Result<Self> {
        if prec < 1 {
            return Err(Error::InsufficientPrecision);
        }
        Ok(LaurentCtx { field: PrimeField::new(p)?, prec })
    }

    pub fn coef_field(&self) -> PrimeField {
        self.field
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Laurent expansion of a rational function at the working precision.
    pub fn expand(&self, rf: &RatFunc<PrimeField>) -> LaurentSeries<PrimeField> {
        LaurentSeries::from_ratfunc(rf, self.prec)
    }

    fn constant(&self, c: u64) -> LaurentSeries<PrimeField> {
        if c == 0 {
            return LaurentSeries::exact_zero(self.field);
        }
        let mut window = vec![0u64; self.prec as usize];
        window[0] = c;
        LaurentSeries::from_window(self.field, 0, window)
    }
}

impl CompleteBase for LaurentCtx {
    type Elem = LaurentSeries<PrimeField>;

    fn residue_char(&self) -> u64 {
        self.field.p()
    }

    fn zero(&self) -> Self::Elem {
        LaurentSeries::exact_zero(self.field)
    }

    fn one(&self) -> Self::Elem {
        self.constant(1)
    }

    /// Reduction of a p-integral rational through F_p; the reduction is
    /// exact, so multiples of p embed as exact zero.
    fn from_rat(&self, q: &BigRational) -> Result<Self::Elem> {
        let den = self.field.from_bigint(q.denom());
        if den == 0 {
            return Err(Error::NotIntegral);
        }
        let num = self.field.from_bigint(q.numer());
        let c = self.field.div(&num, &den)?;
        Ok(self.constant(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.add(b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.mul(b)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        a.inv()
    }

    fn valuation(&self, a: &Self::Elem) -> ValBound {
        a.valuation()
    }

    fn residue(&self, a: &Self::Elem) -> Result<u64> {
        match a.valuation() {
            ValBound::ExactlyInfinite => Ok(0),
            ValBound::AtLeast(k) if k >= 1 => Ok(0),
            ValBound::AtLeast(_) => Err(Error::UndecidableAtPrecision),
            ValBound::Exact(d) if d < 0 => Err(Error::NotIntegral),
            ValBound::Exact(d) if d > 0 => Ok(0),
            ValBound::Exact(_) => a.coeff(0),
        }
    }

    fn uniformizer(&self) -> Self::Elem {
        LaurentSeries::x(self.field, self.prec)
    }

    fn uniformizer_name(&self) -> String {
        "X".to_string()
    }

    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        a.is_exact_zero()
    }

    fn format(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}

/// Ramification certificate of an extension modulus.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// All lower coefficients have positive valuation and the constant
    /// coefficient has valuation exactly 1: totally ramified, e = n.
    Eisenstein,
    /// Integral coefficients reducing to an irreducible polynomial over
    /// the residue field: e = 1, and the reduction is the residue field
    /// modulus.
    Unramified { residual: FpPoly },
    /// Neither machine-checked condition holds; arithmetic is available
    /// but ramification data is refused.
    Uncertified,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::Eisenstein => "eisenstein",
            Certificate::Unramified { .. } => "unramified",
            Certificate::Uncertified => "none",
        }
    }
}

/// Extended valuation value: a rational with denominator dividing the
/// degree, or infinity for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QVal {
    Infinity,
    Fin(BigRational),
}

impl QVal {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            QVal::Infinity => None,
            QVal::Fin(q) => Some(q),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            QVal::Infinity => true,
            QVal::Fin(q) => !q.is_negative(),
        }
    }
}

impl fmt::Display for QVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QVal::Infinity => write!(f, "infinity"),
            QVal::Fin(q) => write!(f, "{q}"),
        }
    }
}

/// The spectral norm value base^exp, with exp a rational exponent; the
/// zero element has norm 0.
#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    base: NormBase,
    exp: Option<BigRational>,
}

impl NormValue {
    pub fn zero(base: NormBase) -> Self {
        NormValue { base, exp: None }
    }

    pub fn new(base: NormBase, exp: BigRational) -> Self {
        NormValue { base, exp: Some(exp) }
    }

    pub fn exponent(&self) -> Option<&BigRational> {
        self.exp.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.exp.is_none()
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exp {
            None => write!(f, "0"),
            Some(e) if e.is_zero() => write!(f, "1"),
            Some(e) if e.is_integer() => write!(f, "{}^{}", self.base, e),
            Some(e) => write!(f, "{}^({})", self.base, e),
        }
    }
}

/// The record backing the local-field claim: a certified extension is
/// complete, discretely valued and has finite residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldData {
    pub discrete: bool,
    pub complete: bool,
    pub residue_field_order: u128,
    pub e: u64,
    pub f: u64,
    pub n: u64,
}

/// Degrees above this need a smarter determinant than cofactor expansion.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Coefficient vector of a polynomial over the base field.
type Coeffs<B> = Vec<<B as CompleteBase>::Elem>;

/// An element of the extension, as coordinates in the power basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem<B: CompleteBase> {
    coords: Vec<B::Elem>,
}

impl<B: CompleteBase> ExtElem<B> {
    pub fn coords(&self) -> &[B::Elem] {
        &self.coords
    }
}

/// A finite extension K[x]/(f) with f monic, stored through its lower
/// coefficients a_0..a_(n-1).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField<B: CompleteBase> {
    base: B,
    low: Vec<B::Elem>,
    n: usize,
    cert: Certificate,
}

enum Check {
    Yes,
    No,
    Unknown,
}

fn val_at_least(v: &ValBound, bound: i64) -> Check {
    match v {
        ValBound::Exact(a) => {
            if *a >= bound {
                Check::Yes
            } else {
                Check::No
            }
        }
        ValBound::AtLeast(k) => {
            if *k >= bound {
                Check::Yes
            } else {
                Check::Unknown
            }
        }
        ValBound::ExactlyInfinite => Check::Yes,
    }
}

fn val_exactly_one(v: &ValBound) -> Check {
    match v {
        ValBound::Exact(1) => Check::Yes,
        ValBound::Exact(_) => Check::No,
        ValBound::ExactlyInfinite => Check::No,
        ValBound::AtLeast(k) => {
            if *k >= 2 {
                Check::No
            } else {
                Check::Unknown
            }
        }
    }
}

fn all(checks: impl IntoIterator<Item = Check>) -> Check {
    let mut out = Check::Yes;
    for c in checks {
        match c {
            Check::No => return Check::No,
            Check::Unknown => out = Check::Unknown,
            Check::Yes => {}
        }
    }
    out
}

impl<B: CompleteBase> ExtField<B> {
    /// Builds the extension with modulus x^n + low[n-1] x^(n-1) + ... +
    /// low[0] and detects its ramification certificate.
    pub fn new(base: B, low: Vec<B::Elem>) -> Result<Self> {
        Self::with_max_degree(base, low, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(base: B, low: Vec<B::Elem>, max: usize) -> Result<Self> {
        let n = low.len();
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        if n > max {
            return Err(Error::DegreeTooLarge { n, max });
        }
        let cert = Self::detect_certificate(&base, &low)?;
        Ok(ExtField { base, low, n, cert })
    }

    fn detect_certificate(base: &B, low: &[B::Elem]) -> Result<Certificate> {
        let vals: Vec<ValBound> = low.iter().map(|a| base.valuation(a)).collect();
        let eisenstein = all(vals.iter().enumerate().map(|(i, v)| {
            if i == 0 {
                val_exactly_one(v)
            } else {
                val_at_least(v, 1)
            }
        }));
        match eisenstein {
            Check::Yes => return Ok(Certificate::Eisenstein),
            Check::Unknown => return Err(Error::UndecidableAtPrecision),
            Check::No => {}
        }
        match all(vals.iter().map(|v| val_at_least(v, 0))) {
            Check::No => return Ok(Certificate::Uncertified),
            Check::Unknown => return Err(Error::UndecidableAtPrecision),
            Check::Yes => {}
        }
        let fp = PrimeField::new(base.residue_char())?;
        let mut coeffs: Vec<u64> = low
            .iter()
            .map(|a| base.residue(a))
            .collect::<Result<_>>()?;
        coeffs.push(1);
        let residual = Poly::new(fp, coeffs);
        if is_irreducible(&residual) {
            Ok(Certificate::Unramified { residual })
        } else {
            Ok(Certificate::Uncertified)
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn certificate(&self) -> &Certificate {
        &self.cert
    }

    pub fn modulus_low_coeffs(&self) -> &[B::Elem] {
        &self.low
    }

    fn check_elem(&self, x: &ExtElem<B>) -> Result<()> {
        if x.coords.len() != self.n {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn from_coords(&self, coords: Vec<B::Elem>) -> Result<ExtElem<B>> {
        if coords.len() != self.n {
            return Err(Error::ContextMismatch);
        }
        Ok(ExtElem { coords })
    }

    pub fn zero(&self) -> ExtElem<B> {
        ExtElem { coords: vec![self.base.zero(); self.n] }
    }

    pub fn one(&self) -> ExtElem<B> {
        let mut coords = vec![self.base.zero(); self.n];
        coords[0] = self.base.one();
        ExtElem { coords }
    }

    /// The class of x. For a degree-1 modulus this is -a_0.
    pub fn gen(&self) -> ExtElem<B> {
        if self.n == 1 {
            return ExtElem { coords: vec![self.base.neg(&self.low[0])] };
        }
        let mut coords = vec![self.base.zero(); self.n];
        coords[1] = self.base.one();
        ExtElem { coords }
    }

    pub fn embed_base(&self, c: B::Elem) -> ExtElem<B> {
        let mut coords = vec![self.base.zero(); self.n];
        coords[0] = c;
        ExtElem { coords }
    }

    pub fn embed_rat(&self, q: &BigRational) -> Result<ExtElem<B>> {
        Ok(self.embed_base(self.base.from_rat(q)?))
    }

    pub fn add(&self, x: &ExtElem<B>, y: &ExtElem<B>) -> Result<ExtElem<B>> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| self.base.add(a, b))
            .collect::<Result<_>>()?;
        Ok(ExtElem { coords })
    }

    pub fn neg(&self, x: &ExtElem<B>) -> ExtElem<B> {
        ExtElem { coords: x.coords.iter().map(|a| self.base.neg(a)).collect() }
    }

    pub fn sub(&self, x: &ExtElem<B>, y: &ExtElem<B>) -> Result<ExtElem<B>> {
        self.add(x, &self.neg(y))
    }

    /// Schoolbook product followed by reduction of x^k for k >= n through
    /// x^n = -(a_0 + ... + a_(n-1) x^(n-1)).
    pub fn mul(&self, x: &ExtElem<B>, y: &ExtElem<B>) -> Result<ExtElem<B>> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        let mut prod = vec![self.base.zero(); 2 * self.n - 1];
        for (i, a) in x.coords.iter().enumerate() {
            if self.base.is_exact_zero(a) {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                let t = self.base.mul(a, b)?;
                prod[i + j] = self.base.add(&prod[i + j], &t)?;
            }
        }
        for k in (self.n..prod.len()).rev() {
            let t = prod[k].clone();
            if self.base.is_exact_zero(&t) {
                continue;
            }
            for (i, a) in self.low.iter().enumerate() {
                let s = self.base.mul(&t, a)?;
                prod[k - self.n + i] = self.base.sub(&prod[k - self.n + i], &s)?;
            }
        }
        prod.truncate(self.n);
        Ok(ExtElem { coords: prod })
    }

    pub fn pow(&self, x: &ExtElem<B>, e: i64) -> Result<ExtElem<B>> {
        if e < 0 {
            return self.pow(&self.inv(x)?, -e);
        }
        let mut acc = self.one();
        let mut b = x.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b)?;
            }
        }
        Ok(acc)
    }

    /// Inverse by extended Euclid of the coordinate polynomial with the
    /// modulus; the result is verified by multiplication, and a failed
    /// verification reports precision exhaustion rather than a wrong value.
    pub fn inv(&self, x: &ExtElem<B>) -> Result<ExtElem<B>> {
        self.check_elem(x)?;
        let u = self.trim(x.coords.clone());
        if u.is_empty() {
            return if x.coords.iter().all(|c| self.base.is_exact_zero(c)) {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::ZeroIndistinguishable)
            };
        }
        let mut modulus = self.low.clone();
        modulus.push(self.base.one());
        let (g, s) = self.poly_half_egcd(modulus, u)?;
        if g.len() != 1 {
            // the modulus is not coprime to the representative at this
            // precision; certified moduli are irreducible, so this is a
            // precision artifact
            return Err(Error::PrecisionExhausted);
        }
        let g_inv = self.base.inv(&g[0])?;
        let mut coords: Vec<B::Elem> = s
            .iter()
            .map(|c| self.base.mul(c, &g_inv))
            .collect::<Result<_>>()?;
        if coords.len() > self.n {
            return Err(Error::PrecisionExhausted);
        }
        coords.resize(self.n, self.base.zero());
        let candidate = ExtElem { coords };
        let check = self.sub(&self.mul(x, &candidate)?, &self.one())?;
        if check.coords.iter().any(|c| !self.base.is_zero_ish(c)) {
            return Err(Error::PrecisionExhausted);
        }
        Ok(candidate)
    }

    pub fn div(&self, x: &ExtElem<B>, y: &ExtElem<B>) -> Result<ExtElem<B>> {
        self.mul(x, &self.inv(y)?)
    }

    /// Drops trailing coefficients that carry no exactly-known digit.
    fn trim(&self, mut v: Vec<B::Elem>) -> Vec<B::Elem> {
        while v.last().is_some_and(|c| self.base.is_zero_ish(c)) {
            v.pop();
        }
        v
    }

    /// Extended Euclid tracking one Bezout coefficient: returns (g, t) with
    /// t * b = g modulo a, starting from (a, b).
    fn poly_half_egcd(&self, a: Coeffs<B>, b: Coeffs<B>) -> Result<(Coeffs<B>, Coeffs<B>)> {
        let (mut r0, mut r1) = (a, b);
        let (mut t0, mut t1) = (Vec::new(), vec![self.base.one()]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divmod(r0, &r1)?;
            let qt1 = self.poly_mul(&q, &t1)?;
            let t_next = self.poly_sub(&t0, &qt1)?;
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t_next);
        }
        Ok((r0, t0))
    }

    fn poly_mul(&self, a: &[B::Elem], b: &[B::Elem]) -> Result<Vec<B::Elem>> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if self.base.is_exact_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let t = self.base.mul(ai, bj)?;
                out[i + j] = self.base.add(&out[i + j], &t)?;
            }
        }
        Ok(self.trim(out))
    }

    fn poly_sub(&self, a: &[B::Elem], b: &[B::Elem]) -> Result<Vec<B::Elem>> {
        let len = a.len().max(b.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let ai = a.get(i).cloned().unwrap_or_else(|| self.base.zero());
            let bi = b.get(i).cloned().unwrap_or_else(|| self.base.zero());
            out.push(self.base.sub(&ai, &bi)?);
        }
        Ok(self.trim(out))
    }

    fn poly_divmod(&self, num: Coeffs<B>, den: &[B::Elem]) -> Result<(Coeffs<B>, Coeffs<B>)> {
        let lead_inv = self.base.inv(den.last().expect("nonzero divisor"))?;
        let mut rem = num;
        if rem.len() < den.len() {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![self.base.zero(); rem.len() - den.len() + 1];
        while rem.len() >= den.len() {
            let k = rem.len() - den.len();
            let c = self.base.mul(rem.last().unwrap(), &lead_inv)?;
            for (i, d) in den.iter().enumerate() {
                let s = self.base.mul(&c, d)?;
                rem[k + i] = self.base.sub(&rem[k + i], &s)?;
            }
            quot[k] = c;
            // the top coefficient was driven to cancel
            rem.pop();
            rem = self.trim(rem);
        }
        Ok((self.trim(quot), rem))
    }

    /// The field norm: determinant of the multiplication-by-x matrix in
    /// the power basis, by cofactor expansion. Errors when cancellation
    /// leaves the determinant without a known leading digit.
    pub fn norm(&self, x: &ExtElem<B>) -> Result<B::Elem> {
        self.check_elem(x)?;
        let gen = self.gen();
        let mut rows = vec![Vec::with_capacity(self.n); self.n];
        let mut y = x.clone();
        for j in 0..self.n {
            if j > 0 {
                y = self.mul(&y, &gen)?;
            }
            for (i, row) in rows.iter_mut().enumerate() {
                row.push(y.coords[i].clone());
            }
        }
        let d = self.det(&rows)?;
        match self.base.valuation(&d) {
            ValBound::AtLeast(_) => Err(Error::PrecisionExhausted),
            _ => Ok(d),
        }
    }

    fn det(&self, rows: &[Vec<B::Elem>]) -> Result<B::Elem> {
        let k = rows.len();
        if k == 1 {
            return Ok(rows[0][0].clone());
        }
        let mut acc = self.base.zero();
        for j in 0..k {
            let pivot = &rows[0][j];
            if self.base.is_exact_zero(pivot) {
                continue;
            }
            let minor: Vec<Vec<B::Elem>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = self.base.mul(pivot, &self.det(&minor)?)?;
            acc = if j % 2 == 0 {
                self.base.add(&acc, &term)?
            } else {
                self.base.sub(&acc, &term)?
            };
        }
        Ok(acc)
    }

    /// The extended additive valuation w(x) = a(N(x)) / n, whose values
    /// are rationals with denominator dividing n. Restricted to embedded
    /// base elements it equals the base valuation.
    pub fn add_val_ext(&self, x: &ExtElem<B>) -> Result<QVal> {
        if x.coords.iter().all(|c| self.base.is_exact_zero(c)) {
            return Ok(QVal::Infinity);
        }
        let nx = self.norm(x)?;
        match self.base.valuation(&nx) {
            ValBound::ExactlyInfinite => Ok(QVal::Infinity),
            ValBound::Exact(m) => Ok(QVal::Fin(BigRational::new(
                BigInt::from(m),
                BigInt::from(self.n as i64),
            ))),
            ValBound::AtLeast(_) => Err(Error::PrecisionExhausted),
        }
    }

    pub fn ramification_index(&self) -> Result<u64> {
        match &self.cert {
            Certificate::Eisenstein => Ok(self.n as u64),
            Certificate::Unramified { .. } => Ok(1),
            Certificate::Uncertified => Err(Error::NoCertificate),
        }
    }

    pub fn residue_degree(&self) -> Result<u64> {
        Ok(self.n as u64 / self.ramification_index()?)
    }

    /// The valuation rescaled by the ramification index so its image is
    /// the full integer group; always an integer for certified extensions.
    pub fn normalized_val(&self, x: &ExtElem<B>) -> Result<ValBound> {
        let e = self.ramification_index()?;
        match self.add_val_ext(x)? {
            QVal::Infinity => Ok(ValBound::ExactlyInfinite),
            QVal::Fin(q) => {
                let scaled = q * BigRational::from_integer(BigInt::from(e));
                debug_assert!(scaled.is_integer(), "normalized valuation is integral");
                let v = scaled
                    .to_integer()
                    .to_i64()
                    .expect("normalized valuation fits in i64");
                Ok(ValBound::Exact(v))
            }
        }
    }

    /// Ring-of-integers membership: w(x) >= 0. This is the integral
    /// closure of the base unit ball by the norm characterization.
    pub fn is_integral(&self, x: &ExtElem<B>) -> Result<bool> {
        match self.add_val_ext(x) {
            Ok(w) => Ok(w.is_nonnegative()),
            Err(Error::PrecisionExhausted) => Err(Error::UndecidableAtPrecision),
            Err(e) => Err(e),
        }
    }

    /// A uniformizer of the extension: the generator when Eisenstein, the
    /// embedded base uniformizer when unramified.
    pub fn uniformizer_ext(&self) -> Result<ExtElem<B>> {
        match &self.cert {
            Certificate::Eisenstein => Ok(self.gen()),
            Certificate::Unramified { .. } => Ok(self.embed_base(self.base.uniformizer())),
            Certificate::Uncertified => Err(Error::NoCertificate),
        }
    }

    /// The residue field as F_p[t]/(residual); for Eisenstein extensions
    /// the residue field stays F_p, presented modulo t.
    pub fn residue_field(&self) -> Result<Fq> {
        let fp = PrimeField::new(self.base.residue_char())?;
        match &self.cert {
            Certificate::Unramified { residual } => Fq::new(residual.clone()),
            Certificate::Eisenstein => Fq::new(Poly::x(fp)),
            Certificate::Uncertified => Err(Error::NoCertificate),
        }
    }

    /// Reduction modulo the maximal ideal: coordinate-wise through the
    /// base residue map. Requires an integral element.
    pub fn residue_map(&self, x: &ExtElem<B>) -> Result<FFElem> {
        self.check_elem(x)?;
        if !self.is_integral(x)? {
            return Err(Error::NotIntegral);
        }
        let fq = self.residue_field()?;
        let fp = PrimeField::new(self.base.residue_char())?;
        match &self.cert {
            Certificate::Unramified { .. } => {
                let coeffs: Vec<u64> = x
                    .coords
                    .iter()
                    .map(|c| self.base.residue(c))
                    .collect::<Result<_>>()?;
                Ok(fq.elem(Poly::new(fp, coeffs)))
            }
            Certificate::Eisenstein => {
                // a is in the maximal ideal, so only the constant
                // coordinate survives reduction
                Ok(fq.elem(Poly::constant(fp, self.base.residue(&x.coords[0])?)))
            }
            Certificate::Uncertified => Err(Error::NoCertificate),
        }
    }

    /// Estimates the generator index of the value group from samples: the
    /// returned value divides the true ramification index, with equality
    /// when the samples generate the group (e.g. include a uniformizer).
    pub fn value_group_generator(&self, samples: &[ExtElem<B>]) -> Result<u64> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        let n = BigInt::from(self.n as i64);
        let mut gcd = n.clone(); // contributed by the embedded base uniformizer
        for s in samples {
            let w = match self.add_val_ext(s)? {
                QVal::Infinity => return Err(Error::ZeroArgument),
                QVal::Fin(q) => q,
            };
            let m = (w * BigRational::from_integer(n.clone())).to_integer();
            if m.is_zero() {
                continue;
            }
            gcd = num_integer::Integer::gcd(&gcd, &m);
        }
        let e_est = &n / &gcd;
        Ok(u64::try_from(&e_est).expect("estimate is a small natural"))
    }

    /// The data making a certified extension a local field: discreteness
    /// (a uniformizer exists), completeness (inherited from the base), and
    /// the finite residue field of order p^f.
    pub fn local_field_data(&self) -> Result<LocalFieldData> {
        let e = self.ramification_index()?;
        let f = self.residue_degree()?;
        let p = self.base.residue_char() as u128;
        Ok(LocalFieldData {
            discrete: true,
            complete: true,
            residue_field_order: p.pow(f as u32),
            e,
            f,
            n: self.n as u64,
        })
    }

    /// The spectral norm |x| = base^(-w(x)) with base the residue
    /// characteristic.
    pub fn spectral_norm(&self, x: &ExtElem<B>) -> Result<NormValue> {
        let base = NormBase::residue_field(self.base.residue_char(), 1);
        match self.add_val_ext(x)? {
            QVal::Infinity => Ok(NormValue::zero(base)),
            QVal::Fin(q) => Ok(NormValue::new(base, -q)),
        }
    }

    /// Coordinates rendered as a polynomial in the generator, mostly for
    /// diagnostics.
    pub fn format_elem(&self, x: &ExtElem<B>) -> String {
        let terms: Vec<String> = x
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_exact_zero(c))
            .map(|(i, c)| match i {
                0 => format!("({})", self.base.format(c)),
                1 => format!("({})*a", self.base.format(c)),
                k => format!("({})*a^{k}", self.base.format(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5(prec: u32) -> PAdicCtx {
        PAdicCtx::new(5, prec).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Q_5(sqrt 5): x^2 - 5, Eisenstein.
    fn sqrt5() -> ExtField<PAdicCtx> {
        let c = q5(20);
        let a0 = c.from_int(-5);
        let a1 = PAdicCtx::zero(&c);
        ExtField::new(c, vec![a0, a1]).unwrap()
    }

    /// Q_5(sqrt 2): x^2 - 2, unramified.
    fn sqrt2() -> ExtField<PAdicCtx> {
        let c = q5(20);
        let a0 = c.from_int(-2);
        let a1 = PAdicCtx::zero(&c);
        ExtField::new(c, vec![a0, a1]).unwrap()
    }

    #[test]
    fn certificate_detection() {
        assert_eq!(sqrt5().certificate(), &Certificate::Eisenstein);
        match sqrt2().certificate() {
            Certificate::Unramified { residual } => {
                // t^2 - 2 = t^2 + 3 over F_5; 2 is not a square mod 5
                assert_eq!(residual.coeffs(), &[3, 0, 1]);
            }
            other => panic!("expected unramified, got {other:?}"),
        }
        // x^2 - 1 splits mod 5
        let c = q5(20);
        let e = ExtField::new(c, vec![c.from_int(-1), PAdicCtx::zero(&c)]).unwrap();
        assert_eq!(e.certificate(), &Certificate::Uncertified);
    }

    #[test]
    fn generator_squares_to_five() {
        let k = sqrt5();
        let a = k.gen();
        let a2 = k.mul(&a, &a).unwrap();
        let five = k.embed_rat(&rat(5, 1)).unwrap();
        assert!(a2.coords()[0].agrees_with(&five.coords()[0]));
        assert!(a2.coords()[1].valuation().at_least(10));
    }

    #[test]
    fn norm_of_generator() {
        // det [[0, 5], [1, 0]] = -5
        let k = sqrt5();
        let n = k.norm(&k.gen()).unwrap();
        let minus5 = k.base().from_int(-5);
        assert!(n.agrees_with(&minus5));
        // norm(1 + a) = 1 - 5 = -4
        let one_a = k.add(&k.one(), &k.gen()).unwrap();
        assert!(k.norm(&one_a).unwrap().agrees_with(&k.base().from_int(-4)));
        // norm of an embedded scalar is its square
        let c = k.embed_rat(&rat(7, 1)).unwrap();
        assert!(k.norm(&c).unwrap().agrees_with(&k.base().from_int(49)));
    }

    #[test]
    fn extended_valuation() {
        let k = sqrt5();
        assert_eq!(k.add_val_ext(&k.gen()).unwrap(), QVal::Fin(rat(1, 2)));
        let five = k.embed_rat(&rat(5, 1)).unwrap();
        assert_eq!(k.add_val_ext(&five).unwrap(), QVal::Fin(rat(1, 1)));
        let one_a = k.add(&k.one(), &k.gen()).unwrap();
        assert_eq!(k.add_val_ext(&one_a).unwrap(), QVal::Fin(rat(0, 1)));
        assert_eq!(k.add_val_ext(&k.zero()).unwrap(), QVal::Infinity);
    }

    #[test]
    fn ramification_and_normalization() {
        let k5 = sqrt5();
        assert_eq!(k5.ramification_index().unwrap(), 2);
        assert_eq!(k5.residue_degree().unwrap(), 1);
        assert_eq!(k5.normalized_val(&k5.gen()).unwrap(), ValBound::Exact(1));
        let five = k5.embed_rat(&rat(5, 1)).unwrap();
        assert_eq!(k5.normalized_val(&five).unwrap(), ValBound::Exact(2));

        let k2 = sqrt2();
        assert_eq!(k2.ramification_index().unwrap(), 1);
        assert_eq!(k2.residue_degree().unwrap(), 2);
        let five = k2.embed_rat(&rat(5, 1)).unwrap();
        assert_eq!(k2.normalized_val(&five).unwrap(), ValBound::Exact(1));
    }

    #[test]
    fn inverse_of_one_plus_generator() {
        // (1+a)(1-a) = 1 - 5 = -4, so inv(1+a) = (1-a) * (-1/4)
        let k = sqrt5();
        let one_a = k.add(&k.one(), &k.gen()).unwrap();
        let inv = k.inv(&one_a).unwrap();
        let prod = k.mul(&one_a, &inv).unwrap();
        assert!(prod.coords()[0].agrees_with(&k.base().one()));
        assert!(prod.coords()[1].valuation().at_least(5));
        let expected = k
            .mul(
                &k.sub(&k.one(), &k.gen()).unwrap(),
                &k.embed_rat(&rat(-1, 4)).unwrap(),
            )
            .unwrap();
        assert!(inv.coords()[0].agrees_with(&expected.coords()[0]));
        assert!(inv.coords()[1].agrees_with(&expected.coords()[1]));
    }

    #[test]
    fn integrality() {
        let k = sqrt5();
        assert!(k.is_integral(&k.gen()).unwrap());
        let a_over_5 = k
            .mul(&k.gen(), &k.embed_rat(&rat(1, 5)).unwrap())
            .unwrap();
        assert!(!k.is_integral(&a_over_5).unwrap());
        let k2 = sqrt2();
        assert!(k2.is_integral(&k2.embed_rat(&rat(1, 3)).unwrap()).unwrap());
    }

    #[test]
    fn uniformizers() {
        let k5 = sqrt5();
        let pi = k5.uniformizer_ext().unwrap();
        assert_eq!(k5.normalized_val(&pi).unwrap(), ValBound::Exact(1));
        let k2 = sqrt2();
        let pi2 = k2.uniformizer_ext().unwrap();
        assert_eq!(k2.normalized_val(&pi2).unwrap(), ValBound::Exact(1));
    }

    #[test]
    fn residue_map_unramified() {
        let k = sqrt2();
        let r = k.residue_map(&k.gen()).unwrap();
        let fq = k.residue_field().unwrap();
        assert_eq!(r, fq.gen());
        assert_eq!(fq.order(), 25);
    }

    #[test]
    fn value_group_generator_estimates() {
        let k5 = sqrt5();
        assert_eq!(k5.value_group_generator(&[k5.gen()]).unwrap(), 2);
        let five = k5.embed_rat(&rat(5, 1)).unwrap();
        assert_eq!(k5.value_group_generator(std::slice::from_ref(&five)).unwrap(), 1);
        let k2 = sqrt2();
        let five2 = k2.embed_rat(&rat(5, 1)).unwrap();
        assert_eq!(
            k2.value_group_generator(&[k2.gen(), five2]).unwrap(),
            1
        );
        assert_eq!(k5.value_group_generator(&[]), Err(Error::EmptySamples));
    }

    #[test]
    fn local_field_records() {
        let d2 = sqrt2().local_field_data().unwrap();
        assert_eq!(d2.residue_field_order, 25);
        assert_eq!((d2.e, d2.f, d2.n), (1, 2, 2));
        assert!(d2.discrete && d2.complete);

        // x^2 - X over F_3((X)) is Eisenstein
        let ctx = LaurentCtx::new(3, 20).unwrap();
        let x = CompleteBase::uniformizer(&ctx);
        let e = ExtField::new(ctx, vec![ctx.neg(&x), CompleteBase::zero(&ctx)]).unwrap();
        assert_eq!(e.certificate(), &Certificate::Eisenstein);
        let d = e.local_field_data().unwrap();
        assert_eq!(d.residue_field_order, 3);
        assert_eq!((d.e, d.f), (2, 1));

        // degree-1: Q_7, x - 1
        let c7 = PAdicCtx::new(7, 20).unwrap();
        let t = ExtField::new(c7, vec![c7.from_int(-1)]).unwrap();
        let dt = t.local_field_data().unwrap();
        assert_eq!((dt.e, dt.f, dt.n), (1, 1, 1));
        assert_eq!(dt.residue_field_order, 7);
    }

    #[test]
    fn no_certificate_refusals() {
        let c = q5(20);
        let e = ExtField::new(c, vec![c.from_int(-1), PAdicCtx::zero(&c)]).unwrap();
        assert_eq!(e.ramification_index(), Err(Error::NoCertificate));
        assert_eq!(e.local_field_data(), Err(Error::NoCertificate));
        // arithmetic still works
        let s = e.add(&e.gen(), &e.one()).unwrap();
        assert_eq!(s.coords().len(), 2);
    }

    #[test]
    fn spectral_norm_values() {
        let k = sqrt5();
        assert_eq!(k.spectral_norm(&k.gen()).unwrap().to_string(), "5^(-1/2)");
        assert_eq!(k.spectral_norm(&k.one()).unwrap().to_string(), "1");
        assert_eq!(k.spectral_norm(&k.zero()).unwrap().to_string(), "0");
        let five = k.embed_rat(&rat(5, 1)).unwrap();
        assert_eq!(k.spectral_norm(&five).unwrap().to_string(), "5^-1");
    }

    #[test]
    fn degree_cap() {
        let c = q5(20);
        let low: Vec<_> = (0..9).map(|_| c.from_int(5)).collect();
        assert_eq!(
            ExtField::new(c, low).unwrap_err(),
            Error::DegreeTooLarge { n: 9, max: 8 }
        );
    }
}
