//! Dense univariate polynomials over an exact coefficient field.

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial stored as ascending coefficients with no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        Self::new(field, vec![c])
    }

    /// The monomial X.
    pub fn x(field: F) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        Poly { field, coeffs }
    }

    /// The monomial X^k.
    pub fn monomial(field: F, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Poly { field, coeffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(a, b));
            }
        }
        Self::new(self.field.clone(), coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len();
        let lead_inv = f.inv(divisor.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd - 1], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[k] = c.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, d));
            }
        }
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    /// Monic greatest common divisor, delegated to the coefficient field
    /// so growth-sensitive fields can pick their remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        self.field.poly_gcd(self, other)
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g and g monic
    /// (or zero when both inputs are zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        if let Some(lead) = r0.leading() {
            let c = f.inv(lead).expect("leading coefficient is a unit");
            (r0.scale(&c), s0.scale(&c), t0.scale(&c))
        } else {
            (r0, s0, t0)
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let c = self.field.inv(lead).expect("leading coefficient is a unit");
                self.scale(&c)
            }
        }
    }

    /// Index of the lowest nonzero coefficient, or None for zero.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    /// Divide by X^k; the k lowest coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| self.field.is_zero(c)));
        Self::new(self.field.clone(), self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Value at 0, i.e. the constant coefficient.
    pub fn eval_at_zero(&self) -> F::Elem {
        self.coeff(0)
    }

    /// Renders terms ascending, skipping zero coefficients: `1 + 2*X + X^3`.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(k, c)| format_term(&self.field, c, k as i64, var))
            .collect();
        join_signed_terms(&terms)
    }

    /// Number of nonzero terms; used by callers deciding on parentheses.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !self.field.is_zero(c)).count()
    }
}

/// The generic gcd: a monic remainder sequence over the field.
pub fn monic_remainder_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut a = a.make_monic();
    let mut b = b.make_monic();
    while !b.is_zero() {
        let (_, r) = a.divmod(&b).expect("nonzero divisor");
        a = b;
        b = r.make_monic();
    }
    a
}

/// One term `c*var^k` with the cosmetic rules: unit coefficients are dropped
/// before the variable, exponents 0 and 1 print bare.
pub(crate) fn format_term<F: Field>(field: &F, c: &F::Elem, k: i64, var: &str) -> String {
    let cs = field.format(c);
    if k == 0 {
        return cs;
    }
    let v = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
    if field.is_one(c) {
        v
    } else if cs == "-1" {
        format!("-{v}")
    } else {
        format!("{cs}*{v}")
    }
}

/// Joins rendered terms with ` + `, folding a leading minus of a term into
/// a ` - ` separator so rational coefficients read naturally.
pub(crate) fn join_signed_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(stripped) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}
